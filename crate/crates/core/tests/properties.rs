use proptest::prelude::*;
use sbfe::assignment::PartialAssignment;
use sbfe::distribution::seeded_rng;
use sbfe::format::{parse_instance, Instance, Problem};
use sbfe::formula::{BooleanFunction, CdnfFormula};
use sbfe::gen::{self, GenSpec};
use sbfe::oracle::{optimal_expected_cost, OracleLimits};
use sbfe::policies::{cost_order_policy, cp_ratio_policy, AdaptiveDualGreedy, AdaptiveGreedy, Sense};
use sbfe::policy::{expected_cost, materialize};
use sbfe::utility::{threshold_utility, Utility};
use sbfe::verify::{check_axioms, AxiomMode};

fn threshold(seed: u64, n: usize) -> Instance {
    GenSpec::Threshold { n }.generate(&mut seeded_rng(seed)).unwrap()
}

fn cdnf(seed: u64, n: usize) -> Instance {
    let mut rng = seeded_rng(seed);
    let k = 1 + (seed as usize % 3);
    let d = 1 + (seed as usize / 3 % 3);
    let (k, d) = if k + d > 1 << n { (1, 1) } else { (k, d) };
    GenSpec::Cdnf { n, k, d }.generate(&mut rng).unwrap()
}

fn function(inst: &Instance) -> &dyn BooleanFunction {
    match &inst.problem {
        Problem::Cdnf(f) => f,
        Problem::Threshold(f) => f,
        Problem::TruthTable(f) => f,
        _ => unreachable!(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn completion_mass_matches_prefix(seed in any::<u64>(), n in 1usize..8, known in any::<u64>(), values in any::<u64>()) {
        let d = gen::random_probs(n, &mut seeded_rng(seed)).unwrap();
        let mask = (1u64 << n) - 1;
        let b = PartialAssignment::from_masks(n, known & mask, values & known & mask);
        let total: f64 = b.completions().map(|a| d.prob_of(&a)).sum();
        prop_assert!((total - d.prob_of(&b)).abs() < 1e-12);
    }

    #[test]
    fn threshold_utility_is_monotone_submodular(seed in any::<u64>(), n in 1usize..10) {
        let inst = threshold(seed, n);
        let Problem::Threshold(f) = &inst.problem else { unreachable!() };
        let g = threshold_utility(f).unwrap();
        let r = check_axioms(&g, AxiomMode::Random { trials: 200, seed }).unwrap();
        prop_assert!(r.passed(), "{:?}", r.violation);
    }

    #[test]
    fn dp_lower_bounds_every_policy(seed in any::<u64>(), n in 1usize..7) {
        for inst in [threshold(seed, n), cdnf(seed, n)] {
            let f = function(&inst);
            let (opt, _) = optimal_expected_cost(f, &inst.d, &inst.c, OracleLimits::default()).unwrap();
            let g: Box<dyn Utility> = match &inst.problem {
                Problem::Cdnf(f) => Box::new(sbfe::utility::cdnf_utility(f).unwrap()),
                Problem::Threshold(f) => Box::new(threshold_utility(f).unwrap()),
                _ => unreachable!(),
            };
            let greedy = expected_cost(&AdaptiveGreedy::new(&*g, &inst.d, &inst.c).unwrap(), &inst.d, &inst.c).unwrap();
            let adg = expected_cost(&AdaptiveDualGreedy::new(&*g, &inst.d, &inst.c).unwrap(), &inst.d, &inst.c).unwrap();
            prop_assert!(opt <= greedy + 1e-9);
            prop_assert!(opt <= adg + 1e-9);
        }
    }

    #[test]
    fn adg_trees_have_neighbor_property(seed in any::<u64>(), n in 1usize..7) {
        let inst = threshold(seed, n);
        let Problem::Threshold(f) = &inst.problem else { unreachable!() };
        let g = threshold_utility(f).unwrap();
        let tree = materialize(&AdaptiveDualGreedy::new(&g, &inst.d, &inst.c).unwrap(), n).unwrap();
        prop_assert!(tree.has_no_repeats());
        prop_assert_eq!(tree.neighbor_violation(n), None);
    }

    #[test]
    fn cost_order_within_n_of_opt(seed in any::<u64>(), n in 1usize..7) {
        let inst = threshold(seed, n);
        let f = function(&inst);
        let (opt, _) = optimal_expected_cost(f, &inst.d, &inst.c, OracleLimits::default()).unwrap();
        let Problem::Threshold(t) = &inst.problem else { unreachable!() };
        let policy = cost_order_policy(&inst.c).until_certified(t);
        let cost = expected_cost(&policy, &inst.d, &inst.c).unwrap();
        prop_assert!(cost <= n as f64 * opt + 1e-9);
    }

    #[test]
    fn cp_order_optimal_on_conjunctions(seed in any::<u64>(), n in 1usize..9) {
        let mut rng = seeded_rng(seed);
        let d = gen::random_probs(n, &mut rng).unwrap();
        let c = gen::random_costs(n, &mut rng).unwrap();
        let f = CdnfFormula::conjunction(n).unwrap();
        let (opt, _) = optimal_expected_cost(&f, &d, &c, OracleLimits::default()).unwrap();
        let cost = expected_cost(&cp_ratio_policy(&d, &c, Sense::And), &d, &c).unwrap();
        prop_assert!((cost - opt).abs() < 1e-9);
    }

    #[test]
    fn instance_files_round_trip(seed in any::<u64>(), which in 0usize..7, n in 1usize..7) {
        let spec = match which {
            0 => GenSpec::Threshold { n },
            1 => GenSpec::Cdnf { n: n.max(2), k: 2, d: 2 },
            2 => GenSpec::Disjunction { n },
            3 => GenSpec::TruthTable { n },
            4 => GenSpec::Thresholds { n, m: 2 },
            5 => GenSpec::Ranking { n, m: 3, dups: 1 },
            _ => GenSpec::Knapsack { n },
        };
        let inst = spec.generate(&mut seeded_rng(seed)).unwrap();
        let text = inst.to_toml();
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(back.to_toml(), text);
    }
}
