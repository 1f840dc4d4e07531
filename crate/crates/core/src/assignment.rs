//! Partial assignments over `{0, 1, *}^n`.
//!
//! A partial assignment records which variables have been tested and with
//! what outcome. Positions are stored as two bitmasks: `known` marks the
//! tested positions and `values` holds their outcomes (bits outside `known`
//! are always zero). The pair doubles as the canonical 2-bit-per-position
//! memo key used by the exhaustive oracles.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported number of variables.
pub const MAX_VARS: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialAssignment {
    n: u8,
    known: u64,
    values: u64,
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl PartialAssignment {
    /// The all-star assignment `(*, ..., *)`.
    ///
    /// Panics unless `1 <= n <= MAX_VARS`; instance constructors validate
    /// arity before any assignment is built.
    pub fn stars(n: usize) -> Self {
        assert!((1..=MAX_VARS).contains(&n), "arity {n} outside 1..={MAX_VARS}");
        Self {
            n: n as u8,
            known: 0,
            values: 0,
        }
    }

    /// A full assignment whose bit `i` of `bits` is the value of `x_{i+1}`.
    pub fn full(n: usize, bits: u64) -> Self {
        let mut a = Self::stars(n);
        a.known = full_mask(n);
        a.values = bits & a.known;
        a
    }

    /// Builds an assignment from explicit masks. Value bits outside `known`
    /// are dropped.
    pub fn from_masks(n: usize, known: u64, values: u64) -> Self {
        let mut a = Self::stars(n);
        a.known = known & full_mask(n);
        a.values = values & a.known;
        a
    }

    pub fn len(&self) -> usize {
        self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        self.known == 0
    }

    pub fn known_mask(&self) -> u64 {
        self.known
    }

    pub fn value_mask(&self) -> u64 {
        self.values
    }

    /// Mask of untested positions.
    pub fn unknown_mask(&self) -> u64 {
        !self.known & full_mask(self.len())
    }

    pub fn num_tested(&self) -> usize {
        self.known.count_ones() as usize
    }

    pub fn is_full(&self) -> bool {
        self.known == full_mask(self.len())
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        debug_assert!(i < self.len());
        if self.known >> i & 1 == 1 {
            Some(self.values >> i & 1 == 1)
        } else {
            None
        }
    }

    pub fn is_tested(&self, i: usize) -> bool {
        self.known >> i & 1 == 1
    }

    /// Tested indices in increasing order, i.e. `dom(b)`.
    pub fn dom(&self) -> impl Iterator<Item = usize> {
        BitIter(self.known)
    }

    /// Untested indices in increasing order.
    pub fn untested(&self) -> impl Iterator<Item = usize> {
        BitIter(self.unknown_mask())
    }

    /// `b_{x_i <- l}`, failing when `i` is already tested.
    pub fn extend(&self, i: usize, l: bool) -> Result<Self> {
        if i >= self.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.len(),
            });
        }
        if self.is_tested(i) {
            return Err(Error::AlreadyTested { index: i });
        }
        Ok(self.with(i, l))
    }

    /// Sets position `i` to `l`, overwriting whatever was there.
    pub fn with(&self, i: usize, l: bool) -> Self {
        debug_assert!(i < self.len());
        let bit = 1u64 << i;
        Self {
            n: self.n,
            known: self.known | bit,
            values: if l { self.values | bit } else { self.values & !bit },
        }
    }

    /// Resets position `i` to `*` (the `a^j` operation).
    pub fn forget(&self, i: usize) -> Self {
        let bit = 1u64 << i;
        Self {
            n: self.n,
            known: self.known & !bit,
            values: self.values & !bit,
        }
    }

    /// `b^S`: keeps only the positions in `mask`.
    pub fn restrict(&self, mask: u64) -> Self {
        Self {
            n: self.n,
            known: self.known & mask,
            values: self.values & mask,
        }
    }

    /// `self ∼ other`: `self` agrees with every tested position of `other`.
    pub fn extends(&self, other: &PartialAssignment) -> bool {
        self.n == other.n && other.known & !self.known == 0 && (self.values ^ other.values) & other.known == 0
    }

    /// All full assignments extending `self`.
    pub fn completions(&self) -> impl Iterator<Item = PartialAssignment> {
        let base = *self;
        let free = self.unknown_mask();
        SubmaskIter::new(free).map(move |sub| PartialAssignment {
            n: base.n,
            known: full_mask(base.len()),
            values: base.values | sub,
        })
    }

    /// All `3^n` partial assignments over `n` variables.
    pub fn all(n: usize) -> impl Iterator<Item = PartialAssignment> {
        let total = 3usize.pow(n as u32);
        (0..total).map(move |mut code| {
            let mut known = 0u64;
            let mut values = 0u64;
            for i in 0..n {
                match code % 3 {
                    1 => known |= 1 << i,
                    2 => {
                        known |= 1 << i;
                        values |= 1 << i;
                    }
                    _ => {}
                }
                code /= 3;
            }
            PartialAssignment::from_masks(n, known, values)
        })
    }

    /// All `2^n` full assignments over `n` variables.
    pub fn all_full(n: usize) -> impl Iterator<Item = PartialAssignment> {
        PartialAssignment::stars(n).completions()
    }
}

/// Iterates the set bits of a mask from lowest to highest.
#[derive(Clone)]
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// Iterates every submask of a mask, starting from zero.
#[derive(Clone)]
pub struct SubmaskIter {
    mask: u64,
    next: Option<u64>,
}

impl SubmaskIter {
    pub fn new(mask: u64) -> Self {
        Self { mask, next: Some(0) }
    }
}

impl Iterator for SubmaskIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        let succ = cur.wrapping_sub(self.mask) & self.mask;
        self.next = if succ == 0 { None } else { Some(succ) };
        Some(cur)
    }
}

impl fmt::Display for PartialAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            let c = match self.get(i) {
                None => '*',
                Some(false) => '0',
                Some(true) => '1',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PartialAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for PartialAssignment {
    type Err = Error;

    /// Parses strings such as `"1*0"`; position 1 comes first.
    fn from_str(s: &str) -> Result<Self> {
        let n = s.chars().count();
        if n == 0 || n > MAX_VARS {
            return Err(Error::BadArity { n, limit: MAX_VARS });
        }
        let mut b = PartialAssignment::stars(n);
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '*' => {}
                '0' => b = b.with(i, false),
                '1' => b = b.with(i, true),
                other => {
                    return Err(Error::Parse {
                        line: None,
                        message: format!("unexpected character {other:?} in partial assignment"),
                    })
                }
            }
        }
        Ok(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pa(s: &str) -> PartialAssignment {
        s.parse().unwrap()
    }

    #[test]
    fn extend_sets_one_position() {
        assert_eq!(pa("**").extend(0, true).unwrap(), pa("1*"));
        assert_eq!(pa("1*").extend(1, false).unwrap(), pa("10"));
    }

    #[test]
    fn extend_rejects_tested_index() {
        assert_eq!(pa("1*").extend(0, false), Err(Error::AlreadyTested { index: 0 }));
        assert!(matches!(pa("1*").extend(5, false), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn extension_relation() {
        assert!(pa("10").extends(&pa("1*")));
        assert!(pa("1*").extends(&pa("**")));
        assert!(!pa("00").extends(&pa("1*")));
        assert!(!pa("**").extends(&pa("1*")));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(PartialAssignment::all(4).count(), 81);
        assert_eq!(PartialAssignment::all_full(5).count(), 32);
        assert_eq!(pa("1**0").completions().count(), 4);
        assert!(pa("1**0").completions().all(|a| a.extends(&pa("1**0"))));
    }

    #[test]
    fn restrict_and_forget() {
        let a = pa("1011");
        assert_eq!(a.restrict(0b0101), pa("1*1*"));
        assert_eq!(a.forget(2), pa("10*1"));
    }

    #[test]
    fn sixty_four_variables() {
        let a = PartialAssignment::full(64, u64::MAX);
        assert!(a.is_full());
        assert_eq!(a.num_tested(), 64);
        assert_eq!(a.forget(63).unknown_mask(), 1 << 63);
    }
}
