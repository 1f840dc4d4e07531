#![no_main]

use libfuzzer_sys::fuzz_target;
use sbfe::format::parse_instance;

fuzz_target!(|text: &str| {
    if let Ok(inst) = parse_instance(text) {
        // accepted files must survive a write/read cycle
        let again = parse_instance(&inst.to_toml()).expect("re-parse");
        assert_eq!(again, inst);
    }
});
