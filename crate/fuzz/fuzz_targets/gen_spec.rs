#![no_main]

use libfuzzer_sys::fuzz_target;
use sbfe::gen::GenSpec;

fuzz_target!(|text: &str| {
    if let Ok(spec) = text.parse::<GenSpec>() {
        assert_eq!(spec.to_string().parse::<GenSpec>().ok(), Some(spec));
    }
});
