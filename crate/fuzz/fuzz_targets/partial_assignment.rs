#![no_main]

use libfuzzer_sys::fuzz_target;
use sbfe::assignment::PartialAssignment;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(b) = text.parse::<PartialAssignment>() {
        assert_eq!(b.to_string(), text);
    }
});
