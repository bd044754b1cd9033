#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Err(err) = accessneeds::parse_model(data) {
        // Every failure must say where it happened.
        assert!(!err.location().is_empty());
    }
});
