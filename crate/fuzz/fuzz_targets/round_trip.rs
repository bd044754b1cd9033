#![no_main]
use libfuzzer_sys::fuzz_target;

use accessneeds::{parse_model, serialize_model};

fuzz_target!(|data: &[u8]| {
    let Ok((model, graph)) = parse_model(data) else { return };
    let bytes = serialize_model(&model, &graph);
    let again = parse_model(&bytes).expect("canonical output parses");
    assert_eq!(again, (model, graph));
    assert_eq!(serialize_model(&again.0, &again.1), bytes);
});
