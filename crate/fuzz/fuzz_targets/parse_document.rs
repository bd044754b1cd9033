#![no_main]
use libfuzzer_sys::fuzz_target;

use accessneeds::io::parse_document;
use accessneeds::{check_goal_structure, check_structure, expand_hierarchy, validate_access};

// Schema-valid documents that may still break structural invariants. The
// checks and the validator must not panic on them.
fuzz_target!(|data: &[u8]| {
    let Ok(doc) = parse_document(data) else { return };
    let Ok((model, graph)) = doc.into_model() else { return };
    let findings = check_structure(&model);
    assert!(findings.iter().all(|f| !f.location.is_empty()));
    let _ = check_goal_structure(&graph, &model);
    let _ = validate_access(&expand_hierarchy(&model), &graph);
    for stmt in &graph.policy {
        let _ = graph.trace(stmt);
    }
});
