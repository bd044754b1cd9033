//! Replays the checked-in fuzz seeds through the fuzz target invariants.

use std::fs;
use std::path::PathBuf;

use accessneeds::io::parse_document;
use accessneeds::{
    check_goal_structure, check_structure, expand_hierarchy, export_dot, parse_model, render_report,
    serialize_model, validate_access, ReportFormat, View,
};

fn seeds() -> Vec<(PathBuf, Vec<u8>)> {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus");
    let mut out = Vec::new();
    for target in fs::read_dir(&root).expect("fuzz corpus exists") {
        for entry in fs::read_dir(target.unwrap().path()).unwrap() {
            let path = entry.unwrap().path();
            if path.file_name().unwrap().to_string_lossy().starts_with("seed-") {
                let bytes = fs::read(&path).unwrap();
                out.push((path, bytes));
            }
        }
    }
    out.sort();
    out
}

#[test]
fn seeds_hold_target_invariants() {
    let seeds = seeds();
    assert!(seeds.len() >= 20, "only {} seeds", seeds.len());
    let mut parsed = 0;
    for (path, bytes) in &seeds {
        match parse_model(bytes) {
            Err(err) => assert!(!err.location().is_empty(), "{}", path.display()),
            Ok((model, graph)) => {
                parsed += 1;
                let out = serialize_model(&model, &graph);
                assert_eq!(parse_model(&out).unwrap(), (model.clone(), graph.clone()), "{}", path.display());
                let report = validate_access(&expand_hierarchy(&model), &graph);
                let json = render_report(&report, ReportFormat::Json);
                serde_json::from_str::<serde_json::Value>(&json).unwrap();
                export_dot(&model, &graph, View::Asset);
                export_dot(&model, &graph, View::Goal);
            }
        }
        if let Ok(doc) = parse_document(bytes) {
            if let Ok((model, graph)) = doc.into_model() {
                check_structure(&model);
                check_goal_structure(&graph, &model);
                validate_access(&expand_hierarchy(&model), &graph);
            }
        }
    }
    assert!(parsed > 0);
}

#[test]
fn broken_seed_reports_every_structural_problem() {
    let seed = seeds()
        .into_iter()
        .find(|(p, _)| p.ends_with("seed-broken-invariants.json"))
        .expect("seed present");
    let (model, graph) = parse_document(&seed.1).unwrap().into_model().unwrap();
    assert!(check_structure(&model).len() >= 4);
    assert!(!check_goal_structure(&graph, &model).is_empty());
}
