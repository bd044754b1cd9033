use accessneeds::{
    check_goal_structure, check_structure, expand_needs, export_dot, fixtures, parse_model, serialize_model,
    validate_access, AccessNeed, AccessTriple, AssetKind, Permission, SecurityValue as V, View, WarningKind,
};
use dot_parser::{ast, canonical};

fn pyramid() -> (accessneeds::AssetModel, accessneeds::GoalGraph) {
    parse_model(fixtures::PYRAMID.as_bytes()).expect("pyramid fixture parses")
}

fn dot_counts(dot: &str) -> (usize, usize) {
    let graph = canonical::Graph::from(ast::Graph::try_from(dot).expect("valid DOT"));
    (graph.nodes.set.len(), graph.edges.set.len())
}

#[test]
fn pyramid_asset_values() {
    let (model, _) = pyramid();
    let table = [
        ("Data Item", V::Low, V::Medium),
        ("Distribution Capability", V::None, V::Medium),
        ("Delivery Interaction", V::Low, V::Medium),
        ("Delivery Item", V::Low, V::Medium),
        ("Delivery Resource", V::None, V::None),
        ("Formatting Rule", V::None, V::Medium),
        ("Participant", V::None, V::Low),
    ];
    assert_eq!(model.assets.len(), table.len());
    for (name, c, i) in table {
        let asset = model.asset(name).unwrap_or_else(|| panic!("missing {name}"));
        assert_eq!((asset.confidentiality, asset.integrity), (c, i), "{name}");
    }
}

#[test]
fn pyramid_goal_graph_is_clean() {
    let (model, graph) = pyramid();
    assert!(check_structure(&model).is_empty());
    assert!(check_goal_structure(&graph, &model).is_empty());
    assert_eq!(graph.nodes.len(), 8);
    assert_eq!(graph.policy.len(), 7);
    assert!(graph.policy.iter().all(|s| s.permission == Permission::Allow));
}

#[test]
fn pyramid_lookups() {
    let (_, graph) = pyramid();
    let hit = graph
        .lookup_statement("Participant", AccessNeed::Write, "Delivery Interaction", Permission::Allow)
        .expect("row 1");
    assert_eq!(hit.requirement, "Participant interaction");
    assert!(graph
        .lookup_statement("Participant", AccessNeed::Interact, "Delivery Interaction", Permission::Allow)
        .is_none());
    assert!(graph
        .lookup_statement("Distribution Capability", AccessNeed::Read, "Delivery Item", Permission::Allow)
        .is_none());
}

#[test]
fn pyramid_trace() {
    let (_, graph) = pyramid();
    let stmt = graph.policy.iter().find(|s| s.requirement == "Distribute data").unwrap();
    assert_eq!(
        graph.trace(stmt),
        vec![vec![
            "Distribute data".to_string(),
            "Capture requirements for data distribution".to_string()
        ]]
    );
}

#[test]
fn pyramid_validation() {
    let (model, graph) = pyramid();
    let report = validate_access(&model, &graph);
    assert_eq!(report.warnings.len(), 8);
    assert_eq!(report.count(WarningKind::NoReadUp), 1);
    assert_eq!(report.count(WarningKind::NoWriteUp), 1);
    assert_eq!(report.count(WarningKind::UndefinedAccess), 6);
    let find = |kind| report.warnings.iter().find(|w| w.kind == kind).unwrap().triple.clone();
    assert_eq!(
        find(WarningKind::NoReadUp),
        AccessTriple::new("Formatting Rule", AccessNeed::Read, "Data Item")
    );
    assert_eq!(
        find(WarningKind::NoWriteUp),
        AccessTriple::new("Participant", AccessNeed::Write, "Delivery Interaction")
    );
    assert!(report.warnings.iter().any(|w| w.kind == WarningKind::UndefinedAccess
        && w.triple == AccessTriple::new("Distribution Capability", AccessNeed::Read, "Delivery Item")));
    let r = report.rule_results;
    assert_eq!(
        (r.simple_security, r.star_property, r.simple_integrity, r.integrity_star, r.absent_policies),
        (true, false, true, false, true)
    );
}

#[test]
fn pyramid_serialization_is_the_golden_file() {
    let (model, graph) = pyramid();
    let bytes = serialize_model(&model, &graph);
    assert_eq!(String::from_utf8(bytes).unwrap(), fixtures::PYRAMID);
}

#[test]
fn works_diary_round_trip_and_expansion() {
    let (model, graph) = parse_model(fixtures::WORKS_DIARY.as_bytes()).unwrap();
    assert_eq!(model.assets.len(), 2);
    assert!(model.assets.iter().all(|a| a.kind == AssetKind::Information));
    assert_eq!(
        expand_needs(&model),
        vec![
            AccessTriple::new("Works Diary", AccessNeed::Read, "Diary Event"),
            AccessTriple::new("Works Diary", AccessNeed::Write, "Diary Event"),
        ]
    );
    assert_eq!(String::from_utf8(serialize_model(&model, &graph)).unwrap(), fixtures::WORKS_DIARY);
}

#[test]
fn dot_views_parse_with_expected_counts() {
    let (model, graph) = pyramid();
    assert_eq!(dot_counts(&export_dot(&model, &graph, View::Asset)), (7, 10));
    let goal_dot = export_dot(&model, &graph, View::Goal);
    assert_eq!(dot_counts(&goal_dot), (8, 7));
    assert_eq!(
        goal_dot
            .lines()
            .filter(|l| l.ends_with("-> \"Capture requirements for data distribution\";"))
            .count(),
        7
    );

    let (diary, diary_goals) = parse_model(fixtures::WORKS_DIARY.as_bytes()).unwrap();
    let dot = export_dot(&diary, &diary_goals, View::Asset);
    assert!(dot.contains("taillabel=\"r,w"), "{dot}");
    assert_eq!(dot_counts(&dot), (2, 1));

    let empty = accessneeds::AssetModel::default();
    assert_eq!(dot_counts(&export_dot(&empty, &Default::default(), View::Asset)), (0, 0));
}
