#![no_main]
use libfuzzer_sys::fuzz_target;

use accessneeds::{
    expand_hierarchy, expand_needs, export_dot, parse_model, render_report, validate_access, ReportFormat, View,
    WarningKind,
};

fuzz_target!(|data: &[u8]| {
    let Ok((model, graph)) = parse_model(data) else { return };
    for model in [model.clone(), expand_hierarchy(&model)] {
        let report = validate_access(&model, &graph);
        let resolved = report.count(WarningKind::UndefinedAccess) + report.count(WarningKind::UnauthorisedAccess);
        assert!(resolved <= expand_needs(&model).len());
        let json = render_report(&report, ReportFormat::Json);
        serde_json::from_str::<serde_json::Value>(&json).expect("report JSON parses");
        let _ = render_report(&report, ReportFormat::Text);
    }
    let _ = export_dot(&model, &graph, View::Asset);
    let _ = export_dot(&model, &graph, View::Goal);
});
