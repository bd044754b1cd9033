//! Graphviz DOT renderings of the asset and goal views.

use std::fmt::Write;

use crate::goals::{GoalGraph, GoalKind};
use crate::model::AssetModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum View {
    Asset,
    Goal,
}

impl std::str::FromStr for View {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "asset" => Ok(View::Asset),
            "goal" => Ok(View::Goal),
            other => Err(format!("unknown view `{other}`; expected `asset` or `goal`")),
        }
    }
}

/// Quotes `s` as a DOT string literal.
fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => {}
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

pub fn export_dot(model: &AssetModel, graph: &GoalGraph, view: View) -> String {
    match view {
        View::Asset => asset_view(model),
        View::Goal => goal_view(graph),
    }
}

/// One box per asset; associations are undirected edges whose tail and head
/// labels carry the access needs (and multiplicity, if any) of the source and
/// target ends.
fn asset_view(model: &AssetModel) -> String {
    let mut out = String::from("digraph assets {\n  node [shape=box];\n  edge [dir=none];\n");
    for asset in &model.assets {
        let label = format!(
            "{}\n<<{}>>\nC: {}, I: {}",
            asset.name, asset.kind, asset.confidentiality, asset.integrity
        );
        writeln!(out, "  {} [label={}];", quote(&asset.name), quote(&label)).unwrap();
    }
    for assoc in &model.associations {
        let mut attrs = Vec::new();
        let ends = [
            ("taillabel", assoc.source_needs, assoc.source_multiplicity),
            ("headlabel", assoc.target_needs, assoc.target_multiplicity),
        ];
        for (attr, needs, multiplicity) in ends {
            let mut lines = Vec::new();
            if !needs.is_empty() {
                lines.push(needs.adornment());
            }
            if let Some(m) = multiplicity {
                lines.push(m.as_str().to_string());
            }
            if !lines.is_empty() {
                attrs.push(format!("{attr}={}", quote(&lines.join("\n"))));
            }
        }
        write!(out, "  {} -> {}", quote(&assoc.source), quote(&assoc.target)).unwrap();
        if !attrs.is_empty() {
            write!(out, " [{}]", attrs.join(", ")).unwrap();
        }
        out.push_str(";\n");
    }
    out.push_str("}\n");
    out
}

/// Goals as parallelograms, requirements as boxes; one edge per refinement
/// from child to parent.
fn goal_view(graph: &GoalGraph) -> String {
    let mut out = String::from("digraph goals {\n  rankdir=BT;\n");
    for goal in &graph.nodes {
        let shape = match goal.kind {
            GoalKind::Goal => "parallelogram",
            GoalKind::Requirement => "box",
        };
        writeln!(out, "  {} [shape={shape}];", quote(&goal.name)).unwrap();
    }
    for r in &graph.refinements {
        writeln!(out, "  {} -> {};", quote(&r.child), quote(&r.parent)).unwrap();
    }
    out.push_str("}\n");
    out
}
