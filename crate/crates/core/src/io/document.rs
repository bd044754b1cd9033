//! The JSON model document.
//!
//! ```json
//! {
//!   "version": 1,
//!   "assets": [{"name": "Works Diary", "kind": "information",
//!               "confidentiality": "low", "integrity": "medium"}],
//!   "associations": [{"source": "Works Diary", "target": "Diary Event",
//!                     "sourceNeeds": ["read", "write"]}],
//!   "goals": [], "refinements": [], "policy": [],
//!   "matrixOverride": [{"subject": "people", "resource": "people", "allowed": false}]
//! }
//! ```
//!
//! Unknown keys are rejected everywhere. Missing lists default to empty,
//! missing security values to `none`.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagnostics::{has_errors, ModelError};
use crate::goals::{check_goal_structure, Goal, GoalGraph, GoalKind, Permission, PolicyStatement, Refinement};
use crate::model::{
    check_structure, default_matrix, AccessNeed, Asset, AssetKind, AssetModel, Association, Multiplicity, NeedSet,
    SecurityValue,
};

pub const DOCUMENT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("model has {} structural error(s)", .0.len())]
    Semantic(Vec<ModelError>),
}

impl ParseError {
    /// Where the problem is: `line:column` for syntax errors, otherwise a
    /// document path.
    pub fn location(&self) -> String {
        match self {
            ParseError::Syntax { line, column, .. } => format!("{line}:{column}"),
            ParseError::Schema { path, .. } => path.clone(),
            ParseError::Semantic(errors) => errors
                .first()
                .map(|e| e.location.clone())
                .unwrap_or_else(|| "<root>".to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct ModelDocument {
    pub version: u32,
    #[serde(default)]
    pub assets: Vec<AssetDoc>,
    #[serde(default)]
    pub associations: Vec<AssociationDoc>,
    #[serde(default)]
    pub goals: Vec<GoalDoc>,
    #[serde(default)]
    pub refinements: Vec<RefinementDoc>,
    #[serde(default)]
    pub policy: Vec<StatementDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub matrix_override: Vec<MatrixCellDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct AssetDoc {
    pub name: String,
    pub kind: AssetKind,
    #[serde(default)]
    pub confidentiality: SecurityValue,
    #[serde(default)]
    pub integrity: SecurityValue,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extra_properties: BTreeMap<String, SecurityValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct AssociationDoc {
    pub source: String,
    pub target: String,
    #[serde(default)]
    pub source_needs: NeedSet,
    #[serde(default)]
    pub target_needs: NeedSet,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_multiplicity: Option<Multiplicity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_multiplicity: Option<Multiplicity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoalDoc {
    pub name: String,
    #[serde(default)]
    pub definition: String,
    pub kind: GoalKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RefinementDoc {
    pub parent: String,
    pub child: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StatementDoc {
    pub requirement: String,
    pub subject: String,
    pub access: AccessNeed,
    pub resource: String,
    pub permission: Permission,
}

/// A change to one cell of the default access-rule matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixCellDoc {
    pub subject: AssetKind,
    pub resource: AssetKind,
    pub allowed: bool,
}

impl ModelDocument {
    pub fn from_model(model: &AssetModel, graph: &GoalGraph) -> Self {
        ModelDocument {
            version: DOCUMENT_VERSION,
            assets: model
                .assets
                .iter()
                .map(|a| AssetDoc {
                    name: a.name.clone(),
                    kind: a.kind,
                    confidentiality: a.confidentiality,
                    integrity: a.integrity,
                    extra_properties: a.extra_properties.clone(),
                    parent: a.parent.clone(),
                })
                .collect(),
            associations: model
                .associations
                .iter()
                .map(|a| AssociationDoc {
                    source: a.source.clone(),
                    target: a.target.clone(),
                    source_needs: a.source_needs,
                    target_needs: a.target_needs,
                    source_multiplicity: a.source_multiplicity,
                    target_multiplicity: a.target_multiplicity,
                    note: a.note.clone(),
                })
                .collect(),
            goals: graph
                .nodes
                .iter()
                .map(|g| GoalDoc {
                    name: g.name.clone(),
                    definition: g.definition.clone(),
                    kind: g.kind,
                })
                .collect(),
            refinements: graph
                .refinements
                .iter()
                .map(|r| RefinementDoc {
                    parent: r.parent.clone(),
                    child: r.child.clone(),
                })
                .collect(),
            policy: graph
                .policy
                .iter()
                .map(|s| StatementDoc {
                    requirement: s.requirement.clone(),
                    subject: s.subject.clone(),
                    access: s.access,
                    resource: s.resource.clone(),
                    permission: s.permission,
                })
                .collect(),
            matrix_override: model
                .matrix
                .overrides()
                .into_iter()
                .map(|(subject, resource, allowed)| MatrixCellDoc {
                    subject,
                    resource,
                    allowed,
                })
                .collect(),
        }
    }

    /// Converts to core structures without running structural checks.
    pub fn into_model(self) -> Result<(AssetModel, GoalGraph), ParseError> {
        if self.version != DOCUMENT_VERSION {
            return Err(ParseError::Schema {
                path: "version".to_string(),
                message: format!(
                    "unsupported document version {}; expected {DOCUMENT_VERSION}",
                    self.version
                ),
            });
        }

        let mut matrix = default_matrix();
        let mut overridden = HashSet::new();
        for (i, cell) in self.matrix_override.iter().enumerate() {
            if !overridden.insert((cell.subject, cell.resource)) {
                return Err(ParseError::Schema {
                    path: format!("matrixOverride[{i}]"),
                    message: format!(
                        "cell ({}, {}) is overridden more than once",
                        cell.subject, cell.resource
                    ),
                });
            }
            matrix.set(cell.subject, cell.resource, cell.allowed);
        }

        let model = AssetModel {
            assets: self
                .assets
                .into_iter()
                .map(|a| Asset {
                    name: a.name,
                    kind: a.kind,
                    confidentiality: a.confidentiality,
                    integrity: a.integrity,
                    extra_properties: a.extra_properties,
                    parent: a.parent,
                })
                .collect(),
            associations: self
                .associations
                .into_iter()
                .map(|a| Association {
                    source: a.source,
                    target: a.target,
                    source_needs: a.source_needs,
                    target_needs: a.target_needs,
                    source_multiplicity: a.source_multiplicity,
                    target_multiplicity: a.target_multiplicity,
                    note: a.note,
                })
                .collect(),
            matrix,
        };
        let graph = GoalGraph {
            nodes: self
                .goals
                .into_iter()
                .map(|g| Goal {
                    name: g.name,
                    definition: g.definition,
                    kind: g.kind,
                })
                .collect(),
            refinements: self
                .refinements
                .into_iter()
                .map(|r| Refinement {
                    parent: r.parent,
                    child: r.child,
                })
                .collect(),
            policy: self
                .policy
                .into_iter()
                .map(|s| PolicyStatement {
                    requirement: s.requirement,
                    subject: s.subject,
                    access: s.access,
                    resource: s.resource,
                    permission: s.permission,
                })
                .collect(),
        };
        Ok((model, graph))
    }
}

/// Decodes a document without any structural checks beyond the schema.
pub fn parse_document(input: &[u8]) -> Result<ModelDocument, ParseError> {
    let mut de = serde_json::Deserializer::from_slice(input);
    let doc: ModelDocument = serde_path_to_error::deserialize(&mut de).map_err(|err| {
        let path = err.path().to_string();
        let inner = err.into_inner();
        if inner.is_data() {
            ParseError::Schema {
                path: if path.is_empty() || path == "." { "<root>".to_string() } else { path },
                message: strip_position(&inner),
            }
        } else {
            syntax_error(&inner)
        }
    })?;
    de.end().map_err(|e| syntax_error(&e))?;
    Ok(doc)
}

fn syntax_error(err: &serde_json::Error) -> ParseError {
    ParseError::Syntax {
        line: err.line(),
        column: err.column(),
        message: strip_position(err),
    }
}

fn strip_position(err: &serde_json::Error) -> String {
    let full = err.to_string();
    match full.rfind(" at line ") {
        Some(cut) => full[..cut].to_string(),
        None => full,
    }
}

/// Parses a model document and runs every structural check.
///
/// Only error-severity findings fail the parse; warnings such as requirements
/// owning no policy statement can be recovered with
/// [`check_goal_structure`].
pub fn parse_model(input: &[u8]) -> Result<(AssetModel, GoalGraph), ParseError> {
    let (model, graph) = parse_document(input)?.into_model()?;

    let findings = check_structure(&model);
    if has_errors(&findings) {
        return Err(ParseError::Semantic(findings));
    }
    let findings: Vec<ModelError> = check_goal_structure(&graph, &model)
        .into_iter()
        .filter(ModelError::is_error)
        .collect();
    if !findings.is_empty() {
        return Err(ParseError::Semantic(findings));
    }
    Ok((model, graph))
}

/// Canonical serialization: keys sorted alphabetically within every object,
/// list order preserved, two-space indentation, trailing newline.
pub fn serialize_model(model: &AssetModel, graph: &GoalGraph) -> Vec<u8> {
    let doc = ModelDocument::from_model(model, graph);
    // `Value` objects are key-sorted maps, which gives the canonical order.
    let value = serde_json::to_value(&doc).expect("model documents always serialize");
    let mut out = serde_json::to_vec_pretty(&value).expect("values always serialize");
    out.push(b'\n');
    out
}
