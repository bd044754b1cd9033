//! On-disk model documents, report rendering, and DOT export.

mod document;
mod dot;
mod report;

pub use document::{
    parse_document, parse_model, serialize_model, AssetDoc, AssociationDoc, GoalDoc, MatrixCellDoc, ModelDocument,
    ParseError, RefinementDoc, StatementDoc, DOCUMENT_VERSION,
};
pub use dot::{export_dot, View};
pub use report::{render_report, ReportFormat};
