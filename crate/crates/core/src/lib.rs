//! Early-design access control validation over asset and goal models.
//!
//! An [`AssetModel`] describes assets (systems, information, people) with
//! qualitative confidentiality and integrity values, and the access needs
//! each asset has on the assets it is associated with. A [`GoalGraph`]
//! holds goals, the requirements refining them, and the allow/deny policy
//! statements each requirement owns.
//!
//! [`validate_access`] checks every access need against the policy and
//! reports needs that have no policy, needs the policy denies, and allowed
//! needs that break the Bell-LaPadula or Biba lattice rules.
//!
//! ```
//! use accessneeds::{fixtures, parse_model, validate_access, WarningKind};
//!
//! let (model, goals) = parse_model(fixtures::WORKS_DIARY.as_bytes()).unwrap();
//! let report = validate_access(&model, &goals);
//! assert_eq!(report.count(WarningKind::UndefinedAccess), 2);
//! ```

pub mod diagnostics;
pub mod fixtures;
pub mod goals;
pub mod io;
pub mod model;
#[cfg(any(test, feature = "testing"))]
pub mod testing;
pub mod validate;

pub use diagnostics::{has_errors, ModelError, ModelRule, Severity};
pub use goals::{check_goal_structure, Goal, GoalGraph, GoalKind, Permission, PolicyStatement, Refinement};
pub use io::{export_dot, parse_model, render_report, serialize_model, ParseError, ReportFormat, View};
pub use model::{
    check_structure, compare_levels, default_matrix, AccessNeed, AccessRuleMatrix, Asset, AssetKind, AssetModel,
    Association, Multiplicity, NeedSet, SecurityValue,
};
pub use validate::{
    expand_hierarchy, expand_needs, validate_access, AccessTriple, RuleResults, ValidationReport, Warning, WarningKind,
};
