//! Structural findings produced when checking asset models and goal graphs.

use std::fmt;

/// How serious a structural finding is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Warning,
    Error,
}

/// The structural rule a [`ModelError`] reports as broken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModelRule {
    EmptyAssetName,
    DuplicateAssetName,
    UnknownParent,
    ParentKindMismatch,
    CyclicInheritance,
    UnknownAsset,
    SelfAssociation,
    DuplicateAssociation,
    MatrixViolation,
    EmptyGoalName,
    DuplicateGoalName,
    UnknownGoal,
    CyclicRefinement,
    RequirementRefinedByGoal,
    UnknownRequirement,
    NotARequirement,
    ConflictingPermission,
    DuplicateStatement,
    UnownedRequirement,
}

impl ModelRule {
    pub fn severity(self) -> Severity {
        match self {
            ModelRule::UnownedRequirement => Severity::Warning,
            _ => Severity::Error,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModelRule::EmptyAssetName => "EmptyAssetName",
            ModelRule::DuplicateAssetName => "DuplicateAssetName",
            ModelRule::UnknownParent => "UnknownParent",
            ModelRule::ParentKindMismatch => "ParentKindMismatch",
            ModelRule::CyclicInheritance => "CyclicInheritance",
            ModelRule::UnknownAsset => "UnknownAsset",
            ModelRule::SelfAssociation => "SelfAssociation",
            ModelRule::DuplicateAssociation => "DuplicateAssociation",
            ModelRule::MatrixViolation => "MatrixViolation",
            ModelRule::EmptyGoalName => "EmptyGoalName",
            ModelRule::DuplicateGoalName => "DuplicateGoalName",
            ModelRule::UnknownGoal => "UnknownGoal",
            ModelRule::CyclicRefinement => "CyclicRefinement",
            ModelRule::RequirementRefinedByGoal => "RequirementRefinedByGoal",
            ModelRule::UnknownRequirement => "UnknownRequirement",
            ModelRule::NotARequirement => "NotARequirement",
            ModelRule::ConflictingPermission => "ConflictingPermission",
            ModelRule::DuplicateStatement => "DuplicateStatement",
            ModelRule::UnownedRequirement => "UnownedRequirement",
        }
    }
}

impl fmt::Display for ModelRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A single structural finding.
///
/// `location` uses the same path syntax as schema errors, e.g.
/// `associations[2].sourceNeeds`, so every finding can be traced back to
/// the element of the model document that caused it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelError {
    pub rule: ModelRule,
    pub location: String,
    pub detail: String,
}

impl ModelError {
    pub(crate) fn new(rule: ModelRule, location: impl Into<String>, detail: impl Into<String>) -> Self {
        ModelError {
            rule,
            location: location.into(),
            detail: detail.into(),
        }
    }

    pub fn severity(&self) -> Severity {
        self.rule.severity()
    }

    pub fn is_error(&self) -> bool {
        self.severity() == Severity::Error
    }
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity() {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{tag}: {} at {}: {}", self.rule, self.location, self.detail)
    }
}

/// Returns true if any finding in `findings` has error severity.
pub fn has_errors(findings: &[ModelError]) -> bool {
    findings.iter().any(ModelError::is_error)
}
