//! Access control validation.
//!
//! Every access need in the asset model is expanded into single-need
//! triples, which are then resolved against the policy:
//!
//! 1. If an `allow` statement covers the triple, the subject and resource
//!    confidentiality and integrity values are compared against four
//!    lattice rules (see [`WarningKind`]).
//! 2. Otherwise, if a `deny` statement covers it, the need is reported as
//!    [`WarningKind::UnauthorisedAccess`].
//! 3. Otherwise the need has no policy at all and is reported as
//!    [`WarningKind::UndefinedAccess`].
//!
//! Asset confidentiality and integrity values double as both clearance (when
//! the asset is the subject) and classification (when it is the resource).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::goals::{GoalGraph, Permission};
use crate::model::{AccessNeed, Asset, AssetModel, Association, NeedSet};

/// A single-need access triple.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AccessTriple {
    pub subject: String,
    pub access: AccessNeed,
    pub resource: String,
}

impl AccessTriple {
    pub fn new(subject: impl Into<String>, access: AccessNeed, resource: impl Into<String>) -> Self {
        AccessTriple {
            subject: subject.into(),
            access,
            resource: resource.into(),
        }
    }
}

impl fmt::Display for AccessTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} --{}--> {}", self.subject, self.access, self.resource)
    }
}

/// The six validation findings.
///
/// The lattice rules are named after the labels used in the summary table:
/// `NoReadUp` is the Simple Security Property and `NoWriteDown` the
/// *-Property (Bell-LaPadula, confidentiality); `NoWriteUp` is reported as
/// the Simple Integrity Property and `NoReadDown` as the Integrity
/// *-Property (Biba, integrity). Canonical Biba terminology swaps the two
/// integrity labels; the summary keeps the labels above.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WarningKind {
    UndefinedAccess,
    UnauthorisedAccess,
    NoReadUp,
    NoWriteDown,
    NoWriteUp,
    NoReadDown,
}

impl WarningKind {
    pub const ALL: [WarningKind; 6] = [
        WarningKind::UndefinedAccess,
        WarningKind::UnauthorisedAccess,
        WarningKind::NoReadUp,
        WarningKind::NoWriteDown,
        WarningKind::NoWriteUp,
        WarningKind::NoReadDown,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            WarningKind::UndefinedAccess => "undefined_access",
            WarningKind::UnauthorisedAccess => "unauthorised_access",
            WarningKind::NoReadUp => "no_read_up",
            WarningKind::NoWriteDown => "no_write_down",
            WarningKind::NoWriteUp => "no_write_up",
            WarningKind::NoReadDown => "no_read_down",
        }
    }

    pub fn is_level_check(self) -> bool {
        !matches!(self, WarningKind::UndefinedAccess | WarningKind::UnauthorisedAccess)
    }

    fn headline(self) -> &'static str {
        match self {
            WarningKind::UndefinedAccess => "Undefined access",
            WarningKind::UnauthorisedAccess => "Unauthorised access",
            WarningKind::NoReadUp => "Potential no read-up violation",
            WarningKind::NoWriteDown => "Potential no write-down violation",
            WarningKind::NoWriteUp => "Potential no write-up violation",
            WarningKind::NoReadDown => "Potential no read-down violation",
        }
    }
}

impl fmt::Display for WarningKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Warning {
    pub kind: WarningKind,
    pub triple: AccessTriple,
    pub message: String,
}

impl Warning {
    pub fn new(kind: WarningKind, triple: AccessTriple) -> Self {
        let message = format!("{}: {triple}", kind.headline());
        Warning { kind, triple, message }
    }
}

/// Which security rules were violated at least once.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RuleResults {
    pub simple_security: bool,
    pub star_property: bool,
    pub simple_integrity: bool,
    pub integrity_star: bool,
    pub absent_policies: bool,
}

impl RuleResults {
    /// Summary rows as (label, violated), in table order.
    pub fn rows(&self) -> [(&'static str, bool); 5] {
        [
            ("Simple Security Property", self.simple_security),
            ("*-Property", self.star_property),
            ("Simple Integrity Property", self.simple_integrity),
            ("Integrity *-Property", self.integrity_star),
            ("Absent policies", self.absent_policies),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub warnings: Vec<Warning>,
    /// Count per kind; every kind is present, zero counts included.
    pub summary: BTreeMap<WarningKind, usize>,
    pub rule_results: RuleResults,
}

impl ValidationReport {
    pub fn from_warnings(warnings: Vec<Warning>) -> Self {
        let mut summary: BTreeMap<WarningKind, usize> = WarningKind::ALL.iter().map(|k| (*k, 0)).collect();
        for w in &warnings {
            *summary.entry(w.kind).or_default() += 1;
        }
        let fired = |k: WarningKind| summary[&k] > 0;
        let rule_results = RuleResults {
            simple_security: fired(WarningKind::NoReadUp),
            star_property: fired(WarningKind::NoWriteDown),
            simple_integrity: fired(WarningKind::NoWriteUp),
            integrity_star: fired(WarningKind::NoReadDown),
            absent_policies: fired(WarningKind::UndefinedAccess),
        };
        ValidationReport {
            warnings,
            summary,
            rule_results,
        }
    }

    pub fn count(&self, kind: WarningKind) -> usize {
        self.summary.get(&kind).copied().unwrap_or(0)
    }

    pub fn is_clean(&self) -> bool {
        self.warnings.is_empty()
    }
}

/// Expands every non-empty association end into single-need triples, sorted
/// by subject name, then resource name, then need.
pub fn expand_needs(model: &AssetModel) -> Vec<AccessTriple> {
    let mut triples: Vec<AccessTriple> = model
        .associations
        .iter()
        .flat_map(|a| {
            let forward = a.source_needs.iter().map(|n| AccessTriple::new(&a.source, n, &a.target));
            let backward = a.target_needs.iter().map(|n| AccessTriple::new(&a.target, n, &a.source));
            forward.chain(backward)
        })
        .collect();
    triples.sort_by(|x, y| {
        (&x.subject, &x.resource, x.access).cmp(&(&y.subject, &y.resource, y.access))
    });
    triples
}

/// Returns a copy of `model` in which every asset also holds, as subject,
/// the access needs of all its ancestors.
///
/// Needs an asset has as a resource are not inherited. Inherited needs are
/// merged into an existing association between the descendant and the
/// resource when there is one; otherwise a new association is appended.
pub fn expand_hierarchy(model: &AssetModel) -> AssetModel {
    let mut expanded = model.clone();

    // Needs each asset holds as subject, keyed by resource, in document order.
    let mut own_needs: HashMap<&str, Vec<(&str, NeedSet)>> = HashMap::new();
    for a in &model.associations {
        if !a.source_needs.is_empty() {
            own_needs.entry(&a.source).or_default().push((&a.target, a.source_needs));
        }
        if !a.target_needs.is_empty() {
            own_needs.entry(&a.target).or_default().push((&a.source, a.target_needs));
        }
    }

    for asset in &model.assets {
        for ancestor in model.ancestors(&asset.name) {
            let Some(inherited) = own_needs.get(ancestor) else { continue };
            for &(resource, needs) in inherited {
                if resource == asset.name {
                    continue;
                }
                grant(&mut expanded.associations, &asset.name, resource, needs);
            }
        }
    }
    expanded
}

fn grant(associations: &mut Vec<Association>, subject: &str, resource: &str, needs: NeedSet) {
    if let Some(a) = associations.iter_mut().find(|a| a.joins(subject, resource)) {
        if a.source == subject {
            a.source_needs = a.source_needs.union(needs);
        } else {
            a.target_needs = a.target_needs.union(needs);
        }
        return;
    }
    let mut a = Association::new(subject, resource);
    a.source_needs = needs;
    associations.push(a);
}

/// Level warnings for a triple the policy allows, in rule order.
fn level_checks(subject: &Asset, access: AccessNeed, resource: &Asset) -> Vec<WarningKind> {
    let mut kinds = Vec::new();
    let (subj_c, res_c) = (subject.confidentiality, resource.confidentiality);
    if res_c > subj_c && access == AccessNeed::Read {
        kinds.push(WarningKind::NoReadUp);
    }
    if subj_c > res_c && access == AccessNeed::Write {
        kinds.push(WarningKind::NoWriteDown);
    }
    let (subj_i, res_i) = (subject.integrity, resource.integrity);
    if res_i > subj_i && access == AccessNeed::Write {
        kinds.push(WarningKind::NoWriteUp);
    }
    if subj_i > res_i && access == AccessNeed::Read {
        kinds.push(WarningKind::NoReadDown);
    }
    kinds
}

/// Validates every expanded access need against the policy.
///
/// Both inputs are expected to have passed their structural checks. Triples
/// naming an asset the model does not define are skipped.
pub fn validate_access(model: &AssetModel, graph: &GoalGraph) -> ValidationReport {
    let assets = model.index();
    let mut warnings = Vec::new();

    for triple in expand_needs(model) {
        let allowed = graph
            .lookup_statement(&triple.subject, triple.access, &triple.resource, Permission::Allow)
            .is_some();
        if allowed {
            let (Some(subject), Some(resource)) =
                (assets.get(triple.subject.as_str()), assets.get(triple.resource.as_str()))
            else {
                continue;
            };
            for kind in level_checks(subject, triple.access, resource) {
                warnings.push(Warning::new(kind, triple.clone()));
            }
        } else if graph
            .lookup_statement(&triple.subject, triple.access, &triple.resource, Permission::Deny)
            .is_some()
        {
            warnings.push(Warning::new(WarningKind::UnauthorisedAccess, triple));
        } else {
            warnings.push(Warning::new(WarningKind::UndefinedAccess, triple));
        }
    }

    ValidationReport::from_warnings(warnings)
}
