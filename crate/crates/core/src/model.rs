//! Asset model: typed assets with qualitative security values, associations
//! carrying per-end access needs, and the subject/resource access-rule matrix.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::diagnostics::{ModelError, ModelRule};

/// Qualitative security value, ordered `None < Low < Medium < High`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SecurityValue {
    #[default]
    None,
    Low,
    Medium,
    High,
}

impl SecurityValue {
    pub const ALL: [SecurityValue; 4] = [
        SecurityValue::None,
        SecurityValue::Low,
        SecurityValue::Medium,
        SecurityValue::High,
    ];

    pub fn ordinal(self) -> u8 {
        self as u8
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SecurityValue::None => "none",
            SecurityValue::Low => "low",
            SecurityValue::Medium => "medium",
            SecurityValue::High => "high",
        }
    }
}

impl fmt::Display for SecurityValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SecurityValue::None => "None",
            SecurityValue::Low => "Low",
            SecurityValue::Medium => "Medium",
            SecurityValue::High => "High",
        };
        f.write_str(s)
    }
}

/// Compares two security values by ordinal.
pub fn compare_levels(a: SecurityValue, b: SecurityValue) -> Ordering {
    a.ordinal().cmp(&b.ordinal())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AssetKind {
    System,
    Information,
    People,
}

impl AssetKind {
    pub const ALL: [AssetKind; 3] = [AssetKind::System, AssetKind::Information, AssetKind::People];

    pub fn as_str(self) -> &'static str {
        match self {
            AssetKind::System => "system",
            AssetKind::Information => "information",
            AssetKind::People => "people",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for AssetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A single access need. Ordered `Read < Write < Interact`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AccessNeed {
    Read,
    Write,
    Interact,
}

impl AccessNeed {
    pub const ALL: [AccessNeed; 3] = [AccessNeed::Read, AccessNeed::Write, AccessNeed::Interact];

    pub fn as_str(self) -> &'static str {
        match self {
            AccessNeed::Read => "read",
            AccessNeed::Write => "write",
            AccessNeed::Interact => "interact",
        }
    }

    /// Single-letter class diagram adornment: `r`, `w` or `x`.
    pub fn adornment(self) -> char {
        match self {
            AccessNeed::Read => 'r',
            AccessNeed::Write => 'w',
            AccessNeed::Interact => 'x',
        }
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

impl fmt::Display for AccessNeed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Set of access needs on one association end.
///
/// Serialized as a list in `read`, `write`, `interact` order; a list with a
/// repeated need is rejected on deserialization.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct NeedSet(u8);

impl NeedSet {
    pub const EMPTY: NeedSet = NeedSet(0);

    pub fn new() -> Self {
        NeedSet::EMPTY
    }

    pub fn contains(self, need: AccessNeed) -> bool {
        self.0 & need.bit() != 0
    }

    /// Adds `need`, returning false if it was already present.
    pub fn insert(&mut self, need: AccessNeed) -> bool {
        let fresh = !self.contains(need);
        self.0 |= need.bit();
        fresh
    }

    pub fn union(self, other: NeedSet) -> NeedSet {
        NeedSet(self.0 | other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = AccessNeed> {
        AccessNeed::ALL.into_iter().filter(move |n| self.contains(*n))
    }

    /// Adornment text such as `r,w`; empty when no needs are present.
    pub fn adornment(self) -> String {
        self.iter()
            .map(|n| n.adornment().to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Debug for NeedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<AccessNeed> for NeedSet {
    fn from_iter<I: IntoIterator<Item = AccessNeed>>(iter: I) -> Self {
        let mut set = NeedSet::EMPTY;
        for need in iter {
            set.insert(need);
        }
        set
    }
}

impl Serialize for NeedSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for need in self.iter() {
            seq.serialize_element(&need)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for NeedSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct NeedSetVisitor;

        impl<'de> Visitor<'de> for NeedSetVisitor {
            type Value = NeedSet;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a list of distinct access needs")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<NeedSet, A::Error> {
                let mut set = NeedSet::EMPTY;
                while let Some(need) = seq.next_element::<AccessNeed>()? {
                    if !set.insert(need) {
                        return Err(de::Error::custom(format_args!("duplicate access need `{need}`")));
                    }
                }
                Ok(set)
            }
        }

        deserializer.deserialize_seq(NeedSetVisitor)
    }
}

/// Documentation-only association end multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Multiplicity {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "0..1")]
    ZeroOrOne,
    #[serde(rename = "1..*")]
    OneOrMore,
    #[serde(rename = "*")]
    Many,
}

impl Multiplicity {
    pub fn as_str(self) -> &'static str {
        match self {
            Multiplicity::One => "1",
            Multiplicity::ZeroOrOne => "0..1",
            Multiplicity::OneOrMore => "1..*",
            Multiplicity::Many => "*",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Asset {
    pub name: String,
    pub kind: AssetKind,
    pub confidentiality: SecurityValue,
    pub integrity: SecurityValue,
    /// Additional properties such as availability. Stored, never evaluated.
    pub extra_properties: BTreeMap<String, SecurityValue>,
    /// Name of the parent asset in an inheritance hierarchy.
    pub parent: Option<String>,
}

impl Asset {
    pub fn new(name: impl Into<String>, kind: AssetKind) -> Self {
        Asset {
            name: name.into(),
            kind,
            confidentiality: SecurityValue::None,
            integrity: SecurityValue::None,
            extra_properties: BTreeMap::new(),
            parent: None,
        }
    }

    pub fn with_values(mut self, confidentiality: SecurityValue, integrity: SecurityValue) -> Self {
        self.confidentiality = confidentiality;
        self.integrity = integrity;
        self
    }

    pub fn with_parent(mut self, parent: impl Into<String>) -> Self {
        self.parent = Some(parent.into());
        self
    }
}

/// A link between two assets.
///
/// `source_needs` are the needs the source has upon the target (the tail-end
/// adornment); `target_needs` are the needs the target has upon the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Association {
    pub source: String,
    pub target: String,
    pub source_needs: NeedSet,
    pub target_needs: NeedSet,
    pub source_multiplicity: Option<Multiplicity>,
    pub target_multiplicity: Option<Multiplicity>,
    /// Free-text annotation. Not evaluated.
    pub note: Option<String>,
}

impl Association {
    pub fn new(source: impl Into<String>, target: impl Into<String>) -> Self {
        Association {
            source: source.into(),
            target: target.into(),
            source_needs: NeedSet::EMPTY,
            target_needs: NeedSet::EMPTY,
            source_multiplicity: None,
            target_multiplicity: None,
            note: None,
        }
    }

    pub fn with_source_needs(mut self, needs: impl IntoIterator<Item = AccessNeed>) -> Self {
        self.source_needs = needs.into_iter().collect();
        self
    }

    pub fn with_target_needs(mut self, needs: impl IntoIterator<Item = AccessNeed>) -> Self {
        self.target_needs = needs.into_iter().collect();
        self
    }

    /// Whether this association joins `a` and `b`, in either direction.
    pub fn joins(&self, a: &str, b: &str) -> bool {
        (self.source == a && self.target == b) || (self.source == b && self.target == a)
    }
}

/// Which kinds of subject asset may hold access needs on which kinds of
/// resource asset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AccessRuleMatrix {
    allowed: [[bool; 3]; 3],
}

impl AccessRuleMatrix {
    pub fn allows(&self, subject: AssetKind, resource: AssetKind) -> bool {
        self.allowed[subject.index()][resource.index()]
    }

    pub fn set(&mut self, subject: AssetKind, resource: AssetKind, allowed: bool) {
        self.allowed[subject.index()][resource.index()] = allowed;
    }

    /// Cells that differ from [`default_matrix`], in subject-major kind order.
    pub fn overrides(&self) -> Vec<(AssetKind, AssetKind, bool)> {
        let base = default_matrix();
        let mut out = Vec::new();
        for subject in AssetKind::ALL {
            for resource in AssetKind::ALL {
                let cell = self.allows(subject, resource);
                if cell != base.allows(subject, resource) {
                    out.push((subject, resource, cell));
                }
            }
        }
        out
    }
}

impl Default for AccessRuleMatrix {
    fn default() -> Self {
        default_matrix()
    }
}

/// The built-in access-rule matrix.
///
/// People may access any kind of asset. System and information assets may
/// access system and information assets but never people.
pub fn default_matrix() -> AccessRuleMatrix {
    use AssetKind::*;
    let mut matrix = AccessRuleMatrix {
        allowed: [[false; 3]; 3],
    };
    for resource in AssetKind::ALL {
        matrix.set(People, resource, true);
    }
    for subject in [System, Information] {
        matrix.set(subject, System, true);
        matrix.set(subject, Information, true);
        matrix.set(subject, People, false);
    }
    matrix
}

/// A class-diagram style asset model.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AssetModel {
    pub assets: Vec<Asset>,
    pub associations: Vec<Association>,
    pub matrix: AccessRuleMatrix,
}

impl AssetModel {
    pub fn asset(&self, name: &str) -> Option<&Asset> {
        self.assets.iter().find(|a| a.name == name)
    }

    /// Name-keyed lookup table. The first asset wins when names repeat.
    pub fn index(&self) -> HashMap<&str, &Asset> {
        let mut map = HashMap::with_capacity(self.assets.len());
        for asset in &self.assets {
            map.entry(asset.name.as_str()).or_insert(asset);
        }
        map
    }

    /// Ancestors of `name`, nearest first. Stops at unknown names and cycles.
    pub fn ancestors(&self, name: &str) -> Vec<&str> {
        let index = self.index();
        let mut out: Vec<&str> = Vec::new();
        let mut current = index.get(name).and_then(|a| a.parent.as_deref());
        while let Some(parent) = current {
            if parent == name || out.contains(&parent) {
                break;
            }
            let Some(asset) = index.get(parent) else { break };
            out.push(asset.name.as_str());
            current = asset.parent.as_deref();
        }
        out
    }
}

/// Checks every asset-model invariant, returning one finding per violation
/// in document order.
pub fn check_structure(model: &AssetModel) -> Vec<ModelError> {
    let mut errors = Vec::new();
    let mut first_by_name: HashMap<&str, usize> = HashMap::new();

    for (i, asset) in model.assets.iter().enumerate() {
        if asset.name.is_empty() {
            errors.push(ModelError::new(
                ModelRule::EmptyAssetName,
                format!("assets[{i}].name"),
                "asset name must not be empty",
            ));
            continue;
        }
        if let Some(&first) = first_by_name.get(asset.name.as_str()) {
            errors.push(ModelError::new(
                ModelRule::DuplicateAssetName,
                format!("assets[{i}].name"),
                format!("asset name `{}` is already used by assets[{first}]", asset.name),
            ));
        } else {
            first_by_name.insert(asset.name.as_str(), i);
        }
    }

    let index = model.index();

    for (i, asset) in model.assets.iter().enumerate() {
        let Some(parent) = asset.parent.as_deref() else { continue };
        match index.get(parent) {
            None => errors.push(ModelError::new(
                ModelRule::UnknownParent,
                format!("assets[{i}].parent"),
                format!("asset `{}` names unknown parent `{parent}`", asset.name),
            )),
            Some(p) if p.kind != asset.kind => errors.push(ModelError::new(
                ModelRule::ParentKindMismatch,
                format!("assets[{i}].parent"),
                format!(
                    "asset `{}` ({}) cannot inherit from `{parent}` ({})",
                    asset.name, asset.kind, p.kind
                ),
            )),
            Some(_) => {}
        }
    }
    errors.extend(inheritance_cycles(model, &index));

    let mut seen_pairs: HashMap<(&str, &str), usize> = HashMap::new();
    for (i, assoc) in model.associations.iter().enumerate() {
        let source = index.get(assoc.source.as_str());
        let target = index.get(assoc.target.as_str());
        if source.is_none() {
            errors.push(ModelError::new(
                ModelRule::UnknownAsset,
                format!("associations[{i}].source"),
                format!("unknown asset `{}`", assoc.source),
            ));
        }
        if target.is_none() {
            errors.push(ModelError::new(
                ModelRule::UnknownAsset,
                format!("associations[{i}].target"),
                format!("unknown asset `{}`", assoc.target),
            ));
        }
        if assoc.source == assoc.target {
            errors.push(ModelError::new(
                ModelRule::SelfAssociation,
                format!("associations[{i}]"),
                format!("asset `{}` is associated with itself", assoc.source),
            ));
            continue;
        }

        let key = if assoc.source <= assoc.target {
            (assoc.source.as_str(), assoc.target.as_str())
        } else {
            (assoc.target.as_str(), assoc.source.as_str())
        };
        if let Some(&first) = seen_pairs.get(&key) {
            errors.push(ModelError::new(
                ModelRule::DuplicateAssociation,
                format!("associations[{i}]"),
                format!(
                    "`{}` and `{}` are already associated by associations[{first}]",
                    assoc.source, assoc.target
                ),
            ));
        } else {
            seen_pairs.insert(key, i);
        }

        if let (Some(source), Some(target)) = (source, target) {
            let ends = [
                ("sourceNeeds", assoc.source_needs, source, target),
                ("targetNeeds", assoc.target_needs, target, source),
            ];
            for (field, needs, subject, resource) in ends {
                if !needs.is_empty() && !model.matrix.allows(subject.kind, resource.kind) {
                    errors.push(ModelError::new(
                        ModelRule::MatrixViolation,
                        format!("associations[{i}].{field}"),
                        format!(
                            "{} asset `{}` may not hold access needs on {} asset `{}`",
                            subject.kind, subject.name, resource.kind, resource.name
                        ),
                    ));
                }
            }
        }
    }

    errors
}

/// One finding per parent cycle, reported at the cycle member that appears
/// first in the document.
fn inheritance_cycles(model: &AssetModel, index: &HashMap<&str, &Asset>) -> Vec<ModelError> {
    let position: HashMap<&str, usize> = model
        .assets
        .iter()
        .enumerate()
        .rev()
        .map(|(i, a)| (a.name.as_str(), i))
        .collect();
    let mut reported: HashSet<&str> = HashSet::new();
    let mut errors = Vec::new();

    for asset in &model.assets {
        let mut path: Vec<&str> = vec![asset.name.as_str()];
        let mut current = asset.parent.as_deref();
        while let Some(name) = current {
            if let Some(start) = path.iter().position(|n| *n == name) {
                let cycle = &path[start..];
                if cycle.iter().all(|n| !reported.contains(n)) {
                    reported.extend(cycle.iter().copied());
                    let first = cycle.iter().map(|n| position[n]).min().unwrap_or(0);
                    errors.push((
                        first,
                        ModelError::new(
                            ModelRule::CyclicInheritance,
                            format!("assets[{first}].parent"),
                            format!("parent chain is cyclic: {}", cycle.join(" -> ")),
                        ),
                    ));
                }
                break;
            }
            path.push(name);
            current = index.get(name).and_then(|a| a.parent.as_deref());
        }
    }
    errors.sort_by_key(|(first, _)| *first);
    errors.into_iter().map(|(_, e)| e).collect()
}
