//! Proptest strategies that generate random, structurally valid models.
//!
//! Generated models have at most six assets and at most ten policy
//! statements. Every model passes [`check_structure`] and
//! [`check_goal_structure`] without errors.
//!
//! [`check_structure`]: crate::model::check_structure
//! [`check_goal_structure`]: crate::goals::check_goal_structure

use std::collections::HashSet;

use proptest::prelude::*;

use crate::goals::{Goal, GoalGraph, GoalKind, Permission, PolicyStatement, Refinement};
use crate::model::{
    default_matrix, AccessNeed, Asset, AssetKind, AssetModel, Association, Multiplicity, NeedSet, SecurityValue,
};

pub const MAX_ASSETS: usize = 6;
pub const MAX_STATEMENTS: usize = 10;

/// Asset names, including characters that need escaping in JSON and DOT.
const NAMES: [&str; MAX_ASSETS] = ["Data Item", "Participant", "Formatting Rule", "Clé \"β\"", "back\\slash", "R"];

const MULTIPLICITIES: [Option<Multiplicity>; 5] = [
    None,
    Some(Multiplicity::One),
    Some(Multiplicity::ZeroOrOne),
    Some(Multiplicity::OneOrMore),
    Some(Multiplicity::Many),
];

fn level(i: u8) -> SecurityValue {
    SecurityValue::ALL[(i % 4) as usize]
}

fn need_set(bits: u8) -> NeedSet {
    AccessNeed::ALL
        .into_iter()
        .enumerate()
        .filter(|(i, _)| bits & (1 << i) != 0)
        .map(|(_, n)| n)
        .collect()
}

type AssetSpec = (u8, u8, u8, Option<usize>, Option<u8>);
type AssocSpec = (usize, usize, u8, u8, usize, usize, bool);
type StatementSpec = (usize, usize, u8, usize, bool);

#[allow(clippy::type_complexity)]
fn raw() -> impl Strategy<
    Value = (
        Vec<AssetSpec>,
        Vec<(u8, u8, bool)>,
        Vec<AssocSpec>,
        (usize, usize, Vec<(usize, usize)>),
        Vec<StatementSpec>,
    ),
> {
    (
        prop::collection::vec(
            (0u8..3, 0u8..4, 0u8..4, prop::option::weighted(0.3, 0usize..MAX_ASSETS), prop::option::of(0u8..4)),
            0..=MAX_ASSETS,
        ),
        prop::collection::vec((0u8..3, 0u8..3, any::<bool>()), 0..3),
        prop::collection::vec(
            (0usize..MAX_ASSETS, 0usize..MAX_ASSETS, 0u8..8, 0u8..8, 0usize..5, 0usize..5, any::<bool>()),
            0..12,
        ),
        (0usize..3, 0usize..4, prop::collection::vec((0usize..8, 0usize..8), 0..8)),
        prop::collection::vec((0usize..8, 0usize..MAX_ASSETS, 0u8..3, 0usize..MAX_ASSETS, any::<bool>()), 0..=MAX_STATEMENTS),
    )
}

/// A random valid (asset model, goal graph) pair.
pub fn arb_model() -> impl Strategy<Value = (AssetModel, GoalGraph)> {
    raw().prop_map(|(asset_specs, overrides, assoc_specs, (n_goals, n_reqs, refine_specs), statement_specs)| {
        let mut matrix = default_matrix();
        for (s, r, allowed) in overrides {
            matrix.set(AssetKind::ALL[s as usize], AssetKind::ALL[r as usize], allowed);
        }

        let mut assets: Vec<Asset> = Vec::new();
        for (i, (kind, c, integ, parent, extra)) in asset_specs.into_iter().enumerate() {
            let mut asset = Asset::new(NAMES[i], AssetKind::ALL[kind as usize]).with_values(level(c), level(integ));
            // Parents point backwards, which keeps chains acyclic.
            if let Some(p) = parent.filter(|p| *p < i) {
                if assets[p].kind == asset.kind {
                    asset.parent = Some(assets[p].name.clone());
                }
            }
            if let Some(v) = extra {
                asset.extra_properties.insert("availability".into(), level(v));
            }
            assets.push(asset);
        }

        let mut associations: Vec<Association> = Vec::new();
        let mut pairs = HashSet::new();
        if !assets.is_empty() {
            for (a, b, src, tgt, ms, mt, note) in assoc_specs {
                let (a, b) = (a % assets.len(), b % assets.len());
                if a == b || !pairs.insert((a.min(b), a.max(b))) {
                    continue;
                }
                let (sa, ta) = (&assets[a], &assets[b]);
                let mut assoc = Association::new(&sa.name, &ta.name);
                if matrix.allows(sa.kind, ta.kind) {
                    assoc.source_needs = need_set(src);
                }
                if matrix.allows(ta.kind, sa.kind) {
                    assoc.target_needs = need_set(tgt);
                }
                assoc.source_multiplicity = MULTIPLICITIES[ms];
                assoc.target_multiplicity = MULTIPLICITIES[mt];
                if note {
                    assoc.note = Some(format!("link {a}-{b}"));
                }
                associations.push(assoc);
            }
        }

        // Goals first, then requirements; refinements always point from a
        // lower to a higher index, so requirements never refine into goals.
        let mut nodes: Vec<Goal> = (0..n_goals).map(|i| Goal::goal(format!("Goal {i}"), "")).collect();
        nodes.extend((0..n_reqs).map(|i| Goal::requirement(format!("Requirement {i}"), format!("Shall hold #{i}"))));
        let mut refinements = Vec::new();
        let mut edges = HashSet::new();
        if nodes.len() > 1 {
            for (p, c) in refine_specs {
                let (p, c) = (p % nodes.len(), c % nodes.len());
                if p < c && edges.insert((p, c)) {
                    refinements.push(Refinement::new(&nodes[p].name, &nodes[c].name));
                }
            }
        }

        let mut policy = Vec::new();
        let mut keys = HashSet::new();
        if n_reqs > 0 && !assets.is_empty() {
            for (q, s, access, r, allow) in statement_specs {
                let (s, r) = (s % assets.len(), r % assets.len());
                let access = AccessNeed::ALL[access as usize];
                if !keys.insert((s, access, r)) {
                    continue;
                }
                policy.push(PolicyStatement::new(
                    format!("Requirement {}", q % n_reqs),
                    &assets[s].name,
                    access,
                    &assets[r].name,
                    if allow { Permission::Allow } else { Permission::Deny },
                ));
            }
        }

        let model = AssetModel {
            assets,
            associations,
            matrix,
        };
        debug_assert!(nodes.iter().filter(|g| g.kind == GoalKind::Requirement).count() == n_reqs);
        (model, GoalGraph { nodes, refinements, policy })
    })
}
