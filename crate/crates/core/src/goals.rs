//! KAOS-style goal graph, access control policy statements, and traceability
//! from each statement to the requirement that owns it.

use std::collections::{HashMap, HashSet};
use std::fmt;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::{Deserialize, Serialize};

use crate::diagnostics::{ModelError, ModelRule};
use crate::model::{AccessNeed, AssetModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GoalKind {
    Goal,
    Requirement,
}

impl GoalKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GoalKind::Goal => "goal",
            GoalKind::Requirement => "requirement",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Permission {
    Allow,
    Deny,
}

impl Permission {
    pub fn as_str(self) -> &'static str {
        match self {
            Permission::Allow => "allow",
            Permission::Deny => "deny",
        }
    }
}

impl fmt::Display for Permission {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A goal or requirement node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Goal {
    pub name: String,
    pub definition: String,
    pub kind: GoalKind,
}

impl Goal {
    pub fn goal(name: impl Into<String>, definition: impl Into<String>) -> Self {
        Goal {
            name: name.into(),
            definition: definition.into(),
            kind: GoalKind::Goal,
        }
    }

    pub fn requirement(name: impl Into<String>, definition: impl Into<String>) -> Self {
        Goal {
            name: name.into(),
            definition: definition.into(),
            kind: GoalKind::Requirement,
        }
    }
}

/// `child` refines `parent`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Refinement {
    pub parent: String,
    pub child: String,
}

impl Refinement {
    pub fn new(parent: impl Into<String>, child: impl Into<String>) -> Self {
        Refinement {
            parent: parent.into(),
            child: child.into(),
        }
    }
}

/// `subject` may (or may not) perform `access` on `resource`, as stated by
/// exactly one requirement.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolicyStatement {
    pub requirement: String,
    pub subject: String,
    pub access: AccessNeed,
    pub resource: String,
    pub permission: Permission,
}

impl PolicyStatement {
    pub fn new(
        requirement: impl Into<String>,
        subject: impl Into<String>,
        access: AccessNeed,
        resource: impl Into<String>,
        permission: Permission,
    ) -> Self {
        PolicyStatement {
            requirement: requirement.into(),
            subject: subject.into(),
            access,
            resource: resource.into(),
            permission,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GoalGraph {
    pub nodes: Vec<Goal>,
    pub refinements: Vec<Refinement>,
    pub policy: Vec<PolicyStatement>,
}

impl GoalGraph {
    pub fn node(&self, name: &str) -> Option<&Goal> {
        self.nodes.iter().find(|g| g.name == name)
    }

    /// Finds the statement matching all four fields exactly.
    pub fn lookup_statement(
        &self,
        subject: &str,
        access: AccessNeed,
        resource: &str,
        permission: Permission,
    ) -> Option<&PolicyStatement> {
        self.policy.iter().find(|s| {
            s.access == access && s.permission == permission && s.subject == subject && s.resource == resource
        })
    }

    /// Parents of `name` in refinement document order, without repeats.
    pub fn parents<'a>(&'a self, name: &str) -> Vec<&'a str> {
        let mut out: Vec<&str> = Vec::new();
        for r in &self.refinements {
            if r.child == name && !out.contains(&r.parent.as_str()) {
                out.push(r.parent.as_str());
            }
        }
        out
    }

    /// Every refinement path from the statement's owning requirement up to a
    /// root goal. Paths are produced depth-first, visiting parents in
    /// document order.
    pub fn trace(&self, statement: &PolicyStatement) -> Vec<Vec<String>> {
        let mut paths = Vec::new();
        let mut path = vec![statement.requirement.as_str()];
        self.trace_from(&mut path, &mut paths);
        paths
    }

    fn trace_from<'a>(&'a self, path: &mut Vec<&'a str>, paths: &mut Vec<Vec<String>>) {
        let current = *path.last().expect("path is never empty");
        let parents: Vec<&str> = self
            .parents(current)
            .into_iter()
            .filter(|p| !path.contains(p))
            .collect();
        if parents.is_empty() {
            paths.push(path.iter().map(|s| s.to_string()).collect());
            return;
        }
        for parent in parents {
            path.push(parent);
            self.trace_from(path, paths);
            path.pop();
        }
    }
}

/// Checks every goal-graph invariant against an already checked asset model.
///
/// Requirements that own no policy statement are reported with warning
/// severity; everything else is an error.
pub fn check_goal_structure(graph: &GoalGraph, model: &AssetModel) -> Vec<ModelError> {
    let mut errors = Vec::new();

    let mut by_name: HashMap<&str, usize> = HashMap::new();
    for (i, goal) in graph.nodes.iter().enumerate() {
        if goal.name.is_empty() {
            errors.push(ModelError::new(
                ModelRule::EmptyGoalName,
                format!("goals[{i}].name"),
                "goal name must not be empty",
            ));
            continue;
        }
        if let Some(&first) = by_name.get(goal.name.as_str()) {
            errors.push(ModelError::new(
                ModelRule::DuplicateGoalName,
                format!("goals[{i}].name"),
                format!("goal name `{}` is already used by goals[{first}]", goal.name),
            ));
        } else {
            by_name.insert(goal.name.as_str(), i);
        }
    }

    let mut dag: DiGraph<usize, usize> = DiGraph::new();
    let vertices: Vec<NodeIndex> = (0..graph.nodes.len()).map(|i| dag.add_node(i)).collect();

    for (i, r) in graph.refinements.iter().enumerate() {
        let parent = by_name.get(r.parent.as_str()).copied();
        let child = by_name.get(r.child.as_str()).copied();
        if parent.is_none() {
            errors.push(ModelError::new(
                ModelRule::UnknownGoal,
                format!("refinements[{i}].parent"),
                format!("unknown goal `{}`", r.parent),
            ));
        }
        if child.is_none() {
            errors.push(ModelError::new(
                ModelRule::UnknownGoal,
                format!("refinements[{i}].child"),
                format!("unknown goal `{}`", r.child),
            ));
        }
        let (Some(p), Some(c)) = (parent, child) else { continue };
        if graph.nodes[p].kind == GoalKind::Requirement && graph.nodes[c].kind == GoalKind::Goal {
            errors.push(ModelError::new(
                ModelRule::RequirementRefinedByGoal,
                format!("refinements[{i}]"),
                format!("requirement `{}` cannot be refined by goal `{}`", r.parent, r.child),
            ));
        }
        dag.add_edge(vertices[c], vertices[p], i);
    }

    let mut cycles: Vec<(usize, ModelError)> = tarjan_scc(&dag)
        .into_iter()
        .filter(|scc| scc.len() > 1 || dag.contains_edge(scc[0], scc[0]))
        .map(|scc| {
            let members: HashSet<NodeIndex> = scc.iter().copied().collect();
            let first_edge = dag
                .edge_indices()
                .filter(|e| {
                    let (a, b) = dag.edge_endpoints(*e).expect("edge exists");
                    members.contains(&a) && members.contains(&b)
                })
                .map(|e| dag[e])
                .min()
                .expect("a cycle has an edge");
            let mut names: Vec<usize> = scc.iter().map(|v| dag[*v]).collect();
            names.sort_unstable();
            let names: Vec<&str> = names.iter().map(|i| graph.nodes[*i].name.as_str()).collect();
            (
                first_edge,
                ModelError::new(
                    ModelRule::CyclicRefinement,
                    format!("refinements[{first_edge}]"),
                    format!("refinement cycle through {}", names.join(", ")),
                ),
            )
        })
        .collect();
    cycles.sort_by_key(|(edge, _)| *edge);
    errors.extend(cycles.into_iter().map(|(_, e)| e));

    let assets = model.index();
    let mut seen: HashMap<(&str, AccessNeed, &str), (usize, Permission)> = HashMap::new();
    let mut conflicted: HashSet<(&str, AccessNeed, &str)> = HashSet::new();
    for (i, s) in graph.policy.iter().enumerate() {
        match by_name.get(s.requirement.as_str()) {
            None => errors.push(ModelError::new(
                ModelRule::UnknownRequirement,
                format!("policy[{i}].requirement"),
                format!("unknown requirement `{}`", s.requirement),
            )),
            Some(&g) if graph.nodes[g].kind != GoalKind::Requirement => errors.push(ModelError::new(
                ModelRule::NotARequirement,
                format!("policy[{i}].requirement"),
                format!("`{}` is a goal; policy statements belong to requirements", s.requirement),
            )),
            Some(_) => {}
        }
        for (field, name) in [("subject", &s.subject), ("resource", &s.resource)] {
            if !assets.contains_key(name.as_str()) {
                errors.push(ModelError::new(
                    ModelRule::UnknownAsset,
                    format!("policy[{i}].{field}"),
                    format!("unknown asset `{name}`"),
                ));
            }
        }

        let key = (s.subject.as_str(), s.access, s.resource.as_str());
        match seen.get(&key) {
            None => {
                seen.insert(key, (i, s.permission));
            }
            Some(&(first, permission)) if permission == s.permission => errors.push(ModelError::new(
                ModelRule::DuplicateStatement,
                format!("policy[{i}]"),
                format!(
                    "`{} {} {}` is already {}ed by policy[{first}]",
                    s.subject, s.access, s.resource, s.permission
                ),
            )),
            Some(&(first, _)) => {
                if conflicted.insert(key) {
                    errors.push(ModelError::new(
                        ModelRule::ConflictingPermission,
                        format!("policy[{i}]"),
                        format!(
                            "`{} {} {}` is {}ed here but {}ed by policy[{first}]",
                            s.subject, s.access, s.resource, s.permission, graph.policy[first].permission
                        ),
                    ));
                }
            }
        }
    }

    let owners: HashSet<&str> = graph.policy.iter().map(|s| s.requirement.as_str()).collect();
    for (i, goal) in graph.nodes.iter().enumerate() {
        if goal.kind == GoalKind::Requirement && !goal.name.is_empty() && !owners.contains(goal.name.as_str()) {
            errors.push(ModelError::new(
                ModelRule::UnownedRequirement,
                format!("goals[{i}]"),
                format!("requirement `{}` owns no policy statement", goal.name),
            ));
        }
    }

    errors
}
