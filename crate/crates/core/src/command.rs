//! C-command, cu-domains and government.
//!
//! Both command relations hold reflexively and only between nodes at the same
//! height. C-command is computed structurally (first branching node above A
//! dominates B); cu-command is computed from same-height ultrametric distances.
//! [`theorem_check`] compares the two.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::RelationMatrix;
use crate::tree::{HeightAssignment, NodeId, PhraseTree};

/// `h(lca(a, b)) - h(a)` for two nodes at the same height.
pub fn same_height_distance(
    tree: &PhraseTree,
    heights: &HeightAssignment,
    a: NodeId,
    b: NodeId,
) -> Result<u32> {
    let (ha, hb) = (heights.get(a)?, heights.get(b)?);
    if ha != hb {
        return Err(Error::HeightMismatch { a, b, ha, hb });
    }
    Ok(heights.get(tree.lca(a, b)?)? - ha)
}

pub fn c_command(tree: &PhraseTree, heights: &HeightAssignment, a: NodeId, b: NodeId) -> Result<bool> {
    tree.node(a)?;
    tree.node(b)?;
    if a == b {
        return Ok(true);
    }
    if heights.get(a)? != heights.get(b)? {
        return Ok(false);
    }
    if tree.strictly_dominates(a, b)? || tree.strictly_dominates(b, a)? {
        return Ok(false);
    }
    let branching = tree.first_branching_ancestor(a)?.ok_or(Error::NoBranchingAncestor(a))?;
    tree.dominates(branching, b)
}

/// Distances from `owner` to every node at its height (`D(A)`), and the nodes
/// at minimal positive distance together with the owner (`M(A)`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CuDomain {
    pub owner: NodeId,
    pub distance_set: BTreeMap<NodeId, u32>,
    pub members: BTreeSet<NodeId>,
}

impl CuDomain {
    pub fn contains(&self, id: NodeId) -> bool {
        self.members.contains(&id)
    }
}

pub fn cu_domain(tree: &PhraseTree, heights: &HeightAssignment, a: NodeId) -> Result<CuDomain> {
    let ha = heights.get(a)?;
    let mut distance_set = BTreeMap::new();
    for b in tree.node_ids() {
        if heights.get(b)? == ha {
            distance_set.insert(b, same_height_distance(tree, heights, a, b)?);
        }
    }
    let nearest = distance_set.values().copied().filter(|&d| d > 0).min();
    let mut members: BTreeSet<NodeId> = distance_set
        .iter()
        .filter(|(_, &d)| Some(d) == nearest)
        .map(|(&b, _)| b)
        .collect();
    members.insert(a);
    Ok(CuDomain { owner: a, distance_set, members })
}

/// Which nodes a relation matrix ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NodeScope {
    Leaves,
    #[default]
    AllNodes,
}

impl NodeScope {
    pub fn select(self, tree: &PhraseTree) -> Vec<NodeId> {
        match self {
            NodeScope::Leaves => tree.leaves().to_vec(),
            NodeScope::AllNodes => tree.node_ids().collect(),
        }
    }
}

impl FromStr for NodeScope {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "leaves" => Ok(NodeScope::Leaves),
            "all" => Ok(NodeScope::AllNodes),
            other => Err(format!("unknown scope `{other}` (expected leaves or all)")),
        }
    }
}

impl fmt::Display for NodeScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NodeScope::Leaves => "leaves",
            NodeScope::AllNodes => "all",
        })
    }
}

pub fn c_command_matrix(tree: &PhraseTree, heights: &HeightAssignment, scope: NodeScope) -> Result<RelationMatrix> {
    let ids = scope.select(tree);
    let mut rows = Vec::with_capacity(ids.len());
    for &a in &ids {
        rows.push(ids.iter().map(|&b| c_command(tree, heights, a, b)).collect::<Result<Vec<_>>>()?);
    }
    RelationMatrix::new(tree.node_labels(&ids), rows)
}

pub fn cu_command_matrix(tree: &PhraseTree, heights: &HeightAssignment, scope: NodeScope) -> RelationMatrix {
    let ids = scope.select(tree);
    let domains: Vec<CuDomain> = ids
        .iter()
        .map(|&a| cu_domain(tree, heights, a).expect("ids come from this tree"))
        .collect();
    RelationMatrix::from_fn(tree.node_labels(&ids), |i, j| domains[i].contains(ids[j]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    CCommand,
    CuCommand,
}

/// A same-height pair on which exactly one of the two relations holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub a: NodeId,
    pub b: NodeId,
    /// The relation that holds.
    pub relation: Relation,
}

/// Compare c-command with cu-domain membership over every same-height pair in
/// `scope`. An empty result means the two coincide on this tree.
pub fn theorem_check(tree: &PhraseTree, heights: &HeightAssignment, scope: NodeScope) -> Vec<Disagreement> {
    let ids = scope.select(tree);
    let mut out = Vec::new();
    for &a in &ids {
        let domain = cu_domain(tree, heights, a).expect("ids come from this tree");
        for &b in &ids {
            if heights.get(a).ok() != heights.get(b).ok() {
                continue;
            }
            let cc = c_command(tree, heights, a, b).unwrap_or(false);
            let cu = domain.contains(b);
            if cc != cu {
                let relation = if cc { Relation::CCommand } else { Relation::CuCommand };
                out.push(Disagreement { a, b, relation });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeDisagreement {
    pub tree: String,
    pub a: NodeId,
    pub b: NodeId,
    pub relation: Relation,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TheoremSummary {
    pub trees_tested: usize,
    pub disagreements: Vec<TreeDisagreement>,
}

impl TheoremSummary {
    pub fn holds(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Run [`theorem_check`] over a batch of trees, keeping input order.
pub fn theorem_suite<'a>(trees: impl IntoIterator<Item = &'a PhraseTree>, scope: NodeScope) -> TheoremSummary {
    let mut summary = TheoremSummary::default();
    for tree in trees {
        summary.trees_tested += 1;
        let heights = crate::tree::assign_heights(tree);
        let found = theorem_check(tree, &heights, scope);
        if !found.is_empty() {
            let text = tree.to_string();
            summary.disagreements.extend(found.into_iter().map(|d| TreeDisagreement {
                tree: text.clone(),
                a: d.a,
                b: d.b,
                relation: d.relation,
            }));
        }
    }
    summary
}

/// Categories allowed to govern. Defaults to verbs and prepositions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GovernorPolicy {
    pub governor_categories: BTreeSet<String>,
}

impl GovernorPolicy {
    pub fn new<I, S>(categories: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        GovernorPolicy { governor_categories: categories.into_iter().map(Into::into).collect() }
    }

    pub fn is_governor(&self, label: &str) -> bool {
        self.governor_categories.contains(label)
    }
}

impl Default for GovernorPolicy {
    fn default() -> Self {
        GovernorPolicy::new(["V", "P"])
    }
}

/// `a` governs `b` when `a` carries a governor label, `a != b`, and each lies
/// in the other's cu-domain.
pub fn governs(
    tree: &PhraseTree,
    heights: &HeightAssignment,
    policy: &GovernorPolicy,
    a: NodeId,
    b: NodeId,
) -> Result<bool> {
    if policy.governor_categories.is_empty() {
        return Err(Error::EmptyPolicy);
    }
    let label = tree.label(a)?;
    tree.node(b)?;
    if a == b || !policy.is_governor(label) {
        return Ok(false);
    }
    Ok(cu_domain(tree, heights, b)?.contains(a) && cu_domain(tree, heights, a)?.contains(b))
}

/// Every `(governor, governed)` pair in the tree, in preorder.
pub fn government_pairs(
    tree: &PhraseTree,
    heights: &HeightAssignment,
    policy: &GovernorPolicy,
) -> Result<Vec<(NodeId, NodeId)>> {
    let mut out = Vec::new();
    for a in tree.node_ids() {
        for b in tree.node_ids() {
            if governs(tree, heights, policy, a, b)? {
                out.push((a, b));
            }
        }
    }
    Ok(out)
}
