//! Property suites run over batches of trees.

use serde::Serialize;

use crate::tree::{assign_heights, PhraseTree};
use crate::ultrametric::{all_triangles, check_all, leaf_matrix, TriangleKind};

/// A tree that broke a property, with a short reason.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub tree: String,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub trees_tested: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl SuiteSummary {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    fn record(&mut self, tree: &PhraseTree, reason: impl Into<String>) {
        self.counterexamples.push(Counterexample { tree: tree.to_string(), reason: reason.into() });
    }
}

fn equilateral_count(tree: &PhraseTree) -> usize {
    let m = leaf_matrix(tree, &assign_heights(tree)).expect("generated labels are unique");
    if m.size() < 3 {
        return 0;
    }
    all_triangles(&m)
        .expect("three or more leaves")
        .iter()
        .filter(|t| t.class.kind == TriangleKind::Equilateral)
        .count()
}

/// Binary trees must have no equilateral triangle; trees with a node of three
/// or more children must have at least one.
pub fn equilateral_suite<'a>(trees: impl IntoIterator<Item = &'a PhraseTree>) -> SuiteSummary {
    let mut s = SuiteSummary::default();
    for t in trees {
        s.trees_tested += 1;
        let n = equilateral_count(t);
        if t.max_arity() >= 3 && n == 0 {
            s.record(t, "node with three or more children but no equilateral triangle");
        } else if t.max_arity() <= 2 && n > 0 {
            s.record(t, format!("binary tree with {n} equilateral triangles"));
        }
    }
    s
}

/// Leaf matrices of minimum-height trees are metric and ultrametric.
pub fn ultrametric_suite<'a>(trees: impl IntoIterator<Item = &'a PhraseTree>) -> SuiteSummary {
    let mut s = SuiteSummary::default();
    for t in trees {
        s.trees_tested += 1;
        let m = leaf_matrix(t, &assign_heights(t)).expect("generated labels are unique");
        let r = check_all(&m);
        if !r.is_clean() {
            s.record(
                t,
                format!(
                    "{} metric and {} ultrametric violations",
                    r.metric_violations.len(),
                    r.ultrametric_violations.len()
                ),
            );
        }
    }
    s
}

/// Root height equals the largest leaf-matrix entry.
pub fn complexity_suite<'a>(trees: impl IntoIterator<Item = &'a PhraseTree>) -> SuiteSummary {
    let mut s = SuiteSummary::default();
    for t in trees {
        s.trees_tested += 1;
        let h = assign_heights(t);
        let m = leaf_matrix(t, &h).expect("generated labels are unique");
        let max = m.rows().into_iter().flatten().max().unwrap_or(0);
        if max != u64::from(h.root()) {
            s.record(t, format!("root height {} but largest entry {max}", h.root()));
        }
    }
    s
}
