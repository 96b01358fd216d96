//! Minimum ultrametric distance between lexical categories over a corpus, the
//! nested row pattern of such matrices, and tree-height complexity.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::LabeledMatrix;
use crate::tree::{assign_heights, HeightAssignment, NodeId, PhraseTree};

/// Category-pair distances; `None` where no token pair exists.
pub type CategoryDistanceMatrix = LabeledMatrix<Option<u64>>;

pub const DEFAULT_CATEGORY_ORDER: [&str; 5] = ["D", "N", "V", "A", "P"];

/// Unordered category pair, stored with the smaller label first.
pub type CategoryPair = (String, String);

fn pair(a: &str, b: &str) -> CategoryPair {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// A concrete token pair realizing a category minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub distance: u64,
    pub tree: usize,
    pub a: NodeId,
    pub b: NodeId,
}

fn tree_witnesses(tree: &PhraseTree, heights: &HeightAssignment, index: usize) -> BTreeMap<CategoryPair, Witness> {
    let mut out: BTreeMap<CategoryPair, Witness> = BTreeMap::new();
    let leaves = tree.leaves();
    for (i, &a) in leaves.iter().enumerate() {
        for &b in &leaves[i + 1..] {
            let d = u64::from(heights.get(tree.lca(a, b).expect("leaf ids")).expect("height"));
            let key = pair(tree.nodes()[a.0].label.as_str(), tree.nodes()[b.0].label.as_str());
            let w = Witness { distance: d, tree: index, a, b };
            out.entry(key).and_modify(|cur| if d < cur.distance { *cur = w }).or_insert(w);
        }
    }
    out
}

/// Minimum leaf distance for every category pair with tokens in the tree.
/// Same-category pairs use distinct tokens.
pub fn tree_category_minima(tree: &PhraseTree, heights: &HeightAssignment) -> BTreeMap<CategoryPair, u64> {
    tree_witnesses(tree, heights, 0).into_iter().map(|(k, w)| (k, w.distance)).collect()
}

/// Corpus-wide minima with the earliest token pair attaining each.
pub fn corpus_minima(corpus: &[PhraseTree]) -> BTreeMap<CategoryPair, Witness> {
    let mut out: BTreeMap<CategoryPair, Witness> = BTreeMap::new();
    for (idx, tree) in corpus.iter().enumerate() {
        let heights = assign_heights(tree);
        for (k, w) in tree_witnesses(tree, &heights, idx) {
            out.entry(k).and_modify(|cur| if w.distance < cur.distance { *cur = w }).or_insert(w);
        }
    }
    out
}

/// Entrywise minimum of [`tree_category_minima`] across the corpus. Categories
/// listed in `order` come first (those absent from the corpus are dropped);
/// any others follow alphabetically.
pub fn min_distance_matrix<S: AsRef<str>>(corpus: &[PhraseTree], order: &[S]) -> Result<CategoryDistanceMatrix> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let minima = corpus_minima(corpus);
    let mut present: Vec<String> = corpus
        .iter()
        .flat_map(|t| t.leaves().iter().map(move |l| t.nodes()[l.0].label.clone()))
        .collect();
    present.sort();
    present.dedup();

    let mut categories: Vec<String> = order
        .iter()
        .map(|c| c.as_ref().to_string())
        .filter(|c| present.contains(c))
        .collect();
    for c in present {
        if !categories.contains(&c) {
            categories.push(c);
        }
    }
    let lookup = categories.clone();
    Ok(LabeledMatrix::from_fn(categories, |i, j| {
        minima.get(&pair(&lookup[i], &lookup[j])).map(|w| w.distance)
    }))
}

/// True when, along `order = c0..cn`, every entry `d(c_r, c_k)` with `k > r`
/// equals `i + r`: each row constant, one more than the row above.
pub fn check_nested_pattern<S: AsRef<str>>(m: &CategoryDistanceMatrix, order: &[S], i: u64) -> Result<bool> {
    let idx = order.iter().map(|c| m.index_of(c.as_ref())).collect::<Result<Vec<_>>>()?;
    let mut holds = true;
    for (r, &row) in idx.iter().enumerate() {
        for &col in &idx[r + 1..] {
            let d = m.get(row, col).ok_or_else(|| {
                Error::MissingEntry(m.labels()[row].clone(), m.labels()[col].clone())
            })?;
            holds &= d == i + r as u64;
        }
    }
    Ok(holds)
}

pub const DEFAULT_COMPLEXITY_BOUND: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TreeHeight {
    pub tree: usize,
    pub root_height: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexityReport {
    pub per_tree: Vec<TreeHeight>,
    pub max_height: u32,
    pub bound: u32,
    /// Indices of trees taller than `bound`.
    pub exceeding: Vec<usize>,
}

pub fn complexity(corpus: &[PhraseTree], bound: u32) -> ComplexityReport {
    let per_tree: Vec<TreeHeight> = corpus
        .iter()
        .enumerate()
        .map(|(tree, t)| TreeHeight { tree, root_height: assign_heights(t).root() })
        .collect();
    let max_height = per_tree.iter().map(|t| t.root_height).max().unwrap_or(0);
    let exceeding = per_tree.iter().filter(|t| t.root_height > bound).map(|t| t.tree).collect();
    ComplexityReport { per_tree, max_height, bound, exceeding }
}
