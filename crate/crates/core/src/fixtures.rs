//! Data files shipped with the crate.

use crate::tree::{parse_tree_file, PhraseTree};

/// Category corpus whose minima give the reference D/N/V/A/P matrix.
pub const CATEGORY_CORPUS: &str = include_str!("../fixtures/category_corpus.trees");

/// Commonly cited colour-term sequence, as a hierarchy document.
pub const BERLIN_KAY: &str = include_str!("../fixtures/berlin_kay.json");

pub fn category_corpus() -> Vec<PhraseTree> {
    parse_tree_file(CATEGORY_CORPUS)
        .expect("shipped corpus parses")
        .into_iter()
        .map(|t| t.tree)
        .collect()
}
