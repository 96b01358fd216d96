//! Seeded random trees and exhaustive shape enumeration, used by the
//! randomized and exhaustive verification suites.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::tree::{Constituent, PhraseTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AritySpec {
    Binary,
    /// Internal nodes get between 2 and the given number of children.
    Mixed(usize),
}

impl AritySpec {
    pub fn max_arity(self) -> usize {
        match self {
            AritySpec::Binary => 2,
            AritySpec::Mixed(k) => k,
        }
    }

    fn validate(self) -> Result<Self> {
        match self {
            AritySpec::Mixed(k) if k < 2 => {
                Err(Error::BadAritySpec(format!("max arity {k} is below 2")))
            }
            spec => Ok(spec),
        }
    }
}

impl FromStr for AritySpec {
    type Err = Error;

    /// `binary` or `mixed:<max>`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "binary" {
            return Ok(AritySpec::Binary);
        }
        let max = s
            .strip_prefix("mixed:")
            .and_then(|k| k.parse::<usize>().ok())
            .ok_or_else(|| Error::BadAritySpec(s.to_string()))?;
        AritySpec::Mixed(max).validate()
    }
}

impl fmt::Display for AritySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AritySpec::Binary => f.write_str("binary"),
            AritySpec::Mixed(k) => write!(f, "mixed:{k}"),
        }
    }
}

/// Tree shape without labels.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Shape {
    Leaf,
    Node(Vec<Shape>),
}

fn label_shape(shape: &Shape, next_leaf: &mut usize) -> Constituent {
    match shape {
        Shape::Leaf => {
            *next_leaf += 1;
            Constituent::leaf(format!("C{next_leaf}"), format!("w{next_leaf}"))
        }
        Shape::Node(children) => {
            Constituent::phrase("X", children.iter().map(|c| label_shape(c, next_leaf)).collect())
        }
    }
}

fn shape_to_tree(shape: &Shape) -> PhraseTree {
    PhraseTree::from_constituent(label_shape(shape, &mut 0)).expect("generated shapes are well-formed")
}

/// Random tree built by recursively splitting the leaf sequence into 2 (or up
/// to the max arity) non-empty runs at uniformly chosen cut points.
///
/// Leaves are labeled `C1..Cn` with words `w1..wn`; internal nodes `X`.
pub fn random_tree(seed: u64, leaf_count: usize, arity: AritySpec) -> Result<PhraseTree> {
    let arity = arity.validate()?;
    if leaf_count == 0 {
        return Err(Error::NoLeaves);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(shape_to_tree(&random_shape(&mut rng, leaf_count, arity)))
}

fn random_shape(rng: &mut impl Rng, n: usize, arity: AritySpec) -> Shape {
    if n == 1 {
        return Shape::Leaf;
    }
    let k = match arity {
        AritySpec::Binary => 2,
        AritySpec::Mixed(max) => rng.gen_range(2..=max.min(n)),
    };
    let mut cuts: Vec<usize> = sample(rng, n - 1, k - 1).into_iter().map(|c| c + 1).collect();
    cuts.sort_unstable();
    let mut prev = 0;
    let mut children = Vec::with_capacity(k);
    for cut in cuts.into_iter().chain(std::iter::once(n)) {
        children.push(random_shape(rng, cut - prev, arity));
        prev = cut;
    }
    Shape::Node(children)
}

/// `count` trees with leaf counts drawn uniformly from `1..=max_leaves`, all
/// derived from `seed`.
pub fn random_suite(seed: u64, count: usize, max_leaves: usize, arity: AritySpec) -> Result<Vec<PhraseTree>> {
    if max_leaves == 0 {
        return Err(Error::NoLeaves);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_leaves);
            random_tree(rng.gen(), n, arity)
        })
        .collect()
}

/// Every ordered tree with `leaves` leaves whose internal nodes have between 2
/// and `max_arity` children.
pub fn all_shapes(leaves: usize, max_arity: usize) -> Vec<PhraseTree> {
    shapes(leaves, max_arity.max(2)).iter().map(shape_to_tree).collect()
}

/// Every binary tree with `leaves` leaves (Catalan many).
pub fn binary_shapes(leaves: usize) -> Vec<PhraseTree> {
    all_shapes(leaves, 2)
}

fn shapes(n: usize, max_arity: usize) -> Vec<Shape> {
    if n == 0 {
        return vec![];
    }
    if n == 1 {
        return vec![Shape::Leaf];
    }
    let mut out = Vec::new();
    for k in 2..=max_arity.min(n) {
        for parts in compositions(n, k) {
            let mut partial: Vec<Vec<Shape>> = vec![vec![]];
            for p in parts {
                let subs = shapes(p, max_arity);
                partial = partial
                    .into_iter()
                    .flat_map(|prefix| {
                        subs.iter().map(move |s| {
                            let mut v = prefix.clone();
                            v.push(s.clone());
                            v
                        })
                    })
                    .collect();
            }
            out.extend(partial.into_iter().map(Shape::Node));
        }
    }
    out
}

fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 1 {
        return vec![vec![n]];
    }
    (1..=n - (k - 1))
        .flat_map(|first| {
            compositions(n - first, k - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn deterministic_for_seed() {
        let a = random_tree(1, 4, AritySpec::Binary).unwrap();
        let b = random_tree(1, 4, AritySpec::Binary).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.leaves().len(), 4);
        assert!(a.is_switched());
    }

    #[test]
    fn single_leaf() {
        for seed in [0, 2, 99] {
            let t = random_tree(seed, 1, AritySpec::Binary).unwrap();
            assert_eq!(t.len(), 1);
        }
    }

    #[test]
    fn bad_specs() {
        assert!(matches!(random_tree(0, 3, AritySpec::Mixed(1)), Err(Error::BadAritySpec(_))));
        assert!(matches!(random_tree(0, 0, AritySpec::Binary), Err(Error::NoLeaves)));
        assert!("mixed:x".parse::<AritySpec>().is_err());
        assert!("ternary".parse::<AritySpec>().is_err());
        assert_eq!("mixed:4".parse::<AritySpec>().unwrap(), AritySpec::Mixed(4));
        assert_eq!(AritySpec::Mixed(4).to_string(), "mixed:4");
    }

    #[test]
    fn shape_variety() {
        let distinct: HashSet<String> = (0..1000)
            .map(|s| random_tree(s, 8, AritySpec::Binary).unwrap().to_string())
            .collect();
        assert!(distinct.len() >= 2);
    }

    #[test]
    fn mixed_arity_bound_respected() {
        for seed in 0..200 {
            let t = random_tree(seed, 9, AritySpec::Mixed(4)).unwrap();
            assert!(t.max_arity() <= 4);
            assert!(t.nodes().iter().all(|n| n.is_leaf() || n.children.len() >= 2));
            assert_eq!(t.leaves().len(), 9);
        }
    }

    #[test]
    fn enumeration_counts() {
        // Catalan numbers.
        let counts: Vec<usize> = (1..=6).map(|n| binary_shapes(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42]);
        // Little Schroeder numbers for unrestricted arity.
        let counts: Vec<usize> = (1..=6).map(|n| all_shapes(n, n).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 11, 45, 197]);
        let distinct: HashSet<String> = all_shapes(5, 5).iter().map(|t| t.to_string()).collect();
        assert_eq!(distinct.len(), 45);
    }

    #[test]
    fn suite_is_reproducible() {
        let a = random_suite(7, 50, 10, AritySpec::Mixed(4)).unwrap();
        let b = random_suite(7, 50, 10, AritySpec::Mixed(4)).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|t| (1..=10).contains(&t.leaves().len())));
    }
}
