//! Leaf distance matrices, metric and ultrametric axiom checks, and the
//! triangle view of a matrix.
//!
//! The distance between two leaves is the height of their lowest common
//! ancestor under the minimum height assignment. All quantities are integers.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::DistanceMatrix;
use crate::tree::{HeightAssignment, PhraseTree};

/// Which leaf attribute names the rows of a leaf matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LeafLabels {
    #[default]
    Category,
    Word,
}

/// Leaf labels in left-to-right order. Repeated labels get a `#k` suffix where
/// `k` is the 1-based leaf position.
pub fn leaf_labels(tree: &PhraseTree, mode: LeafLabels) -> Result<Vec<String>> {
    let raw: Vec<&str> = tree
        .leaves()
        .iter()
        .map(|&l| {
            let n = &tree.nodes()[l.0];
            match mode {
                LeafLabels::Category => n.label.as_str(),
                LeafLabels::Word => n.word.as_deref().unwrap_or(&n.label),
            }
        })
        .collect();
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for r in &raw {
        *counts.entry(r).or_default() += 1;
    }
    let labels: Vec<String> = raw
        .iter()
        .enumerate()
        .map(|(k, r)| if counts[r] > 1 { format!("{r}#{}", k + 1) } else { r.to_string() })
        .collect();
    let mut seen = HashSet::new();
    for l in &labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(labels)
}

pub fn leaf_matrix(tree: &PhraseTree, heights: &HeightAssignment) -> Result<DistanceMatrix> {
    leaf_matrix_labeled(tree, heights, LeafLabels::Category)
}

pub fn leaf_matrix_labeled(
    tree: &PhraseTree,
    heights: &HeightAssignment,
    mode: LeafLabels,
) -> Result<DistanceMatrix> {
    let labels = leaf_labels(tree, mode)?;
    let leaves = tree.leaves();
    let mut err = None;
    let m = DistanceMatrix::from_fn(labels, |i, j| {
        if i == j {
            return 0;
        }
        match tree.lca(leaves[i], leaves[j]).and_then(|a| heights.get(a)) {
            Ok(h) => u64::from(h),
            Err(e) => {
                err.get_or_insert(e);
                0
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(m),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    /// `M(x,x) = 0`
    ZeroDiagonal,
    /// `M(x,y) > 0` for `x != y`
    Positivity,
    /// `M(x,y) = M(y,x)`
    Symmetry,
    /// `M(x,y) <= M(x,z) + M(z,y)`
    Triangle,
    /// `M(x,y) <= max(M(x,z), M(z,y))`
    Ultrametric,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub indices: Vec<usize>,
}

/// Axiom violations of one matrix. Ultrametric triples are `(x, z, y)` with
/// `M(x,y) > max(M(x,z), M(z,y))`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ViolationReport {
    pub metric_violations: Vec<Violation>,
    pub ultrametric_violations: Vec<[usize; 3]>,
}

impl ViolationReport {
    pub fn is_clean(&self) -> bool {
        self.metric_violations.is_empty() && self.ultrametric_violations.is_empty()
    }

    pub fn merge(mut self, other: ViolationReport) -> Self {
        self.metric_violations.extend(other.metric_violations);
        self.ultrametric_violations.extend(other.ultrametric_violations);
        self
    }

    /// Distinct vertex sets among the ultrametric violations.
    pub fn violating_triples(&self) -> BTreeSet<[usize; 3]> {
        self.ultrametric_violations
            .iter()
            .map(|t| {
                let mut s = *t;
                s.sort_unstable();
                s
            })
            .collect()
    }

    /// JSON list of `{"axiom", "indices", "labels"}`.
    pub fn to_json(&self, m: &DistanceMatrix) -> Value {
        let label = |idx: &[usize]| idx.iter().map(|&i| m.labels()[i].clone()).collect::<Vec<_>>();
        let mut out: Vec<Value> = self
            .metric_violations
            .iter()
            .map(|v| json!({"axiom": v.axiom, "indices": v.indices, "labels": label(&v.indices)}))
            .collect();
        out.extend(self.ultrametric_violations.iter().map(|t| {
            json!({"axiom": Axiom::Ultrametric, "indices": t, "labels": label(t)})
        }));
        Value::Array(out)
    }
}

pub fn check_metric(m: &DistanceMatrix) -> ViolationReport {
    let n = m.size();
    let mut v = Vec::new();
    for x in 0..n {
        if m.get(x, x) != 0 {
            v.push(Violation { axiom: Axiom::ZeroDiagonal, indices: vec![x] });
        }
    }
    for x in 0..n {
        for y in 0..n {
            if x != y && m.get(x, y) == 0 {
                v.push(Violation { axiom: Axiom::Positivity, indices: vec![x, y] });
            }
        }
    }
    for x in 0..n {
        for y in x + 1..n {
            if m.get(x, y) != m.get(y, x) {
                v.push(Violation { axiom: Axiom::Symmetry, indices: vec![x, y] });
            }
        }
    }
    for (x, z, y) in distinct_triples(n) {
        if m.get(x, y) > m.get(x, z) + m.get(z, y) {
            v.push(Violation { axiom: Axiom::Triangle, indices: vec![x, z, y] });
        }
    }
    ViolationReport { metric_violations: v, ultrametric_violations: vec![] }
}

pub fn check_ultrametric(m: &DistanceMatrix) -> ViolationReport {
    let ultrametric_violations = distinct_triples(m.size())
        .filter(|&(x, z, y)| m.get(x, y) > m.get(x, z).max(m.get(z, y)))
        .map(|(x, z, y)| [x, z, y])
        .collect();
    ViolationReport { metric_violations: vec![], ultrametric_violations }
}

/// Metric and ultrametric checks together.
pub fn check_all(m: &DistanceMatrix) -> ViolationReport {
    check_metric(m).merge(check_ultrametric(m))
}

fn distinct_triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |x| {
        (0..n).flat_map(move |z| (0..n).map(move |y| (x, z, y)))
    })
    .filter(|&(x, z, y)| x != z && z != y && x != y)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TriangleKind {
    Equilateral,
    Isosceles,
    Violating,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TriangleClass {
    pub kind: TriangleKind,
    /// Ascending.
    pub sides: [u64; 3],
    /// The strictly shorter side of an isosceles triangle.
    pub base: Option<u64>,
}

impl TriangleClass {
    pub fn from_sides(a: u64, b: u64, c: u64) -> Self {
        let mut sides = [a, b, c];
        sides.sort_unstable();
        let [s, m, l] = sides;
        let (kind, base) = if s == l {
            (TriangleKind::Equilateral, None)
        } else if m == l {
            (TriangleKind::Isosceles, Some(s))
        } else {
            (TriangleKind::Violating, None)
        };
        TriangleClass { kind, sides, base }
    }
}

pub fn classify_triangle(m: &DistanceMatrix, x: &str, y: &str, z: &str) -> Result<TriangleClass> {
    let (i, j, k) = (m.index_of(x)?, m.index_of(y)?, m.index_of(z)?);
    classify_indices(m, i, j, k)
}

pub fn classify_indices(m: &DistanceMatrix, i: usize, j: usize, k: usize) -> Result<TriangleClass> {
    if i == j || j == k || i == k {
        return Err(Error::DuplicateVertex);
    }
    Ok(TriangleClass::from_sides(m.get(i, j), m.get(i, k), m.get(j, k)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Triangle {
    pub labels: [String; 3],
    #[serde(flatten)]
    pub class: TriangleClass,
}

/// One entry per unordered triple, in lexicographic index order.
pub fn all_triangles(m: &DistanceMatrix) -> Result<Vec<Triangle>> {
    let n = m.size();
    if n < 3 {
        return Err(Error::TooFewLabels { needed: 3, got: n });
    }
    let mut out = Vec::with_capacity(n * (n - 1) * (n - 2) / 6);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let l = m.labels();
                out.push(Triangle {
                    labels: [l[i].clone(), l[j].clone(), l[k].clone()],
                    class: classify_indices(m, i, j, k)?,
                });
            }
        }
    }
    Ok(out)
}

/// The Spec / X / YP template with `d(Spec,X) = d(Spec,YP) = i+2` and
/// `d(X,YP) = i+1`.
pub fn xbar_template(i: u64) -> DistanceMatrix {
    let (far, near) = (i + 2, i + 1);
    DistanceMatrix::new(
        vec!["Spec".into(), "X".into(), "YP".into()],
        vec![vec![0, far, far], vec![far, 0, near], vec![far, near, 0]],
    )
    .expect("3x3")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{assign_heights, parse_tree};

    fn matrix(labels: &[&str], rows: Vec<Vec<u64>>) -> DistanceMatrix {
        DistanceMatrix::new(labels.iter().map(|s| s.to_string()).collect(), rows).unwrap()
    }

    fn from_tree(s: &str) -> DistanceMatrix {
        let t = parse_tree(s).unwrap();
        leaf_matrix(&t, &assign_heights(&t)).unwrap()
    }

    // Exhaustive scan used as the oracle for triangle-inequality examples.
    fn triangle_scan(rows: &[Vec<u64>]) -> Vec<(usize, usize, usize)> {
        let n = rows.len();
        let mut v = vec![];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if x != y && y != z && x != z && rows[x][y] > rows[x][z] + rows[z][y] {
                        v.push((x, z, y));
                    }
                }
            }
        }
        v
    }

    #[test]
    fn minimal_pair() {
        let m = from_tree("(X (A a) (B b))");
        assert_eq!(m.rows(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(m.labels(), &["A", "B"]);
    }

    #[test]
    fn word_labels_and_duplicates() {
        let t = parse_tree("(S (NP (D the) (N man)) (VP (V ate) (NP (D a) (N dog))))").unwrap();
        let h = assign_heights(&t);
        let m = leaf_matrix(&t, &h).unwrap();
        assert_eq!(m.labels(), &["D#1", "N#2", "V", "D#4", "N#5"]);
        let w = leaf_matrix_labeled(&t, &h, LeafLabels::Word).unwrap();
        assert_eq!(w.labels(), &["the", "man", "ate", "a", "dog"]);

        let clash = parse_tree("(S (A#2 x) (A y) (A z))").unwrap();
        assert_eq!(
            leaf_matrix(&clash, &assign_heights(&clash)),
            Err(Error::DuplicateLabel("A#2".into()))
        );
    }

    #[test]
    fn metric_violations() {
        let asym = matrix(&["a", "b"], vec![vec![0, 1], vec![2, 0]]);
        let r = check_metric(&asym);
        assert_eq!(r.metric_violations, vec![Violation { axiom: Axiom::Symmetry, indices: vec![0, 1] }]);

        let rows = vec![vec![0, 5, 1], vec![5, 0, 1], vec![1, 1, 0]];
        let oracle = triangle_scan(&rows);
        assert_eq!(oracle, vec![(0, 2, 1), (1, 2, 0)]);
        let r = check_metric(&matrix(&["x", "y", "z"], rows));
        let found: Vec<_> = r
            .metric_violations
            .iter()
            .map(|v| (v.indices[0], v.indices[1], v.indices[2]))
            .collect();
        assert_eq!(found, oracle);

        let bad_diag = matrix(&["a", "b"], vec![vec![1, 0], vec![0, 0]]);
        let axioms: Vec<_> = check_metric(&bad_diag).metric_violations.iter().map(|v| v.axiom).collect();
        assert_eq!(axioms, vec![Axiom::ZeroDiagonal, Axiom::Positivity, Axiom::Positivity]);
    }

    #[test]
    fn triangles() {
        let balanced = from_tree("(S (C (A a) (M m)) (D (J j) (H h)))");
        let c = classify_triangle(&balanced, "A", "M", "J").unwrap();
        assert_eq!(c, TriangleClass { kind: TriangleKind::Isosceles, sides: [1, 2, 2], base: Some(1) });
        assert_eq!(classify_triangle(&balanced, "A", "A", "J"), Err(Error::DuplicateVertex));
        assert_eq!(classify_triangle(&balanced, "A", "Q", "J"), Err(Error::UnknownLabel("Q".into())));

        let flat = from_tree("(S (A a) (M m) (J j) (H h))");
        assert_eq!(classify_triangle(&flat, "A", "M", "J").unwrap().kind, TriangleKind::Equilateral);
        let all = all_triangles(&flat).unwrap();
        assert_eq!(all.len(), 4);
        assert!(all.iter().all(|t| t.class.kind == TriangleKind::Equilateral));

        let three = matrix(&["a", "b", "c"], vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 0]]);
        let all = all_triangles(&three).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].class.kind, TriangleKind::Isosceles);

        assert_eq!(
            all_triangles(&matrix(&["a", "b"], vec![vec![0, 1], vec![1, 0]])),
            Err(Error::TooFewLabels { needed: 3, got: 2 })
        );
        assert_eq!(TriangleClass::from_sides(1, 1, 2).kind, TriangleKind::Violating);
    }

    #[test]
    fn xbar() {
        assert_eq!(xbar_template(0).rows(), vec![vec![0, 2, 2], vec![2, 0, 1], vec![2, 1, 0]]);
        let one = xbar_template(1);
        assert_eq!((one.get(0, 1), one.get(0, 2), one.get(1, 2)), (3, 3, 2));
        assert!(check_all(&one).is_clean());
    }

    #[test]
    fn report_json_shape() {
        let broken = matrix(
            &["A", "M", "J", "H"],
            vec![vec![0, 3, 3, 3], vec![3, 0, 1, 2], vec![3, 1, 0, 1], vec![3, 2, 1, 0]],
        );
        let r = check_ultrametric(&broken);
        let j = r.to_json(&broken);
        assert_eq!(j[0]["axiom"], "ultrametric");
        assert_eq!(j[0]["labels"], json!(["M", "J", "H"]));
    }
}
