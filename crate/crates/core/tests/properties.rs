use std::collections::BTreeSet;

use proptest::prelude::*;

use ultratree::command::{cu_domain, theorem_check, NodeScope};
use ultratree::generate::{all_shapes, binary_shapes, random_suite, AritySpec};
use ultratree::lexdist::{corpus_minima, min_distance_matrix, DEFAULT_CATEGORY_ORDER};
use ultratree::tree::Constituent;
use ultratree::ultrametric::{
    all_triangles, check_all, check_ultrametric, leaf_matrix, xbar_template, TriangleClass, TriangleKind,
};
use ultratree::{assign_heights, parse_tree, DistanceMatrix, NodeId, PhraseTree};

fn constituent() -> impl Strategy<Value = Constituent> {
    let label = "[A-Za-z][A-Za-z0-9_']{0,3}";
    let leaf = (label, "[a-z0-9]{1,5}").prop_map(|(l, w)| Constituent::leaf(l, w));
    leaf.prop_recursive(4, 24, 4, move |inner| {
        (label, prop::collection::vec(inner, 1..4)).prop_map(|(l, c)| Constituent::phrase(l, c))
    })
}

proptest! {
    #[test]
    fn bracketing_round_trips(c in constituent()) {
        let tree = PhraseTree::from_constituent(c.clone()).unwrap();
        let text = tree.to_string();
        let back = parse_tree(&text).unwrap();
        prop_assert_eq!(back.to_constituent(), c);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn dominance_is_antisymmetric_and_transitive(c in constituent()) {
        let t = PhraseTree::from_constituent(c).unwrap();
        let d = t.dominance_matrix();
        let n = d.size();
        for a in 0..n {
            prop_assert!(d.get(a, a));
            for b in 0..n {
                if a != b {
                    prop_assert!(!(d.get(a, b) && d.get(b, a)));
                }
                for x in 0..n {
                    if d.get(a, b) && d.get(b, x) {
                        prop_assert!(d.get(a, x));
                    }
                }
            }
        }
    }

    #[test]
    fn heights_strictly_increase(c in constituent()) {
        let t = PhraseTree::from_constituent(c).unwrap();
        let h = assign_heights(&t);
        for n in t.nodes() {
            if n.is_leaf() {
                prop_assert_eq!(h.get(n.id).unwrap(), 0);
            } else {
                let top = n.children.iter().map(|&c| h.get(c).unwrap()).max().unwrap();
                prop_assert_eq!(h.get(n.id).unwrap(), top + 1);
            }
        }
    }
}

/// Every ordered tree with exactly `k` nodes, unary nodes included.
fn plane_trees(k: usize) -> Vec<Constituent> {
    fn forests(m: usize) -> Vec<Vec<Constituent>> {
        if m == 0 {
            return vec![vec![]];
        }
        let mut out = vec![];
        for first in 1..=m {
            for head in plane_trees(first) {
                for mut rest in forests(m - first) {
                    rest.insert(0, head.clone());
                    out.push(rest);
                }
            }
        }
        out
    }
    if k == 1 {
        return vec![Constituent::leaf("L", "w")];
    }
    forests(k - 1).into_iter().map(|f| Constituent::phrase("X", f)).collect()
}

#[test]
fn heights_are_pointwise_minimal() {
    for k in 1..=6 {
        let trees = plane_trees(k);
        for c in trees {
            let t = PhraseTree::from_constituent(c).unwrap();
            let h = assign_heights(&t);
            let n = t.len();
            // Enumerate every assignment with values below n.
            let mut candidate = vec![0u32; n];
            loop {
                let valid = t.nodes().iter().all(|node| {
                    if node.is_leaf() {
                        candidate[node.id.0] == 0
                    } else {
                        node.children.iter().all(|c| candidate[node.id.0] > candidate[c.0])
                    }
                });
                if valid {
                    for i in 0..n {
                        assert!(h.as_slice()[i] <= candidate[i], "{t} node {i}");
                    }
                }
                let mut i = 0;
                loop {
                    if i == n {
                        break;
                    }
                    candidate[i] += 1;
                    if candidate[i] < n as u32 {
                        break;
                    }
                    candidate[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
    }
    assert_eq!((1..=6).map(|k| plane_trees(k).len()).collect::<Vec<_>>(), vec![1, 1, 2, 5, 14, 42]);
}

fn brute_lca(t: &PhraseTree, a: NodeId, b: NodeId) -> NodeId {
    let chain = |x: NodeId| {
        let mut v = vec![x];
        v.extend(t.ancestors(x).unwrap());
        v
    };
    let cb = chain(b);
    chain(a).into_iter().find(|x| cb.contains(x)).unwrap()
}

#[test]
fn lca_matches_ancestor_intersection() {
    for arity in [AritySpec::Binary, AritySpec::Mixed(4)] {
        for t in random_suite(11, 200, 12, arity).unwrap() {
            for a in t.node_ids() {
                for b in t.node_ids() {
                    assert_eq!(t.lca(a, b).unwrap(), brute_lca(&t, a, b));
                }
            }
        }
    }
}

#[test]
fn random_leaf_matrices_are_ultrametric() {
    let trees = random_suite(3, 1000, 12, AritySpec::Mixed(4)).unwrap();
    for t in &trees {
        let m = leaf_matrix(t, &assign_heights(t)).unwrap();
        assert!(check_all(&m).is_clean(), "{t}");
        if m.size() >= 3 {
            // Classifier never sees a violating triangle in an ultrametric.
            assert!(all_triangles(&m).unwrap().iter().all(|x| x.class.kind != TriangleKind::Violating));
        }
    }
}

fn equilateral(m: &DistanceMatrix) -> usize {
    if m.size() < 3 {
        return 0;
    }
    all_triangles(m).unwrap().iter().filter(|t| t.class.kind == TriangleKind::Equilateral).count()
}

#[test]
fn binary_trees_have_no_equilateral_triangles() {
    let mut trees = random_suite(5, 1000, 12, AritySpec::Binary).unwrap();
    for n in 1..=6 {
        trees.extend(binary_shapes(n));
    }
    for t in &trees {
        assert_eq!(equilateral(&leaf_matrix(t, &assign_heights(t)).unwrap()), 0, "{t}");
    }
}

#[test]
fn wide_nodes_force_an_equilateral_triangle() {
    let mut trees = random_suite(6, 1000, 12, AritySpec::Mixed(5)).unwrap();
    for n in 3..=6 {
        trees.extend(all_shapes(n, n));
    }
    let mut wide = 0;
    for t in trees.iter().filter(|t| t.max_arity() >= 3) {
        wide += 1;
        assert!(equilateral(&leaf_matrix(t, &assign_heights(t)).unwrap()) >= 1, "{t}");
    }
    assert!(wide > 100);
}

#[test]
fn xbar_template_is_isosceles_and_affine() {
    for i in 0..200u64 {
        let m = xbar_template(i);
        let c = TriangleClass::from_sides(m.get(0, 1), m.get(0, 2), m.get(1, 2));
        assert_eq!(c.kind, TriangleKind::Isosceles);
        assert_eq!(c.base, Some(i + 1));
        let next = xbar_template(i + 1);
        for a in 0..3 {
            for b in 0..3 {
                if a != b {
                    assert_eq!(next.get(a, b), m.get(a, b) + 1);
                }
            }
        }
        assert!(check_ultrametric(&m).is_clean());
    }
}

#[test]
fn theorem_holds_on_leaves_of_random_and_exhaustive_trees() {
    let mut trees = random_suite(13, 1000, 10, AritySpec::Mixed(4)).unwrap();
    for n in 1..=6 {
        trees.extend(binary_shapes(n));
    }
    for t in &trees {
        assert!(theorem_check(t, &assign_heights(t), NodeScope::Leaves).is_empty(), "{t}");
    }
}

#[test]
fn leaves_sharing_branching_ancestor_are_mutual_cu_members() {
    for t in random_suite(17, 300, 10, AritySpec::Mixed(4)).unwrap() {
        let h = assign_heights(&t);
        for &a in t.leaves() {
            let fa = t.first_branching_ancestor(a).unwrap();
            let dom = cu_domain(&t, &h, a).unwrap();
            for &b in t.leaves() {
                if a != b && fa.is_some() && fa == t.first_branching_ancestor(b).unwrap() {
                    assert!(dom.contains(b), "{t}: {a} {b}");
                }
            }
        }
    }
}

#[test]
fn category_minima_only_shrink_as_corpus_grows() {
    let corpus: Vec<PhraseTree> = random_suite(19, 40, 8, AritySpec::Mixed(3))
        .unwrap()
        .into_iter()
        .map(|t| {
            // Collapse leaf categories onto D/N/V/A/P so pairs repeat.
            let text = t.to_string();
            let mut out = text.clone();
            for k in (1..=8).rev() {
                out = out.replace(&format!("(C{k} "), &format!("({} ", DEFAULT_CATEGORY_ORDER[k % 5]));
            }
            parse_tree(&out).unwrap()
        })
        .collect();
    let mut prev: Option<ultratree::lexdist::CategoryDistanceMatrix> = None;
    for end in 1..=corpus.len() {
        let m = min_distance_matrix(&corpus[..end], &DEFAULT_CATEGORY_ORDER).unwrap();
        if let Some(p) = &prev {
            for (i, a) in p.labels().iter().enumerate() {
                for (j, b) in p.labels().iter().enumerate() {
                    if let Some(old) = p.get(i, j) {
                        let new = m.get_by_label(a, b).unwrap().unwrap();
                        assert!(new <= old);
                    }
                }
            }
        }
        prev = Some(m);
    }

    // Each entry is realized by a concrete token pair.
    for (pair, w) in corpus_minima(&corpus) {
        let t = &corpus[w.tree];
        let labels: BTreeSet<&str> =
            [t.label(w.a).unwrap(), t.label(w.b).unwrap()].into_iter().collect();
        assert_eq!(labels, [pair.0.as_str(), pair.1.as_str()].into_iter().collect());
        let h = assign_heights(t);
        assert_eq!(u64::from(h.get(t.lca(w.a, w.b).unwrap()).unwrap()), w.distance);
    }
}

#[test]
fn root_height_is_largest_leaf_distance() {
    let mut trees = random_suite(23, 1000, 12, AritySpec::Mixed(4)).unwrap();
    for n in 1..=6 {
        trees.extend(all_shapes(n, n));
    }
    for t in &trees {
        let h = assign_heights(t);
        let m = leaf_matrix(t, &h).unwrap();
        let max = m.rows().into_iter().flatten().max().unwrap_or(0);
        assert_eq!(max, u64::from(h.root()), "{t}");
    }
}
