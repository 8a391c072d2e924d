//! Shared generators for the integration tests.
#![allow(dead_code)] // each test binary uses a different subset

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use treeshift::shift::WeightedShift;
use treeshift::{CWeight, FiniteTree, VertexId};

/// Deterministically named vertex: zero-padded so creation order equals the
/// basis order.
pub fn v(i: usize) -> VertexId {
    VertexId::core(format!("v{i:03}"))
}

/// Random recursive tree on `n` vertices: the parent of vertex i is uniform
/// among the earlier vertices.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> FiniteTree {
    assert!(n >= 1);
    let mut parent = BTreeMap::new();
    let vertices: BTreeSet<VertexId> = (0..n).map(v).collect();
    for i in 1..n {
        let p = rng.gen_range(0..i);
        parent.insert(v(i), v(p));
    }
    FiniteTree::new(vertices, parent).expect("parent arrays are valid trees")
}

/// Uniform weight in the closed complex unit disk.
pub fn disk_weight<R: Rng>(rng: &mut R) -> CWeight<f64> {
    loop {
        let re = rng.gen_range(-1.0..=1.0);
        let im = rng.gen_range(-1.0..=1.0);
        let w = CWeight::new(re, im);
        if w.norm_sqr() <= 1.0 {
            return w;
        }
    }
}

/// Random shift on the tree with weights in the unit disk.
pub fn random_shift<R: Rng>(rng: &mut R, tree: &FiniteTree) -> WeightedShift<f64> {
    let weights = tree
        .vertices()
        .filter(|u| *u != tree.root())
        .map(|u| (u.clone(), disk_weight(rng)))
        .collect();
    WeightedShift::on_finite(tree.clone(), weights).expect("weights cover the tree")
}

/// Calls `f` with every parent-array tree on exactly `n` vertices. Every
/// rooted tree on at most `n` vertices is isomorphic to one of these, so
/// structural invariants checked here hold exhaustively up to size `n`.
pub fn for_each_tree(n: usize, mut f: impl FnMut(&FiniteTree)) {
    assert!(n >= 1);
    let mut parents = vec![0usize; n]; // parents[i] < i for i >= 1
    loop {
        let vertices: BTreeSet<VertexId> = (0..n).map(v).collect();
        let parent: BTreeMap<VertexId, VertexId> =
            (1..n).map(|i| (v(i), v(parents[i]))).collect();
        let tree = FiniteTree::new(vertices, parent).expect("valid parent array");
        f(&tree);

        // next mixed-radix value: digit i ranges over 0..i
        let mut i = n.saturating_sub(1);
        loop {
            if i <= 1 {
                return;
            }
            if parents[i] + 1 < i {
                parents[i] += 1;
                break;
            }
            parents[i] = 0;
            i -= 1;
        }
    }
}
