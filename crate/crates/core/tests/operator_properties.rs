//! Invariants of the shift operator itself: adjoint pairing, the diagonal
//! and off-diagonal product identities, the norm formula against the dense
//! oracle, the support law, orthogonality across disjoint branches, and
//! gauge invariance.

mod common;

use std::collections::BTreeMap;

use common::{disk_weight, random_shift, random_tree};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use treeshift::shift::{TailWeights, WeightFamily, WeightedShift};
use treeshift::sparse::SparseVector;
use treeshift::tree::{RayAttachment, TreeProfile};
use treeshift::{CWeight, FiniteTree, VertexId};

fn basis(u: &VertexId) -> SparseVector<f64> {
    SparseVector::basis(u.clone())
}

/// <S e_u, e_v> = conj(<e_u, S* e_v>) over all basis pairs.
fn check_adjoint_pairing(shift: &WeightedShift<f64>, tree: &FiniteTree) {
    for u in tree.vertices() {
        let s_eu = shift.apply(&basis(u)).unwrap();
        for w in tree.vertices() {
            let lhs = s_eu.inner(&basis(w));
            let rhs = basis(u).inner(&shift.apply_adjoint(&basis(w)).unwrap());
            assert!((lhs - rhs).norm_sqr().sqrt() < 1e-12, "pairing at ({u}, {w})");
        }
    }
}

/// S*S e_u = ||S e_u||^2 e_u and S S* e_u = sum over siblings of u.
fn check_product_identities(shift: &WeightedShift<f64>, tree: &FiniteTree) {
    for u in tree.vertices() {
        let su = shift.apply(&basis(u)).unwrap();
        let sstar_s = shift.apply_adjoint(&su).unwrap();
        let expected = basis(u).scaled(CWeight::new(shift.basis_norm_sq(u).unwrap(), 0.0));
        assert!(
            sstar_s.minus(&expected).norm() < 1e-12,
            "diagonal identity at {u}"
        );

        // S S* e_u = conj(weight(u)) * sum_{v sibling-or-self} weight(v) e_v
        let s_sstar = shift.apply(&shift.apply_adjoint(&basis(u)).unwrap()).unwrap();
        let mut expected = SparseVector::zero();
        if let Some(p) = tree.parent(u).unwrap() {
            let wu = shift.weight(u).unwrap().conj();
            for sib in tree.children(p).unwrap() {
                expected.add_to(sib.clone(), shift.weight(sib).unwrap() * wu);
            }
        }
        assert!(
            s_sstar.minus(&expected).norm() < 1e-12,
            "off-diagonal identity at {u}"
        );
    }
}

/// Dense columns equal sparse application, for S and S*.
fn check_dense_columns(shift: &WeightedShift<f64>, tree: &FiniteTree) {
    let dense = shift.to_dense(tree).unwrap();
    for u in tree.vertices() {
        let col = dense.column(u).unwrap();
        let sparse = shift.apply(&basis(u)).unwrap();
        assert!(col.minus(&sparse).norm() < 1e-14, "column at {u}");
        let adj_col = dense.adjoint_column(u).unwrap();
        let sparse_adj = shift.apply_adjoint(&basis(u)).unwrap();
        assert!(adj_col.minus(&sparse_adj).norm() < 1e-14, "adjoint column at {u}");
    }
}

/// Matrix-level product identities: S*S is diagonal with the squared basis
/// norms, and each column of S S* matches the sibling-sum formula.
fn check_matrix_products(shift: &WeightedShift<f64>, tree: &FiniteTree) {
    let dense = shift.to_dense(tree).unwrap();
    let m = dense.matrix();
    let adjoint = m.adjoint();
    let gram = &adjoint * m;
    let flipped = m * &adjoint;
    let basis_ids = dense.basis().to_vec();
    for (j, u) in basis_ids.iter().enumerate() {
        for (i, w) in basis_ids.iter().enumerate() {
            let expected_gram = if i == j {
                CWeight::new(shift.basis_norm_sq(u).unwrap(), 0.0)
            } else {
                CWeight::new(0.0, 0.0)
            };
            assert!(
                (gram[(i, j)] - expected_gram).norm_sqr().sqrt() < 1e-12,
                "S*S entry at ({w}, {u})"
            );
            let expected_flip = match tree.parent(u).unwrap() {
                Some(p) if tree.parent(w).unwrap() == Some(p) => {
                    shift.weight(w).unwrap() * shift.weight(u).unwrap().conj()
                }
                _ => CWeight::new(0.0, 0.0),
            };
            assert!(
                (flipped[(i, j)] - expected_flip).norm_sqr().sqrt() < 1e-12,
                "S S* entry at ({w}, {u})"
            );
        }
    }
}

/// support(S^n e_u) is contained in chi_n(u).
fn check_support_law(shift: &WeightedShift<f64>, tree: &FiniteTree) {
    for u in tree.vertices() {
        for n in 0..=4 {
            let power = shift.power_apply(u, n).unwrap();
            let layer = tree.chi_n(u, n).unwrap();
            for w in power.support() {
                assert!(layer.contains(w), "S^{n} e_{u} reaches outside chi_{n}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_shift_invariants(seed in any::<u64>(), n in 2usize..24) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tree = random_tree(&mut rng, n);
        let shift = random_shift(&mut rng, &tree);
        check_adjoint_pairing(&shift, &tree);
        check_product_identities(&shift, &tree);
        check_dense_columns(&shift, &tree);
        check_matrix_products(&shift, &tree);
        check_support_law(&shift, &tree);
    }

    #[test]
    fn norm_formula_matches_dense_oracle(seed in any::<u64>(), n in 2usize..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tree = random_tree(&mut rng, n);
        let shift = random_shift(&mut rng, &tree);
        let alpha = shift.norm_sq_bound();
        let opnorm = shift.to_dense(&tree).unwrap().operator_norm();
        prop_assert!((opnorm * opnorm - alpha).abs() < 1e-8 * (1.0 + alpha));
    }

    #[test]
    fn gauge_invariance(seed in any::<u64>(), n in 2usize..20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tree = random_tree(&mut rng, n);
        let shift = random_shift(&mut rng, &tree);
        let mut phase_rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
        let phased = shift.map_explicit_weights(|_, w| {
            let phi = phase_rng.gen_range(0.0..std::f64::consts::TAU);
            w * CWeight::new(phi.cos(), phi.sin())
        });
        prop_assert!((phased.norm_sq_bound() - shift.norm_sq_bound()).abs() < 1e-12);
        prop_assert_eq!(phased.is_injective(), shift.is_injective());
        for u in tree.vertices() {
            let a = shift.basis_norm_sq(u).unwrap();
            let b = phased.basis_norm_sq(u).unwrap();
            prop_assert!((a - b).abs() < 1e-12);
            let ma = shift.moment_sequence(u, 6).unwrap();
            let mb = phased.moment_sequence(u, 6).unwrap();
            for (x, y) in ma.iter().zip(&mb) {
                prop_assert!((x - y).abs() < 1e-12);
            }
        }
    }
}

/// Moments by repeated sparse application agree with dense matrix powers.
#[test]
fn moments_match_dense_matrix_powers() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let n = rng.gen_range(2..30);
        let tree = random_tree(&mut rng, n);
        let shift = random_shift(&mut rng, &tree);
        let dense = shift.to_dense(&tree).unwrap();
        for u in tree.vertices() {
            let moments = shift.moment_sequence(u, 8).unwrap();
            let j = dense.index_of(u).unwrap();
            let mut vec = nalgebra::DVector::from_fn(dense.dim(), |i, _| {
                CWeight::new(if i == j { 1.0 } else { 0.0 }, 0.0)
            });
            for (k, m) in moments.iter().enumerate() {
                assert!(
                    (vec.norm_squared() - m).abs() < 1e-10,
                    "moment {k} at {u} disagrees with the matrix route"
                );
                vec = dense.matrix() * vec;
            }
        }
    }
}

/// Powers rooted at distinct siblings stay orthogonal, and distinct powers
/// at the same vertex stay orthogonal (their supports live in disjoint
/// iterated-children sets).
#[test]
fn branch_orthogonality() {
    // profile with a branching vertex: two rays glued at the core root
    let profile = TreeProfile::new(
        FiniteTree::from_edges(&[(VertexId::core("0"), VertexId::core("x"))]).unwrap(),
        false,
        vec![
            RayAttachment {
                name: "a".to_string(),
                attach: VertexId::core("0"),
            },
            RayAttachment {
                name: "b".to_string(),
                attach: VertexId::core("x"),
            },
        ],
    )
    .unwrap();
    let weights = WeightFamily {
        core: BTreeMap::from([(VertexId::core("x"), CWeight::new(0.7, 0.4))]),
        stem: None,
        rays: BTreeMap::from([
            (
                "a".to_string(),
                TailWeights {
                    prefix: vec![CWeight::new(0.3, -0.2)],
                    tail_modulus: 0.9,
                },
            ),
            ("b".to_string(), TailWeights::constant(1.0)),
        ]),
    };
    let shift: WeightedShift<f64> = WeightedShift::on_profile(profile, weights).unwrap();

    let u1 = VertexId::core("x");
    let u2 = VertexId::ray("a", 1);
    for k in 0..=6 {
        let f1 = shift.power_apply(&u1, k).unwrap();
        for l in 0..=6 {
            let f2 = shift.power_apply(&u2, l).unwrap();
            let ip = f1.inner(&f2).norm_sqr().sqrt();
            assert!(ip < 1e-12, "cross-branch orthogonality at ({k}, {l})");
            if k != l {
                let g = shift.power_apply(&u1, l).unwrap();
                assert!(
                    f1.inner(&g).norm_sqr().sqrt() < 1e-12,
                    "power orthogonality at ({k}, {l})"
                );
            }
        }
    }
}

/// On profile truncations the dense norm never exceeds the exact bound and
/// reaches it once the window clears every weight prefix.
#[test]
fn truncated_norm_grows_to_the_bound() {
    use treeshift::tree::Window;
    let shifts = [
        WeightedShift::<f64>::zplus_shift(0.5, 1.0),
        WeightedShift::z_shift(2.0),
        WeightedShift::z_with_leaf_shift(1.0),
    ];
    for shift in &shifts {
        let bound = shift.norm_sq_bound().sqrt();
        let mut last = 0.0f64;
        for w in 1..=5 {
            let trunc = shift.tree().truncate(Window::new(w, w));
            let opnorm = shift.to_dense(&trunc.tree).unwrap().operator_norm();
            assert!(opnorm <= bound + 1e-10, "window {w}: {opnorm} > {bound}");
            assert!(opnorm >= last - 1e-10, "norm must grow with the window");
            last = opnorm;
        }
        assert!(
            (last - bound).abs() < 1e-10,
            "norm must reach the bound once the window clears the prefixes"
        );
    }
}

/// The same invariants hold at f32 precision with loosened tolerances.
#[test]
fn f32_instantiation() {
    let shift = WeightedShift::<f32>::zplus_shift(0.5, 1.0);
    assert_eq!(shift.norm_sq_bound(), 1.0f32);
    let moments = shift.moment_sequence(&VertexId::core("0"), 5).unwrap();
    assert!((moments[1] - 0.25).abs() < 1e-6);

    // the classifier and Hankel stack instantiate at f32 as well
    match treeshift::classify::classify_extension(&shift, true, 1e-5f32) {
        treeshift::classify::ExtensionVerdict::PerturbedUnilateral { alpha, theta } => {
            assert!((alpha - 1.0).abs() < 1e-6 && (theta - 0.5).abs() < 1e-6);
        }
        other => panic!("unexpected f32 verdict: {other:?}"),
    }
    assert!(treeshift::moments::lambda1_bound_check(&shift, 12, 1e-5f32).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let tree = random_tree(&mut rng, 12);
    let weights: BTreeMap<VertexId, CWeight<f32>> = tree
        .vertices()
        .filter(|u| *u != tree.root())
        .map(|u| {
            let w = disk_weight(&mut rng);
            (u.clone(), CWeight::new(w.re as f32, w.im as f32))
        })
        .collect();
    let s = WeightedShift::on_finite(tree.clone(), weights).unwrap();
    let alpha = s.norm_sq_bound();
    let opnorm = s.to_dense(&tree).unwrap().operator_norm();
    assert!((opnorm * opnorm - alpha).abs() < 1e-4 * (1.0 + alpha));
}
