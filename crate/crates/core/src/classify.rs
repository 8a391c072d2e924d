//! Decision procedures for weighted shifts on directed trees:
//!
//! * structural formal-normality classification, with a bi-infinite
//!   constant-modulus path as witness;
//! * a numeric normality oracle on finite truncations (self-commutator
//!   defect, restricted to interior vertices);
//! * the decomposition of a normal shift into a scalar multiple of a
//!   bilateral shift plus a zero part;
//! * the modelability trichotomy for normal extensions, and construction
//!   and verification of the explicit extension model.

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use thiserror::Error;

use crate::scalar::{rel_close, CWeight, Scalar};
use crate::shift::{ShiftError, TailWeights, WeightedShift};
use crate::sparse::SparseVector;
use crate::tree::{CanonicalPath, FiniteTree, PathShape, VertexId, Window};

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Shift(#[from] ShiftError),
    #[error("window {0} leaves no interior vertices")]
    WindowTooSmall(Window),
    #[error("formal normality verdict is not a success")]
    NotNormal,
    #[error("shift does not classify as a perturbed unilateral shift")]
    NotPerturbedUnilateral,
    #[error("model parameters do not match the classified shift: {0}")]
    ModelMismatch(String),
    #[error("theta must lie in (0, 1], got {0}")]
    InvalidTheta(String),
    #[error("alpha must be positive and finite, got {0}")]
    InvalidAlpha(String),
    #[error("decomposition self-check failed at {0}")]
    InternalCheck(VertexId),
}

/// Why a nonzero shift fails to be formally normal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NotNormalReason {
    /// The tree has no bi-infinite path at all (no stem, or no ray).
    NoBiInfinitePath,
    /// A candidate path carries all nonzero weights but their moduli differ.
    NonconstantModulus,
    /// Some nonzero weight lies off every bi-infinite path.
    NonzeroOffPath,
}

/// Witness for a formally normal (equivalently: bounded normal) shift: the
/// bi-infinite path carrying all nonzero weights, and their common modulus.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalWitness<T: Scalar> {
    pub modulus: T,
    pub path: CanonicalPath,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FormalNormalityVerdict<T: Scalar> {
    FormallyNormalNormal(NormalWitness<T>),
    Not(NotNormalReason),
    /// All weights vanish; trivially normal but outside the scope of the
    /// structural characterization, so kept as a distinct outcome.
    ZeroOperator,
}

impl<T: Scalar> FormalNormalityVerdict<T> {
    pub fn witness(&self) -> Option<&NormalWitness<T>> {
        match self {
            FormalNormalityVerdict::FormallyNormalNormal(w) => Some(w),
            _ => None,
        }
    }
}

/// Why no normal extension of the shift can itself be a weighted shift on a
/// directed tree.
#[derive(Clone, Debug, PartialEq)]
pub enum NotModelableReason {
    /// Hypothesis violation: the named vertex carries weight zero.
    ZeroWeight(VertexId),
    /// Bilateral shape but nonconstant weight moduli.
    NonconstantBilateral,
    /// Unilateral shape but weights do not match `theta, a, a, ...` with
    /// `theta <= a`.
    WeightPattern,
    /// The tree is not order-isomorphic to the line or the half-line.
    BranchingOrLeaf,
}

/// The modelability trichotomy: either the shift is (up to unitary
/// equivalence) a positive multiple of the bilateral shift, or of a
/// one-weight perturbation of the unilateral shift, or no weighted-shift
/// model of a normal extension exists.
#[derive(Clone, Debug, PartialEq)]
pub enum ExtensionVerdict<T: Scalar> {
    BilateralMultiple { alpha: T },
    PerturbedUnilateral { alpha: T, theta: T },
    NotModelable(NotModelableReason),
}

fn core_chain_to(core: &FiniteTree, attach: &VertexId) -> Vec<VertexId> {
    let mut chain = vec![attach.clone()];
    let mut cur = attach.clone();
    while let Some(p) = core.parent(&cur).expect("attach vertex is in the core") {
        chain.push(p.clone());
        cur = p.clone();
    }
    chain.reverse();
    chain
}

fn tail_is_exactly_zero<T: Scalar>(tail: &TailWeights<T>) -> bool {
    tail.tail_modulus == T::zero() && tail.prefix.iter().all(|w| w.norm_sqr() == T::zero())
}

/// Decides formal normality structurally. For a nonzero shift this holds iff
/// the nonzero-weight vertices form a single bi-infinite path with constant
/// weight modulus; by the equivalence this is the same as the shift being
/// bounded and normal.
pub fn formal_normality<T: Scalar>(
    shift: &WeightedShift<T>,
    rel_tol: T,
) -> FormalNormalityVerdict<T> {
    if shift.is_zero_shift() {
        return FormalNormalityVerdict::ZeroOperator;
    }
    let profile = match shift.tree().as_profile() {
        Some(p) => p,
        None => return FormalNormalityVerdict::Not(NotNormalReason::NoBiInfinitePath),
    };
    if !profile.has_stem() || profile.rays().is_empty() {
        return FormalNormalityVerdict::Not(NotNormalReason::NoBiInfinitePath);
    }
    let weights = shift.weights();
    let stem = weights.stem.as_ref().expect("stem weights present");

    // Every bi-infinite path descends the whole stem through the core root
    // and ends up in exactly one ray; there is one candidate per ray.
    let mut saw_clean_offpath = false;
    for ray in profile.rays() {
        let chain = core_chain_to(profile.core(), &ray.attach);
        let on_chain: BTreeSet<&VertexId> = chain.iter().collect();

        let off_core_clean = weights
            .core
            .iter()
            .filter(|(v, _)| !on_chain.contains(v))
            .all(|(_, w)| w.norm_sqr() == T::zero());
        let off_rays_clean = weights
            .rays
            .iter()
            .filter(|(name, _)| **name != ray.name)
            .all(|(_, t)| tail_is_exactly_zero(t));
        if !(off_core_clean && off_rays_clean) {
            continue;
        }
        saw_clean_offpath = true;

        let alpha = stem.tail_modulus;
        let ray_weights = &weights.rays[&ray.name];
        let mut moduli: Vec<T> = Vec::new();
        moduli.extend(stem.prefix.iter().map(|w| w.norm_sqr().sqrt()));
        moduli.extend(chain.iter().map(|v| {
            weights.core[v].norm_sqr().sqrt()
        }));
        moduli.extend(ray_weights.prefix.iter().map(|w| w.norm_sqr().sqrt()));
        moduli.push(ray_weights.tail_modulus);
        if moduli.iter().all(|m| rel_close(*m, alpha, rel_tol)) {
            return FormalNormalityVerdict::FormallyNormalNormal(NormalWitness {
                modulus: alpha,
                path: CanonicalPath::new(true, chain, ray.name.clone()),
            });
        }
    }
    if saw_clean_offpath {
        FormalNormalityVerdict::Not(NotNormalReason::NonconstantModulus)
    } else {
        FormalNormalityVerdict::Not(NotNormalReason::NonzeroOffPath)
    }
}

/// The numeric normality oracle: self-commutator of the truncated dense
/// matrix, with the defect measured only on rows and columns indexed by
/// interior vertices (one ring of slack quarantines all cut effects).
#[derive(Clone, Debug)]
pub struct CommutatorReport<T: Scalar> {
    pub window: Window,
    pub max_interior_defect: T,
    pub basis: Vec<VertexId>,
    pub interior: Vec<bool>,
    pub defect: DMatrix<CWeight<T>>,
}

pub fn commutator_defect<T: Scalar>(
    shift: &WeightedShift<T>,
    window: Window,
) -> Result<CommutatorReport<T>, ClassifyError> {
    let trunc = shift.tree().truncate(window);
    let dense = shift.to_dense(&trunc.tree)?;
    let basis: Vec<VertexId> = dense.basis().to_vec();
    let interior: Vec<bool> = basis.iter().map(|v| !trunc.boundary.contains(v)).collect();
    if !interior.iter().any(|&b| b) {
        return Err(ClassifyError::WindowTooSmall(window));
    }
    let defect = dense.self_commutator();
    let mut max = T::zero();
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if interior[i] || interior[j] {
                max = max.max(defect[(i, j)].norm_sqr().sqrt());
            }
        }
    }
    Ok(CommutatorReport {
        window,
        max_interior_defect: max,
        basis,
        interior,
        defect,
    })
}

/// The normal shift split into its unitary and zero parts: the witness path
/// carries a scalar multiple of the bilateral shift, its complement is
/// annihilated.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalDecomposition<T: Scalar> {
    pub modulus: T,
    pub path: CanonicalPath,
    /// Core vertices off the path.
    pub zero_core: BTreeSet<VertexId>,
    /// Rays lying entirely off the path (all-zero weights).
    pub zero_rays: Vec<String>,
}

/// Splits a formally normal shift along its witness path, re-checking the
/// invariance of both parts on representative basis vectors.
pub fn decompose_normal<T: Scalar>(
    shift: &WeightedShift<T>,
    verdict: &FormalNormalityVerdict<T>,
) -> Result<NormalDecomposition<T>, ClassifyError> {
    let witness = verdict.witness().ok_or(ClassifyError::NotNormal)?;
    let profile = shift
        .tree()
        .as_profile()
        .ok_or(ClassifyError::NotNormal)?;
    let path = &witness.path;

    let zero_core: BTreeSet<VertexId> = profile
        .core()
        .vertices()
        .filter(|v| !path.contains(v))
        .cloned()
        .collect();
    let zero_rays: Vec<String> = profile
        .rays()
        .iter()
        .filter(|r| r.name != path.ray_name())
        .map(|r| r.name.clone())
        .collect();

    // Representative vertices of each part: all core vertices plus one
    // vertex past each prefix on the symbolic branches.
    let mut part_x: Vec<VertexId> = path.core_chain().to_vec();
    part_x.push(VertexId::Stem(-1));
    part_x.push(VertexId::ray(path.ray_name(), 1));
    let mut part_y: Vec<VertexId> = zero_core.iter().cloned().collect();
    for name in &zero_rays {
        part_y.push(VertexId::ray(name.clone(), 1));
    }

    for u in &part_x {
        let image = shift.apply(&SparseVector::basis(u.clone()))?;
        if image.support().any(|v| !path.contains(v)) {
            return Err(ClassifyError::InternalCheck(u.clone()));
        }
    }
    for u in &part_y {
        let image = shift.apply(&SparseVector::basis(u.clone()))?;
        if !image.is_zero() {
            return Err(ClassifyError::InternalCheck(u.clone()));
        }
    }

    Ok(NormalDecomposition {
        modulus: witness.modulus,
        path: path.clone(),
        zero_core,
        zero_rays,
    })
}

/// First vertex (in canonical order: core, stem, rays) carrying weight zero.
fn first_zero_weight<T: Scalar>(shift: &WeightedShift<T>) -> Option<VertexId> {
    let weights = shift.weights();
    for (v, w) in &weights.core {
        if w.norm_sqr() == T::zero() {
            return Some(v.clone());
        }
    }
    if let Some(stem) = &weights.stem {
        for (idx, w) in stem.prefix.iter().enumerate() {
            if w.norm_sqr() == T::zero() {
                return Some(VertexId::Stem(-(idx as i64 + 1)));
            }
        }
        if stem.tail_modulus == T::zero() {
            return Some(VertexId::Stem(-(stem.prefix.len() as i64 + 1)));
        }
    }
    for (name, tail) in &weights.rays {
        for (idx, w) in tail.prefix.iter().enumerate() {
            if w.norm_sqr() == T::zero() {
                return Some(VertexId::ray(name.clone(), idx as u64 + 1));
            }
        }
        if tail.tail_modulus == T::zero() {
            return Some(VertexId::ray(name.clone(), tail.prefix.len() as u64 + 1));
        }
    }
    None
}

/// Weight moduli along a canonical path, as (position, modulus) pairs
/// covering all distinct values: explicit core chain and prefixes, then one
/// tail representative (whose modulus repeats forever).
fn unilateral_moduli<T: Scalar>(
    shift: &WeightedShift<T>,
    path: &CanonicalPath,
) -> (Vec<(i64, T)>, T) {
    let weights = shift.weights();
    let mut out = Vec::new();
    for (pos, v) in path.core_chain().iter().enumerate().skip(1) {
        out.push((pos as i64, weights.core[v].norm_sqr().sqrt()));
    }
    let ray = &weights.rays[path.ray_name()];
    let base = path.core_chain().len() as i64 - 1;
    for (idx, w) in ray.prefix.iter().enumerate() {
        out.push((base + idx as i64 + 1, w.norm_sqr().sqrt()));
    }
    let tail_pos = base + ray.prefix.len() as i64 + 1;
    out.push((tail_pos, ray.tail_modulus));
    (out, ray.tail_modulus)
}

/// Decides whether a normal extension of the shift could be modeled as a
/// weighted shift on a directed tree, classifying the two positive cases by
/// their parameters. The trichotomy applies to shifts with all weights
/// nonzero; `require_nonzero` enforces that hypothesis up front.
///
/// The positive verdicts certify only the necessary weight pattern (shape
/// and moduli, plus the moment conditions checked separately); they do not
/// certify subnormality itself.
pub fn classify_extension<T: Scalar>(
    shift: &WeightedShift<T>,
    require_nonzero: bool,
    rel_tol: T,
) -> ExtensionVerdict<T> {
    if require_nonzero {
        if let Some(v) = first_zero_weight(shift) {
            return ExtensionVerdict::NotModelable(NotModelableReason::ZeroWeight(v));
        }
    }
    let profile = match shift.tree().as_profile() {
        Some(p) => p,
        // A finite tree always has a leaf, so it is neither the line nor
        // the half-line.
        None => return ExtensionVerdict::NotModelable(NotModelableReason::BranchingOrLeaf),
    };
    match profile.path_shape() {
        PathShape::NotAPath => {
            ExtensionVerdict::NotModelable(NotModelableReason::BranchingOrLeaf)
        }
        PathShape::ZPath(path) => {
            let weights = shift.weights();
            let stem = weights.stem.as_ref().expect("stem weights present");
            let alpha = stem.tail_modulus;
            if alpha == T::zero() {
                return ExtensionVerdict::NotModelable(NotModelableReason::NonconstantBilateral);
            }
            let mut moduli: Vec<T> =
                stem.prefix.iter().map(|w| w.norm_sqr().sqrt()).collect();
            moduli.extend(
                path.core_chain()
                    .iter()
                    .map(|v| weights.core[v].norm_sqr().sqrt()),
            );
            let ray = &weights.rays[path.ray_name()];
            moduli.extend(ray.prefix.iter().map(|w| w.norm_sqr().sqrt()));
            moduli.push(ray.tail_modulus);
            if moduli.iter().all(|m| rel_close(*m, alpha, rel_tol)) {
                ExtensionVerdict::BilateralMultiple { alpha }
            } else {
                ExtensionVerdict::NotModelable(NotModelableReason::NonconstantBilateral)
            }
        }
        PathShape::ZPlusPath(path) => {
            let (moduli, alpha) = unilateral_moduli(shift, &path);
            if alpha == T::zero() {
                return ExtensionVerdict::NotModelable(NotModelableReason::WeightPattern);
            }
            let mut first = None;
            for (pos, m) in &moduli {
                if *pos == 1 {
                    first = Some(*m);
                } else if !rel_close(*m, alpha, rel_tol) {
                    return ExtensionVerdict::NotModelable(NotModelableReason::WeightPattern);
                }
            }
            let first = first.expect("position 1 exists on a half-line path");
            if first == T::zero() {
                return ExtensionVerdict::NotModelable(NotModelableReason::WeightPattern);
            }
            let theta = first / alpha;
            if theta <= T::one() {
                ExtensionVerdict::PerturbedUnilateral { alpha, theta }
            } else if rel_close(first, alpha, rel_tol) {
                ExtensionVerdict::PerturbedUnilateral {
                    alpha,
                    theta: T::one(),
                }
            } else {
                ExtensionVerdict::NotModelable(NotModelableReason::WeightPattern)
            }
        }
    }
}

/// The explicit model of a normal extension for the perturbed-unilateral
/// case: constant weight `alpha` on the line with a zero-weight leaf at
/// vertex 0, together with the embedded orthonormal sequence spanning a
/// copy of the original space.
#[derive(Clone, Debug)]
pub struct ExtensionModel<T: Scalar> {
    shift: WeightedShift<T>,
    alpha: T,
    theta: T,
}

impl<T: Scalar> ExtensionModel<T> {
    pub fn shift(&self) -> &WeightedShift<T> {
        &self.shift
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    /// The embedded basis vector: a two-term combination of the leaf and
    /// vertex 0 at n = 0, the plain ray basis vector further up.
    pub fn embedded_basis(&self, n: usize) -> SparseVector<T> {
        if n == 0 {
            let mut out = SparseVector::zero();
            let c = (T::one() - self.theta * self.theta).sqrt();
            out.set(VertexId::core("omega"), CWeight::new(c, T::zero()));
            out.set(VertexId::core("0"), CWeight::new(self.theta, T::zero()));
            out
        } else {
            SparseVector::basis(VertexId::ray("+", n as u64))
        }
    }
}

pub fn build_extension_model<T: Scalar>(
    alpha: T,
    theta: T,
) -> Result<ExtensionModel<T>, ClassifyError> {
    let theta_ok = theta > T::zero() && theta <= T::one();
    if !theta_ok {
        return Err(ClassifyError::InvalidTheta(format!("{theta:?}")));
    }
    let alpha_ok = alpha > T::zero() && crate::scalar::scalar_is_finite(alpha);
    if !alpha_ok {
        return Err(ClassifyError::InvalidAlpha(format!("{alpha:?}")));
    }
    Ok(ExtensionModel {
        shift: WeightedShift::z_with_leaf_shift(alpha),
        alpha,
        theta,
    })
}

/// Everything `verify_extension` measured, with the residuals it compared
/// against the tolerance.
#[derive(Clone, Debug)]
pub struct ExtensionReport<T: Scalar> {
    pub count: usize,
    pub tol: T,
    /// max |<e~_m, e~_n> - delta_mn|
    pub gram_max_dev: T,
    /// max residual of N e~_0 = alpha theta e~_1 and N e~_n = alpha e~_{n+1}
    pub action_max_residual: T,
    /// max deviation of the restriction matrix from the expected unilateral
    /// weighted shift
    pub restriction_max_dev: T,
    /// extracted subdiagonal weights of the restriction
    pub restriction_weights: Vec<T>,
    pub model_is_normal: bool,
    pub model_modulus: Option<T>,
    /// alpha - alpha * theta; positive exactly when the original shift is
    /// not an isometry
    pub isometry_defect: T,
    pub isometry_consistent: bool,
    pub passed: bool,
}

/// Verifies that the model operator restricted to the embedded copy acts as
/// the classified shift: orthonormality of the embedding, the shift action,
/// the restriction matrix, normality of the model, and the isometry
/// obstruction for theta < 1.
pub fn verify_extension<T: Scalar>(
    shift: &WeightedShift<T>,
    model: &ExtensionModel<T>,
    count: usize,
    tol: T,
) -> Result<ExtensionReport<T>, ClassifyError> {
    let (alpha, theta) = match classify_extension(shift, true, tol) {
        ExtensionVerdict::PerturbedUnilateral { alpha, theta } => (alpha, theta),
        _ => return Err(ClassifyError::NotPerturbedUnilateral),
    };
    if !rel_close(alpha, model.alpha(), tol) || !rel_close(theta, model.theta(), tol) {
        return Err(ClassifyError::ModelMismatch(format!(
            "shift has (alpha, theta) = ({alpha:?}, {theta:?}), model was built with ({:?}, {:?})",
            model.alpha(),
            model.theta()
        )));
    }

    let n_vecs = count + 1;
    let embedded: Vec<SparseVector<T>> =
        (0..=n_vecs).map(|n| model.embedded_basis(n)).collect();
    let images: Vec<SparseVector<T>> = embedded
        .iter()
        .map(|e| model.shift().apply(e))
        .collect::<Result<_, _>>()?;

    let mut gram_max_dev = T::zero();
    for m in 0..=count {
        for n in 0..=count {
            let g = embedded[m].inner(&embedded[n]);
            let expect = if m == n { T::one() } else { T::zero() };
            let dev = (g - CWeight::new(expect, T::zero())).norm_sqr().sqrt();
            gram_max_dev = gram_max_dev.max(dev);
        }
    }

    let mut action_max_residual = T::zero();
    for n in 0..=count {
        let factor = if n == 0 { alpha * theta } else { alpha };
        let expect = embedded[n + 1].scaled(CWeight::new(factor, T::zero()));
        let residual = images[n].minus(&expect).norm();
        action_max_residual = action_max_residual.max(residual);
    }

    let mut restriction_max_dev = T::zero();
    let mut restriction_weights = Vec::with_capacity(count);
    for n in 0..=count {
        for (m, e_m) in embedded.iter().enumerate().take(count + 1) {
            let entry = images[n].inner(e_m);
            let expect = if m == n + 1 {
                if n == 0 {
                    alpha * theta
                } else {
                    alpha
                }
            } else {
                T::zero()
            };
            let dev = (entry - CWeight::new(expect, T::zero())).norm_sqr().sqrt();
            restriction_max_dev = restriction_max_dev.max(dev);
        }
        if n < count {
            let sub = images[n].inner(&embedded[n + 1]);
            restriction_weights.push(sub.re);
        }
    }

    let model_verdict = formal_normality(model.shift(), tol);
    let model_modulus = model_verdict.witness().map(|w| w.modulus);
    let model_is_normal = model_modulus.is_some();

    let root = shift
        .tree()
        .root()
        .expect("perturbed-unilateral shifts are rooted")
        .clone();
    let norm_at_root = shift.basis_norm_sq(&root)?.sqrt();
    let isometry_defect = alpha - norm_at_root;
    let isometry_consistent = if theta < T::one() {
        isometry_defect > T::zero()
    } else {
        rel_close(norm_at_root, alpha, tol)
    };

    let passed = gram_max_dev <= tol
        && action_max_residual <= tol
        && restriction_max_dev <= tol
        && model_is_normal
        && model_modulus.is_some_and(|m| rel_close(m, alpha, tol))
        && isometry_consistent;

    Ok(ExtensionReport {
        count,
        tol,
        gram_max_dev,
        action_max_residual,
        restriction_max_dev,
        restriction_weights,
        model_is_normal,
        model_modulus,
        isometry_defect,
        isometry_consistent,
        passed,
    })
}
