//! The weighted shift operator attached to a tree: one complex weight per
//! non-root vertex, acting on finitely supported vectors by
//! `(S f)(v) = weight(v) * f(parent(v))`.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::dense::DenseOperator;
use crate::scalar::{scalar_is_finite, weight_is_finite, CWeight, Scalar};
use crate::sparse::SparseVector;
use crate::tree::{FiniteTree, TreeError, TreeProfile, Truncation, VertexId, Window};

/// Weights along an infinite stem or ray: finitely many explicit complex
/// values nearest the core, then a constant nonnegative modulus.
#[derive(Clone, Debug, PartialEq)]
pub struct TailWeights<T: Scalar> {
    pub prefix: Vec<CWeight<T>>,
    pub tail_modulus: T,
}

impl<T: Scalar> TailWeights<T> {
    pub fn constant(tail_modulus: T) -> Self {
        TailWeights {
            prefix: Vec::new(),
            tail_modulus,
        }
    }

    /// Weight of the k-th vertex along the branch (1-based distance from
    /// the core).
    fn at(&self, k: u64) -> CWeight<T> {
        let idx = (k - 1) as usize;
        self.prefix
            .get(idx)
            .copied()
            .unwrap_or_else(|| CWeight::new(self.tail_modulus, T::zero()))
    }

    fn is_zero(&self) -> bool {
        self.tail_modulus == T::zero()
            && self.prefix.iter().all(|w| w.norm_sqr() == T::zero())
    }

    fn map(&self, f: &mut impl FnMut(CWeight<T>) -> CWeight<T>) -> Self {
        TailWeights {
            prefix: self.prefix.iter().map(|w| f(*w)).collect(),
            tail_modulus: self.tail_modulus,
        }
    }
}

/// The full weight family: defined exactly on the non-root vertices. When a
/// stem is present the core root is a non-root vertex and carries a core
/// weight; without a stem it must not.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightFamily<T: Scalar> {
    pub core: BTreeMap<VertexId, CWeight<T>>,
    pub stem: Option<TailWeights<T>>,
    pub rays: BTreeMap<String, TailWeights<T>>,
}

impl<T: Scalar> WeightFamily<T> {
    pub fn finite(core: BTreeMap<VertexId, CWeight<T>>) -> Self {
        WeightFamily {
            core,
            stem: None,
            rays: BTreeMap::new(),
        }
    }
}

/// Either substrate a shift can live on.
#[derive(Clone, Debug, PartialEq)]
pub enum ShiftTree {
    Finite(FiniteTree),
    Profile(TreeProfile),
}

impl ShiftTree {
    pub fn contains(&self, u: &VertexId) -> bool {
        match self {
            ShiftTree::Finite(t) => t.contains(u),
            ShiftTree::Profile(p) => p.contains(u),
        }
    }

    pub fn children(&self, u: &VertexId) -> Result<BTreeSet<VertexId>, TreeError> {
        match self {
            ShiftTree::Finite(t) => t.children(u).cloned(),
            ShiftTree::Profile(p) => p.children(u),
        }
    }

    pub fn parent(&self, u: &VertexId) -> Result<Option<VertexId>, TreeError> {
        match self {
            ShiftTree::Finite(t) => Ok(t.parent(u)?.cloned()),
            ShiftTree::Profile(p) => p.parent(u),
        }
    }

    /// The root; `None` exactly for profiles with a stem.
    pub fn root(&self) -> Option<&VertexId> {
        match self {
            ShiftTree::Finite(t) => Some(t.root()),
            ShiftTree::Profile(p) => p.root(),
        }
    }

    pub fn is_root(&self, u: &VertexId) -> bool {
        self.root() == Some(u)
    }

    pub fn is_leafless(&self) -> bool {
        match self {
            ShiftTree::Finite(t) => t.is_leafless(),
            ShiftTree::Profile(p) => p.is_leafless(),
        }
    }

    pub fn as_profile(&self) -> Option<&TreeProfile> {
        match self {
            ShiftTree::Profile(p) => Some(p),
            ShiftTree::Finite(_) => None,
        }
    }

    /// Finite materialization; a finite tree is its own truncation with no
    /// boundary.
    pub fn truncate(&self, window: Window) -> Truncation {
        match self {
            ShiftTree::Finite(t) => Truncation {
                tree: t.clone(),
                boundary: BTreeSet::new(),
            },
            ShiftTree::Profile(p) => p.truncate(window),
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ShiftError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("missing weight for non-root vertex {0}")]
    MissingWeight(VertexId),
    #[error("unexpected weight entry for {0} (root or not a vertex)")]
    UnexpectedWeight(VertexId),
    #[error("the root {0} carries no weight")]
    RootWeight(VertexId),
    #[error("stem weights {0} present while the profile stem is {1}")]
    StemMismatch(&'static str, &'static str),
    #[error("ray weights for {0:?} do not match the profile rays")]
    RayMismatch(String),
    #[error("tail modulus for {0:?} is negative or not finite")]
    InvalidTailModulus(String),
    #[error("weight for {0} is not finite")]
    NonFiniteWeight(VertexId),
}

/// A weighted shift operator: tree plus weights on all non-root vertices.
/// Immutable after construction; all operations are pure.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedShift<T: Scalar> {
    tree: ShiftTree,
    weights: WeightFamily<T>,
}

impl<T: Scalar> WeightedShift<T> {
    /// Shift on an explicit finite tree; `core` maps every non-root vertex
    /// to its weight.
    pub fn on_finite(
        tree: FiniteTree,
        core: BTreeMap<VertexId, CWeight<T>>,
    ) -> Result<Self, ShiftError> {
        Self::build(ShiftTree::Finite(tree), WeightFamily::finite(core))
    }

    /// Shift on a profile; the weight family must cover the core (including
    /// the core root exactly when a stem is present), the stem and every ray.
    pub fn on_profile(
        profile: TreeProfile,
        weights: WeightFamily<T>,
    ) -> Result<Self, ShiftError> {
        Self::build(ShiftTree::Profile(profile), weights)
    }

    fn build(tree: ShiftTree, weights: WeightFamily<T>) -> Result<Self, ShiftError> {
        match &tree {
            ShiftTree::Finite(t) => {
                if weights.stem.is_some() {
                    return Err(ShiftError::StemMismatch("present", "absent"));
                }
                if let Some(name) = weights.rays.keys().next() {
                    return Err(ShiftError::RayMismatch(name.clone()));
                }
                for v in t.vertices() {
                    if v == t.root() {
                        if weights.core.contains_key(v) {
                            return Err(ShiftError::UnexpectedWeight(v.clone()));
                        }
                    } else if !weights.core.contains_key(v) {
                        return Err(ShiftError::MissingWeight(v.clone()));
                    }
                }
                for v in weights.core.keys() {
                    if !t.contains(v) {
                        return Err(ShiftError::UnexpectedWeight(v.clone()));
                    }
                }
            }
            ShiftTree::Profile(p) => {
                match (p.has_stem(), &weights.stem) {
                    (true, None) => return Err(ShiftError::StemMismatch("absent", "present")),
                    (false, Some(_)) => {
                        return Err(ShiftError::StemMismatch("present", "absent"))
                    }
                    _ => {}
                }
                let ray_names: BTreeSet<_> =
                    p.rays().iter().map(|r| r.name.clone()).collect();
                let weight_names: BTreeSet<_> = weights.rays.keys().cloned().collect();
                if let Some(name) = ray_names.symmetric_difference(&weight_names).next() {
                    return Err(ShiftError::RayMismatch(name.clone()));
                }
                let core_root = p.core().root();
                for v in p.core().vertices() {
                    let needs_weight = v != core_root || p.has_stem();
                    match (needs_weight, weights.core.contains_key(v)) {
                        (true, false) => return Err(ShiftError::MissingWeight(v.clone())),
                        (false, true) => return Err(ShiftError::UnexpectedWeight(v.clone())),
                        _ => {}
                    }
                }
                for v in weights.core.keys() {
                    if !p.core().contains(v) {
                        return Err(ShiftError::UnexpectedWeight(v.clone()));
                    }
                }
            }
        }
        for (v, w) in &weights.core {
            if !weight_is_finite(*w) {
                return Err(ShiftError::NonFiniteWeight(v.clone()));
            }
        }
        let tails = weights
            .stem
            .iter()
            .map(|t| ("stem".to_string(), t))
            .chain(weights.rays.iter().map(|(n, t)| (n.clone(), t)));
        for (name, tail) in tails {
            if tail.tail_modulus < T::zero() || !scalar_is_finite(tail.tail_modulus) {
                return Err(ShiftError::InvalidTailModulus(name));
            }
            for w in &tail.prefix {
                if !weight_is_finite(*w) {
                    return Err(ShiftError::InvalidTailModulus(name));
                }
            }
        }
        Ok(WeightedShift { tree, weights })
    }

    pub fn tree(&self) -> &ShiftTree {
        &self.tree
    }

    pub fn weights(&self) -> &WeightFamily<T> {
        &self.weights
    }

    /// The weight of a non-root vertex.
    pub fn weight(&self, v: &VertexId) -> Result<CWeight<T>, ShiftError> {
        if !self.tree.contains(v) {
            return Err(ShiftError::Tree(TreeError::UnknownVertex(v.clone())));
        }
        if self.tree.is_root(v) {
            return Err(ShiftError::RootWeight(v.clone()));
        }
        Ok(match v {
            VertexId::Core(_) => *self
                .weights
                .core
                .get(v)
                .expect("validated: every non-root core vertex has a weight"),
            VertexId::Stem(k) => self
                .weights
                .stem
                .as_ref()
                .expect("validated: stem weights present")
                .at((-k) as u64),
            VertexId::Ray(name, i) => self.weights.rays[name].at(*i),
        })
    }

    /// True when every weight vanishes, i.e. the operator is zero.
    pub fn is_zero_shift(&self) -> bool {
        self.weights
            .core
            .values()
            .all(|w| w.norm_sqr() == T::zero())
            && self.weights.stem.iter().all(|t| t.is_zero())
            && self.weights.rays.values().all(|t| t.is_zero())
    }

    /// S f: linear, exact, finitely supported.
    pub fn apply(&self, f: &SparseVector<T>) -> Result<SparseVector<T>, ShiftError> {
        let mut out = SparseVector::zero();
        for (u, coeff) in f.iter() {
            for v in self.tree.children(u)? {
                let w = self.weight(&v)?;
                out.add_to(v, w * *coeff);
            }
        }
        Ok(out)
    }

    /// S* f: linear extension of `S* e_u = conj(weight(u)) e_{parent(u)}`,
    /// with `S* e_root = 0`.
    pub fn apply_adjoint(&self, f: &SparseVector<T>) -> Result<SparseVector<T>, ShiftError> {
        let mut out = SparseVector::zero();
        for (u, coeff) in f.iter() {
            if let Some(p) = self.tree.parent(u)? {
                let w = self.weight(u)?;
                out.add_to(p, w.conj() * *coeff);
            }
        }
        Ok(out)
    }

    /// ||S e_u||^2 = sum of |weight|^2 over the children of `u` (empty sum
    /// is zero).
    pub fn basis_norm_sq(&self, u: &VertexId) -> Result<T, ShiftError> {
        let mut acc = T::zero();
        for v in self.tree.children(u)? {
            acc += self.weight(&v)?.norm_sqr();
        }
        Ok(acc)
    }

    /// Finite list of vertices whose `basis_norm_sq` values exhaust all
    /// values attained over the whole (possibly infinite) tree: every core
    /// vertex, the stem down to one step past its prefix, and each ray one
    /// step past its prefix.
    fn norm_candidates(&self) -> Vec<VertexId> {
        match &self.tree {
            ShiftTree::Finite(t) => t.vertices().cloned().collect(),
            ShiftTree::Profile(p) => {
                let mut out: Vec<VertexId> = p.core().vertices().cloned().collect();
                if let Some(stem) = &self.weights.stem {
                    for k in 1..=(stem.prefix.len() as i64 + 2) {
                        out.push(VertexId::Stem(-k));
                    }
                }
                for (name, tail) in &self.weights.rays {
                    for i in 1..=(tail.prefix.len() as u64 + 1) {
                        out.push(VertexId::Ray(name.clone(), i));
                    }
                }
                out
            }
        }
    }

    /// The exact supremum of `basis_norm_sq` over all vertices; equals the
    /// squared operator norm when the shift is bounded, which it always is
    /// under this representation.
    pub fn norm_sq_bound(&self) -> T {
        self.norm_candidates()
            .iter()
            .map(|u| self.basis_norm_sq(u).expect("candidate vertices exist"))
            .fold(T::zero(), |a, b| a.max(b))
    }

    /// Injective iff the tree is leafless and every vertex carries positive
    /// outgoing weight mass.
    pub fn is_injective(&self) -> bool {
        self.tree.is_leafless()
            && self
                .norm_candidates()
                .iter()
                .all(|u| self.basis_norm_sq(u).expect("candidate vertices exist") > T::zero())
    }

    /// S^n e_u by repeated sparse application; exact, with support inside
    /// the n-th iterated children set.
    pub fn power_apply(&self, u: &VertexId, n: usize) -> Result<SparseVector<T>, ShiftError> {
        if !self.tree.contains(u) {
            return Err(ShiftError::Tree(TreeError::UnknownVertex(u.clone())));
        }
        let mut f = SparseVector::basis(u.clone());
        for _ in 0..n {
            f = self.apply(&f)?;
            if f.is_zero() {
                break;
            }
        }
        Ok(f)
    }

    /// The sequence ||S^n e_u||^2 for n = 0..count.
    pub fn moment_sequence(&self, u: &VertexId, count: usize) -> Result<Vec<T>, ShiftError> {
        if !self.tree.contains(u) {
            return Err(ShiftError::Tree(TreeError::UnknownVertex(u.clone())));
        }
        let mut out = Vec::with_capacity(count);
        let mut f = SparseVector::basis(u.clone());
        for n in 0..count {
            if n > 0 {
                f = self.apply(&f)?;
            }
            out.push(f.norm_sqr());
        }
        Ok(out)
    }

    /// Materializes the operator on a finite tree (typically a truncation of
    /// this shift's profile): column u holds the coordinates of S e_u.
    pub fn to_dense(&self, finite: &FiniteTree) -> Result<DenseOperator<T>, ShiftError> {
        let basis: Vec<VertexId> = finite.vertices().cloned().collect();
        let mut triples = Vec::new();
        for v in &basis {
            if !self.tree.contains(v) {
                return Err(ShiftError::Tree(TreeError::UnknownVertex(v.clone())));
            }
            if let Some(p) = finite.parent(v)? {
                debug_assert_eq!(self.tree.parent(v).unwrap().as_ref(), Some(p));
                triples.push((v.clone(), p.clone(), self.weight(v)?));
            }
        }
        Ok(DenseOperator::from_entries(basis, &triples))
    }

    /// Multiplies every weight by `c`. Tail moduli absorb only |c|: the
    /// dropped phase is a unit-modulus gauge, invisible to every classifier.
    pub fn scale_weights(&self, c: CWeight<T>) -> Self {
        let modulus = c.norm_sqr().sqrt();
        let scaled = WeightFamily {
            core: self
                .weights
                .core
                .iter()
                .map(|(v, w)| (v.clone(), *w * c))
                .collect(),
            stem: self.weights.stem.as_ref().map(|t| TailWeights {
                prefix: t.prefix.iter().map(|w| *w * c).collect(),
                tail_modulus: t.tail_modulus * modulus,
            }),
            rays: self
                .weights
                .rays
                .iter()
                .map(|(n, t)| {
                    (
                        n.clone(),
                        TailWeights {
                            prefix: t.prefix.iter().map(|w| *w * c).collect(),
                            tail_modulus: t.tail_modulus * modulus,
                        },
                    )
                })
                .collect(),
        };
        WeightedShift {
            tree: self.tree.clone(),
            weights: scaled,
        }
    }

    /// Applies a per-vertex map to all explicitly stored weights (core and
    /// prefixes); tails are untouched. With unit-modulus factors this is a
    /// gauge transformation.
    pub fn map_explicit_weights(&self, mut f: impl FnMut(&VertexId, CWeight<T>) -> CWeight<T>) -> Self {
        let core = self
            .weights
            .core
            .iter()
            .map(|(v, w)| (v.clone(), f(v, *w)))
            .collect();
        let stem = self.weights.stem.as_ref().map(|t| {
            let mut k = 0i64;
            t.map(&mut |w| {
                k -= 1;
                f(&VertexId::Stem(k), w)
            })
        });
        let rays = self
            .weights
            .rays
            .iter()
            .map(|(n, t)| {
                let mut i = 0u64;
                let mapped = t.map(&mut |w| {
                    i += 1;
                    f(&VertexId::Ray(n.clone(), i), w)
                });
                (n.clone(), mapped)
            })
            .collect();
        WeightedShift {
            tree: self.tree.clone(),
            weights: WeightFamily { core, stem, rays },
        }
    }

    /// Largest weight modulus among the explicitly stored finite data; used
    /// by reports.
    pub fn max_explicit_modulus(&self) -> T {
        let mut m = T::zero();
        for w in self.weights.core.values() {
            m = m.max(w.norm_sqr().sqrt());
        }
        for t in self.weights.stem.iter().chain(self.weights.rays.values()) {
            m = m.max(t.tail_modulus);
            for w in &t.prefix {
                m = m.max(w.norm_sqr().sqrt());
            }
        }
        m
    }
}

/// Convenience builders for the canonical line and half-line shifts used
/// throughout the tests and the bundled corpus.
impl<T: Scalar> WeightedShift<T> {
    /// Shift on the half-line with weights `first, tail, tail, ...`.
    pub fn zplus_shift(first: T, tail: T) -> Self {
        let profile = TreeProfile::zplus();
        let weights = WeightFamily {
            core: BTreeMap::new(),
            stem: None,
            rays: BTreeMap::from([(
                "+".to_string(),
                TailWeights {
                    prefix: vec![CWeight::new(first, T::zero())],
                    tail_modulus: tail,
                },
            )]),
        };
        WeightedShift::on_profile(profile, weights).expect("canonical shift")
    }

    /// Shift on the line with constant weight `alpha`.
    pub fn z_shift(alpha: T) -> Self {
        let profile = TreeProfile::z();
        let weights = WeightFamily {
            core: BTreeMap::from([(
                VertexId::core("0"),
                CWeight::new(alpha, T::zero()),
            )]),
            stem: Some(TailWeights::constant(alpha)),
            rays: BTreeMap::from([("+".to_string(), TailWeights::constant(alpha))]),
        };
        WeightedShift::on_profile(profile, weights).expect("canonical shift")
    }

    /// The extension-model shift: constant weight `alpha` on the line, a
    /// zero-weight leaf `omega` at vertex 0.
    pub fn z_with_leaf_shift(alpha: T) -> Self {
        let profile = TreeProfile::z_with_leaf();
        let weights = WeightFamily {
            core: BTreeMap::from([
                (VertexId::core("0"), CWeight::new(alpha, T::zero())),
                (VertexId::core("omega"), CWeight::new(T::zero(), T::zero())),
            ]),
            stem: Some(TailWeights::constant(alpha)),
            rays: BTreeMap::from([("+".to_string(), TailWeights::constant(alpha))]),
        };
        WeightedShift::on_profile(profile, weights).expect("canonical shift")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(name: &str) -> VertexId {
        VertexId::core(name)
    }
    fn r(i: u64) -> VertexId {
        VertexId::ray("+", i)
    }
    fn w(re: f64) -> CWeight<f64> {
        CWeight::new(re, 0.0)
    }

    #[test]
    fn construction_validates_weight_domain() {
        let tree = FiniteTree::path(&[c("0"), c("1")]).unwrap();
        // missing weight for "1"
        assert!(matches!(
            WeightedShift::<f64>::on_finite(tree.clone(), BTreeMap::new()),
            Err(ShiftError::MissingWeight(_))
        ));
        // weight on the root is rejected
        assert!(matches!(
            WeightedShift::on_finite(
                tree.clone(),
                BTreeMap::from([(c("0"), w(1.0)), (c("1"), w(1.0))])
            ),
            Err(ShiftError::UnexpectedWeight(_))
        ));
        let s = WeightedShift::on_finite(tree, BTreeMap::from([(c("1"), w(2.0))])).unwrap();
        assert_eq!(s.weight(&c("1")).unwrap(), w(2.0));
        assert!(matches!(
            s.weight(&c("0")),
            Err(ShiftError::RootWeight(_))
        ));

        // profile with stem requires a core-root weight
        let profile = TreeProfile::z();
        let missing_root = WeightFamily {
            core: BTreeMap::new(),
            stem: Some(TailWeights::constant(1.0)),
            rays: BTreeMap::from([("+".to_string(), TailWeights::constant(1.0))]),
        };
        assert!(matches!(
            WeightedShift::on_profile(profile, missing_root),
            Err(ShiftError::MissingWeight(_))
        ));

        // negative tail modulus rejected
        let bad = WeightFamily {
            core: BTreeMap::new(),
            stem: None,
            rays: BTreeMap::from([("+".to_string(), TailWeights::constant(-1.0))]),
        };
        assert!(matches!(
            WeightedShift::on_profile(TreeProfile::zplus(), bad),
            Err(ShiftError::InvalidTailModulus(_))
        ));
    }

    #[test]
    fn apply_sends_basis_to_weighted_children() {
        let s = WeightedShift::z_with_leaf_shift(1.0);
        let out = s.apply(&SparseVector::basis(c("0"))).unwrap();
        // S e_0 = 1 * e_{+1} + 0 * e_omega
        assert_eq!(out.get(&r(1)), w(1.0));
        assert_eq!(out.get(&c("omega")), w(0.0));
        assert_eq!(out.support_len(), 1);
        // the leaf has no children
        let leaf = s.apply(&SparseVector::basis(c("omega"))).unwrap();
        assert!(leaf.is_zero());
    }

    #[test]
    fn adjoint_on_half_line() {
        let theta = 0.5;
        let s = WeightedShift::zplus_shift(theta, 1.0);
        let out = s.apply_adjoint(&SparseVector::basis(r(1))).unwrap();
        assert_eq!(out.get(&c("0")), w(theta));
        let at_root = s.apply_adjoint(&SparseVector::basis(c("0"))).unwrap();
        assert!(at_root.is_zero());
    }

    #[test]
    fn basis_norm_sq_examples() {
        let model = WeightedShift::z_with_leaf_shift(1.0);
        assert_eq!(model.basis_norm_sq(&c("0")).unwrap(), 1.0);
        assert_eq!(model.basis_norm_sq(&c("omega")).unwrap(), 0.0);

        let tree = FiniteTree::from_edges(&[(c("r"), c("a")), (c("r"), c("b"))]).unwrap();
        let s = WeightedShift::on_finite(
            tree,
            BTreeMap::from([(c("a"), w(1.0)), (c("b"), w(1.0))]),
        )
        .unwrap();
        assert_eq!(s.basis_norm_sq(&c("r")).unwrap(), 2.0);
    }

    #[test]
    fn norm_bound_and_injectivity() {
        let s = WeightedShift::z_shift(2.0);
        assert_eq!(s.norm_sq_bound(), 4.0);
        assert!(s.is_injective());

        let theta_shift = WeightedShift::zplus_shift(0.5, 1.0);
        assert_eq!(theta_shift.norm_sq_bound(), 1.0);
        assert!(theta_shift.is_injective());

        let model = WeightedShift::z_with_leaf_shift(1.0);
        assert!(!model.is_injective()); // omega is a leaf

        let dead_tail = WeightedShift::zplus_shift(1.0, 0.0);
        assert!(!dead_tail.is_injective());

        let zero = WeightedShift::z_shift(0.0);
        assert_eq!(zero.norm_sq_bound(), 0.0);
        assert!(zero.is_zero_shift());
    }

    #[test]
    fn power_and_moments_on_half_line() {
        let theta = 0.5;
        let s = WeightedShift::zplus_shift(theta, 1.0);
        assert_eq!(
            s.power_apply(&c("0"), 0).unwrap(),
            SparseVector::basis(c("0"))
        );
        let sq = s.power_apply(&c("0"), 2).unwrap();
        assert_eq!(sq.get(&r(2)), w(theta));
        assert_eq!(sq.support_len(), 1);

        let at_root = s.moment_sequence(&c("0"), 5).unwrap();
        assert_eq!(at_root, vec![1.0, 0.25, 0.25, 0.25, 0.25]);
        let at_one = s.moment_sequence(&r(1), 5).unwrap();
        assert_eq!(at_one, vec![1.0; 5]);

        let zero = WeightedShift::z_shift(0.0);
        assert_eq!(zero.moment_sequence(&c("0"), 4).unwrap(), vec![1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn gauge_and_scaling() {
        let s = WeightedShift::zplus_shift(0.5, 1.0);
        let phased = s.map_explicit_weights(|_, w| w * CWeight::new(0.0, 1.0));
        assert_eq!(phased.norm_sq_bound(), s.norm_sq_bound());
        assert_eq!(phased.is_injective(), s.is_injective());
        assert_eq!(
            phased.moment_sequence(&c("0"), 6).unwrap(),
            s.moment_sequence(&c("0"), 6).unwrap()
        );

        let doubled = s.scale_weights(CWeight::new(0.0, 2.0));
        let bound: f64 = doubled.norm_sq_bound();
        assert!((bound - 4.0).abs() < 1e-15);
    }
}
