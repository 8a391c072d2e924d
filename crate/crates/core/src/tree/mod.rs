//! Directed-tree combinatorics.
//!
//! Two representations coexist:
//!
//! * [`FiniteTree`] — an explicit rooted finite directed tree; the substrate
//!   for dense matrix oracles.
//! * [`TreeProfile`] — a finitely described, possibly infinite directed tree:
//!   a finite core, an optional downward stem (a copy of the negative
//!   integers glued below the core root) and upward rays (copies of the
//!   positive integers glued at core vertices). This covers every tree the
//!   classifiers need while keeping all decisions exact and terminating.

mod finite;
mod profile;

pub use finite::FiniteTree;
pub use profile::{PathShape, RayAttachment, TreeProfile, Truncation};

use std::fmt;

use thiserror::Error;

/// Identifies a vertex of a finite tree or of an expanded profile.
///
/// Stem vertices carry indices <= -1, ray vertices indices >= 1. The derived
/// order (stems ascending, then core names, then rays by name and index) is
/// total and deterministic across runs; it fixes the basis order of every
/// dense matrix and report.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexId {
    /// A vertex of the infinite downward stem; index is <= -1.
    Stem(i64),
    /// A named vertex of the finite core.
    Core(String),
    /// The `index`-th vertex (1-based) of the named upward ray.
    Ray(String, u64),
}

impl VertexId {
    pub fn core(name: impl Into<String>) -> Self {
        VertexId::Core(name.into())
    }

    pub fn ray(name: impl Into<String>, index: u64) -> Self {
        VertexId::Ray(name.into(), index)
    }

    pub fn stem(index: i64) -> Self {
        VertexId::Stem(index)
    }

    /// Parses the display form back into an id: `s(-3)` is a stem vertex,
    /// `name(4)` a ray vertex, anything else a core vertex.
    pub fn parse(text: &str) -> Result<Self, TreeError> {
        if let Some(inner) = text.strip_prefix("s(").and_then(|t| t.strip_suffix(')')) {
            if let Ok(k) = inner.parse::<i64>() {
                if k <= -1 {
                    return Ok(VertexId::Stem(k));
                }
            }
            return Err(TreeError::InvalidVertexName(text.to_string()));
        }
        if let Some(open) = text.find('(') {
            if let Some(inner) = text[open + 1..].strip_suffix(')') {
                let name = &text[..open];
                if name.is_empty() {
                    return Err(TreeError::InvalidVertexName(text.to_string()));
                }
                if let Ok(i) = inner.parse::<u64>() {
                    if i >= 1 {
                        return Ok(VertexId::Ray(name.to_string(), i));
                    }
                }
                return Err(TreeError::InvalidVertexName(text.to_string()));
            }
        }
        if text.is_empty() || text.contains('(') || text.contains(')') {
            return Err(TreeError::InvalidVertexName(text.to_string()));
        }
        Ok(VertexId::Core(text.to_string()))
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::Stem(k) => write!(f, "s({k})"),
            VertexId::Core(name) => write!(f, "{name}"),
            VertexId::Ray(name, i) => write!(f, "{name}({i})"),
        }
    }
}

/// Expansion bounds when materializing a profile: how deep to unroll the
/// stem and how far to follow each ray.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub stem_depth: usize,
    pub ray_length: usize,
}

impl Window {
    pub fn new(stem_depth: usize, ray_length: usize) -> Self {
        Window {
            stem_depth,
            ray_length,
        }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.stem_depth, self.ray_length)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("tree has no vertices")]
    Empty,
    #[error("vertex {0} is not in the tree")]
    UnknownVertex(VertexId),
    #[error("no root: every vertex has a parent")]
    NoRoot,
    #[error("multiple roots: {0} and {1} both lack a parent")]
    MultipleRoots(VertexId, VertexId),
    #[error("parent {parent} of {child} is not a vertex of the tree")]
    ParentOutsideTree { child: VertexId, parent: VertexId },
    #[error("vertex {0} is not connected to the root (cycle or separate component)")]
    Disconnected(VertexId),
    #[error("profile core vertices must be core-named, found {0}")]
    NonCoreVertexInCore(VertexId),
    #[error("ray {0:?} attaches at {1}, which is not a core vertex")]
    UnknownAttachVertex(String, VertexId),
    #[error("duplicate ray name {0:?}")]
    DuplicateRayName(String),
    #[error("ray name must be nonempty and must not contain parentheses: {0:?}")]
    InvalidRayName(String),
    #[error("invalid vertex name {0:?}")]
    InvalidVertexName(String),
}

/// The order isomorphism witnessing a path shape: a consecutive chain of
/// core vertices continued by one ray, preceded by the whole stem when
/// bilateral. Index 0 is the core root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalPath {
    bilateral: bool,
    chain: Vec<VertexId>,
    ray: String,
}

impl CanonicalPath {
    pub(crate) fn new(bilateral: bool, chain: Vec<VertexId>, ray: String) -> Self {
        debug_assert!(!chain.is_empty());
        CanonicalPath {
            bilateral,
            chain,
            ray,
        }
    }

    /// Whether the enumeration extends over all integers (stem present).
    pub fn is_bilateral(&self) -> bool {
        self.bilateral
    }

    /// Core vertices on the path, from the core root upward.
    pub fn core_chain(&self) -> &[VertexId] {
        &self.chain
    }

    /// Name of the ray continuing the path above the core chain.
    pub fn ray_name(&self) -> &str {
        &self.ray
    }

    /// Vertex at position `n`; `None` for n < 0 on a unilateral path.
    pub fn vertex(&self, n: i64) -> Option<VertexId> {
        if n < 0 {
            return self.bilateral.then_some(VertexId::Stem(n));
        }
        let n = n as usize;
        if n < self.chain.len() {
            Some(self.chain[n].clone())
        } else {
            Some(VertexId::Ray(self.ray.clone(), (n - self.chain.len() + 1) as u64))
        }
    }

    /// Position of a vertex on the path, when it lies on it.
    pub fn index_of(&self, v: &VertexId) -> Option<i64> {
        match v {
            VertexId::Stem(k) if self.bilateral && *k <= -1 => Some(*k),
            VertexId::Core(_) => self
                .chain
                .iter()
                .position(|c| c == v)
                .map(|p| p as i64),
            VertexId::Ray(name, i) if *name == self.ray => {
                Some(self.chain.len() as i64 - 1 + *i as i64)
            }
            _ => None,
        }
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.index_of(v).is_some()
    }
}
