//! Finitely described, possibly infinite directed trees.

use std::collections::{BTreeMap, BTreeSet};

use super::{CanonicalPath, FiniteTree, TreeError, VertexId, Window};

/// An upward ray glued at a core vertex: vertices `name(1) -> name(2) -> ...`
/// with `attach -> name(1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayAttachment {
    pub name: String,
    pub attach: VertexId,
}

/// Finite core plus an optional infinite downward stem below the core root
/// and finitely many infinite upward rays. A profile with a stem is rootless.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeProfile {
    core: FiniteTree,
    has_stem: bool,
    rays: Vec<RayAttachment>,
}

/// Result of materializing a profile over a window: the finite tree plus the
/// cut locus. Boundary vertices are those whose full profile neighborhood did
/// not survive the truncation; every numerical oracle quarantines them.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub tree: FiniteTree,
    pub boundary: BTreeSet<VertexId>,
}

impl Truncation {
    /// Vertices whose parent and all children survived the cut.
    pub fn interior(&self) -> impl Iterator<Item = &VertexId> {
        self.tree.vertices().filter(|v| !self.boundary.contains(v))
    }
}

/// Shape of a profile as a directed graph, with the order isomorphism when
/// it is a path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathShape {
    /// Rootless leafless path: order-isomorphic to the integers.
    ZPath(CanonicalPath),
    /// Rooted leafless path: order-isomorphic to the nonnegative integers.
    ZPlusPath(CanonicalPath),
    NotAPath,
}

impl TreeProfile {
    pub fn new(
        core: FiniteTree,
        has_stem: bool,
        rays: Vec<RayAttachment>,
    ) -> Result<Self, TreeError> {
        for v in core.vertices() {
            if !matches!(v, VertexId::Core(_)) {
                return Err(TreeError::NonCoreVertexInCore(v.clone()));
            }
        }
        let mut names = BTreeSet::new();
        for ray in &rays {
            if ray.name.is_empty() || ray.name.contains('(') || ray.name.contains(')') {
                return Err(TreeError::InvalidRayName(ray.name.clone()));
            }
            if !names.insert(ray.name.clone()) {
                return Err(TreeError::DuplicateRayName(ray.name.clone()));
            }
            if !core.contains(&ray.attach) {
                return Err(TreeError::UnknownAttachVertex(
                    ray.name.clone(),
                    ray.attach.clone(),
                ));
            }
        }
        let mut rays = rays;
        rays.sort_by(|a, b| a.name.cmp(&b.name));
        Ok(TreeProfile {
            core,
            has_stem,
            rays,
        })
    }

    /// Just a finite core: the profile and the core describe the same tree.
    pub fn pure(core: FiniteTree) -> Result<Self, TreeError> {
        Self::new(core, false, Vec::new())
    }

    /// The half-line: root `0` continued by the ray `+`.
    pub fn zplus() -> Self {
        Self::new(
            FiniteTree::singleton(VertexId::core("0")),
            false,
            vec![RayAttachment {
                name: "+".to_string(),
                attach: VertexId::core("0"),
            }],
        )
        .expect("canonical profile")
    }

    /// The line: stem below `0`, ray `+` above it.
    pub fn z() -> Self {
        Self::new(
            FiniteTree::singleton(VertexId::core("0")),
            true,
            vec![RayAttachment {
                name: "+".to_string(),
                attach: VertexId::core("0"),
            }],
        )
        .expect("canonical profile")
    }

    /// The line with one extra leaf `omega` glued at `0`.
    pub fn z_with_leaf() -> Self {
        let core =
            FiniteTree::from_edges(&[(VertexId::core("0"), VertexId::core("omega"))]).unwrap();
        Self::new(
            core,
            true,
            vec![RayAttachment {
                name: "+".to_string(),
                attach: VertexId::core("0"),
            }],
        )
        .expect("canonical profile")
    }

    /// Vertex `n` of the canonical line / half-line profiles.
    pub fn line_vertex(n: i64) -> VertexId {
        match n {
            0 => VertexId::core("0"),
            n if n < 0 => VertexId::Stem(n),
            n => VertexId::ray("+", n as u64),
        }
    }

    pub fn core(&self) -> &FiniteTree {
        &self.core
    }

    pub fn has_stem(&self) -> bool {
        self.has_stem
    }

    pub fn rays(&self) -> &[RayAttachment] {
        &self.rays
    }

    pub fn ray(&self, name: &str) -> Option<&RayAttachment> {
        self.rays.iter().find(|r| r.name == name)
    }

    pub fn is_rooted(&self) -> bool {
        !self.has_stem
    }

    /// The root, absent exactly when the profile has a stem.
    pub fn root(&self) -> Option<&VertexId> {
        self.is_rooted().then(|| self.core.root())
    }

    pub fn contains(&self, u: &VertexId) -> bool {
        match u {
            VertexId::Core(_) => self.core.contains(u),
            VertexId::Stem(k) => self.has_stem && *k <= -1,
            VertexId::Ray(name, i) => *i >= 1 && self.ray(name).is_some(),
        }
    }

    fn check(&self, u: &VertexId) -> Result<(), TreeError> {
        if self.contains(u) {
            Ok(())
        } else {
            Err(TreeError::UnknownVertex(u.clone()))
        }
    }

    /// Exact child set; rays and the stem contribute symbolic successors.
    pub fn children(&self, u: &VertexId) -> Result<BTreeSet<VertexId>, TreeError> {
        self.check(u)?;
        Ok(match u {
            VertexId::Core(_) => {
                let mut out: BTreeSet<VertexId> = self.core.children(u)?.clone();
                for ray in &self.rays {
                    if ray.attach == *u {
                        out.insert(VertexId::Ray(ray.name.clone(), 1));
                    }
                }
                out
            }
            VertexId::Stem(-1) => BTreeSet::from([self.core.root().clone()]),
            VertexId::Stem(k) => BTreeSet::from([VertexId::Stem(k + 1)]),
            VertexId::Ray(name, i) => BTreeSet::from([VertexId::Ray(name.clone(), i + 1)]),
        })
    }

    /// The unique parent; `None` exactly at the root of a rooted profile.
    pub fn parent(&self, u: &VertexId) -> Result<Option<VertexId>, TreeError> {
        self.check(u)?;
        Ok(match u {
            VertexId::Core(_) => {
                if u == self.core.root() {
                    self.has_stem.then_some(VertexId::Stem(-1))
                } else {
                    self.core.parent(u)?.cloned()
                }
            }
            VertexId::Stem(k) => Some(VertexId::Stem(k - 1)),
            VertexId::Ray(name, 1) => {
                Some(self.ray(name).expect("checked").attach.clone())
            }
            VertexId::Ray(name, i) => Some(VertexId::Ray(name.clone(), i - 1)),
        })
    }

    pub fn iter_parent(&self, u: &VertexId, n: usize) -> Result<Option<VertexId>, TreeError> {
        self.check(u)?;
        let mut cur = u.clone();
        for _ in 0..n {
            match self.parent(&cur)? {
                Some(p) => cur = p,
                None => return Ok(None),
            }
        }
        Ok(Some(cur))
    }

    /// n-th iterated children set. Always finite: the core branches finitely
    /// and stem/ray vertices have exactly one child.
    pub fn chi_n(&self, u: &VertexId, n: usize) -> Result<BTreeSet<VertexId>, TreeError> {
        self.check(u)?;
        let mut layer = BTreeSet::from([u.clone()]);
        for _ in 0..n {
            let mut next = BTreeSet::new();
            for v in &layer {
                next.extend(self.children(v)?);
            }
            layer = next;
            if layer.is_empty() {
                break;
            }
        }
        Ok(layer)
    }

    /// Descendants of `u` inside the window truncation.
    pub fn descendants(
        &self,
        u: &VertexId,
        window: Window,
    ) -> Result<BTreeSet<VertexId>, TreeError> {
        self.check(u)?;
        let trunc = self.truncate(window);
        if !trunc.tree.contains(u) {
            return Err(TreeError::UnknownVertex(u.clone()));
        }
        trunc.tree.descendants(u)
    }

    /// True when every vertex has a child: every core leaf must carry a ray.
    pub fn is_leafless(&self) -> bool {
        self.core.vertices().all(|v| {
            !self.core.children(v).unwrap().is_empty()
                || self.rays.iter().any(|r| r.attach == *v)
        })
    }

    /// All vertices with at least two children; always core vertices.
    pub fn branching_vertices(&self) -> BTreeSet<VertexId> {
        self.core
            .vertices()
            .filter(|v| {
                let ray_count = self.rays.iter().filter(|r| r.attach == **v).count();
                self.core.children(v).unwrap().len() + ray_count >= 2
            })
            .cloned()
            .collect()
    }

    /// Decides whether the profile is order-isomorphic to the integers or to
    /// the nonnegative integers, returning the canonical enumeration.
    pub fn path_shape(&self) -> PathShape {
        if !self.is_leafless() || !self.branching_vertices().is_empty() {
            return PathShape::NotAPath;
        }
        // Leafless with no branching: the core is a chain from its root and
        // exactly one ray continues it past the last core vertex.
        let mut chain = vec![self.core.root().clone()];
        loop {
            let last = chain.last().unwrap();
            let kids = self.core.children(last).unwrap();
            match kids.iter().next() {
                Some(next) => chain.push(next.clone()),
                None => break,
            }
        }
        if chain.len() != self.core.len() {
            return PathShape::NotAPath;
        }
        let end = chain.last().unwrap();
        let mut rays_at_end = self.rays.iter().filter(|r| r.attach == *end);
        let ray = match (rays_at_end.next(), rays_at_end.next()) {
            (Some(r), None) => r.name.clone(),
            _ => return PathShape::NotAPath,
        };
        if self.rays.len() != 1 {
            return PathShape::NotAPath;
        }
        let path = CanonicalPath::new(self.has_stem, chain, ray);
        if self.has_stem {
            PathShape::ZPath(path)
        } else {
            PathShape::ZPlusPath(path)
        }
    }

    /// Expands the stem to `window.stem_depth` and each ray to
    /// `window.ray_length`. A rootless profile gains an artificial root at
    /// the deepest stem vertex kept.
    pub fn truncate(&self, window: Window) -> Truncation {
        let mut vertices: BTreeSet<VertexId> = self.core.vertices().cloned().collect();
        let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        for v in self.core.vertices() {
            if let Some(p) = self.core.parent(v).unwrap() {
                parent.insert(v.clone(), p.clone());
            }
        }
        if self.has_stem {
            for k in 1..=window.stem_depth as i64 {
                vertices.insert(VertexId::Stem(-k));
            }
            for k in 1..window.stem_depth as i64 {
                parent.insert(VertexId::Stem(-k), VertexId::Stem(-k - 1));
            }
            if window.stem_depth >= 1 {
                parent.insert(self.core.root().clone(), VertexId::Stem(-1));
            }
        }
        for ray in &self.rays {
            for i in 1..=window.ray_length as u64 {
                vertices.insert(VertexId::Ray(ray.name.clone(), i));
                let par = if i == 1 {
                    ray.attach.clone()
                } else {
                    VertexId::Ray(ray.name.clone(), i - 1)
                };
                parent.insert(VertexId::Ray(ray.name.clone(), i), par);
            }
        }
        let tree = FiniteTree::new(vertices, parent).expect("truncation is a valid tree");

        let mut boundary = BTreeSet::new();
        for v in tree.vertices() {
            let all_in = self
                .children(v)
                .unwrap()
                .iter()
                .all(|c| tree.contains(c))
                && self
                    .parent(v)
                    .unwrap()
                    .is_none_or(|p| tree.contains(&p));
            if !all_in {
                boundary.insert(v.clone());
            }
        }
        Truncation { tree, boundary }
    }
}
