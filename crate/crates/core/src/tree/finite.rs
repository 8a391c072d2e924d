//! Explicit finite rooted directed trees.

use std::collections::{BTreeMap, BTreeSet};

use super::{TreeError, VertexId};

/// A finite directed tree with a root. Every non-root vertex has exactly one
/// parent; the structure is validated at construction and immutable after.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTree {
    root: VertexId,
    parent: BTreeMap<VertexId, VertexId>,
    children: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

impl FiniteTree {
    /// Builds a tree from its vertex set and parent map. The parent map must
    /// be defined exactly on the non-root vertices; the unique vertex without
    /// a parent becomes the root. Rejects cycles, forests and dangling
    /// parents.
    pub fn new(
        vertices: BTreeSet<VertexId>,
        parent: BTreeMap<VertexId, VertexId>,
    ) -> Result<Self, TreeError> {
        if vertices.is_empty() {
            return Err(TreeError::Empty);
        }
        for (child, par) in &parent {
            if !vertices.contains(child) {
                return Err(TreeError::UnknownVertex(child.clone()));
            }
            if !vertices.contains(par) {
                return Err(TreeError::ParentOutsideTree {
                    child: child.clone(),
                    parent: par.clone(),
                });
            }
        }
        let mut roots = vertices.iter().filter(|v| !parent.contains_key(*v));
        let root = match (roots.next(), roots.next()) {
            (None, _) => return Err(TreeError::NoRoot),
            (Some(r), None) => r.clone(),
            (Some(a), Some(b)) => return Err(TreeError::MultipleRoots(a.clone(), b.clone())),
        };

        let mut children: BTreeMap<VertexId, BTreeSet<VertexId>> =
            vertices.iter().map(|v| (v.clone(), BTreeSet::new())).collect();
        for (child, par) in &parent {
            children.get_mut(par).unwrap().insert(child.clone());
        }

        // Every vertex must reach the root in at most |V| - 1 steps.
        let n = vertices.len();
        for v in &vertices {
            let mut cur = v;
            let mut steps = 0usize;
            while let Some(p) = parent.get(cur) {
                cur = p;
                steps += 1;
                if steps >= n {
                    return Err(TreeError::Disconnected(v.clone()));
                }
            }
            if *cur != root {
                return Err(TreeError::Disconnected(v.clone()));
            }
        }

        Ok(FiniteTree {
            root,
            parent,
            children,
        })
    }

    /// Builds a tree from (parent, child) edges; vertices are inferred.
    pub fn from_edges(edges: &[(VertexId, VertexId)]) -> Result<Self, TreeError> {
        let mut vertices = BTreeSet::new();
        let mut parent = BTreeMap::new();
        for (p, c) in edges {
            vertices.insert(p.clone());
            vertices.insert(c.clone());
            parent.insert(c.clone(), p.clone());
        }
        Self::new(vertices, parent)
    }

    /// A single vertex with no edges.
    pub fn singleton(root: VertexId) -> Self {
        let mut children = BTreeMap::new();
        children.insert(root.clone(), BTreeSet::new());
        FiniteTree {
            root,
            parent: BTreeMap::new(),
            children,
        }
    }

    /// A path `ids[0] -> ids[1] -> ...`.
    pub fn path(ids: &[VertexId]) -> Result<Self, TreeError> {
        if ids.is_empty() {
            return Err(TreeError::Empty);
        }
        if ids.len() == 1 {
            return Ok(Self::singleton(ids[0].clone()));
        }
        let edges: Vec<_> = ids.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
        Self::from_edges(&edges)
    }

    pub fn root(&self) -> &VertexId {
        &self.root
    }

    pub fn len(&self) -> usize {
        self.children.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty trees
    }

    pub fn contains(&self, u: &VertexId) -> bool {
        self.children.contains_key(u)
    }

    pub fn vertices(&self) -> impl Iterator<Item = &VertexId> {
        self.children.keys()
    }

    fn check(&self, u: &VertexId) -> Result<(), TreeError> {
        if self.contains(u) {
            Ok(())
        } else {
            Err(TreeError::UnknownVertex(u.clone()))
        }
    }

    pub fn children(&self, u: &VertexId) -> Result<&BTreeSet<VertexId>, TreeError> {
        self.children
            .get(u)
            .ok_or_else(|| TreeError::UnknownVertex(u.clone()))
    }

    /// The unique parent; `None` exactly at the root.
    pub fn parent(&self, u: &VertexId) -> Result<Option<&VertexId>, TreeError> {
        self.check(u)?;
        Ok(self.parent.get(u))
    }

    /// n-fold parent; `None` when the chain exits through the root.
    pub fn iter_parent(&self, u: &VertexId, n: usize) -> Result<Option<VertexId>, TreeError> {
        self.check(u)?;
        let mut cur = u.clone();
        for _ in 0..n {
            match self.parent.get(&cur) {
                Some(p) => cur = p.clone(),
                None => return Ok(None),
            }
        }
        Ok(Some(cur))
    }

    /// n-th iterated children set of `u`.
    pub fn chi_n(&self, u: &VertexId, n: usize) -> Result<BTreeSet<VertexId>, TreeError> {
        self.check(u)?;
        let mut layer: BTreeSet<VertexId> = BTreeSet::from([u.clone()]);
        for _ in 0..n {
            layer = layer
                .iter()
                .flat_map(|v| self.children[v].iter().cloned())
                .collect();
            if layer.is_empty() {
                break;
            }
        }
        Ok(layer)
    }

    /// All descendants of `u`, including `u` itself.
    pub fn descendants(&self, u: &VertexId) -> Result<BTreeSet<VertexId>, TreeError> {
        self.check(u)?;
        let mut out = BTreeSet::new();
        let mut stack = vec![u.clone()];
        while let Some(v) = stack.pop() {
            if out.insert(v.clone()) {
                stack.extend(self.children[&v].iter().cloned());
            }
        }
        Ok(out)
    }

    /// True when every vertex has a child. Finite trees always have leaves,
    /// so this is only ever true vacuously — kept for interface symmetry.
    pub fn is_leafless(&self) -> bool {
        self.children.values().all(|c| !c.is_empty())
    }

    pub fn branching_vertices(&self) -> BTreeSet<VertexId> {
        self.children
            .iter()
            .filter(|(_, c)| c.len() >= 2)
            .map(|(v, _)| v.clone())
            .collect()
    }

    /// Deepest vertex having both inputs among its descendants. Always
    /// exists in a rooted tree.
    pub fn common_ancestor(&self, u1: &VertexId, u2: &VertexId) -> Result<VertexId, TreeError> {
        self.check(u1)?;
        self.check(u2)?;
        let mut anc = BTreeSet::new();
        let mut cur = u1.clone();
        loop {
            anc.insert(cur.clone());
            match self.parent.get(&cur) {
                Some(p) => cur = p.clone(),
                None => break,
            }
        }
        let mut cur = u2.clone();
        loop {
            if anc.contains(&cur) {
                return Ok(cur);
            }
            match self.parent.get(&cur) {
                Some(p) => cur = p.clone(),
                None => break,
            }
        }
        Ok(self.root.clone())
    }

    /// Depth of `u` below the root.
    pub fn depth(&self, u: &VertexId) -> Result<usize, TreeError> {
        self.check(u)?;
        let mut cur = u;
        let mut d = 0;
        while let Some(p) = self.parent.get(cur) {
            cur = p;
            d += 1;
        }
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(name: &str) -> VertexId {
        VertexId::core(name)
    }

    #[test]
    fn construction_validates_structure() {
        // 0 -> 1 -> 2 plus 0 -> 3
        let t = FiniteTree::from_edges(&[
            (c("0"), c("1")),
            (c("1"), c("2")),
            (c("0"), c("3")),
        ])
        .unwrap();
        assert_eq!(t.root(), &c("0"));
        assert_eq!(t.len(), 4);
        assert_eq!(t.children(&c("0")).unwrap().len(), 2);
        assert_eq!(t.parent(&c("0")).unwrap(), None);
        assert_eq!(t.parent(&c("2")).unwrap(), Some(&c("1")));

        // cycle
        assert_eq!(
            FiniteTree::from_edges(&[(c("a"), c("b")), (c("b"), c("a"))]),
            Err(TreeError::NoRoot)
        );
        // two components
        assert!(matches!(
            FiniteTree::from_edges(&[(c("a"), c("b")), (c("x"), c("y"))]),
            Err(TreeError::MultipleRoots(..))
        ));
        // empty
        assert_eq!(
            FiniteTree::new(BTreeSet::new(), BTreeMap::new()),
            Err(TreeError::Empty)
        );
    }

    #[test]
    fn iter_parent_walks_to_root_and_stops() {
        let t = FiniteTree::path(&[c("0"), c("1"), c("2"), c("3")]).unwrap();
        assert_eq!(t.iter_parent(&c("3"), 0).unwrap(), Some(c("3")));
        assert_eq!(t.iter_parent(&c("3"), 2).unwrap(), Some(c("1")));
        assert_eq!(t.iter_parent(&c("3"), 3).unwrap(), Some(c("0")));
        assert_eq!(t.iter_parent(&c("3"), 4).unwrap(), None);
        assert!(t.iter_parent(&c("9"), 1).is_err());
    }

    #[test]
    fn chi_n_matches_iterated_children_on_binary_tree() {
        // full binary tree of depth 2
        let t = FiniteTree::from_edges(&[
            (c("r"), c("a")),
            (c("r"), c("b")),
            (c("a"), c("aa")),
            (c("a"), c("ab")),
            (c("b"), c("ba")),
            (c("b"), c("bb")),
        ])
        .unwrap();
        let depth2 = t.chi_n(&c("r"), 2).unwrap();
        assert_eq!(
            depth2,
            BTreeSet::from([c("aa"), c("ab"), c("ba"), c("bb")])
        );
        // oracle: preimages of the 2-fold parent map
        let brute: BTreeSet<_> = t
            .vertices()
            .filter(|w| t.iter_parent(w, 2).unwrap().as_ref() == Some(&c("r")))
            .cloned()
            .collect();
        assert_eq!(depth2, brute);
        assert_eq!(t.chi_n(&c("r"), 0).unwrap(), BTreeSet::from([c("r")]));
        assert_eq!(t.chi_n(&c("aa"), 1).unwrap(), BTreeSet::new());
    }

    #[test]
    fn descendants_and_common_ancestor() {
        let t = FiniteTree::from_edges(&[
            (c("r"), c("a")),
            (c("r"), c("b")),
            (c("a"), c("aa")),
        ])
        .unwrap();
        assert_eq!(
            t.descendants(&c("a")).unwrap(),
            BTreeSet::from([c("a"), c("aa")])
        );
        assert_eq!(t.descendants(&c("b")).unwrap(), BTreeSet::from([c("b")]));
        assert_eq!(t.common_ancestor(&c("aa"), &c("b")).unwrap(), c("r"));
        assert_eq!(t.common_ancestor(&c("aa"), &c("a")).unwrap(), c("a"));
    }

    #[test]
    fn leaflessness_and_branching() {
        let path = FiniteTree::path(&[c("0"), c("1"), c("2")]).unwrap();
        assert!(!path.is_leafless());
        assert!(path.branching_vertices().is_empty());

        let star = FiniteTree::from_edges(&[
            (c("c"), c("l1")),
            (c("c"), c("l2")),
            (c("c"), c("l3")),
        ])
        .unwrap();
        assert_eq!(star.branching_vertices(), BTreeSet::from([c("c")]));
    }
}
