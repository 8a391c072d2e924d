//! The on-disk shift description: a JSON document naming the tree (finite,
//! or profile with stem and rays) and its weights. Weights are written
//! either as a bare nonnegative modulus or as an `[re, im]` pair.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use treeshift::shift::{ShiftTree, TailWeights, WeightFamily};
use treeshift::tree::RayAttachment;
use treeshift::{FiniteTree, Shift, TreeProfile, VertexId, Weight};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpecKind {
    Finite,
    Profile,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightSpec {
    Modulus(f64),
    Complex([f64; 2]),
}

impl WeightSpec {
    fn to_weight(self, context: &str) -> Result<Weight, String> {
        let w = match self {
            WeightSpec::Modulus(m) => {
                let ok = m >= 0.0 && m.is_finite();
                if !ok {
                    return Err(format!(
                        "{context}: bare weights are moduli and must be finite and >= 0, got {m}"
                    ));
                }
                Weight::new(m, 0.0)
            }
            WeightSpec::Complex([re, im]) => {
                if !re.is_finite() || !im.is_finite() {
                    return Err(format!("{context}: weight components must be finite"));
                }
                Weight::new(re, im)
            }
        };
        Ok(w)
    }

    /// Canonical form: nonnegative reals serialize as bare moduli.
    fn from_weight(w: Weight) -> Self {
        if w.im == 0.0 && w.re >= 0.0 {
            WeightSpec::Modulus(w.re)
        } else {
            WeightSpec::Complex([w.re, w.im])
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TailSpec {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub prefix: Vec<WeightSpec>,
    pub tail_modulus: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RaySpec {
    pub name: String,
    pub attach: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub prefix: Vec<WeightSpec>,
    pub tail_modulus: f64,
}

/// The document root. `vertices`/`edges`/`root` describe the finite tree or
/// the profile core; `weights` is keyed by child vertex name and must cover
/// exactly the non-root vertices (the core root included precisely when a
/// stem is present).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShiftSpec {
    pub kind: SpecKind,
    pub root: String,
    pub vertices: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub weights: BTreeMap<String, WeightSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stem: Option<TailSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rays: Vec<RaySpec>,
}

fn core_name(name: &str) -> Result<VertexId, String> {
    match VertexId::parse(name) {
        Ok(v @ VertexId::Core(_)) => Ok(v),
        _ => Err(format!(
            "vertex name {name:?} is invalid (must be nonempty, without parentheses, \
             and not of the reserved stem/ray form)"
        )),
    }
}

fn tail_weights(prefix: &[WeightSpec], tail_modulus: f64, context: &str) -> Result<TailWeights<f64>, String> {
    let ok = tail_modulus >= 0.0 && tail_modulus.is_finite();
    if !ok {
        return Err(format!(
            "{context}: tail_modulus must be finite and >= 0, got {tail_modulus}"
        ));
    }
    let prefix = prefix
        .iter()
        .enumerate()
        .map(|(i, w)| w.to_weight(&format!("{context}.prefix[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TailWeights {
        prefix,
        tail_modulus,
    })
}

impl ShiftSpec {
    pub fn load(path: &Path) -> Result<ShiftSpec, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|source| CliError::Json {
            path: path.to_path_buf(),
            source,
        })
    }

    /// Builds the in-memory operator, validating the schema along the way.
    pub fn to_shift(&self) -> Result<Shift, String> {
        if self.vertices.is_empty() {
            return Err("vertices must be nonempty".to_string());
        }
        let mut vertex_set = std::collections::BTreeSet::new();
        for name in &self.vertices {
            if !vertex_set.insert(core_name(name)?) {
                return Err(format!("duplicate vertex {name:?}"));
            }
        }
        let mut parent = BTreeMap::new();
        for (p, c) in &self.edges {
            let p = core_name(p)?;
            let c = core_name(c)?;
            if !vertex_set.contains(&p) || !vertex_set.contains(&c) {
                return Err(format!(
                    "edge ({p}, {c}) mentions a vertex missing from `vertices`"
                ));
            }
            if parent.insert(c.clone(), p).is_some() {
                return Err(format!("vertex {c} has two parents"));
            }
        }
        let tree = FiniteTree::new(vertex_set, parent).map_err(|e| e.to_string())?;
        let declared_root = core_name(&self.root)?;
        if tree.root() != &declared_root {
            return Err(format!(
                "`root` is {} but the edges make {} the root",
                declared_root,
                tree.root()
            ));
        }

        let mut core_weights: BTreeMap<VertexId, Weight> = BTreeMap::new();
        for (name, w) in &self.weights {
            let v = core_name(name)?;
            core_weights.insert(v, w.to_weight(&format!("weights[{name:?}]")) ?);
        }

        match self.kind {
            SpecKind::Finite => {
                if self.stem.is_some() || !self.rays.is_empty() {
                    return Err("kind \"finite\" admits neither `stem` nor `rays`".to_string());
                }
                if self.weights.contains_key(&self.root) {
                    return Err(format!(
                        "weights[{:?}]: the root carries no weight",
                        self.root
                    ));
                }
                Shift::on_finite(tree, core_weights).map_err(|e| e.to_string())
            }
            SpecKind::Profile => {
                let has_stem = self.stem.is_some();
                if !has_stem && self.weights.contains_key(&self.root) {
                    return Err(format!(
                        "weights[{:?}]: the root of a stemless profile carries no weight",
                        self.root
                    ));
                }
                let rays = self
                    .rays
                    .iter()
                    .map(|r| {
                        Ok(RayAttachment {
                            name: r.name.clone(),
                            attach: core_name(&r.attach)?,
                        })
                    })
                    .collect::<Result<Vec<_>, String>>()?;
                let profile =
                    TreeProfile::new(tree, has_stem, rays).map_err(|e| e.to_string())?;
                let stem = self
                    .stem
                    .as_ref()
                    .map(|t| tail_weights(&t.prefix, t.tail_modulus, "stem"))
                    .transpose()?;
                let ray_weights = self
                    .rays
                    .iter()
                    .map(|r| {
                        Ok((
                            r.name.clone(),
                            tail_weights(
                                &r.prefix,
                                r.tail_modulus,
                                &format!("rays[{:?}]", r.name),
                            )?,
                        ))
                    })
                    .collect::<Result<BTreeMap<_, _>, String>>()?;
                let family = WeightFamily {
                    core: core_weights,
                    stem,
                    rays: ray_weights,
                };
                Shift::on_profile(profile, family).map_err(|e| e.to_string())
            }
        }
    }

    /// Canonical serialization of a shift: sorted vertices and edges,
    /// nonnegative real weights as bare moduli. Parsing and re-serializing a
    /// canonically written document is the identity.
    pub fn from_shift(shift: &Shift) -> ShiftSpec {
        let (core, kind, stem, rays) = match shift.tree() {
            ShiftTree::Finite(t) => (t, SpecKind::Finite, None, Vec::new()),
            ShiftTree::Profile(p) => {
                let weights = shift.weights();
                let stem = weights.stem.as_ref().map(|t| TailSpec {
                    prefix: t.prefix.iter().map(|w| WeightSpec::from_weight(*w)).collect(),
                    tail_modulus: t.tail_modulus,
                });
                let rays = p
                    .rays()
                    .iter()
                    .map(|r| {
                        let t = &weights.rays[&r.name];
                        RaySpec {
                            name: r.name.clone(),
                            attach: r.attach.to_string(),
                            prefix: t
                                .prefix
                                .iter()
                                .map(|w| WeightSpec::from_weight(*w))
                                .collect(),
                            tail_modulus: t.tail_modulus,
                        }
                    })
                    .collect();
                (p.core(), SpecKind::Profile, stem, rays)
            }
        };
        let vertices: Vec<String> = core.vertices().map(|v| v.to_string()).collect();
        let mut edges: Vec<(String, String)> = core
            .vertices()
            .filter_map(|v| {
                core.parent(v)
                    .unwrap()
                    .map(|p| (p.to_string(), v.to_string()))
            })
            .collect();
        edges.sort();
        let weights = shift
            .weights()
            .core
            .iter()
            .map(|(v, w)| (v.to_string(), WeightSpec::from_weight(*w)))
            .collect();
        ShiftSpec {
            kind,
            root: core.root().to_string(),
            vertices,
            edges,
            weights,
            stem,
            rays,
        }
    }
}

/// Loads and validates a spec file into a shift.
pub fn parse_spec(path: &Path) -> Result<Shift, CliError> {
    let spec = ShiftSpec::load(path)?;
    spec.to_shift().map_err(|message| CliError::Schema {
        path: path.to_path_buf(),
        message,
    })
}
