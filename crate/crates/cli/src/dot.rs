//! DOT graph emission: vertices labeled by id, edges labeled by weight
//! modulus, zero-weight edges dashed, the formal-normality witness path
//! highlighted.

use treeshift::classify::formal_normality;
use treeshift::{Shift, Window};

use crate::error::CliError;

pub fn emit(shift: &Shift, window: Window, tol: f64) -> Result<String, CliError> {
    if let Some(p) = shift.tree().as_profile() {
        let infinite = p.has_stem() || !p.rays().is_empty();
        if infinite && window == Window::new(0, 0) {
            return Err(CliError::Window(
                "an empty window would draw none of the profile's stem/ray vertices; \
                 pass --window H,R"
                    .to_string(),
            ));
        }
    }
    let trunc = shift.tree().truncate(window);
    let witness = formal_normality(shift, tol);
    let path = witness.witness().map(|w| &w.path);

    let mut out = String::from("digraph shift {\n  rankdir=LR;\n");
    for v in trunc.tree.vertices() {
        out.push_str(&format!("  \"{v}\" [label=\"{v}\"];\n"));
    }
    for v in trunc.tree.vertices() {
        let parent = trunc
            .tree
            .parent(v)
            .expect("vertex is in its own truncation");
        if let Some(p) = parent {
            let weight = shift
                .weight(v)
                .map_err(|e| CliError::Precondition(e.to_string()))?;
            let modulus = weight.norm_sqr().sqrt();
            let mut attrs = vec![format!("label=\"{modulus:.6}\"")];
            if modulus == 0.0 {
                attrs.push("style=dashed".to_string());
            }
            if let Some(path) = path {
                if path.contains(v) && path.contains(p) {
                    attrs.push("color=red".to_string());
                    attrs.push("penwidth=2".to_string());
                }
            }
            out.push_str(&format!(
                "  \"{p}\" -> \"{v}\" [{}];\n",
                attrs.join(", ")
            ));
        }
    }
    out.push_str("}\n");
    Ok(out)
}
