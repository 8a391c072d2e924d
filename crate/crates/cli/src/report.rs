//! The classification report: everything the pipeline measured for one
//! shift, with deterministic rendering (fixed field order, floats at 12
//! significant digits).

use serde::Serialize;
use std::fmt::Write as _;

/// Formats a float with 12 significant digits; the renderer's only float
/// path, so identical inputs give byte-identical reports.
pub fn fmt_f(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x }; // collapse -0
    format!("{x:.11e}")
}

#[derive(Debug, Clone, Serialize)]
pub struct NormalitySummary {
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtensionSummary {
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// Positive verdicts certify the necessary weight pattern and moment
    /// conditions; subnormality itself is assumed, not certified.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MomentsSummary {
    pub vertex: String,
    pub count: usize,
    pub first_values: Vec<f64>,
    pub hankel_order: usize,
    pub stieltjes_passes: bool,
    pub min_eig_hankel: f64,
    pub min_eig_hankel_shifted: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta1_at_position_1: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleSummary {
    pub operator_norm_truncated: f64,
    pub norm_gap: f64,
    pub max_interior_defect: f64,
    pub normality_consistent: bool,
    pub norm_consistent: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub spec: String,
    pub tree: String,
    pub path_shape: String,
    pub window: [usize; 2],
    pub tolerance: f64,
    pub norm_sq_bound: f64,
    pub injective: bool,
    pub formal_normality: NormalitySummary,
    pub extension: ExtensionSummary,
    pub moments: MomentsSummary,
    pub oracles: OracleSummary,
}

impl Report {
    /// Deterministic text rendering; one line per field.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "== {} ==", self.spec);
        let _ = writeln!(out, "tree: {}", self.tree);
        let _ = writeln!(out, "path shape: {}", self.path_shape);
        let _ = writeln!(
            out,
            "window: ({}, {})  tolerance: {}",
            self.window[0],
            self.window[1],
            fmt_f(self.tolerance)
        );
        let _ = writeln!(out, "norm_sq_bound: {}", fmt_f(self.norm_sq_bound));
        let _ = writeln!(out, "injective: {}", self.injective);

        let fn_ = &self.formal_normality;
        let mut line = format!("formal normality: {}", fn_.status);
        if let Some(alpha) = fn_.alpha {
            let _ = write!(line, "  alpha: {}", fmt_f(alpha));
        }
        if let Some(path) = &fn_.path {
            let _ = write!(line, "  path: {path}");
        }
        if let Some(reason) = &fn_.reason {
            let _ = write!(line, "  reason: {reason}");
        }
        let _ = writeln!(out, "{line}");

        let ext = &self.extension;
        let mut line = format!("extension verdict: {}", ext.status);
        if let Some(alpha) = ext.alpha {
            let _ = write!(line, "  alpha: {}", fmt_f(alpha));
        }
        if let Some(theta) = ext.theta {
            let _ = write!(line, "  theta: {}", fmt_f(theta));
        }
        if let Some(reason) = &ext.reason {
            let _ = write!(line, "  reason: {reason}");
        }
        let _ = writeln!(out, "{line}");
        if let Some(note) = &ext.note {
            let _ = writeln!(out, "  note: {note}");
        }

        let m = &self.moments;
        let values: Vec<String> = m.first_values.iter().map(|v| fmt_f(*v)).collect();
        let _ = writeln!(
            out,
            "moments at {} (first {} of {}): {}",
            m.vertex,
            m.first_values.len(),
            m.count,
            values.join(", ")
        );
        let _ = writeln!(
            out,
            "stieltjes (hankel order {}): {}  min eig H: {}  min eig H': {}",
            m.hankel_order,
            if m.stieltjes_passes { "pass" } else { "fail" },
            fmt_f(m.min_eig_hankel),
            fmt_f(m.min_eig_hankel_shifted)
        );
        if let Some(d1) = m.delta1_at_position_1 {
            let _ = writeln!(out, "delta1 moments at path position 1: {d1}");
        }

        let o = &self.oracles;
        let _ = writeln!(
            out,
            "operator norm (truncated): {}  norm gap: {}",
            fmt_f(o.operator_norm_truncated),
            fmt_f(o.norm_gap)
        );
        let _ = writeln!(
            out,
            "max interior commutator defect: {}",
            fmt_f(o.max_interior_defect)
        );
        let _ = writeln!(
            out,
            "oracle agreement: normality {}  norm {}",
            if o.normality_consistent { "ok" } else { "DISAGREES" },
            if o.norm_consistent { "ok" } else { "DISAGREES" }
        );
        out
    }
}
