//! The pipelines behind each subcommand: classify (full report with
//! oracles), verify-extension, moments, and dot.

use std::path::Path;

use treeshift::classify::{
    build_extension_model, classify_extension, commutator_defect, formal_normality,
    verify_extension, ClassifyError, ExtensionVerdict, FormalNormalityVerdict,
    NotModelableReason, NotNormalReason,
};
use treeshift::moments::{delta1_check, stieltjes_check, MomentSequence, MomentsError};
use treeshift::shift::ShiftTree;
use treeshift::tree::{CanonicalPath, PathShape};
use treeshift::{Shift, VertexId, Window};

use crate::error::CliError;
use crate::report::{
    fmt_f, ExtensionSummary, MomentsSummary, NormalitySummary, OracleSummary, Report,
};
use crate::spec::parse_spec;

pub const DEFAULT_WINDOW: Window = Window {
    stem_depth: 32,
    ray_length: 32,
};
pub const DEFAULT_TOL: f64 = treeshift::DEFAULT_REL_TOL;
pub const MOMENT_COUNT: usize = 20;

#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    pub window: Window,
    pub tol: f64,
    pub strict: bool,
}

fn window_error(window: Window) -> CliError {
    CliError::Window(format!(
        "window {window} leaves no interior vertices; enlarge it with --window H,R"
    ))
}

fn map_classify_err(e: ClassifyError) -> CliError {
    match e {
        ClassifyError::WindowTooSmall(w) => window_error(w),
        other => CliError::Precondition(other.to_string()),
    }
}

fn render_path(path: &CanonicalPath) -> String {
    let chain: Vec<String> = path.core_chain().iter().map(|v| v.to_string()).collect();
    let head = if path.is_bilateral() {
        "... -> s(-1) -> "
    } else {
        ""
    };
    format!(
        "{head}{} -> {}(1) -> ...",
        chain.join(" -> "),
        path.ray_name()
    )
}

fn tree_summary(shift: &Shift) -> (String, String) {
    match shift.tree() {
        ShiftTree::Finite(t) => (
            format!("finite, {} vertices, root {}", t.len(), t.root()),
            "finite (has leaves)".to_string(),
        ),
        ShiftTree::Profile(p) => {
            let summary = format!(
                "profile, core {} vertices, stem: {}, rays: {}",
                p.core().len(),
                if p.has_stem() { "yes" } else { "no" },
                p.rays().len()
            );
            let shape = match p.path_shape() {
                PathShape::ZPath(_) => "line (bilateral)".to_string(),
                PathShape::ZPlusPath(_) => "half-line (unilateral)".to_string(),
                PathShape::NotAPath => "not a path".to_string(),
            };
            (summary, shape)
        }
    }
}

fn normality_summary(verdict: &FormalNormalityVerdict<f64>) -> NormalitySummary {
    match verdict {
        FormalNormalityVerdict::FormallyNormalNormal(w) => NormalitySummary {
            status: "formally normal (bounded normal)".to_string(),
            alpha: Some(w.modulus),
            path: Some(render_path(&w.path)),
            reason: None,
        },
        FormalNormalityVerdict::Not(reason) => NormalitySummary {
            status: "not formally normal".to_string(),
            alpha: None,
            path: None,
            reason: Some(
                match reason {
                    NotNormalReason::NoBiInfinitePath => "no bi-infinite path",
                    NotNormalReason::NonconstantModulus => "nonconstant modulus on the path",
                    NotNormalReason::NonzeroOffPath => "nonzero weight off every path",
                }
                .to_string(),
            ),
        },
        FormalNormalityVerdict::ZeroOperator => NormalitySummary {
            status: "zero operator".to_string(),
            alpha: None,
            path: None,
            reason: None,
        },
    }
}

const NECESSARY_ONLY_NOTE: &str =
    "necessary weight pattern and moment conditions verified; subnormality is a hypothesis, \
     not certified";

fn extension_summary(verdict: &ExtensionVerdict<f64>) -> ExtensionSummary {
    match verdict {
        ExtensionVerdict::BilateralMultiple { alpha } => ExtensionSummary {
            status: "BilateralMultiple".to_string(),
            alpha: Some(*alpha),
            theta: None,
            reason: None,
            note: Some(NECESSARY_ONLY_NOTE.to_string()),
        },
        ExtensionVerdict::PerturbedUnilateral { alpha, theta } => ExtensionSummary {
            status: "PerturbedUnilateral".to_string(),
            alpha: Some(*alpha),
            theta: Some(*theta),
            reason: None,
            note: Some(NECESSARY_ONLY_NOTE.to_string()),
        },
        ExtensionVerdict::NotModelable(reason) => ExtensionSummary {
            status: "NotModelable".to_string(),
            alpha: None,
            theta: None,
            note: None,
            reason: Some(match reason {
                NotModelableReason::ZeroWeight(v) => format!("zero weight at {v}"),
                NotModelableReason::NonconstantBilateral => {
                    "bilateral shape with nonconstant modulus".to_string()
                }
                NotModelableReason::WeightPattern => {
                    "half-line weights do not match theta, a, a, ...".to_string()
                }
                NotModelableReason::BranchingOrLeaf => {
                    "tree has a branching vertex or a leaf".to_string()
                }
            }),
        },
    }
}

/// The vertex whose moment sequence the report shows: the root when the
/// shift is rooted, the core root otherwise.
fn moment_vertex(shift: &Shift) -> VertexId {
    match shift.tree() {
        ShiftTree::Finite(t) => t.root().clone(),
        ShiftTree::Profile(p) => p.core().root().clone(),
    }
}

/// Runs the full pipeline on one spec file. Returns the report and the list
/// of oracle disagreements (empty when symbolic and numeric verdicts agree).
pub fn classify_file(
    path: &Path,
    opts: &ClassifyOptions,
) -> Result<(Report, Vec<String>), CliError> {
    let shift = parse_spec(path)?;
    let (tree, path_shape) = tree_summary(&shift);

    let norm_sq_bound = shift.norm_sq_bound();
    let injective = shift.is_injective();

    let verdict = formal_normality(&shift, opts.tol);
    let defect_report =
        commutator_defect(&shift, opts.window).map_err(map_classify_err)?;
    let extension = classify_extension(&shift, true, opts.tol);

    let trunc = shift.tree().truncate(opts.window);
    let dense = shift
        .to_dense(&trunc.tree)
        .map_err(|e| CliError::Precondition(e.to_string()))?;
    let opnorm = dense.operator_norm();
    let norm_gap = (opnorm * opnorm - norm_sq_bound).abs();

    let mvertex = moment_vertex(&shift);
    let moments = MomentSequence::from_shift(&shift, &mvertex, MOMENT_COUNT)
        .map_err(|e| CliError::Precondition(e.to_string()))?;
    let stieltjes = stieltjes_check(&moments, opts.tol)
        .map_err(|e| CliError::Precondition(e.to_string()))?;
    let delta1 = match (&extension, shift.tree().as_profile()) {
        (ExtensionVerdict::PerturbedUnilateral { .. }, Some(p)) => match p.path_shape() {
            PathShape::ZPlusPath(cp) => {
                let v1 = cp.vertex(1).expect("half-line has position 1");
                let m = MomentSequence::from_shift(&shift, &v1, MOMENT_COUNT)
                    .map_err(|e| CliError::Precondition(e.to_string()))?;
                Some(delta1_check(&m, opts.tol))
            }
            _ => None,
        },
        _ => None,
    };

    // symbolic/numeric agreement at the requested tolerance
    let symbolically_normal = !matches!(verdict, FormalNormalityVerdict::Not(_));
    let numerically_normal = defect_report.max_interior_defect <= opts.tol;
    let normality_consistent = symbolically_normal == numerically_normal;
    let norm_consistent = norm_gap <= 1e-8 * (1.0 + norm_sq_bound);

    let mut disagreements = Vec::new();
    if !normality_consistent {
        disagreements.push(format!(
            "{}: structural verdict and interior commutator defect {} disagree at tolerance {}",
            path.display(),
            fmt_f(defect_report.max_interior_defect),
            fmt_f(opts.tol)
        ));
    }
    if !norm_consistent {
        disagreements.push(format!(
            "{}: norm_sq_bound {} vs truncated operator norm squared {} disagree",
            path.display(),
            fmt_f(norm_sq_bound),
            fmt_f(opnorm * opnorm)
        ));
    }

    let report = Report {
        spec: path.display().to_string(),
        tree,
        path_shape,
        window: [opts.window.stem_depth, opts.window.ray_length],
        tolerance: opts.tol,
        norm_sq_bound,
        injective,
        formal_normality: normality_summary(&verdict),
        extension: extension_summary(&extension),
        moments: MomentsSummary {
            vertex: mvertex.to_string(),
            count: MOMENT_COUNT,
            first_values: moments.values.iter().copied().take(8).collect(),
            hankel_order: stieltjes.order,
            stieltjes_passes: stieltjes.passes,
            min_eig_hankel: stieltjes.min_eig_h,
            min_eig_hankel_shifted: stieltjes.min_eig_h_shifted,
            delta1_at_position_1: delta1,
        },
        oracles: OracleSummary {
            operator_norm_truncated: opnorm,
            norm_gap,
            max_interior_defect: defect_report.max_interior_defect,
            normality_consistent,
            norm_consistent,
        },
    };
    Ok((report, disagreements))
}

/// verify-extension: build the model for a perturbed-unilateral shift and
/// check the embedding; for a bilateral multiple the shift is already its
/// own model.
pub fn verify_file(path: &Path, count: usize, tol: f64) -> Result<String, CliError> {
    let shift = parse_spec(path)?;
    let mut out = String::new();
    match classify_extension(&shift, true, tol) {
        ExtensionVerdict::PerturbedUnilateral { alpha, theta } => {
            let model = build_extension_model(alpha, theta).map_err(map_classify_err)?;
            let report =
                verify_extension(&shift, &model, count, tol).map_err(map_classify_err)?;
            out.push_str(&format!(
                "model: constant weight {} on the line with a zero-weight leaf at 0\n",
                fmt_f(alpha)
            ));
            out.push_str(&format!(
                "embedding parameters: alpha {}  theta {}\n",
                fmt_f(alpha),
                fmt_f(theta)
            ));
            out.push_str(&format!(
                "orthonormality max deviation: {}\n",
                fmt_f(report.gram_max_dev)
            ));
            out.push_str(&format!(
                "shift action max residual: {}\n",
                fmt_f(report.action_max_residual)
            ));
            out.push_str(&format!(
                "restriction matrix max deviation: {}\n",
                fmt_f(report.restriction_max_dev)
            ));
            let first: Vec<String> = report
                .restriction_weights
                .iter()
                .take(6)
                .map(|w| fmt_f(*w))
                .collect();
            out.push_str(&format!(
                "restriction weights (first {}): {}\n",
                first.len(),
                first.join(", ")
            ));
            out.push_str(&format!(
                "model formally normal: {}\n",
                report.model_is_normal
            ));
            out.push_str(&format!(
                "isometry defect alpha(1 - theta): {}  consistent: {}\n",
                fmt_f(report.isometry_defect),
                report.isometry_consistent
            ));
            out.push_str(&format!(
                "verified: {} (window {}, tolerance {})\n",
                if report.passed { "PASS" } else { "FAIL" },
                count,
                fmt_f(tol)
            ));
        }
        ExtensionVerdict::BilateralMultiple { alpha } => {
            let verdict = formal_normality(&shift, tol);
            let normal = verdict.witness().is_some();
            out.push_str(&format!(
                "shift is a bilateral multiple (alpha {}): it is normal and is its own \
                 extension model\n",
                fmt_f(alpha)
            ));
            out.push_str(&format!("formally normal: {normal}\n"));
        }
        ExtensionVerdict::NotModelable(reason) => {
            let summary = extension_summary(&ExtensionVerdict::<f64>::NotModelable(reason));
            return Err(CliError::Precondition(format!(
                "{}: no weighted-shift model of a normal extension exists ({})",
                path.display(),
                summary.reason.unwrap_or_default()
            )));
        }
    }
    Ok(out)
}

/// moments: print the sequence at a vertex with the Hankel verdict.
pub fn moments_file(
    path: &Path,
    vertex: &str,
    count: usize,
    tol: f64,
) -> Result<String, CliError> {
    let shift = parse_spec(path)?;
    let v = VertexId::parse(vertex)
        .map_err(|e| CliError::Precondition(e.to_string()))?;
    let moments = MomentSequence::from_shift(&shift, &v, count).map_err(|e| match e {
        MomentsError::Shift(inner) => CliError::Precondition(inner.to_string()),
        other => CliError::Precondition(other.to_string()),
    })?;
    let stieltjes =
        stieltjes_check(&moments, tol).map_err(|e| CliError::Precondition(e.to_string()))?;
    let mut out = String::new();
    out.push_str(&format!("moments of {} at {}:\n", path.display(), v));
    for (n, value) in moments.values.iter().enumerate() {
        out.push_str(&format!("  s_{n} = {}\n", fmt_f(*value)));
    }
    out.push_str(&format!(
        "stieltjes (hankel order {}): {}  min eig H: {}  min eig H': {}\n",
        stieltjes.order,
        if stieltjes.passes { "pass" } else { "fail" },
        fmt_f(stieltjes.min_eig_h),
        fmt_f(stieltjes.min_eig_h_shifted)
    ));
    out.push_str(&format!(
        "all moments equal 1 (point mass at 1): {}\n",
        delta1_check(&moments, tol)
    ));
    Ok(out)
}
