//! Per-staircase analysis aggregation and rendering.
//!
//! The JSON form is versioned: every document carries `"schema": 1`. An
//! analysis document has the fields
//! `schema, kind="analysis", r, n, widths, minimal_generators, dim, rn,
//! smooth, witnesses (tail/head pairs), minimal_arrows {total, zero_classes},
//! structure {is_box, is_compound_box, decomposition}, bunch {size, valid},
//! oracle {tangent, cotangent, agree}`. A decomposition, when present, is the
//! base box followed by the `(var, height, widths)` steps that replay it.

use serde_json::{json, Value};

use staircase_core::arrow::Arrow;
use staircase_core::bunch::{self, StandardBunch};
use staircase_core::classify::{self, Decomposition};
use staircase_core::cotangent;
use staircase_core::oracle::{self, CrossCheck};
use staircase_core::staircase::BasisSet;

/// Everything `analyze` reports about one staircase.
#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub r: usize,
    pub n: usize,
    pub widths: Vec<u32>,
    pub minimal_generators: Vec<String>,
    pub dim: usize,
    pub rn: usize,
    pub smooth: bool,
    pub witnesses: Vec<Arrow>,
    pub minimal_arrow_count: usize,
    pub zero_minimal_arrows: usize,
    pub is_box: bool,
    pub decomposition: Option<Decomposition>,
    pub bunch_size: usize,
    pub bunch_valid: bool,
    pub oracle: CrossCheck,
}

impl AnalysisReport {
    pub fn is_compound_box(&self) -> bool {
        self.decomposition.is_some()
    }
}

pub fn analyze(beta: &BasisSet) -> AnalysisReport {
    let cotangent_report = cotangent::class_report(beta);
    let structure = classify::classify(beta);
    let standard_bunch = bunch::build_bunch(beta);
    let bunch_valid = bunch::verify_bunch(beta, &standard_bunch).is_empty();
    AnalysisReport {
        r: beta.arity(),
        n: beta.len(),
        widths: beta.widths().to_vec(),
        minimal_generators: beta
            .minimal_generators()
            .iter()
            .map(|g| g.to_string())
            .collect(),
        dim: cotangent_report.dim,
        rn: cotangent_report.rn,
        smooth: cotangent_report.smooth,
        witnesses: structure.rigid_nonstandard_witnesses,
        minimal_arrow_count: beta.minimal_generators().len() * beta.len(),
        zero_minimal_arrows: cotangent_report.zero_count,
        is_box: structure.is_box,
        decomposition: structure.decomposition,
        bunch_size: standard_bunch.len(),
        bunch_valid,
        oracle: oracle::cross_check(beta),
    }
}

/// One line per box-addition step, base box first.
pub fn render_decomposition(decomposition: &Decomposition) -> String {
    let mut parts = vec![format!("box {}", decomposition.base)];
    for step in &decomposition.steps {
        parts.push(format!(
            "add (x{}, height {}, box {})",
            step.var + 1,
            step.height,
            step.widths
                .iter()
                .map(|w| w.to_string())
                .collect::<Vec<_>>()
                .join(",")
        ));
    }
    parts.join("; ")
}

/// The bunch grouped by variable, then offset, arrows in `tail -> head` form.
pub fn render_bunch(bunch: &StandardBunch) -> String {
    let mut out = String::new();
    for var in 0..bunch.variables() {
        out.push_str(&format!("x{}-sub-bunch:\n", var + 1));
        let mut by_offset: Vec<(Vec<u32>, &Arrow)> = bunch
            .sub_bunch(var)
            .iter()
            .map(|a| (a.offset(var).expect("bunch arrows are standard"), a))
            .collect();
        by_offset.sort();
        let mut last_offset: Option<&[u32]> = None;
        for (offset, arrow) in &by_offset {
            if last_offset != Some(offset.as_slice()) {
                out.push_str(&format!(
                    "  offset ({}):\n",
                    offset
                        .iter()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                ));
                last_offset = Some(offset.as_slice());
            }
            out.push_str(&format!("    {arrow}\n"));
        }
    }
    out
}

pub fn render_text(report: &AnalysisReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("staircase: r={} n={}\n", report.r, report.n));
    out.push_str(&format!(
        "widths: {}\n",
        report
            .widths
            .iter()
            .map(|w| w.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    ));
    out.push_str(&format!(
        "minimal generators ({}): {}\n",
        report.minimal_generators.len(),
        report.minimal_generators.join(" | ")
    ));
    out.push_str(&format!("cotangent dimension: {}\n", report.dim));
    out.push_str(&format!("rn: {}\n", report.rn));
    out.push_str(&format!(
        "smooth: {}\n",
        if report.smooth { "yes" } else { "no" }
    ));
    if report.witnesses.is_empty() {
        out.push_str("rigid non-standard witnesses: none\n");
    } else {
        out.push_str(&format!(
            "rigid non-standard witnesses ({}): {}\n",
            report.witnesses.len(),
            report
                .witnesses
                .iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join(" | ")
        ));
    }
    out.push_str(&format!(
        "minimal arrows: {} ({} in null classes, {} classes)\n",
        report.minimal_arrow_count, report.zero_minimal_arrows, report.dim
    ));
    out.push_str(&format!(
        "structure: box={} compound box={}{}\n",
        yes_no(report.is_box),
        yes_no(report.is_compound_box()),
        if report.r >= 4 {
            " (structural fact only; no smoothness meaning beyond 3 variables)"
        } else {
            ""
        }
    ));
    if let Some(decomposition) = &report.decomposition {
        out.push_str(&format!(
            "decomposition: {}\n",
            render_decomposition(decomposition)
        ));
    }
    out.push_str(&format!(
        "standard bunch: {} arrows, {}\n",
        report.bunch_size,
        if report.bunch_valid {
            "valid"
        } else {
            "INVALID"
        }
    ));
    out.push_str(&format!(
        "oracle: tangent={} cotangent={} {}\n",
        report.oracle.tangent,
        report.oracle.cotangent,
        if report.oracle.consistent() {
            "agree"
        } else {
            "DISAGREE"
        }
    ));
    out
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn render_json(report: &AnalysisReport) -> Value {
    json!({
        "schema": 1,
        "kind": "analysis",
        "r": report.r,
        "n": report.n,
        "widths": report.widths,
        "minimal_generators": report.minimal_generators,
        "dim": report.dim,
        "rn": report.rn,
        "smooth": report.smooth,
        "witnesses": report
            .witnesses
            .iter()
            .map(|a| json!({"tail": a.tail().to_string(), "head": a.head().to_string()}))
            .collect::<Vec<_>>(),
        "minimal_arrows": {
            "total": report.minimal_arrow_count,
            "zero_classes": report.zero_minimal_arrows,
        },
        "structure": {
            "is_box": report.is_box,
            "is_compound_box": report.is_compound_box(),
            "decomposition": report.decomposition.as_ref().map(|d| json!({
                "base": d.base.widths(),
                "steps": d.steps.iter().map(|s| json!({
                    "var": s.var + 1,
                    "height": s.height,
                    "widths": s.widths,
                })).collect::<Vec<_>>(),
            })),
        },
        "bunch": {
            "size": report.bunch_size,
            "valid": report.bunch_valid,
        },
        "oracle": {
            "tangent": report.oracle.tangent,
            "cotangent": report.oracle.cotangent,
            "agree": report.oracle.consistent(),
        },
    })
}
