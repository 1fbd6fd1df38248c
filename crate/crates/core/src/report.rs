//! Deterministic JSON reports for the command-line interface.
//!
//! All maps are key-sorted and all rationals are rendered as reduced
//! fraction strings, so identical inputs always produce byte-identical
//! output. Indices in reports are 1-based to match the usual notation
//! (summand m_2, coordinate x_4, ...).

use crate::equigeo::{LabeledForm, Verdict};
use crate::homogeneous::{DType, HomogeneousSpace};
use crate::metrics::MetricParamSpace;
use crate::roots::{MSpaceCase, MSpaceShape, TRootTable};
use crate::scalar::{format_ratio, Q};
use num_traits::{One, Zero};
use serde_json::{json, Value};

fn ratio_vec(v: &[Q]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(format_ratio(x))).collect())
}

fn dtype_str(d: DType) -> &'static str {
    match d {
        DType::Zero => "0",
        DType::R => "R",
        DType::C => "C",
        DType::H => "H",
    }
}

/// The equivalent-pair table shared by the decompose and metrics reports.
fn pairs_json(space: &HomogeneousSpace) -> Value {
    let mut pairs = Vec::new();
    for class in &space.classes {
        for (a, &p) in class.iter().enumerate() {
            for &q in class.iter().skip(a + 1) {
                let iw = &space.intertwiners[p][q];
                pairs.push(json!({
                    "p": p + 1,
                    "q": q + 1,
                    "dtype": dtype_str(iw.dtype),
                    "dim": iw.dtype.dim(),
                }));
            }
        }
    }
    Value::Array(pairs)
}

pub fn decompose_report(space: &HomogeneousSpace) -> Value {
    let summands: Vec<Value> = space
        .summands
        .iter()
        .enumerate()
        .map(|(i, s)| {
            json!({
                "index": i + 1,
                "dim": s.dim(),
                "basis": s.basis.iter().map(|b| ratio_vec(b)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let classes: Vec<Vec<usize>> = space
        .classes
        .iter()
        .map(|c| c.iter().map(|&i| i + 1).collect())
        .collect();
    json!({
        "dim_g": space.algebra.dim,
        "dim_h": space.h.dim(),
        "dim_m": space.dim_m(),
        "summands": summands,
        "classes": classes,
        "pairs": pairs_json(space),
        "sufficiency_applies": crate::equigeo::sufficiency_applies(space),
    })
}

/// `coeff_sets` are optional parameter vectors whose positivity verdicts are
/// appended to the report.
pub fn metrics_report(
    space: &HomogeneousSpace,
    ps: &MetricParamSpace,
    coeff_sets: &[Vec<Q>],
) -> Value {
    let mu_count = ps
        .directions
        .iter()
        .filter(|d| d.label.starts_with("mu_"))
        .count();
    let positivity: Vec<Value> = coeff_sets
        .iter()
        .map(|c| {
            let valid = ps
                .assemble(c)
                .map(|op| ps.is_valid_metric(&op))
                .unwrap_or(false);
            json!({ "coefficients": ratio_vec(c), "valid": valid })
        })
        .collect();
    json!({
        "dimension": ps.dim(),
        "mu_count": mu_count,
        "pairs": pairs_json(space),
        "parameters": ps.directions.iter().map(|d| d.label.clone()).collect::<Vec<_>>(),
        "positivity": positivity,
    })
}

fn witness_json(v: &Verdict) -> Value {
    match &v.witness {
        None => Value::Null,
        Some((label, residual)) => json!({
            "direction": label,
            "residual": ratio_vec(residual),
        }),
    }
}

pub fn check_report(
    ps: &MetricParamSpace,
    ambient: &[Q],
    necessary: &Verdict,
    equi: &Verdict,
    geodesic_for: &[u64],
) -> Value {
    let coords = ps
        .adapted_coordinates(ambient)
        .expect("checked vector lies in m");
    json!({
        "vector": ratio_vec(&coords),
        "ambient": ratio_vec(ambient),
        "geodesic_for": geodesic_for,
        "necessary": necessary.holds,
        "equigeodesic": equi.holds,
        "witness": if equi.holds { witness_json(necessary) } else { witness_json(equi) },
    })
}

/// One monomial `coeff * x_{r} x_{c}` rendered for the text form.
fn term_text(coeff: &Q, r: usize, c: usize, first: bool) -> String {
    let mut s = String::new();
    let abs = if coeff < &Q::zero() {
        s.push_str(if first { "-" } else { " - " });
        -coeff.clone()
    } else {
        if !first {
            s.push_str(" + ");
        }
        coeff.clone()
    };
    if !abs.is_one() {
        s.push_str(&format_ratio(&abs));
        s.push(' ');
    }
    if r == c {
        s.push_str(&format!("x_{}^2", r + 1));
    } else {
        s.push_str(&format!("x_{} x_{}", r + 1, c + 1));
    }
    s
}

pub fn equation_text(form: &LabeledForm) -> String {
    let mut body = String::new();
    for (i, ((r, c), coeff)) in form.form.terms.iter().enumerate() {
        body.push_str(&term_text(coeff, *r, *c, i == 0));
    }
    format!("[{}] {} = 0", form.direction, body)
}

pub fn equations_report(ps: &MetricParamSpace, forms: &[LabeledForm]) -> Value {
    let variables: Vec<String> = (1..=ps.dim_m()).map(|k| format!("x_{k}")).collect();
    let equations: Vec<Value> = forms
        .iter()
        .map(|f| {
            let terms: Vec<Value> = f
                .form
                .terms
                .iter()
                .map(|((r, c), coeff)| {
                    json!([r + 1, c + 1, format_ratio(coeff)])
                })
                .collect();
            json!({
                "direction": f.direction,
                "coordinate": f.coordinate + 1,
                "terms": terms,
                "text": equation_text(f),
            })
        })
        .collect();
    json!({ "variables": variables, "equations": equations })
}

pub fn equations_text(forms: &[LabeledForm]) -> String {
    forms
        .iter()
        .map(equation_text)
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn troots_report(table: &TRootTable) -> Value {
    let classes: Vec<Value> = table
        .classes
        .iter()
        .map(|c| {
            json!({
                "xi": c.xi,
                "members": c.members,
                "dim": c.dim,
            })
        })
        .collect();
    json!({
        "complement": table.complement.iter().map(|&i| i + 1).collect::<Vec<_>>(),
        "classes": classes,
    })
}

pub fn mspace_shape_report(shape: &MSpaceShape) -> Value {
    serde_json::to_value(shape).expect("shape serializes")
}

pub fn mspace_classify_report(case: MSpaceCase, classified: bool, generic: bool) -> Value {
    json!({
        "case": match case {
            MSpaceCase::AllIrreducible => "all_irreducible",
            MSpaceCase::SplitPlanes => "split_planes",
        },
        "equigeodesic_by_classification": classified,
        "equigeodesic_direct": generic,
        "agree": classified == generic,
    })
}

/// Canonical rendering: sorted keys come from `serde_json::Map`'s BTreeMap
/// backing; a trailing newline keeps the files POSIX-friendly.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}
