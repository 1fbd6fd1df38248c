//! JSON specifications for algebras and homogeneous spaces.
//!
//! Rationals appear in the JSON as reduced fraction strings ("-1/4") or
//! plain integers. Structure-constant indices are 0-based; unlisted entries
//! are zero and the antisymmetric completion is applied before validation.

use crate::algebra::{LieAlgebra, Subspace, SymForm};
use crate::error::EngineError;
use crate::homogeneous::HomogeneousSpace;
use crate::linalg::Mat;
use crate::scalar::{parse_ratio, Q};
use serde_json::Value;

fn bad(msg: impl Into<String>) -> EngineError {
    EngineError::Input(msg.into())
}

fn parse_q(v: &Value, ctx: &str) -> Result<Q, EngineError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Q::from_integer(i.into()))
            } else {
                Err(bad(format!("{ctx}: only integers and fraction strings are accepted")))
            }
        }
        Value::String(s) => parse_ratio(s).map_err(|e| bad(format!("{ctx}: {e}"))),
        _ => Err(bad(format!("{ctx}: expected a number or fraction string"))),
    }
}

fn parse_vector(v: &Value, dim: usize, ctx: &str) -> Result<Vec<Q>, EngineError> {
    let arr = v
        .as_array()
        .ok_or_else(|| bad(format!("{ctx}: expected an array")))?;
    if arr.len() != dim {
        return Err(bad(format!(
            "{ctx}: expected {dim} entries, found {}",
            arr.len()
        )));
    }
    arr.iter()
        .enumerate()
        .map(|(i, x)| parse_q(x, &format!("{ctx}[{i}]")))
        .collect()
}

fn get<'a>(obj: &'a Value, key: &str, ctx: &str) -> Result<&'a Value, EngineError> {
    obj.get(key)
        .ok_or_else(|| bad(format!("{ctx}: missing field `{key}`")))
}

/// Builds a Lie algebra from its JSON description: either
/// `{"builder": "so", "n": 4}` or
/// `{"dim": n, "basis": [...], "structure": [[i, j, k, "p/q"], ...]}`.
pub fn algebra_from_json(v: &Value) -> Result<LieAlgebra, EngineError> {
    if let Some(builder) = v.get("builder") {
        let name = builder
            .as_str()
            .ok_or_else(|| bad("algebra: `builder` must be a string"))?;
        if name != "so" {
            return Err(bad(format!("algebra: unknown builder `{name}`")));
        }
        let n = get(v, "n", "algebra")?
            .as_u64()
            .ok_or_else(|| bad("algebra: `n` must be a positive integer"))?;
        return LieAlgebra::so(n as usize);
    }
    let dim = get(v, "dim", "algebra")?
        .as_u64()
        .ok_or_else(|| bad("algebra: `dim` must be a positive integer"))? as usize;
    let basis: Vec<String> = match v.get("basis") {
        Some(b) => {
            let arr = b
                .as_array()
                .ok_or_else(|| bad("algebra: `basis` must be an array of names"))?;
            arr.iter()
                .map(|x| {
                    x.as_str()
                        .map(str::to_owned)
                        .ok_or_else(|| bad("algebra: basis names must be strings"))
                })
                .collect::<Result<_, _>>()?
        }
        None => (1..=dim).map(|k| format!("e_{k}")).collect(),
    };
    let entries_json = get(v, "structure", "algebra")?
        .as_array()
        .ok_or_else(|| bad("algebra: `structure` must be an array"))?;
    let mut entries = Vec::with_capacity(entries_json.len());
    for (row, e) in entries_json.iter().enumerate() {
        let ctx = format!("algebra.structure[{row}]");
        let quad = e
            .as_array()
            .filter(|a| a.len() == 4)
            .ok_or_else(|| bad(format!("{ctx}: expected [i, j, k, value]")))?;
        let idx = |n: usize| -> Result<usize, EngineError> {
            quad[n]
                .as_u64()
                .map(|u| u as usize)
                .filter(|&u| u < dim)
                .ok_or_else(|| bad(format!("{ctx}: index out of range")))
        };
        entries.push((idx(0)?, idx(1)?, idx(2)?, parse_q(&quad[3], &ctx)?));
    }
    if basis.len() != dim {
        return Err(bad(format!(
            "algebra: `basis` lists {} names for dimension {dim}",
            basis.len()
        )));
    }
    LieAlgebra::from_structure(basis, &entries)
}

/// Builds a homogeneous space from its JSON description:
/// `{"algebra": ..., "h": [vectors], "summands": [[vectors], ...]?,
///   "inner": {"killing_scale": "-1/4"} | [[...], ...]}`.
pub fn space_from_json(v: &Value, seed: u64) -> Result<HomogeneousSpace, EngineError> {
    let algebra = algebra_from_json(get(v, "algebra", "space")?)?;
    let dim = algebra.dim;
    let h_json = get(v, "h", "space")?
        .as_array()
        .ok_or_else(|| bad("space: `h` must be an array of vectors"))?;
    let h_basis: Vec<Vec<Q>> = h_json
        .iter()
        .enumerate()
        .map(|(i, x)| parse_vector(x, dim, &format!("space.h[{i}]")))
        .collect::<Result<_, _>>()?;
    let h = Subspace::new(dim, h_basis)?;
    let inner_json = get(v, "inner", "space")?;
    let inner = if let Some(scale) = inner_json.get("killing_scale") {
        let s = parse_q(scale, "space.inner.killing_scale")?;
        SymForm::scaled_killing(&algebra, &s)
    } else {
        let rows = inner_json
            .as_array()
            .ok_or_else(|| bad("space: `inner` must be a matrix or {killing_scale}"))?;
        if rows.len() != dim {
            return Err(bad("space: inner matrix has wrong size"));
        }
        let mat_rows: Vec<Vec<Q>> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| parse_vector(r, dim, &format!("space.inner[{i}]")))
            .collect::<Result<_, _>>()?;
        SymForm::new(Mat::from_rows(mat_rows))?
    };
    let hint = match v.get("summands") {
        None => None,
        Some(s) => {
            let arr = s
                .as_array()
                .ok_or_else(|| bad("space: `summands` must be an array"))?;
            let mut subs = Vec::with_capacity(arr.len());
            for (i, block) in arr.iter().enumerate() {
                let vecs = block
                    .as_array()
                    .ok_or_else(|| bad(format!("space.summands[{i}]: expected an array")))?;
                let basis: Vec<Vec<Q>> = vecs
                    .iter()
                    .enumerate()
                    .map(|(j, x)| parse_vector(x, dim, &format!("space.summands[{i}][{j}]")))
                    .collect::<Result<_, _>>()?;
                subs.push(Subspace::new(dim, basis)?);
            }
            Some(subs)
        }
    };
    HomogeneousSpace::new(algebra, h, inner, hint, seed)
}

pub fn space_from_str(s: &str, seed: u64) -> Result<HomogeneousSpace, EngineError> {
    let v: Value =
        serde_json::from_str(s).map_err(|e| bad(format!("malformed JSON: {e}")))?;
    space_from_json(&v, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    const V2R4: &str = r#"{
        "algebra": {"builder": "so", "n": 4},
        "h": [[1, 0, 0, 0, 0, 0]],
        "summands": [
            [[0, 1, 0, 0, 0, 0]],
            [[0, 0, 1, 0, 0, 0], [0, 0, 0, 0, 1, 0]],
            [[0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 0, 1]]
        ],
        "inner": {"killing_scale": "-1/4"}
    }"#;

    #[test]
    fn parses_builder_space() {
        let space = space_from_str(V2R4, 7).unwrap();
        assert_eq!(space.dim_m(), 5);
        assert_eq!(space.classes, vec![vec![0], vec![1, 2]]);
    }

    #[test]
    fn parses_explicit_structure() {
        // sl(2)-like compact form: so(3) written out by hand
        let json = r#"{
            "algebra": {
                "dim": 3,
                "basis": ["L1", "L2", "L3"],
                "structure": [[0, 1, 2, "1"], [1, 2, 0, 1], [2, 0, 1, "1"]]
            },
            "h": [],
            "inner": {"killing_scale": "-1/2"}
        }"#;
        let space = space_from_str(json, 1).unwrap();
        assert_eq!(space.algebra.dim, 3);
        assert_eq!(space.algebra.basis_names[0], "L1");
        let b = space.algebra.bracket(&[q(1), q(0), q(0)], &[q(0), q(1), q(0)]).unwrap();
        assert_eq!(b, vec![q(0), q(0), q(1)]);
    }

    #[test]
    fn explicit_inner_matrix() {
        let json = r#"{
            "algebra": {"builder": "so", "n": 3},
            "h": [],
            "inner": [["2", 0, 0], [0, 2, 0], [0, 0, "2"]]
        }"#;
        let space = space_from_str(json, 1).unwrap();
        assert_eq!(space.inner.eval(&[q(1), q(0), q(0)], &[q(1), q(0), q(0)]), q(2));
    }

    #[test]
    fn diagnostics_for_malformed_input() {
        assert!(matches!(
            space_from_str("{not json", 0),
            Err(EngineError::Input(_))
        ));
        let missing = r#"{"algebra": {"builder": "so", "n": 4}, "h": []}"#;
        let err = space_from_str(missing, 0).unwrap_err();
        assert!(err.to_string().contains("inner"));
        let bad_builder = r#"{
            "algebra": {"builder": "su", "n": 3},
            "h": [], "inner": {"killing_scale": "-1"}
        }"#;
        let err = space_from_str(bad_builder, 0).unwrap_err();
        assert!(err.to_string().contains("su"));
        let short_vec = r#"{
            "algebra": {"builder": "so", "n": 4},
            "h": [[1, 0]], "inner": {"killing_scale": "-1/4"}
        }"#;
        let err = space_from_str(short_vec, 0).unwrap_err();
        assert!(err.to_string().contains("6 entries"));
    }
}
