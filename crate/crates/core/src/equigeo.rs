//! Geodesic and equigeodesic criteria, and the quadratic equations cutting
//! out the set of equigeodesic vectors.

use crate::error::EngineError;
use crate::homogeneous::HomogeneousSpace;
use crate::linalg::Mat;
use crate::metrics::MetricParamSpace;
use crate::scalar::Q;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Outcome of a vector check, with a witness when it fails.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub holds: bool,
    /// Label of the failing check and the nonzero m-residual (ambient
    /// coordinates), when holds is false.
    pub witness: Option<(String, Vec<Q>)>,
}

impl Verdict {
    fn ok() -> Self {
        Verdict {
            holds: true,
            witness: None,
        }
    }

    fn fail(label: String, residual: Vec<Q>) -> Self {
        Verdict {
            holds: false,
            witness: Some((label, residual)),
        }
    }
}

fn require_in_m(space: &HomogeneousSpace, x: &[Q]) -> Result<(), EngineError> {
    if x.len() != space.algebra.dim {
        return Err(EngineError::Shape(
            "vector length does not match the algebra dimension".into(),
        ));
    }
    if space.m_coordinates(x).is_none() {
        return Err(EngineError::Input(
            "vector does not lie in the reductive complement m".into(),
        ));
    }
    Ok(())
}

/// Whether x is a geodesic vector of the metric with the given parameter
/// coefficients: [x, L x]_m = 0 for the metric operator L.
pub fn geodesic_check(
    space: &HomogeneousSpace,
    ps: &MetricParamSpace,
    coeffs: &[Q],
    x: &[Q],
) -> Result<bool, EngineError> {
    require_in_m(space, x)?;
    let lx = apply_operator(ps, coeffs, x)?;
    let bracket = space.algebra.bracket(x, &lx)?;
    Ok(space.project_m(&bracket).iter().all(Zero::is_zero))
}

/// Same predicate through the variational characterization: x is geodesic
/// iff ([x, z]_m, L x) = 0 for every z in m. Kept as an independent route
/// to [`geodesic_check`].
pub fn kv_check(
    space: &HomogeneousSpace,
    ps: &MetricParamSpace,
    coeffs: &[Q],
    x: &[Q],
) -> Result<bool, EngineError> {
    require_in_m(space, x)?;
    let lx = apply_operator(ps, coeffs, x)?;
    for z in &space.m.basis {
        let b = space.algebra.bracket(x, z)?;
        let bm = space.project_m(&b);
        if !space.inner.eval(&bm, &lx).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn apply_operator(
    ps: &MetricParamSpace,
    coeffs: &[Q],
    x: &[Q],
) -> Result<Vec<Q>, EngineError> {
    let xc = ps.adapted_coordinates(x).ok_or_else(|| {
        EngineError::Input("vector does not lie in the reductive complement m".into())
    })?;
    let op = ps.assemble(coeffs)?;
    Ok(ps.from_adapted(&op.mul_vec(&xc)))
}

/// Whether x is equigeodesic: a geodesic vector of every invariant metric.
/// By linearity this holds iff [x, D x]_m = 0 for every parameter direction
/// D (the valid metrics contain an open neighborhood of the identity, so
/// their span is the whole direction space).
pub fn equigeodesic_check(
    space: &HomogeneousSpace,
    ps: &MetricParamSpace,
    x: &[Q],
) -> Result<Verdict, EngineError> {
    require_in_m(space, x)?;
    for (k, d) in ps.directions.iter().enumerate() {
        let dx = ps
            .direction_apply(k, x)
            .ok_or_else(|| EngineError::Input("vector does not lie in m".into()))?;
        let b = space.algebra.bracket(x, &dx)?;
        let res = space.project_m(&b);
        if !res.iter().all(Zero::is_zero) {
            return Ok(Verdict::fail(d.label.clone(), res));
        }
    }
    Ok(Verdict::ok())
}

/// The projection/intertwiner condition that every equigeodesic vector must
/// satisfy: for each pair (i, j) of equivalent summands with normalized
/// intertwiner T_i^j = sqrt(f) M,
///     f [x, M P_i x]_m + [x, M^{-1} P_j x]_m = 0
/// (the original condition multiplied through by sqrt(f) > 0, so the zero
/// set is unchanged and the arithmetic stays rational).
pub fn necessary_condition(
    space: &HomogeneousSpace,
    x: &[Q],
) -> Result<Verdict, EngineError> {
    require_in_m(space, x)?;
    for class in &space.classes {
        for (a, &i) in class.iter().enumerate() {
            // Diagonal instance: T_i^i is the identity, so the condition
            // reduces to [x, P_i x]_m = 0.
            let pi = space.project_summand(i, x);
            let diag = space.project_m(&space.algebra.bracket(x, &pi)?);
            if !diag.iter().all(Zero::is_zero) {
                return Ok(Verdict::fail(format!("proj_{}", i + 1), diag));
            }
            for &j in class.iter().skip(a + 1) {
                let t = space.t_map(i, j).expect("intertwiner within a class");
                let t_inv = space.t_map(j, i).expect("intertwiner within a class");
                let pi = space.project_summand(i, x);
                let pj = space.project_summand(j, x);
                let m_pi = map_between(space, i, j, &t.mat, &pi);
                let minv_pj = map_between(space, j, i, &t_inv.mat, &pj);
                let b1 = space.project_m(&space.algebra.bracket(x, &m_pi)?);
                let b2 = space.project_m(&space.algebra.bracket(x, &minv_pj)?);
                let res: Vec<Q> = b1
                    .iter()
                    .zip(&b2)
                    .map(|(u, v)| &t.factor_sq * u + v)
                    .collect();
                if !res.iter().all(Zero::is_zero) {
                    return Ok(Verdict::fail(format!("pair_{}_{}", i + 1, j + 1), res));
                }
            }
        }
    }
    Ok(Verdict::ok())
}

fn map_between(space: &HomogeneousSpace, from: usize, to: usize, m: &Mat, v: &[Q]) -> Vec<Q> {
    let coords = space.summands[from]
        .coordinates(v)
        .expect("projection lies in its summand");
    space.summands[to].from_coordinates(&m.mul_vec(&coords))
}

/// Whether the projection/intertwiner conditions characterize the
/// equigeodesic vectors: every summand appearing with multiplicity greater
/// than one must have a real-type space of equivariant endomorphisms. On
/// such spaces [`necessary_condition`] and [`equigeodesic_check`] agree on
/// every input.
pub fn sufficiency_applies(space: &HomogeneousSpace) -> bool {
    space.classes.iter().all(|c| {
        c.len() == 1
            || c.iter()
                .all(|&j| space.intertwiners[j][j].dtype == crate::homogeneous::DType::R)
    })
}

/// A quadratic form in the adapted m-coordinates, stored sparsely over
/// monomials x_r x_c with r <= c.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    pub dim: usize,
    pub terms: BTreeMap<(usize, usize), Q>,
}

impl QuadraticForm {
    pub fn new(dim: usize) -> Self {
        QuadraticForm {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, r: usize, c: usize, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        let key = if r <= c { (r, c) } else { (c, r) };
        let entry = self.terms.entry(key).or_insert_with(Q::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        self.terms
            .iter()
            .fold(Q::zero(), |acc, ((r, c), q)| acc + q * &x[*r] * &x[*c])
    }

    /// Dense coefficient vector over monomials (r, c), r <= c, in
    /// lexicographic order.
    pub fn to_dense(&self) -> Vec<Q> {
        let mut out = Vec::with_capacity(self.dim * (self.dim + 1) / 2);
        for r in 0..self.dim {
            for c in r..self.dim {
                out.push(self.terms.get(&(r, c)).cloned().unwrap_or_else(Q::zero));
            }
        }
        out
    }
}

/// Whether two families of quadratic forms have the same linear span.
pub fn forms_span_equal(a: &[QuadraticForm], b: &[QuadraticForm]) -> bool {
    if a.is_empty() && b.is_empty() {
        return true;
    }
    let dim = a.first().or_else(|| b.first()).map(|f| f.dim).unwrap();
    if a.iter().chain(b).any(|f| f.dim != dim) {
        return false;
    }
    let dense = |fs: &[QuadraticForm]| -> Vec<Vec<Q>> { fs.iter().map(|f| f.to_dense()).collect() };
    let ra = Mat::from_rows(dense(a)).rank();
    let rb = Mat::from_rows(dense(b)).rank();
    let mut all = dense(a);
    all.extend(dense(b));
    let rall = Mat::from_rows(all).rank();
    ra == rb && rb == rall
}

/// One defining equation of the equigeodesic set: the quadratic form of one
/// m-coordinate of [x, D x]_m for one parameter direction D.
#[derive(Debug, Clone)]
pub struct LabeledForm {
    pub direction: String,
    pub coordinate: usize,
    pub form: QuadraticForm,
}

/// The polynomial system whose common zero set is exactly the set of
/// equigeodesic vectors, in the adapted m-coordinates.
pub fn equigeodesic_equations(
    space: &HomogeneousSpace,
    ps: &MetricParamSpace,
) -> Result<Vec<LabeledForm>, EngineError> {
    let d = ps.dim_m();
    let mut out = Vec::new();
    for (k, dir) in ps.directions.iter().enumerate() {
        // forms[l] collects the coordinate-l component.
        let mut forms: Vec<QuadraticForm> = (0..d).map(|_| QuadraticForm::new(d)).collect();
        for r in 0..d {
            for c in 0..d {
                let dbc = ps.direction_apply(k, &ps.adapted_basis[c]).unwrap();
                let b = space.algebra.bracket(&ps.adapted_basis[r], &dbc)?;
                let bm = space.project_m(&b);
                let coords = ps
                    .adapted_coordinates(&bm)
                    .expect("m-part lies in m");
                for (l, val) in coords.into_iter().enumerate() {
                    forms[l].add_term(r, c, val);
                }
            }
        }
        for (l, form) in forms.into_iter().enumerate() {
            if !form.is_zero() {
                out.push(LabeledForm {
                    direction: dir.label.clone(),
                    coordinate: l,
                    form,
                });
            }
        }
    }
    Ok(out)
}
