//! Parameter spaces of invariant metrics.
//!
//! An invariant metric corresponds to a positive self-adjoint operator on m
//! commuting with the isotropy action. The operator decomposes along the
//! isotropy summands: one positive scale per summand, plus coupling blocks
//! between equivalent summands spanned by the equivariant maps.

use crate::error::EngineError;
use crate::homogeneous::HomogeneousSpace;
use crate::linalg::Mat;
use crate::scalar::{q, q_ratio, Q};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One self-adjoint direction of the metric parameter space, as an operator
/// on m in the adapted (summand-concatenated) basis.
#[derive(Debug, Clone)]
pub struct MetricDirection {
    pub label: String,
    pub mat: Mat,
}

/// The full parameter space of invariant metric operators on m.
#[derive(Debug, Clone)]
pub struct MetricParamSpace {
    /// Ambient vectors of the adapted basis: summand bases concatenated in
    /// summand order.
    pub adapted_basis: Vec<Vec<Q>>,
    /// Start offset of each summand block in the adapted basis.
    pub offsets: Vec<usize>,
    pub directions: Vec<MetricDirection>,
    /// Gram matrix of the adapted basis under the invariant inner product.
    pub gram: Mat,
}

impl MetricParamSpace {
    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn dim_m(&self) -> usize {
        self.adapted_basis.len()
    }

    /// Operator sum(coeffs[k] * direction_k) in the adapted basis.
    pub fn assemble(&self, coeffs: &[Q]) -> Result<Mat, EngineError> {
        if coeffs.len() != self.directions.len() {
            return Err(EngineError::Shape(format!(
                "expected {} coefficients, got {}",
                self.directions.len(),
                coeffs.len()
            )));
        }
        let n = self.dim_m();
        let mut acc = Mat::zero(n, n);
        for (c, d) in coeffs.iter().zip(&self.directions) {
            acc = acc.add(&d.mat.scale(c));
        }
        Ok(acc)
    }

    /// Whether the assembled operator defines a metric: the bilinear form
    /// g(A u, v) must be positive-definite.
    pub fn is_valid_metric(&self, op: &Mat) -> bool {
        let form = self.gram.mul(op);
        form.is_symmetric() && form.is_positive_definite_sym()
    }

    /// Deterministic sampling of a valid metric: summand scales drawn from
    /// [1, 2], coupling coefficients drawn from [-1, 1] and halved until the
    /// operator is positive (the couplings vanish in the limit, so this
    /// terminates).
    pub fn sample_valid(&self, seed: u64) -> Vec<Q> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut coeffs = Vec::with_capacity(self.directions.len());
        for d in &self.directions {
            let r = q(rng.gen_range(0i64..=16));
            if d.label.starts_with("mu_") {
                coeffs.push(Q::one() + r * q_ratio(1, 16));
            } else {
                coeffs.push((r - q(8)) * q_ratio(1, 8));
            }
        }
        loop {
            let op = self.assemble(&coeffs).expect("coefficient count matches");
            if self.is_valid_metric(&op) {
                return coeffs;
            }
            for (c, d) in coeffs.iter_mut().zip(&self.directions) {
                if !d.label.starts_with("mu_") {
                    *c *= q_ratio(1, 2);
                }
            }
        }
    }

    /// Applies a direction to an ambient vector of m; returns the ambient
    /// image.
    pub fn direction_apply(&self, k: usize, v_m: &[Q]) -> Option<Vec<Q>> {
        let coords = self.adapted_coordinates(v_m)?;
        let img = self.directions[k].mat.mul_vec(&coords);
        Some(self.from_adapted(&img))
    }

    pub fn adapted_coordinates(&self, v: &[Q]) -> Option<Vec<Q>> {
        let rows: Vec<Vec<Q>> = self.adapted_basis.clone();
        let a = Mat::from_rows(rows).transpose();
        let coords = a_solve(&a, v)?;
        Some(coords)
    }

    pub fn from_adapted(&self, coords: &[Q]) -> Vec<Q> {
        let n = self.adapted_basis[0].len();
        let mut out = vec![Q::zero(); n];
        for (c, b) in coords.iter().zip(&self.adapted_basis) {
            for (o, x) in out.iter_mut().zip(b) {
                *o += c * x;
            }
        }
        out
    }
}

// Least-squares-free exact solve of a (possibly tall) system A x = b.
fn a_solve(a: &Mat, b: &[Q]) -> Option<Vec<Q>> {
    let mut aug = Mat::from_fn(a.rows, a.cols + 1, |i, j| {
        if j < a.cols {
            a[(i, j)].clone()
        } else {
            b[i].clone()
        }
    });
    let pivots = aug.rref();
    if pivots.contains(&a.cols) {
        return None; // inconsistent
    }
    let mut x = vec![Q::zero(); a.cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[(r, a.cols)].clone();
    }
    // verify (free variables are zero; membership may still fail)
    let back = a.mul_vec(&x);
    if back.as_slice() == b {
        Some(x)
    } else {
        None
    }
}

/// Builds the metric parameter space of a homogeneous space and verifies its
/// dimension against the self-adjoint commutant of m computed independently.
pub fn build_param_space(space: &HomogeneousSpace) -> Result<MetricParamSpace, EngineError> {
    let s = space.summands.len();
    let mut adapted_basis = Vec::new();
    let mut offsets = Vec::with_capacity(s);
    for sub in &space.summands {
        offsets.push(adapted_basis.len());
        adapted_basis.extend(sub.basis.iter().cloned());
    }
    let n = adapted_basis.len();
    let gram = Mat::from_fn(n, n, |i, j| {
        space.inner.eval(&adapted_basis[i], &adapted_basis[j])
    });

    let mut directions = Vec::new();
    // One scale per summand.
    for (p, sub) in space.summands.iter().enumerate() {
        let mut mat = Mat::zero(n, n);
        for k in 0..sub.dim() {
            mat[(offsets[p] + k, offsets[p] + k)] = Q::one();
        }
        directions.push(MetricDirection {
            label: format!("mu_{}", p + 1),
            mat,
        });
    }
    // Coupling directions for each equivalent pair (p, q), p < q: one per
    // basis element B of the equivariant maps m_p -> m_q, placed as B in the
    // (q, p) block and its adjoint in the (p, q) block.
    for class in &space.classes {
        for (a, &p) in class.iter().enumerate() {
            for &qi in class.iter().skip(a + 1) {
                let it = &space.intertwiners[p][qi];
                let gp = block_gram(&gram, offsets[p], space.summands[p].dim());
                let gq = block_gram(&gram, offsets[qi], space.summands[qi].dim());
                let gp_inv = gp.inverse().ok_or_else(|| {
                    EngineError::Degenerate("singular summand Gram matrix".into())
                })?;
                // Coupling coefficients are named a, b, c, d after the
                // parameters of the worked examples; the map closest to the
                // canonical intertwiner comes first.
                let mut maps: Vec<&Mat> = it.basis_maps.iter().collect();
                maps.sort_by_key(|m| {
                    (0..m.rows)
                        .position(|r| !m[(r, 0)].is_zero())
                        .unwrap_or(usize::MAX)
                });
                for (bi, bmap) in maps.into_iter().enumerate() {
                    let adj = gp_inv.mul(&bmap.transpose()).mul(&gq);
                    let mut mat = Mat::zero(n, n);
                    // B: m_p -> m_q occupies rows of block q, columns of block p.
                    for r in 0..bmap.rows {
                        for c in 0..bmap.cols {
                            mat[(offsets[qi] + r, offsets[p] + c)] = bmap[(r, c)].clone();
                        }
                    }
                    for r in 0..adj.rows {
                        for c in 0..adj.cols {
                            mat[(offsets[p] + r, offsets[qi] + c)] = adj[(r, c)].clone();
                        }
                    }
                    directions.push(MetricDirection {
                        label: format!("{}_{}_{}", (b'a' + bi as u8) as char, p + 1, qi + 1),
                        mat,
                    });
                }
            }
        }
    }

    // Every direction must be self-adjoint: gram * D symmetric.
    for d in &directions {
        if !gram.mul(&d.mat).is_symmetric() {
            return Err(EngineError::Invariant(format!(
                "metric direction {} is not self-adjoint",
                d.label
            )));
        }
    }
    // Independence and completeness against the self-adjoint commutant of m,
    // computed by a direct nullspace solve.
    let vecs: Vec<Vec<Q>> = directions
        .iter()
        .map(|d| {
            (0..n * n)
                .map(|k| d.mat[(k / n, k % n)].clone())
                .collect()
        })
        .collect();
    if Mat::from_rows(vecs).rank() != directions.len() {
        return Err(EngineError::Invariant(
            "metric directions are linearly dependent".into(),
        ));
    }
    let adapted = crate::algebra::Subspace::new(space.algebra.dim, adapted_basis.clone())?;
    let commutant = space.symmetric_commutant(&adapted)?;
    if commutant.len() != directions.len() {
        return Err(EngineError::Invariant(format!(
            "parameter count {} disagrees with commutant dimension {}",
            directions.len(),
            commutant.len()
        )));
    }

    Ok(MetricParamSpace {
        adapted_basis,
        offsets,
        directions,
        gram,
    })
}

fn block_gram(gram: &Mat, off: usize, d: usize) -> Mat {
    Mat::from_fn(d, d, |i, j| gram[(off + i, off + j)].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{unit, LieAlgebra, Subspace, SymForm};

    fn v2r4() -> HomogeneousSpace {
        let alg = LieAlgebra::so(4).unwrap();
        let inner = SymForm::scaled_killing(&alg, &q_ratio(-1, 4));
        let h = Subspace::new(6, vec![unit(6, 0)]).unwrap();
        let hint = vec![
            Subspace::new(6, vec![unit(6, 1)]).unwrap(),
            Subspace::new(6, vec![unit(6, 2), unit(6, 4)]).unwrap(),
            Subspace::new(6, vec![unit(6, 3), unit(6, 5)]).unwrap(),
        ];
        HomogeneousSpace::new(alg, h, inner, Some(hint), 7).unwrap()
    }

    #[test]
    fn v2r4_has_five_parameters() {
        let space = v2r4();
        let ps = build_param_space(&space).unwrap();
        assert_eq!(ps.dim(), 5);
        let labels: Vec<&str> = ps.directions.iter().map(|d| d.label.as_str()).collect();
        assert_eq!(labels, vec!["mu_1", "mu_2", "mu_3", "a_2_3", "b_2_3"]);
    }

    #[test]
    fn positivity_matches_closed_form() {
        // Valid iff a^2 + b^2 < mu_2 * mu_3 (with all mu positive), where
        // (a, b) are the two coupling coefficients.
        let space = v2r4();
        let ps = build_param_space(&space).unwrap();
        let cases: Vec<(i64, i64, i64, i64, i64)> = vec![
            (1, 1, 1, 0, 0),
            (1, 2, 3, 1, 2),
            (1, 2, 3, 2, 1),
            (1, 1, 4, 1, 1),
            (1, 1, 1, 1, 0),
            (2, 1, 1, 1, 1),
            (-1, 1, 1, 0, 0),
            (1, -1, 1, 0, 0),
        ];
        for (m1, m2, m3, a, b) in cases {
            let coeffs = vec![q(m1), q(m2), q(m3), q(a), q(b)];
            let op = ps.assemble(&coeffs).unwrap();
            let expected = m1 > 0 && m2 > 0 && m3 > 0 && a * a + b * b < m2 * m3;
            assert_eq!(
                ps.is_valid_metric(&op),
                expected,
                "mu=({m1},{m2},{m3}), couplings=({a},{b})"
            );
        }
    }

    #[test]
    fn sampled_metrics_are_valid_and_deterministic() {
        let space = v2r4();
        let ps = build_param_space(&space).unwrap();
        let c1 = ps.sample_valid(42);
        let c2 = ps.sample_valid(42);
        assert_eq!(c1, c2);
        let op = ps.assemble(&c1).unwrap();
        assert!(ps.is_valid_metric(&op));
        let c3 = ps.sample_valid(43);
        let op3 = ps.assemble(&c3).unwrap();
        assert!(ps.is_valid_metric(&op3));
    }

    #[test]
    fn direction_apply_round_trip() {
        let space = v2r4();
        let ps = build_param_space(&space).unwrap();
        // mu_2 acts as identity on m_2 and kills the rest.
        let x3 = unit(6, 2);
        let img = ps.direction_apply(1, &x3).unwrap();
        assert_eq!(img, x3);
        assert!(ps.direction_apply(0, &x3).unwrap().iter().all(Zero::is_zero));
        // c_2_3_1 sends X_3 into m_3.
        let img = ps.direction_apply(3, &x3).unwrap();
        assert!(space.summands[2].contains(&img));
        assert!(!img.iter().all(Zero::is_zero));
    }

    #[test]
    fn identity_is_an_interior_valid_metric() {
        let space = v2r4();
        let ps = build_param_space(&space).unwrap();
        let mut coeffs = vec![Q::zero(); ps.dim()];
        for (c, d) in coeffs.iter_mut().zip(&ps.directions) {
            if d.label.starts_with("mu_") {
                *c = Q::one();
            }
        }
        let op = ps.assemble(&coeffs).unwrap();
        assert_eq!(op, Mat::identity(ps.dim_m()));
        assert!(ps.is_valid_metric(&op));
    }
}
