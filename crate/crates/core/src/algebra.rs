//! Lie algebra core: structure constants, brackets, Killing form and
//! Ad-invariant inner products, all over exact rationals.

use crate::error::EngineError;
use crate::linalg::Mat;
use crate::scalar::{q, Q};
use num_traits::Zero;

/// Structure constants c[i][j][k] with [e_i, e_j] = sum_k c[i][j][k] e_k.
///
/// Dense storage for small algebras, a coordinate list above that.
#[derive(Debug, Clone)]
enum Structure {
    Dense(Vec<Q>), // flattened dim^3
    Sparse(Vec<(usize, usize, usize, Q)>),
}

const DENSE_LIMIT: usize = 64;

/// A finite-dimensional Lie algebra over the rationals with a named basis.
#[derive(Debug, Clone)]
pub struct LieAlgebra {
    pub dim: usize,
    pub basis_names: Vec<String>,
    structure: Structure,
}

impl LieAlgebra {
    /// Builds an algebra from the nonzero structure constants. The input is
    /// completed antisymmetrically, then antisymmetry and the Jacobi identity
    /// are verified exactly.
    pub fn from_structure(
        basis_names: Vec<String>,
        entries: &[(usize, usize, usize, Q)],
    ) -> Result<Self, EngineError> {
        let dim = basis_names.len();
        let mut alg = LieAlgebra {
            dim,
            basis_names,
            structure: if dim <= DENSE_LIMIT {
                Structure::Dense(vec![Q::zero(); dim * dim * dim])
            } else {
                Structure::Sparse(Vec::new())
            },
        };
        for (i, j, k, v) in entries {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(EngineError::Input(format!(
                    "structure index ({i},{j},{k}) out of range for dim {dim}"
                )));
            }
            if v.is_zero() {
                continue;
            }
            let existing = alg.c(*i, *j, *k);
            if !existing.is_zero() && existing != *v {
                return Err(EngineError::Input(format!(
                    "conflicting structure constants at ({i},{j},{k})"
                )));
            }
            if !alg.c(*j, *i, *k).is_zero() && alg.c(*j, *i, *k) != -v.clone() {
                return Err(EngineError::Input(format!(
                    "antisymmetry conflict at ({i},{j},{k})"
                )));
            }
            alg.set_c(*i, *j, *k, v.clone());
            alg.set_c(*j, *i, *k, -v.clone());
        }
        alg.verify()?;
        Ok(alg)
    }

    /// so(n) with basis {E_ij - E_ji : i > j} ordered lexicographically by
    /// (i, j); for n = 4 the basis is reordered and named X_1..X_6 following
    /// the usual Stiefel-manifold convention so that so(2) = span{X_1}.
    pub fn so(n: usize) -> Result<Self, EngineError> {
        if n < 2 {
            return Err(EngineError::Input(format!(
                "so(n) requires n >= 2, got {n}"
            )));
        }
        // (i, j) index pairs, 1-based, i > j.
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for i in 2..=n {
            for j in 1..i {
                pairs.push((i, j));
            }
        }
        let names: Vec<String>;
        if n == 4 {
            // X_1 = E21-E12, X_2 = E43-E34, X_3 = E31-E13,
            // X_4 = E42-E24, X_5 = E32-E23, X_6 = E41-E14.
            pairs = vec![(2, 1), (4, 3), (3, 1), (4, 2), (3, 2), (4, 1)];
            names = (1..=6).map(|k| format!("X_{k}")).collect();
        } else {
            names = pairs.iter().map(|(i, j)| format!("X_{i}{j}")).collect();
        }
        let dim = pairs.len();
        let index_of = |a: usize, b: usize| -> Option<(usize, Q)> {
            // E_ab - E_ba as +/- a basis element (a != b).
            if let Some(p) = pairs.iter().position(|&x| x == (a, b)) {
                Some((p, q(1)))
            } else {
                pairs.iter().position(|&x| x == (b, a)).map(|p| (p, q(-1)))
            }
        };
        // [X_ij, X_kl] = d_jk X_il + d_il X_jk - d_jl X_ik - d_ik X_jl.
        let mut entries = Vec::new();
        for (a, &(i, j)) in pairs.iter().enumerate() {
            for (b, &(k, l)) in pairs.iter().enumerate() {
                if a >= b {
                    continue;
                }
                let mut accum: Vec<(usize, Q)> = Vec::new();
                let mut push = |t: Option<(usize, Q)>, sign: i64| {
                    if let Some((idx, s)) = t {
                        accum.push((idx, s * q(sign)));
                    }
                };
                if j == k && i != l {
                    push(index_of(i, l), 1);
                }
                if i == l && j != k {
                    push(index_of(j, k), 1);
                }
                if j == l && i != k {
                    push(index_of(i, k), -1);
                }
                if i == k && j != l {
                    push(index_of(j, l), -1);
                }
                let mut coeffs = vec![Q::zero(); dim];
                for (idx, s) in accum {
                    coeffs[idx] += s;
                }
                for (kk, v) in coeffs.into_iter().enumerate() {
                    if !v.is_zero() {
                        entries.push((a, b, kk, v));
                    }
                }
            }
        }
        Self::from_structure(names, &entries)
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> Q {
        match &self.structure {
            Structure::Dense(d) => d[(i * self.dim + j) * self.dim + k].clone(),
            Structure::Sparse(s) => s
                .iter()
                .find(|(a, b, c, _)| (*a, *b, *c) == (i, j, k))
                .map(|(_, _, _, v)| v.clone())
                .unwrap_or_else(Q::zero),
        }
    }

    fn set_c(&mut self, i: usize, j: usize, k: usize, v: Q) {
        match &mut self.structure {
            Structure::Dense(d) => d[(i * self.dim + j) * self.dim + k] = v,
            Structure::Sparse(s) => {
                s.retain(|(a, b, c, _)| (*a, *b, *c) != (i, j, k));
                if !v.is_zero() {
                    s.push((i, j, k, v));
                }
            }
        }
    }

    /// Exact bilinear bracket of coefficient vectors.
    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Result<Vec<Q>, EngineError> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(EngineError::Shape(format!(
                "bracket expects vectors of length {}, got {} and {}",
                self.dim,
                x.len(),
                y.len()
            )));
        }
        let mut out = vec![Q::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let f = xi * yj;
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        *slot += &f * &c;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix of ad(e_i) acting on the whole algebra.
    pub fn ad_basis(&self, i: usize) -> Mat {
        Mat::from_fn(self.dim, self.dim, |k, j| self.c(i, j, k))
    }

    /// Matrix of ad(z) on the whole algebra, z a coefficient vector.
    pub fn ad(&self, z: &[Q]) -> Mat {
        let mut m = Mat::zero(self.dim, self.dim);
        for (i, zi) in z.iter().enumerate() {
            if !zi.is_zero() {
                m = m.add(&self.ad_basis(i).scale(zi));
            }
        }
        m
    }

    /// Killing form B(e_i, e_j) = tr(ad e_i . ad e_j).
    pub fn killing_form(&self) -> SymForm {
        let ads: Vec<Mat> = (0..self.dim).map(|i| self.ad_basis(i)).collect();
        let mat = Mat::from_fn(self.dim, self.dim, |i, j| {
            let p = ads[i].mul(&ads[j]);
            (0..self.dim).fold(Q::zero(), |acc, k| acc + &p[(k, k)])
        });
        SymForm { mat }
    }

    /// Infinitesimal Ad-invariance: F([z,x],y) + F(x,[z,y]) = 0 on all
    /// basis triples.
    pub fn check_ad_invariance(&self, form: &SymForm) -> bool {
        if form.mat.rows != self.dim {
            return false;
        }
        for z in 0..self.dim {
            for x in 0..self.dim {
                for y in 0..self.dim {
                    let mut acc = Q::zero();
                    for k in 0..self.dim {
                        let c1 = self.c(z, x, k);
                        if !c1.is_zero() {
                            acc += &c1 * &form.mat[(k, y)];
                        }
                        let c2 = self.c(z, y, k);
                        if !c2.is_zero() {
                            acc += &c2 * &form.mat[(x, k)];
                        }
                    }
                    if !acc.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn verify(&self) -> Result<(), EngineError> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.c(i, j, k) != -self.c(j, i, k) {
                        return Err(EngineError::Invariant(format!(
                            "antisymmetry fails at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        // Jacobi: [e_i,[e_j,e_k]] + cyclic = 0.
        let basis: Vec<Vec<Q>> = (0..n).map(|i| unit(n, i)).collect();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let a = self.bracket(&basis[i], &self.bracket(&basis[j], &basis[k])?)?;
                    let b = self.bracket(&basis[j], &self.bracket(&basis[k], &basis[i])?)?;
                    let c = self.bracket(&basis[k], &self.bracket(&basis[i], &basis[j])?)?;
                    if (0..n).any(|t| (&a[t] + &b[t] + &c[t]) != Q::zero()) {
                        return Err(EngineError::Invariant(format!(
                            "Jacobi identity fails at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Coefficient vector for the standard basis element e_i.
pub fn unit(dim: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    v[i] = q(1);
    v
}

/// A symmetric bilinear form given by its Gram matrix in the algebra basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymForm {
    pub mat: Mat,
}

impl SymForm {
    pub fn new(mat: Mat) -> Result<Self, EngineError> {
        if !mat.is_symmetric() {
            return Err(EngineError::Input("form matrix is not symmetric".into()));
        }
        Ok(SymForm { mat })
    }

    pub fn eval(&self, x: &[Q], y: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    acc += xi * &self.mat[(i, j)] * yj;
                }
            }
        }
        acc
    }

    pub fn is_positive_definite(&self) -> bool {
        self.mat.is_positive_definite_sym()
    }

    /// scale * Killing form of the algebra.
    pub fn scaled_killing(alg: &LieAlgebra, scale: &Q) -> SymForm {
        let b = alg.killing_form();
        SymForm {
            mat: b.mat.scale(scale),
        }
    }
}

/// A linear subspace of Q^ambient_dim given by independent basis vectors.
#[derive(Debug, Clone)]
pub struct Subspace {
    pub ambient_dim: usize,
    pub basis: Vec<Vec<Q>>,
}

impl Subspace {
    pub fn new(ambient_dim: usize, basis: Vec<Vec<Q>>) -> Result<Self, EngineError> {
        for v in &basis {
            if v.len() != ambient_dim {
                return Err(EngineError::Shape(format!(
                    "subspace vector length {} != ambient {}",
                    v.len(),
                    ambient_dim
                )));
            }
        }
        let m = Mat::from_rows(basis.clone());
        if !basis.is_empty() && m.rank() != basis.len() {
            return Err(EngineError::Input(
                "subspace basis vectors are linearly dependent".into(),
            ));
        }
        Ok(Subspace { ambient_dim, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Membership test by exact rank.
    pub fn contains(&self, v: &[Q]) -> bool {
        if v.iter().all(|x| x.is_zero()) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Mat::from_rows(rows).rank() == self.dim()
    }

    /// Coordinates of v in this subspace's basis; None if v is outside.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<Q>> {
        let m = Mat::from_rows(self.basis.clone()).transpose();
        let x = m.solve(v)?;
        // solve() gives a least-structured solution; membership requires A x = v.
        let back = m.mul_vec(&x);
        if back.as_slice() == v {
            Some(x)
        } else {
            None
        }
    }

    /// Ambient vector from coordinates in this subspace's basis.
    pub fn from_coordinates(&self, coords: &[Q]) -> Vec<Q> {
        assert_eq!(coords.len(), self.dim());
        let mut out = vec![Q::zero(); self.ambient_dim];
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                for (o, bv) in out.iter_mut().zip(b) {
                    *o += c * bv;
                }
            }
        }
        out
    }
}
