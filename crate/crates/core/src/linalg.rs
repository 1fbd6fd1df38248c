//! Dense exact linear algebra over the rationals: row reduction, rank,
//! nullspaces, inverses, determinants and characteristic polynomials.

use crate::scalar::Q;
use num_traits::{One, Signed, Zero};

/// A dense matrix with exact rational entries, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Q>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Self {
        let mut m = Mat::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &Q) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .fold(Q::zero(), |acc, x| acc + x)
            })
            .collect()
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)].clone();
                    for j in c..self.cols {
                        let v = &self[(i, j)] - &f * &self[(r, j)];
                        self[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right nullspace, with free variables set to 1 in
    /// increasing column order. Deterministic.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free] {
                continue;
            }
            let mut vec = vec![Q::zero(); self.cols];
            vec[free] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                vec[p] = -m[(r, free)].clone();
            }
            basis.push(vec);
        }
        basis
    }

    /// Solves `A x = b`; `None` if inconsistent. Free variables are set to zero.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(self.rows, b.len());
        let mut aug = Mat::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Mat::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                Q::one()
            } else {
                Q::zero()
            }
        });
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Mat::from_fn(n, n, |i, j| aug[(i, j + n)].clone()))
    }

    pub fn det(&self) -> Q {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Q::zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            det *= m[(c, c)].clone();
            let inv = m[(c, c)].recip();
            for i in (c + 1)..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    let v = &m[(i, j)] - &f * &m[(c, j)];
                    m[(i, j)] = v;
                }
            }
        }
        det
    }

    /// Leading principal minors det(A[..k, ..k]) for k = 1..=n.
    pub fn leading_principal_minors(&self) -> Vec<Q> {
        assert!(self.is_square());
        (1..=self.rows)
            .map(|k| Mat::from_fn(k, k, |i, j| self[(i, j)].clone()).det())
            .collect()
    }

    /// Sylvester's criterion: all leading principal minors positive.
    pub fn is_positive_definite_sym(&self) -> bool {
        self.leading_principal_minors()
            .iter()
            .all(|d| d.is_positive())
    }

    /// Characteristic polynomial coefficients `[c_0, ..., c_n]` with
    /// `det(xI - A) = sum c_k x^k` (monic, c_n = 1), via Faddeev-LeVerrier.
    pub fn char_poly(&self) -> Vec<Q> {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![Q::zero(); n + 1];
        coeffs[n] = Q::one();
        let mut m = Mat::zero(n, n);
        for k in 1..=n {
            m = self.mul(&m);
            for i in 0..n {
                m[(i, i)] += coeffs[n - k + 1].clone();
            }
            let am = self.mul(&m);
            let trace = (0..n).fold(Q::zero(), |acc, i| acc + &am[(i, i)]);
            coeffs[n - k] = -trace / Q::from_integer(k.into());
        }
        // m is unused past this point; char poly fully determined.
        coeffs
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

/// Rational roots of a monic integer-scalable polynomial given by exact
/// rational coefficients `[c_0, ..., c_n]`. Uses the rational root theorem
/// after clearing denominators.
pub fn rational_roots(coeffs: &[Q]) -> Vec<Q> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    let n = coeffs.len() - 1;
    // Clear denominators.
    let mut lcm = BigInt::from(1);
    for c in coeffs {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * &lcm / c.denom())
        .collect();
    // Strip trailing zero coefficients at the low end (root 0).
    let mut roots = Vec::new();
    let mut low = 0;
    while low < n && ints[low].is_zero() {
        low += 1;
    }
    if low > 0 {
        roots.push(Q::zero());
    }
    let a0 = ints[low].clone();
    let an = ints[n].clone();
    if a0.is_zero() {
        return roots; // zero polynomial tail; only root 0 reported
    }
    let eval = |x: &Q| -> Q {
        let mut acc = Q::zero();
        for c in coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    };
    for p in divisors(&a0.abs()) {
        for qd in divisors(&an.abs()) {
            for sign in [1i64, -1] {
                let cand = Q::new(&p * BigInt::from(sign), qd.clone());
                if eval(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

fn divisors(n: &num_bigint::BigInt) -> Vec<num_bigint::BigInt> {
    use num_bigint::BigInt;
    let mut out = Vec::new();
    let mut i = BigInt::from(1);
    while &i * &i <= *n {
        if (n % &i).is_zero() {
            out.push(i.clone());
            let j = n / &i;
            if j != i {
                out.push(j);
            }
        }
        i += 1;
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, q_ratio};

    fn m2(a: i64, b: i64, c: i64, d: i64) -> Mat {
        Mat::from_rows(vec![vec![q(a), q(b)], vec![q(c), q(d)]])
    }

    #[test]
    fn rref_rank_nullspace() {
        let m = Mat::from_rows(vec![
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![q(1), q(0), q(1)],
        ]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        for v in &ns {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn inverse_and_det() {
        let m = m2(2, 1, 1, 1);
        assert_eq!(m.det(), q(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(2));
        assert!(m2(1, 2, 2, 4).inverse().is_none());
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = m2(1, 2, 2, 4);
        assert_eq!(m.solve(&[q(3), q(6)]), Some(vec![q(3), q(0)]));
        assert_eq!(m.solve(&[q(3), q(7)]), None);
    }

    #[test]
    fn sylvester() {
        assert!(m2(2, 1, 1, 2).is_positive_definite_sym());
        assert!(!m2(1, 2, 2, 1).is_positive_definite_sym());
        assert_eq!(
            m2(1, 0, 0, -1).leading_principal_minors(),
            vec![q(1), q(-1)]
        );
    }

    #[test]
    fn char_poly_matches_det_and_trace() {
        let m = Mat::from_rows(vec![
            vec![q(2), q(1), q(0)],
            vec![q(1), q(3), q(1)],
            vec![q(0), q(1), q(4)],
        ]);
        let cp = m.char_poly();
        // det(xI - A): constant term is (-1)^n det A, x^{n-1} coeff is -tr A.
        assert_eq!(cp[0], -m.det());
        assert_eq!(cp[2], q(-9));
        assert_eq!(cp[3], q(1));
    }

    #[test]
    fn rational_root_extraction() {
        // (x - 1/2)(x + 3) x = x^3 + 5/2 x^2 - 3/2 x
        let coeffs = vec![q(0), q_ratio(-3, 2), q_ratio(5, 2), q(1)];
        let roots = rational_roots(&coeffs);
        assert_eq!(roots, vec![q(-3), q(0), q_ratio(1, 2)]);
    }
}
