//! Classical root systems, t-roots of flag manifolds, and the equigeodesic
//! classifier for M-spaces.
//!
//! Roots are kept as integer coefficient vectors over the simple roots, so
//! the restriction map to the torus center is pure integer bookkeeping: two
//! roots restrict equally iff their coefficients on the complementary
//! simple roots agree.

use crate::algebra::Subspace;
use crate::equigeo::equigeodesic_check;
use crate::error::EngineError;
use crate::homogeneous::HomogeneousSpace;
use crate::linalg::Mat;
use crate::metrics::MetricParamSpace;
use crate::scalar::Q;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Classical series label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
}

impl std::str::FromStr for Series {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "A" | "a" => Ok(Series::A),
            "B" | "b" => Ok(Series::B),
            "C" | "c" => Ok(Series::C),
            "D" | "d" => Ok(Series::D),
            other => Err(format!("unknown series `{other}` (expected A, B, C or D)")),
        }
    }
}

/// Positive roots of a classical system in simple-root coordinates.
#[derive(Debug, Clone, serde::Serialize)]
pub struct RootSystem {
    pub series: Series,
    pub rank: usize,
    /// Lexicographically sorted integer coefficient vectors.
    pub positive: Vec<Vec<i64>>,
}

/// Standard positive roots. For series D ranks 2 and 3 coincide with
/// A_1 x A_1 and A_3; they are generated by the same formulas and allowed.
pub fn generate_roots(series: Series, rank: usize) -> Result<RootSystem, EngineError> {
    if rank < 1 || (series == Series::D && rank < 2) {
        return Err(EngineError::Input(format!(
            "rank {rank} is not supported for series {series:?}"
        )));
    }
    let n = rank;
    let mut positive: Vec<Vec<i64>> = Vec::new();
    // root = alpha_from + ... + alpha_to (1-based, inclusive) plus bumps
    let interval = |from: usize, to: usize, bump: &[(usize, i64)]| {
        let mut v = vec![0i64; n];
        for k in from..=to {
            v[k - 1] += 1;
        }
        for &(idx, amt) in bump {
            v[idx - 1] += amt;
        }
        v
    };
    match series {
        Series::A => {
            // e_i - e_j = alpha_i + ... + alpha_{j-1}
            for i in 1..=n {
                for j in i..=n {
                    positive.push(interval(i, j, &[]));
                }
            }
        }
        Series::B => {
            for i in 1..n {
                for j in (i + 1)..=n {
                    positive.push(interval(i, j - 1, &[])); // e_i - e_j
                }
            }
            for i in 1..=n {
                positive.push(interval(i, n, &[])); // e_i
            }
            for i in 1..n {
                for j in (i + 1)..=n {
                    // e_i + e_j: ones on i..j-1, twos on j..n
                    let bump: Vec<(usize, i64)> = (j..=n).map(|k| (k, 2)).collect();
                    positive.push(interval(i, j - 1, &bump));
                }
            }
        }
        Series::C => {
            for i in 1..n {
                for j in (i + 1)..=n {
                    positive.push(interval(i, j - 1, &[])); // e_i - e_j
                }
            }
            for i in 1..=n {
                // 2 e_i = 2(alpha_i + ... + alpha_{n-1}) + alpha_n
                let mut bump: Vec<(usize, i64)> = (i..n).map(|k| (k, 2)).collect();
                bump.push((n, 1));
                let v = {
                    let mut v = vec![0i64; n];
                    for &(idx, amt) in &bump {
                        v[idx - 1] += amt;
                    }
                    v
                };
                positive.push(v);
            }
            for i in 1..n {
                for j in (i + 1)..=n {
                    // e_i + e_j: ones on i..j-1, twos on j..n-1, one on n
                    let mut bump: Vec<(usize, i64)> = (j..n).map(|k| (k, 2)).collect();
                    bump.push((n, 1));
                    positive.push(interval(i, j - 1, &bump));
                }
            }
        }
        Series::D => {
            for i in 1..n {
                for j in (i + 1)..=n {
                    positive.push(interval(i, j - 1, &[])); // e_i - e_j
                }
            }
            for i in 1..n {
                // e_i + e_n = alpha_i + ... + alpha_{n-2} + alpha_n
                let mut v = vec![0i64; n];
                for k in i..=n.saturating_sub(2) {
                    v[k - 1] += 1;
                }
                v[n - 1] += 1;
                positive.push(v);
            }
            for i in 1..n {
                for j in (i + 1)..n {
                    // e_i + e_j (j < n): ones on i..j-1, twos on j..n-2,
                    // plus alpha_{n-1} + alpha_n
                    let mut v = vec![0i64; n];
                    for k in i..j {
                        v[k - 1] += 1;
                    }
                    for k in j..=n.saturating_sub(2) {
                        v[k - 1] += 2;
                    }
                    v[n - 2] += 1;
                    v[n - 1] += 1;
                    positive.push(v);
                }
            }
        }
    }
    positive.sort();
    positive.dedup();
    let expected = match series {
        Series::A => n * (n + 1) / 2,
        Series::B | Series::C => n * n,
        Series::D => n * (n - 1),
    };
    if positive.len() != expected {
        return Err(EngineError::Invariant(format!(
            "generated {} positive roots for {series:?}_{n}, expected {expected}",
            positive.len()
        )));
    }
    Ok(RootSystem {
        series,
        rank,
        positive,
    })
}

/// A generalized flag specification: a root system with the simple roots of
/// the isotropy subalgebra marked.
#[derive(Debug, Clone)]
pub struct FlagSpec {
    pub system: RootSystem,
    /// Sorted 0-based indices of the simple roots spanning R_K.
    pub pi_k: Vec<usize>,
}

impl FlagSpec {
    pub fn new(system: RootSystem, mut pi_k: Vec<usize>) -> Result<Self, EngineError> {
        pi_k.sort_unstable();
        pi_k.dedup();
        if pi_k.iter().any(|&i| i >= system.rank) {
            return Err(EngineError::Input(
                "pi_K index out of range for the root system".into(),
            ));
        }
        Ok(FlagSpec { system, pi_k })
    }

    /// Sorted indices of the complementary simple roots.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.system.rank)
            .filter(|i| !self.pi_k.contains(i))
            .collect()
    }
}

/// One fiber of the restriction map: all complementary positive roots with
/// the same coefficients on the complementary simple roots.
#[derive(Debug, Clone, serde::Serialize)]
pub struct TRootClass {
    /// The shared complementary coefficient tuple.
    pub xi: Vec<i64>,
    /// Full coefficient vectors of the member roots.
    pub members: Vec<Vec<i64>>,
    /// Real dimension of the isotropy summand: 2 per member root.
    pub dim: usize,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct TRootTable {
    pub complement: Vec<usize>,
    pub classes: Vec<TRootClass>,
}

/// Groups the complementary positive roots by their restriction to the
/// torus center.
pub fn troots(spec: &FlagSpec) -> Result<TRootTable, EngineError> {
    let complement = spec.complement();
    if complement.is_empty() {
        return Err(EngineError::Input(
            "pi_K covers every simple root; R_M is empty (not a flag manifold)".into(),
        ));
    }
    let mut groups: BTreeMap<Vec<i64>, Vec<Vec<i64>>> = BTreeMap::new();
    for root in &spec.system.positive {
        let key: Vec<i64> = complement.iter().map(|&i| root[i]).collect();
        if key.iter().all(|&c| c == 0) {
            continue; // root of R_K
        }
        groups.entry(key).or_default().push(root.clone());
    }
    let classes = groups
        .into_iter()
        .map(|(xi, members)| TRootClass {
            dim: 2 * members.len(),
            xi,
            members,
        })
        .collect();
    Ok(TRootTable {
        complement,
        classes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum SplitStatus {
    /// A 2-dimensional summand always splits into two invariant lines in
    /// the M-space.
    SplitIntoLines,
    /// Higher-dimensional summands may or may not split; only a matrix
    /// realization can decide.
    Unknown,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct SummandShape {
    pub dim: usize,
    pub split: SplitStatus,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct MSpaceShape {
    /// Number of mutually-equivalent invariant lines coming from the torus
    /// directions.
    pub lines: usize,
    pub summands: Vec<SummandShape>,
}

/// Combinatorial shape of the M-space isotropy decomposition.
pub fn mspace_shape(spec: &FlagSpec) -> Result<MSpaceShape, EngineError> {
    let table = troots(spec)?;
    let summands = table
        .classes
        .iter()
        .map(|c| SummandShape {
            dim: c.dim,
            split: if c.dim == 2 {
                SplitStatus::SplitIntoLines
            } else {
                SplitStatus::Unknown
            },
        })
        .collect();
    Ok(MSpaceShape {
        lines: table.complement.len(),
        summands,
    })
}

/// Which case of the M-space theorem applies to a realized pair
/// (flag G/K, M-space G/K_1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MSpaceCase {
    /// Every flag isotropy summand stays irreducible over k_1.
    AllIrreducible,
    /// Every flag summand that stays irreducible has dimension > 2.
    SplitPlanes,
}

/// Validates a realized flag/M-space pair: same algebra, k_1 <= k,
/// n = s (+) m orthogonally. Returns the torus complement s.
fn validate_pair(
    flag: &HomogeneousSpace,
    mspace: &HomogeneousSpace,
) -> Result<Subspace, EngineError> {
    let dim = flag.algebra.dim;
    if mspace.algebra.dim != dim {
        return Err(EngineError::Input("pair built over different algebras".into()));
    }
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                if flag.algebra.c(i, j, k) != mspace.algebra.c(i, j, k) {
                    return Err(EngineError::Input(
                        "pair built over different algebras".into(),
                    ));
                }
            }
        }
    }
    for b in &mspace.h.basis {
        if !flag.h.contains(b) {
            return Err(EngineError::Input("k_1 is not contained in k".into()));
        }
    }
    // s = orthogonal complement of k_1 inside k.
    let kdim = flag.h.dim();
    let s_basis: Vec<Vec<Q>> = if mspace.h.dim() == 0 {
        flag.h.basis.clone()
    } else {
        let rows: Vec<Vec<Q>> = mspace
            .h
            .basis
            .iter()
            .map(|b1| {
                (0..kdim)
                    .map(|a| mspace.inner.eval(&flag.h.basis[a], b1))
                    .collect()
            })
            .collect();
        Mat::from_rows(rows)
            .nullspace()
            .into_iter()
            .map(|coords| flag.h.from_coordinates(&coords))
            .collect()
    };
    let s = Subspace::new(dim, s_basis)?;
    if s.dim() + flag.dim_m() != mspace.dim_m() {
        return Err(EngineError::Input(
            "n does not decompose as s + m for this pair".into(),
        ));
    }
    for b in s.basis.iter().chain(&flag.m.basis) {
        if !mspace.m.contains(b) {
            return Err(EngineError::Input(
                "n does not decompose as s + m for this pair".into(),
            ));
        }
    }
    Ok(s)
}

/// Decides which theorem case covers the pair; errors when neither does.
pub fn mspace_case(
    flag: &HomogeneousSpace,
    mspace: &HomogeneousSpace,
) -> Result<MSpaceCase, EngineError> {
    validate_pair(flag, mspace)?;
    let mut irreducible = Vec::with_capacity(flag.summands.len());
    for sub in &flag.summands {
        let comm = mspace.symmetric_commutant(sub)?;
        irreducible.push(comm.len() == 1);
    }
    if irreducible.iter().all(|&b| b) {
        return Ok(MSpaceCase::AllIrreducible);
    }
    let case2 = flag
        .summands
        .iter()
        .zip(&irreducible)
        .all(|(sub, &irr)| !irr || sub.dim() > 2);
    if case2 {
        Ok(MSpaceCase::SplitPlanes)
    } else {
        Err(EngineError::NotApplicable(
            "a flag summand of dimension <= 2 stays irreducible while another splits".into(),
        ))
    }
}

/// Equigeodesic verdict on the M-space G/K_1 via the flag manifold:
/// case (1): x in s, or x in m and equigeodesic on G/K;
/// case (2): additionally each 2-dimensional flag summand m_i must satisfy
/// P_i(x) = 0 or [x, m_i]_n = 0.
pub fn mspace_equigeo_classify(
    flag: &HomogeneousSpace,
    flag_ps: &MetricParamSpace,
    mspace: &HomogeneousSpace,
    x: &[Q],
) -> Result<bool, EngineError> {
    let case = mspace_case(flag, mspace)?;
    if mspace.m_coordinates(x).is_none() {
        return Err(EngineError::Input("vector does not lie in n".into()));
    }
    let xm = flag.project_m(x);
    let xs: Vec<Q> = x.iter().zip(&xm).map(|(a, b)| a - b).collect();
    if xm.iter().all(Zero::is_zero) {
        return Ok(true);
    }
    if !xs.iter().all(Zero::is_zero) {
        return Ok(false);
    }
    if !equigeodesic_check(flag, flag_ps, &xm)?.holds {
        return Ok(false);
    }
    if case == MSpaceCase::SplitPlanes {
        for (i, sub) in flag.summands.iter().enumerate() {
            if sub.dim() != 2 {
                continue;
            }
            let pix = flag.project_summand(i, &xm);
            if pix.iter().all(Zero::is_zero) {
                continue;
            }
            for b in &sub.basis {
                let br = flag.algebra.bracket(&xm, b)?;
                if !mspace.project_m(&br).iter().all(Zero::is_zero) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
