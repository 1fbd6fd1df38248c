//! Reductive decompositions, isotropy summands, equivariant-map solving and
//! the real/complex/quaternionic classification of commutants.

use crate::algebra::{LieAlgebra, Subspace, SymForm};
use crate::error::EngineError;
use crate::linalg::{rational_roots, Mat};
use crate::scalar::{q, sqrt_exact, Q};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Division-algebra tag for a space of equivariant maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum DType {
    Zero,
    R,
    C,
    H,
}

impl DType {
    pub fn from_dim(d: usize) -> Result<DType, EngineError> {
        match d {
            0 => Ok(DType::Zero),
            1 => Ok(DType::R),
            2 => Ok(DType::C),
            4 => Ok(DType::H),
            other => Err(EngineError::Invariant(format!(
                "equivariant map space has dimension {other}, expected 0, 1, 2 or 4"
            ))),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            DType::Zero => 0,
            DType::R => 1,
            DType::C => 2,
            DType::H => 4,
        }
    }
}

/// Basis of the space of equivariant maps from summand `source` to summand
/// `target`, in the summands' own bases.
#[derive(Debug, Clone)]
pub struct IntertwinerSpace {
    pub source: usize,
    pub target: usize,
    pub basis_maps: Vec<Mat>,
    pub dtype: DType,
}

/// A linear map carrying an exact sqrt(factor_sq) scale: the map it denotes
/// is sqrt(factor_sq) * mat. Perfect-square factors are folded into the
/// matrix so factor_sq = 1 whenever the scale is rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledMap {
    pub factor_sq: Q,
    pub mat: Mat,
}

impl ScaledMap {
    pub fn rational(mat: Mat) -> Self {
        ScaledMap {
            factor_sq: Q::one(),
            mat,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::rational(Mat::identity(n))
    }

    pub fn new(factor_sq: Q, mat: Mat) -> Self {
        match sqrt_exact(&factor_sq) {
            Some(r) => ScaledMap {
                factor_sq: Q::one(),
                mat: mat.scale(&r),
            },
            None => ScaledMap { factor_sq, mat },
        }
    }

    pub fn inverse(&self) -> Option<ScaledMap> {
        Some(ScaledMap::new(
            self.factor_sq.recip(),
            self.mat.inverse()?,
        ))
    }

    pub fn compose(&self, rhs: &ScaledMap) -> ScaledMap {
        ScaledMap::new(&self.factor_sq * &rhs.factor_sq, self.mat.mul(&rhs.mat))
    }
}

/// A homogeneous space at the Lie-algebra level: g = h + m with the isotropy
/// decomposition of m, equivalence classes and normalized intertwiners.
#[derive(Debug, Clone)]
pub struct HomogeneousSpace {
    pub algebra: LieAlgebra,
    pub h: Subspace,
    pub inner: SymForm,
    pub m: Subspace,
    pub summands: Vec<Subspace>,
    pub classes: Vec<Vec<usize>>,
    /// intertwiners[i][j] is the space of equivariant maps m_i -> m_j.
    pub intertwiners: Vec<Vec<IntertwinerSpace>>,
    /// normalized[p][q] = T_p^q (None across classes).
    normalized: Vec<Vec<Option<ScaledMap>>>,
    gram_m: Mat,
}

impl HomogeneousSpace {
    pub fn new(
        algebra: LieAlgebra,
        h: Subspace,
        inner: SymForm,
        hint: Option<Vec<Subspace>>,
        seed: u64,
    ) -> Result<Self, EngineError> {
        let dim = algebra.dim;
        if h.ambient_dim != dim || inner.mat.rows != dim {
            return Err(EngineError::Shape(
                "isotropy subalgebra / inner product dimension mismatch".into(),
            ));
        }
        if !inner.is_positive_definite() {
            return Err(EngineError::Input(
                "inner product is not positive-definite".into(),
            ));
        }
        if !algebra.check_ad_invariance(&inner) {
            return Err(EngineError::Input(
                "inner product is not ad-invariant".into(),
            ));
        }
        check_subalgebra(&algebra, &h)?;
        let m = reductive_split(&algebra, &h, &inner)?;
        let summands = match hint {
            Some(hinted) => {
                verify_decomposition(&algebra, &h, &inner, &m, &hinted)?;
                hinted
            }
            None => auto_decompose(&algebra, &h, &inner, &m, seed)?,
        };
        let summands = sort_summands(summands);
        let s = summands.len();
        let mut intertwiners = Vec::with_capacity(s);
        for i in 0..s {
            let mut row = Vec::with_capacity(s);
            for j in 0..s {
                row.push(solve_intertwiners(&algebra, &h, &summands, i, j)?);
            }
            intertwiners.push(row);
        }
        let classes = partition_classes(&intertwiners);
        let normalized =
            build_normalized_family(&inner, &summands, &intertwiners, &classes)?;
        let gram_m = gram(&inner, &m.basis);
        Ok(HomogeneousSpace {
            algebra,
            h,
            inner,
            m,
            summands,
            classes,
            intertwiners,
            normalized,
            gram_m,
        })
    }

    pub fn dim_m(&self) -> usize {
        self.m.dim()
    }

    /// Orthogonal projection of an ambient vector onto m (ambient output).
    pub fn project_m(&self, v: &[Q]) -> Vec<Q> {
        project(&self.inner, &self.m, &self.gram_m, v)
    }

    /// Orthogonal projection of an ambient vector onto h (ambient output).
    pub fn project_h(&self, v: &[Q]) -> Vec<Q> {
        let g = gram(&self.inner, &self.h.basis);
        project(&self.inner, &self.h, &g, v)
    }

    /// Orthogonal projection onto summand i (ambient output).
    pub fn project_summand(&self, i: usize, v: &[Q]) -> Vec<Q> {
        let sub = &self.summands[i];
        let g = gram(&self.inner, &sub.basis);
        project(&self.inner, sub, &g, v)
    }

    /// Coordinates of an ambient vector of m in the m-basis (None if v is
    /// not inside m).
    pub fn m_coordinates(&self, v: &[Q]) -> Option<Vec<Q>> {
        self.m.coordinates(v)
    }

    /// Matrix of ad(z) restricted to an invariant subspace, in that
    /// subspace's basis.
    pub fn ad_matrix(&self, z: &[Q], sub: &Subspace) -> Result<Mat, EngineError> {
        ad_matrix(&self.algebra, z, sub)
    }

    /// The normalized intertwiner T_p^q (zero map across classes).
    pub fn t_map(&self, p: usize, usize_q: usize) -> Option<&ScaledMap> {
        self.normalized[p][usize_q].as_ref()
    }

    /// Applies T_p^q to an ambient vector of m_p; returns the ambient image
    /// together with the sqrt-scale factor (factor_sq, vec): the actual
    /// image is sqrt(factor_sq) * vec. None for the zero map.
    pub fn t_apply(&self, p: usize, q_idx: usize, v: &[Q]) -> Option<(Q, Vec<Q>)> {
        let t = self.normalized[p][q_idx].as_ref()?;
        let coords = self.summands[p].coordinates(v)?;
        let img = t.mat.mul_vec(&coords);
        Some((t.factor_sq.clone(), self.summands[q_idx].from_coordinates(&img)))
    }

    /// Index of the class containing summand i.
    pub fn class_of(&self, i: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.contains(&i))
            .expect("summand index in some class")
    }

    pub fn gram_m(&self) -> &Mat {
        &self.gram_m
    }

    /// Basis of the symmetric (self-adjoint) part of the ad(h)-commutant of
    /// an invariant subspace, as matrices in the subspace's basis.
    pub fn symmetric_commutant(&self, sub: &Subspace) -> Result<Vec<Mat>, EngineError> {
        let ads: Vec<Mat> = self
            .h
            .basis
            .iter()
            .map(|z| ad_matrix(&self.algebra, z, sub))
            .collect::<Result<_, _>>()?;
        let g = gram(&self.inner, &sub.basis);
        Ok(symmetric_commutant(&ads, &g))
    }
}

/// m = orthogonal complement of h under inner; reductivity [h, m] <= m is
/// verified and a violation is reported as an invariant failure.
pub fn reductive_split(
    algebra: &LieAlgebra,
    h: &Subspace,
    inner: &SymForm,
) -> Result<Subspace, EngineError> {
    check_subalgebra(algebra, h)?;
    let dim = algebra.dim;
    let m = if h.dim() == 0 {
        Subspace::new(dim, Mat::identity(dim).nullspace_complement())?
    } else {
        // rows: (h_i, .) as linear functionals.
        let rows: Vec<Vec<Q>> = h
            .basis
            .iter()
            .map(|hb| {
                (0..dim)
                    .map(|j| {
                        (0..dim).fold(Q::zero(), |acc, i| acc + &hb[i] * &inner.mat[(i, j)])
                    })
                    .collect()
            })
            .collect();
        Subspace::new(dim, Mat::from_rows(rows).nullspace())?
    };
    if h.dim() + m.dim() != dim {
        return Err(EngineError::Invariant(
            "h + m does not fill the algebra (degenerate inner product?)".into(),
        ));
    }
    // Reductivity check.
    for hb in &h.basis {
        for mb in &m.basis {
            let w = algebra.bracket(hb, mb)?;
            if !m.contains(&w) {
                return Err(EngineError::Invariant(
                    "[h, m] leaves m; inner product is not Ad-invariant on this pair".into(),
                ));
            }
        }
    }
    Ok(m)
}

fn check_subalgebra(algebra: &LieAlgebra, h: &Subspace) -> Result<(), EngineError> {
    for (i, a) in h.basis.iter().enumerate() {
        for b in h.basis.iter().skip(i + 1) {
            let w = algebra.bracket(a, b)?;
            if !h.contains(&w) {
                return Err(EngineError::Structure(
                    "h is not closed under the bracket".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Matrix of ad(z) restricted to `sub` in sub's basis; errors if the bracket
/// leaves the subspace.
pub fn ad_matrix(algebra: &LieAlgebra, z: &[Q], sub: &Subspace) -> Result<Mat, EngineError> {
    let mut cols = Vec::with_capacity(sub.dim());
    for b in &sub.basis {
        let w = algebra.bracket(z, b)?;
        let coords = sub.coordinates(&w).ok_or_else(|| {
            EngineError::Invariant("ad(z) maps a basis vector outside the subspace".into())
        })?;
        cols.push(coords);
    }
    Ok(Mat::from_rows(cols).transpose())
}

fn gram(inner: &SymForm, basis: &[Vec<Q>]) -> Mat {
    Mat::from_fn(basis.len(), basis.len(), |i, j| {
        inner.eval(&basis[i], &basis[j])
    })
}

fn project(inner: &SymForm, sub: &Subspace, g: &Mat, v: &[Q]) -> Vec<Q> {
    if sub.dim() == 0 {
        return vec![Q::zero(); sub.ambient_dim];
    }
    let rhs: Vec<Q> = sub.basis.iter().map(|b| inner.eval(b, v)).collect();
    let coords = g.solve(&rhs).expect("Gram matrix is invertible");
    sub.from_coordinates(&coords)
}

/// Solution space of T ad(z)|_i = ad(z)|_j T over all h-basis z, as a basis
/// of d_j x d_i matrices (row-major unknown ordering, deterministic).
fn solve_intertwiners(
    algebra: &LieAlgebra,
    h: &Subspace,
    summands: &[Subspace],
    i: usize,
    j: usize,
) -> Result<IntertwinerSpace, EngineError> {
    let di = summands[i].dim();
    let dj = summands[j].dim();
    let ads_i: Vec<Mat> = h
        .basis
        .iter()
        .map(|z| ad_matrix(algebra, z, &summands[i]))
        .collect::<Result<_, _>>()?;
    let ads_j: Vec<Mat> = h
        .basis
        .iter()
        .map(|z| ad_matrix(algebra, z, &summands[j]))
        .collect::<Result<_, _>>()?;
    let unknowns = di * dj;
    let mut rows = Vec::new();
    for (ai, aj) in ads_i.iter().zip(&ads_j) {
        // (T ai - aj T)[r][c] = 0 for each r < dj, c < di.
        for r in 0..dj {
            for c in 0..di {
                let mut row = vec![Q::zero(); unknowns];
                for k in 0..di {
                    row[r * di + k] += ai[(k, c)].clone();
                }
                for k in 0..dj {
                    row[k * di + c] -= aj[(r, k)].clone();
                }
                rows.push(row);
            }
        }
    }
    let basis_vecs = if rows.is_empty() {
        // h = 0: every map is equivariant.
        Mat::zero(1, unknowns).nullspace()
    } else {
        Mat::from_rows(rows).nullspace()
    };
    let basis_maps: Vec<Mat> = basis_vecs
        .iter()
        .map(|v| Mat::from_fn(dj, di, |r, c| v[r * di + c].clone()))
        .collect();
    let dtype = DType::from_dim(basis_maps.len())?;
    Ok(IntertwinerSpace {
        source: i,
        target: j,
        basis_maps,
        dtype,
    })
}

/// Rescales a nonzero intertwiner so it preserves the inner product; the
/// scale is sqrt((u,u)/(Tu,Tu)), tracked exactly via ScaledMap.
pub fn normalize_intertwiner(
    inner: &SymForm,
    source: &Subspace,
    target: &Subspace,
    t: &Mat,
) -> Result<ScaledMap, EngineError> {
    if t.is_zero() {
        return Err(EngineError::Degenerate(
            "cannot normalize the zero intertwiner".into(),
        ));
    }
    let gs = gram(inner, &source.basis);
    let gt = gram(inner, &target.basis);
    // (Tu, Tv) in source coords: T^t Gt T; the ratio a = (u,u)/(Tu,Tu) must
    // be constant, i.e. T^t Gt T = (1/a) Gs.
    let pulled = t.transpose().mul(&gt).mul(t);
    // find a from the first nonzero entry of Gs
    let mut a = None;
    'outer: for r in 0..gs.rows {
        for c in 0..gs.cols {
            if !gs[(r, c)].is_zero() {
                if pulled[(r, c)].is_zero() {
                    return Err(EngineError::Degenerate(
                        "intertwiner is not injective".into(),
                    ));
                }
                a = Some(&gs[(r, c)] / &pulled[(r, c)]);
                break 'outer;
            }
        }
    }
    let a = a.ok_or_else(|| EngineError::Degenerate("degenerate inner product".into()))?;
    if pulled.scale(&a) != gs {
        return Err(EngineError::Invariant(
            "intertwiner does not scale the inner product uniformly".into(),
        ));
    }
    Ok(ScaledMap::new(a, t.clone()))
}

fn partition_classes(intertwiners: &[Vec<IntertwinerSpace>]) -> Vec<Vec<usize>> {
    let s = intertwiners.len();
    let mut class_id: Vec<Option<usize>> = vec![None; s];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..s {
        if class_id[i].is_some() {
            continue;
        }
        let id = classes.len();
        class_id[i] = Some(id);
        let mut members = vec![i];
        for j in (i + 1)..s {
            if class_id[j].is_none() && intertwiners[i][j].dtype != DType::Zero {
                class_id[j] = Some(id);
                members.push(j);
            }
        }
        classes.push(members);
    }
    // Transitivity sanity: equivalence within a class must be witnessed for
    // every pair, not only against the representative.
    for class in &classes {
        for (a, &p) in class.iter().enumerate() {
            for &r in class.iter().skip(a + 1) {
                assert!(
                    intertwiners[p][r].dtype != DType::Zero,
                    "equivalence is not transitive between summands {p} and {r}"
                );
            }
        }
    }
    classes
}

/// Canonical representative of an intertwiner space: the basis map whose
/// image of the first source basis vector has the earliest nonzero
/// coordinate, scaled so that entry is +1.
fn canonical_representative(space: &IntertwinerSpace) -> Mat {
    let best = space
        .basis_maps
        .iter()
        .min_by_key(|m| {
            (0..m.rows)
                .position(|r| !m[(r, 0)].is_zero())
                .unwrap_or(usize::MAX)
        })
        .expect("nonzero intertwiner space");
    let lead = (0..best.rows)
        .find_map(|r| {
            let v = &best[(r, 0)];
            if v.is_zero() {
                None
            } else {
                Some(v.clone())
            }
        })
        .expect("intertwiner from an irreducible summand is injective");
    best.scale(&lead.recip())
}

fn build_normalized_family(
    inner: &SymForm,
    summands: &[Subspace],
    intertwiners: &[Vec<IntertwinerSpace>],
    classes: &[Vec<usize>],
) -> Result<Vec<Vec<Option<ScaledMap>>>, EngineError> {
    let s = summands.len();
    let mut table: Vec<Vec<Option<ScaledMap>>> = vec![vec![None; s]; s];
    for (p, row) in table.iter_mut().enumerate() {
        row[p] = Some(ScaledMap::identity(summands[p].dim()));
    }
    for class in classes {
        let j1 = class[0];
        // T_{j1}^{jk}, normalized.
        let mut from_rep: Vec<(usize, ScaledMap)> = vec![(
            j1,
            ScaledMap::identity(summands[j1].dim()),
        )];
        for &jk in class.iter().skip(1) {
            let rep = canonical_representative(&intertwiners[j1][jk]);
            let t = normalize_intertwiner(inner, &summands[j1], &summands[jk], &rep)?;
            from_rep.push((jk, t));
        }
        for (kl, tl) in &from_rep {
            let tl_inv = tl.inverse().ok_or_else(|| {
                EngineError::Invariant("normalized intertwiner is singular".into())
            })?;
            for (kk, tk) in &from_rep {
                table[*kl][*kk] = Some(tk.compose(&tl_inv));
            }
        }
    }
    // Exact inverse relation T_q^p = (T_p^q)^{-1}.
    for (p, row) in table.iter().enumerate() {
        for (r, entry) in row.iter().enumerate() {
            if let (Some(a), Some(b)) = (entry, &table[r][p]) {
                let prod = a.compose(b);
                assert_eq!(
                    prod,
                    ScaledMap::identity(summands[r].dim()),
                    "T_q^p is not the inverse of T_p^q"
                );
            }
        }
    }
    Ok(table)
}

/// Basis of {C : C A_z = A_z C for all z, G C = C^t G} (self-adjoint
/// commutant in the given basis with Gram matrix G).
fn symmetric_commutant(ads: &[Mat], g: &Mat) -> Vec<Mat> {
    let d = g.rows;
    let unknowns = d * d;
    let mut rows = Vec::new();
    for a in ads {
        for r in 0..d {
            for c in 0..d {
                let mut row = vec![Q::zero(); unknowns];
                for k in 0..d {
                    row[r * d + k] += a[(k, c)].clone();
                    row[k * d + c] -= a[(r, k)].clone();
                }
                rows.push(row);
            }
        }
    }
    // G C - C^t G = 0.
    for r in 0..d {
        for c in 0..d {
            let mut row = vec![Q::zero(); unknowns];
            for k in 0..d {
                row[k * d + c] += g[(r, k)].clone();
                row[k * d + r] -= g[(k, c)].clone();
            }
            rows.push(row);
        }
    }
    Mat::from_rows(rows)
        .nullspace()
        .into_iter()
        .map(|v| Mat::from_fn(d, d, |r, c| v[r * d + c].clone()))
        .collect()
}

fn is_scalar_multiple_of_identity(m: &Mat) -> bool {
    let c = m[(0, 0)].clone();
    (0..m.rows).all(|i| (0..m.cols).all(|j| m[(i, j)] == if i == j { c.clone() } else { Q::zero() }))
}

/// Verifies a hinted decomposition exactly.
fn verify_decomposition(
    algebra: &LieAlgebra,
    h: &Subspace,
    inner: &SymForm,
    m: &Subspace,
    hinted: &[Subspace],
) -> Result<(), EngineError> {
    let total: usize = hinted.iter().map(|s| s.dim()).sum();
    if total != m.dim() {
        return Err(EngineError::DecompositionInvalid(format!(
            "hinted dimensions sum to {total}, expected {}",
            m.dim()
        )));
    }
    let mut all_rows = Vec::new();
    for (idx, sub) in hinted.iter().enumerate() {
        if sub.ambient_dim != algebra.dim {
            return Err(EngineError::DecompositionInvalid(format!(
                "summand {idx} has wrong ambient dimension"
            )));
        }
        for b in &sub.basis {
            if !m.contains(b) {
                return Err(EngineError::DecompositionInvalid(format!(
                    "summand {idx} is not contained in m"
                )));
            }
            all_rows.push(b.clone());
        }
        // ad(h)-invariance.
        for z in &h.basis {
            for b in &sub.basis {
                let w = algebra.bracket(z, b)?;
                if !sub.contains(&w) {
                    return Err(EngineError::DecompositionInvalid(format!(
                        "summand {idx} is not ad(h)-invariant"
                    )));
                }
            }
        }
        // Irreducibility: symmetric commutant is scalars only.
        let ads: Vec<Mat> = h
            .basis
            .iter()
            .map(|z| ad_matrix(algebra, z, sub))
            .collect::<Result<_, _>>()?;
        let comm = symmetric_commutant(&ads, &gram(inner, &sub.basis));
        if comm.len() != 1 {
            return Err(EngineError::DecompositionInvalid(format!(
                "summand {idx} is reducible (symmetric commutant dimension {})",
                comm.len()
            )));
        }
    }
    // Pairwise orthogonality.
    for (i, a) in hinted.iter().enumerate() {
        for b in hinted.iter().skip(i + 1) {
            for u in &a.basis {
                for v in &b.basis {
                    if !inner.eval(u, v).is_zero() {
                        return Err(EngineError::DecompositionInvalid(
                            "hinted summands are not pairwise orthogonal".into(),
                        ));
                    }
                }
            }
        }
    }
    if Mat::from_rows(all_rows).rank() != m.dim() {
        return Err(EngineError::DecompositionInvalid(
            "hinted summands do not span m".into(),
        ));
    }
    Ok(())
}

/// Hint-free decomposition: recursively split invariant subspaces along
/// exact rational eigenspaces of self-adjoint commutant elements. Floating
/// point is never consulted; candidate splitters come from the commutant
/// basis itself and from seeded random small-integer combinations, and
/// rational eigenvalues are extracted exactly from characteristic
/// polynomials.
fn auto_decompose(
    algebra: &LieAlgebra,
    h: &Subspace,
    inner: &SymForm,
    m: &Subspace,
    seed: u64,
) -> Result<Vec<Subspace>, EngineError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut leaves = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(sub) = stack.pop() {
        let ads: Vec<Mat> = h
            .basis
            .iter()
            .map(|z| ad_matrix(algebra, z, &sub))
            .collect::<Result<_, _>>()?;
        let g = gram(inner, &sub.basis);
        let comm = symmetric_commutant(&ads, &g);
        if comm.len() == 1 {
            leaves.push(sub);
            continue;
        }
        let d = sub.dim();
        type SplitPair = (Vec<Vec<Q>>, Vec<Vec<Q>>);
        let mut split: Option<SplitPair> = None;
        // Candidate splitters: commutant basis elements first, then random
        // small-integer combinations.
        let mut candidates: Vec<Mat> = comm
            .iter()
            .filter(|c| !is_scalar_multiple_of_identity(c))
            .cloned()
            .collect();
        for _ in 0..64 {
            let mut acc = Mat::zero(d, d);
            for c in &comm {
                let coef = q(rng.gen_range(-4i64..=4));
                acc = acc.add(&c.scale(&coef));
            }
            if !acc.is_zero() && !is_scalar_multiple_of_identity(&acc) {
                candidates.push(acc);
            }
        }
        'search: for cand in &candidates {
            let cp = cand.char_poly();
            for root in rational_roots(&cp) {
                let shifted = cand.sub(&Mat::identity(d).scale(&root));
                let ker = shifted.nullspace();
                if ker.is_empty() || ker.len() == d {
                    continue;
                }
                // Complement of ker inside sub, orthogonal under the Gram.
                let ker_rows = Mat::from_rows(ker.clone());
                let comp = ker_rows.mul(&g).nullspace();
                if comp.len() + ker.len() != d {
                    continue;
                }
                split = Some((ker, comp));
                break 'search;
            }
        }
        match split {
            Some((a, b)) => {
                let to_ambient = |coords: Vec<Vec<Q>>| -> Result<Subspace, EngineError> {
                    Subspace::new(
                        sub.ambient_dim,
                        coords.into_iter().map(|c| sub.from_coordinates(&c)).collect(),
                    )
                };
                stack.push(to_ambient(a)?);
                stack.push(to_ambient(b)?);
            }
            None => {
                return Err(EngineError::UndeterminedDecomposition(
                    "no rational splitter found for a reducible invariant subspace".into(),
                ))
            }
        }
    }
    Ok(leaves)
}

/// Deterministic ordering: by dimension, then by pivot columns of the
/// row-reduced ambient basis.
fn sort_summands(mut summands: Vec<Subspace>) -> Vec<Subspace> {
    let key = |s: &Subspace| -> (usize, Vec<usize>) {
        let mut m = Mat::from_rows(s.basis.clone());
        let pivots = m.rref();
        (s.dim(), pivots)
    };
    summands.sort_by_key(key);
    summands
}

// Small extension used by reductive_split for the h = 0 case.
trait FullBasis {
    fn nullspace_complement(&self) -> Vec<Vec<Q>>;
}

impl FullBasis for Mat {
    fn nullspace_complement(&self) -> Vec<Vec<Q>> {
        (0..self.rows)
            .map(|i| crate::algebra::unit(self.rows, i))
            .collect()
    }
}
