//! The Heisenberg group `H(Z^g)`, its finite quotient `H(Z_N^g)`, the
//! Schrödinger representation, induced representations from Lagrangian
//! submodules and the discrete Fourier transforms between them.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::linalg::{Matrix, RowSpace, SparseRow};
use crate::scalar::CycloScalar;
use crate::theta::{intersection, op_pq, SymplecticMatrix, ThetaOperator, ThetaSpace};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HeisElement {
    pub p: Vec<i64>,
    pub q: Vec<i64>,
    pub k: i64,
}

impl HeisElement {
    pub fn new(p: Vec<i64>, q: Vec<i64>, k: i64) -> Result<Self, AlgebraError> {
        if p.len() != q.len() {
            return Err(AlgebraError::DimensionMismatch { expected: p.len(), got: q.len() });
        }
        Ok(HeisElement { p, q, k })
    }

    pub fn identity(g: usize) -> Self {
        HeisElement { p: vec![0; g], q: vec![0; g], k: 0 }
    }

    pub fn central(g: usize, k: i64) -> Self {
        HeisElement { p: vec![0; g], q: vec![0; g], k }
    }

    /// `(x, k)` for `x = (p, q) ∈ Z^{2g}`.
    pub fn from_pair(x: &[i64], k: i64) -> Self {
        let g = x.len() / 2;
        HeisElement { p: x[..g].to_vec(), q: x[g..].to_vec(), k }
    }

    pub fn genus(&self) -> usize {
        self.p.len()
    }

    /// The homology coordinates `(p, q)` concatenated.
    pub fn pair(&self) -> Vec<i64> {
        self.p.iter().chain(&self.q).copied().collect()
    }

    pub fn inverse(&self) -> Self {
        HeisElement { p: self.p.iter().map(|x| -x).collect(), q: self.q.iter().map(|x| -x).collect(), k: -self.k }
    }

    /// `(h_*(p, q), k)`.
    pub fn transform(&self, h: &SymplecticMatrix) -> Self {
        Self::from_pair(&h.apply(&self.pair()), self.k)
    }
}

/// `(p,q,k)(p',q',k') = (p+p', q+q', k+k'+Σ(p_j q'_j − q_j p'_j))`.
pub fn heis_mul(x: &HeisElement, y: &HeisElement) -> Result<HeisElement, AlgebraError> {
    if x.genus() != y.genus() {
        return Err(AlgebraError::DimensionMismatch { expected: x.genus(), got: y.genus() });
    }
    let det: i64 = (0..x.genus()).map(|j| x.p[j] * y.q[j] - x.q[j] * y.p[j]).sum();
    Ok(HeisElement {
        p: x.p.iter().zip(&y.p).map(|(a, b)| a + b).collect(),
        q: x.q.iter().zip(&y.q).map(|(a, b)| a + b).collect(),
        k: x.k + y.k + det,
    })
}

/// Canonical representative in `H(Z_N^g)`.
///
/// Writing `p_i = a N + r` we split off `(a N e_i, 0, 0)` on the right, which
/// shifts `k` by `-a N q_i`; then `q_i = b N + r` splits off `(0, b N e_i, 0)`,
/// shifting `k` by `+b N p_i` with the already reduced `p`. Finally `k` is
/// reduced mod `2N`.
pub fn finite_normal_form(x: &HeisElement, n: u32) -> HeisElement {
    let n = n as i64;
    let mut p = x.p.clone();
    let q = x.q.clone();
    let mut k = x.k;
    for i in 0..p.len() {
        let (a, r) = p[i].div_mod_floor(&n);
        k -= a * n * q[i];
        p[i] = r;
    }
    let mut q = q;
    for i in 0..q.len() {
        let (b, r) = q[i].div_mod_floor(&n);
        k += b * n * p[i];
        q[i] = r;
    }
    HeisElement { p, q, k: k.rem_euclid(2 * n) }
}

/// Enumeration of the `2N^{2g+1}` canonical elements of `H(Z_N^g)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiniteHeisenberg {
    pub n: u32,
    pub g: usize,
}

impl FiniteHeisenberg {
    pub fn new(n: u32, g: usize) -> Result<Self, AlgebraError> {
        ThetaSpace::new(n, g)?;
        Ok(FiniteHeisenberg { n, g })
    }

    pub fn order(&self) -> usize {
        2 * (self.n as usize).pow(2 * self.g as u32 + 1)
    }

    /// Index of the normal form of `x`; `k` is the fastest-varying coordinate.
    pub fn index(&self, x: &HeisElement) -> usize {
        let x = finite_normal_form(x, self.n);
        let n = self.n as usize;
        let pq = x.p.iter().chain(&x.q).fold(0usize, |acc, &v| acc * n + v as usize);
        pq * 2 * n + x.k as usize
    }

    pub fn element(&self, idx: usize) -> HeisElement {
        let n = self.n as usize;
        let k = (idx % (2 * n)) as i64;
        let mut rest = idx / (2 * n);
        let mut pair = vec![0i64; 2 * self.g];
        for slot in pair.iter_mut().rev() {
            *slot = (rest % n) as i64;
            rest /= n;
        }
        HeisElement::from_pair(&pair, k)
    }

    pub fn elements(&self) -> impl Iterator<Item = HeisElement> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }
}

/// Finitely supported element of the group algebra `C[H(Z_N^g)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisAlgebraVector {
    n: u32,
    terms: BTreeMap<HeisElement, CycloScalar>,
}

impl HeisAlgebraVector {
    pub fn zero(n: u32) -> Self {
        HeisAlgebraVector { n, terms: BTreeMap::new() }
    }

    pub fn basis(n: u32, x: &HeisElement) -> Self {
        let mut v = Self::zero(n);
        v.add_term(x, &CycloScalar::one(n));
        v
    }

    pub fn add_term(&mut self, x: &HeisElement, c: &CycloScalar) {
        if c.is_zero() {
            return;
        }
        let key = finite_normal_form(x, self.n);
        let sum = match self.terms.get(&key) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&HeisElement, &CycloScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        let mut out = Self::zero(self.n);
        for (x, a) in &self.terms {
            for (y, b) in &other.terms {
                out.add_term(&heis_mul(x, y)?, &(a * b));
            }
        }
        Ok(out)
    }
}

/// `t^k O_pq`, the Schrödinger representation of `(p, q, k)`.
pub fn schrodinger_matrix(x: &HeisElement, n: u32) -> Result<ThetaOperator, AlgebraError> {
    let space = ThetaSpace::new(n, x.genus())?;
    Ok(op_pq(space, &x.p, &x.q)?.scale(&CycloScalar::t_power(n, x.k)))
}

fn generators(g: usize) -> Vec<HeisElement> {
    let mut gens = Vec::with_capacity(2 * g + 1);
    for i in 0..2 * g {
        let mut e = vec![0i64; 2 * g];
        e[i] = 1;
        gens.push(HeisElement::from_pair(&e, 0));
    }
    gens.push(HeisElement::central(g, 1));
    gens
}

/// Dimension of `{X : X M(x) = M(x) X}` over the generators of the group.
pub fn commutant_dimension(n: u32, g: usize) -> Result<usize, AlgebraError> {
    let space = ThetaSpace::new(n, g)?;
    let dim = space.dim();
    let mut rows = RowSpace::new(n, dim * dim);
    for x in generators(g) {
        let m = schrodinger_matrix(&x, n)?;
        let m = m.matrix();
        for r in 0..dim {
            for c in 0..dim {
                // (XM - MX)[r][c]; unknown X[a][b] sits at a * dim + b
                let mut row = SparseRow::new();
                for k in 0..dim {
                    let mk = m.get(k, c);
                    if !mk.is_zero() {
                        accumulate(&mut row, r * dim + k, mk);
                    }
                    let mr = m.get(r, k);
                    if !mr.is_zero() {
                        accumulate(&mut row, k * dim + c, &-mr);
                    }
                }
                rows.insert(row);
            }
        }
    }
    Ok(dim * dim - rows.rank())
}

fn accumulate(row: &mut SparseRow, col: usize, c: &CycloScalar) {
    let sum = match row.get(&col) {
        Some(old) => old + c,
        None => c.clone(),
    };
    if sum.is_zero() {
        row.remove(&col);
    } else {
        row.insert(col, sum);
    }
}

/// Rank-`g` isotropic direct summand of `Z^{2g}`, stored by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lagrangian {
    g: usize,
    generators: Vec<Vec<i64>>,
}

fn det_i128(mut m: Vec<Vec<i128>>) -> i128 {
    // Bareiss fraction-free elimination
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl Lagrangian {
    /// Accepts `g` generators of length `2g`. A rank-`g` submodule is a direct
    /// summand exactly when the gcd of its maximal minors is 1.
    pub fn new(generators: Vec<Vec<i64>>) -> Result<Self, AlgebraError> {
        let g = generators.len();
        if g == 0 {
            return Err(AlgebraError::DimensionMismatch { expected: 1, got: 0 });
        }
        for v in &generators {
            if v.len() != 2 * g {
                return Err(AlgebraError::DimensionMismatch { expected: 2 * g, got: v.len() });
            }
        }
        for a in &generators {
            for b in &generators {
                if intersection(a, b) != 0 {
                    return Err(AlgebraError::NotIsotropic);
                }
            }
        }
        let gcd = combinations(2 * g, g).into_iter().fold(0i128, |acc, rows| {
            let minor: Vec<Vec<i128>> =
                rows.iter().map(|&r| generators.iter().map(|v| v[r] as i128).collect()).collect();
            acc.gcd(&det_i128(minor))
        });
        if gcd != 1 {
            return Err(AlgebraError::NotPrimitive);
        }
        Ok(Lagrangian { g, generators })
    }

    /// `{(0, q)}`, spanned by the `b`-curves.
    pub fn standard(g: usize) -> Self {
        let generators = (0..g)
            .map(|i| {
                let mut v = vec![0i64; 2 * g];
                v[g + i] = 1;
                v
            })
            .collect();
        Lagrangian { g, generators }
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn image(&self, h: &SymplecticMatrix) -> Lagrangian {
        Lagrangian { g: self.g, generators: self.generators.iter().map(|v| h.apply(v)).collect() }
    }

    /// Integer lifts `Σ c_i v_i` for `c ∈ [0, N)^g`, one per element of the mod-`N` reduction.
    pub fn lifts(&self, n: u32) -> Vec<(Vec<i64>, Vec<i64>)> {
        let space = ThetaSpace { n, g: self.g };
        space
            .indices()
            .map(|c| {
                let mut v = vec![0i64; 2 * self.g];
                for (ci, gen) in c.iter().zip(&self.generators) {
                    for (slot, x) in v.iter_mut().zip(gen) {
                        *slot += ci * x;
                    }
                }
                (c, v)
            })
            .collect()
    }
}

/// The quotient `H_{N,g}(L)` of the group algebra by `χ_L(u_1) u − u u_1`.
#[derive(Clone, Debug)]
pub struct InducedSpace {
    n: u32,
    group: FiniteHeisenberg,
    lagrangian: Lagrangian,
    basis: Vec<HeisElement>,
    basis_indices: Vec<usize>,
    projection: Matrix,
}

impl InducedSpace {
    /// The relations are imposed for the generators `(v_i, 0)` and `(0, 0, 1)`
    /// of `L̃_N`; since `χ_L` is a character these span all relations.
    pub fn new(lagrangian: &Lagrangian, n: u32) -> Result<Self, AlgebraError> {
        let g = lagrangian.genus();
        let group = FiniteHeisenberg::new(n, g)?;
        let mut subgroup: Vec<(HeisElement, CycloScalar)> =
            lagrangian.generators().iter().map(|v| (HeisElement::from_pair(v, 0), CycloScalar::one(n))).collect();
        subgroup.push((HeisElement::central(g, 1), CycloScalar::t_power(n, 1)));
        Self::from_relations(lagrangian, group, &subgroup)
    }

    /// Same quotient, imposing the relation for every element of `L̃_N`.
    pub fn with_all_relations(lagrangian: &Lagrangian, n: u32) -> Result<Self, AlgebraError> {
        let g = lagrangian.genus();
        let group = FiniteHeisenberg::new(n, g)?;
        let mut subgroup = Vec::new();
        for (_, v) in lagrangian.lifts(n) {
            for k in 0..2 * n as i64 {
                subgroup.push((HeisElement::from_pair(&v, k), CycloScalar::t_power(n, k)));
            }
        }
        Self::from_relations(lagrangian, group, &subgroup)
    }

    fn from_relations(
        lagrangian: &Lagrangian,
        group: FiniteHeisenberg,
        subgroup: &[(HeisElement, CycloScalar)],
    ) -> Result<Self, AlgebraError> {
        let n = group.n;
        let ambient = group.order();
        let mut rows = RowSpace::new(n, ambient);
        for u in group.elements() {
            let iu = group.index(&u);
            for (u1, chi) in subgroup {
                let mut row = SparseRow::new();
                accumulate(&mut row, iu, chi);
                accumulate(&mut row, group.index(&heis_mul(&u, u1)?), &-CycloScalar::one(n));
                if !row.is_empty() {
                    rows.insert(row);
                }
            }
        }
        let basis_indices = rows.free_cols();
        let position: HashMap<usize, usize> = basis_indices.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut projection = Matrix::zeros(n, basis_indices.len(), ambient);
        for col in 0..ambient {
            if let Some(&b) = position.get(&col) {
                projection.set(b, col, CycloScalar::one(n));
            } else if let Some(row) = rows.pivot_row(col) {
                for (c, v) in row {
                    if let Some(&b) = position.get(c) {
                        projection.set(b, col, -v);
                    }
                }
            }
        }
        Ok(InducedSpace {
            n,
            group,
            lagrangian: lagrangian.clone(),
            basis: basis_indices.iter().map(|&i| group.element(i)).collect(),
            basis_indices,
            projection,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.group.order()
    }

    pub fn lagrangian(&self) -> &Lagrangian {
        &self.lagrangian
    }

    pub fn basis(&self) -> &[HeisElement] {
        &self.basis
    }

    pub fn basis_indices(&self) -> &[usize] {
        &self.basis_indices
    }

    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    /// Coordinates of `π_L(x)`.
    pub fn project(&self, x: &HeisElement) -> Vec<CycloScalar> {
        let col = self.group.index(x);
        (0..self.dim()).map(|b| self.projection.get(b, col).clone()).collect()
    }

    pub fn project_vector(&self, v: &HeisAlgebraVector) -> Vec<CycloScalar> {
        let mut out = vec![CycloScalar::zero(self.n); self.dim()];
        for (x, c) in v.terms() {
            for (slot, a) in out.iter_mut().zip(self.project(x)) {
                if !a.is_zero() {
                    *slot = &*slot + &(&a * c);
                }
            }
        }
        out
    }

    fn matrix_from_columns(&self, cols: impl Iterator<Item = Vec<CycloScalar>>) -> Matrix {
        let mut m = Matrix::zeros(self.n, self.dim(), self.dim());
        for (c, col) in cols.enumerate() {
            for (r, v) in col.into_iter().enumerate() {
                m.set(r, c, v);
            }
        }
        m
    }

    /// Left multiplication by `x` in the quotient basis.
    pub fn left_action(&self, x: &HeisElement) -> Result<Matrix, AlgebraError> {
        let cols: Result<Vec<_>, AlgebraError> =
            self.basis.iter().map(|u| Ok(self.project(&heis_mul(x, u)?))).collect();
        Ok(self.matrix_from_columns(cols?.into_iter()))
    }

    /// Matrix of `θ_μ ↦ π_L[(μ, 0, 0)]`.
    pub fn theta_isomorphism(&self) -> Matrix {
        let space = ThetaSpace { n: self.n, g: self.group.g };
        let g = self.group.g;
        self.matrix_from_columns(space.indices().map(|mu| self.project(&HeisElement::new(mu, vec![0; g], 0).unwrap())))
    }
}

/// The two operators produced by the coset-sum construction.
#[derive(Clone, Debug)]
pub struct FourierTransform {
    /// The coset-sum map pulled back to the theta basis; projectively `ρ(h)^{-1}`.
    pub inverse: ThetaOperator,
    /// Projectively `ρ(h)`.
    pub forward: ThetaOperator,
    /// `[L̃_N : L̃_N ∩ L̃'_N]`.
    pub index: usize,
    /// False when the index is neither a power of `N` nor a perfect square,
    /// in which case no normalization is applied.
    pub normalized: bool,
}

fn index_normalization(n: u32, index: usize) -> Option<CycloScalar> {
    let mut m = 0;
    let mut rest = index;
    while rest > 1 && rest % n as usize == 0 {
        rest /= n as usize;
        m += 1;
    }
    if rest == 1 {
        return Some(CycloScalar::n_power(n, -m));
    }
    let root = (index as f64).sqrt().round() as usize;
    (root * root == index).then(|| CycloScalar::from_rational(n, num_rational::BigRational::new(1.into(), root.into())))
}

/// Discrete Fourier transform `H_{N,g}(L) → H_{N,g}(h_* L)`, transported to
/// the theta basis through `θ_μ ↦ π_L[(μ,0,0)]` and the identification
/// induced by `h̃`.
pub fn fourier_matrix(h: &SymplecticMatrix, lagrangian: &Lagrangian, n: u32) -> Result<FourierTransform, AlgebraError> {
    let g = lagrangian.genus();
    if h.genus() != g {
        return Err(AlgebraError::DimensionMismatch { expected: g, got: h.genus() });
    }
    let target = lagrangian.image(h);
    let source_space = InducedSpace::new(lagrangian, n)?;
    let target_space = InducedSpace::new(&target, n)?;
    let dim = ThetaSpace::new(n, g)?.dim();
    if source_space.dim() != dim || target_space.dim() != dim {
        return Err(AlgebraError::SingularFourier);
    }

    // compare the character subgroups in the finite group: two Lagrangians that
    // agree mod N can still carry characters differing by t^N on some elements
    let lift_nf = |v: &[i64]| finite_normal_form(&HeisElement::from_pair(v, 0), n);
    let target_group: BTreeSet<HeisElement> = target.lifts(n).iter().map(|(_, v)| lift_nf(v)).collect();
    let lifts = lagrangian.lifts(n);
    let in_both: Vec<Vec<i64>> =
        lifts.iter().filter(|(_, v)| target_group.contains(&lift_nf(v))).map(|(c, _)| c.clone()).collect();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut reps = Vec::new();
    for (c, v) in &lifts {
        if seen.contains(c) {
            continue;
        }
        for i in &in_both {
            seen.insert(c.iter().zip(i).map(|(a, b)| (a + b).rem_euclid(n as i64)).collect());
        }
        // k = 0 on the integer lift, so χ_L(u_1) = 1
        reps.push(HeisElement::from_pair(v, 0));
    }
    let index = reps.len();
    let norm = index_normalization(n, index);

    // Σ_{u_1} π'(x u_1 u_0)
    let average = |x: &HeisElement, u0: &HeisElement| -> Result<Vec<CycloScalar>, AlgebraError> {
        let mut col = vec![CycloScalar::zero(n); dim];
        for u1 in &reps {
            for (slot, a) in col.iter_mut().zip(target_space.project(&heis_mul(&heis_mul(x, u1)?, u0)?)) {
                if !a.is_zero() {
                    *slot = &*slot + &a;
                }
            }
        }
        Ok(col)
    };
    // When the characters disagree on part of L ∩ h_*L, the average of the
    // unit vanishes and the (L, χ)-eigenvector sits at u_0 for some shift u_0.
    let generators: Vec<HeisElement> = lagrangian.generators().iter().map(|v| HeisElement::from_pair(v, 0)).collect();
    let identity = HeisElement::identity(g);
    let mut shift = None;
    for x in (ThetaSpace { n, g: 2 * g }).indices() {
        let u0 = HeisElement::from_pair(&x, 0);
        let e = average(&identity, &u0)?;
        if e.iter().all(CycloScalar::is_zero) {
            continue;
        }
        let mut eigen = true;
        for l in &generators {
            if average(l, &u0)? != e {
                eigen = false;
                break;
            }
        }
        if eigen {
            shift = Some(u0);
            break;
        }
    }
    let u0 = shift.ok_or(AlgebraError::SingularFourier)?;

    let mut f = Matrix::zeros(n, dim, dim);
    let mut ident = Matrix::zeros(n, dim, dim);
    for (b, u) in source_space.basis().iter().enumerate() {
        let col = average(u, &u0)?;
        for (r, v) in col.into_iter().enumerate() {
            let v = match &norm {
                Some(s) => &v * s,
                None => v,
            };
            f.set(r, b, v);
        }
        for (r, v) in target_space.project(&u.transform(h)).into_iter().enumerate() {
            ident.set(r, b, v);
        }
    }
    let ident_inv = ident.inverse().map_err(|_| AlgebraError::SingularFourier)?;
    let phi = source_space.theta_isomorphism();
    let phi_inv = phi.inverse().map_err(|_| AlgebraError::SingularFourier)?;
    let inverse = phi_inv.mul(&ident_inv.mul(&f)).mul(&phi);
    let forward = inverse.inverse().map_err(|_| AlgebraError::SingularFourier)?;
    let space = ThetaSpace::new(n, g)?;
    Ok(FourierTransform {
        inverse: ThetaOperator::from_matrix(space, inverse)?,
        forward: ThetaOperator::from_matrix(space, forward)?,
        index,
        normalized: norm.is_some(),
    })
}

/// Number of entries violating `O_{h_* x} ρ = ρ O_x` over the basis vectors `x` of `Z^{2g}`.
pub fn egorov_residual_of(h: &SymplecticMatrix, rho: &ThetaOperator) -> Result<usize, AlgebraError> {
    let space = rho.space();
    let g = space.g;
    let mut bad = 0;
    for i in 0..2 * g {
        let mut e = vec![0i64; 2 * g];
        e[i] = 1;
        let he = h.apply(&e);
        let lhs = op_pq(space, &he[..g], &he[g..])?.compose(rho);
        let rhs = rho.compose(&op_pq(space, &e[..g], &e[g..])?);
        bad += lhs.matrix().count_mismatches(rhs.matrix());
    }
    Ok(bad)
}

/// Egorov residual of `ρ(h)` built by [`fourier_matrix`] from the standard Lagrangian.
pub fn egorov_residual(h: &SymplecticMatrix, n: u32) -> Result<usize, AlgebraError> {
    let rho = fourier_matrix(h, &Lagrangian::standard(h.genus()), n)?.forward;
    egorov_residual_of(h, &rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::dehn_twist_matrix;

    fn el(p: &[i64], q: &[i64], k: i64) -> HeisElement {
        HeisElement::new(p.to_vec(), q.to_vec(), k).unwrap()
    }

    #[test]
    fn group_law_examples() {
        assert_eq!(heis_mul(&el(&[1], &[0], 0), &el(&[0], &[1], 0)).unwrap(), el(&[1], &[1], 1));
        assert_eq!(heis_mul(&el(&[0], &[1], 0), &el(&[1], &[0], 0)).unwrap(), el(&[1], &[1], -1));
        let x = el(&[2], &[-3], 5);
        assert_eq!(heis_mul(&HeisElement::identity(1), &x).unwrap(), x);
        assert!(heis_mul(&el(&[1], &[0], 0), &el(&[1, 0], &[0, 0], 0)).is_err());
    }

    #[test]
    fn normal_form_examples() {
        assert_eq!(finite_normal_form(&el(&[2], &[0], 0), 2), el(&[0], &[0], 0));
        assert_eq!(finite_normal_form(&el(&[0], &[0], 4), 2), el(&[0], &[0], 0));
        assert_eq!(finite_normal_form(&el(&[3], &[1], 0), 2), el(&[1], &[1], 2));
    }

    #[test]
    fn normal_form_is_a_congruence() {
        let group = FiniteHeisenberg::new(2, 1).unwrap();
        assert_eq!(group.elements().collect::<BTreeSet<_>>().len(), 16);
        let lifts: Vec<HeisElement> = (-3..4).flat_map(|p| (-3..4).map(move |q| el(&[p], &[q], (p * q) % 5))).collect();
        for x in &lifts {
            for y in &lifts {
                let direct = finite_normal_form(&heis_mul(x, y).unwrap(), 2);
                let nx = finite_normal_form(x, 2);
                let ny = finite_normal_form(y, 2);
                assert_eq!(direct, finite_normal_form(&heis_mul(&nx, &ny).unwrap(), 2));
            }
        }
    }

    #[test]
    fn group_index_round_trips() {
        let group = FiniteHeisenberg::new(4, 1).unwrap();
        for i in 0..group.order() {
            assert_eq!(group.index(&group.element(i)), i);
        }
    }

    #[test]
    fn schrodinger_examples() {
        let m = schrodinger_matrix(&el(&[1], &[0], 0), 2).unwrap();
        assert!(m.entry(&[1], &[0]).is_one() && m.entry(&[0], &[1]).is_one());
        let m = schrodinger_matrix(&el(&[0], &[1], 0), 2).unwrap();
        assert!(m.entry(&[0], &[0]).is_one());
        assert_eq!(*m.entry(&[1], &[1]), CycloScalar::from_int(2, -1));
        let m = schrodinger_matrix(&el(&[0], &[0], 1), 2).unwrap();
        assert_eq!(m, ThetaOperator::identity(m.space()).scale(&CycloScalar::t_power(2, 1)));
    }

    #[test]
    fn schrodinger_is_multiplicative_genus_two() {
        let group = FiniteHeisenberg::new(2, 2).unwrap();
        let sample: Vec<_> = group.elements().step_by(7).collect();
        for x in &sample {
            for y in sample.iter().step_by(3) {
                let lhs = schrodinger_matrix(x, 2).unwrap().compose(&schrodinger_matrix(y, 2).unwrap());
                let rhs = schrodinger_matrix(&finite_normal_form(&heis_mul(x, y).unwrap(), 2), 2).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn commutant_is_one_dimensional() {
        assert_eq!(commutant_dimension(2, 1).unwrap(), 1);
        assert_eq!(commutant_dimension(4, 1).unwrap(), 1);
        assert_eq!(commutant_dimension(2, 2).unwrap(), 1);
    }

    #[test]
    fn lagrangian_validation() {
        assert!(Lagrangian::new(vec![vec![1, 0]]).is_ok());
        assert!(Lagrangian::new(vec![vec![2, 0]]).is_err());
        assert_eq!(Lagrangian::new(vec![vec![1, 0, 0, 0], vec![0, 0, 1, 0]]), Err(AlgebraError::NotIsotropic));
        assert_eq!(Lagrangian::new(vec![vec![1, 1, 0, 0], vec![1, -1, 0, 0]]), Err(AlgebraError::NotPrimitive));
        assert!(Lagrangian::new(vec![vec![1, 1, 0, 0], vec![0, 1, 0, 0]]).is_ok());
    }

    #[test]
    fn induced_space_dimensions() {
        for (gens, n) in [
            (vec![vec![0, 1]], 2),
            (vec![vec![1, 0]], 2),
            (vec![vec![1, 1]], 4),
            (vec![vec![0, 0, 1, 0], vec![0, 0, 0, 1]], 2),
        ] {
            let l = Lagrangian::new(gens).unwrap();
            let space = InducedSpace::new(&l, n).unwrap();
            let g = l.genus();
            assert_eq!(space.dim(), (n as usize).pow(g as u32));
            assert_eq!(space.ambient_dim(), 2 * (n as usize).pow(2 * g as u32 + 1));
        }
    }

    #[test]
    fn generator_relations_match_full_relations() {
        for gens in [vec![vec![0, 1]], vec![vec![1, 0]], vec![vec![1, 1]]] {
            let l = Lagrangian::new(gens).unwrap();
            let a = InducedSpace::new(&l, 2).unwrap();
            let b = InducedSpace::with_all_relations(&l, 2).unwrap();
            assert_eq!(a.basis_indices(), b.basis_indices());
            assert_eq!(a.projection(), b.projection());
        }
    }

    #[test]
    fn projection_restricts_to_identity_on_basis() {
        let space = InducedSpace::new(&Lagrangian::standard(1), 4).unwrap();
        for (b, u) in space.basis().iter().enumerate() {
            let col = space.project(u);
            for (r, v) in col.iter().enumerate() {
                assert_eq!(v.is_one(), r == b);
                assert_eq!(v.is_zero(), r != b);
            }
        }
    }

    #[test]
    fn theta_isomorphism_is_equivariant() {
        for (n, g) in [(2, 1), (4, 1), (2, 2)] {
            let space = InducedSpace::new(&Lagrangian::standard(g), n).unwrap();
            let phi = space.theta_isomorphism();
            for x in generators(g) {
                let lhs = space.left_action(&x).unwrap().mul(&phi);
                let rhs = phi.mul(schrodinger_matrix(&x, n).unwrap().matrix());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn fourier_of_s_is_the_hadamard_matrix() {
        let ft = fourier_matrix(&SymplecticMatrix::s_matrix(), &Lagrangian::standard(1), 2).unwrap();
        assert_eq!(ft.index, 2);
        assert!(ft.normalized);
        let h = Matrix::from_fn(2, 2, 2, |r, c| CycloScalar::from_int(2, if r * c == 1 { -1 } else { 1 }));
        assert!(ft.forward.matrix().projectively_equal(&h));
        assert_eq!(egorov_residual(&SymplecticMatrix::s_matrix(), 2).unwrap(), 0);
    }

    #[test]
    fn fourier_of_identity_is_identity() {
        for n in [2, 4, 6] {
            let ft = fourier_matrix(&SymplecticMatrix::identity(1), &Lagrangian::standard(1), n).unwrap();
            assert_eq!(ft.index, 1);
            assert!(ft.forward.is_identity());
        }
    }

    #[test]
    fn fourier_of_twist_along_b_is_diagonal() {
        let tb = dehn_twist_matrix(&[0], &[1], 1).unwrap();
        let ft = fourier_matrix(&tb, &Lagrangian::standard(1), 2).unwrap();
        // ρ(T_b) ∝ diag(1, t^{-1}); its inverse is diag(1, t)
        let expect_inv =
            Matrix::from_fn(
                2,
                2,
                2,
                |r, c| {
                    if r != c {
                        CycloScalar::zero(2)
                    } else {
                        CycloScalar::t_power(2, r as i64)
                    }
                },
            );
        assert!(ft.inverse.matrix().projectively_equal(&expect_inv));
        assert_eq!(egorov_residual_of(&tb, &ft.forward).unwrap(), 0);
    }

    #[test]
    fn egorov_for_twist_products() {
        let ta = dehn_twist_matrix(&[1], &[0], 1).unwrap();
        let tb = dehn_twist_matrix(&[0], &[1], 1).unwrap();
        let s = SymplecticMatrix::s_matrix();
        for n in [2, 4] {
            for h in [s.compose(&tb), ta.compose(&tb), tb.compose(&ta).compose(&tb.inverse())] {
                assert_eq!(egorov_residual(&h, n).unwrap(), 0, "N={n} h={h}");
            }
        }
        let c = dehn_twist_matrix(&[1, 0], &[0, 1], 1).unwrap();
        assert_eq!(egorov_residual(&c, 2).unwrap(), 0);
    }

    #[test]
    fn egorov_when_characters_differ_on_the_intersection() {
        // h_*L ≡ L mod 2, but (p, q) = (1,0 | 0,1) picks up t^N on the lift
        let ta = dehn_twist_matrix(&[1, 0], &[0, 0], 1).unwrap();
        let c = dehn_twist_matrix(&[1, 0], &[0, 1], 1).unwrap();
        let h = ta.compose(&c);
        for n in [2, 4] {
            let ft = fourier_matrix(&h, &Lagrangian::standard(2), n).unwrap();
            assert_eq!(egorov_residual_of(&h, &ft.forward).unwrap(), 0, "N={n}");
        }
        let twists: Vec<SymplecticMatrix> =
            [([1, 0], [0, 0]), ([0, 1], [0, 0]), ([0, 0], [1, 0]), ([0, 0], [0, 1]), ([1, 0], [0, 1])]
                .iter()
                .flat_map(|(p, q)| [1, -1].map(|s| dehn_twist_matrix(p, q, s).unwrap()))
                .collect();
        for a in &twists {
            for b in &twists {
                assert_eq!(egorov_residual(&a.compose(b), 2).unwrap(), 0, "{a} {b}");
            }
        }
    }

    #[test]
    fn fourier_is_projectively_multiplicative() {
        let ta = dehn_twist_matrix(&[1], &[0], 1).unwrap();
        let tb = dehn_twist_matrix(&[0], &[1], -1).unwrap();
        let l = Lagrangian::standard(1);
        let a = fourier_matrix(&ta, &l, 4).unwrap().forward;
        let b = fourier_matrix(&tb, &l, 4).unwrap().forward;
        let ab = fourier_matrix(&ta.compose(&tb), &l, 4).unwrap().forward;
        assert!(a.compose(&b).projectively_equal(&ab));
    }
}
