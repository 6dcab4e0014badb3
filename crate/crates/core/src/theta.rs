//! The abstract theta space `Θ_N(Σ_g)` in its theta-series basis, the operators
//! `O_pq`, the Heegaard pairing, and integral symplectic matrices.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::AlgebraError;
use crate::linalg::Matrix;
use crate::scalar::CycloScalar;

/// Shape data for the theta space: level `N` and genus `g`. Basis vectors `θ_μ`
/// are indexed by `μ ∈ Z_N^g` in lexicographic order, `μ_1` most significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ThetaSpace {
    pub n: u32,
    pub g: usize,
}

impl ThetaSpace {
    pub fn new(n: u32, g: usize) -> Result<Self, AlgebraError> {
        if n == 0 || n % 2 != 0 {
            return Err(AlgebraError::BadN(n as i64));
        }
        Ok(ThetaSpace { n, g })
    }

    pub fn dim(&self) -> usize {
        (self.n as usize).pow(self.g as u32)
    }

    /// Linear index of `μ`, entries taken mod `N`.
    pub fn index(&self, mu: &[i64]) -> usize {
        debug_assert_eq!(mu.len(), self.g);
        mu.iter().fold(0usize, |acc, &m| acc * self.n as usize + m.rem_euclid(self.n as i64) as usize)
    }

    pub fn multi_index(&self, mut idx: usize) -> Vec<i64> {
        let n = self.n as usize;
        let mut mu = vec![0i64; self.g];
        for slot in mu.iter_mut().rev() {
            *slot = (idx % n) as i64;
            idx /= n;
        }
        mu
    }

    pub fn indices(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        (0..self.dim()).map(|i| self.multi_index(i))
    }
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Vector of the theta space in the `θ_μ` basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaVector {
    space: ThetaSpace,
    coeffs: Vec<CycloScalar>,
}

impl ThetaVector {
    pub fn zero(space: ThetaSpace) -> Self {
        ThetaVector { space, coeffs: vec![CycloScalar::zero(space.n); space.dim()] }
    }

    /// The basis vector `θ_μ`.
    pub fn basis(space: ThetaSpace, mu: &[i64]) -> Self {
        let mut v = Self::zero(space);
        v.coeffs[space.index(mu)] = CycloScalar::one(space.n);
        v
    }

    pub fn from_coeffs(space: ThetaSpace, coeffs: Vec<CycloScalar>) -> Result<Self, AlgebraError> {
        if coeffs.len() != space.dim() {
            return Err(AlgebraError::DimensionMismatch { expected: space.dim(), got: coeffs.len() });
        }
        Ok(ThetaVector { space, coeffs })
    }

    pub fn space(&self) -> ThetaSpace {
        self.space
    }

    pub fn coeff(&self, mu: &[i64]) -> &CycloScalar {
        &self.coeffs[self.space.index(mu)]
    }

    pub fn coeffs(&self) -> &[CycloScalar] {
        &self.coeffs
    }

    pub fn add_term(&mut self, mu: &[i64], c: &CycloScalar) {
        let i = self.space.index(mu);
        self.coeffs[i] = &self.coeffs[i] + c;
    }
}

#[derive(Serialize, Deserialize)]
struct ThetaVectorJson {
    g: usize,
    #[serde(rename = "N")]
    n: u32,
    coeffs: BTreeMap<String, CycloScalar>,
}

impl Serialize for ThetaVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let coeffs = self
            .space
            .indices()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(mu, c)| (serde_json::to_string(&mu).expect("index"), c.clone()))
            .collect();
        ThetaVectorJson { g: self.space.g, n: self.space.n, coeffs }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ThetaVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = ThetaVectorJson::deserialize(deserializer)?;
        let space = ThetaSpace::new(raw.n, raw.g).map_err(D::Error::custom)?;
        let mut v = ThetaVector::zero(space);
        for (key, c) in raw.coeffs {
            let mu: Vec<i64> = serde_json::from_str(&key).map_err(D::Error::custom)?;
            if mu.len() != space.g {
                return Err(D::Error::custom(format!("index {key} has wrong length")));
            }
            if c.n() != space.n {
                return Err(D::Error::custom("coefficient over the wrong field"));
            }
            v.add_term(&mu, &c);
        }
        Ok(v)
    }
}

/// Linear operator on the theta space. Column `μ` holds the image of `θ_μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaOperator {
    space: ThetaSpace,
    matrix: Matrix,
}

impl ThetaOperator {
    pub fn from_matrix(space: ThetaSpace, matrix: Matrix) -> Result<Self, AlgebraError> {
        if matrix.rows() != space.dim() || matrix.cols() != space.dim() {
            return Err(AlgebraError::DimensionMismatch { expected: space.dim(), got: matrix.rows() });
        }
        Ok(ThetaOperator { space, matrix })
    }

    pub fn identity(space: ThetaSpace) -> Self {
        ThetaOperator { space, matrix: Matrix::identity(space.n, space.dim()) }
    }

    pub fn space(&self) -> ThetaSpace {
        self.space
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    /// Coefficient of `θ_row` in the image of `θ_col`.
    pub fn entry(&self, row: &[i64], col: &[i64]) -> &CycloScalar {
        self.matrix.get(self.space.index(row), self.space.index(col))
    }

    pub fn compose(&self, other: &ThetaOperator) -> ThetaOperator {
        assert_eq!(self.space, other.space);
        ThetaOperator { space: self.space, matrix: self.matrix.mul(&other.matrix) }
    }

    pub fn scale(&self, s: &CycloScalar) -> ThetaOperator {
        ThetaOperator { space: self.space, matrix: self.matrix.scale(s) }
    }

    pub fn inverse(&self) -> Result<ThetaOperator, AlgebraError> {
        Ok(ThetaOperator { space: self.space, matrix: self.matrix.inverse()? })
    }

    pub fn apply(&self, v: &ThetaVector) -> ThetaVector {
        assert_eq!(self.space, v.space);
        let dim = self.space.dim();
        let coeffs = (0..dim)
            .map(|r| {
                (0..dim).fold(CycloScalar::zero(self.space.n), |acc, c| {
                    let (a, b) = (self.matrix.get(r, c), &v.coeffs[c]);
                    if a.is_zero() || b.is_zero() {
                        acc
                    } else {
                        &acc + &(a * b)
                    }
                })
            })
            .collect();
        ThetaVector { space: self.space, coeffs }
    }

    pub fn projectively_equal(&self, other: &ThetaOperator) -> bool {
        self.space == other.space && self.matrix.projectively_equal(&other.matrix)
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }
}

impl Serialize for ThetaOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<&[CycloScalar]> = (0..self.matrix.rows()).map(|r| self.matrix.row(r)).collect();
        rows.serialize(serializer)
    }
}

/// `O_pq : θ_μ ↦ t^{-p·q - 2μ·q} θ_{μ+p}` for integer vectors `p, q`.
///
/// The phase depends on `p, q` modulo `2N`, not merely modulo `N`; only the
/// target index `μ + p` is reduced mod `N`.
pub fn op_pq(space: ThetaSpace, p: &[i64], q: &[i64]) -> Result<ThetaOperator, AlgebraError> {
    for v in [p, q] {
        if v.len() != space.g {
            return Err(AlgebraError::DimensionMismatch { expected: space.g, got: v.len() });
        }
    }
    let n = space.n;
    let mut m = Matrix::zeros(n, space.dim(), space.dim());
    let pq = dot(p, q);
    for mu in space.indices() {
        let target: Vec<i64> = mu.iter().zip(p).map(|(a, b)| a + b).collect();
        let phase = CycloScalar::t_power(n, -pq - 2 * dot(&mu, q));
        m.set(space.index(&target), space.index(&mu), phase);
    }
    Ok(ThetaOperator { space, matrix: m })
}

/// Gram matrix of the Heegaard pairing, `[θ_μ, θ_ν] = t^{-2μ·ν}`.
pub fn pairing_gram(space: ThetaSpace) -> Matrix {
    Matrix::from_fn(space.n, space.dim(), space.dim(), |r, c| {
        CycloScalar::t_power(space.n, -2 * dot(&space.multi_index(r), &space.multi_index(c)))
    })
}

/// Bilinear extension of `[θ_μ, θ_ν] = t^{-2μ·ν}`.
pub fn heegaard_pairing(u: &ThetaVector, w: &ThetaVector) -> Result<CycloScalar, AlgebraError> {
    if u.space != w.space {
        return Err(AlgebraError::DimensionMismatch { expected: u.space.dim(), got: w.space.dim() });
    }
    let space = u.space;
    let mut acc = CycloScalar::zero(space.n);
    for (i, a) in u.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let mu = space.multi_index(i);
        for (j, b) in w.coeffs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let phase = CycloScalar::t_power(space.n, -2 * dot(&mu, &space.multi_index(j)));
            acc = &acc + &(&(a * b) * &phase);
        }
    }
    Ok(acc)
}

/// The closed-form inverse `N^{-g} t^{2μ·ν}` of the pairing Gram matrix, returned
/// only after checking `Gram · inverse = I` exactly.
pub fn pairing_gram_inverse(space: ThetaSpace) -> Result<Matrix, AlgebraError> {
    let scale = BigRational::new(BigInt::from(1), BigInt::from(space.dim() as u64));
    let inv = Matrix::from_fn(space.n, space.dim(), space.dim(), |r, c| {
        CycloScalar::t_power(space.n, 2 * dot(&space.multi_index(r), &space.multi_index(c))).scale(&scale)
    });
    if pairing_gram(space).mul(&inv).is_identity() {
        Ok(inv)
    } else {
        Err(AlgebraError::Singular)
    }
}

/// Integral `2g × 2g` matrix preserving `J = [[0, I], [-I, 0]]`, acting on
/// homology classes `(p, q)` as column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticMatrix {
    g: usize,
    entries: Vec<i64>,
}

/// Intersection form `ω(x, y) = xᵀ J y = p·q' - q·p'`.
pub fn intersection(x: &[i64], y: &[i64]) -> i64 {
    let g = x.len() / 2;
    (0..g).map(|i| x[i] * y[g + i] - x[g + i] * y[i]).sum()
}

impl SymplecticMatrix {
    pub fn new(g: usize, entries: Vec<i64>) -> Result<Self, AlgebraError> {
        if entries.len() != 4 * g * g {
            return Err(AlgebraError::DimensionMismatch { expected: 4 * g * g, got: entries.len() });
        }
        let m = SymplecticMatrix { g, entries };
        if !m.is_symplectic() {
            return Err(AlgebraError::NotSymplectic);
        }
        Ok(m)
    }

    pub fn identity(g: usize) -> Self {
        let d = 2 * g;
        let entries = (0..d * d).map(|i| i64::from(i / d == i % d)).collect();
        SymplecticMatrix { g, entries }
    }

    /// The genus-one `S : a ↦ b, b ↦ -a`.
    pub fn s_matrix() -> Self {
        SymplecticMatrix { g: 1, entries: vec![0, -1, 1, 0] }
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries[r * 2 * self.g + c]
    }

    fn is_symplectic(&self) -> bool {
        let d = 2 * self.g;
        let cols: Vec<Vec<i64>> = (0..d).map(|c| (0..d).map(|r| self.get(r, c)).collect()).collect();
        (0..d).all(|i| {
            (0..d).all(|j| {
                let expected = if j == i + self.g && i < self.g {
                    1
                } else if i == j + self.g && j < self.g {
                    -1
                } else {
                    0
                };
                intersection(&cols[i], &cols[j]) == expected
            })
        })
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        let d = 2 * self.g;
        assert_eq!(x.len(), d);
        (0..d).map(|r| (0..d).map(|c| self.get(r, c) * x[c]).sum()).collect()
    }

    /// Matrix product `self · other` (apply `other` first).
    pub fn compose(&self, other: &SymplecticMatrix) -> SymplecticMatrix {
        assert_eq!(self.g, other.g);
        let d = 2 * self.g;
        let entries = (0..d * d)
            .map(|i| {
                let (r, c) = (i / d, i % d);
                (0..d).map(|k| self.get(r, k) * other.get(k, c)).sum()
            })
            .collect();
        SymplecticMatrix { g: self.g, entries }
    }

    /// `M^{-1} = -J Mᵀ J`.
    pub fn inverse(&self) -> SymplecticMatrix {
        let d = 2 * self.g;
        let g = self.g;
        let j = |r: usize, c: usize| -> i64 {
            if c == r + g && r < g {
                1
            } else if r == c + g && c < g {
                -1
            } else {
                0
            }
        };
        let entries = (0..d * d)
            .map(|i| {
                let (r, c) = (i / d, i % d);
                let mut s = 0;
                for a in 0..d {
                    for b in 0..d {
                        s += j(r, a) * self.get(b, a) * j(b, c);
                    }
                }
                -s
            })
            .collect();
        SymplecticMatrix { g, entries }
    }
}

impl fmt::Display for SymplecticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = 2 * self.g;
        let rows: Vec<String> = (0..d)
            .map(|r| format!("[{}]", (0..d).map(|c| self.get(r, c).to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

pub(crate) fn is_primitive(v: &[i64]) -> bool {
    v.iter().fold(0i64, |acc, &x| acc.gcd(&x)) == 1
}

/// Dehn twist along the simple closed curve of class `c = (p, q)`:
/// `x ↦ x + sign · ω(x, c) · c`. With `sign = +1` the twist along `b_1` sends
/// `a_1 ↦ a_1 + b_1`.
pub fn dehn_twist_matrix(p: &[i64], q: &[i64], sign: i64) -> Result<SymplecticMatrix, AlgebraError> {
    if p.len() != q.len() {
        return Err(AlgebraError::DimensionMismatch { expected: p.len(), got: q.len() });
    }
    if sign != 1 && sign != -1 {
        return Err(AlgebraError::BadWord(format!("twist sign must be ±1, got {sign}")));
    }
    let g = p.len();
    let c: Vec<i64> = p.iter().chain(q).copied().collect();
    if !is_primitive(&c) {
        return Err(AlgebraError::NotPrimitive);
    }
    let d = 2 * g;
    // column k is the image of the k-th basis vector
    let mut entries = vec![0i64; d * d];
    for k in 0..d {
        let mut e = vec![0i64; d];
        e[k] = 1;
        let w = sign * intersection(&e, &c);
        for r in 0..d {
            entries[r * d + k] = e[r] + w * c[r];
        }
    }
    SymplecticMatrix::new(g, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: u32, j: i64) -> CycloScalar {
        CycloScalar::t_power(n, j)
    }

    #[test]
    fn indexing_round_trips() {
        let s = ThetaSpace::new(4, 3).unwrap();
        for i in 0..s.dim() {
            assert_eq!(s.index(&s.multi_index(i)), i);
        }
        assert_eq!(s.index(&[0, 0, 5]), 1);
        assert!(ThetaSpace::new(3, 1).is_err());
    }

    #[test]
    fn op_pq_examples() {
        let s = ThetaSpace::new(2, 1).unwrap();
        assert!(op_pq(s, &[0], &[0]).unwrap().is_identity());
        let o11 = op_pq(s, &[1], &[1]).unwrap();
        assert_eq!(*o11.entry(&[1], &[0]), t(2, -1));
        assert_eq!(*o11.entry(&[0], &[1]), t(2, -3));
        let o10 = op_pq(s, &[1], &[0]).unwrap();
        let o01 = op_pq(s, &[0], &[1]).unwrap();
        // (1,0,0)(0,1,0) = (1,1,1)
        assert_eq!(o10.compose(&o01), o11.scale(&t(2, 1)));
    }

    #[test]
    fn op_pq_phase_sees_lifts_mod_2n() {
        // shifting p by N changes the operator by (-1)^q
        let s = ThetaSpace::new(2, 1).unwrap();
        let a = op_pq(s, &[1], &[1]).unwrap();
        let b = op_pq(s, &[3], &[1]).unwrap();
        assert_eq!(b, a.scale(&CycloScalar::from_int(2, -1)));
    }

    #[test]
    fn pairing_examples() {
        let s = ThetaSpace::new(2, 1).unwrap();
        let th1 = ThetaVector::basis(s, &[1]);
        assert_eq!(heegaard_pairing(&th1, &th1).unwrap(), CycloScalar::from_int(2, -1));
        for nu in 0..2 {
            let v = ThetaVector::basis(s, &[nu]);
            assert!(heegaard_pairing(&ThetaVector::basis(s, &[0]), &v).unwrap().is_one());
        }
        let s2 = ThetaSpace::new(2, 2).unwrap();
        let val = heegaard_pairing(&ThetaVector::basis(s2, &[1, 1]), &ThetaVector::basis(s2, &[1, 0])).unwrap();
        assert_eq!(val, CycloScalar::from_int(2, -1));
    }

    #[test]
    fn gram_inverse_closed_form() {
        for (n, g) in [(2, 1), (4, 1), (2, 2)] {
            let s = ThetaSpace::new(n, g).unwrap();
            let inv = pairing_gram_inverse(s).unwrap();
            assert!(inv.mul(&pairing_gram(s)).is_identity());
        }
    }

    #[test]
    fn dehn_twists() {
        let tb = dehn_twist_matrix(&[0], &[1], 1).unwrap();
        assert_eq!(tb.entries(), &[1, 0, 1, 1]);
        assert_eq!(tb.apply(&[1, 0]), vec![1, 1]);
        let tb_inv = dehn_twist_matrix(&[0], &[1], -1).unwrap();
        assert_eq!(tb.compose(&tb_inv), SymplecticMatrix::identity(1));
        assert_eq!(tb.inverse(), tb_inv);
        let ta = dehn_twist_matrix(&[1], &[0], 1).unwrap();
        assert_eq!(ta.apply(&[3, 2]), vec![1, 2]);
        assert_eq!(dehn_twist_matrix(&[2], &[0], 1), Err(AlgebraError::NotPrimitive));
        let c = dehn_twist_matrix(&[1, 0], &[1, -1], 1).unwrap();
        assert!(c.is_symplectic());
    }

    #[test]
    fn theta_vector_json() {
        let s = ThetaSpace::new(2, 1).unwrap();
        let v = ThetaVector::basis(s, &[1]);
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["N"], 2);
        assert!(json["coeffs"].get("[1]").is_some());
        let back: ThetaVector = serde_json::from_value(json).unwrap();
        assert_eq!(back, v);
    }
}
