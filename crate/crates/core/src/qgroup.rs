//! The ribbon Hopf algebra `C[Z_{2N}]` generated by `K` with `K^{2N} = 1`,
//! its R-matrix and twist, and exact checks of the quasitriangular and ribbon
//! axioms.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::AlgebraError;
use crate::scalar::CycloScalar;

/// Element of `C[Z_{2N}]^{⊗arity}` in the basis `K^{j_1} ⊗ ⋯ ⊗ K^{j_arity}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTensor {
    n: u32,
    arity: usize,
    coeffs: Vec<CycloScalar>,
}

pub type GroupAlgebraElement = GroupTensor;
pub type TwoFoldTensor = GroupTensor;

/// Irreducible representation `V^k`, on which `K` acts by `t^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IrrepLabel(u32);

impl IrrepLabel {
    pub fn new(k: i64, n: u32) -> Self {
        IrrepLabel(k.rem_euclid(2 * n as i64) as u32)
    }

    pub fn k(self) -> u32 {
        self.0
    }

    /// The dual `(V^k)^* ≅ V^{2N-k}`.
    pub fn dual(self, n: u32) -> Self {
        IrrepLabel::new(-(self.0 as i64), n)
    }
}

fn check_n(n: u32) -> Result<(), AlgebraError> {
    if n == 0 || n % 2 != 0 {
        return Err(AlgebraError::BadN(n as i64));
    }
    Ok(())
}

impl GroupTensor {
    pub fn zero(n: u32, arity: usize) -> Self {
        GroupTensor { n, arity, coeffs: vec![CycloScalar::zero(n); (2 * n as usize).pow(arity as u32)] }
    }

    pub fn unit(n: u32, arity: usize) -> Self {
        Self::monomial(n, &vec![0; arity], CycloScalar::one(n))
    }

    /// `c · K^{j_1} ⊗ ⋯ ⊗ K^{j_r}`, exponents taken mod `2N`.
    pub fn monomial(n: u32, exps: &[i64], c: CycloScalar) -> Self {
        let mut x = Self::zero(n, exps.len());
        let i = x.index(exps);
        x.coeffs[i] = c;
        x
    }

    /// `K^j`.
    pub fn k_power(n: u32, j: i64) -> Self {
        Self::monomial(n, &[j], CycloScalar::one(n))
    }

    pub fn from_coeffs(n: u32, arity: usize, coeffs: Vec<CycloScalar>) -> Result<Self, AlgebraError> {
        let len = (2 * n as usize).pow(arity as u32);
        if coeffs.len() != len {
            return Err(AlgebraError::DimensionMismatch { expected: len, got: coeffs.len() });
        }
        Ok(GroupTensor { n, arity, coeffs })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    fn order(&self) -> i64 {
        2 * self.n as i64
    }

    fn index(&self, exps: &[i64]) -> usize {
        exps.iter().fold(0usize, |acc, &j| acc * self.order() as usize + j.rem_euclid(self.order()) as usize)
    }

    fn exps(&self, mut idx: usize) -> Vec<i64> {
        let m = self.order() as usize;
        let mut e = vec![0i64; self.arity];
        for slot in e.iter_mut().rev() {
            *slot = (idx % m) as i64;
            idx /= m;
        }
        e
    }

    pub fn coeff(&self, exps: &[i64]) -> &CycloScalar {
        &self.coeffs[self.index(exps)]
    }

    pub fn coeffs(&self) -> &[CycloScalar] {
        &self.coeffs
    }

    fn nonzero(&self) -> Vec<(Vec<i64>, &CycloScalar)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (self.exps(i), c)).collect()
    }

    fn map_terms(&self, arity: usize, f: impl Fn(&[i64]) -> Vec<i64>) -> Self {
        let mut out = Self::zero(self.n, arity);
        for (e, c) in self.nonzero() {
            let i = out.index(&f(&e));
            out.coeffs[i] = &out.coeffs[i] + c;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.arity, other.arity);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        GroupTensor { n: self.n, arity: self.arity, coeffs }
    }

    pub fn scale(&self, s: &CycloScalar) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a * s).collect();
        GroupTensor { n: self.n, arity: self.arity, coeffs }
    }

    /// Product in the group algebra: exponents add slot by slot.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.arity, other.arity);
        let mut out = Self::zero(self.n, self.arity);
        let rhs = other.nonzero();
        for (e1, a) in self.nonzero() {
            for (e2, b) in &rhs {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                let i = out.index(&e);
                out.coeffs[i] = &out.coeffs[i] + &(a * *b);
            }
        }
        out
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n, self.arity + other.arity);
        let rhs = other.nonzero();
        for (e1, a) in self.nonzero() {
            for (e2, b) in &rhs {
                let e: Vec<i64> = e1.iter().chain(e2).copied().collect();
                let i = out.index(&e);
                out.coeffs[i] = a * *b;
            }
        }
        out
    }

    /// Applies `Δ` to tensor slot `slot`, raising the arity by one.
    pub fn coproduct_at(&self, slot: usize) -> Self {
        self.map_terms(self.arity + 1, |e| {
            let mut v = e.to_vec();
            v.insert(slot, e[slot]);
            v
        })
    }

    /// Applies `S` to tensor slot `slot`.
    pub fn antipode_at(&self, slot: usize) -> Self {
        self.map_terms(self.arity, |e| {
            let mut v = e.to_vec();
            v[slot] = -v[slot];
            v
        })
    }

    /// Applies `ε` to tensor slot `slot`, lowering the arity by one.
    pub fn counit_at(&self, slot: usize) -> Self {
        self.map_terms(self.arity - 1, |e| {
            let mut v = e.to_vec();
            v.remove(slot);
            v
        })
    }

    /// Multiplies tensor slots `slot` and `slot + 1` together.
    pub fn multiply_slots(&self, slot: usize) -> Self {
        self.map_terms(self.arity - 1, |e| {
            let mut v = e.to_vec();
            let b = v.remove(slot + 1);
            v[slot] += b;
            v
        })
    }

    /// Reorders slots: slot `i` of the result is slot `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        self.map_terms(self.arity, |e| perm.iter().map(|&i| e[i]).collect())
    }

    /// Places the factors of a two-fold tensor in slots `i < j` of a three-fold one.
    pub fn embed3(&self, i: usize, j: usize) -> Self {
        assert_eq!(self.arity, 2);
        self.map_terms(3, |e| {
            let mut v = vec![0; 3];
            v[i] = e[0];
            v[j] = e[1];
            v
        })
    }

    /// Scalar by which the tensor acts on `V^{m_1} ⊗ ⋯ ⊗ V^{m_r}` (all basis vectors alike).
    pub fn act(&self, weights: &[i64]) -> CycloScalar {
        assert_eq!(weights.len(), self.arity);
        self.nonzero().into_iter().fold(CycloScalar::zero(self.n), |acc, (e, c)| {
            let j: i64 = e.iter().zip(weights).map(|(a, b)| a * b).sum();
            &acc + &(c * &CycloScalar::t_power(self.n, j))
        })
    }
}

pub fn coproduct(x: &GroupAlgebraElement) -> TwoFoldTensor {
    x.coproduct_at(0)
}

pub fn antipode(x: &GroupAlgebraElement) -> GroupAlgebraElement {
    x.antipode_at(0)
}

/// The group-algebra counit `ε(K^j) = 1`.
pub fn counit(x: &GroupAlgebraElement) -> CycloScalar {
    x.coeffs.iter().fold(CycloScalar::zero(x.n), |acc, c| &acc + c)
}

pub fn flip(x: &TwoFoldTensor) -> TwoFoldTensor {
    x.permute(&[1, 0])
}

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `R = (1/2N) Σ_{j,k} t^{-jk} K^j ⊗ K^k`.
pub fn r_matrix(n: u32) -> Result<TwoFoldTensor, AlgebraError> {
    check_n(n)?;
    let m = 2 * n as i64;
    let mut r = GroupTensor::zero(n, 2);
    for j in 0..m {
        for k in 0..m {
            let i = r.index(&[j, k]);
            r.coeffs[i] = CycloScalar::t_power(n, -j * k).scale(&rational(1, m));
        }
    }
    Ok(r)
}

/// `R^{-1} = (S ⊗ id) R`.
pub fn r_inverse(n: u32) -> Result<TwoFoldTensor, AlgebraError> {
    Ok(r_matrix(n)?.antipode_at(0))
}

/// `(1/N) Σ_{j,k ∈ Z_N} t^{-2jk} K^{2j} ⊗ K^{2k}`.
pub fn r_squared_formula(n: u32) -> Result<TwoFoldTensor, AlgebraError> {
    check_n(n)?;
    let mut out = GroupTensor::zero(n, 2);
    for j in 0..n as i64 {
        for k in 0..n as i64 {
            let i = out.index(&[2 * j, 2 * k]);
            out.coeffs[i] = &out.coeffs[i] + &CycloScalar::t_power(n, -2 * j * k).scale(&rational(1, n as i64));
        }
    }
    Ok(out)
}

/// `Σ_{k ∈ Z_N} (-1)^k t^{sign · k²}`.
pub fn gauss_sum(n: u32, sign: i64) -> Result<CycloScalar, AlgebraError> {
    check_n(n)?;
    Ok((0..n as i64).fold(CycloScalar::zero(n), |acc, k| {
        let term = CycloScalar::t_power(n, sign * k * k);
        if k % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        }
    }))
}

fn twist_with_sign(n: u32, sign: i64) -> Result<GroupAlgebraElement, AlgebraError> {
    let front = gauss_sum(n, sign)?.scale(&rational(1, n as i64));
    let mut v = GroupTensor::zero(n, 1);
    for j in 0..n as i64 {
        let c = CycloScalar::t_power(n, -sign * j * j);
        let c = if j % 2 == 0 { c } else { -c };
        let i = v.index(&[2 * j + n as i64]);
        v.coeffs[i] = &v.coeffs[i] + &(&c * &front);
    }
    Ok(v)
}

/// The ribbon element `v = (1/N)(Σ_k (-1)^k t^{k²})(Σ_j (-1)^j t^{-j²} K^{2j+N})`.
pub fn twist_element(n: u32) -> Result<GroupAlgebraElement, AlgebraError> {
    twist_with_sign(n, 1)
}

/// `v^{-1}`, obtained from `v` by `t ↦ t^{-1}`.
pub fn twist_inverse(n: u32) -> Result<GroupAlgebraElement, AlgebraError> {
    twist_with_sign(n, -1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    #[serde(rename = "N")]
    pub n: u32,
    pub checks: Vec<IdentityCheck>,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn report(n: u32, checks: Vec<(&'static str, bool)>) -> CheckReport {
    CheckReport { n, checks: checks.into_iter().map(|(name, passed)| IdentityCheck { name, passed }).collect() }
}

/// Coassociativity, counit and antipode laws on every basis element.
pub fn verify_hopf(n: u32) -> Result<CheckReport, AlgebraError> {
    check_n(n)?;
    let m = 2 * n as i64;
    let (mut coassoc, mut counit_law, mut antipode_law) = (true, true, true);
    for j in 0..m {
        let x = GroupTensor::k_power(n, j);
        let d = coproduct(&x);
        coassoc &= d.coproduct_at(0) == d.coproduct_at(1);
        counit_law &= d.counit_at(0) == x && d.counit_at(1) == x;
        let unit = GroupTensor::unit(n, 1).scale(&counit(&x));
        antipode_law &= d.antipode_at(0).multiply_slots(0) == unit && d.antipode_at(1).multiply_slots(0) == unit;
    }
    Ok(report(n, vec![("coassociativity", coassoc), ("counit law", counit_law), ("antipode law", antipode_law)]))
}

pub fn verify_quasitriangular(n: u32) -> Result<CheckReport, AlgebraError> {
    let r = r_matrix(n)?;
    let r_inv = r_inverse(n)?;
    let one = GroupTensor::unit(n, 2);
    let invertible = r.mul(&r_inv) == one && r_inv.mul(&r) == one;
    // Δ_op and conjugation by R are algebra maps, so checking on the generator K suffices.
    let dk = coproduct(&GroupTensor::k_power(n, 1));
    let conjugation = r.mul(&dk).mul(&r_inv) == flip(&dk);
    let cocommutative = (0..2 * n as i64).all(|j| {
        let d = coproduct(&GroupTensor::k_power(n, j));
        flip(&d) == d
    });
    let (r12, r13, r23) = (r.embed3(0, 1), r.embed3(0, 2), r.embed3(1, 2));
    let hex1 = r13.mul(&r12) == r.coproduct_at(1);
    let hex2 = r13.mul(&r23) == r.coproduct_at(0);
    Ok(report(
        n,
        vec![
            ("R invertible with R^-1 = (S x id)R", invertible),
            ("Delta_op(a) = R Delta(a) R^-1", conjugation),
            ("Delta_op = Delta", cocommutative),
            ("R13 R12 = (id x Delta)R", hex1),
            ("R13 R23 = (Delta x id)R", hex2),
        ],
    ))
}

pub fn verify_ribbon(n: u32) -> Result<CheckReport, AlgebraError> {
    let v = twist_element(n)?;
    let v_inv = twist_inverse(n)?;
    let r = r_matrix(n)?;
    let r2 = flip(&r).mul(&r);
    let invertible = v.mul(&v_inv) == GroupTensor::unit(n, 1);
    let s_fixed = antipode(&v) == v;
    let coproduct_law = coproduct(&v) == r2.mul(&v.tensor(&v));
    let r2_formula = r2 == r_squared_formula(n)?;
    Ok(report(
        n,
        vec![
            ("v v^-1 = 1", invertible),
            ("S(v) = v", s_fixed),
            ("Delta(v) = P(R) R (v x v)", coproduct_law),
            ("R^2 closed form", r2_formula),
        ],
    ))
}

/// `R` acts on `V^m ⊗ V^n` by `t^{mn}` and `v` on `V^k` by `t^{k²}`, for all labels.
pub fn verify_representation_scalars(n: u32) -> Result<CheckReport, AlgebraError> {
    let r = r_matrix(n)?;
    let v = twist_element(n)?;
    let m = 2 * n as i64;
    let r_ok = (0..m).all(|a| (0..m).all(|b| r.act(&[a, b]) == CycloScalar::t_power(n, a * b)));
    let v_ok = (0..m).all(|k| v.act(&[k]) == CycloScalar::t_power(n, k * k));
    Ok(report(n, vec![("R on V^m x V^n = t^mn", r_ok), ("v on V^k = t^k^2", v_ok)]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: u32, j: i64) -> CycloScalar {
        CycloScalar::t_power(n, j)
    }

    #[test]
    fn structure_map_examples() {
        let n = 4;
        let k = GroupTensor::k_power(n, 1);
        assert_eq!(coproduct(&k), GroupTensor::monomial(n, &[1, 1], CycloScalar::one(n)));
        assert_eq!(coproduct(&GroupTensor::unit(n, 1)), GroupTensor::unit(n, 2));
        let x = k.add(&GroupTensor::k_power(n, 2));
        let dx = GroupTensor::monomial(n, &[1, 1], CycloScalar::one(n)).add(&GroupTensor::monomial(
            n,
            &[2, 2],
            CycloScalar::one(n),
        ));
        assert_eq!(coproduct(&x), dx);
        assert_eq!(antipode(&k), GroupTensor::k_power(n, 7));
        assert!(counit(&GroupTensor::k_power(n, 5)).is_one());
        let y = k.add(&GroupTensor::monomial(n, &[3], CycloScalar::from_int(n, 3)));
        assert_eq!(antipode(&antipode(&y)), y);
    }

    #[test]
    fn r_matrix_examples() {
        let r = r_matrix(2).unwrap();
        assert_eq!(*r.coeff(&[1, 1]), t(2, -1).scale(&rational(1, 4)));
        for k in 0..4 {
            assert_eq!(*r.coeff(&[0, k]), CycloScalar::from_rational(2, rational(1, 4)));
        }
        assert_eq!(flip(&r), r);
        assert!(r_matrix(3).is_err());
    }

    #[test]
    fn twist_at_n2() {
        let v = twist_element(2).unwrap();
        // (1/2)(1 - t)(t + K²)
        let half = rational(1, 2);
        let one_minus_t = &CycloScalar::one(2) - &t(2, 1);
        let expect =
            GroupTensor::unit(2, 1).scale(&t(2, 1)).add(&GroupTensor::k_power(2, 2)).scale(&one_minus_t.scale(&half));
        assert_eq!(v, expect);
        assert!(v.act(&[0]).is_one());
        assert_eq!(v.act(&[1]), t(2, 1));
        assert_eq!(twist_element(4).unwrap().act(&[3]), t(4, 1));
    }

    #[test]
    fn gauss_sum_product() {
        for n in [2, 4, 6, 8, 10] {
            let prod = &gauss_sum(n, 1).unwrap() * &gauss_sum(n, -1).unwrap();
            assert_eq!(prod, CycloScalar::from_int(n, n as i64));
        }
    }

    #[test]
    fn twist_is_central() {
        let v = twist_element(4).unwrap();
        let x = GroupTensor::k_power(4, 3).add(&GroupTensor::monomial(4, &[5], t(4, 2)));
        assert_eq!(v.mul(&x), x.mul(&v));
    }

    #[test]
    fn axioms_small_n() {
        for n in [2, 4] {
            assert!(verify_hopf(n).unwrap().all_passed());
            assert!(verify_quasitriangular(n).unwrap().all_passed());
            assert!(verify_ribbon(n).unwrap().all_passed());
            assert!(verify_representation_scalars(n).unwrap().all_passed());
        }
    }

    #[test]
    fn irrep_labels() {
        assert_eq!(IrrepLabel::new(5, 2).k(), 1);
        assert_eq!(IrrepLabel::new(1, 2).dual(2).k(), 3);
    }
}
