//! Exact scalars in the cyclotomic field generated by `t = e^{iπ/N}`, carrying an
//! optional overall factor `N^{-1/2}`.
//!
//! A [`CycloScalar`] represents `(Σ_j c_j t^j) · N^{e}` with rational `c_j` and
//! `e ∈ {0, -1/2}`. Integer powers of `N` are folded into the coefficients, so two
//! scalars are equal exactly when their reduced coefficient vectors and exponents
//! agree. Coefficient vectors are kept reduced modulo the cyclotomic polynomial
//! `Φ_{2N}`, which is the minimal polynomial of `t`.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ScalarError;

/// Arithmetic context for a fixed `N`: the cyclotomic polynomial `Φ_{2N}` and the
/// reduced forms of `x^j` for every `j < 2N`.
#[derive(Debug)]
pub struct CycloField {
    n: u32,
    phi: Vec<i64>,
    powers: Vec<Vec<i64>>,
}

fn fields() -> &'static Mutex<HashMap<u32, &'static CycloField>> {
    static FIELDS: OnceLock<Mutex<HashMap<u32, &'static CycloField>>> = OnceLock::new();
    FIELDS.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Exact quotient of `num` by a monic `den`, both lowest degree first.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for k in (dd..num.len()).rev() {
        let c = rem[k];
        if c == 0 {
            continue;
        }
        quot[k - dd] = c;
        for (i, &d) in den.iter().enumerate() {
            rem[k - dd + i] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

/// `Φ_m(x)` computed by dividing `x^m - 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(m: usize) -> Vec<i64> {
    assert!(m >= 1);
    let mut num = vec![0i64; m + 1];
    num[0] = -1;
    num[m] = 1;
    for d in 1..m {
        if m % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

impl CycloField {
    /// The shared context for `N = n`. Contexts are created once and live for the
    /// rest of the process.
    pub fn get(n: u32) -> &'static CycloField {
        assert!(n >= 1, "N must be positive");
        let mut map = fields().lock().expect("field cache poisoned");
        map.entry(n).or_insert_with(|| Box::leak(Box::new(CycloField::build(n))))
    }

    fn build(n: u32) -> CycloField {
        let order = 2 * n as usize;
        let phi = cyclotomic_polynomial(order);
        let deg = phi.len() - 1;
        let mut powers = Vec::with_capacity(order);
        let mut cur = vec![0i64; deg];
        cur[0] = 1;
        for _ in 0..order {
            powers.push(cur.clone());
            // multiply by x and reduce
            let top = cur[deg - 1];
            let mut next = vec![0i64; deg];
            next[1..deg].copy_from_slice(&cur[..deg - 1]);
            if top != 0 {
                for i in 0..deg {
                    next[i] -= top * phi[i];
                }
            }
            cur = next;
        }
        CycloField { n, phi, powers }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `2N`, the multiplicative order of `t`.
    pub fn order(&self) -> usize {
        2 * self.n as usize
    }

    /// Degree of `Φ_{2N}`.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn cyclotomic(&self) -> &[i64] {
        &self.phi
    }

    /// Reduce an arbitrary-length coefficient vector modulo `x^{2N} - 1` and `Φ_{2N}`.
    fn reduce(&self, poly: &[BigRational]) -> Vec<BigRational> {
        let deg = self.degree();
        let order = self.order();
        let mut out = vec![BigRational::zero(); deg];
        for (j, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let j = j % order;
            if j < deg {
                out[j] += c;
            } else {
                for (i, &p) in self.powers[j].iter().enumerate() {
                    if p != 0 {
                        out[i] += c * BigRational::from_integer(BigInt::from(p));
                    }
                }
            }
        }
        out
    }
}

/// Exact element `(Σ_j c_j t^j) · N^{e}` with `e ∈ {0, -1/2}`.
#[derive(Clone)]
pub struct CycloScalar {
    field: &'static CycloField,
    coeffs: Vec<BigRational>,
    half: bool,
}

impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.n == other.field.n && self.half == other.half && self.coeffs == other.coeffs
    }
}

impl Eq for CycloScalar {}

impl Hash for CycloScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.n.hash(state);
        self.half.hash(state);
        self.coeffs.hash(state);
    }
}

fn rat(i: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(i))
}

impl CycloScalar {
    fn from_parts(field: &'static CycloField, coeffs: Vec<BigRational>, half: bool) -> Self {
        let half = half && coeffs.iter().any(|c| !c.is_zero());
        CycloScalar { field, coeffs, half }
    }

    pub fn zero(n: u32) -> Self {
        let field = CycloField::get(n);
        CycloScalar { field, coeffs: vec![BigRational::zero(); field.degree()], half: false }
    }

    pub fn one(n: u32) -> Self {
        Self::from_rational(n, BigRational::one())
    }

    pub fn from_int(n: u32, value: i64) -> Self {
        Self::from_rational(n, rat(value))
    }

    pub fn from_rational(n: u32, value: BigRational) -> Self {
        let mut s = Self::zero(n);
        s.coeffs[0] = value;
        s
    }

    /// `t^{j mod 2N}`.
    pub fn t_power(n: u32, j: i64) -> Self {
        let field = CycloField::get(n);
        let j = j.rem_euclid(field.order() as i64) as usize;
        let coeffs = field.powers[j].iter().map(|&c| rat(c)).collect();
        CycloScalar { field, coeffs, half: false }
    }

    /// `N^{halves/2}`.
    pub fn n_power(n: u32, halves: i64) -> Self {
        let (int_exp, half) = if halves.rem_euclid(2) == 0 { (halves / 2, false) } else { ((halves + 1) / 2, true) };
        let base = rat(n as i64);
        let value = if int_exp >= 0 {
            num_traits::pow(base, int_exp as usize)
        } else {
            num_traits::pow(base.recip(), (-int_exp) as usize)
        };
        let mut s = Self::from_rational(n, value);
        s.half = half;
        s
    }

    /// Build from coefficients of `t^0, t^1, …` (any length) and a total exponent of
    /// `N` given in halves.
    pub fn from_coeffs(n: u32, coeffs: &[BigRational], n_exp_halves: i64) -> Self {
        let field = CycloField::get(n);
        let reduced = field.reduce(coeffs);
        let poly = CycloScalar::from_parts(field, reduced, false);
        poly * Self::n_power(n, n_exp_halves)
    }

    pub fn n(&self) -> u32 {
        self.field.n
    }

    pub fn field(&self) -> &'static CycloField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        !self.half && self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The exponent of `N`: `0` or `-1/2`.
    pub fn n_exp(&self) -> BigRational {
        if self.half {
            BigRational::new(BigInt::from(-1), BigInt::from(2))
        } else {
            BigRational::zero()
        }
    }

    /// Whether the scalar carries the `N^{-1/2}` factor.
    pub fn has_half_exponent(&self) -> bool {
        self.half
    }

    /// Coefficients reduced modulo `Φ_{2N}` (length `deg Φ_{2N}`).
    pub fn reduced_coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Reduced coefficients zero-padded to length `2N`.
    pub fn padded_coeffs(&self) -> Vec<BigRational> {
        let mut v = self.coeffs.clone();
        v.resize(self.field.order(), BigRational::zero());
        v
    }

    fn check_field(&self, other: &Self) -> Result<(), ScalarError> {
        if self.field.n != other.field.n {
            return Err(ScalarError::FieldMismatch { left: self.field.n, right: other.field.n });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_field(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.half != other.half {
            return Err(ScalarError::IncommensurableNExp);
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycloScalar::from_parts(self.field, coeffs, self.half))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_field(other)?;
        let field = self.field;
        let deg = field.degree();
        let mut prod = vec![BigRational::zero(); 2 * deg - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut coeffs = field.reduce(&prod);
        let half = match (self.half, other.half) {
            (true, true) => {
                let inv_n = rat(field.n as i64).recip();
                for c in coeffs.iter_mut() {
                    *c *= &inv_n;
                }
                false
            }
            (a, b) => a || b,
        };
        Ok(CycloScalar::from_parts(field, coeffs, half))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c * r).collect();
        CycloScalar::from_parts(self.field, coeffs, self.half)
    }

    /// Complex conjugation, `t ↦ t^{-1}`.
    pub fn conjugate(&self) -> Self {
        let order = self.field.order();
        let mut raw = vec![BigRational::zero(); order];
        for (j, c) in self.coeffs.iter().enumerate() {
            raw[(order - j) % order] += c;
        }
        CycloScalar::from_parts(self.field, self.field.reduce(&raw), self.half)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_{2N}`.
    pub fn try_inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let field = self.field;
        let phi: Vec<BigRational> = field.phi.iter().map(|&c| rat(c)).collect();
        let inv_poly = poly_inverse_mod(&self.coeffs, &phi);
        let base = CycloScalar::from_parts(field, field.reduce(&inv_poly), false);
        if self.half {
            // (N^{-1/2} a)^{-1} = N · N^{-1/2} · a^{-1}
            let mut s = base.scale(&rat(field.n as i64));
            s.half = true;
            Ok(s)
        } else {
            Ok(base)
        }
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ScalarError> {
        self.try_mul(&other.try_inv()?)
    }

    /// Integer power (negative exponents invert).
    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.try_inv()? } else { self.clone() };
        let mut acc = CycloScalar::one(self.n());
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// If the scalar equals `t^j` for some `j`, return `j ∈ [0, 2N)`.
    pub fn as_t_power(&self) -> Option<u32> {
        if self.half {
            return None;
        }
        let field = self.field;
        (0..field.order())
            .find(|&j| field.powers[j].iter().zip(&self.coeffs).all(|(&p, c)| *c == rat(p)))
            .map(|j| j as u32)
    }

    /// Floating-point evaluation at `t = e^{iπ/N}`. Display and cross-checks only.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.field.n as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let angle = std::f64::consts::PI * j as f64 / n;
            acc += Complex64::from_polar(ratio_to_f64(c), angle);
        }
        if self.half {
            acc / n.sqrt()
        } else {
            acc
        }
    }
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let num = r.numer().to_f64().unwrap_or(f64::NAN);
        let den = r.denom().to_f64().unwrap_or(f64::NAN);
        num / den
    })
}

fn trim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn degree(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// `(q, r)` with `a = q b + r`, `deg r < deg b`.
fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = degree(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut r = a.to_vec();
    let mut q = vec![BigRational::zero(); a.len().max(db + 1) - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / &lead;
        for i in 0..=db {
            let delta = &c * &b[i];
            r[dr - db + i] -= delta;
        }
        q[dr - db] = c;
    }
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

fn poly_sub_mul(a: &[BigRational], q: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let len = a.len().max(q.len() + b.len());
    let mut out = vec![BigRational::zero(); len];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, x) in q.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] -= x * y;
        }
    }
    trim(&mut out);
    out
}

/// Inverse of `a` modulo the irreducible `m`.
fn poly_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Vec<BigRational> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    trim(&mut r1);
    let (mut s0, mut s1) = (vec![BigRational::zero()], vec![BigRational::one()]);
    while degree(&r1).is_some_and(|d| d > 0) {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub_mul(&s0, &q, &s1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r1 is a nonzero constant since m is irreducible and a ≢ 0.
    let c = r1[0].recip();
    s1.iter().map(|x| x * &c).collect()
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        let coeffs = self.coeffs.iter().map(|c| -c).collect();
        CycloScalar::from_parts(self.field, coeffs, self.half)
    }
}

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&CycloScalar> for &CycloScalar {
            type Output = CycloScalar;
            /// Panics on incommensurable exponents or mismatched `N`; use the
            /// `try_` methods to handle those cases.
            fn $method(self, rhs: &CycloScalar) -> CycloScalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $method(self, rhs: CycloScalar) -> CycloScalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $method(self, rhs: &CycloScalar) -> CycloScalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<CycloScalar> for &CycloScalar {
            type Output = CycloScalar;
            fn $method(self, rhs: CycloScalar) -> CycloScalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CycloScalar {
    /// Canonical text form `N^{e} * (c_0 + c_1 t + c_2 t^2 + …)`, zero terms omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = if self.half { "-1/2" } else { "0" };
        let mut terms = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = fmt_rational(c);
            terms.push(match j {
                0 => c,
                1 => format!("{c} t"),
                _ => format!("{c} t^{j}"),
            });
        }
        if terms.is_empty() {
            terms.push("0".into());
        }
        write!(f, "N^{{{e}}} * ({})", terms.join(" + "))
    }
}

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[N={}] {}", self.field.n, self)
    }
}

/// JSON mirror: `{"nExp": "-1/2", "coeffs": ["p/q", ...]}` with `2N` coefficients.
#[derive(Serialize, Deserialize)]
struct ScalarJson {
    #[serde(rename = "nExp")]
    n_exp: String,
    coeffs: Vec<String>,
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational, ScalarError> {
    let s = s.trim();
    let bad = || ScalarError::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl Serialize for CycloScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ScalarJson {
            n_exp: fmt_rational(&self.n_exp()),
            coeffs: self.padded_coeffs().iter().map(fmt_rational).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycloScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = ScalarJson::deserialize(deserializer)?;
        if raw.coeffs.is_empty() || raw.coeffs.len() % 2 != 0 {
            return Err(D::Error::custom("coeffs must have length 2N"));
        }
        let n = (raw.coeffs.len() / 2) as u32;
        let coeffs =
            raw.coeffs.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>, _>>().map_err(D::Error::custom)?;
        let e = parse_rational(&raw.n_exp).map_err(D::Error::custom)?;
        let halves = &e * rat(2);
        if !halves.is_integer() {
            return Err(D::Error::custom("nExp must be a half-integer"));
        }
        let halves = halves.to_integer().to_i64().ok_or_else(|| D::Error::custom("nExp too large"))?;
        Ok(CycloScalar::from_coeffs(n, &coeffs, halves))
    }
}

/// Sum helper for iterators of scalars over a known `N`.
pub fn sum<'a, I: IntoIterator<Item = &'a CycloScalar>>(n: u32, items: I) -> CycloScalar {
    items.into_iter().fold(CycloScalar::zero(n), |acc, x| &acc + x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: u32, j: i64) -> CycloScalar {
        CycloScalar::t_power(n, j)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
    }

    #[test]
    fn t_power_reduction() {
        assert!(t(2, 0).is_one());
        assert_eq!(t(2, 2), CycloScalar::from_int(2, -1));
        assert_eq!(t(4, 9), t(4, 1));
        assert_eq!(t(4, -1), t(4, 7));
        assert_eq!(t(6, 3).as_t_power(), Some(3));
    }

    #[test]
    fn additive_identities() {
        assert!((t(2, 1) + -t(2, 1)).is_zero());
        let s = (0..4).fold(CycloScalar::zero(2), |acc, j| acc + t(2, j));
        assert!(s.is_zero());
        let two_t = t(2, 1) + t(2, 1);
        assert_eq!(two_t.padded_coeffs()[1], rat(2));
    }

    #[test]
    fn products() {
        assert_eq!(t(2, 1) * t(2, 1), CycloScalar::from_int(2, -1));
        let inv_sqrt = CycloScalar::n_power(2, -1);
        assert_eq!(&inv_sqrt * &inv_sqrt, CycloScalar::from_rational(2, BigRational::new(1.into(), 2.into())));
        assert_eq!(t(4, 3) * t(4, 6), t(4, 1));
    }

    #[test]
    fn conjugation() {
        assert_eq!(t(3, 1).conjugate(), t(3, 5));
        assert!(CycloScalar::one(5).conjugate().is_one());
        let a = CycloScalar::one(2) + t(2, 1);
        assert_eq!(a.conjugate(), CycloScalar::one(2) + t(2, 3));
    }

    #[test]
    fn complex_values() {
        let z = t(2, 1).to_complex();
        assert!((z - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert_eq!(CycloScalar::zero(2).to_complex(), Complex64::new(0.0, 0.0));
        let r = CycloScalar::n_power(2, 1).to_complex();
        assert!((r.re - std::f64::consts::SQRT_2).abs() < 1e-15 && r.im.abs() < 1e-15);
    }

    #[test]
    fn incommensurable_addition_is_rejected() {
        let a = CycloScalar::one(2);
        let b = CycloScalar::n_power(2, -1);
        assert_eq!(a.try_add(&b), Err(ScalarError::IncommensurableNExp));
        // zero is compatible with either exponent
        assert_eq!(CycloScalar::zero(2).try_add(&b).unwrap(), b);
        assert_eq!(b.try_sub(&b).unwrap(), CycloScalar::zero(2));
    }

    #[test]
    fn inverses() {
        for n in [2u32, 3, 4, 6] {
            let a = CycloScalar::one(n) + t(n, 1) + t(n, 1) + CycloScalar::from_int(n, 3) * t(n, 2);
            let inv = a.try_inv().unwrap();
            assert!((&a * &inv).is_one(), "N={n}");
        }
        let h = CycloScalar::n_power(4, -1) * t(4, 3);
        assert!((&h * &h.try_inv().unwrap()).is_one());
        assert_eq!(CycloScalar::zero(2).try_inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn text_and_json_forms() {
        let a = CycloScalar::n_power(2, -1) * (CycloScalar::one(2) + t(2, 1));
        assert_eq!(a.to_string(), "N^{-1/2} * (1 + 1 t)");
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"{"nExp":"-1/2","coeffs":["1","1","0","0"]}"#);
        let back: CycloScalar = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
        let half: CycloScalar = serde_json::from_str(r#"{"nExp":"1","coeffs":["1/2","0","0","0"]}"#).unwrap();
        assert!(half.is_one());
    }
}
