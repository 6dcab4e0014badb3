//! Floating-point theta series: truncated evaluation, periodicity residuals
//! and a quadrature Gram matrix for the `L²` inner product on the torus.
//!
//! Truncating the series to `|n|_∞ ≤ M` drops terms of size at most
//! `exp(-π N λ_min(Π_I) M²)` up to polynomial factors, where `λ_min(Π_I)` is the
//! smallest eigenvalue of `Im Π`. At `N = 2`, `Π = i`, `M = 10` this is below
//! `1e-270`, so residuals are dominated by rounding.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("period matrix is not symmetric")]
    NotSymmetric,
    #[error("imaginary part of the period matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("expected {expected} entries, got {got}")]
    BadShape { expected: usize, got: usize },
    #[error("lattice index must lie in 1..={max}, got {got}")]
    BadIndex { max: usize, got: usize },
    #[error("{0}")]
    BadParameter(String),
}

/// Symmetric `g × g` complex matrix with positive definite imaginary part.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<[f64; 2]>>", into = "Vec<Vec<[f64; 2]>>")]
pub struct PeriodMatrix {
    g: usize,
    entries: Vec<Complex64>,
    /// Lower Cholesky factor of `Im Π`, row-major.
    chol: Vec<f64>,
}

fn cholesky(a: &[f64], g: usize) -> Option<Vec<f64>> {
    let mut l = vec![0.0; g * g];
    for i in 0..g {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i * g + k] * l[j * g + k]).sum();
            if i == j {
                let d = a[i * g + i] - s;
                if d <= 0.0 || !d.is_finite() {
                    return None;
                }
                l[i * g + i] = d.sqrt();
            } else {
                l[i * g + j] = (a[i * g + j] - s) / l[j * g + j];
            }
        }
    }
    Some(l)
}

impl PeriodMatrix {
    pub fn new(g: usize, entries: Vec<Complex64>) -> Result<Self, NumericError> {
        if g == 0 || entries.len() != g * g {
            return Err(NumericError::BadShape { expected: g * g, got: entries.len() });
        }
        for i in 0..g {
            for j in 0..i {
                if entries[i * g + j] != entries[j * g + i] {
                    return Err(NumericError::NotSymmetric);
                }
            }
        }
        let imag: Vec<f64> = entries.iter().map(|z| z.im).collect();
        let chol = cholesky(&imag, g).ok_or(NumericError::NotPositiveDefinite)?;
        Ok(PeriodMatrix { g, entries, chol })
    }

    /// `τ · I_g`.
    pub fn scalar(g: usize, tau: Complex64) -> Result<Self, NumericError> {
        let entries = (0..g * g).map(|i| if i / g == i % g { tau } else { Complex64::new(0.0, 0.0) }).collect();
        Self::new(g, entries)
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.g + j]
    }

    /// `det Im Π` from the Cholesky factor.
    pub fn det_imag(&self) -> f64 {
        (0..self.g).map(|i| self.chol[i * self.g + i].powi(2)).product()
    }

    fn quadratic(&self, v: &[f64]) -> Complex64 {
        let g = self.g;
        let mut s = Complex64::new(0.0, 0.0);
        for i in 0..g {
            for j in 0..g {
                s += self.entries[i * g + j] * (v[i] * v[j]);
            }
        }
        s
    }

    /// `Π y` for real `y`.
    fn apply_real(&self, y: &[f64]) -> Vec<Complex64> {
        (0..self.g).map(|i| (0..self.g).map(|j| self.entries[i * self.g + j] * y[j]).sum()).collect()
    }
}

impl TryFrom<Vec<Vec<[f64; 2]>>> for PeriodMatrix {
    type Error = NumericError;

    fn try_from(rows: Vec<Vec<[f64; 2]>>) -> Result<Self, Self::Error> {
        let g = rows.len();
        let mut entries = Vec::with_capacity(g * g);
        for row in &rows {
            if row.len() != g {
                return Err(NumericError::BadShape { expected: g, got: row.len() });
            }
            entries.extend(row.iter().map(|[re, im]| Complex64::new(*re, *im)));
        }
        PeriodMatrix::new(g, entries)
    }
}

impl From<PeriodMatrix> for Vec<Vec<[f64; 2]>> {
    fn from(p: PeriodMatrix) -> Self {
        (0..p.g).map(|i| (0..p.g).map(|j| [p.get(i, j).re, p.get(i, j).im]).collect()).collect()
    }
}

/// `θ_μ^Π` truncated to `|n|_∞ ≤ M`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedThetaSeries {
    n: u32,
    mu: Vec<i64>,
    pi: PeriodMatrix,
    m: usize,
}

fn lattice(g: usize, m: usize) -> impl Iterator<Item = Vec<i64>> {
    let side = 2 * m + 1;
    (0..side.pow(g as u32)).map(move |mut idx| {
        let mut v = vec![0i64; g];
        for slot in v.iter_mut().rev() {
            *slot = (idx % side) as i64 - m as i64;
            idx /= side;
        }
        v
    })
}

impl TruncatedThetaSeries {
    pub fn new(n: u32, mu: Vec<i64>, pi: PeriodMatrix, m: usize) -> Result<Self, NumericError> {
        if n == 0 || n % 2 != 0 {
            return Err(NumericError::BadParameter(format!("N must be positive and even, got {n}")));
        }
        if mu.len() != pi.genus() {
            return Err(NumericError::BadShape { expected: pi.genus(), got: mu.len() });
        }
        if m == 0 {
            return Err(NumericError::BadParameter("truncation radius must be at least 1".into()));
        }
        Ok(TruncatedThetaSeries { n, mu, pi, m })
    }

    pub fn genus(&self) -> usize {
        self.pi.genus()
    }

    pub fn with_truncation(&self, m: usize) -> Self {
        TruncatedThetaSeries { m, ..self.clone() }
    }
}

/// `Σ_{|n|_∞ ≤ M} exp(2πiN[½ vᵀΠv + vᵀz])` with `v = μ/N + n`.
pub fn theta_eval(s: &TruncatedThetaSeries, z: &[Complex64]) -> Complex64 {
    let g = s.genus();
    assert_eq!(z.len(), g);
    let nf = s.n as f64;
    let scale = Complex64::new(0.0, 2.0 * PI * nf);
    lattice(g, s.m)
        .map(|n| {
            let v: Vec<f64> = n.iter().zip(&s.mu).map(|(n, mu)| *mu as f64 / nf + *n as f64).collect();
            let linear: Complex64 = v.iter().zip(z).map(|(a, b)| b * a).sum();
            (scale * (s.pi.quadratic(&v) * 0.5 + linear)).exp()
        })
        .sum()
}

/// Independent evaluation for cross-checks: runs the lattice in the opposite
/// order, expands the exponent into real and imaginary parts by hand and uses
/// Kahan summation.
pub fn theta_eval_compensated(s: &TruncatedThetaSeries, z: &[Complex64]) -> Complex64 {
    let g = s.genus();
    let nf = s.n as f64;
    let points: Vec<Vec<i64>> = lattice(g, s.m).collect();
    let (mut re, mut im) = (0.0f64, 0.0f64);
    let (mut cre, mut cim) = (0.0f64, 0.0f64);
    for n in points.iter().rev() {
        let v: Vec<f64> = n.iter().zip(&s.mu).map(|(n, mu)| (*n as f64 * nf + *mu as f64) / nf).collect();
        // exponent 2πiN·w with w = ½ vᵀΠv + vᵀz = a + ib gives modulus e^{-2πNb}, phase 2πNa
        let (mut a, mut b) = (0.0, 0.0);
        for i in 0..g {
            a += v[i] * z[i].re;
            b += v[i] * z[i].im;
            for j in 0..g {
                let p = s.pi.get(i, j);
                a += 0.5 * v[i] * v[j] * p.re;
                b += 0.5 * v[i] * v[j] * p.im;
            }
        }
        let modulus = (-2.0 * PI * nf * b).exp();
        let phase = 2.0 * PI * nf * a;
        for (acc, comp, term) in
            [(&mut re, &mut cre, modulus * phase.cos()), (&mut im, &mut cim, modulus * phase.sin())]
        {
            let y = term - *comp;
            let t = *acc + y;
            *comp = (t - *acc) - y;
            *acc = t;
        }
    }
    Complex64::new(re, im)
}

/// `|f(z + λ_j) - c_j(z) f(z)| / max(1, |f(z + λ_j)|)` for the lattice vectors
/// `λ_j = e_j` (`j ≤ g`) and `λ_{g+k} = Π e_k`, where `c = 1` and
/// `c = exp(-2πiN z_k - πiN Π_kk)` respectively. The series grows like
/// `exp(2πN ⋅ Im(z)ᵀ Im(Π)⁻¹ Im(z) / 2)`, so only the relative error is meaningful
/// in floating point. Truncation contributes about `exp(-πN λ_min(Im Π) M²)`.
pub fn periodicity_residual(s: &TruncatedThetaSeries, z: &[Complex64], j: usize) -> Result<f64, NumericError> {
    let g = s.genus();
    if j == 0 || j > 2 * g {
        return Err(NumericError::BadIndex { max: 2 * g, got: j });
    }
    let base = theta_eval(s, z);
    let mut shifted = z.to_vec();
    let factor = if j <= g {
        shifted[j - 1] += 1.0;
        Complex64::new(1.0, 0.0)
    } else {
        let k = j - g - 1;
        for (i, slot) in shifted.iter_mut().enumerate() {
            *slot += s.pi.get(i, k);
        }
        let nf = s.n as f64;
        let i_unit = Complex64::new(0.0, 1.0);
        (-(i_unit * 2.0 * PI * nf * z[k]) - i_unit * PI * nf * s.pi.get(k, k)).exp()
    };
    let moved = theta_eval(s, &shifted);
    Ok((moved - factor * base).norm() / moved.norm().max(1.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quadrature {
    Midpoint,
    GaussLegendre,
}

/// Nodes and weights on `[0, 1]`.
pub fn quadrature_rule(rule: Quadrature, q: usize) -> (Vec<f64>, Vec<f64>) {
    match rule {
        Quadrature::Midpoint => ((0..q).map(|i| (i as f64 + 0.5) / q as f64).collect(), vec![1.0 / q as f64; q]),
        Quadrature::GaussLegendre => {
            let mut nodes = Vec::with_capacity(q);
            let mut weights = Vec::with_capacity(q);
            for i in 0..q {
                // Newton iteration from the Chebyshev-like initial guess
                let mut x = (PI * (i as f64 + 0.75) / (q as f64 + 0.5)).cos();
                let mut dp = 0.0;
                for _ in 0..100 {
                    let (mut p0, mut p1) = (1.0, x);
                    for k in 2..=q {
                        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                        p0 = p1;
                        p1 = p2;
                    }
                    let p = if q == 0 { 1.0 } else { p1 };
                    dp = q as f64 * (x * p - p0) / (x * x - 1.0);
                    let dx = p / dp;
                    x -= dx;
                    if dx.abs() < 1e-16 {
                        break;
                    }
                }
                nodes.push((1.0 - x) / 2.0);
                weights.push(1.0 / ((1.0 - x * x) * dp * dp));
            }
            (nodes, weights)
        }
    }
}

/// Numerical Gram matrix `⟨θ_μ, θ_ν⟩ = (2N)^{g/2} (det Π_I)^{1/2} ∫ θ_μ conj(θ_ν) e^{-2πN yᵀΠ_I y} dx dy`
/// over `z = x + Π y`, `(x, y) ∈ [0,1]^{2g}`, with a tensor-product rule of `Q` points per axis.
pub fn gram_quadrature(
    n: u32,
    pi: &PeriodMatrix,
    m: usize,
    q: usize,
    rule: Quadrature,
) -> Result<Vec<Vec<Complex64>>, NumericError> {
    if q < 4 {
        return Err(NumericError::BadParameter(format!("need at least 4 quadrature points, got {q}")));
    }
    let g = pi.genus();
    let space: Vec<Vec<i64>> = lattice_mod(n as usize, g);
    let series: Result<Vec<_>, _> =
        space.iter().map(|mu| TruncatedThetaSeries::new(n, mu.clone(), pi.clone(), m)).collect();
    let series = series?;
    let (nodes, weights) = quadrature_rule(rule, q);
    let dim = series.len();
    let mut gram = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    let prefactor = (2.0 * n as f64).powf(g as f64 / 2.0) * pi.det_imag().sqrt();
    let points = q.pow(2 * g as u32);
    let mut values = vec![Complex64::new(0.0, 0.0); dim];
    for idx in 0..points {
        let mut rest = idx;
        let mut coords = vec![0usize; 2 * g];
        for slot in coords.iter_mut().rev() {
            *slot = rest % q;
            rest /= q;
        }
        let x: Vec<f64> = coords[..g].iter().map(|&i| nodes[i]).collect();
        let y: Vec<f64> = coords[g..].iter().map(|&i| nodes[i]).collect();
        let w: f64 = coords.iter().map(|&i| weights[i]).product();
        let py = pi.apply_real(&y);
        let z: Vec<Complex64> = x.iter().zip(&py).map(|(a, b)| b + a).collect();
        let mut yiy = 0.0;
        for i in 0..g {
            for j in 0..g {
                yiy += y[i] * y[j] * pi.get(i, j).im;
            }
        }
        let weight = w * prefactor * (-2.0 * PI * n as f64 * yiy).exp();
        for (v, s) in values.iter_mut().zip(&series) {
            *v = theta_eval(s, &z);
        }
        for r in 0..dim {
            for c in 0..dim {
                gram[r][c] += values[r] * values[c].conj() * weight;
            }
        }
    }
    Ok(gram)
}

fn lattice_mod(n: usize, g: usize) -> Vec<Vec<i64>> {
    (0..n.pow(g as u32))
        .map(|mut idx| {
            let mut v = vec![0i64; g];
            for slot in v.iter_mut().rev() {
                *slot = (idx % n) as i64;
                idx /= n;
            }
            v
        })
        .collect()
}

/// `max |G - I|` entrywise.
pub fn identity_error(gram: &[Vec<Complex64>]) -> f64 {
    let mut worst: f64 = 0.0;
    for (r, row) in gram.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            let target = if r == c { 1.0 } else { 0.0 };
            worst = worst.max((v - target).norm());
        }
    }
    worst
}

/// `max |G - G^*|` entrywise.
pub fn hermitian_error(gram: &[Vec<Complex64>]) -> f64 {
    let mut worst: f64 = 0.0;
    for (r, row) in gram.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            worst = worst.max((v - gram[c][r].conj()).norm());
        }
    }
    worst
}
