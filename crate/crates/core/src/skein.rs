//! The reduced linking-number skein algebra of `Σ_g × [0,1]` stored in the
//! monomial basis `a^p b^q`, its action on the handlebody, `Ω`-coloured
//! curves and twist words.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::AlgebraError;
use crate::heisenberg::HeisElement;
use crate::linalg::Matrix;
use crate::scalar::CycloScalar;
use crate::theta::{
    dehn_twist_matrix, dot, is_primitive, op_pq, SymplecticMatrix, ThetaOperator, ThetaSpace, ThetaVector,
};

/// Skein of the handlebody in the basis `a_1^{μ_1}⋯a_g^{μ_g}`, identified with `θ_μ`.
pub type HandlebodyVector = ThetaVector;

/// Linear combination of the monomials `a^p b^q` with `p, q` mod `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeinElement {
    n: u32,
    g: usize,
    terms: BTreeMap<(Vec<i64>, Vec<i64>), CycloScalar>,
}

impl SkeinElement {
    pub fn zero(n: u32, g: usize) -> Self {
        SkeinElement { n, g, terms: BTreeMap::new() }
    }

    /// The empty link.
    pub fn empty(n: u32, g: usize) -> Self {
        Self::monomial(n, &vec![0; g], &vec![0; g], CycloScalar::one(n))
    }

    pub fn monomial(n: u32, p: &[i64], q: &[i64], c: CycloScalar) -> Self {
        let mut s = Self::zero(n, p.len());
        s.add_term(p, q, &c);
        s
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn add_term(&mut self, p: &[i64], q: &[i64], c: &CycloScalar) {
        if c.is_zero() {
            return;
        }
        let m = self.n as i64;
        let key = (p.iter().map(|x| x.rem_euclid(m)).collect(), q.iter().map(|x| x.rem_euclid(m)).collect());
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

    pub fn coeff(&self, p: &[i64], q: &[i64]) -> CycloScalar {
        let m = self.n as i64;
        let key: (Vec<i64>, Vec<i64>) =
            (p.iter().map(|x| x.rem_euclid(m)).collect(), q.iter().map(|x| x.rem_euclid(m)).collect());
        self.terms.get(&key).cloned().unwrap_or_else(|| CycloScalar::zero(self.n))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Vec<i64>, Vec<i64>), &CycloScalar)> {
        self.terms.iter()
    }

    pub fn scale(&self, s: &CycloScalar) -> Self {
        let mut out = Self::zero(self.n, self.g);
        for ((p, q), c) in &self.terms {
            out.add_term(p, q, &(c * s));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((p, q), c) in &other.terms {
            out.add_term(p, q, c);
        }
        out
    }

    /// Image of `(p, q, k)`: `t^{k - p·q} a^p b^q`.
    pub fn from_heisenberg(x: &HeisElement, n: u32) -> Self {
        Self::monomial(n, &x.p, &x.q, CycloScalar::t_power(n, x.k - dot(&x.p, &x.q)))
    }

    /// Stacking `self` on top of `other`:
    /// `a^p b^q · a^{p'} b^{q'} = t^{-2 q·p'} a^{p+p'} b^{q+q'}`.
    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.n != other.n || self.g != other.g {
            return Err(AlgebraError::DimensionMismatch { expected: self.g, got: other.g });
        }
        let mut out = Self::zero(self.n, self.g);
        for ((p, q), a) in &self.terms {
            for ((p2, q2), b) in &other.terms {
                let phase = CycloScalar::t_power(self.n, -2 * dot(q, p2));
                let pp: Vec<i64> = p.iter().zip(p2).map(|(x, y)| x + y).collect();
                let qq: Vec<i64> = q.iter().zip(q2).map(|(x, y)| x + y).collect();
                out.add_term(&pp, &qq, &(&(a * b) * &phase));
            }
        }
        Ok(out)
    }

    /// Matrix of the action on the handlebody; `a^p b^q` acts as `t^{p·q} O_pq`.
    pub fn operator(&self) -> Result<ThetaOperator, AlgebraError> {
        let space = ThetaSpace::new(self.n, self.g)?;
        let mut m = Matrix::zeros(self.n, space.dim(), space.dim());
        for ((p, q), c) in &self.terms {
            let op = op_pq(space, p, q)?;
            let s = c * &CycloScalar::t_power(self.n, dot(p, q));
            m = m.add(&op.matrix().scale(&s));
        }
        ThetaOperator::from_matrix(space, m)
    }

    pub fn act_on_handlebody(&self, v: &HandlebodyVector) -> Result<HandlebodyVector, AlgebraError> {
        if v.space() != ThetaSpace::new(self.n, self.g)? {
            return Err(AlgebraError::DimensionMismatch { expected: self.g, got: v.space().g });
        }
        Ok(self.operator()?.apply(v))
    }
}

/// Parallel-framed simple closed curve of class `(p, q)`: `t^{-p·q} a^p b^q`.
pub fn scc(p: &[i64], q: &[i64], n: u32) -> Result<SkeinElement, AlgebraError> {
    if p.len() != q.len() {
        return Err(AlgebraError::DimensionMismatch { expected: p.len(), got: q.len() });
    }
    let c: Vec<i64> = p.iter().chain(q).copied().collect();
    if !is_primitive(&c) {
        return Err(AlgebraError::NotPrimitive);
    }
    Ok(SkeinElement::from_heisenberg(&HeisElement::new(p.to_vec(), q.to_vec(), 0)?, n))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FramedCurve {
    p: Vec<i64>,
    q: Vec<i64>,
    framing: i64,
}

impl FramedCurve {
    pub fn new(p: Vec<i64>, q: Vec<i64>, framing: i64) -> Result<Self, AlgebraError> {
        if p.len() != q.len() {
            return Err(AlgebraError::DimensionMismatch { expected: p.len(), got: q.len() });
        }
        let c: Vec<i64> = p.iter().chain(&q).copied().collect();
        if !is_primitive(&c) {
            return Err(AlgebraError::NotPrimitive);
        }
        Ok(FramedCurve { p, q, framing })
    }

    pub fn p(&self) -> &[i64] {
        &self.p
    }

    pub fn q(&self) -> &[i64] {
        &self.q
    }

    pub fn framing(&self) -> i64 {
        self.framing
    }

    pub fn genus(&self) -> usize {
        self.p.len()
    }

    /// The Dehn twist whose surgery curve this is; framing `±1` gives `T^±`.
    pub fn twist(&self) -> Result<SymplecticMatrix, AlgebraError> {
        dehn_twist_matrix(&self.p, &self.q, self.framing)
    }
}

/// `Ω(c) = N^{-1/2} Σ_{k=0}^{N-1} t^{f k²} · scc(k c)`; the `k`-cable of a
/// framed curve is the `k`-fold multiple of its class.
pub fn omega_curve(c: &FramedCurve, n: u32) -> SkeinElement {
    let mut out = SkeinElement::zero(n, c.genus());
    for k in 0..n as i64 {
        let p: Vec<i64> = c.p.iter().map(|x| k * x).collect();
        let q: Vec<i64> = c.q.iter().map(|x| k * x).collect();
        let cable = SkeinElement::from_heisenberg(&HeisElement { p, q, k: 0 }, n);
        out = out.add(&cable.scale(&CycloScalar::t_power(n, c.framing * k * k)));
    }
    out.scale(&CycloScalar::n_power(n, -1))
}

/// Sequence of twists `T_1^± ⋯ T_n^±`; as a mapping class `T_n` is applied first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistWord {
    g: usize,
    twists: Vec<FramedCurve>,
}

impl TwistWord {
    pub fn new(g: usize, twists: Vec<FramedCurve>) -> Result<Self, AlgebraError> {
        for c in &twists {
            if c.genus() != g {
                return Err(AlgebraError::DimensionMismatch { expected: g, got: c.genus() });
            }
            if c.framing.abs() != 1 {
                return Err(AlgebraError::BadWord("twist framings must be ±1".into()));
            }
        }
        Ok(TwistWord { g, twists })
    }

    /// Parses `T[b1]+ T[a2]- T[(1,0|0,1)]+`; whitespace separated, possibly empty.
    pub fn parse(text: &str, g: usize) -> Result<Self, AlgebraError> {
        let bad = |tok: &str, why: &str| AlgebraError::BadWord(format!("`{tok}`: {why}"));
        let mut twists = Vec::new();
        for tok in text.split_whitespace() {
            let body = tok.strip_prefix("T[").ok_or_else(|| bad(tok, "expected T[...]"))?;
            let (curve, sign) = body.rsplit_once(']').ok_or_else(|| bad(tok, "missing ]"))?;
            let framing = match sign {
                "+" => 1,
                "-" => -1,
                _ => return Err(bad(tok, "expected trailing + or -")),
            };
            let (p, q) = if let Some(inner) = curve.strip_prefix('(').and_then(|c| c.strip_suffix(')')) {
                let (ps, qs) = inner.split_once('|').ok_or_else(|| bad(tok, "expected (p..|q..)"))?;
                let nums = |s: &str| -> Result<Vec<i64>, AlgebraError> {
                    s.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| bad(tok, "bad integer"))).collect()
                };
                (nums(ps)?, nums(qs)?)
            } else {
                let (kind, idx) = curve.split_at(curve.len().min(1));
                let i: usize = idx.parse().map_err(|_| bad(tok, "bad curve index"))?;
                if i == 0 || i > g {
                    return Err(bad(tok, "curve index out of range"));
                }
                let mut p = vec![0; g];
                let mut q = vec![0; g];
                match kind {
                    "a" => p[i - 1] = 1,
                    "b" => q[i - 1] = 1,
                    _ => return Err(bad(tok, "curve must be a<i>, b<i> or (p|q)")),
                }
                (p, q)
            };
            if p.len() != g || q.len() != g {
                return Err(bad(tok, "curve has the wrong genus"));
            }
            twists.push(FramedCurve::new(p, q, framing).map_err(|e| bad(tok, &e.to_string()))?);
        }
        Ok(TwistWord { g, twists })
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn twists(&self) -> &[FramedCurve] {
        &self.twists
    }

    pub fn symplectic(&self) -> Result<SymplecticMatrix, AlgebraError> {
        self.twists.iter().try_fold(SymplecticMatrix::identity(self.g), |acc, c| Ok(acc.compose(&c.twist()?)))
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let toks: Vec<String> = self
            .twists
            .iter()
            .map(|c| {
                let sign = if c.framing > 0 { '+' } else { '-' };
                format!("T[({}|{})]{}", join(&c.p), join(&c.q), sign)
            })
            .collect();
        write!(f, "{}", toks.join(" "))
    }
}

/// The handlebody action of `Ω(T_1) ⋯ Ω(T_n)`, projectively `ρ(T_1 ⋯ T_n)`.
pub fn rho_via_omega(word: &TwistWord, n: u32) -> Result<ThetaOperator, AlgebraError> {
    let mut acc = SkeinElement::empty(n, word.g);
    for c in &word.twists {
        acc = acc.mul(&omega_curve(c, n))?;
    }
    acc.operator()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::{egorov_residual_of, fourier_matrix, heis_mul, FiniteHeisenberg, Lagrangian};

    fn t(n: u32, j: i64) -> CycloScalar {
        CycloScalar::t_power(n, j)
    }

    #[test]
    fn from_heisenberg_examples() {
        let x = SkeinElement::from_heisenberg(&HeisElement { p: vec![1], q: vec![1], k: 1 }, 2);
        assert!(x.coeff(&[1], &[1]).is_one());
        let c = SkeinElement::from_heisenberg(&HeisElement::central(1, 3), 4);
        assert_eq!(c, SkeinElement::empty(4, 1).scale(&t(4, 3)));
    }

    #[test]
    fn monomial_products() {
        let a = SkeinElement::monomial(4, &[1], &[0], CycloScalar::one(4));
        let b = SkeinElement::monomial(4, &[0], &[1], CycloScalar::one(4));
        assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap().scale(&t(4, 2)));
        let a2 = SkeinElement::monomial(2, &[2], &[0], CycloScalar::one(2));
        assert_eq!(a2.mul(&a2).unwrap(), SkeinElement::empty(2, 1));
        let e = SkeinElement::empty(4, 1);
        assert_eq!(e.mul(&a).unwrap(), a);
    }

    #[test]
    fn heisenberg_map_is_multiplicative() {
        let group = FiniteHeisenberg::new(2, 1).unwrap();
        for x in group.elements() {
            for y in group.elements() {
                let lhs = SkeinElement::from_heisenberg(&heis_mul(&x, &y).unwrap(), 2);
                let rhs = SkeinElement::from_heisenberg(&x, 2).mul(&SkeinElement::from_heisenberg(&y, 2)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn action_examples() {
        let space = ThetaSpace::new(2, 1).unwrap();
        let b = scc(&[0], &[1], 2).unwrap();
        let th0 = ThetaVector::basis(space, &[0]);
        assert_eq!(b.act_on_handlebody(&th0).unwrap(), th0);
        let a = scc(&[1], &[0], 2).unwrap();
        assert_eq!(a.act_on_handlebody(&ThetaVector::basis(space, &[1])).unwrap(), th0);
        let v = ThetaVector::basis(space, &[1]);
        assert_eq!(SkeinElement::empty(2, 1).act_on_handlebody(&v).unwrap(), v);
    }

    #[test]
    fn action_is_a_module_action() {
        let group = FiniteHeisenberg::new(2, 1).unwrap();
        let space = ThetaSpace::new(2, 1).unwrap();
        let skeins: Vec<_> = group.elements().map(|x| SkeinElement::from_heisenberg(&x, 2)).collect();
        for x in &skeins {
            for y in &skeins {
                let xy = x.mul(y).unwrap();
                for mu in 0..2 {
                    let v = ThetaVector::basis(space, &[mu]);
                    let lhs = x.act_on_handlebody(&y.act_on_handlebody(&v).unwrap()).unwrap();
                    assert_eq!(lhs, xy.act_on_handlebody(&v).unwrap());
                }
            }
        }
    }

    #[test]
    fn scc_examples() {
        assert!(scc(&[1], &[0], 4).unwrap().coeff(&[1], &[0]).is_one());
        assert!(scc(&[0], &[1], 4).unwrap().coeff(&[0], &[1]).is_one());
        assert_eq!(scc(&[1], &[1], 4).unwrap().coeff(&[1], &[1]), t(4, -1));
        assert_eq!(scc(&[2], &[0], 4), Err(AlgebraError::NotPrimitive));
    }

    #[test]
    fn omega_examples() {
        let half = CycloScalar::n_power(2, -1);
        let b = FramedCurve::new(vec![0], vec![1], 1).unwrap();
        let expect = SkeinElement::empty(2, 1).add(&SkeinElement::monomial(2, &[0], &[1], t(2, 1))).scale(&half);
        assert_eq!(omega_curve(&b, 2), expect);
        let a = FramedCurve::new(vec![1], vec![0], -1).unwrap();
        let expect = SkeinElement::empty(2, 1).add(&SkeinElement::monomial(2, &[1], &[0], t(2, -1))).scale(&half);
        assert_eq!(omega_curve(&a, 2), expect);
    }

    #[test]
    fn twist_word_parsing() {
        let w = TwistWord::parse("T[b1]+ T[a1]-", 1).unwrap();
        assert_eq!(w.twists().len(), 2);
        assert_eq!(w.twists()[1], FramedCurve::new(vec![1], vec![0], -1).unwrap());
        let w2 = TwistWord::parse(&w.to_string(), 1).unwrap();
        assert_eq!(w, w2);
        let g2 = TwistWord::parse("T[(1,0|0,1)]+ T[b2]-", 2).unwrap();
        assert_eq!(g2.twists()[0].q(), &[0, 1]);
        assert!(TwistWord::parse("", 1).unwrap().twists().is_empty());
        for bad in ["T[c1]+", "T[b2]+", "T[b1]", "T[(2,0)]+", "T[(2|0)]+"] {
            assert!(TwistWord::parse(bad, 1).is_err(), "{bad}");
        }
    }

    #[test]
    fn omega_agrees_with_fourier() {
        for n in [2, 4] {
            for text in ["T[b1]+", "T[a1]+", "T[a1]- T[b1]+", "T[a1]+ T[b1]+ T[a1]+"] {
                let word = TwistWord::parse(text, 1).unwrap();
                let h = word.symplectic().unwrap();
                let via_omega = rho_via_omega(&word, n).unwrap();
                let via_cosets = fourier_matrix(&h, &Lagrangian::standard(1), n).unwrap().forward;
                assert!(via_omega.projectively_equal(&via_cosets), "{text} at N={n}");
                assert_eq!(egorov_residual_of(&h, &via_omega).unwrap(), 0);
            }
        }
    }
}
