use super::eval::{linking_oracle, Component, LinkData};
use crate::error::AlgebraError;
use crate::linalg::Matrix;
use crate::scalar::CycloScalar;
use crate::skein::HandlebodyVector;
use crate::theta::{ThetaSpace, ThetaVector};

/// Colours the core curves `a_i` (1-based) and cables them: the result is
/// `a_1^{k_1} ⋯ a_g^{k_g}`, i.e. `θ_k`. Uncoloured cores carry colour 0.
pub fn cable_to_skein(n: u32, g: usize, cores: &[(usize, i64)]) -> Result<HandlebodyVector, AlgebraError> {
    let space = ThetaSpace::new(n, g)?;
    let mut mu = vec![0i64; g];
    let mut seen = vec![false; g];
    for &(i, k) in cores {
        if i == 0 || i > g {
            return Err(AlgebraError::DimensionMismatch { expected: g, got: i });
        }
        if std::mem::replace(&mut seen[i - 1], true) {
            return Err(AlgebraError::BadWord(format!("core a{i} coloured twice")));
        }
        mu[i - 1] = k;
    }
    Ok(ThetaVector::basis(space, &mu))
}

/// The link in `S^3` obtained by gluing two handlebodies with cores coloured
/// `mu` and `nu`. Each core `a_i` links its partner `a'_i` with `lk = -1`, which
/// reproduces the pairing `t^{-2 μ·ν}`.
pub fn core_pair_link(mu: &[i64], nu: &[i64], n: u32) -> LinkData {
    let g = mu.len();
    let order = 2 * n as i64;
    let components =
        mu.iter().chain(nu).map(|&k| Component { color: k.rem_euclid(order) as u32, framing: 0 }).collect();
    let mut lk = vec![vec![0i64; 2 * g]; 2 * g];
    for i in 0..g {
        lk[i][g + i] = -1;
        lk[g + i][i] = -1;
    }
    LinkData { components, lk }
}

#[derive(Clone, Debug)]
pub struct ColoredGram {
    pub matrix: Matrix,
    pub rank: usize,
}

impl ColoredGram {
    /// All of `Z_{2N}^g`, lexicographically.
    pub fn all_colorings(n: u32, g: usize) -> Vec<Vec<i64>> {
        let space = ThetaSpace { n: 2 * n, g };
        space.indices().collect()
    }
}

/// `G_{μν} = <L_μ ∪ L'_ν>` through the linking oracle, with its exact rank.
pub fn colored_gram(n: u32, g: usize, family: &[Vec<i64>]) -> Result<ColoredGram, AlgebraError> {
    ThetaSpace::new(n, g)?;
    for mu in family {
        if mu.len() != g {
            return Err(AlgebraError::DimensionMismatch { expected: g, got: mu.len() });
        }
    }
    let matrix = Matrix::from_fn(n, family.len(), family.len(), |r, c| -> CycloScalar {
        linking_oracle(&core_pair_link(&family[r], &family[c], n), n)
    });
    let rank = matrix.rank();
    Ok(ColoredGram { matrix, rank })
}
