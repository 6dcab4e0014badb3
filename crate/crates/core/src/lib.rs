//! Exact algebra of classical theta functions and abelian Chern–Simons theory
//! at level `N`: cyclotomic scalars, the finite Heisenberg group and its
//! Schrödinger representation, discrete Fourier transforms, linking-number
//! skeins, the ribbon Hopf algebra `C[Z_{2N}]`, and a sliced tangle evaluator.

pub mod commands;
pub mod error;
pub mod heisenberg;
pub mod linalg;
pub mod numeric;
pub mod qgroup;
pub mod scalar;
pub mod skein;
pub mod tangle;
pub mod theta;

pub use error::{AlgebraError, Error, Result, ScalarError};
pub use scalar::CycloScalar;
