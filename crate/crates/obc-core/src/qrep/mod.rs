//! Matrix representations of q(n): generator actions, the functors Phi and Psi,
//! central elements and supercommutants.

mod central;
pub mod linalg;
mod matrix;
mod psi;
mod tensor;

pub use central::{
    central_element_matrix, commutant_dim, commutant_dim_mod_p, commutant_dim_over,
    commutant_dim_with, commutant_generators, sgn, sgn_closed,
};
pub use matrix::{matrix_rank, SuperMatrix};
pub use psi::{casimir_matrix, phi_eval, psi_eval, psi_eval_with, Evaluator, TVec};
pub use tensor::{
    act_factor, act_word, basis_of, encode, gen_matrix, module_matrix, parities, parity_of, QGen,
    TailModule, TensorTail,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QrepError {
    #[error("index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("n must be between 1 and 64, got {0}")]
    BadRank(usize),
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is not homogeneous")]
    Inhomogeneous,
    #[error("closed dots are not in the image of Phi; use psi_eval")]
    AffineInPhi,
    #[error("z_k is only defined for odd k, got {0}")]
    EvenCentral(u32),
    #[error("space of dimension {dim} exceeds the cap {cap}")]
    SizeCap { dim: usize, cap: usize },
}

/// The natural module `V` of q(n), of dimension `(n|n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QnContext {
    pub n: usize,
    /// Largest tensor space dimension the evaluators will build.
    pub dim_cap: usize,
}

impl QnContext {
    pub const DEFAULT_DIM_CAP: usize = 4096;

    pub fn new(n: usize) -> Result<QnContext, QrepError> {
        if n == 0 || n > 64 {
            return Err(QrepError::BadRank(n));
        }
        Ok(QnContext {
            n,
            dim_cap: Self::DEFAULT_DIM_CAP,
        })
    }

    pub fn with_cap(mut self, cap: usize) -> QnContext {
        self.dim_cap = cap;
        self
    }

    pub fn dim_v(&self) -> usize {
        2 * self.n
    }

    pub fn check_index(&self, i: usize) -> Result<(), QrepError> {
        if i == 0 || i > self.n {
            return Err(QrepError::IndexOutOfRange {
                index: i,
                n: self.n,
            });
        }
        Ok(())
    }
}
