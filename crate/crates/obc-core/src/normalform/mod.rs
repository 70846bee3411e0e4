//! Normal forms for the degenerate affine supercategory: keys, their fixed representatives
//! and the rewriting engine that brings any expression into that basis.

mod key;
mod morphism;
mod normalize;
mod realize;

pub use key::{
    bubble_monomial_count, dim_filtered, enumerate_keys, DotBounds, Endpoint, NormalKey, Side,
    Strand,
};
pub use morphism::{nm_compose, nm_tensor, NormalMorphism};
pub use normalize::{eval_loop, normalize, LoopOrientation, Normalizer, Strategy, DOT_CAP};
pub use realize::{planarize, realize, realize_expr, realize_parts, Bands};

use thiserror::Error;

use crate::diagrams::DiagramError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("invalid key: {0}")]
    BadKey(String),
    #[error("a strand would carry {dots} closed dots, above the cap of {cap}")]
    DotOverflow { dots: u32, cap: u32 },
    #[error("enumeration without a dot bound is infinite")]
    Unbounded,
    #[error("type mismatch in {op}: {left} vs {right}")]
    TypeMismatch {
        op: &'static str,
        left: String,
        right: String,
    },
}
