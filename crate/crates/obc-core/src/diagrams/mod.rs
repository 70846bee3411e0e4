//! Objects, generators and un-normalized layered expressions.

mod expr;
mod gen;
mod parse;
mod word;

pub use expr::{
    black_degree, expand_stack, expr_compose, expr_tensor, parity, Expr, Parity, Stack,
};
pub use gen::{Gen, Layer, ALL_GENS};
pub use parse::{parse_expr, print_expr};
pub use word::{Dir, Word};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("type mismatch in {op}: {left} vs {right}")]
    TypeMismatch {
        op: &'static str,
        left: String,
        right: String,
    },
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("type error at {line}:{col}: {msg}")]
    Type {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("expression is not homogeneous")]
    Inhomogeneous,
    #[error("a stack needs at least one layer to infer its type")]
    EmptyStack,
    #[error("bad word: {0}")]
    BadWord(String),
}
