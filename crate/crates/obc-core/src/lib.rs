//! Exact computations in the oriented Brauer-Clifford supercategory, its degenerate
//! affine extension and their cyclotomic quotients.

pub mod algebras;
pub mod cyclotomic;
pub mod diagrams;
pub mod exec;
pub mod normalform;
pub mod qrep;
pub mod scalars;
pub mod suites;
pub mod verma;
