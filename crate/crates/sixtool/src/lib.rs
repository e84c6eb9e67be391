//! Exact computational homological algebra over the integers.
//!
//! The toolkit computes with finitely generated abelian groups presented
//! by integer relation matrices, homomorphisms and their (co)kernels,
//! Ext groups and extension middles, cyclic six-term chain complexes
//! over the 6-cycle quiver with length-two zero relations, total
//! invariants carrying mod-n layers with Bockstein maps, an
//! exact-diagram constraint solver, and the K-theory of Cuntz-Krieger
//! matrices. Everything is exact; there is no floating point anywhere.

pub mod cases;
pub mod catalog;
pub mod ck;
pub mod cli;
pub mod coeff;
pub mod error;
pub mod grid;
pub mod group;
pub mod hom;
pub mod homalg;
pub mod json;
pub mod matrix;
pub mod normal_form;
pub mod scalar;
pub mod sixcomplex;

/// The scalar every group-level computation runs over.
pub type Int = num_bigint::BigInt;

/// Matrices of the group layer.
pub type IntMatrix = matrix::Matrix<Int>;

pub use error::{Error, Result};
pub use group::{FgAbelianGroup, GroupElement};
pub use hom::{hom_group, GroupHom, HomGroup};
