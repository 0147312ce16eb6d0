//! Exact elementary and elementary symplectic group computations over commutative rings.
//!
//! The crate builds words in elementary generators whose evaluations equal stated closed
//! forms exactly, and checks every such claim by evaluation.

pub mod error;
pub mod ideal;
pub mod matrix;
pub mod ring;
pub mod word;
pub mod decompose;
pub mod rewrite;
pub mod bridge;
pub mod verify;
pub mod api;

pub use error::{Error, Result};
pub use ideal::{certify, product_certificate, CertifiedElement, IdealPresentation};
pub use matrix::{
    is_alternating, is_symplectic, kernel_decomposition, pfaffian, standard_symplectic_form, tilde,
    ColumnVector, ExactMatrix,
};
pub use ring::{half, invert_unit, ring_arith, ArithOp, Ring, RingDescriptor, RingElement};
pub use word::{sigma, Generator, Letter, Relation, Word};
