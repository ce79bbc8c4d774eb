//! Exact computation with nilpotent Lie algebras and their unipotent
//! representations: canonical filtrations, flag/wide classification,
//! automorphism Lie algebras, width and A-invariants, slice canonical
//! forms, and the degree-two cohomological gluing obstruction.
//!
//! All arithmetic is exact, over the rationals or a simple algebraic
//! extension of them. There is no floating point anywhere.

pub mod autgrp;
pub mod canon;
pub mod error;
pub mod exactnum;
pub mod fixtures;
pub mod glue;
pub mod liealg;
pub mod linalg;
pub mod moduli;
pub mod rep;

pub use error::Error;
pub use exactnum::{FieldSpec, Scalar};
pub use linalg::{Matrix, Subspace};
