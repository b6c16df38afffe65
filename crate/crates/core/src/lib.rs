//! Exact computations with Feigin-Stoyanovsky type subspaces of level 1 standard
//! modules for affine `sl(l+1)`.
//!
//! The combinatorial side ([`monomial`], [`admissibility`], [`enumerator`]) produces
//! the candidate bases; the lattice vertex operator model in [`fock`] evaluates them,
//! and [`verifier`], [`intertwine`] and [`standard_module`] check the claims about them
//! by exact rank computations.

pub mod admissibility;
pub mod enumerator;
pub mod error;
pub mod fock;
pub mod intertwine;
pub mod linalg;
pub mod monomial;
pub mod root_data;
pub mod standard_module;
pub mod verifier;

pub use error::{Error, Result};
pub use monomial::{Monomial, Variable};
pub use root_data::{Color, GradationConfig, WeightVector};
