//! An exact symbolic engine for graded algebras whose homogeneous elements
//! commute up to a cocycle factor, with a twist map deforming the classical
//! identities.
//!
//! The crate provides:
//!
//! * exact scalars — rational functions in one formal parameter `q` over
//!   the rationals, with decidable equality ([`scalar`]);
//! * grading groups, degrees, and bi-multiplicative commutation cocycles
//!   ([`grading`]);
//! * canonical-form arithmetic in two backends — Laurent monomials over a
//!   quantum torus, and finite multiplication tables ([`algebra`]);
//! * the derivation module with its twisted Leibniz rule, bracket, and
//!   bimodule actions ([`derivation`]);
//! * forms, twisted tensor products, metrics, the Levi-Civita connection
//!   with its coefficient table, torsion, and curvature
//!   ([`tensor`], [`metric`], [`connection`]);
//! * the cochain complex with coboundary, interior product, and Lie
//!   derivative, plus symplectic structures, Hamiltonian derivations, and
//!   Poisson brackets ([`cochain`], [`symplectic`]);
//! * a text format for models, an expression parser, and canonical
//!   rendering ([`model`], [`parse`], [`render`]).
//!
//! Every verification entry point returns a [`report::Report`] whose
//! failures carry concrete witnesses; nothing is approximated, so a passing
//! check is an exact symbolic identity.

// index-driven loops over parallel matrices read better than zipped
// iterators in the linear-algebra code
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod cochain;
pub mod connection;
pub mod derivation;
pub mod error;
pub mod grading;
pub mod metric;
pub mod model;
pub mod parse;
pub mod render;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod suites;
pub mod symplectic;
pub mod tensor;

#[cfg(test)]
pub(crate) mod testmodels;

pub use algebra::{AlgebraSpec, Backend, Element, Generator, Mono, PhiMultipliers};
pub use cochain::{cartan_residual, d_mu, interior, lie_derivative, Cochain};
pub use connection::{
    christoffel, curvature, curvature4, check_connection, covariant_derivative,
    koszul_connection, nabla, torsion, Connection, GammaTable,
};
pub use derivation::{
    apply_derivation, apply_phi_a, check_hom_rho_lie, check_phik_derivation,
    derivation_bracket, Derivation, DerivationBasis,
};
pub use error::{Error, Result};
pub use grading::{CocycleBase, CocycleSpec, Degree, GradingGroup};
pub use metric::Metric;
pub use model::Model;
pub use report::{CheckEntry, Report, Status};
pub use scalar::{Poly, Rat, Scalar};
pub use symplectic::{check_poisson_axioms, poisson, PoissonStructure, SymplecticStructure};
pub use tensor::{tensor_product, wedge, Tensor, TensorKind};
