//! Exact computation with unital partial Galois actions of finite groups on
//! finite-rank commutative algebras.
//!
//! The crate is organised bottom-up:
//!
//! - [`scalars`]: the base rings `Q` and `Z/n`, matrices, Howell forms.
//! - [`algebra`]: algebras by structure constants, ideals, tensor products.
//! - [`groups`]: finite groups, subgroups, quotients.
//! - [`paction`]: partial actions, their axioms, invariants and isomorphisms.
//! - [`envelope`]: globalizations and the subgroup maps `psi_H`.
//! - [`quotient`]: the induced action of `G/H` on `S^{alpha_H}`.
//! - [`harrison`]: tensor actions and the Harrison product of classes.
//! - [`format`] and [`corpus`]: the JSON interchange format and fixtures.

pub mod algebra;
pub mod corpus;
pub mod envelope;
pub mod error;
pub mod format;
pub mod groups;
pub mod harrison;
pub mod paction;
pub mod quotient;
pub mod scalars;

pub use error::{Error, Result};
