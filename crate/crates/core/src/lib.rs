//! Mirror constructions for conic fibrations `xy = f(z)` over algebraic tori.
//!
//! The crate is layered bottom-up:
//!
//! * [`laurent`]: exact Laurent polynomials, Newton polytopes, tropicalization.
//! * [`subdivision`]: regular subdivisions from liftings and their dual tropical curves.
//! * [`toricfan`]: toric Calabi-Yau fans, certificates and chart transitions.
//! * [`amoeba`]: numerical amoebas of plane curves and chamber labels.
//! * [`fibration`]: the conic fibration, its moment map and the 2d/3d bases.
//! * [`gluing`]: the unit algebra `c·w^a·(1+w)^k·u^m` and corrected chart gluings.
//! * [`transform`]: semi-flat and corrected transforms of Lagrangian sections.
//! * [`cli`]: the `syz-mirror` command-line front end.

pub mod amoeba;
pub mod cli;
pub mod error;
pub mod fibration;
pub mod gluing;
pub mod lattice;
pub mod laurent;
pub mod rational;
pub mod subdivision;
pub mod toricfan;
pub mod transform;

pub use error::{Error, Result};

/// Exact rational used throughout the polytope, fan and gluing layers.
pub type Rational = num_rational::BigRational;
