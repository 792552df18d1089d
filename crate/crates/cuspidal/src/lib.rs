//! Exact arithmetic for modular units on the modular curve X_0(N) and
//! for the cuspidal subgroups of its Jacobian.
//!
//! The crate computes, with no floating point anywhere:
//!
//! - the canonical cusps of X_0(N), their widths, fields of definition,
//!   and the Galois action on them ([`modcurve`]);
//! - divisors of Dedekind eta quotients and of the generalized-eta unit
//!   family F[m,h], together with exact q-expansions over cyclotomic
//!   integers ([`etafam`]);
//! - modularity criteria: the classical Ligozat conditions for eta
//!   quotients and their generalization to F-products, with exact
//!   per-condition witnesses ([`unitcheck`]);
//! - the cuspidal subgroup, the rational cuspidal divisor class group,
//!   and the rational cuspidal subgroup of J_0(N), via integer-lattice
//!   normal forms ([`classgrp`]);
//! - a small expression DSL, JSON serialization, and the `cuspidal` CLI
//!   ([`shell`]).

pub mod classgrp;
pub mod etafam;
pub mod modcurve;
pub mod ntheory;
pub mod shell;
pub mod unitcheck;

pub use modcurve::{Cusp, LevelContext};
pub use ntheory::Rational;
