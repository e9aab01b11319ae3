//! Combinatorics of monomial ideals of finite colength and the local geometry
//! of the corresponding points on Hilbert schemes of points of affine space.
//!
//! A monomial ideal of colength `n` in `r` variables is determined by its
//! staircase: the division-closed set of `n` monomials outside the ideal
//! ([`staircase::BasisSet`]). The point of the Hilbert scheme of `n` points of
//! affine `r`-space attached to such an ideal is smooth exactly when the
//! cotangent space there has dimension `r * n`. This crate computes that
//! dimension two independent ways:
//!
//! * combinatorially, by counting translation classes of arrows between
//!   lattice points ([`arrow`], [`cotangent`]), together with the standard
//!   bunch of `r * n` independent arrows built by shadow promotion ([`bunch`]);
//! * by exact linear algebra on the first-order deformation space cut out by
//!   the pairwise syzygies of the minimal generators ([`oracle`]).
//!
//! [`classify`] adds structural smoothness certificates: rigid non-standard
//! arrows (singularity witnesses) and the compound-box recognizer, which
//! characterizes smoothness in three variables.
//!
//! The crate is `no_std` (with `alloc`); file formats and the command-line
//! front end live in the companion `staircase-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arrow;
pub mod bunch;
pub mod classify;
pub mod cotangent;
pub mod monomial;
pub mod oracle;
pub mod staircase;

pub use arrow::{Arrow, ArrowClass, ArrowError, Standardness};
pub use cotangent::CotangentReport;
pub use monomial::ExponentVector;
pub use staircase::{BasisSet, BoxSpec, StaircaseError};
