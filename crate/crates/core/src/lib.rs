//! Exact invariants of valuation-transcendental extensions.
//!
//! Given an algebraic element `a` over a p-adic or t-adic base field and a
//! value `γ`, this crate computes the valuation `v_{a,γ}` on `K(X)`, its value
//! groups and residue field, and the number `j` of conjugates of `a` within
//! distance `γ`, and checks the identities relating them.

pub mod algext;
pub mod basefield;
pub mod error;
pub mod exactpoly;
pub mod gaussval;
pub mod harness;
pub mod minpair;
pub mod ordvals;
pub mod report;
pub mod scenario;
pub mod suite;
pub mod verifier;

pub use error::{Error, Result};
