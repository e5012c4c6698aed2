//! Computational core for the metaplectic-c group `Mpc(V, Ω, j)`, its subgroup
//! lifts, the truncated Fock representation, highest-weight representations of
//! `su(n+1)` and the symplectic Dirac–Dolbeault operators on `CP^n`.
//!
//! The crate is `no_std` (with `alloc`) when built without the default `std`
//! feature.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod dirac;
pub mod error;
pub mod fock;
pub mod lifts;
pub mod linalg;
pub mod mpc;
pub mod sampling;
pub mod su_rep;
pub mod suites;
pub mod symplectic;

pub use error::{MpcError, Result};
pub use mpc::MpcElement;
pub use symplectic::{SiegelPair, SymplecticSpace};
