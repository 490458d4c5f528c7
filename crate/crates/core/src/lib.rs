//! Numerical potential theory for Hardy and Bergman numbers of planar domains.
//!
//! A domain is described as the plane minus a finite list of closed obstacle
//! primitives ([`DomainSpec`]). On top of that description the crate provides
//!
//! - a walk-on-spheres engine ([`walker`]) estimating harmonic measure,
//!   Green functions and the radial Green profile
//!   `psi(r) = ∫ g(r e^{iθ}, 0) dθ`,
//! - exponent fitting and the inclusion calculus between Hardy and weighted
//!   Bergman spaces ([`numbers`]),
//! - Littlewood–Paley membership integrals for explicit maps of the unit disk
//!   and closed-form Green functions of simply connected model domains
//!   ([`analytic`]),
//! - constructions of grid-punctured domains, the circular-arc domain with
//!   its certified width search, and class-𝒟 constants ([`constructions`]).
//!
//! The crate is `no_std` + `alloc` when built without the default `std`
//! feature. With `std`, Monte Carlo batches and quadrature rings run on the
//! rayon pool; results do not depend on the number of threads.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod analytic;
pub mod config;
pub mod constructions;
mod error;
pub mod geometry;
pub mod numbers;
mod par;
pub mod rng;
pub mod stats;
pub mod walker;

pub use error::{Error, Result};
pub use geometry::{DomainSpec, Obstacle, Point};
pub use stats::Estimate;
pub use walker::WalkConfig;
