//! subordlab: a numerical laboratory for differential subordination.
//!
//! The crate implements a truncated complex Taylor-series kernel and builds,
//! on top of it, the machinery of generalized Briot-Bouquet differential
//! subordination: if `p(z)Q(z) + z p'(z)/(beta p(z) + alpha)` is subordinate
//! to a dominant `h`, conclude `p` subordinate to `h`. Around that core sit
//! a catalogue of dominant regions with exact membership predicates or
//! winding-number fallbacks, integral operators of Bernardi type, and a
//! randomized theorem-checking harness with a falsification mode.
//!
//! Everything works on truncated series; nothing is symbolic. Boundary
//! evaluation always happens strictly inside the unit disk, and every
//! evaluation close to the truncation limit carries a tail estimate.

#![forbid(unsafe_code)]

pub mod batch;
pub mod briot_bouquet;
pub mod cli;
pub mod config;
pub mod dominants;
pub mod error;
pub mod exec;
pub mod harness;
pub mod integral_ops;
pub mod schwarz;
pub mod series;
pub mod subordination;
pub mod valued;

pub use config::Config;
pub use error::{Error, Result};
pub use series::TaylorSeries;
pub use valued::ValuedSeries;

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;
