//! The Heisenberg group `Heis₃(R)` with its modified Cygan distance, the
//! rational triples `E'_I` and the Heisenberg approximation constant.
//!
//! The metric used by the approximation constant is the modified Cygan
//! distance itself; it differs from the geometric cuspidal distance by an
//! unknown constant multiple, which never enters the computation.

mod point;
mod rational;

pub use point::{cygan_dist, heis_mul, HeisExact, HeisInput, HeisPoint, QComplex, CONSTRAINT_TOL};
pub use rational::{c_prime_estimate, heis_penetration, is_in_eprime_i, CPrimeEstimate, HeisRational, SEARCH_CAP};
