//! Diophantine approximation constants and Lagrange-type spectra in three
//! arithmetic settings (real continued fractions, imaginary quadratic
//! Bianchi groups, rational Heisenberg points), together with the cusp
//! geometry they are dual to: Busemann heights, horoball penetration,
//! cuspidal distance and closed-geodesic heights.

pub mod bianchi;
pub mod contfrac;
pub mod error;
pub mod heis;
pub mod hypgeo;
pub mod numkit;
pub mod spectra;

pub use error::{Error, Result};
