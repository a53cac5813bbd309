//! Upper half-plane and half-space geometry with the cusp at `∞` and its
//! precisely invariant horoball at Euclidean height 1: Busemann heights,
//! quotient heights, horoball penetration, cuspidal distance, closed-geodesic
//! heights and cusp-excursion limsups.

mod cusp;
mod excursion;
mod geodesic;
mod group;
mod height;
mod mobius;
mod point;

pub use cusp::{cuspidal_distance, d_of_r, d_of_r_int, horoball_penetration, CuspStabilizer};
pub use excursion::{excursion_limsup, excursion_limsup_in, time_grid, Excursion, GRID_RATIO, LATE_WINDOW_START};
pub use geodesic::{
    axis_endpoints, axis_form, form_height, geodesic_height, real_axis_endpoint, GeodesicHeight, GeodesicSpec,
};
pub use group::{modular_reduce, modular_reduce_exact, CuspGroup, IntMatrix, Modular, Row, TrivialGroup};
pub use height::{quotient_height, QuotientHeight};
pub use mobius::{Classification, Mobius, QuadMatrix};
pub use point::{busemann_height, hyperbolic_distance, ModelPoint};
