//! Cell-size statistics of Poisson-Voronoi cells whose seed sits at, or close to,
//! the boundary of a quadrant or a half-plane.
//!
//! The crate is organised bottom-up:
//!
//! - [`special_functions`]: erf/erfc, I₁, the modified Struve functions L₁ and M₁,
//!   the exponential integral E₁, log-Gamma and the ₂F₁ needed by the in-degree CDF.
//! - [`quadrature`]: adaptive Gauss-Kronrod integration in one to three dimensions.
//! - [`void_geometry`]: closed-form void areas (disk ∩ domain) and the normalized
//!   two-point voids used for second moments.
//! - [`moments`]: first and second cell-size moments, bounds and the Gamma fit.
//! - [`secrecy`]: in-/out-degree distributions with distance-based secrecy.
//! - [`mc_sim`]: an independent Monte Carlo oracle based on exact polygon clipping.
//!
//! All quantities are expressed for a unit-intensity process unless stated otherwise;
//! see [`moments::rescale_intensity`] for other intensities.

pub mod error;
pub mod mc_sim;
pub mod moments;
pub mod quadrature;
pub mod secrecy;
pub mod special_functions;
pub mod void_geometry;

pub use error::{Error, Result};
pub use moments::{GammaParams, MomentResult};
pub use quadrature::{QuadResult, QuadSpec};
pub use void_geometry::{PolarPoint, SeedLocation};
