//! Monte Carlo counterparts of the exact angle sums: Gaussian walks and
//! their hulls, chamber projections, internal angles and recovery
//! experiments.

pub mod angles;
pub mod error;
pub mod estimate;
pub mod faces;
pub mod hull;
pub mod lp;
pub mod projection;
pub mod recovery;
pub mod rng;
pub mod sparre;
pub mod volumes;
pub mod walk;

pub use error::{McError, Result};
pub use estimate::{McConfig, MCEstimate};
pub use hull::HullFaceCounts;
pub use rng::RngStream;
