//! Exact arithmetic for angle sums of Weyl chambers and Schläfli
//! orthoschemes and the quantities derived from them.

pub mod angles;
pub mod error;
pub mod faces;
pub mod rational;
pub mod series;
pub mod stirling;

pub use angles::{ConeSpec, Factor, Family, Source, TangentConeMultiset};
pub use error::{CoreError, Result};
pub use faces::{WalkEnsemble, WalkKind};
pub use rational::Rational;
pub use series::{GfId, TPoly, TruncSeries};
pub use stirling::{StirlingKind, StirlingTable};
