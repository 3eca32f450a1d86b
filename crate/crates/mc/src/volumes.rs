use orthoscheme_core::ConeSpec;

use crate::error::{McError, Result};
use crate::estimate::{run_trials, McConfig, MCEstimate};
use crate::projection::{project_spec, projection_face_dim, BLOCK_TOL};
use crate::rng::derive_seed;

pub const MIN_VOLUME_SAMPLES: u64 = 1000;

/// Empirical distribution of the dimension of the face containing the
/// projection of a standard Gaussian vector; entry k estimates υ_k.
pub fn estimate_intrinsic_volumes(spec: &ConeSpec, samples: u64, cfg: &McConfig) -> Result<Vec<MCEstimate>> {
    if samples < MIN_VOLUME_SAMPLES {
        return Err(McError::InvalidArgument(format!("need at least {MIN_VOLUME_SAMPLES} samples")));
    }
    let dim = spec.ambient_dim();
    let seed = derive_seed(cfg.seed, &format!("volumes/{spec}"));
    let tally = run_trials(cfg, seed, samples, dim + 1, |g, obs| {
        let mut x = vec![0.0; dim];
        g.fill_normal(&mut x);
        let p = project_spec(spec, &x);
        obs[projection_face_dim(spec, &p, BLOCK_TOL)] = 1;
        Ok(())
    })?;
    Ok(tally.estimates(seed))
}
