use orthoscheme_core::rational::{binomial, pow2, Rational};

use crate::error::{McError, Result};
use crate::estimate::{run_trials, McConfig, MCEstimate};
use crate::rng::derive_seed;

/// C(2i, i) / 4^i.
pub fn sparre_andersen_exact(i: usize) -> Rational {
    binomial(2 * i, i) * pow2(-2 * i as i64)
}

/// Probability that a walk of `steps` Gaussian steps has all partial sums
/// <= 0.
pub fn estimate_nonpositive_walk(steps: usize, samples: u64, cfg: &McConfig) -> Result<MCEstimate> {
    if steps == 0 {
        return Err(McError::InvalidArgument("need at least one step".into()));
    }
    let seed = derive_seed(cfg.seed, &format!("sparre/{steps}"));
    let tally = run_trials(cfg, seed, samples, 1, |g, obs| {
        let mut s = 0.0;
        let mut ok = true;
        for _ in 0..steps {
            s += g.normal();
            ok &= s <= 0.0;
        }
        obs[0] = ok as i64;
        Ok(())
    })?;
    Ok(tally.estimate(0, seed))
}
