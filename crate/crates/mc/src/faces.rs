use orthoscheme_core::{WalkEnsemble, WalkKind};

use crate::error::{McError, Result};
use crate::estimate::{run_trials, McConfig, MCEstimate};
use crate::hull::minkowski_hull_faces;
use crate::rng::derive_seed;
use crate::walk::{bridge_with, walk_with};

/// Mean number of j-faces of the Minkowski sum of the hulls of independent
/// walks (or bridges) with the ensemble's lengths.
pub fn estimate_expected_faces(ens: &WalkEnsemble, j: usize, samples: u64, cfg: &McConfig) -> Result<MCEstimate> {
    if !(2..=3).contains(&ens.d) || j >= ens.d {
        return Err(McError::InvalidArgument(format!("need d in {{2, 3}} and j < d, got d={} j={j}", ens.d)));
    }
    if ens.ns.is_empty() || ens.ns.contains(&0) {
        return Err(McError::InvalidArgument("walk lengths must be positive".into()));
    }
    let kind = match ens.kind {
        WalkKind::Walk => "walk",
        WalkKind::Bridge => "bridge",
    };
    let seed = derive_seed(cfg.seed, &format!("faces/{kind}/{}/{:?}/{j}", ens.d, ens.ns));
    let tally = run_trials(cfg, seed, samples, 1, |g, obs| {
        let sets: Vec<_> = ens
            .ns
            .iter()
            .map(|&n| match ens.kind {
                WalkKind::Walk => walk_with(ens.d, n, g),
                WalkKind::Bridge => bridge_with(ens.d, n, g),
            })
            .collect();
        obs[0] = minkowski_hull_faces(&sets, ens.d)?.get(j) as i64;
        Ok(())
    })?;
    Ok(tally.estimate(0, seed))
}
