//! Faces of product chambers, their exact external angles, and Monte Carlo
//! internal angles.

use std::fmt;

use num::Zero;
use orthoscheme_core::angles::compositions;
use orthoscheme_core::rational::{binomial, pow2, ratio, Rational};
use orthoscheme_core::{ConeSpec, Family};

use crate::error::{McError, Result};
use crate::estimate::{run_trials, McConfig, MCEstimate};
use crate::rng::{derive_seed, Gaussian};

/// The face of one chamber factor where the coordinates are constant on
/// consecutive blocks; for B-factors the trailing `remainder` coordinates
/// are zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactorFace {
    pub family: Family,
    pub blocks: Vec<usize>,
    pub remainder: usize,
}

impl FactorFace {
    fn size(&self) -> usize {
        self.blocks.iter().sum::<usize>() + self.remainder
    }

    /// Known to have internal angle 1 without sampling.
    fn is_trivial(&self) -> bool {
        match self.family {
            Family::A => self.blocks.len() <= 1,
            Family::B => self.blocks.is_empty(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FaceSpec {
    pub factors: Vec<FactorFace>,
}

impl FaceSpec {
    pub fn new(spec: &ConeSpec, factors: Vec<FactorFace>) -> Result<Self> {
        let fits = spec.factors.len() == factors.len()
            && spec.factors.iter().zip(&factors).all(|(f, ff)| {
                f.family == ff.family
                    && ff.size() == f.size
                    && ff.blocks.iter().all(|&b| b > 0)
                    && (f.family == Family::B || (ff.remainder == 0 && !ff.blocks.is_empty()))
            });
        if !fits {
            return Err(McError::InvalidArgument("face does not match the cone".into()));
        }
        Ok(FaceSpec { factors })
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(|f| f.blocks.len()).sum()
    }
}

impl fmt::Display for FaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, ff) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            let c = if ff.family == Family::A { 'A' } else { 'B' };
            write!(f, "{c}{:?}", ff.blocks)?;
            if ff.family == Family::B {
                write!(f, "+{}", ff.remainder)?;
            }
        }
        Ok(())
    }
}

fn factor_faces(family: Family, size: usize, dim: usize) -> Vec<FactorFace> {
    let mut out = Vec::new();
    match family {
        Family::A => {
            if dim >= 1 {
                for blocks in compositions(size, &vec![1; dim]) {
                    out.push(FactorFace { family, blocks, remainder: 0 });
                }
            }
        }
        Family::B => {
            for prefix in dim..=size {
                for blocks in compositions(prefix, &vec![1; dim]) {
                    out.push(FactorFace { family, blocks, remainder: size - prefix });
                }
            }
        }
    }
    out
}

/// All k-dimensional faces of the product cone.
pub fn faces_of_spec(spec: &ConeSpec, k: usize) -> Vec<FaceSpec> {
    let mut out = Vec::new();
    for dims in compositions(k, &vec![0; spec.factors.len()]) {
        let mut acc: Vec<Vec<FactorFace>> = vec![Vec::new()];
        for (f, &d) in spec.factors.iter().zip(&dims) {
            let options = factor_faces(f.family, f.size, d);
            let mut next = Vec::with_capacity(acc.len() * options.len());
            for prefix in &acc {
                for o in &options {
                    let mut v = prefix.clone();
                    v.push(o.clone());
                    next.push(v);
                }
            }
            acc = next;
        }
        out.extend(acc.into_iter().map(|factors| FaceSpec { factors }));
    }
    if spec.factors.is_empty() && k == 0 {
        out = vec![FaceSpec { factors: Vec::new() }];
    }
    out
}

/// C(2h, h) / 4^h.
pub fn central_binomial_ratio(h: usize) -> Rational {
    binomial(2 * h, h) * pow2(-2 * h as i64)
}

/// Solid angle of the normal cone at the face.
pub fn external_angle_exact(face: &FaceSpec) -> Rational {
    let mut acc = Rational::from_integer(1.into());
    for ff in &face.factors {
        for &b in &ff.blocks {
            acc *= ratio(1, b as i64);
        }
        if ff.family == Family::B {
            acc *= central_binomial_ratio(ff.remainder);
        }
    }
    acc
}

/// xi_1/sqrt(h_1) >= ... >= xi_r/sqrt(h_r) (and >= 0 when bounded) for
/// fresh standard normals.
fn ordered_event(g: &mut Gaussian, blocks: &[usize], bounded: bool) -> bool {
    let mut prev = f64::INFINITY;
    let mut ok = true;
    for &h in blocks {
        let v = g.normal() / (h as f64).sqrt();
        ok &= v <= prev;
        prev = v;
    }
    ok && (!bounded || prev >= 0.0)
}

/// P(xi_1/sqrt(h_1) >= ... >= xi_r/sqrt(h_r) [>= 0]).
pub fn estimate_internal_angle(blocks: &[usize], bounded: bool, samples: u64, cfg: &McConfig) -> Result<MCEstimate> {
    if blocks.is_empty() || blocks.contains(&0) {
        return Err(McError::InvalidArgument("need at least one positive block length".into()));
    }
    let seed = derive_seed(cfg.seed, &format!("internal/{blocks:?}/{bounded}"));
    let tally = run_trials(cfg, seed, samples, 1, |g, obs| {
        obs[0] = ordered_event(g, blocks, bounded) as i64;
        Ok(())
    })?;
    Ok(tally.estimate(0, seed))
}

/// Solid angle of the face within its linear hull; factors are independent
/// so one trial draws one normal per block of every nontrivial factor.
pub fn estimate_face_internal_angle(face: &FaceSpec, samples: u64, cfg: &McConfig) -> Result<MCEstimate> {
    let active: Vec<&FactorFace> = face.factors.iter().filter(|f| !f.is_trivial()).collect();
    let seed = derive_seed(cfg.seed, &format!("face/{face}"));
    if active.is_empty() {
        return Ok(MCEstimate::exact(1.0, samples, seed));
    }
    let tally = run_trials(cfg, seed, samples, 1, |g, obs| {
        let mut ok = true;
        for f in &active {
            ok &= ordered_event(g, &f.blocks, f.family == Family::B);
        }
        obs[0] = ok as i64;
        Ok(())
    })?;
    Ok(tally.estimate(0, seed))
}

/// sum over k-faces of estimated internal angle times exact external angle;
/// the standard error combines the independent per-face errors.
pub fn reconstruct_intrinsic_volume(spec: &ConeSpec, k: usize, samples: u64, cfg: &McConfig) -> Result<MCEstimate> {
    let mut mean = 0.0;
    let mut var = 0.0;
    for face in faces_of_spec(spec, k) {
        let ext = external_angle_exact(&face);
        if ext.is_zero() {
            continue;
        }
        let ext = orthoscheme_core::rational::to_f64(&ext);
        let est = estimate_face_internal_angle(&face, samples, cfg)?;
        mean += ext * est.mean;
        var += ext * ext * est.stderr * est.stderr;
    }
    Ok(MCEstimate { mean, stderr: var.sqrt(), samples, seed: derive_seed(cfg.seed, &format!("reconstruct/{spec}/{k}")) })
}
