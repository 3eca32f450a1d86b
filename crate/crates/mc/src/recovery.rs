//! Simulation of exact recovery of a signal on a random face of a Weyl
//! chamber or orthoscheme from k Gaussian measurements.

use orthoscheme_core::Source;

use crate::error::{McError, Result};
use crate::estimate::{run_trials, McConfig, MCEstimate};
use crate::lp::{cone_kernel_intersects, ConeConstraints, KernelTest};
use crate::rng::{derive_seed, Gaussian};

/// Constraints closer than this to equality are active at the signal.
pub const ACTIVE_TOL: f64 = 1e-9;

/// How the positive coefficients of the face's generators are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Weights {
    #[default]
    Equal,
    Random,
}

/// {x : a.x + c >= 0 for (a, c) in ineq, e.x = 0 for e in eq}.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyhedron {
    pub dim: usize,
    pub ineq: Vec<(Vec<f64>, f64)>,
    pub eq: Vec<Vec<f64>>,
}

impl Polyhedron {
    pub fn of(source: Source, n: usize) -> Polyhedron {
        let dim = if source == Source::KA { n + 1 } else { n };
        let unit = |i: usize, s: f64| {
            let mut a = vec![0.0; dim];
            a[i] = s;
            a
        };
        let mut ineq = Vec::new();
        if source == Source::KB {
            ineq.push((unit(0, -1.0), 1.0));
        }
        for i in 0..dim.saturating_sub(1) {
            let mut a = unit(i, 1.0);
            a[i + 1] = -1.0;
            ineq.push((a, 0.0));
        }
        let mut eq = Vec::new();
        match source {
            Source::KB | Source::WB => ineq.push((unit(dim - 1, 1.0), 0.0)),
            Source::KA => {
                let mut a = unit(0, -1.0);
                a[dim - 1] = 1.0;
                ineq.push((a, 1.0));
                eq.push(vec![1.0; dim]);
            }
            Source::WA => {}
        }
        Polyhedron { dim, ineq, eq }
    }

    /// Tangent cone at x: the constraints active at x, made homogeneous.
    pub fn tangent_cone(&self, x: &[f64]) -> ConeConstraints {
        let mut cone = ConeConstraints::new(self.dim);
        for (a, c) in &self.ineq {
            let slack: f64 = a.iter().zip(x).map(|(u, v)| u * v).sum::<f64>() + c;
            if slack <= ACTIVE_TOL {
                cone.ineq.push(a.clone());
            }
        }
        cone.eq = self.eq.clone();
        cone
    }
}

fn weights(g: &mut Gaussian, count: usize, kind: Weights, normalize: bool) -> Vec<f64> {
    let mut a: Vec<f64> = match kind {
        Weights::Equal => vec![1.0; count],
        Weights::Random => (0..count).map(|_| g.uniform_open0()).collect(),
    };
    if normalize {
        let s: f64 = a.iter().sum();
        a.iter_mut().for_each(|v| *v /= s);
    }
    a
}

/// x_m = sum of a_l over l with i_l >= m (1-based m and i).
fn staircase(dim: usize, idx: &[usize], a: &[f64]) -> Vec<f64> {
    (1..=dim).map(|m| idx.iter().zip(a).filter(|(&i, _)| i >= m).map(|(_, v)| v).sum()).collect()
}

/// A point in the relative interior of a uniformly chosen j-face.
pub fn random_face_signal(source: Source, n: usize, j: usize, kind: Weights, g: &mut Gaussian) -> Vec<f64> {
    match source {
        Source::WB => {
            let idx: Vec<usize> = g.subset(n, j).into_iter().map(|i| i + 1).collect();
            staircase(n, &idx, &weights(g, j, kind, false))
        }
        Source::WA => {
            let mut idx: Vec<usize> = g.subset(n - 1, j - 1).into_iter().map(|i| i + 1).collect();
            idx.push(n);
            staircase(n, &idx, &weights(g, j, kind, false))
        }
        Source::KB => {
            let idx = g.subset(n + 1, j + 1);
            staircase(n, &idx, &weights(g, j + 1, kind, true))
        }
        Source::KA => {
            let idx: Vec<usize> = g.subset(n + 1, j + 1).into_iter().map(|i| i + 1).collect();
            let mut x = staircase(n + 1, &idx, &weights(g, j + 1, kind, true));
            let c = x.iter().sum::<f64>() / (n + 1) as f64;
            x.iter_mut().for_each(|v| *v -= c);
            x
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecoveryEstimate {
    /// Fraction of all trials with a unique solution.
    pub estimate: MCEstimate,
    pub inconclusive: u64,
}

fn check(source: Source, n: usize, j: usize, k: usize) -> Result<()> {
    let ok = match source {
        Source::WB => j <= k && k <= n && n >= 1,
        Source::WA => 1 <= j && j <= k && k <= n,
        Source::KB | Source::KA => j <= k && k <= n && n >= 1,
    };
    if ok {
        Ok(())
    } else {
        Err(McError::InvalidArgument(format!("invalid recovery parameters {source} n={n} j={j} k={k}")))
    }
}

pub fn estimate_recovery_probability(
    source: Source,
    n: usize,
    j: usize,
    k: usize,
    samples: u64,
    kind: Weights,
    cfg: &McConfig,
) -> Result<RecoveryEstimate> {
    check(source, n, j, k)?;
    let poly = Polyhedron::of(source, n);
    let seed = derive_seed(cfg.seed, &format!("recovery/{source}/{n}/{j}/{k}/{kind:?}"));
    let tally = run_trials(cfg, seed, samples, 2, |g, obs| {
        let x = random_face_signal(source, n, j, kind, g);
        let cone = poly.tangent_cone(&x);
        let sensing: Vec<Vec<f64>> = (0..k)
            .map(|_| {
                let mut row = vec![0.0; poly.dim];
                g.fill_normal(&mut row);
                row
            })
            .collect();
        match cone_kernel_intersects(&cone, &sensing, g) {
            KernelTest::Trivial => obs[0] = 1,
            KernelTest::Intersects => {}
            KernelTest::Inconclusive => obs[1] = 1,
        }
        Ok(())
    })?;
    Ok(RecoveryEstimate { estimate: tally.estimate(0, seed), inconclusive: tally.sum[1] as u64 })
}
