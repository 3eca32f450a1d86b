//! Metric projection onto the chambers A(n) = {x_1 >= ... >= x_n} and
//! B(n) = A(n) ∩ {x_n >= 0}, and products of them.

use orthoscheme_core::angles::compositions;
use orthoscheme_core::{ConeSpec, Family};

/// Relative tolerance for merging equal components into one block.
pub const BLOCK_TOL: f64 = 1e-9;

/// Nonincreasing isotonic regression by pool-adjacent-violators.
pub fn pava(x: &[f64]) -> Vec<f64> {
    // (sum, count) per pooled block
    let mut blocks: Vec<(f64, usize)> = Vec::with_capacity(x.len());
    for &v in x {
        blocks.push((v, 1));
        while blocks.len() >= 2 {
            let (s1, c1) = blocks[blocks.len() - 2];
            let (s2, c2) = blocks[blocks.len() - 1];
            if s1 / c1 as f64 >= s2 / c2 as f64 {
                break;
            }
            blocks.pop();
            *blocks.last_mut().unwrap() = (s1 + s2, c1 + c2);
        }
    }
    let mut out = Vec::with_capacity(x.len());
    for (s, c) in blocks {
        out.extend(std::iter::repeat_n(s / c as f64, c));
    }
    out
}

pub fn project_chamber(family: Family, x: &[f64]) -> Vec<f64> {
    let mut p = pava(x);
    if family == Family::B {
        for v in p.iter_mut() {
            *v = v.max(0.0);
        }
    }
    p
}

/// Projection onto a product cone, factor by factor.
pub fn project_spec(spec: &ConeSpec, x: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(x.len());
    let mut at = 0;
    for f in &spec.factors {
        out.extend(project_chamber(f.family, &x[at..at + f.size]));
        at += f.size;
    }
    out
}

/// Brute-force projection: least squares on every face (block means, with a
/// zero tail for B), keeping the nearest feasible candidate.
pub fn project_chamber_oracle(family: Family, x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut consider = |cand: Vec<f64>| {
        let feasible = cand.windows(2).all(|w| w[0] >= w[1]) && (family == Family::A || cand.last().is_none_or(|&v| v >= 0.0));
        if !feasible {
            return;
        }
        let dist: f64 = cand.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum();
        if best.as_ref().is_none_or(|(d, _)| dist < *d) {
            best = Some((dist, cand));
        }
    };
    let fill = |lens: &[usize], len: usize| {
        let mut cand = Vec::with_capacity(n);
        let mut at = 0;
        for &l in lens {
            let mean = x[at..at + l].iter().sum::<f64>() / l as f64;
            cand.extend(std::iter::repeat_n(mean, l));
            at += l;
        }
        cand.resize(len, 0.0);
        cand
    };
    if n == 0 {
        return Vec::new();
    }
    match family {
        Family::A => {
            for parts in 1..=n {
                for lens in compositions(n, &vec![1; parts]) {
                    consider(fill(&lens, n));
                }
            }
        }
        Family::B => {
            for prefix in 0..=n {
                for parts in 0..=prefix {
                    for lens in compositions(prefix, &vec![1; parts]) {
                        consider(fill(&lens, n));
                    }
                }
            }
        }
    }
    best.expect("the apex or a constant vector is always feasible").1
}

/// Number of maximal constant blocks of p on each factor, not counting a
/// zero block of a B-factor.
pub fn projection_face_dim(spec: &ConeSpec, p: &[f64], tol: f64) -> usize {
    let mut dim = 0;
    let mut at = 0;
    for f in &spec.factors {
        let q = &p[at..at + f.size];
        at += f.size;
        let scale = q.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
        let eps = tol * scale;
        let mut i = 0;
        while i < q.len() {
            let mut k = i + 1;
            while k < q.len() && (q[k] - q[i]).abs() <= eps {
                k += 1;
            }
            if f.family == Family::A || q[i] > eps {
                dim += 1;
            }
            i = k;
        }
    }
    dim
}
