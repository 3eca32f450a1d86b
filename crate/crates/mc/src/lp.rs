//! Feasibility LPs deciding whether ker G meets a polyhedral cone in a
//! nonzero vector.

use orthoscheme_core::{ConeSpec, Family};

use crate::rng::Gaussian;

pub const FEASIBLE_TOL: f64 = 1e-9;
pub const INFEASIBLE_TOL: f64 = 1e-7;
const PIVOT_TOL: f64 = 1e-11;
const MAX_ITER: usize = 10_000;

/// The cone {v : a.v >= 0 for a in ineq, e.v = 0 for e in eq} in R^dim.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConeConstraints {
    pub dim: usize,
    pub ineq: Vec<Vec<f64>>,
    pub eq: Vec<Vec<f64>>,
}

impl ConeConstraints {
    pub fn new(dim: usize) -> Self {
        ConeConstraints { dim, ineq: Vec::new(), eq: Vec::new() }
    }

    pub fn from_spec(spec: &ConeSpec) -> Self {
        let mut c = ConeConstraints::new(spec.ambient_dim());
        let mut at = 0;
        for f in &spec.factors {
            for i in at..(at + f.size).saturating_sub(1) {
                let mut a = vec![0.0; c.dim];
                a[i] = 1.0;
                a[i + 1] = -1.0;
                c.ineq.push(a);
            }
            if f.family == Family::B && f.size > 0 {
                let mut a = vec![0.0; c.dim];
                a[at + f.size - 1] = 1.0;
                c.ineq.push(a);
            }
            at += f.size;
        }
        c
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelTest {
    /// A nonzero kernel vector lies in the cone.
    Intersects,
    /// The intersection is {0}.
    Trivial,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Phase1 {
    Feasible,
    Infeasible,
    Inconclusive,
}

/// Phase one of the simplex method on A y = b, y >= 0, with Bland's rule.
fn phase1(mut rows: Vec<Vec<f64>>, mut rhs: Vec<f64>) -> Phase1 {
    let m = rows.len();
    let nv = rows.first().map_or(0, |r| r.len());
    for (r, b) in rows.iter_mut().zip(rhs.iter_mut()) {
        let scale = r.iter().fold(b.abs(), |s, v| s.max(v.abs()));
        if scale > 0.0 {
            r.iter_mut().for_each(|v| *v /= scale);
            *b /= scale;
        }
        if *b < 0.0 {
            r.iter_mut().for_each(|v| *v = -*v);
            *b = -*b;
        }
    }
    // tableau columns: structural, artificial, rhs
    let width = nv + m + 1;
    let mut t: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            let mut row = vec![0.0; width];
            row[..nv].copy_from_slice(&rows[i]);
            row[nv + i] = 1.0;
            row[width - 1] = rhs[i];
            row
        })
        .collect();
    let mut basis: Vec<usize> = (nv..nv + m).collect();
    let mut cost = vec![0.0; width];
    for row in &t {
        for (c, v) in cost.iter_mut().zip(row) {
            *c += v;
        }
    }
    for c in cost[nv..nv + m].iter_mut() {
        *c = 0.0;
    }
    for _ in 0..MAX_ITER {
        // reduced cost of maximizing the artificial-row sum
        let Some(enter) = (0..width - 1).find(|&c| cost[c] > PIVOT_TOL) else {
            let remaining = cost[width - 1];
            return if remaining < FEASIBLE_TOL {
                Phase1::Feasible
            } else if remaining > INFEASIBLE_TOL {
                Phase1::Infeasible
            } else {
                Phase1::Inconclusive
            };
        };
        let mut leave: Option<(usize, f64)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter] > PIVOT_TOL {
                let ratio = row[width - 1] / row[enter];
                match leave {
                    Some((li, lr)) if ratio > lr + 1e-14 || (ratio >= lr - 1e-14 && basis[i] > basis[li]) => {}
                    _ => leave = Some((i, ratio)),
                }
            }
        }
        let Some((li, _)) = leave else {
            return Phase1::Inconclusive;
        };
        let p = t[li][enter];
        t[li].iter_mut().for_each(|v| *v /= p);
        let pivot_row = t[li].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != li && row[enter] != 0.0 {
                let f = row[enter];
                row.iter_mut().zip(&pivot_row).for_each(|(v, pv)| *v -= f * pv);
            }
        }
        let f = cost[enter];
        cost.iter_mut().zip(&pivot_row).for_each(|(v, pv)| *v -= f * pv);
        basis[li] = enter;
    }
    Phase1::Inconclusive
}

/// Is there v with G v = 0, v in the cone and w.v = s?
fn probe_feasible(cone: &ConeConstraints, g: &[Vec<f64>], w: &[f64], s: f64) -> Phase1 {
    let n = cone.dim;
    let na = cone.ineq.len();
    // variables: v+ (n), v- (n), slack per inequality (na)
    let nv = 2 * n + na;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let mut push = |coef: &[f64], slack: Option<usize>, b: f64| {
        let mut r = vec![0.0; nv];
        for (i, &c) in coef.iter().enumerate() {
            r[i] = c;
            r[n + i] = -c;
        }
        if let Some(k) = slack {
            r[2 * n + k] = -1.0;
        }
        rows.push(r);
        rhs.push(b);
    };
    for row in g {
        push(row, None, 0.0);
    }
    for e in &cone.eq {
        push(e, None, 0.0);
    }
    for (k, a) in cone.ineq.iter().enumerate() {
        push(a, Some(k), 0.0);
    }
    push(w, None, s);
    phase1(rows, rhs)
}

/// Decide whether some nonzero v with G v = 0 lies in the cone, using a
/// Gaussian probe w drawn from `probe` and the two normalizations w.v = +1
/// and w.v = -1.
pub fn cone_kernel_intersects(cone: &ConeConstraints, g: &[Vec<f64>], probe: &mut Gaussian) -> KernelTest {
    let mut w = vec![0.0; cone.dim];
    probe.fill_normal(&mut w);
    let plus = probe_feasible(cone, g, &w, 1.0);
    if plus == Phase1::Feasible {
        return KernelTest::Intersects;
    }
    let minus = probe_feasible(cone, g, &w, -1.0);
    match (plus, minus) {
        (_, Phase1::Feasible) => KernelTest::Intersects,
        (Phase1::Infeasible, Phase1::Infeasible) => KernelTest::Trivial,
        _ => KernelTest::Inconclusive,
    }
}
