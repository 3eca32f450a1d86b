//! The verification suite: exact identities, oracle comparisons and Monte
//! Carlo estimates against exact values.

use std::time::Instant;

use num::{One, Zero};
use orthoscheme_core::angles::{
    aggregated_product_sum, cone_spec_intrinsic, enumerate_tangent_cones,
    product_polynomial, theorem, theorem_orthoscheme, theorem_weyl, weak_compositions,
};
use orthoscheme_core::faces::{expected_faces, recovery_probability};
use orthoscheme_core::rational::{binomial, binomial_general, factorial, format_rational, int, ratio, to_f64, Rational};
use orthoscheme_core::series::{gf_coefficient, r_polynomial};
use orthoscheme_core::stirling::{
    brute_stirling_table, r_stirling1, r_stirling2, stirling1, stirling1_b, stirling2, stirling2_b, StirlingKind,
};
use orthoscheme_core::{ConeSpec, Factor, Family, GfId, Source, TPoly, WalkEnsemble, WalkKind};
use orthoscheme_mc::angles::reconstruct_intrinsic_volume;
use orthoscheme_mc::estimate::MCEstimate;
use orthoscheme_mc::faces::estimate_expected_faces;
use orthoscheme_mc::projection::{project_chamber, project_chamber_oracle};
use orthoscheme_mc::recovery::{estimate_recovery_probability, Weights};
use orthoscheme_mc::rng::{derive_seed, RngStream};
use orthoscheme_mc::sparre::{estimate_nonpositive_walk, sparre_andersen_exact};
use orthoscheme_mc::volumes::estimate_intrinsic_volumes;
use orthoscheme_mc::McConfig;
use serde::Serialize;

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    ExactIdentity,
    OracleEquivalence,
    McVsExact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub kind: CheckKind,
    pub status: Status,
    pub detail: String,
    /// Largest |z| over the comparisons of an MC check.
    pub z: Option<f64>,
    pub runtime_ms: u64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Deliberate corruption used to test that failures are reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Fault {
    Stirling1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleSizes {
    pub volumes: u64,
    pub faces: u64,
    pub recovery: u64,
    pub internal: u64,
    pub projection: u64,
    pub sparre: u64,
}

impl SampleSizes {
    /// Sizes used by the acceptance run.
    pub fn full() -> Self {
        SampleSizes {
            volumes: 1_000_000,
            faces: 10_000,
            recovery: 10_000,
            internal: 1_000_000,
            projection: 1_000,
            sparre: 1_000_000,
        }
    }

    /// Sizes for a run of a few seconds.
    pub fn quick() -> Self {
        SampleSizes { volumes: 20_000, faces: 4_000, recovery: 1_000, internal: 20_000, projection: 1_000, sparre: 50_000 }
    }

    pub fn uniform(samples: u64) -> Self {
        SampleSizes {
            volumes: samples,
            faces: samples,
            recovery: samples,
            internal: samples,
            projection: samples,
            sparre: samples,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub mc: McConfig,
    pub sigma: f64,
    pub samples: SampleSizes,
    pub fault: Option<Fault>,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { mc: McConfig::default(), sigma: 4.0, samples: SampleSizes::quick(), fault: None }
    }
}

struct Outcome {
    ok: bool,
    detail: String,
    z: Option<f64>,
}

impl Outcome {
    fn exact(failures: Vec<String>, count: usize) -> Outcome {
        let detail = match failures.first() {
            None => format!("{count} exact comparisons"),
            Some(f) => format!("{} of {count} comparisons failed, first: {f}", failures.len()),
        };
        Outcome { ok: failures.is_empty(), detail, z: None }
    }
}

/// Collects z-scores of MC comparisons against exact values.
struct ZTracker {
    sigma: f64,
    count: usize,
    worst: f64,
    worst_label: String,
    failures: Vec<String>,
}

impl ZTracker {
    fn new(sigma: f64) -> Self {
        ZTracker { sigma, count: 0, worst: 0.0, worst_label: String::new(), failures: Vec::new() }
    }

    fn add(&mut self, label: impl Into<String>, est: &MCEstimate, exact: f64) {
        self.add_z(label.into(), est, exact, est.z_score(exact));
    }

    fn add_indicator(&mut self, label: impl Into<String>, est: &MCEstimate, exact: f64) {
        self.add_z(label.into(), est, exact, est.z_score_indicator(exact));
    }

    fn add_z(&mut self, label: String, est: &MCEstimate, exact: f64, z: f64) {
        self.count += 1;
        let a = z.abs();
        if a.is_nan() || a > self.worst {
            self.worst = a;
            self.worst_label = label.clone();
        }
        if a.is_nan() || a > self.sigma {
            self.failures.push(format!("{label}: {:.6} vs {exact:.6} (z = {z:.2})", est.mean));
        }
    }

    fn fail(&mut self, msg: String) {
        self.failures.push(msg);
    }

    fn finish(self) -> Outcome {
        let detail = match self.failures.first() {
            None => format!("{} estimates within {} sigma, max |z| = {:.2} at {}", self.count, self.sigma, self.worst, self.worst_label),
            Some(f) => format!("{} of {} comparisons failed, first: {f}", self.failures.len(), self.count),
        };
        let z = if self.worst.is_finite() { self.worst } else { f64::MAX };
        Outcome { ok: self.failures.is_empty(), detail, z: Some(z) }
    }
}

fn mismatch(label: String, got: &Rational, want: &Rational) -> String {
    format!("{label}: {} != {}", format_rational(got), format_rational(want))
}

/// sum_k r-first(n, k) r-second(k, j) with parameter b against the closed
/// form, and the alternating sum against 0 for j < n.
pub fn product_identities(n_max: usize, twob_max: i64) -> (Vec<String>, usize) {
    let mut failures = Vec::new();
    let mut count = 0;
    for twob in 0..=twob_max {
        let b = ratio(twob, 2);
        for n in 0..=n_max {
            let first: Vec<Rational> = (0..=n).map(|k| r_stirling1(n, k, &b)).collect();
            for j in 0..=n {
                let mut sum = Rational::zero();
                let mut alt = Rational::zero();
                for (k, f) in first.iter().enumerate().skip(j) {
                    let p = f * r_stirling2(k, j, &b);
                    if k % 2 == 0 {
                        alt += &p;
                    } else {
                        alt -= &p;
                    }
                    sum += p;
                }
                let rhs = factorial(n) / factorial(j) * binomial_general(n as i64 + twob - 1, n - j);
                count += 1;
                if sum != rhs {
                    failures.push(mismatch(format!("sum 2b={twob} n={n} j={j}"), &sum, &rhs));
                }
                if j < n {
                    count += 1;
                    if !alt.is_zero() {
                        failures.push(mismatch(format!("alternating 2b={twob} n={n} j={j}"), &alt, &Rational::zero()));
                    }
                }
            }
        }
    }
    (failures, count)
}

fn check_product_identities() -> Outcome {
    let (f, c) = product_identities(15, 6);
    Outcome::exact(f, c)
}

fn check_theorem_enumeration() -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for source in Source::ALL {
        for n in 1..=8 {
            for j in 0..=n {
                let cones = enumerate_tangent_cones(source, n, j);
                for k in 0..=n {
                    let want = theorem(source, n, j, k);
                    let got = cones.intrinsic_sum(k);
                    count += 1;
                    if got != want {
                        failures.push(mismatch(format!("{source} n={n} j={j} k={k}"), &got, &want));
                    }
                }
            }
        }
    }
    Outcome::exact(failures, count)
}

fn check_series() -> Result<Outcome> {
    let mut failures = Vec::new();
    let mut count = 0;
    let half = ratio(1, 2);
    for n in 1..=12 {
        for j in 0..=n {
            let polys = [
                ("R(1)", r_polynomial(&Rational::one(), j, &[n])?),
                ("R(1/2)", r_polynomial(&half, j, &[n])?),
                ("R(0)", r_polynomial(&Rational::zero(), j, &[n])?),
            ];
            for k in 0..=n {
                let closed = [theorem_orthoscheme(n, j, k), theorem_weyl(Family::B, n, j, k), theorem_weyl(Family::A, n, j, k)];
                for ((label, poly), want) in polys.iter().zip(closed) {
                    let got = poly.coeff(k);
                    count += 1;
                    if got != want {
                        failures.push(mismatch(format!("{label} n={n} j={j} k={k}"), &got, &want));
                    }
                }
            }
        }
    }
    for b in 1..=3 {
        for n in 1..=8 {
            for j in 0..=n {
                // the enumerated side sums the product polynomial over weak
                // compositions of n into b sizes
                let mut enumerated = TPoly::zero();
                for ns in weak_compositions(n, b) {
                    enumerated = &enumerated + &product_polynomial(Source::KB, &ns, j)?;
                }
                for k in j..=n {
                    let got = aggregated_product_sum(b, n, j, k)?;
                    let want = enumerated.coeff(k);
                    count += 1;
                    if got != want {
                        failures.push(mismatch(format!("aggregated b={b} n={n} j={j} k={k}"), &got, &want));
                    }
                }
            }
        }
    }
    Ok(Outcome::exact(failures, count))
}

fn check_face_counts() -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for n in 1..=15 {
        for j in 0..=n {
            let mut expect = vec![(Source::KB, binomial(n + 1, j + 1)), (Source::KA, binomial(n + 1, j + 1)), (Source::WB, binomial(n, j))];
            if j >= 1 {
                expect.push((Source::WA, binomial(n - 1, j - 1)));
            }
            for (source, want) in expect {
                let got: Rational = (0..=n).map(|k| theorem(source, n, j, k)).sum();
                count += 1;
                if got != want {
                    failures.push(mismatch(format!("{source} n={n} j={j}"), &got, &want));
                }
            }
        }
    }
    Outcome::exact(failures, count)
}

pub const CATALOG_RS: [(i64, i64); 5] = [(0, 1), (1, 2), (1, 1), (3, 2), (2, 1)];

/// One catalog identity to order 12: the series coefficient against the
/// recurrence table.
fn check_catalog(which: &str, fault: Option<Fault>) -> Result<Outcome> {
    let mut failures = Vec::new();
    let mut count = 0;
    let rs: Vec<Rational> = CATALOG_RS.iter().map(|&(p, q)| ratio(p, q)).collect();
    for n in 0..=12 {
        for k in 0..=n {
            let cases: Vec<(GfId, Rational)> = match which {
                "stirling1" => {
                    let mut v = stirling1(n, k);
                    if fault == Some(Fault::Stirling1) && (n, k) == (5, 2) {
                        v += int(1);
                    }
                    vec![(GfId::LogPower, v)]
                }
                "stirling2" => vec![(GfId::ExpDiff, stirling2(n, k))],
                "stirling1-b" => vec![(GfId::FirstB, stirling1_b(n, k))],
                "stirling2-b" => vec![(GfId::SecondB, stirling2_b(n, k))],
                "r-stirling1" => rs.iter().map(|r| (GfId::RFirst(r.clone()), r_stirling1(n, k, r))).collect(),
                "r-stirling2" => rs.iter().map(|r| (GfId::RSecond(r.clone()), r_stirling2(n, k, r))).collect(),
                _ => unreachable!("unknown catalog entry {which}"),
            };
            for (id, want) in cases {
                let got = gf_coefficient(&id, n, k)?;
                count += 1;
                if got != want {
                    failures.push(mismatch(format!("{id:?} n={n} k={k}"), &got, &want));
                }
            }
        }
    }
    Ok(Outcome::exact(failures, count))
}

fn check_brute_force() -> Result<Outcome> {
    let mut failures = Vec::new();
    let mut count = 0;
    for (kind, name) in [(StirlingKind::First, "first"), (StirlingKind::Second, "second")] {
        for n in 0..=8 {
            let table = brute_stirling_table(kind, n)?;
            for (k, row) in table.iter().enumerate() {
                for (r, got) in row.iter().enumerate() {
                    let rr = int(r as i64);
                    // unshifted count at (n, k) = shifted value at (n - r, k - r)
                    let want = if k < r {
                        Rational::zero()
                    } else if kind == StirlingKind::First {
                        r_stirling1(n - r, k - r, &rr)
                    } else {
                        r_stirling2(n - r, k - r, &rr)
                    };
                    count += 1;
                    if *got != want {
                        failures.push(mismatch(format!("{name} n={n} k={k} r={r}"), got, &want));
                    }
                }
            }
        }
    }
    Ok(Outcome::exact(failures, count))
}

pub fn volume_specs() -> Vec<ConeSpec> {
    let mut specs = Vec::new();
    for family in [Family::A, Family::B] {
        for n in 1..=6 {
            specs.push(ConeSpec { factors: vec![Factor { family, size: n }] });
        }
    }
    specs.push(ConeSpec { factors: vec![Factor::a(2), Factor::b(2)] });
    specs
}

fn check_volumes(s: &Settings) -> Result<Outcome> {
    let mut z = ZTracker::new(s.sigma);
    for spec in volume_specs() {
        let est = estimate_intrinsic_volumes(&spec, s.samples.volumes, &s.mc)?;
        for (k, e) in est.iter().enumerate() {
            z.add_indicator(format!("{spec} k={k}"), e, to_f64(&cone_spec_intrinsic(&spec, k)));
        }
    }
    Ok(z.finish())
}

pub fn face_cases() -> Vec<(Vec<usize>, usize)> {
    let mut cases = Vec::new();
    for ns in [vec![2], vec![3], vec![4], vec![5], vec![1, 1], vec![2, 2]] {
        for j in 0..2 {
            cases.push((ns.clone(), j));
        }
    }
    cases
}

fn check_faces(s: &Settings) -> Result<Outcome> {
    let mut z = ZTracker::new(s.sigma);
    for kind in [WalkKind::Walk, WalkKind::Bridge] {
        for (ns, j) in face_cases() {
            let ens = WalkEnsemble::new(2, ns, kind);
            let exact = to_f64(&expected_faces(&ens, j)?);
            let est = estimate_expected_faces(&ens, j, s.samples.faces, &s.mc)?;
            z.add(format!("{kind:?} ns={:?} j={j}", ens.ns), &est, exact);
        }
    }
    Ok(z.finish())
}

fn check_recovery(s: &Settings) -> Result<Outcome> {
    let mut z = ZTracker::new(s.sigma);
    let mut inconclusive = 0;
    for source in Source::ALL {
        for n in 1..=4 {
            let j0 = if source == Source::WA { 1 } else { 0 };
            for j in j0..=n {
                for k in j..=n {
                    let exact = recovery_probability(source, n, j, k)?;
                    let r = estimate_recovery_probability(source, n, j, k, s.samples.recovery, Weights::Equal, &s.mc)?;
                    let label = format!("{source} n={n} j={j} k={k}");
                    if j == 0 && k == n && r.estimate.mean != 1.0 {
                        z.fail(format!("{label}: invertible cell gave {}", r.estimate.mean));
                    }
                    inconclusive += r.inconclusive;
                    z.add_indicator(label, &r.estimate, to_f64(&exact));
                }
            }
        }
    }
    let mut out = z.finish();
    out.detail.push_str(&format!("; {inconclusive} inconclusive trials"));
    Ok(out)
}

/// B(3) and the tangent cones of the 3-dimensional type-B orthoscheme.
pub fn reconstruction_specs() -> Vec<ConeSpec> {
    let mut specs = vec![ConeSpec { factors: vec![Factor::b(3)] }];
    for j in 0..=3 {
        for (spec, _) in enumerate_tangent_cones(Source::KB, 3, j).items {
            if !specs.contains(&spec) {
                specs.push(spec);
            }
        }
    }
    specs
}

fn check_reconstruction(s: &Settings) -> Result<Outcome> {
    let mut z = ZTracker::new(s.sigma);
    for spec in reconstruction_specs() {
        for k in 0..=spec.ambient_dim() {
            let est = reconstruct_intrinsic_volume(&spec, k, s.samples.internal, &s.mc)?;
            z.add(format!("{spec} k={k}"), &est, to_f64(&cone_spec_intrinsic(&spec, k)));
        }
    }
    Ok(z.finish())
}

pub const PROJECTION_TOL: f64 = 1e-10;

/// Largest deviation between the fast projection and the face-enumeration
/// oracle over random inputs.
pub fn projection_deviation(samples: u64, seed: u64) -> f64 {
    let mut worst = 0.0f64;
    for (fi, family) in [Family::A, Family::B].into_iter().enumerate() {
        for n in 1..=6 {
            let mut g = RngStream::new(derive_seed(seed, "projection"), (fi * 16 + n) as u64).gaussian();
            let mut x = vec![0.0; n];
            for _ in 0..samples {
                g.fill_normal(&mut x);
                let p = project_chamber(family, &x);
                let o = project_chamber_oracle(family, &x);
                for (a, b) in p.iter().zip(&o) {
                    worst = worst.max((a - b).abs());
                }
            }
        }
    }
    worst
}

fn check_projection(s: &Settings) -> Outcome {
    let worst = projection_deviation(s.samples.projection, s.mc.seed);
    Outcome {
        ok: worst <= PROJECTION_TOL,
        detail: format!("{} inputs per chamber, n <= 6, max deviation {worst:.3e}", s.samples.projection),
        z: None,
    }
}

fn check_sparre(s: &Settings) -> Result<Outcome> {
    let mut z = ZTracker::new(s.sigma);
    for i in 1..=8 {
        let est = estimate_nonpositive_walk(i, s.samples.sparre, &s.mc)?;
        z.add_indicator(format!("i={i}"), &est, to_f64(&sparre_andersen_exact(i)));
    }
    Ok(z.finish())
}

type CheckFn = fn(&Settings) -> Result<Outcome>;

pub struct Check {
    pub name: &'static str,
    pub kind: CheckKind,
    run: CheckFn,
}

pub fn catalog() -> Vec<Check> {
    use CheckKind::*;
    vec![
        Check { name: "exact/product-identities", kind: ExactIdentity, run: |_| Ok(check_product_identities()) },
        Check { name: "exact/face-counts", kind: ExactIdentity, run: |_| Ok(check_face_counts()) },
        Check { name: "oracle/theorem-enumeration", kind: OracleEquivalence, run: |_| Ok(check_theorem_enumeration()) },
        Check { name: "oracle/series", kind: OracleEquivalence, run: |_| check_series() },
        Check { name: "oracle/brute-force-stirling", kind: OracleEquivalence, run: |_| check_brute_force() },
        Check { name: "gf-oracle/stirling1", kind: OracleEquivalence, run: |s| check_catalog("stirling1", s.fault) },
        Check { name: "gf-oracle/stirling2", kind: OracleEquivalence, run: |s| check_catalog("stirling2", s.fault) },
        Check { name: "gf-oracle/stirling1-b", kind: OracleEquivalence, run: |s| check_catalog("stirling1-b", s.fault) },
        Check { name: "gf-oracle/stirling2-b", kind: OracleEquivalence, run: |s| check_catalog("stirling2-b", s.fault) },
        Check { name: "gf-oracle/r-stirling1", kind: OracleEquivalence, run: |s| check_catalog("r-stirling1", s.fault) },
        Check { name: "gf-oracle/r-stirling2", kind: OracleEquivalence, run: |s| check_catalog("r-stirling2", s.fault) },
        Check { name: "oracle/projection", kind: OracleEquivalence, run: |s| Ok(check_projection(s)) },
        Check { name: "mc/intrinsic-volumes", kind: McVsExact, run: check_volumes },
        Check { name: "mc/expected-faces", kind: McVsExact, run: check_faces },
        Check { name: "mc/recovery", kind: McVsExact, run: check_recovery },
        Check { name: "mc/angle-reconstruction", kind: McVsExact, run: check_reconstruction },
        Check { name: "mc/sparre-andersen", kind: McVsExact, run: check_sparre },
    ]
}

impl Check {
    pub fn run(&self, s: &Settings) -> CheckResult {
        let start = Instant::now();
        let outcome = (self.run)(s).unwrap_or_else(|e| Outcome { ok: false, detail: format!("error: {e}"), z: None });
        CheckResult {
            name: self.name.to_string(),
            kind: self.kind,
            status: if outcome.ok { Status::Pass } else { Status::Fail },
            detail: outcome.detail,
            z: outcome.z,
            runtime_ms: start.elapsed().as_millis() as u64,
        }
    }
}

pub fn find(name: &str) -> Option<Check> {
    catalog().into_iter().find(|c| c.name == name)
}
