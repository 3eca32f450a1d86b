//! Rows for the `mc` subcommands.

use orthoscheme_core::angles::cone_spec_intrinsic;
use orthoscheme_core::faces::{expected_faces, recovery_probability};
use orthoscheme_core::rational::{factorial, format_rational, pow2, to_f64, Rational};
use orthoscheme_core::{ConeSpec, Source, WalkEnsemble, WalkKind};
use orthoscheme_mc::angles::{estimate_internal_angle, reconstruct_intrinsic_volume};
use orthoscheme_mc::estimate::MCEstimate;
use orthoscheme_mc::faces::estimate_expected_faces;
use orthoscheme_mc::recovery::{estimate_recovery_probability, Weights};
use orthoscheme_mc::volumes::estimate_intrinsic_volumes;
use orthoscheme_mc::McConfig;
use serde_json::{json, Value};

use crate::error::Result;
use crate::output::Record;

/// `indicator` marks means of 0/1 observations, scored with
/// [`MCEstimate::z_score_indicator`].
pub fn row(params: Value, est: &MCEstimate, exact: Option<&Rational>, indicator: bool) -> Record {
    let mut r = Record::new();
    r.insert("params".into(), params);
    r.insert("estimate".into(), json!(est.mean));
    r.insert("stderr".into(), json!(est.stderr));
    r.insert("samples".into(), json!(est.samples));
    match exact {
        Some(x) => {
            let f = to_f64(x);
            r.insert("exact".into(), json!(format_rational(x)));
            r.insert("exact_float".into(), json!(f));
            let z = if indicator { est.z_score_indicator(f) } else { est.z_score(f) };
            r.insert("z".into(), if z.is_finite() { json!(z) } else { Value::Null });
        }
        None => {
            r.insert("exact".into(), Value::Null);
            r.insert("exact_float".into(), Value::Null);
            r.insert("z".into(), Value::Null);
        }
    }
    r
}

pub fn faces(d: usize, ns: &[usize], j: usize, kind: WalkKind, samples: u64, cfg: &McConfig) -> Result<Vec<Record>> {
    let ens = WalkEnsemble::new(d, ns.to_vec(), kind);
    let exact = expected_faces(&ens, j)?;
    let est = estimate_expected_faces(&ens, j, samples, cfg)?;
    let kind = match kind {
        WalkKind::Walk => "walk",
        WalkKind::Bridge => "bridge",
    };
    let params = json!({"d": d, "b": ns.len(), "ns": ns, "j": j, "kind": kind});
    Ok(vec![row(params, &est, Some(&exact), false)])
}

pub fn volumes(spec: &ConeSpec, samples: u64, cfg: &McConfig) -> Result<Vec<Record>> {
    let est = estimate_intrinsic_volumes(spec, samples, cfg)?;
    Ok(est
        .iter()
        .enumerate()
        .map(|(k, e)| row(json!({"spec": spec.to_string(), "k": k}), e, Some(&cone_spec_intrinsic(spec, k)), true))
        .collect())
}

pub fn recovery(source: Source, n: usize, j: usize, k: usize, weights: Weights, samples: u64, cfg: &McConfig) -> Result<Vec<Record>> {
    let exact = recovery_probability(source, n, j, k)?;
    let r = estimate_recovery_probability(source, n, j, k, samples, weights, cfg)?;
    let w = match weights {
        Weights::Equal => "equal",
        Weights::Random => "random",
    };
    let params = json!({"source": source.name(), "n": n, "j": j, "k": k, "weights": w});
    let mut rec = row(params, &r.estimate, Some(&exact), true);
    rec.insert("inconclusive".into(), json!(r.inconclusive));
    Ok(vec![rec])
}

/// Ordered-Gaussian probability; exact when every block has length one.
pub fn angles(blocks: &[usize], bounded: bool, samples: u64, cfg: &McConfig) -> Result<Vec<Record>> {
    let est = estimate_internal_angle(blocks, bounded, samples, cfg)?;
    let exact = blocks.iter().all(|&b| b == 1).then(|| {
        let r = blocks.len();
        let v = Rational::from_integer(1.into()) / factorial(r);
        if bounded {
            v * pow2(-(r as i64))
        } else {
            v
        }
    });
    let params = json!({"blocks": blocks, "bounded": bounded});
    Ok(vec![row(params, &est, exact.as_ref(), true)])
}

/// Internal-times-external reconstruction of every υ_k of a cone.
pub fn reconstruction(spec: &ConeSpec, samples: u64, cfg: &McConfig) -> Result<Vec<Record>> {
    let mut rows = Vec::new();
    for k in 0..=spec.ambient_dim() {
        let est = reconstruct_intrinsic_volume(spec, k, samples, cfg)?;
        let exact = cone_spec_intrinsic(spec, k);
        rows.push(row(json!({"spec": spec.to_string(), "k": k}), &est, Some(&exact), false));
    }
    Ok(rows)
}
