//! Grids of exact values.

use orthoscheme_core::angles::{chamber_intrinsic, theorem};
use orthoscheme_core::faces::{expected_faces, recovery_probability};
use orthoscheme_core::rational::{format_rational, Rational};
use orthoscheme_core::stirling::{r_stirling1, r_stirling2, stirling1, stirling1_b, stirling2, stirling2_b, table_limit};
use orthoscheme_core::{Family, Source, WalkEnsemble, WalkKind};
use serde_json::json;

use crate::error::{CliError, Result};
use crate::output::Record;

pub const MAX_GRID_N: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TableFamily {
    Stirling1,
    Stirling2,
    Stirling1B,
    Stirling2B,
    RStirling1,
    RStirling2,
    /// j-face sums of the type-B orthoscheme
    Orthoscheme,
    /// j-face sums of the type-A orthoscheme
    OrthoschemeA,
    WeylA,
    WeylB,
    IntrinsicA,
    IntrinsicB,
    ExpectedFaces,
    Recovery,
}

#[derive(Debug, Clone)]
pub struct TableRequest {
    pub family: TableFamily,
    pub n: usize,
    pub r: Rational,
    pub d: usize,
    pub source: Source,
}

fn record(family: &str, keys: &[(&str, usize)], value: &Rational) -> Record {
    let mut r = Record::new();
    r.insert("family".into(), json!(family));
    for (k, v) in keys {
        r.insert((*k).into(), json!(v));
    }
    r.insert("value".into(), json!(format_rational(value)));
    r
}

/// All rows of the family for sizes up to `req.n`.
pub fn build_table(req: &TableRequest) -> Result<Vec<Record>> {
    let limit = match req.family {
        TableFamily::Stirling1 | TableFamily::Stirling2 | TableFamily::Stirling1B | TableFamily::Stirling2B => {
            table_limit()
        }
        _ => MAX_GRID_N,
    };
    if req.n > limit {
        return Err(CliError::Usage(format!("n = {} exceeds the limit {limit} for this table", req.n)));
    }
    let name = clap::ValueEnum::to_possible_value(&req.family).map(|v| v.get_name().to_string()).unwrap_or_default();
    let mut rows = Vec::new();
    let nk = |f: &dyn Fn(usize, usize) -> Rational, rows: &mut Vec<Record>| {
        for n in 0..=req.n {
            for k in 0..=n {
                rows.push(record(&name, &[("n", n), ("k", k)], &f(n, k)));
            }
        }
    };
    match req.family {
        TableFamily::Stirling1 => nk(&stirling1, &mut rows),
        TableFamily::Stirling2 => nk(&stirling2, &mut rows),
        TableFamily::Stirling1B => nk(&stirling1_b, &mut rows),
        TableFamily::Stirling2B => nk(&stirling2_b, &mut rows),
        TableFamily::RStirling1 => nk(&|n, k| r_stirling1(n, k, &req.r), &mut rows),
        TableFamily::RStirling2 => nk(&|n, k| r_stirling2(n, k, &req.r), &mut rows),
        TableFamily::IntrinsicA => {
            for n in 1..=req.n {
                for k in 0..=n {
                    rows.push(record(&name, &[("n", n), ("k", k)], &chamber_intrinsic(Family::A, n, k)));
                }
            }
        }
        TableFamily::IntrinsicB => nk(&|n, k| chamber_intrinsic(Family::B, n, k), &mut rows),
        TableFamily::Orthoscheme | TableFamily::OrthoschemeA | TableFamily::WeylA | TableFamily::WeylB => {
            let source = match req.family {
                TableFamily::Orthoscheme => Source::KB,
                TableFamily::OrthoschemeA => Source::KA,
                TableFamily::WeylA => Source::WA,
                _ => Source::WB,
            };
            for n in 1..=req.n {
                for j in 0..=n {
                    for k in j..=n {
                        rows.push(record(&name, &[("n", n), ("j", j), ("k", k)], &theorem(source, n, j, k)));
                    }
                }
            }
        }
        TableFamily::ExpectedFaces => {
            if !(1..=MAX_GRID_N).contains(&req.d) {
                return Err(CliError::Usage("expected-faces needs --d >= 1".into()));
            }
            for n in req.d..=req.n {
                for j in 0..req.d {
                    let ens = WalkEnsemble::new(req.d, vec![n], WalkKind::Walk);
                    rows.push(record(&name, &[("d", req.d), ("n", n), ("j", j)], &expected_faces(&ens, j)?));
                }
            }
        }
        TableFamily::Recovery => {
            for n in 1..=req.n {
                let j0 = if req.source == Source::WA { 1 } else { 0 };
                for j in j0..=n {
                    for k in j..=n {
                        let v = recovery_probability(req.source, n, j, k)?;
                        let mut r = record(&name, &[("n", n), ("j", j), ("k", k)], &v);
                        r.insert("source".into(), json!(req.source.name()));
                        rows.push(r);
                    }
                }
            }
        }
    }
    Ok(rows)
}
