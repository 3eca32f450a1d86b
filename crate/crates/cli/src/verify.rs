use serde::Serialize;

use crate::checks::{catalog, CheckResult, Settings};

pub const REPORT_VERSION: &str = "1";

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub version: &'static str,
    pub seed: u64,
    pub sigma: f64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

pub fn run_verify(settings: &Settings) -> Report {
    let checks: Vec<CheckResult> = catalog().iter().map(|c| c.run(settings)).collect();
    Report {
        version: REPORT_VERSION,
        seed: settings.mc.seed,
        sigma: settings.sigma,
        passed: checks.iter().all(|c| c.passed()),
        checks,
    }
}
