//! The property suite: generated instances of every kind, each run through
//! the same checks as the corresponding subcommand.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::commands::{
    curve_point_checks, hom_checks, logcfg_checks, point_checks, split_checks, z_presentation_checks,
};
use super::error::{HarnessError, Result};
use super::generate::{generate_instances, GenBounds, Instance, Kind};
use super::report::{Check, Report};
use crate::monoid::{cokernel, CokernelClass, IntegralMono, Nilpotence};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Instances per kind.
    pub count: usize,
    pub bounds: GenBounds,
    pub kinds: Vec<Kind>,
    /// Worker threads; `None` uses the rayon default.
    pub threads: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            count: 10,
            bounds: GenBounds::default(),
            kinds: Kind::ALL.to_vec(),
            threads: None,
        }
    }
}

fn tagged(checks: Vec<Check>, prefix: &str, replay: &str, inst: &Instance) -> Vec<Check> {
    checks
        .into_iter()
        .map(|mut c| {
            c.name = format!("{prefix}/{}", c.name);
            c.with_counterexample(replay, inst.fixture())
        })
        .collect()
}

/// Every check for one instance, named `kind/id/check`.
pub fn instance_checks(inst: &Instance, id: usize) -> Vec<Check> {
    let prefix = format!("{}/{id:04}", inst.kind());
    match inst {
        Instance::IntegralMono(h) => {
            let mut out = tagged(hom_checks(h.hom()), &prefix, "monoid check", inst);
            out.extend(construction_checks(h, &prefix, inst));
            out
        }
        Instance::LogCfg(cfg) => tagged(logcfg_checks(cfg), &prefix, "descent run", inst),
        Instance::Curve(d) => tagged(curve_point_checks(d), &prefix, "curve classify", inst),
        Instance::Point(d) => tagged(point_checks(d), &prefix, "point basic", inst),
    }
}

/// `split_N` or the `Z` presentation, whichever the cokernel calls for.
fn construction_checks(h: &IntegralMono, prefix: &str, inst: &Instance) -> Vec<Check> {
    if !matches!(h.nilpotents(), Ok(Nilpotence::NilpotentFree)) {
        return Vec::new();
    }
    match cokernel(h).map(|c| c.class) {
        Ok(CokernelClass::FreeRankOne { .. }) => tagged(split_checks(h), prefix, "monoid split", inst),
        Ok(CokernelClass::GroupZ { .. }) => tagged(z_presentation_checks(h), prefix, "monoid pushout", inst),
        _ => Vec::new(),
    }
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    if cfg.count == 0 {
        return Err(HarnessError::input("--count", "must be positive"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads.unwrap_or(0))
        .build()
        .map_err(|e| HarnessError::input("--threads", e))?;
    pool.install(|| {
        let mut checks = Vec::new();
        for &kind in Kind::ALL.iter().filter(|k| cfg.kinds.contains(k)) {
            let instances = generate_instances(kind, cfg.seed, cfg.count, &cfg.bounds)?;
            let per: Vec<Vec<Check>> = instances
                .par_iter()
                .enumerate()
                .map(|(id, inst)| instance_checks(inst, id))
                .collect();
            checks.extend(per.into_iter().flatten());
        }
        Ok(Report::new("suite run", checks))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes_and_is_deterministic() {
        let cfg = SuiteConfig {
            count: 3,
            ..SuiteConfig::default()
        };
        let a = run_suite(&cfg).unwrap();
        assert_eq!(a.exit_code(), 0, "{}", a.summary());
        let b = run_suite(&SuiteConfig {
            threads: Some(1),
            ..cfg
        })
        .unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }
}
