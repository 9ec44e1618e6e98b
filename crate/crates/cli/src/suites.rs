//! Named verification suites and their JSON reports.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use cliffweyl::checks::*;
use cliffweyl::deform::cocycle::{cocycle_law_report, compare_cocycle};
use cliffweyl::deform::ore::{ghost_identities, relations_report, OreAlgebra};
use cliffweyl::deform::probe::osp22_check;
use cliffweyl::deform::verma::{finite_irrep_pi_h, pi_h_relations_report, verma_relations_report, Sign};
use cliffweyl::hochschild::hochschild_suite;
use cliffweyl::osp::{verify_g, verify_invariance, verify_ps, OspContext};
use cliffweyl::random;
use cliffweyl::report::{Failure, Report};
use cliffweyl::reps::{spin_lemma_check, spin_rep_odd_sign_check};
use cliffweyl::GaussRat;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::eval::AlgebraSpec;

pub const SUITES: [&str; 19] = [
    "relations",
    "associativity",
    "periodicity1",
    "periodicity2",
    "odd-split",
    "spin-lemma",
    "matrix-iso",
    "parastat",
    "twisted-adjoint",
    "ore-relations",
    "a0-iso",
    "cocycle",
    "ghost",
    "verma",
    "pi-h",
    "center",
    "commutant",
    "osp22",
    "hochschild",
];

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
    #[error("invalid parameters for {suite}: {reason}")]
    InvalidParams { suite: String, reason: String },
    #[error(transparent)]
    Algebra(#[from] cliffweyl::Error),
}

/// Parameters as given on the command line; unset values take per-suite
/// defaults.
#[derive(Debug, Clone, Default)]
pub struct SuiteParams {
    pub algebra: Option<AlgebraSpec>,
    pub seed: u64,
    pub maxdeg: Option<u32>,
    pub cases: Option<usize>,
}

/// The parameters a suite actually ran with.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolvedParams {
    pub algebra: String,
    pub seed: u64,
    pub maxdeg: u32,
    pub cases: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub params: ResolvedParams,
    pub passed: bool,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub outputs: BTreeMap<String, String>,
    /// Kept out of the JSON so that reports are byte-reproducible.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SuiteResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

struct Defaults {
    algebra: &'static str,
    maxdeg: u32,
    cases: usize,
}

fn defaults(suite: &str) -> Option<Defaults> {
    let d = |algebra, maxdeg, cases| Some(Defaults { algebra, maxdeg, cases });
    match suite {
        "relations" => d("cw:1,2", 0, 0),
        "associativity" => d("cw:1,2", 4, 200),
        "periodicity1" => d("cw:3,2", 3, 100),
        "periodicity2" => d("ore:1", 3, 50),
        "odd-split" => d("cw:3,0", 4, 50),
        "spin-lemma" => d("cw:6,0", 0, 0),
        "matrix-iso" => d("cw:2,2", 3, 50),
        "parastat" => d("cw:1,2", 0, 0),
        "twisted-adjoint" => d("cw:1,2", 0, 0),
        "ore-relations" => d("ore:1", 0, 3),
        "a0-iso" => d("ore:1", 4, 200),
        "cocycle" => d("ore:0", 3, 100),
        "ghost" => d("ore:1", 0, 10),
        "verma" => d("ore:0", 50, 20),
        "pi-h" => d("ore:0", 4, 0),
        "center" => d("ore:0", 4, 0),
        "commutant" => d("ore:0", 4, 0),
        "osp22" => d("ore:1", 0, 0),
        "hochschild" => d("ore:0", 3, 100),
        _ => None,
    }
}

fn invalid(suite: &str, reason: impl Into<String>) -> SuiteError {
    SuiteError::InvalidParams { suite: suite.to_string(), reason: reason.into() }
}

fn need_cw(suite: &str, spec: AlgebraSpec) -> Result<(usize, usize), SuiteError> {
    match spec {
        AlgebraSpec::Cw { n_fermi, k } => Ok((n_fermi, k)),
        AlgebraSpec::Ore { .. } => Err(invalid(suite, format!("needs a cw algebra, got {spec}"))),
    }
}

fn need_ore(suite: &str, spec: AlgebraSpec) -> Result<usize, SuiteError> {
    match spec {
        AlgebraSpec::Ore { n } => Ok(n),
        AlgebraSpec::Cw { .. } => Err(invalid(suite, format!("needs an ore algebra, got {spec}"))),
    }
}

/// Runs one suite. Deterministic in (name, params): randomized suites draw
/// from a ChaCha8 stream seeded with `params.seed`.
pub fn run_suite(name: &str, params: &SuiteParams) -> Result<SuiteResult, SuiteError> {
    let defs = defaults(name).ok_or_else(|| SuiteError::UnknownSuite(name.to_string()))?;
    let spec = match params.algebra {
        Some(a) => a,
        None => defs.algebra.parse().expect("default algebra parses"),
    };
    let maxdeg = params.maxdeg.unwrap_or(defs.maxdeg);
    let cases = params.cases.unwrap_or(defs.cases);
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let rng = &mut rng;
    let mut report = Report::new(name);
    match name {
        "relations" => match spec {
            AlgebraSpec::Cw { .. } => report.absorb(presentation_report(&spec.signature().expect("cw"))?),
            AlgebraSpec::Ore { n } => report.absorb(relations_report(&OreAlgebra::generic(n))),
        },
        "associativity" => match spec {
            AlgebraSpec::Cw { .. } => {
                let sig = spec.signature().expect("cw");
                report.absorb(star_associativity_report(rng, &sig, cases, maxdeg)?);
                for rep in representations_for(&sig) {
                    report.absorb(rep_oracle_report(rng, &rep, cases, maxdeg)?);
                }
            }
            AlgebraSpec::Ore { n } => report.absorb(ore_associativity_report(rng, n, cases, maxdeg)?),
        },
        "periodicity1" => {
            let (big_n, k) = need_cw(name, spec)?;
            if big_n < 2 {
                return Err(invalid(name, "needs at least two Clifford generators"));
            }
            for m in 1..=big_n / 2 {
                report.absorb(periodicity1_report(rng, m, big_n - 2 * m, k, cases, maxdeg)?);
            }
        }
        "periodicity2" => {
            let n = need_ore(name, spec)?;
            report.absorb(periodicity2_report(rng, n, cases, maxdeg)?);
        }
        "odd-split" => {
            let (nf, k) = need_cw(name, spec)?;
            if nf % 2 == 0 || k != 0 {
                return Err(invalid(name, "needs cw:<2n+1>,0"));
            }
            report.absorb(odd_split_report(rng, nf / 2, cases, maxdeg)?);
        }
        "spin-lemma" => {
            let (nf, k) = need_cw(name, spec)?;
            if nf % 2 == 1 || k != 0 || nf == 0 {
                return Err(invalid(name, "needs cw:<2n>,0 with n >= 1"));
            }
            report.absorb(spin_lemma_check(nf / 2)?);
            report.absorb(spin_rep_odd_sign_check(nf / 2)?);
            report.absorb(volume_square_report(nf / 2)?);
        }
        "matrix-iso" => {
            let (nf, k) = need_cw(name, spec)?;
            if nf % 2 == 1 {
                return Err(invalid(name, "needs an even number of Clifford generators"));
            }
            report.absorb(matrix_iso_report(rng, nf / 2, k, cases, maxdeg, maxdeg)?);
            report.absorb(matrix_associativity_report(rng, 1 << (nf / 2), k, cases, maxdeg)?);
        }
        "parastat" => {
            let (nf, k) = need_cw(name, spec)?;
            let ctx = OspContext::new(nf, k);
            report.absorb(verify_ps(&ctx)?);
            report.absorb(verify_g(&ctx)?);
        }
        "twisted-adjoint" => {
            let (nf, k) = need_cw(name, spec)?;
            report.absorb(verify_invariance(&OspContext::new(nf, k))?);
        }
        "ore-relations" => {
            let n = need_ore(name, spec)?;
            report.absorb(relations_report(&OreAlgebra::generic(n)));
            for _ in 0..cases {
                report.absorb(relations_report(&OreAlgebra::specialized(n, random::gauss(rng))));
            }
        }
        "a0-iso" => {
            let n = need_ore(name, spec)?;
            report.absorb(a0_iso_report(rng, n, cases, maxdeg)?);
        }
        "cocycle" => {
            let n = need_ore(name, spec)?;
            report.absorb(cocycle_law_report(rng, n, cases, maxdeg)?);
            let (_, cmp) = compare_cocycle(n)?;
            report.absorb(cmp);
        }
        "ghost" => {
            let n = need_ore(name, spec)?;
            let lambdas: Vec<GaussRat> = (0..cases).map(|_| random::gauss(rng)).collect();
            report.absorb(ghost_identities(n, &lambdas));
        }
        "verma" => {
            if need_ore(name, spec)? != 0 {
                return Err(invalid(name, "the Verma-type module is defined for ore:0"));
            }
            report.absorb(verma_top_report(6)?);
            for _ in 0..cases {
                report.absorb(verma_relations_report(&random::gauss(rng), maxdeg));
            }
        }
        "pi-h" => {
            let n = need_ore(name, spec)?;
            for two_h in 0..=maxdeg {
                for sign in [Sign::Plus, Sign::Minus] {
                    report.absorb(pi_h_relations_report(&finite_irrep_pi_h(n, two_h, sign)?));
                }
            }
        }
        "center" => {
            let n = need_ore(name, spec)?;
            report.absorb(center_report(n, maxdeg));
        }
        "commutant" => {
            let n = need_ore(name, spec)?;
            report.absorb(commutant_report(n, maxdeg)?);
        }
        "osp22" => {
            let n = need_ore(name, spec)?;
            report.absorb(osp22_check(n)?);
        }
        "hochschild" => {
            let n = need_ore(name, spec)?;
            report.absorb(hochschild_suite(rng, n, cases, maxdeg));
        }
        _ => unreachable!("defaults() covers every suite"),
    }
    Ok(SuiteResult {
        suite: name.to_string(),
        params: ResolvedParams { algebra: spec.to_string(), seed: params.seed, maxdeg, cases },
        passed: report.passed(),
        cases: report.cases,
        failures: report.failures,
        outputs: report.outputs,
        wall_time: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_has_defaults() {
        for s in SUITES {
            assert!(defaults(s).is_some(), "{s}");
        }
        assert!(matches!(run_suite("nope", &SuiteParams::default()), Err(SuiteError::UnknownSuite(_))));
    }

    #[test]
    fn center_basis() {
        let r = run_suite("center", &SuiteParams::default()).unwrap();
        assert!(r.passed);
        assert_eq!(r.outputs["center.basis"], "{1, L, L^2}");
    }

    #[test]
    fn wrong_algebra_kind_is_rejected() {
        let params = SuiteParams { algebra: Some("ore:1".parse().unwrap()), ..Default::default() };
        assert!(matches!(run_suite("parastat", &params), Err(SuiteError::InvalidParams { .. })));
        let params = SuiteParams { algebra: Some("cw:2,2".parse().unwrap()), ..Default::default() };
        assert!(matches!(run_suite("odd-split", &params), Err(SuiteError::InvalidParams { .. })));
    }
}
