//! Verification campaign: a registry of exact property checks, run from a
//! seed, reported as versioned JSON.
//!
//! Inputs for each check are drawn sequentially from a ChaCha8 stream keyed
//! by the seed and the check id, then evaluated with [`Exec`], so reports are
//! byte-identical across runs and execution strategies.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::exec::Exec;
use crate::grassmann::MAX_GENERATORS;

mod checks;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CampaignError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CampaignConfig {
    pub generators: usize,
    pub band: i64,
    pub flow_order: usize,
    pub n_range: Vec<i32>,
    pub samples: usize,
    pub seed: u64,
    #[serde(skip)]
    pub timings: bool,
    #[serde(skip)]
    pub exec: Exec,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            generators: 6,
            band: 3,
            flow_order: 8,
            n_range: (-3..=3).collect(),
            samples: 20,
            seed: 1,
            timings: false,
            exec: Exec::default(),
        }
    }
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<(), CampaignError> {
        if self.generators < 4 || self.generators > MAX_GENERATORS {
            return Err(CampaignError::Usage(format!("--generators must be in 4..={MAX_GENERATORS}")));
        }
        if self.band < 1 {
            return Err(CampaignError::Usage("--band must be at least 1".into()));
        }
        if self.n_range.is_empty() {
            return Err(CampaignError::Usage("--n-range must not be empty".into()));
        }
        if self.samples == 0 {
            return Err(CampaignError::Usage("--samples must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub summary: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub config: CampaignConfig,
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    GrassmannLaws,
    DIdentities,
    ScClosure,
    ScInverse,
    N1RoundTrip,
    Transition,
    SphereClosure,
    SphereCharts,
    Kernel,
    OddTranslations,
    Jacobi,
    Representation,
    Subalgebras,
    Flows,
    FlowVsGroup,
    MatrixOsp,
    MatrixP,
    MatrixSemidirect,
    MatrixJacobi,
}

impl Kind {
    pub const ALL: [Kind; 19] = [
        Kind::GrassmannLaws,
        Kind::DIdentities,
        Kind::ScClosure,
        Kind::ScInverse,
        Kind::N1RoundTrip,
        Kind::Transition,
        Kind::SphereClosure,
        Kind::SphereCharts,
        Kind::Kernel,
        Kind::OddTranslations,
        Kind::Jacobi,
        Kind::Representation,
        Kind::Subalgebras,
        Kind::Flows,
        Kind::FlowVsGroup,
        Kind::MatrixOsp,
        Kind::MatrixP,
        Kind::MatrixSemidirect,
        Kind::MatrixJacobi,
    ];

    fn id(self) -> &'static str {
        match self {
            Kind::GrassmannLaws => "grassmann.laws",
            Kind::DIdentities => "superfield.d_identities",
            Kind::ScClosure => "superconformal.closure",
            Kind::ScInverse => "superconformal.inverse",
            Kind::N1RoundTrip => "superconformal.n1_roundtrip",
            Kind::Transition => "spheres.transition",
            Kind::SphereClosure => "spheres.closure",
            Kind::SphereCharts => "spheres.charts",
            Kind::Kernel => "spheres.kernel",
            Kind::OddTranslations => "spheres.odd_translations",
            Kind::Jacobi => "ns.jacobi",
            Kind::Representation => "ns.representation",
            Kind::Subalgebras => "ns.subalgebras",
            Kind::Flows => "ns.flows",
            Kind::FlowVsGroup => "ns.flow_vs_group",
            Kind::MatrixOsp => "matrix.osp",
            Kind::MatrixP => "matrix.p",
            Kind::MatrixSemidirect => "matrix.semidirect",
            Kind::MatrixJacobi => "matrix.super_jacobi",
        }
    }

    pub fn anchor(self) -> &'static str {
        match self {
            Kind::GrassmannLaws => "Grassmann algebra: associativity, supercommutativity, nilpotency, inverses",
            Kind::DIdentities => "odd derivations: (D±)^2 = 0 and D+D- + D-D+ = 2 d/dz",
            Kind::ScClosure => "N=2 superconformal maps are closed under composition",
            Kind::ScInverse => "inverse of an N=2 superconformal map",
            Kind::N1RoundTrip => "F1 o F2 = id and the odd shift example",
            Kind::Transition => "transition map I_n and its N=1 image (1/z, i theta z^(n-1))",
            Kind::SphereClosure => "automorphisms of S^2C(n) compose within the family",
            Kind::SphereCharts => "northern chart tilde formulas and pole locations",
            Kind::Kernel => "kernel of the SL(2) x GL(1) action is K_(n mod 2)",
            Kind::OddTranslations => "odd translations form an abelian group of rank |n|+2",
            Kind::Jacobi => "N=2 Neveu-Schwarz relations satisfy super-Jacobi",
            Kind::Representation => "superderivation representation with central charge zero",
            Kind::Subalgebras => "subalgebras g_n: closure, dimensions, sigma_n",
            Kind::Flows => "exponential flows of the superderivations",
            Kind::FlowVsGroup => "flows agree with the group action, ad = 1",
            Kind::MatrixOsp => "g_0 isomorphic to osp(2|2)",
            Kind::MatrixP => "g_(+-1) isomorphic to gl(1) x_sigma p(2|2)",
            Kind::MatrixSemidirect => "g_n isomorphic to (sl2 + gl1) x_sigma_n odd abelian",
            Kind::MatrixJacobi => "matrix superbracket: super-Jacobi and supertrace",
        }
    }

    fn per_n(self) -> bool {
        matches!(self, Kind::SphereClosure | Kind::SphereCharts)
    }
}

/// A registered check; per-`n` checks carry their `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckSpec {
    pub kind: Kind,
    pub n: Option<i32>,
}

impl CheckSpec {
    pub fn id(&self) -> String {
        match self.n {
            Some(n) => format!("{}.n={n}", self.kind.id()),
            None => self.kind.id().to_string(),
        }
    }

    /// Parses `kind` or `kind.n=K` ids.
    pub fn parse(id: &str) -> Result<Self, CampaignError> {
        for kind in Kind::ALL {
            if kind.per_n() {
                if let Some(rest) = id.strip_prefix(kind.id()).and_then(|r| r.strip_prefix(".n=")) {
                    let n = rest.parse().map_err(|_| CampaignError::Usage(format!("bad n in check id '{id}'")))?;
                    return Ok(CheckSpec { kind, n: Some(n) });
                }
            } else if id == kind.id() {
                return Ok(CheckSpec { kind, n: None });
            }
        }
        Err(CampaignError::Usage(format!("unknown check id '{id}'")))
    }
}

/// Every check for the configuration, in report order.
pub fn registry(cfg: &CampaignConfig) -> Vec<CheckSpec> {
    let mut out = Vec::new();
    for kind in Kind::ALL {
        if kind.per_n() {
            out.extend(cfg.n_range.iter().map(|&n| CheckSpec { kind, n: Some(n) }));
        } else {
            out.push(CheckSpec { kind, n: None });
        }
    }
    out
}

/// Outcome of one check before timing and bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub ok: bool,
    pub summary: String,
    pub counterexample: Option<Value>,
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf29ce484222325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

pub fn check_rng(cfg: &CampaignConfig, id: &str) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(fnv1a(id));
    rng
}

/// Run one check and produce its record.
pub fn run_check(spec: &CheckSpec, cfg: &CampaignConfig) -> CheckRecord {
    let id = spec.id();
    let start = Instant::now();
    let mut rng = check_rng(cfg, &id);
    let outcome = checks::run(spec, cfg, &mut rng);
    CheckRecord {
        id,
        anchor: spec.kind.anchor().to_string(),
        status: if outcome.ok { Status::Pass } else { Status::Fail },
        summary: outcome.summary,
        elapsed_ms: cfg.timings.then(|| start.elapsed().as_millis() as u64),
        counterexample: outcome.counterexample,
    }
}

fn report(cfg: &CampaignConfig, specs: &[CheckSpec]) -> Report {
    let checks = cfg.exec.map(specs, |s| run_check(s, cfg));
    Report {
        schema_version: SCHEMA_VERSION,
        config: cfg.clone(),
        passed: checks.iter().all(|c| c.status == Status::Pass),
        checks,
    }
}

pub fn run_campaign(cfg: &CampaignConfig) -> Result<Report, CampaignError> {
    cfg.validate()?;
    Ok(report(cfg, &registry(cfg)))
}

pub fn check_single(id: &str, cfg: &CampaignConfig) -> Result<Report, CampaignError> {
    cfg.validate()?;
    let spec = CheckSpec::parse(id)?;
    Ok(report(cfg, &[spec]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_total_and_unique() {
        let cfg = CampaignConfig::default();
        let reg = registry(&cfg);
        for kind in Kind::ALL {
            assert!(reg.iter().any(|s| s.kind == kind), "{kind:?} missing");
        }
        let mut ids: Vec<String> = reg.iter().map(CheckSpec::id).collect();
        let total = ids.len();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), total);
        for s in &reg {
            assert_eq!(CheckSpec::parse(&s.id()).unwrap(), *s);
        }
    }

    #[test]
    fn ids() {
        assert_eq!(
            CheckSpec::parse("spheres.closure.n=2").unwrap(),
            CheckSpec { kind: Kind::SphereClosure, n: Some(2) }
        );
        assert!(matches!(CheckSpec::parse("bogus"), Err(CampaignError::Usage(_))));
        assert!(matches!(CheckSpec::parse("spheres.closure.n=x"), Err(CampaignError::Usage(_))));
    }

    #[test]
    fn single_check_report() {
        let cfg = CampaignConfig { samples: 2, ..CampaignConfig::default() };
        let r = check_single("ns.subalgebras", &cfg).unwrap();
        assert_eq!(r.checks.len(), 1);
        assert!(r.passed);
        assert!(r.checks[0].elapsed_ms.is_none());
        assert!(matches!(check_single("bogus", &cfg), Err(CampaignError::Usage(_))));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let base = CampaignConfig { samples: 3, ..CampaignConfig::default() };
        let seq = CampaignConfig { exec: Exec::Sequential, ..base.clone() };
        let par = CampaignConfig { exec: Exec::Parallel, ..base };
        for id in ["grassmann.laws", "spheres.kernel", "matrix.super_jacobi"] {
            assert_eq!(check_single(id, &seq).unwrap().to_json(), check_single(id, &par).unwrap().to_json());
        }
    }

    #[test]
    fn config_validation() {
        let bad = CampaignConfig { generators: 3, ..CampaignConfig::default() };
        assert!(bad.validate().is_err());
        let bad = CampaignConfig { n_range: vec![], ..CampaignConfig::default() };
        assert!(bad.validate().is_err());
    }
}

