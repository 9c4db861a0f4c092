//! Acceptance suite: one line per criterion, exact equality throughout.
//! Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use supersphere::campaign::{check_single, run_campaign, CampaignConfig, Report};

fn cfg(generators: usize, samples: usize) -> CampaignConfig {
    CampaignConfig { generators, samples, seed: 0x5eed, ..CampaignConfig::default() }
}

/// Runs every id and collects the failing ones.
fn run_ids(ids: &[String], cfg: &CampaignConfig) -> Vec<String> {
    let mut failed = Vec::new();
    for id in ids {
        let report: Report = check_single(id, cfg).expect("registered id");
        for c in report.failures() {
            failed.push(format!("{}: {} {}", c.id, c.summary, c.counterexample.clone().unwrap_or_default()));
        }
    }
    failed
}

fn ids(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn per_n(kind: &str, ns: impl IntoIterator<Item = i32>) -> Vec<String> {
    ns.into_iter().map(|n| format!("{kind}.n={n}")).collect()
}

struct Criterion {
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Vec<String>,
}

fn grassmann() -> Vec<String> {
    run_ids(&ids(&["grassmann.laws"]), &cfg(6, 500))
}

fn d_identities() -> Vec<String> {
    run_ids(&ids(&["superfield.d_identities"]), &cfg(6, 200))
}

fn closure() -> Vec<String> {
    let mut failed = run_ids(&ids(&["superconformal.closure"]), &cfg(6, 100));
    failed.extend(run_ids(&per_n("spheres.closure", -4..=4), &cfg(4, 100)));
    failed
}

fn functors() -> Vec<String> {
    run_ids(&ids(&["superconformal.n1_roundtrip"]), &cfg(6, 200))
}

fn transition() -> Vec<String> {
    run_ids(&ids(&["spheres.transition"]), &cfg(6, 1))
}

fn charts() -> Vec<String> {
    run_ids(&per_n("spheres.charts", -3..=3), &cfg(4, 100))
}

fn ns_algebra() -> Vec<String> {
    run_ids(&ids(&["ns.jacobi", "ns.representation"]), &CampaignConfig { band: 3, ..cfg(4, 1) })
}

fn subalgebras() -> Vec<String> {
    run_ids(&ids(&["ns.subalgebras"]), &cfg(4, 1))
}

fn matrices() -> Vec<String> {
    run_ids(&ids(&["matrix.osp", "matrix.p", "matrix.semidirect", "matrix.super_jacobi"]), &cfg(4, 200))
}

fn flows() -> Vec<String> {
    let c = CampaignConfig { flow_order: 8, n_range: (-3..=3).collect(), ..cfg(6, 4) };
    run_ids(&ids(&["ns.flows", "ns.flow_vs_group"]), &c)
}

fn group_structure() -> Vec<String> {
    let c = CampaignConfig { n_range: vec![0, 1], ..cfg(5, 200) };
    let mut failed = run_ids(&ids(&["spheres.kernel"]), &c);
    failed.extend(run_ids(&ids(&["spheres.odd_translations"]), &cfg(5, 20)));
    failed
}

fn determinism() -> Vec<String> {
    let c = cfg(4, 2);
    let a = run_campaign(&c).expect("valid config").to_json();
    let b = run_campaign(&c).expect("valid config").to_json();
    if a == b {
        Vec::new()
    } else {
        vec!["reports differ for the same seed".to_string()]
    }
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { name: "Grassmann laws, 500 samples at L=6", limit: Some(Duration::from_secs(5)), run: grassmann },
        Criterion { name: "D+- identities on 200 superpolynomials", limit: None, run: d_identities },
        Criterion {
            name: "superconformal closure, sphere families for n in [-4,4]",
            limit: Some(Duration::from_secs(60)),
            run: closure,
        },
        Criterion { name: "F1 o F2 = id on 200 instances, odd shift example", limit: None, run: functors },
        Criterion { name: "I_n superconformal with N=1 image (1/z, i theta z^(n-1))", limit: None, run: transition },
        Criterion { name: "northern chart against tilde formulas, n in [-3,3]", limit: None, run: charts },
        Criterion { name: "NS super-Jacobi and representation, band 3", limit: None, run: ns_algebra },
        Criterion { name: "g_n closure, dimensions and sigma_n, n in [-6,6]", limit: None, run: subalgebras },
        Criterion { name: "osp(2|2), p(2|2) and semidirect matrix tables", limit: None, run: matrices },
        Criterion { name: "displayed flows and flow against group action", limit: None, run: flows },
        Criterion { name: "kernel K_(n mod 2), odd translations of rank |n|+2", limit: None, run: group_structure },
        Criterion { name: "same seed gives byte-identical reports", limit: None, run: determinism },
    ];
    let mut all_ok = true;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let failed = (c.run)();
        let elapsed = start.elapsed();
        let in_time = c.limit.is_none_or(|l| elapsed <= l);
        let ok = failed.is_empty() && in_time;
        all_ok &= ok;
        println!("{} criterion {:>2}: {} ({:.1}s)", if ok { "PASS" } else { "FAIL" }, i + 1, c.name, elapsed.as_secs_f64());
        for f in &failed {
            println!("    {f}");
        }
        if !in_time {
            println!("    exceeded {:?}", c.limit.unwrap());
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
