use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{CampaignConfig, CheckSpec, Kind, Outcome};
use crate::gaussian::GaussianRational;
use crate::grassmann::{Parity, Supernumber};
use crate::matrix::{msa_gn_table, msa_osp_table, msa_p_table, msa_superbracket, msa_verify_hom, msa_verify_semidirect, HomReport};
use crate::ns::{displayed_flows, flow_vs_group, g_n_closure_check, ns_jacobi_check, ns_rep_bracket_check, NSBasisSymbol};
use crate::random;
use crate::serial::{function_to_json, supernumber_to_json};
use crate::spheres::{
    kernel_check, odd_translation, transition, AutomorphismParams, GroupElement, Regime, SphereAutomorphism,
};
use crate::superconformal::{N1SuperanalyticMap, SuperconformalMap};
use crate::superfield::{OddVar, RationalSuperfunction};
use crate::text::parse_function;

type Verdict = Result<(), Value>;

pub(super) fn run(spec: &CheckSpec, cfg: &CampaignConfig, rng: &mut ChaCha8Rng) -> Outcome {
    let l = cfg.generators;
    match spec.kind {
        Kind::GrassmannLaws => sampled(cfg, rng, |r| grassmann_sample(r, l), grassmann_laws),
        Kind::DIdentities => sampled(
            cfg,
            rng,
            |r| {
                let parity = if r.random_bool(0.5) { Parity::Even } else { Parity::Odd };
                random::function(r, l, parity)
            },
            d_identities,
        ),
        Kind::ScClosure => sampled(
            cfg,
            rng,
            |r| (random::superconformal_map(r, l), random::superconformal_map(r, l)),
            |(a, b)| sc_closure(a, b),
        ),
        Kind::ScInverse => sampled(cfg, rng, |r| random::invertible_map(r, l), sc_inverse),
        Kind::N1RoundTrip => with_fixed(sampled(cfg, rng, |r| random::n1_map(r, l), n1_roundtrip), odd_shift_example(l)),
        Kind::Transition => listed((-6..=6).map(|n| (format!("n={n}"), transition_check(n, l))).collect()),
        Kind::SphereClosure => {
            let n = spec.n.expect("per-n check");
            sampled(
                cfg,
                rng,
                |r| (random::params(r, n, l), random::params(r, n, l)),
                |(p, q)| sphere_closure(n, p, q),
            )
        }
        Kind::SphereCharts => {
            let n = spec.n.expect("per-n check");
            sphere_charts(cfg, rng, n)
        }
        Kind::Kernel => {
            let ns = cfg.n_range.clone();
            sampled(
                cfg,
                rng,
                |r| (random::group_element(r, l), random::group_element(r, l)),
                |(a, g)| kernel(&ns, a, g),
            )
        }
        Kind::OddTranslations => {
            let ns: Vec<i32> = (2..=6).flat_map(|k| [k, -k]).collect();
            sampled(
                cfg,
                rng,
                |r| {
                    ns.iter()
                        .map(|&n| (n, random::odd_vector(r, n, l), random::odd_vector(r, n, l)))
                        .collect::<Vec<_>>()
                },
                |cases| cases.iter().try_for_each(|(n, u, v)| odd_translations(*n, u, v)),
            )
        }
        Kind::Jacobi => {
            let r = ns_jacobi_check(cfg.band, cfg.exec);
            let v = r.violations.first().map(|v| json!({ "triple": v.triple.map(|s| s.to_string()), "sum": v.sum.to_string() }));
            verdict(v.is_none(), format!("{} triples, {} violations", r.triples, r.violations.len()), v)
        }
        Kind::Representation => representation(cfg),
        Kind::Subalgebras => listed((-6..=6).map(|n| (format!("n={n}"), subalgebra(n))).collect()),
        Kind::Flows => flows(cfg, rng, true),
        Kind::FlowVsGroup => flows(cfg, rng, false),
        Kind::MatrixOsp => hom_outcome(vec![msa_verify_hom(&msa_osp_table())]),
        Kind::MatrixP => hom_outcome(vec![msa_verify_hom(&msa_p_table(1)), msa_verify_hom(&msa_p_table(-1))]),
        Kind::MatrixSemidirect => {
            hom_outcome([-3, -2, 2, 3].iter().map(|&n| msa_verify_semidirect(&msa_gn_table(n))).collect())
        }
        Kind::MatrixJacobi => sampled(
            cfg,
            rng,
            |r| {
                let mut p = || if r.random_bool(0.5) { Parity::Even } else { Parity::Odd };
                let ps = [p(), p(), p()];
                ps.map(|q| random::block_matrix(r, q))
            },
            matrix_jacobi,
        ),
    }
}

fn verdict(ok: bool, summary: String, counterexample: Option<Value>) -> Outcome {
    Outcome { ok, summary, counterexample }
}

/// Draw `cfg.samples` inputs in order, then check them under `cfg.exec`.
fn sampled<I, G, C>(cfg: &CampaignConfig, rng: &mut ChaCha8Rng, mut gen: G, check: C) -> Outcome
where
    I: Sync,
    G: FnMut(&mut ChaCha8Rng) -> I,
    C: Fn(&I) -> Verdict + Sync + Send,
{
    let inputs: Vec<I> = (0..cfg.samples).map(|_| gen(rng)).collect();
    let results = cfg.exec.map(&inputs, check);
    let failures = results.iter().filter(|r| r.is_err()).count();
    let first = results.into_iter().find_map(Result::err);
    verdict(failures == 0, format!("{} samples, {failures} failures", cfg.samples), first)
}

/// Named deterministic cases.
fn listed(cases: Vec<(String, Verdict)>) -> Outcome {
    let total = cases.len();
    let failed: Vec<(String, Value)> = cases.into_iter().filter_map(|(name, v)| v.err().map(|e| (name, e))).collect();
    let summary = format!("{total} cases, {} failures", failed.len());
    let first = failed.into_iter().next().map(|(name, e)| json!({ "case": name, "detail": e }));
    verdict(first.is_none(), summary, first)
}

fn with_fixed(mut o: Outcome, fixed: Verdict) -> Outcome {
    match fixed {
        Ok(()) => o.summary.push_str("; fixed example ok"),
        Err(e) => {
            o.ok = false;
            o.summary.push_str("; fixed example failed");
            o.counterexample.get_or_insert(e);
        }
    }
    o
}

fn sn(x: &Supernumber) -> Value {
    serde_json::to_value(supernumber_to_json(x)).expect("serializable")
}

fn map_json(m: &SuperconformalMap) -> Value {
    serde_json::to_value(m.to_json()).expect("serializable")
}

fn fn_json(f: &RationalSuperfunction) -> Value {
    serde_json::to_value(function_to_json(f)).expect("serializable")
}

fn params_json(p: &AutomorphismParams) -> Value {
    Value::String(p.to_string())
}

fn group_json(g: &GroupElement) -> Value {
    Value::Array([&g.a, &g.b, &g.c, &g.d, &g.eps].map(sn).to_vec())
}

fn fail(law: &str, operands: Value) -> Verdict {
    Err(json!({ "law": law, "operands": operands }))
}

struct GrassmannSample {
    x: Supernumber,
    y: Supernumber,
    w: Supernumber,
    a: Supernumber,
    b: Supernumber,
}

fn grassmann_sample(r: &mut ChaCha8Rng, l: usize) -> GrassmannSample {
    let mut parity = || if r.random_bool(0.5) { Parity::Even } else { Parity::Odd };
    let (pa, pb) = (parity(), parity());
    GrassmannSample {
        x: random::supernumber(r, l, 6, true),
        y: random::supernumber(r, l, 6, false),
        w: random::supernumber(r, l, 6, false),
        a: random::homogeneous(r, l, pa, 6),
        b: random::homogeneous(r, l, pb, 6),
    }
}

fn grassmann_laws(s: &GrassmannSample) -> Verdict {
    let GrassmannSample { x, y, w, a, b } = s;
    let l = x.generators();
    if &(x * y) * w != x * &(y * w) {
        return fail("associativity", json!([sn(x), sn(y), sn(w)]));
    }
    let ba = b * a;
    let swapped = if a.parity() == Some(Parity::Odd) && b.parity() == Some(Parity::Odd) { -&ba } else { ba };
    if a * b != swapped {
        return fail("supercommutativity", json!([sn(a), sn(b)]));
    }
    for h in [a, b] {
        if h.parity() == Some(Parity::Odd) && !(h * h).is_zero() {
            return fail("odd elements square to zero", json!([sn(h)]));
        }
    }
    if !y.soul().pow(l as u32 + 1).is_zero() {
        return fail("soul is nilpotent", json!([sn(y)]));
    }
    let one = Supernumber::one(l);
    match x.inv() {
        Ok(inv) if x * &inv == one && &inv * x == one => Ok(()),
        _ => fail("two-sided inverse", json!([sn(x)])),
    }
}

fn d_identities(f: &RationalSuperfunction) -> Verdict {
    let run = || -> Result<bool, crate::superfield::SuperfieldError> {
        let dp = f.apply_d(OddVar::Plus)?;
        let dm = f.apply_d(OddVar::Minus)?;
        let dpp = dp.apply_d(OddVar::Plus)?;
        let dmm = dm.apply_d(OddVar::Minus)?;
        let anti = &dp.apply_d(OddVar::Minus)? + &dm.apply_d(OddVar::Plus)?;
        Ok(dpp.is_zero() && dmm.is_zero() && anti == f.diff_z().scale(&GaussianRational::from(2)))
    };
    match run() {
        Ok(true) => Ok(()),
        Ok(false) => fail("(D+)^2 = (D-)^2 = 0, D+D- + D-D+ = 2 d/dz", json!([fn_json(f)])),
        Err(e) => fail(&format!("D+- applicable: {e}"), json!([fn_json(f)])),
    }
}

fn sc_closure(a: &SuperconformalMap, b: &SuperconformalMap) -> Verdict {
    match a.compose(b) {
        Ok(c) if c.is_superconformal() => Ok(()),
        _ => fail("composite is superconformal", json!([map_json(a), map_json(b)])),
    }
}

fn sc_inverse(m: &SuperconformalMap) -> Verdict {
    let id = SuperconformalMap::identity(m.generators());
    let ok = m.invert().is_ok_and(|inv| {
        inv.is_superconformal()
            && m.compose(&inv).is_ok_and(|c| c == id)
            && inv.compose(m).is_ok_and(|c| c == id)
    });
    if ok {
        Ok(())
    } else {
        fail("two-sided superconformal inverse", json!([map_json(m)]))
    }
}

fn n1_roundtrip(h: &N1SuperanalyticMap) -> Verdict {
    let ok = h.to_n2().is_ok_and(|m| {
        m.is_superconformal() && m.to_n1().is_ok_and(|back| back == *h && back.to_n2().is_ok_and(|m2| m2 == m))
    });
    if ok {
        Ok(())
    } else {
        let ops = [&h.f1, &h.xi, &h.psi, &h.g].map(fn_json);
        fail("F1 o F2 = id and F2 o F1 = id", json!(ops))
    }
}

/// `(z, 1, 0, 1)` in N=1 data is `(z + ½θ⁺, θ⁺, ½ + θ⁻)`.
fn odd_shift_example(l: usize) -> Verdict {
    let p1 = |s: &str| parse_function(s, l, 1).expect("literal");
    let p2 = |s: &str| parse_function(s, l, 2).expect("literal");
    let h = N1SuperanalyticMap::new(p1("z"), p1("1"), p1("0"), p1("1"));
    let ok = h.to_n2().is_ok_and(|m| {
        m.expand().is_ok_and(|full| {
            full.z == p2("z + 1/2*tp") && full.theta_plus == p2("tp") && full.theta_minus == p2("1/2 + tm")
        })
    });
    if ok {
        Ok(())
    } else {
        fail("odd shift example", json!("(z, 1, 0, 1)"))
    }
}

fn transition_check(n: i32, l: usize) -> Verdict {
    let m = transition(n, l);
    let i = RationalSuperfunction::scalar(l, 1, GaussianRational::i());
    let theta = RationalSuperfunction::theta(l, 1, OddVar::Plus);
    let expected = (RationalSuperfunction::z_pow(l, 1, -1), &i * &(&theta * &RationalSuperfunction::z_pow(l, 1, n - 1)));
    let ok = m.is_superconformal() && m.to_n1().is_ok_and(|h| h.expand() == expected);
    if ok {
        Ok(())
    } else {
        fail("I_n superconformal with N=1 image (1/z, i theta z^(n-1))", map_json(&m))
    }
}

fn sphere_closure(n: i32, p: &AutomorphismParams, q: &AutomorphismParams) -> Verdict {
    let ops = || json!({ "n": n, "params": [params_json(p), params_json(q)] });
    let (Ok(x), Ok(y)) = (p.build(), q.build()) else {
        return fail("parameters build", ops());
    };
    let closed = x.compose(&y).is_ok_and(|(xy, r)| {
        xy.southern.is_superconformal()
            && r.build().is_ok_and(|b| b == xy)
            && AutomorphismParams::validate(&xy.southern, n).is_ok()
    });
    if !closed {
        return fail("composite lies in the family", ops());
    }
    let inverse = x.inverse().is_ok_and(|inv| {
        inv.params().is_ok() && x.compose(&inv).is_ok_and(|(id, _)| id == SphereAutomorphism::identity(n, x.generators()))
    });
    if inverse {
        Ok(())
    } else {
        fail("inverse lies in the family", ops())
    }
}

fn sphere_charts(cfg: &CampaignConfig, rng: &mut ChaCha8Rng, n: i32) -> Outcome {
    let l = cfg.generators;
    let inputs: Vec<AutomorphismParams> = (0..cfg.samples).map(|_| random::params(rng, n, l)).collect();
    let results = cfg.exec.map(&inputs, |p| {
        let ops = json!({ "n": n, "params": params_json(p) });
        let Ok(x) = p.build() else {
            return (fail("parameters build", ops), Vec::new());
        };
        match (x.to_north(), x.pole_report()) {
            (Ok(north), Ok(poles)) => {
                let composition_ok = north.northern.is_superconformal() && poles.ok();
                let verdict = if composition_ok { Ok(()) } else { fail("northern chart superconformal, poles at the expected points", ops) };
                (verdict, north.mismatches.iter().map(|m| m.to_string()).collect())
            }
            _ => (fail("northern chart computable", ops), Vec::new()),
        }
    });
    let failures = results.iter().filter(|(v, _)| v.is_err()).count();
    let mut mismatched: Vec<String> = results.iter().flat_map(|(_, m)| m.clone()).collect();
    let disagreeing = results.iter().filter(|(_, m)| !m.is_empty()).count();
    mismatched.sort();
    mismatched.dedup();
    let summary = format!(
        "{} samples, {failures} failures, {disagreeing} closed-form disagreements{}",
        cfg.samples,
        if mismatched.is_empty() { String::new() } else { format!(" in {}", mismatched.join(", ")) }
    );
    let first = results.into_iter().find_map(|(v, _)| v.err());
    verdict(failures == 0, summary, first)
}

fn kernel_element(n: i32, l: usize) -> GroupElement {
    let eps = if n.rem_euclid(2) == 0 { -1 } else { 1 };
    GroupElement::from_ints(l, [-1, 0, 0, -1, eps])
}

/// `α` and `αg` act alike exactly when `g ∈ K_{n mod 2}`; `g` runs over
/// both order-two candidates and a random element.
fn kernel(ns: &[i32], alpha: &GroupElement, g: &GroupElement) -> Verdict {
    let l = alpha.a.generators();
    let id = GroupElement::identity(l);
    for &n in ns {
        let k = kernel_element(n, l);
        for h in [k.clone(), kernel_element(n + 1, l), g.clone()] {
            let expected = h == id || h == k;
            let ops = || json!({ "n": n, "alpha": group_json(alpha), "g": group_json(&h) });
            match kernel_check(n, alpha, &alpha.mul(&h)) {
                Ok(same) if same == expected => {}
                _ => return fail("kernel of the action is K_(n mod 2)", ops()),
            }
        }
    }
    Ok(())
}

fn odd_translations(n: i32, u: &[Supernumber], v: &[Supernumber]) -> Verdict {
    let vector = |w: &[Supernumber]| Value::Array(w.iter().map(sn).collect());
    let ops = || json!({ "n": n, "u": vector(u), "v": vector(v) });
    let sum: Vec<Supernumber> = u.iter().zip(v).map(|(a, b)| a + b).collect();
    let (Ok(tu), Ok(tv), Ok(tsum)) = (odd_translation(n, u), odd_translation(n, v), odd_translation(n, &sum)) else {
        return fail("odd translations build", ops());
    };
    let hom = tu.compose(&tv).is_ok_and(|(c, _)| c == tsum) && tv.compose(&tu).is_ok_and(|(c, _)| c == tsum);
    if !hom {
        return fail("T(u) T(v) = T(v) T(u) = T(u + v)", ops());
    }
    // faithful on Λ-odd coordinates: the rank is |n| + 2
    let recovered = tu.params().is_ok_and(|p| {
        let by_power = match p.regime {
            Regime::Positive { psi_minus, .. } => psi_minus,
            Regime::Negative { psi_plus, .. } => psi_plus,
            _ => return false,
        };
        by_power.len() == n.unsigned_abs() as usize + 2 && by_power.iter().rev().eq(u.iter())
    });
    if recovered {
        Ok(())
    } else {
        fail("odd translation determines its coefficient vector", ops())
    }
}

fn representation(cfg: &CampaignConfig) -> Outcome {
    let symbols = NSBasisSymbol::band(cfg.band);
    let pairs: Vec<(NSBasisSymbol, NSBasisSymbol)> =
        symbols.iter().flat_map(|&a| symbols.iter().map(move |&b| (a, b))).collect();
    let results = cfg.exec.map(&pairs, |&(a, b)| {
        let r = ns_rep_bracket_check(a, b);
        if r.matches() {
            Ok(())
        } else {
            Err(json!({
                "pair": [a.to_string(), b.to_string()],
                "commutator": r.commutator.to_string(),
                "image": r.image.to_string(),
            }))
        }
    });
    let failures = results.iter().filter(|r| r.is_err()).count();
    let first = results.into_iter().find_map(Result::err);
    verdict(failures == 0, format!("{} pairs, {failures} violations", pairs.len()), first)
}

fn subalgebra(n: i64) -> Verdict {
    let r = g_n_closure_check(n);
    let odd_dim = if n.abs() <= 2 { 4 } else { n.unsigned_abs() as usize + 2 };
    if r.passed() && r.even_dim == 4 && r.odd_dim == odd_dim {
        return Ok(());
    }
    Err(json!({
        "dims": [r.even_dim, r.odd_dim],
        "independent": r.independent,
        "not_closed": r.not_closed.iter().map(|(i, j, e)| json!([i, j, e.to_string()])).collect::<Vec<_>>(),
        "sigma_mismatches": r.sigma_mismatches.iter()
            .map(|(i, k, want, got)| json!({ "even": i, "k": k, "displayed": want.to_string(), "computed": got.to_string() }))
            .collect::<Vec<_>>(),
    }))
}

/// Flows are identities in a formal parameter, so a handful of generic
/// nilpotent parameters suffices; at most four are drawn.
fn flows(cfg: &CampaignConfig, rng: &mut ChaCha8Rng, displayed: bool) -> Outcome {
    let l = cfg.generators;
    let bound = l - 2;
    let draws = cfg.samples.min(4);
    let mut inputs = Vec::new();
    for _ in 0..draws {
        let y = random::soul(rng, l, bound, Parity::Even);
        let xi = random::odd(rng, l, bound);
        for &n in &cfg.n_range {
            inputs.push((n as i64, y.clone(), xi.clone()));
        }
    }
    let order = cfg.flow_order;
    let results = cfg.exec.map(&inputs, |(n, y, xi)| {
        let named = if displayed { displayed_flows(*n, order, y, xi, 3) } else { flow_vs_group(*n, y, xi, order) };
        let ops = || json!({ "n": n, "y": sn(y), "xi": sn(xi), "order": order });
        match named {
            Ok(list) => match list.into_iter().find(|(_, ok)| !ok) {
                None => Ok(()),
                Some((name, _)) => fail(&name, ops()),
            },
            Err(e) => fail(&format!("flow computable: {e}"), ops()),
        }
    });
    let failures = results.iter().filter(|r| r.is_err()).count();
    let first = results.into_iter().find_map(Result::err);
    verdict(
        failures == 0,
        format!("{} parameter draws over {} values of n, {failures} failures", draws, cfg.n_range.len()),
        first,
    )
}

fn hom_outcome(reports: Vec<HomReport>) -> Outcome {
    let pairs: usize = reports.iter().map(|r| r.pairs).sum();
    let discrepancies: usize = reports.iter().map(|r| r.discrepancies.len()).sum();
    let names: Vec<&str> = reports.iter().map(|r| r.name.as_str()).collect();
    let first = reports.iter().find(|r| !r.passed()).map(|r| serde_json::to_value(r).expect("serializable"));
    verdict(first.is_none(), format!("{}: {pairs} pairs, {discrepancies} discrepancies", names.join(", ")), first)
}

fn matrix_jacobi(xs: &[crate::matrix::BlockMatrix; 3]) -> Verdict {
    let [x, y, w] = xs;
    let ops = || json!(xs.iter().map(|m| m.to_string()).collect::<Vec<_>>());
    let br = |a: &crate::matrix::BlockMatrix, b: &crate::matrix::BlockMatrix| msa_superbracket(a, b).expect("homogeneous");
    let odd = |m: &crate::matrix::BlockMatrix| m.parity() == Some(Parity::Odd);
    let sign = |a: &crate::matrix::BlockMatrix, b: &crate::matrix::BlockMatrix| {
        if odd(a) && odd(b) {
            GaussianRational::from(-1)
        } else {
            GaussianRational::from(1)
        }
    };
    // (−1)^{|x||w|}[x,[y,w]] + (−1)^{|y||x|}[y,[w,x]] + (−1)^{|w||y|}[w,[x,y]] = 0
    let total = br(x, &br(y, w))
        .scale(&sign(x, w))
        .add(&br(y, &br(w, x)).scale(&sign(y, x)))
        .add(&br(w, &br(x, y)).scale(&sign(w, y)));
    if !total.is_zero() {
        return fail("super-Jacobi", ops());
    }
    if !num_traits::Zero::is_zero(&br(x, y).supertrace()) {
        return fail("str([X, Y]) = 0", ops());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_shift_example_holds() {
        assert!(odd_shift_example(4).is_ok());
    }

    #[test]
    fn kernel_elements() {
        let l = 4;
        let alpha = GroupElement::from_ints(l, [2, 1, 1, 1, 3]);
        assert!(kernel(&[-1, 0, 1, 2], &alpha, &GroupElement::identity(l)).is_ok());
    }
}
