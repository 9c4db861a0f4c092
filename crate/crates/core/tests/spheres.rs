use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use supersphere::random;
use supersphere::spheres::{group_action, AutomorphismParams, SphereAutomorphism};

const L: usize = 5;

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed ^ salt)
}

#[test]
fn build_validate_round_trip() {
    let mut r = rng(1);
    for n in -3..=3 {
        for _ in 0..4 {
            let p = random::params(&mut r, n, L);
            let t = p.build().unwrap();
            let back = AutomorphismParams::validate(&t.southern, n).unwrap();
            assert_eq!(back.build().unwrap(), t, "n={n} params={p}");
        }
    }
}

#[test]
fn closure_under_composition() {
    let mut r = rng(2);
    for n in -3..=3 {
        for _ in 0..3 {
            let x = random::params(&mut r, n, L).build().unwrap();
            let y = random::params(&mut r, n, L).build().unwrap();
            let (xy, p) = x.compose(&y).unwrap();
            assert_eq!(p.build().unwrap(), xy, "n={n}");
        }
    }
}

#[test]
fn inverse_is_in_family() {
    let mut r = rng(3);
    for n in -2..=2 {
        let x = random::params(&mut r, n, L).build().unwrap();
        let inv = x.inverse().unwrap();
        let (id, _) = x.compose(&inv).unwrap();
        assert_eq!(id, SphereAutomorphism::identity(n, L), "n={n}");
    }
}

#[test]
fn northern_chart_and_poles() {
    let mut r = rng(4);
    for n in -3..=3 {
        for _ in 0..3 {
            let x = random::params(&mut r, n, L).build().unwrap();
            let report = x.to_north().unwrap();
            assert!(report.mismatches.is_empty(), "n={n} mismatches={:?}", report.mismatches);
            assert!(report.northern.is_superconformal());
            let poles = x.pole_report().unwrap();
            assert!(poles.ok(), "n={n} {poles:?}");
        }
    }
}

#[test]
fn group_action_is_a_homomorphism() {
    let mut r = rng(5);
    for n in -3..=3 {
        let a = random::group_element(&mut r, L);
        let b = random::group_element(&mut r, L);
        let lhs = group_action(n, &a.mul(&b)).unwrap();
        let (rhs, _) = group_action(n, &a).unwrap().compose(&group_action(n, &b).unwrap()).unwrap();
        assert_eq!(lhs, rhs, "n={n}");
    }
}
