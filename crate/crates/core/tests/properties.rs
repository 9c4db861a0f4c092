use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use supersphere::grassmann::{Parity, Supernumber};
use supersphere::matrix::msa_superbracket;
use supersphere::ns::{bracket_symbols, NSBasisSymbol};
use supersphere::random;
use supersphere::serial::{supernumber_from_json, supernumber_to_json};
use supersphere::text::parse_supernumber;

const L: usize = 6;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn symbol() -> impl Strategy<Value = NSBasisSymbol> {
    prop_oneof![
        (-4i64..=4).prop_map(NSBasisSymbol::L),
        (-4i64..=4).prop_map(NSBasisSymbol::J),
        (-4i64..=3).prop_map(|k| NSBasisSymbol::GPlus(2 * k + 1)),
        (-4i64..=3).prop_map(|k| NSBasisSymbol::GMinus(2 * k + 1)),
        Just(NSBasisSymbol::Central),
    ]
}

proptest! {
    #[test]
    fn distributive(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random::supernumber(&mut r, L, 6, false);
        let y = random::supernumber(&mut r, L, 6, false);
        let w = random::supernumber(&mut r, L, 6, false);
        prop_assert_eq!(&x * &(&y + &w), &(&x * &y) + &(&x * &w));
    }

    #[test]
    fn text_and_json_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random::supernumber(&mut r, L, 6, false);
        prop_assert_eq!(parse_supernumber(&x.to_string(), L).unwrap(), x.clone());
        prop_assert_eq!(supernumber_from_json(&supernumber_to_json(&x), L).unwrap(), x);
    }

    #[test]
    fn inverse_of_product(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random::supernumber(&mut r, L, 6, true);
        let y = random::supernumber(&mut r, L, 6, true);
        let lhs = (&x * &y).inv().unwrap();
        let rhs = &y.inv().unwrap() * &x.inv().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn odd_elements_anticommute(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random::homogeneous(&mut r, L, Parity::Odd, 4);
        let b = random::homogeneous(&mut r, L, Parity::Odd, 4);
        prop_assert!((&(&a * &b) + &(&b * &a)).is_zero());
        prop_assert!((&a * &a).is_zero());
    }

    #[test]
    fn ns_bracket_is_supersymmetric(a in symbol(), b in symbol()) {
        let ab = bracket_symbols(a, b);
        let ba = bracket_symbols(b, a);
        let both_odd = a.parity() == Parity::Odd && b.parity() == Parity::Odd;
        if both_odd {
            prop_assert_eq!(ab, ba);
        } else {
            prop_assert_eq!(ab, -&ba);
        }
    }

    #[test]
    fn matrix_bracket_is_supersymmetric(seed in any::<u64>(), px in any::<bool>(), py in any::<bool>()) {
        let mut r = rng(seed);
        let parity = |odd: bool| if odd { Parity::Odd } else { Parity::Even };
        let x = random::block_matrix(&mut r, parity(px));
        let y = random::block_matrix(&mut r, parity(py));
        let xy = msa_superbracket(&x, &y).unwrap();
        let yx = msa_superbracket(&y, &x).unwrap();
        if px && py {
            prop_assert_eq!(xy, yx);
        } else {
            prop_assert!(xy.add(&yx).is_zero());
        }
    }
}

#[test]
fn exp_nilpotent_is_a_homomorphism() {
    let mut r = rng(7);
    for _ in 0..50 {
        let s = random::soul(&mut r, L, L, Parity::Even);
        let t = random::soul(&mut r, L, L, Parity::Even);
        let e = |x: &Supernumber| Supernumber::exp_nilpotent(x).unwrap();
        assert_eq!(e(&(&s + &t)), &e(&s) * &e(&t));
    }
}
