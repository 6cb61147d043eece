use num_rational::BigRational;
use proptest::prelude::*;

use qhaar::algebra::{normal_form, permutations, Gen, Word};
use qhaar::haar3::HaarStore;
use qhaar::qfield::parse_rational;
use qhaar::wg::{classical_limit, example, examples, haar_star, phi_twist_pair, star_expand, wg_example, StarWord};
use qhaar::Error;

fn nf(s: &str, n: usize) -> qhaar::algebra::NCPoly {
    normal_form(&Word::parse(s, n).unwrap())
}

#[test]
fn printed_examples() {
    let mut st = HaarStore::new();
    for e in examples() {
        let v = wg_example(e.id, e.variant, &mut st).unwrap();
        assert_eq!(v, e.expected_value(), "example {}.{}", e.id, e.variant);
        let want = BigRational::new(e.classical.0.into(), e.classical.1.into());
        assert_eq!(classical_limit(&v).unwrap(), want);
    }
    assert_eq!(examples().len(), 10);
    assert!(example(4, 1).is_err());
}

#[test]
fn classical_limits_by_family() {
    let limits: Vec<(usize, String)> =
        examples().iter().map(|e| (e.id, format!("{}/{}", e.classical.0, e.classical.1))).collect();
    for (id, want) in [(1, "1/8"), (2, "-1/24"), (3, "1/6")] {
        assert!(limits.iter().filter(|(i, _)| *i == id).all(|(_, l)| l == want));
    }
}

#[test]
fn starred_letters_expand_through_the_antipode() {
    let a_star = star_expand(&StarWord::parse("a*", 3).unwrap()).unwrap();
    let q = parse_rational("q").unwrap();
    let want = nf("e k", 3).to_rational().sub(&nf("f h", 3).to_rational().scale(&q));
    assert_eq!(a_star.to_rational(), want);
    assert_eq!(star_expand(&StarWord::parse("x11*", 2).unwrap()).unwrap(), nf("x22", 2));
    assert_eq!(star_expand(&StarWord::parse("a e", 3).unwrap()).unwrap(), nf("a e", 3));
    let w = StarWord::parse_auto("x12* x21").unwrap();
    assert_eq!(w.n, 2);
    assert_eq!(w.letters, vec![(Gen::new(0, 1), true), (Gen::new(1, 0), false)]);
}

#[test]
fn star_parse_errors() {
    assert!(matches!(StarWord::parse("a z", 3), Err(Error::Parse { pos: 2, .. })));
    assert!(matches!(StarWord::parse("x13", 2), Err(Error::Parse { pos: 0, .. })));
    assert!(matches!(StarWord::parse("a", 4), Err(Error::UnsupportedN(4))));
}

#[test]
fn rows_against_their_stars_sum_to_one() {
    let mut st = HaarStore::new();
    for n in 2..=3usize {
        for i in 1..=n {
            let mut total = qhaar::RationalFunction::zero();
            for j in 1..=n {
                let w = StarWord::parse(&format!("x{i}{j} x{i}{j}*"), n).unwrap();
                total += &haar_star(&w, &mut st).unwrap();
            }
            assert!(total.is_one(), "n = {n}, row {i}: {total}");
        }
    }
}

fn split_pair() -> impl Strategy<Value = (Word, Word)> {
    (prop::collection::vec(0..6usize, 1..=2), any::<prop::sample::Index>())
        .prop_flat_map(|(ps, cut)| {
            let perms = permutations(3);
            let gens: Vec<Gen> = ps
                .iter()
                .flat_map(|&p| (0..3).map(|i| Gen::new(i as u8, perms[p][i] as u8)).collect::<Vec<_>>())
                .collect();
            (Just(gens).prop_shuffle(), Just(cut))
        })
        .prop_map(|(mut gens, cut)| {
            let y = gens.split_off(cut.index(gens.len() + 1));
            (Word::new(3, gens), Word::new(3, y))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn modular_twist(pair in split_pair()) {
        let mut st = HaarStore::new().with_max_order(2);
        let (l, r) = phi_twist_pair(&pair.0, &pair.1, &mut st).unwrap();
        prop_assert_eq!(l, r);
    }
}
