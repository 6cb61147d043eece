use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qhaar::haar3::source::source_closed_form;
use qhaar::haar3::{compute_order, HaarTable};
use qhaar::oracle::{build_system, build_system_capped, rank_report};
use qhaar::Error;

fn table(m: usize) -> HaarTable {
    let mut t = HaarTable::new();
    for k in 1..=m {
        compute_order(k, &mut t).unwrap();
    }
    t
}

#[test]
fn exact_solutions_match_the_schedule() {
    let t = table(2);
    for m in 1..=2 {
        let sys = build_system(m).unwrap();
        let sol = sys.solve().unwrap();
        assert_eq!(sol.rank, sys.unknowns.len());
        for (s, v) in &sol.values {
            assert_eq!(t.get(s), Some(v), "h({s})");
        }
        assert!(sys.violations(&sol.values).is_empty());
    }
}

#[test]
fn system_shape() {
    let sys = build_system(2).unwrap();
    assert_eq!(sys.unknowns.len(), 21);
    assert_eq!(sys.blocks.len(), 21);
    assert_eq!(sys.rows[0].label, "h(D_q^2) = 1");
    let sol = sys.solve().unwrap();
    let report = rank_report(&sys, &sol);
    assert!(report.starts_with("order 2: 21 unknowns"), "{report}");
    assert_eq!(sol.needed.len(), 1);
    assert_eq!(sol.needed[0].to_string(), "ceg^2");
    assert!(matches!(build_system_capped(4, 3), Err(Error::OrderTooLarge { order: 4, max: 3 })));
    assert!(build_system(0).is_err());
}

#[test]
fn numeric_solutions_agree_at_random_points() {
    let sys = build_system(2).unwrap();
    let exact = sys.solve().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut tried = 0;
    while tried < 5 {
        let (n, d): (i64, i64) = (rng.gen_range(-20..=20), rng.gen_range(1..=20));
        if n == 0 || n.abs() == d {
            continue;
        }
        let q0 = BigRational::new(n.into(), d.into());
        let num = sys.solve_at(&q0).unwrap();
        for (s, v) in &num.values {
            assert_eq!(exact.values[s].eval_at(&q0).unwrap(), *v, "h({s}) at q = {q0}");
        }
        tried += 1;
    }
}

#[test]
fn poles_are_reported() {
    let sys = build_system(1).unwrap();
    let zero = BigRational::from_integer(0.into());
    let out = sys.solve_at(&zero);
    assert!(matches!(out, Err(Error::Pole(_))), "{out:?}");
}

#[test]
fn values_at_the_top_family() {
    let sol = build_system(2).unwrap().solve().unwrap();
    let closed = source_closed_form(2);
    assert_eq!(sol.values[&"ceg^2".parse().unwrap()], closed[6]);
    assert_eq!(sol.values[&"aek ceg".parse().unwrap()], closed[0]);
}

#[test]
fn tsv_dump() {
    let sys = build_system(1).unwrap();
    let mut buf = Vec::new();
    sys.write_tsv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.lines().all(|l| l.split('\t').count() == 3));
    assert!(text.lines().any(|l| l.ends_with("\trhs\t1")));
}
