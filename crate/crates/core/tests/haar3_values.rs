use std::sync::OnceLock;

use qhaar::algebra::quantum_determinant;
use qhaar::haar3::recursive::{family_member, recursion_coeff, recursion_prefactor, recursion_relation};
use qhaar::haar3::source::{source_closed_form, source_columns, source_reference_entries};
use qhaar::haar3::standard::{StandardMonomial, AEK, AFH, BDK, BFG, CDH, CEG, SEGMENT_PERMS};
use qhaar::haar3::{
    compute_order, derive_relation, dq_identity, order1_haar, order_basis, recursive_bfg_ceg, recursive_cdh_ceg,
    source_matrix, HaarTable,
};
use qhaar::qfield::parse_rational;
use qhaar::RationalFunction;

fn table() -> &'static HaarTable {
    static T: OnceLock<HaarTable> = OnceLock::new();
    T.get_or_init(|| {
        let mut t = HaarTable::new();
        for m in 1..=4 {
            compute_order(m, &mut t).unwrap();
        }
        t
    })
}

fn r(s: &str) -> RationalFunction {
    parse_rational(s).unwrap()
}

fn s(text: &str) -> StandardMonomial {
    text.parse().unwrap()
}

#[test]
fn order_one_values() {
    for (k, perm) in SEGMENT_PERMS.iter().enumerate() {
        assert_eq!(table().get(&StandardMonomial::seg(k, 1)), Some(&order1_haar(3, perm)));
    }
    assert_eq!(table().value_of(&s("aek")).unwrap(), r("1/((1+q^2)*(1+q^2+q^4))"));
    assert_eq!(table().value_of(&s("ceg")).unwrap(), r("-q^3/((1+q^2)*(1+q^2+q^4))"));
}

#[test]
fn determinant_powers_have_unit_value() {
    for m in 1..=4u32 {
        let p = quantum_determinant(3).pow(m);
        assert!(table().value_of_poly(&p).unwrap().is_one(), "order {m}");
    }
}

#[test]
fn closed_forms_at_order_one() {
    let closed = source_closed_form(1);
    for (k, seg) in [(0, AEK), (1, AFH), (2, BDK), (4, BFG), (5, CDH), (6, CEG)] {
        assert_eq!(table().value_of(&StandardMonomial::seg(seg, 1)).unwrap(), closed[k], "column {k}");
    }
    assert_eq!(closed[6], r("-q^3/((1+q^2)*(1+q^2+q^4))"));
}

#[test]
fn closed_forms_match_table() {
    for m in 2..=4 {
        let closed = source_closed_form(m);
        for (col, want) in source_columns(m).iter().zip(&closed) {
            assert_eq!(table().value_of(col).unwrap(), *want, "h({col})");
        }
    }
}

#[test]
fn seven_unknown_system() {
    for m in 2..=4 {
        let sm = source_matrix(m, table()).unwrap();
        assert!(!sm.determinant.is_zero());
        assert_eq!(sm.solution.to_vec(), source_closed_form(m).to_vec(), "order {m}");
    }
}

#[test]
fn seven_unknown_system_entries() {
    for m in 2..=3 {
        let sm = source_matrix(m, table()).unwrap();
        let reference = source_reference_entries(m);
        assert_eq!(sm.matrix.len(), 7);
        for (row, want) in sm.matrix.iter().zip(&reference) {
            assert_eq!(row[..7], want[..7], "order {m}");
        }
    }
}

#[test]
fn recursion_is_the_derived_relation() {
    for m in 2..=4usize {
        for i in 2..=m {
            for (bfg, seg, partner) in [(false, CDH, AFH), (true, BFG, BDK)] {
                let mut eq = vec![seg; i - 1];
                eq.extend(vec![CEG; m - i + 1]);
                let cmp = StandardMonomial::seg(AEK, m as u32 - 1).times(&StandardMonomial::seg(partner, 1));
                let rel = derive_relation(&eq, &cmp).unwrap();
                let rec = recursion_relation(i, m);
                assert_eq!(rel.terms.len(), i + 1);
                for (j, c) in rec.iter().enumerate() {
                    assert_eq!(rel.coeff(&family_member(bfg, j, m)), *c, "m = {m}, i = {i}, j = {j}");
                }
            }
        }
    }
}

#[test]
fn recursion_reproduces_table_values() {
    for m in 2..=4 {
        for i in 2..=m {
            assert_eq!(Some(&recursive_cdh_ceg(i, m, table()).unwrap()), table().get(&family_member(false, i, m)));
            assert_eq!(Some(&recursive_bfg_ceg(i, m, table()).unwrap()), table().get(&family_member(true, i, m)));
        }
    }
    assert!(recursive_cdh_ceg(1, 3, table()).is_err());
}

#[test]
fn recursion_coefficients() {
    for m in 2..=6usize {
        assert!(recursion_prefactor(m, m).is_one());
        let want = r(&format!("{m}/q + {k}*q + {k}*q^3", k = m - 1));
        assert_eq!(recursion_relation(m, m)[m - 1], want, "m = {m}");
        for i in 2..=m {
            let t = (m - i + 1) as i32;
            let pre = r(&format!("q^2*(q^{t}-q^{n})^2/(1-q^2)^2", n = -t));
            assert_eq!(recursion_prefactor(i, m), pre);
        }
    }
    assert_eq!(recursion_coeff(2, 2, 2), r("q^-2"));
    assert_eq!(recursion_relation(2, 2)[0], r("q^-2"));
}

#[test]
fn bfg_and_cdh_families_agree() {
    for m in 1..=4 {
        for i in 1..=m {
            assert_eq!(
                table().get(&family_member(true, i, m)),
                table().get(&family_member(false, i, m)),
                "m = {m}, i = {i}"
            );
        }
    }
}

#[test]
fn invariance_relations_vanish_on_the_table() {
    for (m, step) in [(2usize, 1usize), (3, 3), (4, 17)] {
        let basis = order_basis(m).unwrap();
        for eq in basis.basis.iter().step_by(step) {
            for cmp in basis.basis.iter().step_by(step) {
                let rel = derive_relation(&eq.to_word_segments(), cmp).unwrap();
                assert!(rel.residual(table()).unwrap().is_zero(), "{rel}");
            }
        }
    }
}

#[test]
fn determinant_insertion_relations_vanish_on_the_table() {
    let segs = [AEK, AFH, BDK, BFG, CDH, CEG];
    for &x in &segs {
        for &y in &segs {
            for (l, rr) in [(vec![x], vec![y]), (vec![x, y], vec![]), (vec![], vec![x, y]), (vec![x, y], vec![CEG])] {
                let rel = dq_identity(&l, &rr, table()).unwrap();
                assert!(rel.residual(table()).unwrap().is_zero(), "{rel}");
            }
        }
    }
}

#[test]
fn mixed_values() {
    assert_eq!(
        table().value_of(&s("ceg^2")).unwrap(),
        r("q^6*(q^2-1)^2*(q^4-1)/((q^6-1)^2*(q^8-1))")
    );
    assert_eq!(table().value_of(&s("aek ceg")).unwrap(), source_closed_form(2)[0]);
}
