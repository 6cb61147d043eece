//! Closed recursion for `h((cdh)^i (ceg)^(m-i))` and its `bfg` twin.

use crate::error::{Error, Result};
use crate::qfield::{binomial, IntPoly, RationalFunction};

use super::standard::{StandardMonomial, BFG, CDH, CEG};
use super::table::HaarTable;

fn q(e: i64) -> RationalFunction {
    RationalFunction::q_pow(e as i32)
}

/// `q - q^-1`.
fn qmq() -> RationalFunction {
    RationalFunction::from(IntPoly::from_terms([(1, 1), (-1, -1)]))
}

fn powi(x: &RationalFunction, e: i64) -> RationalFunction {
    x.pow(e as i32).expect("q - 1/q is invertible")
}

/// Coefficient of the new value: `q^2 (q^t - q^-t)^2 / (1 - q^2)^2`, `t = m - i + 1`.
pub fn recursion_prefactor(i: usize, m: usize) -> RationalFunction {
    let t = (m - i + 1) as i64;
    let d = &q(t) - &q(-t);
    let one_minus = &RationalFunction::one() - &q(2);
    (&(&q(2) * &(&d * &d)))
        .checked_div(&(&one_minus * &one_minus))
        .unwrap()
}

/// `c_k` for `1 <= k <= i`.
pub fn recursion_coeff(k: usize, i: usize, m: usize) -> RationalFunction {
    let t = (m - i + 1) as i64;
    let k = k as i64;
    let first = &(&powi(&-&qmq(), k - 2) * &RationalFunction::from_int(binomial(i as i64, k)))
        * &q(-2 * t);
    let second = &(&(&powi(&qmq(), k - 2) * &q(2 * k))
        * &RationalFunction::from_int(binomial(i as i64 - 1, k)))
        * &q(2 * t);
    &first + &second
}

/// The recursion written as `sum_j coeffs[j] * h_j = 0`, `h_j` the value at
/// `j` copies of the varying segment; `coeffs` runs over `j = 0..=i`.
pub fn recursion_relation(i: usize, m: usize) -> Vec<RationalFunction> {
    let mut out = vec![RationalFunction::zero(); i + 1];
    out[i] = recursion_prefactor(i, m);
    let lead = &q(1) * &(&q(2) - &RationalFunction::one()).recip().unwrap();
    out[i - 1] = lead;
    for k in 1..=i {
        out[i - k] += &recursion_coeff(k, i, m);
    }
    out
}

fn family(seg: usize, j: usize, m: usize) -> StandardMonomial {
    StandardMonomial::seg(seg, j as u32).times(&StandardMonomial::seg(CEG, (m - j) as u32))
}

fn recurse(seg: usize, i: usize, m: usize, known: &HaarTable) -> Result<RationalFunction> {
    if i < 2 || i > m {
        return Err(Error::Schedule {
            step: "recursion".into(),
            msg: format!("index {i} outside 2..={m}"),
        });
    }
    let c = recursion_relation(i, m);
    let mut acc = RationalFunction::zero();
    for (j, cj) in c.iter().enumerate().take(i) {
        let s = family(seg, j, m);
        let v = known.get(&s).ok_or_else(|| Error::UnknownValue(s.to_string()))?;
        acc -= &(cj * v);
    }
    acc.checked_div(&c[i])
}

/// `h((cdh)^i (ceg)^(m-i))` from the lower members of the family.
pub fn recursive_cdh_ceg(i: usize, m: usize, known: &HaarTable) -> Result<RationalFunction> {
    recurse(CDH, i, m, known)
}

/// `h((bfg)^i (ceg)^(m-i))` from the lower members of its family.
pub fn recursive_bfg_ceg(i: usize, m: usize, known: &HaarTable) -> Result<RationalFunction> {
    recurse(BFG, i, m, known)
}

/// Family member with `j` copies of `cdh` (or `bfg` when `bfg` is set).
pub fn family_member(bfg: bool, j: usize, m: usize) -> StandardMonomial {
    family(if bfg { BFG } else { CDH }, j, m)
}
