//! The joint system for `{aek, afh, bdk} bfg cdh (ceg)^(m-3)`.

use super::basis::order_basis;
use super::relation::derive_relation;
use super::standard::{segments_word, StandardMonomial, AEK, AFH, BDK, BFG, CDH, CEG};
use crate::algebra::{quantum_determinant, NCPoly};
use crate::qfield::linalg::determinant;
use crate::qfield::parse_rational;
use crate::{Error, RationalFunction, Result};

fn segs(parts: &[(usize, usize)]) -> Vec<usize> {
    parts.iter().flat_map(|&(s, k)| std::iter::repeat(s).take(k)).collect()
}

fn sm(parts: &[(usize, usize)]) -> StandardMonomial {
    parts.iter().fold(StandardMonomial::one(), |acc, &(s, k)| acc.times(&StandardMonomial::seg(s, k as u32)))
}

pub fn triple_columns(m: usize) -> [StandardMonomial; 3] {
    [AEK, AFH, BDK].map(|h| sm(&[(h, 1), (BFG, 1), (CDH, 1), (CEG, m - 3)]))
}

/// Rows: `D_q bfg cdh (ceg)^(m-3)`, then the relations from `afh bfg (ceg)^(m-2)`
/// against `(aek)^(m-1) afh` and `bdk cdh (ceg)^(m-2)` against `(aek)^(m-1) bdk`,
/// restricted to the three columns.
pub fn triple_matrix(m: usize) -> Result<Vec<Vec<RationalFunction>>> {
    if m < 3 {
        return Err(Error::Inconsistent(format!("the triple system needs order at least 3, got {m}")));
    }
    let cols = triple_columns(m);
    let basis = order_basis(m)?;
    let p = quantum_determinant(3).mul(&NCPoly::from_word(&segments_word(&segs(&[(BFG, 1), (CDH, 1), (CEG, m - 3)]))));
    let dq = basis.poly_coords(&p)?;
    let first = cols
        .iter()
        .map(|c| {
            let i = basis.position(c).expect("basis column");
            dq.get(&i).map_or_else(RationalFunction::zero, RationalFunction::from)
        })
        .collect();
    let r1 = derive_relation(&segs(&[(AFH, 1), (BFG, 1), (CEG, m - 2)]), &sm(&[(AEK, m - 1), (AFH, 1)]))?;
    let r2 = derive_relation(&segs(&[(BDK, 1), (CDH, 1), (CEG, m - 2)]), &sm(&[(AEK, m - 1), (BDK, 1)]))?;
    Ok(vec![first, cols.iter().map(|c| r1.coeff(c)).collect(), cols.iter().map(|c| r2.coeff(c)).collect()])
}

pub fn triple_determinant(m: usize) -> Result<RationalFunction> {
    determinant(&triple_matrix(m)?)
}

/// Closed form of the eliminated system's determinant.
pub fn triple_determinant_closed(m: usize) -> RationalFunction {
    let m = m as i64;
    parse_rational(&format!(
        "(q^{a}-1)^2*(q^4-q^{b})*(1-q^{c})/(q^2*(q^2-1)^4)",
        a = -2 * (m - 1),
        b = 2 * m,
        c = 2 * (m + 2)
    ))
    .expect("well-formed closed form")
}
