//! Brute-force Haar solver: the complete right-invariance system of one order.
//!
//! For an equation basis `s`, `(id (x) h) Delta(s) = h(s) D_q^m`. Writing both
//! sides in the order-`m` basis and matching the coefficient of every basis
//! element gives one homogeneous row per comparing basis. The expansion here is
//! the raw index sum of `Delta`, independent of the reduced-tensor machinery.

use std::collections::BTreeMap;
use std::io::Write;

use num_rational::BigRational;
use rayon::prelude::*;

use crate::algebra::{normal_form, quantum_determinant};
use crate::coalgebra::{delta_pruned, Side};
use crate::haar3::{order_basis, StandardMonomial};
use crate::qfield::linalg::{Echelon, Field, RowOutcome, SparseRow};
use crate::{Error, IntPoly, RationalFunction, Result};

pub const DEFAULT_MAX_ORDER: usize = 3;

/// One row `sum coeffs[i] * h(unknowns[i]) = rhs`, with integer Laurent entries.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleRow {
    pub label: String,
    pub coeffs: BTreeMap<usize, IntPoly>,
    pub rhs: IntPoly,
}

#[derive(Clone, Debug)]
pub struct System {
    pub order: usize,
    pub unknowns: Vec<StandardMonomial>,
    /// Normalization row first, then one block per equation basis.
    pub rows: Vec<OracleRow>,
    /// Index range of `rows` contributed by each equation basis, in basis order.
    pub blocks: Vec<(StandardMonomial, std::ops::Range<usize>)>,
}

#[derive(Clone, Debug)]
pub struct Solution<F> {
    pub order: usize,
    pub values: BTreeMap<StandardMonomial, F>,
    pub rank: usize,
    /// Equation bases whose rows raised the rank, in the order they were tried.
    pub needed: Vec<StandardMonomial>,
    pub rows_used: usize,
}

/// Rows from one equation basis, one per comparing basis (trivial rows dropped).
pub fn equation_rows(eq: &StandardMonomial) -> Result<Vec<OracleRow>> {
    let m = eq.order();
    let basis = order_basis(m)?;
    let k = basis.len();
    let l = basis
        .position(eq)
        .ok_or_else(|| Error::UnknownValue(format!("{eq} is not a basis monomial")))?;
    let dq = basis.poly_coords(&quantum_determinant(3).pow(m as u32))?;
    // c[j][i]: coefficient of h(s_i) in the s_j component.
    let mut c: Vec<BTreeMap<usize, IntPoly>> = vec![BTreeMap::new(); k];
    for t in delta_pruned(&eq.to_word(), Side::Right)?.terms {
        let right = basis.poly_coords(&normal_form(&t.right))?;
        if right.is_empty() {
            continue;
        }
        for (j, lc) in basis.poly_coords(&normal_form(&t.left))? {
            let f = &lc * &t.coeff;
            for (i, rc) in &right {
                *c[j].entry(*i).or_insert_with(IntPoly::zero) += &(&f * rc);
            }
        }
    }
    let mut rows = Vec::new();
    for (j, mut coeffs) in c.into_iter().enumerate() {
        if let Some(b) = dq.get(&j) {
            *coeffs.entry(l).or_insert_with(IntPoly::zero) -= b;
        }
        coeffs.retain(|_, v| !v.is_zero());
        if coeffs.is_empty() {
            continue;
        }
        rows.push(OracleRow { label: format!("eq {eq} / cmp {}", basis.basis[j]), coeffs, rhs: IntPoly::zero() });
    }
    Ok(rows)
}

/// `h(D_q^m) = 1` expanded over the basis.
pub fn normalization_row(m: usize) -> Result<OracleRow> {
    let basis = order_basis(m)?;
    let coeffs = basis.poly_coords(&quantum_determinant(3).pow(m as u32))?;
    Ok(OracleRow { label: format!("h(D_q^{m}) = 1"), coeffs, rhs: IntPoly::one() })
}

/// Every equation basis against every comparing basis, plus the normalization.
pub fn build_system(m: usize) -> Result<System> {
    build_system_capped(m, DEFAULT_MAX_ORDER)
}

pub fn build_system_capped(m: usize, cap: usize) -> Result<System> {
    if m == 0 || m > cap {
        return Err(Error::OrderTooLarge { order: m, max: cap });
    }
    let basis = order_basis(m)?;
    let blocks: Vec<Vec<OracleRow>> = basis.basis.par_iter().map(equation_rows).collect::<Result<_>>()?;
    let mut rows = vec![normalization_row(m)?];
    let mut ranges = Vec::new();
    for (s, block) in basis.basis.iter().zip(blocks) {
        let start = rows.len();
        rows.extend(block);
        ranges.push((*s, start..rows.len()));
    }
    Ok(System { order: m, unknowns: basis.basis.clone(), rows, blocks: ranges })
}

impl System {
    /// Exact solve over `Q(q)`.
    pub fn solve(&self) -> Result<Solution<RationalFunction>> {
        self.solve_with(|p| RationalFunction::from(p))
    }

    /// Instantiate at `q = q0`, then solve over `Q`.
    pub fn solve_at(&self, q0: &BigRational) -> Result<Solution<BigRational>> {
        let bad = std::cell::Cell::new(false);
        let out = self.solve_with(|p| {
            p.eval(q0).unwrap_or_else(|| {
                bad.set(true);
                BigRational::from_integer(0.into())
            })
        });
        if bad.get() {
            return Err(Error::Pole(q0.to_string()));
        }
        out
    }

    fn solve_with<F: Field>(&self, conv: impl Fn(&IntPoly) -> F) -> Result<Solution<F>> {
        let k = self.unknowns.len();
        let mut ech: Echelon<F> = Echelon::new();
        let row = |r: &OracleRow| -> (SparseRow<F>, F) {
            let coeffs = r.coeffs.iter().map(|(i, c)| (*i, conv(c))).filter(|(_, c)| !c.is_zero()).collect();
            (coeffs, conv(&r.rhs))
        };
        let push = |ech: &mut Echelon<F>, r: &OracleRow| -> Result<bool> {
            let (coeffs, rhs) = row(r);
            match ech.push(coeffs, rhs)? {
                RowOutcome::Pivot(_) => Ok(true),
                RowOutcome::Redundant => Ok(false),
                RowOutcome::Inconsistent => Err(Error::Inconsistent(r.label.clone())),
            }
        };
        push(&mut ech, &self.rows[0])?;
        let mut needed = Vec::new();
        let mut rows_used = 1;
        for (s, range) in &self.blocks {
            if ech.rank() == k {
                break;
            }
            let mut raised = false;
            for r in &self.rows[range.clone()] {
                raised |= push(&mut ech, r)?;
                rows_used += 1;
            }
            if raised {
                needed.push(*s);
            }
        }
        let rank = ech.rank();
        let sol = ech.solution(k)?;
        Ok(Solution {
            order: self.order,
            values: self.unknowns.iter().copied().zip(sol).collect(),
            rank,
            needed,
            rows_used,
        })
    }

    /// Rows not satisfied by `values`, as labels.
    pub fn violations(&self, values: &BTreeMap<StandardMonomial, RationalFunction>) -> Vec<String> {
        let vals: Vec<Option<&RationalFunction>> = self.unknowns.iter().map(|s| values.get(s)).collect();
        self.rows
            .par_iter()
            .filter(|r| {
                let mut acc = -&RationalFunction::from(&r.rhs);
                for (i, c) in &r.coeffs {
                    match vals[*i] {
                        Some(v) => acc += &(v * &RationalFunction::from(c)),
                        None => return true,
                    }
                }
                !acc.is_zero()
            })
            .map(|r| r.label.clone())
            .collect()
    }

    /// Tab-separated dump: row label, column label, coefficient.
    pub fn write_tsv(&self, mut out: impl Write) -> Result<()> {
        for r in &self.rows {
            for (i, c) in &r.coeffs {
                writeln!(out, "{}\t{}\t{}", r.label, self.unknowns[*i], c)?;
            }
            if !r.rhs.is_zero() {
                writeln!(out, "{}\trhs\t{}", r.label, r.rhs)?;
            }
        }
        Ok(())
    }
}

/// Rank report for the order, as printable lines.
pub fn rank_report<F>(sys: &System, sol: &Solution<F>) -> String {
    let needed: Vec<String> = sol.needed.iter().map(|s| s.to_string()).collect();
    format!(
        "order {}: {} unknowns, {} rows assembled, {} used, rank {}; equation bases needed: {}",
        sys.order,
        sys.unknowns.len(),
        sys.rows.len(),
        sol.rows_used,
        sol.rank,
        needed.join(", ")
    )
}
