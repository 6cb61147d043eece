//! Exact linear algebra over `Q(q)` and `Q`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::RationalFunction;

/// Minimal field interface for elimination.
pub trait Field: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Result<Self>;
    /// Size proxy used to pick pivots.
    fn complexity(&self) -> usize;
}

impl Field for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Result<Self> {
        self.checked_div(o)
    }
    fn complexity(&self) -> usize {
        RationalFunction::complexity(self)
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Result<Self> {
        if Zero::is_zero(o) {
            return Err(Error::DivisionByZero);
        }
        Ok(self / o)
    }
    fn complexity(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }
}

pub type SparseRow<F> = BTreeMap<usize, F>;

/// What happened to a row pushed into an [`Echelon`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowOutcome {
    /// The row raised the rank; pivot column given.
    Pivot(usize),
    /// Reduced to `0 = 0`.
    Redundant,
    /// Reduced to `0 = c` with `c` nonzero.
    Inconsistent,
}

/// Reduced row echelon form built one row at a time (Gauss-Jordan).
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    /// Pivot column -> (row with pivot 1 and no other pivot columns, rhs).
    pivots: BTreeMap<usize, (SparseRow<F>, F)>,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Echelon {
            pivots: BTreeMap::new(),
        }
    }
}

fn axpy<F: Field>(row: &mut SparseRow<F>, f: &F, other: &SparseRow<F>) {
    // row -= f * other
    for (k, v) in other {
        let d = f.mul(v);
        let e = row.entry(*k).or_insert_with(F::zero);
        *e = e.sub(&d);
        if e.is_zero() {
            row.remove(k);
        }
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = &usize> {
        self.pivots.keys()
    }

    /// Reduce a row against the current pivots.
    pub fn reduce(&self, mut row: SparseRow<F>, mut rhs: F) -> (SparseRow<F>, F) {
        row.retain(|_, v| !v.is_zero());
        let cols: Vec<usize> = row.keys().copied().filter(|c| self.pivots.contains_key(c)).collect();
        for c in cols {
            let Some(f) = row.get(&c).cloned() else { continue };
            let (prow, prhs) = &self.pivots[&c];
            axpy(&mut row, &f, prow);
            rhs = rhs.sub(&f.mul(prhs));
        }
        (row, rhs)
    }

    pub fn push(&mut self, row: SparseRow<F>, rhs: F) -> Result<RowOutcome> {
        let (row, rhs) = self.reduce(row, rhs);
        if row.is_empty() {
            return Ok(if rhs.is_zero() {
                RowOutcome::Redundant
            } else {
                RowOutcome::Inconsistent
            });
        }
        let (&col, piv) = row
            .iter()
            .min_by_key(|(c, v)| (v.complexity(), **c))
            .unwrap();
        let inv = F::one().div(piv)?;
        let row: SparseRow<F> = row.iter().map(|(k, v)| (*k, v.mul(&inv))).collect();
        let rhs = rhs.mul(&inv);
        for (prow, prhs) in self.pivots.values_mut() {
            if let Some(f) = prow.get(&col).cloned() {
                axpy(prow, &f, &row);
                *prhs = prhs.sub(&f.mul(&rhs));
            }
        }
        self.pivots.insert(col, (row, rhs));
        Ok(RowOutcome::Pivot(col))
    }

    /// Values of the unknowns once the rank equals `n`.
    pub fn solution(&self, n: usize) -> Result<Vec<F>> {
        if self.rank() < n {
            return Err(Error::Singular {
                rank: self.rank(),
                unknowns: n,
            });
        }
        (0..n)
            .map(|c| {
                let (row, rhs) = &self.pivots[&c];
                if row.len() != 1 {
                    return Err(Error::Singular {
                        rank: self.rank(),
                        unknowns: n,
                    });
                }
                Ok(rhs.clone())
            })
            .collect()
    }

    /// Value of one unknown if the pivots already pin it down.
    pub fn value(&self, col: usize) -> Option<F> {
        self.pivots
            .get(&col)
            .filter(|(row, _)| row.len() == 1)
            .map(|(_, rhs)| rhs.clone())
    }
}

/// Solve a square dense system.
pub fn solve_dense<F: Field>(a: &[Vec<F>], b: &[F]) -> Result<Vec<F>> {
    let n = a.len();
    let mut e = Echelon::new();
    for (row, rhs) in a.iter().zip(b) {
        let sparse: SparseRow<F> = row.iter().cloned().enumerate().filter(|(_, v)| !v.is_zero()).collect();
        if e.push(sparse, rhs.clone())? == RowOutcome::Inconsistent {
            return Err(Error::Inconsistent("square system has no solution".into()));
        }
    }
    e.solution(n)
}

/// Determinant by fraction-carrying elimination.
pub fn determinant<F: Field>(a: &[Vec<F>]) -> Result<F> {
    let n = a.len();
    let mut m: Vec<Vec<F>> = a.to_vec();
    let mut det = F::one();
    for col in 0..n {
        let Some(p) = (col..n)
            .filter(|&r| !m[r][col].is_zero())
            .min_by_key(|&r| m[r][col].complexity())
        else {
            return Ok(F::zero());
        };
        if p != col {
            m.swap(p, col);
            det = F::zero().sub(&det);
        }
        let piv = m[col][col].clone();
        det = det.mul(&piv);
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].div(&piv)?;
            for c in col..n {
                let d = f.mul(&m[col][c]);
                m[r][c] = m[r][c].sub(&d);
            }
        }
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::parse_rational;

    fn rf(s: &str) -> RationalFunction {
        parse_rational(s).unwrap()
    }

    #[test]
    fn solves_small_symbolic_system() {
        let a = vec![vec![rf("1"), rf("q")], vec![rf("q"), rf("1")]];
        let b = vec![rf("1"), rf("0")];
        let x = solve_dense(&a, &b).unwrap();
        assert_eq!(x[0], rf("1/(1-q^2)"));
        assert_eq!(x[1], rf("-q/(1-q^2)"));
        assert_eq!(determinant(&a).unwrap(), rf("1-q^2"));
    }

    #[test]
    fn reports_singular_and_inconsistent() {
        let mut e: Echelon<BigRational> = Echelon::new();
        let one = BigRational::from_integer(1.into());
        let row: SparseRow<_> = [(0, one.clone()), (1, one.clone())].into();
        assert_eq!(e.push(row.clone(), one.clone()).unwrap(), RowOutcome::Pivot(0));
        assert_eq!(e.push(row.clone(), one.clone()).unwrap(), RowOutcome::Redundant);
        assert_eq!(e.push(row, BigRational::from_integer(0.into())).unwrap(), RowOutcome::Inconsistent);
        assert!(matches!(e.solution(2), Err(Error::Singular { rank: 1, unknowns: 2 })));
    }
}
