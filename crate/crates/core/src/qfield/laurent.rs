//! Laurent polynomials in `q` with big-integer coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{RationalFunction, ZPoly};

/// A Laurent polynomial `sum c_e q^e`.
///
/// Stored densely from the lowest exponent `low`; both ends of `coeffs` are
/// nonzero, and the zero polynomial has `low == 0` and no coefficients. This
/// makes the representation unique, so derived equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    low: i32,
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `q^e`.
    pub fn q_pow(e: i32) -> Self {
        Self::monomial(1, e)
    }

    /// `c * q^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i32) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        IntPoly {
            low: e,
            coeffs: vec![c],
        }
    }

    pub fn from_coeffs(low: i32, coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { low, coeffs };
        p.normalize();
        p
    }

    /// Build from `(coefficient, exponent)` pairs; repeated exponents add up.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (C, i32)>,
        C: Into<BigInt>,
    {
        let mut acc = IntPoly::zero();
        for (c, e) in terms {
            acc += &IntPoly::monomial(c, e);
        }
        acc
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent present (`None` for zero).
    pub fn low_exp(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent present (`None` for zero).
    pub fn high_exp(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, e: i32) -> BigInt {
        let i = e - self.low;
        if i < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_default()
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i32, c))
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// If `self = ±q^e`, returns `(sign, e)`.
    pub fn as_unit(&self) -> Option<(i8, i32)> {
        if self.coeffs.len() != 1 {
            return None;
        }
        let c = &self.coeffs[0];
        if c.is_one() {
            Some((1, self.low))
        } else if (-c).is_one() {
            Some((-1, self.low))
        } else {
            None
        }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        IntPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Divide by a unit `±q^e`; panics if `u` is not a unit.
    pub fn div_unit(&self, u: &IntPoly) -> Self {
        let (s, e) = u.as_unit().expect("div_unit by a non-unit");
        let r = self.shift(-e);
        if s < 0 {
            -&r
        } else {
            r
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = IntPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute `q -> q^-1`.
    pub fn invert_q(&self) -> Self {
        match self.high_exp() {
            None => Self::zero(),
            Some(h) => IntPoly {
                low: -h,
                coeffs: self.coeffs.iter().rev().cloned().collect(),
            },
        }
    }

    /// Evaluate at a rational point. Fails only for `q0 = 0` with negative
    /// exponents present.
    pub fn eval(&self, q0: &BigRational) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if q0.is_zero() && self.low < 0 {
            return None;
        }
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q0 + BigRational::from_integer(c.clone());
        }
        let base = if self.low >= 0 {
            q0.pow(self.low)
        } else {
            q0.recip().pow(-self.low)
        };
        Some(acc * base)
    }

    /// Split as `q^shift * p` with `p` an ordinary polynomial.
    pub fn to_poly_shift(&self) -> (ZPoly, i32) {
        (ZPoly::from_coeffs(self.coeffs.clone()), self.low)
    }

    pub fn from_poly(p: &ZPoly) -> Self {
        Self::from_coeffs(0, p.coeffs().to_vec())
    }

    pub fn to_rational(&self) -> RationalFunction {
        RationalFunction::from(self)
    }

    fn add_impl(&self, rhs: &IntPoly, negate: bool) -> IntPoly {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -rhs } else { rhs.clone() };
        }
        let low = self.low.min(rhs.low);
        let high = self.high_exp().unwrap().max(rhs.high_exp().unwrap());
        let mut out = vec![BigInt::zero(); (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[(self.low - low) as usize + i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            let slot = &mut out[(rhs.low - low) as usize + i];
            if negate {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        IntPoly::from_coeffs(low, out)
    }
}

impl From<i64> for IntPoly {
    fn from(c: i64) -> Self {
        IntPoly::constant(c)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        self.add_impl(rhs, false)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self.add_impl(rhs, true)
    }
}

impl Add for IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: IntPoly) -> IntPoly {
        &self + &rhs
    }
}

impl Sub for IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: IntPoly) -> IntPoly {
        &self - &rhs
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: IntPoly) -> IntPoly {
        &self * &rhs
    }
}

impl AddAssign<&IntPoly> for IntPoly {
    fn add_assign(&mut self, rhs: &IntPoly) {
        if rhs.is_zero() {
            return;
        }
        // Fast path: rhs fits inside self's range.
        if !self.is_zero()
            && rhs.low >= self.low
            && rhs.high_exp().unwrap() <= self.high_exp().unwrap()
        {
            let off = (rhs.low - self.low) as usize;
            for (i, c) in rhs.coeffs.iter().enumerate() {
                self.coeffs[off + i] += c;
            }
            self.normalize();
            return;
        }
        *self = self.add_impl(rhs, false);
    }
}

impl SubAssign<&IntPoly> for IntPoly {
    fn sub_assign(&mut self, rhs: &IntPoly) {
        *self = self.add_impl(rhs, true);
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(mut self) -> IntPoly {
        for c in self.coeffs.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        if rhs.coeffs.len() == 1 {
            let c = &rhs.coeffs[0];
            let coeffs = if c.is_one() {
                self.coeffs.clone()
            } else {
                self.coeffs.iter().map(|x| x * c).collect()
            };
            return IntPoly {
                low: self.low + rhs.low,
                coeffs,
            };
        }
        if self.coeffs.len() == 1 {
            return rhs * self;
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        IntPoly::from_coeffs(self.low + rhs.low, out)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::fmt_terms(f, self.terms().rev().map(|(e, c)| (e as i64, c)))
    }
}

impl IntPoly {
    /// True if the rendering is a single term with nonnegative sign, so it can
    /// be written as a factor without parentheses.
    pub(crate) fn is_atomic(&self) -> bool {
        self.term_count() <= 1 && self.coeffs.iter().all(|c| !c.is_negative())
    }
}
