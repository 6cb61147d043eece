//! Reduced rational functions in `q`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{IntPoly, ZPoly};
use crate::error::{Error, Result};

/// An element of `Q(q)` in canonical form.
///
/// `num` and `den` are ordinary polynomials with no common factor over
/// `Q[q]` (negative powers of `q` are absorbed into `den`), `den` has a
/// positive leading coefficient, and the integer contents of the pair are
/// coprime. Zero is `0/1`. Canonical form is unique so `==` is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: ZPoly,
    den: ZPoly,
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction {
            num: ZPoly::zero(),
            den: ZPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        RationalFunction {
            num: ZPoly::constant(c),
            den: ZPoly::one(),
        }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::new(ZPoly::constant(r.numer().clone()), ZPoly::constant(r.denom().clone()))
            .expect("nonzero denominator")
    }

    /// `q^e` for any integer `e`.
    pub fn q_pow(e: i32) -> Self {
        Self::from(&IntPoly::q_pow(e))
    }

    pub fn from_poly(p: ZPoly) -> Self {
        Self::coprime(p, ZPoly::one())
    }

    /// `num / den`, fully reduced.
    pub fn new(num: ZPoly, den: ZPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd_primitive(&den);
        if g.degree() == Some(0) {
            return Ok(Self::coprime(num, den));
        }
        let n = num.div_exact(&g).expect("gcd divides numerator");
        let d = den.div_exact(&g).expect("gcd divides denominator");
        Ok(Self::coprime(n, d))
    }

    /// Quotient of Laurent polynomials.
    pub fn from_laurent_ratio(num: &IntPoly, den: &IntPoly) -> Result<Self> {
        Self::from(num).checked_div(&Self::from(den))
    }

    /// Finish canonicalization of a pair already coprime over `Q[q]`.
    fn coprime(num: ZPoly, den: ZPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let mut c = num.content().gcd(&den.content());
        if den.leading().unwrap().is_negative() {
            c = -c;
        }
        if c.is_one() {
            return RationalFunction { num, den };
        }
        RationalFunction {
            num: num.div_scalar(&c),
            den: den.div_scalar(&c),
        }
    }

    pub fn numer(&self) -> &ZPoly {
        &self.num
    }

    pub fn denom(&self) -> &ZPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Rough size used for pivot choice: total degree plus term count.
    pub fn complexity(&self) -> usize {
        self.num.degree().unwrap_or(0)
            + self.den.degree().unwrap_or(0)
            + self.num.term_count()
            + self.den.term_count()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::coprime(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        Ok(RationalFunction {
            num: base.num.pow(e.unsigned_abs()),
            den: base.den.pow(e.unsigned_abs()),
        })
    }

    /// Evaluate at a rational point; a pole is an error.
    pub fn eval_at(&self, q0: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(Error::Pole(q0.to_string()));
        }
        Ok(self.num.eval(q0) / d)
    }

    /// If the denominator is `q^k`, the value as a Laurent polynomial.
    pub fn to_laurent(&self) -> Option<IntPoly> {
        let k = self.den.degree()?;
        if self.den.term_count() != 1 || !self.den.leading()?.is_one() {
            return None;
        }
        Some(IntPoly::from_poly(&self.num).shift(-(k as i32)))
    }

    /// Substitute `q -> q^-1`.
    pub fn invert_q(&self) -> Self {
        let n = IntPoly::from_poly(&self.num).invert_q();
        let d = IntPoly::from_poly(&self.den).invert_q();
        Self::from_laurent_ratio(&n, &d).expect("nonzero denominator")
    }

    /// A common denominator `d` of `vals` and each value's numerator over it.
    pub fn over_common_denominator<'a>(vals: impl IntoIterator<Item = &'a RationalFunction>) -> (ZPoly, Vec<ZPoly>) {
        let vals: Vec<&RationalFunction> = vals.into_iter().collect();
        let mut den = ZPoly::one();
        for v in &vals {
            let g = den.gcd_primitive(&v.den);
            den = &den.div_exact(&g).expect("gcd divides") * &v.den;
        }
        let nums = vals
            .iter()
            .map(|v| &v.num * &den.div_exact(&v.den).expect("common multiple"))
            .collect();
        (den, nums)
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<&IntPoly> for RationalFunction {
    fn from(p: &IntPoly) -> Self {
        let (poly, shift) = p.to_poly_shift();
        if shift >= 0 {
            Self::coprime(poly.shift_up(shift as usize), ZPoly::one())
        } else {
            // poly has a nonzero constant term, so it is coprime to q^k.
            Self::coprime(poly, ZPoly::monomial(1, (-shift) as usize))
        }
    }
}

impl From<IntPoly> for RationalFunction {
    fn from(p: IntPoly) -> Self {
        Self::from(&p)
    }
}

impl From<i64> for RationalFunction {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let n = &self.num + &rhs.num;
            return RationalFunction::new(n, self.den.clone()).unwrap();
        }
        let g = self.den.gcd_primitive(&rhs.den);
        let (b1, d1) = if g.degree() == Some(0) {
            (self.den.clone(), rhs.den.clone())
        } else {
            (
                self.den.div_exact(&g).unwrap(),
                rhs.den.div_exact(&g).unwrap(),
            )
        };
        let n = &(&self.num * &d1) + &(&rhs.num * &b1);
        let d = &b1 * &rhs.den;
        if g.degree() == Some(0) {
            // Denominators coprime: the sum is already reduced over Q[q].
            return RationalFunction::coprime(n, d);
        }
        RationalFunction::new(n, d).unwrap()
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        let cross = |n: &ZPoly, d: &ZPoly| -> (ZPoly, ZPoly) {
            if d.degree() == Some(0) || n.degree() == Some(0) {
                return (n.clone(), d.clone());
            }
            let g = n.gcd_primitive(d);
            if g.degree() == Some(0) {
                (n.clone(), d.clone())
            } else {
                (n.div_exact(&g).unwrap(), d.div_exact(&g).unwrap())
            }
        };
        let (a, d) = cross(&self.num, &rhs.den);
        let (c, b) = cross(&rhs.num, &self.den);
        RationalFunction::coprime(&a * &c, &b * &d)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        &self + &rhs
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: RationalFunction) -> RationalFunction {
        &self - &rhs
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        &self * &rhs
    }
}

impl AddAssign<&RationalFunction> for RationalFunction {
    fn add_assign(&mut self, rhs: &RationalFunction) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&RationalFunction> for RationalFunction {
    fn sub_assign(&mut self, rhs: &RationalFunction) {
        *self = &*self - rhs;
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num_plain = self.num.term_count() <= 1
            && self.num.leading().map_or(true, |c| c.is_one() || (!c.is_negative() && self.num.degree() == Some(0)));
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if num_plain {
            write!(f, "{}", self.num)?;
        } else {
            write!(f, "({})", self.num)?;
        }
        let den_plain = self.den.term_count() == 1
            && (self.den.degree() == Some(0) || self.den.leading().unwrap().is_one());
        if den_plain {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl FromStr for RationalFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::parse_rational(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RationalFunction {
        s.parse().unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn cancellation_and_gcd() {
        assert_eq!(&rf("q - q^-1") + &rf("q^-1"), rf("q"));
        assert_eq!(rf("(q^2 - 1)/(q - 1)"), rf("q + 1"));
        assert_eq!(rf("(1 - q^6)/(1 - q^2)").to_string(), "q^4 + q^2 + 1");
    }

    #[test]
    fn canonical_text() {
        let v = rf("-q^3/((1+q^2)*(1+q^2+q^4))");
        assert_eq!(v.to_string(), "(-q^3)/(q^6 + 2*q^4 + 2*q^2 + 1)");
        assert_eq!(rf("1/((1+q^2)*(1+q^2+q^4))").to_string(), "1/(q^6 + 2*q^4 + 2*q^2 + 1)");
        assert_eq!(rf("(q^2-1)/q^2").to_string(), "(q^2 - 1)/q^2");
        assert_eq!(rf("3/6").to_string(), "1/2");
        assert_eq!(rf("2*q/(4*q^2 + 2)").to_string(), "q/(2*q^2 + 1)");
        assert_eq!(rf("0").to_string(), "0");
    }

    #[test]
    fn eval_examples() {
        assert_eq!(rf("1/(1+q^2)").eval_at(&rat(1, 1)).unwrap(), rat(1, 2));
        assert_eq!(
            rf("q^2/((q^2+1)^2*(q^4+1))").eval_at(&rat(1, 1)).unwrap(),
            rat(1, 8)
        );
        assert_eq!(
            rf("(q^4-q^2+1)/((q^4+1)*(q^4+q^2+1))").eval_at(&rat(1, 1)).unwrap(),
            rat(1, 6)
        );
        assert!(matches!(rf("1/(q-1)").eval_at(&rat(1, 1)), Err(Error::Pole(_))));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(rf("q").checked_div(&RationalFunction::zero()).is_err());
        assert!("1/(q - q)".parse::<RationalFunction>().is_err());
    }

    #[test]
    fn laurent_round_trip() {
        let p = IntPoly::from_terms([(1, 2), (-3, -1)]);
        assert_eq!(RationalFunction::from(&p).to_laurent(), Some(p));
        assert_eq!(rf("1/(q+1)").to_laurent(), None);
    }
}
