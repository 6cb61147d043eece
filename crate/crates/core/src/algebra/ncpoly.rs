//! Linear combinations of normal-ordered words.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;

use super::gen::Word;
use super::mono::Mono;
use super::normal;
use crate::qfield::{IntPoly, RationalFunction};

/// Coefficient ring for [`NCPoly`].
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, rhs: &Self);
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_laurent(p: &IntPoly) -> Self;
    /// `(negative, magnitude text, needs parentheses as a factor)`.
    fn render(&self) -> (bool, String, bool);
}

impl Coeff for IntPoly {
    fn zero() -> Self {
        IntPoly::zero()
    }
    fn one() -> Self {
        IntPoly::one()
    }
    fn is_zero(&self) -> bool {
        IntPoly::is_zero(self)
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_laurent(p: &IntPoly) -> Self {
        p.clone()
    }
    fn render(&self) -> (bool, String, bool) {
        let neg = self
            .high_exp()
            .is_some_and(|h| self.coeff(h).is_negative());
        let mag = if neg { -self } else { self.clone() };
        (neg, mag.to_string(), !mag.is_atomic())
    }
}

impl Coeff for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_laurent(p: &IntPoly) -> Self {
        RationalFunction::from(p)
    }
    fn render(&self) -> (bool, String, bool) {
        if let Some(p) = self.to_laurent() {
            return p.render();
        }
        let neg = self.numer().leading().is_some_and(|c| c.is_negative());
        let mag = if neg { -self } else { self.clone() };
        (neg, mag.to_string(), true)
    }
}

/// An element of `O(M_q(n))` written in the normal-ordered basis.
#[derive(Clone, PartialEq)]
pub struct NCPoly<C: Coeff = IntPoly> {
    n: usize,
    terms: BTreeMap<Mono, C>,
}

impl<C: Coeff> NCPoly<C> {
    pub fn zero(n: usize) -> Self {
        NCPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(Mono::one(n), C::one())
    }

    pub fn monomial(m: Mono, c: C) -> Self {
        let mut p = Self::zero(m.n());
        p.add_term(m, &c);
        p
    }

    pub fn scalar(n: usize, c: C) -> Self {
        Self::monomial(Mono::one(n), c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending order of their counting vectors.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, m: Mono, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                e.add_assign_ref(c);
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(*m, c);
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg_ref())
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero(self.n);
        }
        self.map(|c| c.mul_ref(s))
    }

    fn map(&self, f: impl Fn(&C) -> C) -> Self {
        let mut r = Self::zero(self.n);
        for (m, c) in &self.terms {
            r.add_term(*m, &f(c));
        }
        r
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> NCPoly<D> {
        let mut r = NCPoly::zero(self.n);
        for (m, c) in &self.terms {
            r.add_term(*m, &f(c));
        }
        r
    }

    /// Product in normal form.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut r = Self::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let cab = ca.mul_ref(cb);
                for (m, c) in normal::mul_monos(a, b) {
                    r.add_term(m, &cab.mul_ref(&C::from_laurent(&c)));
                }
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.n), |acc, _| acc.mul(self))
    }

    /// Apply an algebra map given on generators.
    pub fn substitute(&self, image: impl Fn(super::Gen) -> NCPoly<C>) -> Self {
        let mut r = Self::zero(self.n);
        for (m, c) in &self.terms {
            let mut t = Self::scalar(self.n, c.clone());
            for g in m.to_word().gens {
                t = t.mul(&image(g));
            }
            r = r.add(&t);
        }
        r
    }
}

impl NCPoly<IntPoly> {
    pub fn to_rational(&self) -> NCPoly<RationalFunction> {
        self.map_coeffs(|c| RationalFunction::from(c))
    }

    /// The normal form of a raw word.
    pub fn from_word(w: &Word) -> Self {
        normal::normal_form(w)
    }
}

impl<C: Coeff> fmt::Display for NCPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag, paren) = c.render();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let word = m.to_word();
            if word.is_empty() {
                f.write_str(&mag)?;
            } else if mag == "1" {
                write!(f, "{word}")?;
            } else if paren {
                write!(f, "({mag}) * {word}")?;
            } else {
                write!(f, "{mag} * {word}")?;
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for NCPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCPoly({self})")
    }
}
