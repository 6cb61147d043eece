//! Haar values of basis standard monomials, with JSON-lines persistence.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::algebra::{normal_form, Mono, NCPoly, Word};
use crate::error::{Error, Result};
use crate::qfield::{parse_rational, RationalFunction};

use super::basis::order_basis;
use super::standard::StandardMonomial;

pub const FORMAT_VERSION: u32 = 1;
/// Right invariance, `D_q^m` identified with 1, row-major normal order.
pub const CONVENTION: &str = "right-invariant;dq-power-is-one;row-major";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HaarTable {
    pub n: usize,
    entries: BTreeMap<StandardMonomial, RationalFunction>,
    /// Orders `0..complete` are fully populated.
    complete: usize,
}

impl Default for HaarTable {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Serialize, Deserialize)]
struct Header {
    format: String,
    version: u32,
    convention: String,
    n: usize,
    order: usize,
}

#[derive(Serialize, Deserialize)]
struct Record {
    n: usize,
    order: usize,
    exponents: [u32; 6],
    value: String,
}

impl HaarTable {
    /// Only `h(1) = 1`.
    pub fn new() -> Self {
        HaarTable {
            n: 3,
            entries: BTreeMap::from([(StandardMonomial::one(), RationalFunction::one())]),
            complete: 1,
        }
    }

    /// Highest order known in full.
    pub fn max_order(&self) -> usize {
        self.complete - 1
    }

    pub fn has_order(&self, m: usize) -> bool {
        m < self.complete
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, s: &StandardMonomial) -> Option<&RationalFunction> {
        self.entries.get(s)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&StandardMonomial, &RationalFunction)> {
        self.entries.iter()
    }

    pub fn order_entries(&self, m: usize) -> impl Iterator<Item = (&StandardMonomial, &RationalFunction)> {
        self.entries.iter().filter(move |(s, _)| s.order() == m)
    }

    /// Store one basis value. Rejects non-basis keys and conflicting values.
    pub fn insert(&mut self, s: StandardMonomial, v: RationalFunction) -> Result<()> {
        if !s.is_basis() {
            return Err(Error::Inconsistent(format!("{s} is not a basis monomial")));
        }
        if let Some(old) = self.entries.get(&s) {
            if *old != v {
                return Err(Error::Inconsistent(format!("h({s}): stored {old}, new {v}")));
            }
            return Ok(());
        }
        self.entries.insert(s, v);
        Ok(())
    }

    /// Mark order `m` as complete once every basis monomial is present.
    pub fn seal_order(&mut self, m: usize) -> Result<()> {
        if m != self.complete {
            return Err(Error::Schedule {
                step: format!("seal order {m}"),
                msg: format!("orders below {m} are not complete"),
            });
        }
        let b = order_basis(m)?;
        if let Some(s) = b.basis.iter().find(|s| !self.entries.contains_key(s)) {
            return Err(Error::UnknownValue(s.to_string()));
        }
        self.complete = m + 1;
        Ok(())
    }

    /// Value of a doubly stochastic normal-ordered monomial.
    pub fn value_of_mono(&self, m: &Mono) -> Result<RationalFunction> {
        if m.is_empty() {
            return Ok(RationalFunction::one());
        }
        let Some(order) = m.doubly_stochastic_order() else {
            return Ok(RationalFunction::zero());
        };
        let b = order_basis(order)?;
        let mut acc = RationalFunction::zero();
        for (j, c) in b.mono_coords(m).expect("doubly stochastic") {
            let v = self
                .entries
                .get(&b.basis[*j])
                .ok_or_else(|| Error::UnknownValue(b.basis[*j].to_string()))?;
            acc += &(v * &RationalFunction::from(c));
        }
        Ok(acc)
    }

    pub fn value_of_poly(&self, p: &NCPoly) -> Result<RationalFunction> {
        if p.n() != 3 {
            return Err(Error::UnsupportedN(p.n()));
        }
        let mut acc = RationalFunction::zero();
        for (m, c) in p.terms() {
            let v = self.value_of_mono(m)?;
            if !v.is_zero() {
                acc += &(&v * &RationalFunction::from(c));
            }
        }
        Ok(acc)
    }

    pub fn value_of_word(&self, w: &Word) -> Result<RationalFunction> {
        if w.n != 3 {
            return Err(Error::UnsupportedN(w.n));
        }
        if w.is_empty() {
            return Ok(RationalFunction::one());
        }
        if Mono::from_word(w).doubly_stochastic_order().is_none() {
            return Ok(RationalFunction::zero());
        }
        self.value_of_poly(&normal_form(w))
    }

    /// Value of any standard monomial, basis or not.
    pub fn value_of(&self, s: &StandardMonomial) -> Result<RationalFunction> {
        match self.entries.get(s) {
            Some(v) => Ok(v.clone()),
            None => self.value_of_word(&s.to_word()),
        }
    }

    /// One header line then the records of order `m`.
    pub fn write_order(&self, m: usize, mut out: impl Write) -> Result<()> {
        let header = Header {
            format: "qhaar-table".into(),
            version: FORMAT_VERSION,
            convention: CONVENTION.into(),
            n: self.n,
            order: m,
        };
        writeln!(out, "{}", serde_json::to_string(&header).map_err(fmt_err)?)?;
        for (s, v) in self.order_entries(m) {
            let r = Record {
                n: self.n,
                order: m,
                exponents: s.exps,
                value: v.to_string(),
            };
            writeln!(out, "{}", serde_json::to_string(&r).map_err(fmt_err)?)?;
        }
        Ok(())
    }

    /// Read the records of one order. Returns the order and its values.
    pub fn read_order(input: impl BufRead) -> Result<(usize, BTreeMap<StandardMonomial, RationalFunction>)> {
        let mut lines = input.lines();
        let first = lines
            .next()
            .ok_or_else(|| Error::Format("empty table file".into()))??;
        let header: Header = serde_json::from_str(&first).map_err(fmt_err)?;
        if header.format != "qhaar-table" || header.version != FORMAT_VERSION {
            return Err(Error::Format(format!(
                "unsupported table format {} v{}",
                header.format, header.version
            )));
        }
        if header.convention != CONVENTION || header.n != 3 {
            return Err(Error::Format(format!("convention mismatch: {}", header.convention)));
        }
        let mut out = BTreeMap::new();
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let r: Record = serde_json::from_str(&line).map_err(fmt_err)?;
            let s = StandardMonomial::new(r.exponents);
            if r.order != header.order || s.order() != header.order {
                return Err(Error::Format(format!("record {s} has the wrong order")));
            }
            out.insert(s, parse_rational(&r.value)?);
        }
        Ok((header.order, out))
    }

    /// Install a whole order read from disk.
    pub fn load_order(&mut self, m: usize, values: BTreeMap<StandardMonomial, RationalFunction>) -> Result<()> {
        for (s, v) in values {
            self.insert(s, v)?;
        }
        self.seal_order(m)
    }
}

fn fmt_err(e: serde_json::Error) -> Error {
    Error::Format(e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_order_one_like_data() {
        let mut t = HaarTable::new();
        let s: StandardMonomial = "aek".parse().unwrap();
        t.insert(s, parse_rational("1/(q^2+1)").unwrap()).unwrap();
        let mut buf = Vec::new();
        t.write_order(1, &mut buf).unwrap();
        let (m, vals) = HaarTable::read_order(&buf[..]).unwrap();
        assert_eq!(m, 1);
        assert_eq!(vals[&s], *t.get(&s).unwrap());
    }

    #[test]
    fn rejects_non_basis_keys() {
        let mut t = HaarTable::new();
        let s: StandardMonomial = "afh bdk ceg".parse().unwrap();
        assert!(t.insert(s, RationalFunction::one()).is_err());
    }
}
