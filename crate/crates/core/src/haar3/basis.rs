//! Coordinates of normal-ordered monomials on the basis standard monomials.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::{normal_form, Mono, NCPoly, Word};
use crate::error::{Error, Result};
use crate::qfield::{IntPoly, RationalFunction};

use super::standard::{all_standard, birkhoff_decompose, StandardMonomial};

/// Basis standard monomials of one order and the triangular change of
/// coordinates between them and normal-ordered monomials.
#[derive(Debug)]
pub struct OrderBasis {
    pub order: usize,
    /// Sorted by counting matrix, ascending.
    pub basis: Vec<StandardMonomial>,
    pub monos: Vec<Mono>,
    index: HashMap<Mono, usize>,
    coords: Vec<Vec<(usize, IntPoly)>>,
}

impl OrderBasis {
    pub fn build(order: usize) -> Result<OrderBasis> {
        let mut pairs: Vec<(Mono, StandardMonomial)> = all_standard(order)
            .into_iter()
            .filter(|s| s.is_basis())
            .map(|s| (s.mono(), s))
            .collect();
        pairs.sort();
        let monos: Vec<Mono> = pairs.iter().map(|p| p.0).collect();
        let basis: Vec<StandardMonomial> = pairs.iter().map(|p| p.1).collect();
        let index: HashMap<Mono, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        if index.len() != monos.len() {
            return Err(Error::Inconsistent(format!(
                "two basis monomials of order {order} share a counting matrix"
            )));
        }
        let mut coords: Vec<Vec<(usize, IntPoly)>> = Vec::with_capacity(monos.len());
        for (k, s) in basis.iter().enumerate() {
            // s = t_kk N_k + sum_{p<k} t_kp N_p
            let nf = normal_form(&s.to_word());
            let lead = nf.coeff(&monos[k]);
            if lead.as_unit().is_none() {
                return Err(Error::Inconsistent(format!("leading coefficient of {s} is {lead}")));
            }
            let mut acc: BTreeMap<usize, IntPoly> = BTreeMap::from([(k, IntPoly::one())]);
            for (m, c) in nf.terms() {
                let p = *index.get(m).ok_or_else(|| {
                    Error::Inconsistent(format!("normal form of {s} leaves the order"))
                })?;
                if p == k {
                    continue;
                }
                if p > k {
                    return Err(Error::Inconsistent(format!("normal form of {s} is not triangular")));
                }
                for (j, d) in &coords[p] {
                    *acc.entry(*j).or_insert_with(IntPoly::zero) -= &(c * d);
                }
            }
            coords.push(
                acc.into_iter()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| (j, c.div_unit(&lead)))
                    .collect(),
            );
        }
        Ok(OrderBasis {
            order,
            basis,
            monos,
            index,
            coords,
        })
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn position(&self, s: &StandardMonomial) -> Option<usize> {
        self.index.get(&s.mono()).filter(|&&i| self.basis[i] == *s).copied()
    }

    pub fn index_of_mono(&self, m: &Mono) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of a normal-ordered monomial; `None` if it is not doubly
    /// stochastic of this order.
    pub fn mono_coords(&self, m: &Mono) -> Option<&[(usize, IntPoly)]> {
        self.index.get(m).map(|&i| self.coords[i].as_slice())
    }

    /// Coordinates of a normal-ordered polynomial. Monomials outside the
    /// order are reported as an error.
    pub fn poly_coords(&self, p: &NCPoly) -> Result<BTreeMap<usize, IntPoly>> {
        let mut out: BTreeMap<usize, IntPoly> = BTreeMap::new();
        for (m, c) in p.terms() {
            let cs = self
                .mono_coords(m)
                .ok_or_else(|| Error::NotDoublyStochastic(m.to_string()))?;
            for (j, d) in cs {
                *out.entry(*j).or_insert_with(IntPoly::zero) += &(c * d);
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    pub fn word_coords(&self, w: &Word) -> Result<BTreeMap<usize, IntPoly>> {
        self.poly_coords(&normal_form(w))
    }
}

/// Shared per-order bases.
pub fn order_basis(order: usize) -> Result<Arc<OrderBasis>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<OrderBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.lock().unwrap().get(&order) {
        return Ok(b.clone());
    }
    let b = Arc::new(OrderBasis::build(order)?);
    cache.lock().unwrap().entry(order).or_insert(b.clone());
    Ok(b)
}

/// Write a word as a combination of basis standard monomials of its order.
pub fn decompose_to_basis(w: &Word) -> Result<BTreeMap<StandardMonomial, RationalFunction>> {
    let m = crate::algebra::Mono::from_word(w);
    if w.n != 3 {
        return Err(Error::UnsupportedN(w.n));
    }
    let order = m
        .doubly_stochastic_order()
        .ok_or_else(|| Error::NotDoublyStochastic(w.to_string()))?;
    let b = order_basis(order)?;
    Ok(b.word_coords(w)?
        .into_iter()
        .map(|(i, c)| (b.basis[i], RationalFunction::from(c)))
        .collect())
}

/// The standard monomial sharing a counting matrix with `m`.
pub fn representative(m: &Mono) -> Result<StandardMonomial> {
    birkhoff_decompose(m).map(|(_, s)| s)
}
