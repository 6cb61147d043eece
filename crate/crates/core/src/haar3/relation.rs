//! Linear relations among Haar values coming from invariance and from
//! multiplying by the quantum determinant.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::{quantum_determinant, NCPoly, Word};
use crate::coalgebra::{Pruning, ReducedTensor};
use crate::error::{Error, Result};
use crate::qfield::{IntPoly, RationalFunction};

use super::basis::order_basis;
use super::standard::{segments_word, StandardMonomial, SEGMENT_NAMES};
use super::table::HaarTable;

/// `sum terms[s] * h(s) = rhs` over basis monomials of one order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRelation {
    pub label: String,
    pub order: usize,
    pub terms: BTreeMap<StandardMonomial, RationalFunction>,
    pub rhs: RationalFunction,
}

impl LinearRelation {
    pub fn coeff(&self, s: &StandardMonomial) -> RationalFunction {
        self.terms.get(s).cloned().unwrap_or_default()
    }

    pub fn is_trivial(&self) -> bool {
        self.terms.is_empty() && self.rhs.is_zero()
    }

    /// Basis monomials without a value in `table`.
    pub fn unknowns(&self, table: &HaarTable) -> Vec<StandardMonomial> {
        self.terms.keys().filter(|s| table.get(s).is_none()).copied().collect()
    }

    /// Move every known term to the right-hand side.
    pub fn substitute(&self, table: &HaarTable) -> LinearRelation {
        let mut rhs = self.rhs.clone();
        let mut terms = BTreeMap::new();
        for (s, c) in &self.terms {
            match table.get(s) {
                Some(v) => rhs -= &(c * v),
                None => {
                    terms.insert(*s, c.clone());
                }
            }
        }
        LinearRelation {
            label: self.label.clone(),
            order: self.order,
            terms,
            rhs,
        }
    }

    /// Scale so that the coefficient of `s` becomes 1.
    pub fn normalized_at(&self, s: &StandardMonomial) -> Result<LinearRelation> {
        let c = self.coeff(s).recip()?;
        Ok(LinearRelation {
            label: self.label.clone(),
            order: self.order,
            terms: self.terms.iter().map(|(k, v)| (*k, v * &c)).collect(),
            rhs: &self.rhs * &c,
        })
    }

    /// Plug in values; zero when they satisfy the relation.
    pub fn residual(&self, table: &HaarTable) -> Result<RationalFunction> {
        let mut acc = -&self.rhs;
        for (s, c) in &self.terms {
            acc += &(c * &table.value_of(s)?);
        }
        Ok(acc)
    }
}

impl fmt::Display for LinearRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] ", self.label)?;
        for (i, (s, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c}) h({s})")?;
        }
        if self.terms.is_empty() {
            f.write_str("0")?;
        }
        write!(f, " = {}", self.rhs)
    }
}

/// `aek^2 ceg` style rendering of a segment sequence, merging equal runs.
pub fn segments_label(segs: &[usize]) -> String {
    if segs.is_empty() {
        return "1".into();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < segs.len() {
        let mut j = i;
        while j < segs.len() && segs[j] == segs[i] {
            j += 1;
        }
        let name = SEGMENT_NAMES[segs[i]];
        parts.push(if j - i > 1 { format!("{name}^{}", j - i) } else { name.to_string() });
        i = j;
    }
    parts.join(" ")
}

/// Coordinates of the normal form of `D_q^m` on the order-`m` basis.
pub fn dq_power_coords(m: usize) -> Result<Arc<BTreeMap<usize, IntPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<BTreeMap<usize, IntPoly>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&m) {
        return Ok(v.clone());
    }
    let p = quantum_determinant(3).pow(m as u32);
    let v = Arc::new(order_basis(m)?.poly_coords(&p)?);
    cache.lock().unwrap().insert(m, v.clone());
    Ok(v)
}

/// Relation from right invariance of `h` applied to the word `eq`, matched
/// on the coefficient of the basis monomial `cmp` in the left leg.
pub fn derive_relation(eq: &[usize], cmp: &StandardMonomial) -> Result<LinearRelation> {
    derive_relation_with(eq, cmp, true)
}

/// As [`derive_relation`]; `prune` toggles the corner-count cut.
pub fn derive_relation_with(eq: &[usize], cmp: &StandardMonomial, prune: bool) -> Result<LinearRelation> {
    let m = eq.len();
    if cmp.order() != m {
        return Err(Error::Inconsistent(format!(
            "comparing monomial {cmp} is not of order {m}"
        )));
    }
    let basis = order_basis(m)?;
    let j = basis
        .position(cmp)
        .ok_or_else(|| Error::Inconsistent(format!("{cmp} is not a basis monomial")))?;
    let word = segments_word(eq);
    let pruning = Pruning {
        order: Some(m),
        left_target: prune.then(|| cmp.mono()),
        right_target: None,
    };
    let tensor = ReducedTensor::build(&word, &pruning);
    let mut c: BTreeMap<usize, IntPoly> = BTreeMap::new();
    for ((l, r), coef) in &tensor.terms {
        let Some(dl) = basis.mono_coords(l) else { continue };
        let Ok(p) = dl.binary_search_by_key(&j, |x| x.0) else { continue };
        let lc = coef * &dl[p].1;
        let Some(dr) = basis.mono_coords(r) else { continue };
        for (i, d) in dr {
            *c.entry(*i).or_insert_with(IntPoly::zero) += &(&lc * d);
        }
    }
    // Right-hand side h(eq) * [coefficient of cmp in D_q^m].
    if let Some(bj) = dq_power_coords(m)?.get(&j) {
        for (i, d) in basis.word_coords(&word)? {
            *c.entry(i).or_insert_with(IntPoly::zero) -= &(bj * &d);
        }
    }
    Ok(LinearRelation {
        label: format!("eq {} / cmp {}", segments_label(eq), cmp),
        order: m,
        terms: c
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (basis.basis[i], RationalFunction::from(v)))
            .collect(),
        rhs: RationalFunction::zero(),
    })
}

/// `h(x D_q y) = h(x y)` with the right side read from `known`.
pub fn dq_identity(left: &[usize], right: &[usize], known: &HaarTable) -> Result<LinearRelation> {
    let m = left.len() + right.len() + 1;
    let lw = segments_word(left);
    let rw = segments_word(right);
    let p = NCPoly::from_word(&lw)
        .mul(&quantum_determinant(3))
        .mul(&NCPoly::from_word(&rw));
    let basis = order_basis(m)?;
    let rhs = known.value_of_word(&lw.concat(&rw))?;
    Ok(LinearRelation {
        label: format!("{} * D_q * {}", segments_label(left), segments_label(right)),
        order: m,
        terms: basis
            .poly_coords(&p)?
            .into_iter()
            .map(|(i, v)| (basis.basis[i], RationalFunction::from(v)))
            .collect(),
        rhs,
    })
}

/// Word for a segment list; re-exported for callers building equations.
pub fn equation_word(eq: &[usize]) -> Word {
    segments_word(eq)
}
