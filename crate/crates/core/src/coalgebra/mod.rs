//! Comultiplication `Delta(x_ij) = sum_k x_ik (x) x_kj` and partial Haar maps.
//!
//! Two representations are provided. [`TensorPoly`] keeps raw words on both
//! legs, term by term, as the full index expansion produces them.
//! [`ReducedTensor`] multiplies `Delta` of each letter legwise with both legs
//! kept in normal form; it is what the solvers use for longer words.

use std::collections::HashMap;

use crate::algebra::{normal, Gen, Mono, NCPoly, Word};
use crate::error::{Error, Result};
use crate::qfield::{IntPoly, RationalFunction, ZPoly};

/// One term `coeff * left (x) right` of an expanded comultiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorTerm {
    pub left: Word,
    pub right: Word,
    pub coeff: IntPoly,
}

impl TensorTerm {
    /// Checks the positional constraints tying the legs to the source word.
    pub fn satisfies_order_restriction(&self, source: &Word) -> bool {
        self.left.len() == source.len()
            && self.right.len() == source.len()
            && source
                .gens
                .iter()
                .zip(self.left.gens.iter().zip(&self.right.gens))
                .all(|(s, (l, r))| l.row == s.row && r.col == s.col && l.col == r.row)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorPoly {
    pub terms: Vec<TensorTerm>,
}

impl TensorPoly {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Which leg a doubly stochastic filter looks at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Full expansion over all `n^len` middle-index tuples.
pub fn delta(w: &Word) -> TensorPoly {
    let mut out = TensorPoly::default();
    let mut ks = vec![0u8; w.len()];
    expand(w, &mut ks, 0, &mut |_| true, None, &mut out);
    out
}

/// Expansion restricted to terms whose `side` leg is doubly stochastic.
///
/// Both legs of a term share the middle indices: the right leg's row sums and
/// the left leg's column sums are the counts of each middle index. So either
/// filter amounts to every middle index being used exactly `m` times, and
/// prefixes that already overuse one are cut.
pub fn delta_pruned(w: &Word, side: Side) -> Result<TensorPoly> {
    let m = Mono::from_word(w)
        .doubly_stochastic_order()
        .ok_or_else(|| Error::NotDoublyStochastic(w.to_string()))?;
    let mut out = TensorPoly::default();
    let mut ks = vec![0u8; w.len()];
    let mut used = vec![0usize; w.n];
    let mut keep = |t: &TensorTerm| {
        let leg = match side {
            Side::Left => &t.left,
            Side::Right => &t.right,
        };
        Mono::from_word(leg).is_k_doubly_stochastic(m)
    };
    expand(w, &mut ks, 0, &mut keep, Some((m, &mut used)), &mut out);
    Ok(out)
}

fn expand(
    w: &Word,
    ks: &mut Vec<u8>,
    pos: usize,
    keep: &mut dyn FnMut(&TensorTerm) -> bool,
    mut cap: Option<(usize, &mut Vec<usize>)>,
    out: &mut TensorPoly,
) {
    if pos == w.len() {
        let left = w.gens.iter().zip(ks.iter()).map(|(g, &k)| Gen::new(g.row, k)).collect();
        let right = w.gens.iter().zip(ks.iter()).map(|(g, &k)| Gen::new(k, g.col)).collect();
        let t = TensorTerm {
            left: Word::new(w.n, left),
            right: Word::new(w.n, right),
            coeff: IntPoly::one(),
        };
        if keep(&t) {
            out.terms.push(t);
        }
        return;
    }
    for k in 0..w.n {
        if let Some((m, used)) = cap.as_mut() {
            if used[k] == *m {
                continue;
            }
            used[k] += 1;
        }
        ks[pos] = k as u8;
        let reborrow = cap.as_mut().map(|(m, u)| (*m, &mut **u));
        expand(w, ks, pos + 1, keep, reborrow, out);
        if let Some((_, used)) = cap.as_mut() {
            used[k] -= 1;
        }
    }
}

/// Counit on a raw word: 1 iff every letter is diagonal.
pub fn counit(w: &Word) -> i32 {
    w.gens.iter().all(|g| g.row == g.col) as i32
}

/// `(id (x) h)` applied to raw terms: `sum h(right) * left` in normal form.
pub fn apply_haar_right(
    tp: &TensorPoly,
    mut h: impl FnMut(&Word) -> Result<RationalFunction>,
) -> Result<NCPoly<RationalFunction>> {
    apply_haar(tp, |t| (&t.left, &t.right), &mut h)
}

/// `(h (x) id)` applied to raw terms: `sum h(left) * right` in normal form.
pub fn apply_haar_left(
    tp: &TensorPoly,
    mut h: impl FnMut(&Word) -> Result<RationalFunction>,
) -> Result<NCPoly<RationalFunction>> {
    apply_haar(tp, |t| (&t.right, &t.left), &mut h)
}

fn apply_haar(
    tp: &TensorPoly,
    legs: impl Fn(&TensorTerm) -> (&Word, &Word),
    h: &mut dyn FnMut(&Word) -> Result<RationalFunction>,
) -> Result<NCPoly<RationalFunction>> {
    let n = tp.terms.first().map_or(1, |t| t.left.n);
    // Group kept legs by their normal-ordered class before scaling.
    let mut by_keep: HashMap<Mono, RationalFunction> = HashMap::new();
    for t in &tp.terms {
        let (kept, eaten) = legs(t);
        let hv = h(eaten)?;
        if hv.is_zero() {
            continue;
        }
        let hv = &hv * &RationalFunction::from(&t.coeff);
        for (m, c) in normal::normal_form(kept).terms() {
            *by_keep.entry(*m).or_default() += &(&hv * &RationalFunction::from(c));
        }
    }
    let mut out = NCPoly::zero(n);
    for (m, c) in by_keep {
        out.add_term(m, &c);
    }
    Ok(out)
}

/// Constraints that cut branches while building a [`ReducedTensor`].
#[derive(Clone, Debug, Default)]
pub struct Pruning {
    /// Keep only terms whose middle indices are each used exactly `m` times
    /// (both legs doubly stochastic of order `m`).
    pub order: Option<usize>,
    /// Keep only left legs that can still contain the given basis monomial in
    /// their decomposition: corner-count monotonicity of normal ordering.
    pub left_target: Option<Mono>,
    /// Mirror of `left_target` for the right leg.
    pub right_target: Option<Mono>,
}

/// `Delta(w)` with both legs in normal form: `(left, right) -> coefficient`.
#[derive(Clone, Debug, Default)]
pub struct ReducedTensor {
    pub n: usize,
    pub terms: HashMap<(Mono, Mono), IntPoly>,
}

/// Corner counts `(x11, xnn, x1n, xn1)`.
fn corners(m: &Mono) -> [u32; 4] {
    let n = m.n();
    [
        m.entry(0, 0),
        m.entry(n - 1, n - 1),
        m.entry(0, n - 1),
        m.entry(n - 1, 0),
    ]
}

struct CornerBound {
    target: [u32; 4],
    // For each prefix length: how many remaining letters sit in row 1 / row n
    // (left leg) or column 1 / column n (right leg).
    rem_first: Vec<u32>,
    rem_last: Vec<u32>,
}

impl CornerBound {
    fn new(target: &Mono, w: &Word, left: bool) -> Self {
        let n = w.n as u8;
        let line = |g: &Gen| if left { g.row } else { g.col };
        let suffix = |pred: &dyn Fn(&Gen) -> bool| -> Vec<u32> {
            let mut v = vec![0u32; w.len() + 1];
            for p in (0..w.len()).rev() {
                v[p] = v[p + 1] + pred(&w.gens[p]) as u32;
            }
            v
        };
        CornerBound {
            target: corners(target),
            rem_first: suffix(&|g| line(g) == 0),
            rem_last: suffix(&|g| line(g) == n - 1),
        }
    }

    /// `pos` letters have been consumed.
    fn feasible(&self, m: &Mono, pos: usize) -> bool {
        let c = corners(m);
        c[0] + self.rem_first[pos] >= self.target[0]
            && c[1] + self.rem_last[pos] >= self.target[1]
            && c[2] <= self.target[2]
            && c[3] <= self.target[3]
    }
}

impl ReducedTensor {
    /// Build `Delta(w)` letter by letter.
    pub fn build(w: &Word, prune: &Pruning) -> Self {
        let n = w.n;
        let mut cur: HashMap<(Mono, Mono), IntPoly> =
            HashMap::from([((Mono::one(n), Mono::one(n)), IntPoly::one())]);
        let lb = prune.left_target.map(|t| CornerBound::new(&t, w, true));
        let rb = prune.right_target.map(|t| CornerBound::new(&t, w, false));
        for (pos, &g) in w.gens.iter().enumerate() {
            let mut next: HashMap<(Mono, Mono), IntPoly> = HashMap::with_capacity(cur.len() * 2);
            for ((l, r), c) in &cur {
                for k in 0..n as u8 {
                    if let Some(m) = prune.order {
                        // Row sums of the right leg count the middle indices.
                        let used: u32 = (0..n).map(|j| r.entry(k as usize, j)).sum();
                        if used as usize >= m {
                            continue;
                        }
                    }
                    let ls = normal::insert(*l, Gen::new(g.row, k));
                    let rs = normal::insert(*r, Gen::new(k, g.col));
                    for (l2, cl) in ls.iter() {
                        if let Some(b) = &lb {
                            if !b.feasible(l2, pos + 1) {
                                continue;
                            }
                        }
                        let ccl = c * cl;
                        for (r2, cr) in rs.iter() {
                            if let Some(b) = &rb {
                                if !b.feasible(r2, pos + 1) {
                                    continue;
                                }
                            }
                            *next.entry((*l2, *r2)).or_insert_with(IntPoly::zero) += &(&ccl * cr);
                        }
                    }
                }
            }
            next.retain(|_, c| !c.is_zero());
            cur = next;
        }
        ReducedTensor { n, terms: cur }
    }

    /// Legwise product.
    pub fn mul(&self, other: &ReducedTensor) -> ReducedTensor {
        let mut out: HashMap<(Mono, Mono), IntPoly> = HashMap::new();
        for ((l1, r1), c1) in &self.terms {
            for ((l2, r2), c2) in &other.terms {
                let c = c1 * c2;
                let ls = normal::mul_monos(l1, l2);
                let rs = normal::mul_monos(r1, r2);
                for (l, cl) in &ls {
                    let ccl = &c * cl;
                    for (r, cr) in &rs {
                        *out.entry((*l, *r)).or_insert_with(IntPoly::zero) += &(&ccl * cr);
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        ReducedTensor {
            n: self.n,
            terms: out,
        }
    }

    /// `Delta` of a normal-ordered polynomial.
    pub fn of_poly(p: &NCPoly, prune: &Pruning) -> ReducedTensor {
        let mut out: HashMap<(Mono, Mono), IntPoly> = HashMap::new();
        for (m, c) in p.terms() {
            for (k, v) in ReducedTensor::build(&m.to_word(), prune).terms {
                *out.entry(k).or_insert_with(IntPoly::zero) += &(c * &v);
            }
        }
        out.retain(|_, c| !c.is_zero());
        ReducedTensor { n: p.n(), terms: out }
    }

    /// Sum of the legs' contributions after applying a functional on one side.
    pub fn contract(
        &self,
        side: Side,
        mut h: impl FnMut(&Mono) -> Result<RationalFunction>,
    ) -> Result<NCPoly<RationalFunction>> {
        // Values go over one denominator so each kept leg costs a single reduction.
        let mut slot: HashMap<Mono, usize> = HashMap::new();
        let mut values = Vec::new();
        let mut by_kept: HashMap<Mono, Vec<(usize, &IntPoly)>> = HashMap::new();
        for (key, c) in &self.terms {
            let (kept, eaten) = match side {
                Side::Right => (key.0, key.1),
                Side::Left => (key.1, key.0),
            };
            let i = match slot.get(&eaten) {
                Some(&i) => i,
                None => {
                    values.push(h(&eaten)?);
                    slot.insert(eaten, values.len() - 1);
                    values.len() - 1
                }
            };
            by_kept.entry(kept).or_default().push((i, c));
        }
        let (den, nums) = RationalFunction::over_common_denominator(&values);
        let mut out = NCPoly::zero(self.n);
        for (kept, list) in by_kept {
            let low = list.iter().filter_map(|(_, c)| c.low_exp()).min().unwrap_or(0);
            let mut num = ZPoly::zero();
            for (i, c) in list {
                if nums[i].is_zero() || c.is_zero() {
                    continue;
                }
                let (p, s) = c.to_poly_shift();
                num = &num + &(&nums[i] * &p).shift_up((s - low) as usize);
            }
            let d = if low < 0 { den.shift_up(low.unsigned_abs() as usize) } else { den.clone() };
            let num = if low > 0 { num.shift_up(low as usize) } else { num };
            out.add_term(kept, &RationalFunction::new(num, d)?);
        }
        Ok(out)
    }

    /// Apply the counit on one leg.
    pub fn counit(&self, side: Side) -> NCPoly {
        let mut out = NCPoly::zero(self.n);
        for ((l, r), c) in &self.terms {
            let (kept, eaten) = match side {
                Side::Left => (r, l),
                Side::Right => (l, r),
            };
            let diag = (0..self.n)
                .flat_map(|i| (0..self.n).map(move |j| (i, j)))
                .all(|(i, j)| i == j || eaten.entry(i, j) == 0);
            if diag {
                out.add_term(*kept, c);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_of_x11_n2() {
        let w = Word::parse("x11", 2).unwrap();
        let d = delta(&w);
        let rendered: Vec<String> = d.terms.iter().map(|t| format!("{}|{}", t.left, t.right)).collect();
        assert_eq!(rendered, vec!["x11|x11", "x12|x21"]);
    }

    #[test]
    fn aek_has_six_surviving_terms() {
        let w = Word::parse("a e k", 3).unwrap();
        assert_eq!(delta(&w).len(), 27);
        let pr = delta_pruned(&w, Side::Right).unwrap();
        assert_eq!(pr.len(), 6);
        assert!(pr.terms.iter().all(|t| t.satisfies_order_restriction(&w)));
        assert!(delta_pruned(&Word::parse("a", 3).unwrap(), Side::Right).is_err());
    }
}
