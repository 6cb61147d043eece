//! Normal ordering by the quadratic relations of `O(M_q(n))`.
//!
//! The fast path works on counting matrices: a normal-ordered word is
//! determined by its counts, and `insert(N, g)` computes the normal form of
//! `N * g` by moving `g` leftwards past the largest generator of `N`. Results
//! are memoized per thread.
//!
//! A separate naive rewriter on raw words is kept for confluence and
//! termination checks.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use super::gen::{Gen, Word};
use super::mono::Mono;
use super::ncpoly::NCPoly;
use crate::qfield::IntPoly;

/// One rewrite `last * g -> sum c * u * v` for a descending pair `last > g`.
/// Each `(u, v)` is itself in order.
pub fn rewrite(last: Gen, g: Gen) -> Vec<(IntPoly, Gen, Gen)> {
    debug_assert!(last > g);
    let (j, l) = (last.row, last.col);
    let (i, k) = (g.row, g.col);
    if i == j || l == k {
        // same row or same column
        vec![(IntPoly::q_pow(-1), g, last)]
    } else if l < k {
        vec![(IntPoly::one(), g, last)]
    } else {
        vec![
            (IntPoly::one(), g, last),
            (
                IntPoly::from_terms([(-1, 1), (1, -1)]),
                Gen::new(i, l),
                Gen::new(j, k),
            ),
        ]
    }
}

type Terms = Rc<Vec<(Mono, IntPoly)>>;

thread_local! {
    static MEMO: RefCell<HashMap<(Mono, Gen), Terms>> = RefCell::new(HashMap::new());
}

/// Drop this thread's normal-ordering cache.
pub fn clear_memo() {
    MEMO.with(|m| m.borrow_mut().clear());
}

/// Number of cached `insert` results on this thread.
pub fn memo_len() -> usize {
    MEMO.with(|m| m.borrow().len())
}

/// Normal form of `N * g` for a normal-ordered `N`.
pub fn insert(m: Mono, g: Gen) -> Terms {
    match m.max_gen() {
        None => return Rc::new(vec![(m.with(g), IntPoly::one())]),
        Some(last) if last <= g => return Rc::new(vec![(m.with(g), IntPoly::one())]),
        _ => {}
    }
    if let Some(hit) = MEMO.with(|memo| memo.borrow().get(&(m, g)).cloned()) {
        return hit;
    }
    let last = m.max_gen().unwrap();
    let rest = m.without(last);
    let mut acc: HashMap<Mono, IntPoly> = HashMap::new();
    for (c, u, v) in rewrite(last, g) {
        for (m1, c1) in insert(rest, u).iter() {
            let c01 = &c * c1;
            for (m2, c2) in insert(*m1, v).iter() {
                let e = acc.entry(*m2).or_insert_with(IntPoly::zero);
                *e += &(&c01 * c2);
            }
        }
    }
    let mut out: Vec<(Mono, IntPoly)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    let out = Rc::new(out);
    MEMO.with(|memo| memo.borrow_mut().insert((m, g), out.clone()));
    out
}

/// Normal form of the product of two normal-ordered words.
pub fn mul_monos(a: &Mono, b: &Mono) -> Vec<(Mono, IntPoly)> {
    let mut cur: Vec<(Mono, IntPoly)> = vec![(*a, IntPoly::one())];
    for g in b.to_word().gens {
        let mut next: HashMap<Mono, IntPoly> = HashMap::new();
        for (m, c) in &cur {
            for (m2, c2) in insert(*m, g).iter() {
                *next.entry(*m2).or_insert_with(IntPoly::zero) += &(c * c2);
            }
        }
        cur = next.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    }
    cur.sort_by(|x, y| x.0.cmp(&y.0));
    cur
}

/// Normal form of a raw word.
pub fn normal_form(w: &Word) -> NCPoly<IntPoly> {
    let mut cur: HashMap<Mono, IntPoly> = HashMap::from([(Mono::one(w.n), IntPoly::one())]);
    for &g in &w.gens {
        let mut next: HashMap<Mono, IntPoly> = HashMap::with_capacity(cur.len());
        for (m, c) in &cur {
            for (m2, c2) in insert(*m, g).iter() {
                *next.entry(*m2).or_insert_with(IntPoly::zero) += &(c * c2);
            }
        }
        next.retain(|_, c| !c.is_zero());
        cur = next;
    }
    let mut p = NCPoly::zero(w.n);
    for (m, c) in cur {
        p.add_term(m, &c);
    }
    p
}

/// Which descent the naive rewriter resolves first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Positions `p` with `w[p] > w[p + 1]`.
pub fn descents(w: &[Gen]) -> Vec<usize> {
    (0..w.len().saturating_sub(1))
        .filter(|&p| w[p] > w[p + 1])
        .collect()
}

pub fn inversions(w: &[Gen]) -> usize {
    let mut n = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                n += 1;
            }
        }
    }
    n
}

/// Apply the rewrite rule at a descent position of a raw word.
pub fn apply_at(w: &[Gen], p: usize) -> Vec<(IntPoly, Vec<Gen>)> {
    rewrite(w[p], w[p + 1])
        .into_iter()
        .map(|(c, u, v)| {
            let mut out = w.to_vec();
            out[p] = u;
            out[p + 1] = v;
            (c, out)
        })
        .collect()
}

/// Normal form by plain term rewriting on raw words.
pub fn naive_normal_form(w: &Word, strategy: Strategy) -> NCPoly<IntPoly> {
    let mut pending: HashMap<Vec<Gen>, IntPoly> = HashMap::from([(w.gens.clone(), IntPoly::one())]);
    let mut done = NCPoly::zero(w.n);
    while !pending.is_empty() {
        let mut next: HashMap<Vec<Gen>, IntPoly> = HashMap::new();
        for (word, c) in pending {
            let d = descents(&word);
            let p = match strategy {
                Strategy::Leftmost => d.first(),
                Strategy::Rightmost => d.last(),
            };
            match p {
                None => done.add_term(Mono::from_word(&Word::new(w.n, word)), &c),
                Some(&p) => {
                    for (c2, w2) in apply_at(&word, p) {
                        *next.entry(w2).or_insert_with(IntPoly::zero) += &(&c * &c2);
                    }
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        pending = next;
    }
    done
}
