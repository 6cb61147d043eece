//! Quantum determinant, antipode and the modular automorphism.

use super::gen::{Gen, Word};
use super::mono::Mono;
use super::ncpoly::NCPoly;
use super::normal::normal_form;
use crate::error::{Error, Result};
use crate::qfield::IntPoly;

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Inversion count.
pub fn length_of(perm: &[usize]) -> usize {
    let mut l = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                l += 1;
            }
        }
    }
    l
}

/// `(-q)^e`.
pub fn minus_q_pow(e: i32) -> IntPoly {
    IntPoly::monomial(if e.rem_euclid(2) == 0 { 1 } else { -1 }, e)
}

/// Quantum minor on sorted row and column index sets.
fn quantum_minor(n: usize, rows: &[usize], cols: &[usize]) -> NCPoly {
    let mut acc = NCPoly::zero(n);
    for sigma in permutations(rows.len()) {
        let w = Word::new(
            n,
            rows.iter()
                .zip(&sigma)
                .map(|(&r, &s)| Gen::new(r as u8, cols[s] as u8))
                .collect(),
        );
        acc = acc.add(&normal_form(&w).scale(&minus_q_pow(length_of(&sigma) as i32)));
    }
    acc
}

/// `D_q = sum_s (-q)^{l(s)} x_{1 s(1)} ... x_{n s(n)}` in normal form.
pub fn quantum_determinant(n: usize) -> NCPoly {
    let all: Vec<usize> = (0..n).collect();
    quantum_minor(n, &all, &all)
}

/// `S(x_ij) = (-q)^{i-j}` times the quantum minor with row `j` and column `i`
/// removed. Implemented for `n <= 3`.
pub fn antipode(g: Gen, n: usize) -> Result<NCPoly> {
    if !(1..=3).contains(&n) {
        return Err(Error::UnsupportedN(n));
    }
    let (i, j) = (g.row as usize, g.col as usize);
    let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
    let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
    let minor = if rows.is_empty() {
        NCPoly::one(n)
    } else {
        quantum_minor(n, &rows, &cols)
    };
    Ok(minor.scale(&minus_q_pow(i as i32 - j as i32)))
}

/// `phi(x_ij) = q^{2(i+j-4)} x_ij` on `O(M_q(3))`, extended multiplicatively.
/// Since it rescales generators, it acts diagonally on normal-ordered words.
pub fn phi_automorphism(x: &NCPoly) -> Result<NCPoly> {
    if x.n() != 3 {
        return Err(Error::UnsupportedN(x.n()));
    }
    let mut out = NCPoly::zero(3);
    for (m, c) in x.terms() {
        out.add_term(*m, &c.shift(2 * phi_weight(m)));
    }
    Ok(out)
}

fn phi_weight(m: &Mono) -> i32 {
    let mut w = 0;
    for i in 0..3 {
        for j in 0..3 {
            w += m.entry(i, j) as i32 * (i as i32 + j as i32 - 2);
        }
    }
    w
}
