//! Order-one values for any `n`.

use crate::algebra::length_of;
use crate::qfield::{q2_factorial, IntPoly, RationalFunction};

/// `h(x_{1 tau(1)} ... x_{n tau(n)}) = (-q)^{l(tau)} / [n]_{q^2}!`.
pub fn order1_haar(n: usize, tau: &[usize]) -> RationalFunction {
    assert_eq!(tau.len(), n, "permutation of the wrong size");
    let l = length_of(tau) as i32;
    let sign = if l % 2 == 0 { 1 } else { -1 };
    let num = RationalFunction::from(IntPoly::monomial(sign, l));
    let den = RationalFunction::from_poly(q2_factorial(n as u32));
    num.checked_div(&den).expect("nonzero q-factorial")
}

