//! q-integers in base `q^2` and ordinary binomials.

use num_bigint::BigInt;
use num_traits::One;

use super::{RationalFunction, ZPoly};

/// `[n]_{q^2} = 1 + q^2 + ... + q^{2(n-1)}`.
pub fn q2_int(n: u32) -> ZPoly {
    ZPoly::from_coeffs(
        (0..2 * n as usize)
            .map(|i| BigInt::from(((i % 2) == 0 && n > 0) as i32))
            .collect(),
    )
}

/// `[n]_{q^2}! = prod_{j=1}^n [j]_{q^2}`.
pub fn q2_factorial(n: u32) -> ZPoly {
    (1..=n).fold(ZPoly::one(), |acc, j| &acc * &q2_int(j))
}

/// Gaussian binomial in base `q^2`.
pub fn q2_binomial(n: u32, k: u32) -> ZPoly {
    assert!(k <= n);
    let num = &q2_factorial(n);
    let den = &q2_factorial(k) * &q2_factorial(n - k);
    num.div_exact(&den).expect("Gaussian binomial is a polynomial")
}

/// Ordinary binomial coefficient; zero when `k > n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::from(0);
    }
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// `([n]_{q^2}, [n]_{q^2}!, binom(n, k))`.
pub fn q_binom_and_factorial(n: u32, k: u32) -> (RationalFunction, RationalFunction, BigInt) {
    assert!(k <= n);
    (
        RationalFunction::from_poly(q2_int(n)),
        RationalFunction::from_poly(q2_factorial(n)),
        binomial(n as i64, k as i64),
    )
}
