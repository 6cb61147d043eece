//! Exact arithmetic in `Q(q)`.

mod laurent;
mod parse;
mod poly;
mod qnum;
pub mod linalg;
mod ratfunc;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

pub use laurent::IntPoly;
pub use parse::{parse_rational, parse_rational_number};
pub use poly::ZPoly;
pub use qnum::{binomial, q2_binomial, q2_factorial, q2_int, q_binom_and_factorial};
pub use ratfunc::RationalFunction;

/// Writes `c*q^e` terms (already in the desired order) as `2*q^4 - q + 1`.
pub(crate) fn fmt_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i64, &'a BigInt)>,
) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        let neg = c.is_negative();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        let a = c.abs();
        match e {
            0 => write!(f, "{a}")?,
            _ => {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                match e {
                    1 => f.write_str("q")?,
                    _ => write!(f, "q^{e}")?,
                }
            }
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}
