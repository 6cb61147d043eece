//! Standard monomials of `O(SL_q(3))` and the Birkhoff decomposition.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{Gen, Mono, Word};
use crate::error::{Error, Result};

/// Segment names in the fixed product order.
pub const SEGMENT_NAMES: [&str; 6] = ["aek", "afh", "bdk", "bfg", "cdh", "ceg"];

/// Column of each row for the six permutation segments.
pub const SEGMENT_PERMS: [[usize; 3]; 6] = [
    [0, 1, 2], // aek
    [0, 2, 1], // afh
    [1, 0, 2], // bdk
    [1, 2, 0], // bfg
    [2, 0, 1], // cdh
    [2, 1, 0], // ceg
];

/// Segment indices in the order S1..S6 of the permutation-matrix display.
pub const S_ORDER: [usize; 6] = [0, 1, 5, 2, 3, 4];

pub const AEK: usize = 0;
pub const AFH: usize = 1;
pub const BDK: usize = 2;
pub const BFG: usize = 3;
pub const CDH: usize = 4;
pub const CEG: usize = 5;

/// `(aek)^m1 (afh)^m2 (bdk)^m3 (bfg)^m4 (cdh)^m5 (ceg)^m6`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardMonomial {
    pub exps: [u32; 6],
}

impl StandardMonomial {
    pub const fn new(exps: [u32; 6]) -> Self {
        StandardMonomial { exps }
    }

    pub fn one() -> Self {
        Self::default()
    }

    /// A single segment to a power.
    pub fn seg(s: usize, p: u32) -> Self {
        let mut e = [0; 6];
        e[s] = p;
        StandardMonomial { exps: e }
    }

    /// Product in segment order (exponents add).
    pub fn times(&self, other: &Self) -> Self {
        let mut e = self.exps;
        for (a, b) in e.iter_mut().zip(other.exps) {
            *a += b;
        }
        StandardMonomial { exps: e }
    }

    pub fn order(&self) -> usize {
        self.exps.iter().sum::<u32>() as usize
    }

    pub fn is_basis(&self) -> bool {
        self.exps[AFH] * self.exps[BDK] * self.exps[CEG] == 0
    }

    /// Number of high-complexity segments (aek, afh, bdk).
    pub fn high_count(&self) -> u32 {
        self.exps[..3].iter().sum()
    }

    pub fn to_word(&self) -> Word {
        segments_word(&self.to_word_segments())
    }

    /// Segment indices in product order.
    pub fn to_word_segments(&self) -> Vec<usize> {
        self.exps
            .iter()
            .enumerate()
            .flat_map(|(s, &p)| std::iter::repeat(s).take(p as usize))
            .collect()
    }

    pub fn mono(&self) -> Mono {
        let mut m = Mono::one(3);
        for (s, &p) in self.exps.iter().enumerate() {
            for (i, &j) in SEGMENT_PERMS[s].iter().enumerate() {
                for _ in 0..p {
                    m = m.with(Gen::new(i as u8, j as u8));
                }
            }
        }
        m
    }
}

/// The word of a product of segments taken in the given order.
pub fn segments_word(segs: &[usize]) -> Word {
    let gens = segs
        .iter()
        .flat_map(|&s| {
            SEGMENT_PERMS[s]
                .iter()
                .enumerate()
                .map(|(i, &j)| Gen::new(i as u8, j as u8))
        })
        .collect();
    Word::new(3, gens)
}

/// Parse a product of segments such as `"aek^2 ceg"`, `"(aek)^2ceg"` or
/// `"afh bdk ceg"`. Segments may come in any order; the result is a word.
pub fn parse_segments(s: &str) -> Result<Vec<usize>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |pos: usize, msg: &str| Error::Parse {
        pos,
        msg: msg.to_string(),
    };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() || c == '*' || c == '(' || c == ')' {
            i += 1;
            continue;
        }
        if c == '1' && s.trim() == "1" {
            i += 1;
            continue;
        }
        let tok: String = chars[i..(i + 3).min(chars.len())].iter().collect();
        let seg = SEGMENT_NAMES
            .iter()
            .position(|&n| n == tok)
            .ok_or_else(|| err(i, "expected a segment name"))?;
        i += 3;
        while i < chars.len() && chars[i] == ')' {
            i += 1;
        }
        let mut power = 1usize;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            power = chars[start..i]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| err(start, "expected exponent"))?;
        }
        out.extend(std::iter::repeat(seg).take(power));
    }
    Ok(out)
}

impl FromStr for StandardMonomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let segs = parse_segments(s)?;
        if segs.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Parse {
                pos: 0,
                msg: "segments out of standard order".into(),
            });
        }
        let mut e = [0u32; 6];
        for s in segs {
            e[s] += 1;
        }
        Ok(StandardMonomial { exps: e })
    }
}

impl fmt::Display for StandardMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order() == 0 {
            return f.write_str("1");
        }
        let mut first = true;
        for (s, &p) in self.exps.iter().enumerate() {
            if p == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            f.write_str(SEGMENT_NAMES[s])?;
            if p > 1 {
                write!(f, "^{p}")?;
            }
        }
        Ok(())
    }
}

/// `M = a F + N` with `N` decomposed over the six permutation matrices.
///
/// Returns `a` and the exponents of the basis standard monomial whose
/// counting matrix is `M` (the all-ones part is taken as `aek bfg cdh`).
pub fn birkhoff_decompose(m: &Mono) -> Result<(u32, StandardMonomial)> {
    if m.n() != 3 || m.doubly_stochastic_order().is_none() {
        return Err(Error::NotDoublyStochastic(format!("{:?}", m.matrix())));
    }
    let entries = m.matrix();
    let a = entries.iter().flatten().copied().min().unwrap();
    let nm: Vec<Vec<u32>> = entries.iter().map(|r| r.iter().map(|x| x - a).collect()).collect();
    // Segments through a zero entry of N vanish.
    let (zi, zj) = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .find(|&(i, j)| nm[i][j] == 0)
        .unwrap();
    let live: Vec<usize> = (0..6).filter(|&s| SEGMENT_PERMS[s][zi] != zj).collect();
    let mut e = [0u32; 6];
    for &s in &live {
        // An entry covered by no other live segment fixes the coefficient.
        let own = (0..3).find(|&i| {
            live.iter()
                .all(|&t| t == s || SEGMENT_PERMS[t][i] != SEGMENT_PERMS[s][i])
        });
        let i = own.expect("each live segment owns an entry");
        e[s] = nm[i][SEGMENT_PERMS[s][i]];
    }
    e[AEK] += a;
    e[BFG] += a;
    e[CDH] += a;
    let sm = StandardMonomial { exps: e };
    if sm.mono() != *m {
        return Err(Error::NotDoublyStochastic(format!("{:?}", m.matrix())));
    }
    Ok((a, sm))
}

/// All exponent vectors of total `m`.
pub fn all_standard(m: usize) -> Vec<StandardMonomial> {
    let mut out = Vec::new();
    let mut e = [0u32; 6];
    fn go(pos: usize, left: u32, e: &mut [u32; 6], out: &mut Vec<StandardMonomial>) {
        if pos == 5 {
            e[5] = left;
            out.push(StandardMonomial { exps: *e });
            return;
        }
        for v in (0..=left).rev() {
            e[pos] = v;
            go(pos + 1, left - v, e, out);
        }
    }
    go(0, m as u32, &mut e, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let s: StandardMonomial = "aek^2 ceg".parse().unwrap();
        assert_eq!(s.exps, [2, 0, 0, 0, 0, 1]);
        assert_eq!(s.to_string(), "aek^2 ceg");
        let t: StandardMonomial = "(aek)^2ceg".parse().unwrap();
        assert_eq!(s, t);
        assert_eq!(s.to_word().to_string(), "a e k a e k c e g");
        assert!("ceg aek".parse::<StandardMonomial>().is_err());
        assert_eq!(parse_segments("ceg aek").unwrap(), vec![CEG, AEK]);
    }

    #[test]
    fn birkhoff_examples() {
        let f = Mono::from_matrix(3, &[vec![1, 1, 1], vec![1, 1, 1], vec![1, 1, 1]]);
        let (a, s) = birkhoff_decompose(&f).unwrap();
        assert_eq!((a, s.exps), (1, [1, 0, 0, 1, 1, 0]));
        let id = Mono::from_matrix(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(birkhoff_decompose(&id).unwrap().1.exps, [1, 0, 0, 0, 0, 0]);
        let bad = Mono::from_matrix(3, &[vec![1, 0, 0], vec![0, 0, 0], vec![0, 0, 1]]);
        assert!(birkhoff_decompose(&bad).is_err());
    }

    #[test]
    fn basis_counts() {
        let counts: Vec<usize> = (1..=5)
            .map(|m| all_standard(m).into_iter().filter(|s| s.is_basis()).count())
            .collect();
        assert_eq!(counts, vec![6, 21, 55, 120, 231]);
    }
}
