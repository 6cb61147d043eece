//! Generators `x_ij` and raw words.

use std::fmt;

use crate::error::{Error, Result};

/// Letter aliases for `n = 3`, row-major.
pub const LETTERS: [char; 9] = ['a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'k'];

/// Largest supported matrix size.
pub const MAX_N: usize = 4;

/// The generator `x_{row+1, col+1}` (fields are zero-based).
///
/// The derived order is row-major, which is the normal-ordering order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    pub row: u8,
    pub col: u8,
}

impl Gen {
    pub const fn new(row: u8, col: u8) -> Self {
        Gen { row, col }
    }

    /// Slot in a 4x4 row-major array.
    #[inline]
    pub const fn index(self) -> usize {
        self.row as usize * MAX_N + self.col as usize
    }

    #[inline]
    pub const fn from_index(i: usize) -> Self {
        Gen {
            row: (i / MAX_N) as u8,
            col: (i % MAX_N) as u8,
        }
    }

    pub fn letter(self) -> Option<char> {
        (self.row < 3 && self.col < 3).then(|| LETTERS[self.row as usize * 3 + self.col as usize])
    }

    pub fn from_letter(c: char) -> Option<Self> {
        let i = LETTERS.iter().position(|&l| l == c)?;
        Some(Gen::new((i / 3) as u8, (i % 3) as u8))
    }

    pub fn render(self, n: usize) -> String {
        match (n, self.letter()) {
            (3, Some(c)) => c.to_string(),
            _ => format!("x{}{}", self.row + 1, self.col + 1),
        }
    }
}

/// A finite, not necessarily ordered, product of generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub n: usize,
    pub gens: Vec<Gen>,
}

impl Word {
    pub fn new(n: usize, gens: Vec<Gen>) -> Self {
        debug_assert!(gens.iter().all(|g| (g.row as usize) < n && (g.col as usize) < n));
        Word { n, gens }
    }

    pub fn empty(n: usize) -> Self {
        Word { n, gens: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        assert_eq!(self.n, other.n);
        let mut gens = self.gens.clone();
        gens.extend_from_slice(&other.gens);
        Word { n: self.n, gens }
    }

    /// The product of permutation generators `x_{1,s(1)} ... x_{n,s(n)}`.
    pub fn from_permutation(perm: &[usize]) -> Word {
        let n = perm.len();
        Word::new(
            n,
            perm.iter()
                .enumerate()
                .map(|(i, &j)| Gen::new(i as u8, j as u8))
                .collect(),
        )
    }

    /// Parse whitespace-separated tokens `x{i}{j}` or, for `n = 3`, letters.
    ///
    /// Letters may also be run together (`"aek"`). `1` denotes the empty word.
    pub fn parse(s: &str, n: usize) -> Result<Word> {
        if !(1..=MAX_N).contains(&n) {
            return Err(Error::UnsupportedN(n));
        }
        let mut gens = Vec::new();
        let bytes: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            if c.is_whitespace() || c == '*' || c == '.' {
                i += 1;
                continue;
            }
            if c == '1' && gens.is_empty() && s.trim() == "1" {
                i += 1;
                continue;
            }
            let err = |msg: String| Error::Parse { pos: i, msg };
            if c == 'x' {
                let (r, col) = match (bytes.get(i + 1), bytes.get(i + 2)) {
                    (Some(r), Some(cc)) => (r.to_digit(10), cc.to_digit(10)),
                    _ => (None, None),
                };
                match (r, col) {
                    (Some(r), Some(cc)) if r >= 1 && cc >= 1 && r as usize <= n && cc as usize <= n => {
                        gens.push(Gen::new(r as u8 - 1, cc as u8 - 1));
                        i += 3;
                    }
                    _ => return Err(err(format!("bad generator token for n = {n}"))),
                }
                continue;
            }
            match Gen::from_letter(c) {
                Some(g) if n == 3 => {
                    gens.push(g);
                    i += 1;
                }
                Some(_) => return Err(err("letter aliases need n = 3".into())),
                None => return Err(err(format!("unexpected character {c:?}"))),
            }
        }
        Ok(Word { n, gens })
    }

    /// Parse, taking `n = 3` when letters are used and otherwise the largest
    /// index seen (at least 2).
    pub fn parse_auto(s: &str) -> Result<Word> {
        if s.chars().any(|c| Gen::from_letter(c).is_some()) {
            return Word::parse(s, 3);
        }
        let max_digit = s
            .chars()
            .filter_map(|c| c.to_digit(10))
            .max()
            .unwrap_or(2)
            .max(2) as usize;
        Word::parse(s, max_digit.min(MAX_N))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return f.write_str("1");
        }
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&g.render(self.n))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_letters_and_indices() {
        let w = Word::parse("c e g a e k", 3).unwrap();
        assert_eq!(w.to_string(), "c e g a e k");
        assert_eq!(Word::parse("aek", 3).unwrap().len(), 3);
        let w = Word::parse("x13 x21", 3).unwrap();
        assert_eq!(w.gens, vec![Gen::new(0, 2), Gen::new(1, 0)]);
        assert_eq!(Word::parse("x12 x21", 2).unwrap().to_string(), "x12 x21");
        assert!(Word::parse("x31", 2).is_err());
        assert!(Word::parse("a z", 3).is_err());
    }

    #[test]
    fn order_is_row_major() {
        assert!(Gen::new(0, 2) < Gen::new(1, 0));
        assert!(Gen::new(1, 0) < Gen::new(1, 1));
    }
}
