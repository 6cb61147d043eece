//! Words with starred generators, `x_ij^* = S(x_ji)`, and the q-Weingarten examples.

use num_rational::BigRational;

use crate::algebra::{antipode, normal_form, phi_automorphism, Gen, NCPoly, Word, MAX_N};
use crate::haar3::HaarStore;
use crate::qfield::parse_rational;
use crate::{Error, RationalFunction, Result};

/// A product of generators, some of them starred.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarWord {
    pub n: usize,
    pub letters: Vec<(Gen, bool)>,
}

impl StarWord {
    /// Tokens as in [`Word::parse`], each optionally followed by `*`.
    pub fn parse(s: &str, n: usize) -> Result<StarWord> {
        if !(2..=3).contains(&n) {
            return Err(Error::UnsupportedN(n));
        }
        let chars: Vec<char> = s.chars().collect();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let (g, len) = if c == 'x' {
                let d = |k: usize| chars.get(i + k).and_then(|c| c.to_digit(10));
                match (d(1), d(2)) {
                    (Some(r), Some(c)) if (1..=n as u32).contains(&r) && (1..=n as u32).contains(&c) => {
                        (Gen::new(r as u8 - 1, c as u8 - 1), 3)
                    }
                    _ => return Err(Error::Parse { pos: i, msg: format!("bad generator token for n = {n}") }),
                }
            } else {
                match Gen::from_letter(c) {
                    Some(g) if n == 3 => (g, 1),
                    _ => return Err(Error::Parse { pos: i, msg: format!("unexpected character {c:?}") }),
                }
            };
            i += len;
            let star = chars.get(i) == Some(&'*');
            if star {
                i += 1;
            }
            letters.push((g, star));
        }
        Ok(StarWord { n, letters })
    }

    pub fn parse_auto(s: &str) -> Result<StarWord> {
        if s.chars().any(|c| Gen::from_letter(c).is_some()) {
            return StarWord::parse(s, 3);
        }
        let n = s.chars().filter_map(|c| c.to_digit(10)).max().unwrap_or(2).clamp(2, MAX_N as u32);
        StarWord::parse(s, n as usize)
    }
}

/// Expand every `x_ij^*` as `S(x_ji)` and multiply out in normal form.
pub fn star_expand(w: &StarWord) -> Result<NCPoly> {
    if !(2..=3).contains(&w.n) {
        return Err(Error::UnsupportedN(w.n));
    }
    let mut acc = NCPoly::one(w.n);
    for &(g, star) in &w.letters {
        let f = if star {
            antipode(Gen::new(g.col, g.row), w.n)?
        } else {
            normal_form(&Word::new(w.n, vec![g]))
        };
        acc = acc.mul(&f);
    }
    Ok(acc)
}

/// One printed example: starred word and its stated value.
#[derive(Clone, Debug)]
pub struct WgExample {
    pub id: usize,
    pub variant: usize,
    pub word: &'static str,
    pub expected: String,
    /// Classical Weingarten value at `q = 1`, as `(numerator, denominator)`.
    pub classical: (i64, i64),
}

const D1: &str = "((q^2+1)^2*(q^4+1))";
const D2: &str = "((q^2+1)^2*(q^4+1)*(q^4+q^2+1))";

pub fn examples() -> Vec<WgExample> {
    let e = |id, variant, word, expected: String, classical| WgExample {
        id,
        variant,
        word,
        expected,
        classical,
    };
    vec![
        e(1, 1, "a e a* e*", format!("q^2/{D1}"), (1, 8)),
        e(1, 2, "e a a* e*", format!("q^2/{D1}*(q^6+q^2+1)/(q^4+q^2+1)"), (1, 8)),
        e(1, 3, "a e e* a*", format!("1/{D1}*(q^6+q^4+1)/(q^4+q^2+1)"), (1, 8)),
        e(1, 4, "a a* e e*", format!("q^2/{D1}"), (1, 8)),
        e(2, 1, "a h g* b*", format!("-q/{D2}"), (-1, 24)),
        e(2, 2, "h a g* b*", format!("-q^7/{D2}"), (-1, 24)),
        e(2, 3, "a h b* g*", format!("-q/{D2}"), (-1, 24)),
        e(2, 4, "a b* h g*", format!("-q^4/{D2}"), (-1, 24)),
        e(3, 1, "a a a* a*", "1/((q^4+1)*(q^4+q^2+1))".into(), (1, 6)),
        e(3, 2, "a a* a a*", "(q^4-q^2+1)/((q^4+1)*(q^4+q^2+1))".into(), (1, 6)),
    ]
}

pub fn example(id: usize, variant: usize) -> Result<WgExample> {
    examples()
        .into_iter()
        .find(|e| e.id == id && e.variant == variant)
        .ok_or_else(|| Error::UnknownValue(format!("example {id}.{variant}")))
}

impl WgExample {
    pub fn expected_value(&self) -> RationalFunction {
        parse_rational(&self.expected).expect("example values parse")
    }
}

/// Haar value of a starred word.
pub fn haar_star(w: &StarWord, store: &mut HaarStore) -> Result<RationalFunction> {
    store.haar_poly(&star_expand(w)?)
}

/// Engine value of a printed example.
pub fn wg_example(id: usize, variant: usize, store: &mut HaarStore) -> Result<RationalFunction> {
    haar_star(&StarWord::parse(example(id, variant)?.word, 3)?, store)
}

/// Value at `q = 1`.
pub fn classical_limit(v: &RationalFunction) -> Result<BigRational> {
    v.eval_at(&BigRational::from_integer(1.into()))
}

/// `(h(y phi(x)), h(x y))`; the two agree for a Haar state with modular map `phi`.
pub fn phi_twist_pair(x: &Word, y: &Word, store: &mut HaarStore) -> Result<(RationalFunction, RationalFunction)> {
    let yx = NCPoly::from_word(y).mul(&phi_automorphism(&NCPoly::from_word(x))?);
    let lhs = store.haar_poly(&yx)?;
    let rhs = store.haar_word(&x.concat(y))?;
    Ok((lhs, rhs))
}
