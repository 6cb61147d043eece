//! Reordering identities between segment products, as fixtures for the rewriter.

use std::collections::BTreeMap;

use super::basis::decompose_to_basis;
use super::relation::segments_label;
use super::standard::{parse_segments, segments_word, StandardMonomial};
use crate::algebra::{normal_form, Coeff, NCPoly};
use crate::qfield::parse_rational;
use crate::{RationalFunction, Result};

/// `lhs = sum coeff * word`, all sides written as segment products.
#[derive(Clone, Debug)]
pub struct SegmentIdentity {
    pub label: &'static str,
    pub lhs: &'static str,
    pub rhs: Vec<(&'static str, &'static str)>,
}

pub fn reordering_identities() -> Vec<SegmentIdentity> {
    let id = |label, lhs, rhs: &[(&'static str, &'static str)]| SegmentIdentity { label, lhs, rhs: rhs.to_vec() };
    vec![
        id("1a", "ceg aek", &[("1", "aek ceg"), ("q^3 - q", "afh ceg"), ("-(q - 1/q)", "bdk ceg"), ("-(q^2 - 1)^2/q", "bfg cdh")]),
        id("1b", "ceg afh", &[("q^2", "afh ceg"), ("1 - q^2", "bfg cdh")]),
        id("1c", "ceg bdk", &[("q^-2", "bdk ceg"), ("1 - q^-2", "bfg cdh")]),
        id("2a", "cdh aek", &[("1", "aek cdh"), ("q^4 - q^2", "afh ceg"), ("1 - q^2", "bdk ceg"), ("-(q^2 - 1)^2", "bfg cdh")]),
        id("2b", "cdh afh", &[("1", "afh cdh"), ("q^3 - q", "afh ceg"), ("-(q^3 - q)", "bfg cdh")]),
        id("2c", "cdh bdk", &[("1", "bdk cdh"), ("-(q - 1/q)", "bdk ceg"), ("q - 1/q", "bfg cdh")]),
        id("3a", "bfg aek", &[("1", "aek bfg"), ("q^4 - q^2", "afh ceg"), ("1 - q^2", "bdk ceg"), ("-(q^2 - 1)^2", "bfg cdh")]),
        id("3b", "bfg afh", &[("1", "afh bfg"), ("q^3 - q", "afh ceg"), ("-(q^3 - q)", "bfg cdh")]),
        id("3c", "bfg bdk", &[("1", "bdk bfg"), ("-(q - 1/q)", "bdk ceg"), ("q - 1/q", "bfg cdh")]),
        id(
            "4",
            "bdk afh",
            &[
                ("q^-2", "afh bdk"),
                ("1 - q^-2", "aek bfg"),
                ("1 - q^-2", "aek cdh"),
                ("-(q^2 - 1)^2/q^3", "aek ceg"),
                ("(q^2 - 1)^2*(q^2 + 1)/q^2", "afh ceg"),
                ("-(q^4 - q^2)", "bfg cdh"),
            ],
        ),
        id(
            "5",
            "afh aek",
            &[
                ("1", "aek afh"),
                ("q - 1/q", "afh bdk"),
                ("-(q - 1/q)", "aek bfg"),
                ("-(q - 1/q)", "aek cdh"),
                ("(q - 1/q)^2", "aek ceg"),
                ("q - 1/q", "afh ceg"),
            ],
        ),
        id(
            "6",
            "bdk aek",
            &[
                ("1", "aek bdk"),
                ("-(q - 1/q)", "afh bdk"),
                ("q - 1/q", "aek bfg"),
                ("q - 1/q", "aek cdh"),
                ("-(q - 1/q)^2", "aek ceg"),
                ("(q^2 - 1)^2*(q^2 + 1)/q", "afh ceg"),
                ("-(q^3 - q)", "bdk ceg"),
                ("-q*(q^2 - 1)^2", "bfg cdh"),
            ],
        ),
        id(
            "7",
            "afh bdk ceg",
            &[
                ("q", "aek bfg cdh"),
                ("1 - q^2", "aek bfg ceg"),
                ("1 - q^2", "aek cdh ceg"),
                ("(q^2 - 1)^2/q", "aek ceg^2"),
                ("1 - q^2", "afh bfg cdh"),
                ("q^3 - q", "afh bfg ceg"),
                ("q^3 - q", "afh cdh ceg"),
                ("-(q^2 - 1)^2", "afh ceg^2"),
            ],
        ),
        id(
            "8",
            "bdk afh ceg",
            &[
                ("1/q", "aek bfg cdh"),
                ("-(1 - q^-2)", "afh bfg cdh"),
                ("q - q^-1", "afh bfg ceg"),
                ("q - q^-1", "afh cdh ceg"),
                ("(q^2 - 1)^2", "afh ceg^2"),
                ("-(q^4 - q^2)", "bfg cdh ceg^2"),
            ],
        ),
    ]
}

fn segment_poly(s: &str) -> Result<NCPoly<RationalFunction>> {
    Ok(normal_form(&segments_word(&parse_segments(s)?)).to_rational())
}

impl SegmentIdentity {
    /// `nf(lhs) - sum coeff * nf(word)`; zero iff the identity holds in `O(M_q(3))`.
    pub fn defect(&self) -> Result<NCPoly<RationalFunction>> {
        let mut acc = segment_poly(self.lhs)?;
        for (c, w) in &self.rhs {
            acc = acc.sub(&segment_poly(w)?.scale(&parse_rational(c)?));
        }
        Ok(acc)
    }

    pub fn holds(&self) -> Result<bool> {
        Ok(self.defect()?.is_zero())
    }

    /// The left side over the standard-monomial basis, as the engine computes it.
    pub fn rederive(&self) -> Result<BTreeMap<StandardMonomial, RationalFunction>> {
        decompose_to_basis(&segments_word(&parse_segments(self.lhs)?))
    }
}

/// `c1 * word1 + c2 * word2 ...`, highest monomial first.
pub fn render_combination(terms: &BTreeMap<StandardMonomial, RationalFunction>) -> String {
    let mut out = String::new();
    for (k, (s, c)) in terms.iter().rev().enumerate() {
        let (neg, mag, paren) = c.render();
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if mag != "1" {
            if paren {
                out.push_str(&format!("({mag}) * "));
            } else {
                out.push_str(&format!("{mag} * "));
            }
        }
        out.push_str(&segments_label(&s.to_word_segments()));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
