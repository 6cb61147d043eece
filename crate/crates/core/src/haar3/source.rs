//! The seven-unknown system around `(ceg)^m`.

use crate::error::{Error, Result};
use crate::qfield::linalg::{determinant, solve_dense};
use crate::qfield::{parse_rational, RationalFunction};

use super::relation::{derive_relation, dq_identity, LinearRelation};
use super::standard::{StandardMonomial, AEK, AFH, BDK, BFG, CDH, CEG};
use super::table::HaarTable;

fn sm(parts: &[(usize, u32)]) -> StandardMonomial {
    parts
        .iter()
        .fold(StandardMonomial::one(), |acc, &(s, p)| acc.times(&StandardMonomial::seg(s, p)))
}

/// Unknowns, in column order.
pub fn source_columns(m: usize) -> [StandardMonomial; 7] {
    let m = m as u32;
    [
        sm(&[(AEK, 1), (CEG, m - 1)]),
        sm(&[(AFH, 1), (CEG, m - 1)]),
        sm(&[(BDK, 1), (CEG, m - 1)]),
        sm(&[(BFG, 1), (CDH, 1), (CEG, m - 2)]),
        sm(&[(BFG, 1), (CEG, m - 1)]),
        sm(&[(CDH, 1), (CEG, m - 1)]),
        sm(&[(CEG, m)]),
    ]
}

/// Comparing monomials of the six invariance rows, in row order.
pub fn source_comparing(m: usize) -> [StandardMonomial; 6] {
    let m = m as u32;
    [
        sm(&[(AEK, m - 1), (CEG, 1)]),
        sm(&[(AEK, m - 1), (BFG, 1)]),
        sm(&[(AEK, m - 1), (CDH, 1)]),
        sm(&[(AEK, m - 2), (AFH, 1), (BDK, 1)]),
        sm(&[(AEK, m - 1), (BDK, 1)]),
        sm(&[(AEK, m - 1), (AFH, 1)]),
    ]
}

#[derive(Clone, Debug)]
pub struct SourceMatrix {
    pub order: usize,
    pub columns: [StandardMonomial; 7],
    /// Quantum determinant row first, then the six invariance rows.
    pub relations: Vec<LinearRelation>,
    pub matrix: Vec<Vec<RationalFunction>>,
    pub rhs: Vec<RationalFunction>,
    pub determinant: RationalFunction,
    pub solution: Vec<RationalFunction>,
}

/// Assemble and solve the system; `known` must hold order `m - 1`.
pub fn source_matrix(m: usize, known: &HaarTable) -> Result<SourceMatrix> {
    if m < 2 {
        return Err(Error::Schedule {
            step: "source matrix".into(),
            msg: format!("needs order at least 2, got {m}"),
        });
    }
    let columns = source_columns(m);
    let eq = vec![CEG; m];
    let mut relations = vec![dq_identity(&[], &vec![CEG; m - 1], known)?];
    for cmp in source_comparing(m) {
        relations.push(derive_relation(&eq, &cmp)?);
    }
    let mut matrix = Vec::new();
    let mut rhs = Vec::new();
    for r in &relations {
        if let Some(s) = r.terms.keys().find(|s| !columns.contains(s)) {
            return Err(Error::Schedule {
                step: "source matrix".into(),
                msg: format!("relation {} involves {s}", r.label),
            });
        }
        matrix.push(columns.iter().map(|c| r.coeff(c)).collect::<Vec<_>>());
        rhs.push(r.rhs.clone());
    }
    let det = determinant(&matrix)?;
    if det.is_zero() {
        return Err(Error::Singular { rank: 6, unknowns: 7 });
    }
    let solution = solve_dense(&matrix, &rhs)?;
    Ok(SourceMatrix {
        order: m,
        columns,
        relations,
        matrix,
        rhs,
        determinant: det,
        solution,
    })
}

fn parse(s: String) -> RationalFunction {
    parse_rational(&s).expect("well-formed closed form")
}

/// Closed-form values of the seven unknowns, in column order.
pub fn source_closed_form(m: usize) -> [RationalFunction; 7] {
    let m = m as i64;
    let tail = format!("(q^{a}-1)^2*(q^{b}-1)", a = 2 * m + 2, b = 2 * m + 4);
    let three = parse(format!(
        "(-q)^{e}*(q^2-1)^4*(q^4-1)/((q^{c}-1)^2*{tail})",
        e = 3 * m - 2,
        c = 2 * m
    ));
    let low = parse(format!(
        "(-q)^{e}*(q^2-1)^3*(q^4-1)/((q^{c}-1)*{tail})",
        e = 3 * m - 1,
        c = 2 * m
    ));
    [
        parse(format!(
            "(-q)^{e}*(q^2-1)^3*(q^4-1)*(1+q^4-q^2-q^{d})/(q*(q^{c}-1)^2*{tail})",
            e = 3 * m - 2,
            d = 2 * m + 2,
            c = 2 * m
        )),
        three.clone(),
        three.clone(),
        three,
        low.clone(),
        low,
        parse(format!("(-q)^{e}*(q^2-1)^2*(q^4-1)/({tail})", e = 3 * m)),
    ]
}

/// Reference entries of the system at order `m`, row by row, with the
/// right-hand sides dropped. Rows as in [`SourceMatrix::matrix`].
pub fn source_reference_entries(m: usize) -> Vec<Vec<RationalFunction>> {
    let n = m as i64;
    let r = |s: &str| -> RationalFunction {
        let s = s
            .replace("{2n}", &(2 * n).to_string())
            .replace("{4n}", &(4 * n).to_string())
            .replace("{2n+1}", &(2 * n + 1).to_string())
            .replace("{2n+2}", &(2 * n + 2).to_string())
            .replace("{2n+4}", &(2 * n + 4).to_string())
            .replace("{2n-2}", &(2 * n - 2).to_string())
            .replace("{4n-3}", &(4 * n - 3).to_string())
            .replace("{n}", &n.to_string())
            .replace("{n-1}", &(n - 1).to_string())
            .replace("{n+1}", &(n + 1).to_string());
        parse_rational(&s).expect("well-formed entry")
    };
    let z = || RationalFunction::zero();
    let c1 = r("(q^{2n}-1)^2*(q^{2n-2}+{n-1}*q^{2n}-{n-1}*q^{2n+2}-1)/(q^{4n-3}*(q^2-1)^3)");
    let c2 = r("(q^{2n}-1)^2*({n}*q^{2n-2}-{n-1}*q^{2n}-1)/(q^{4n-3}*(q^2-1)^3)");
    let c3 = r("(q^{2n}-1)*(q^{2n+4}-{n}*(q^4-1)*q^{2n}-q^2)/(q^{4n}*(q^2-1)^2)");
    vec![
        vec![r("1"), r("-q"), r("-q"), z(), r("q^2"), r("q^2"), r("-q^3")],
        vec![
            r("q^2*(q^{2n}-1)^2/(q^{2n}*(q^2-1)^2)"),
            r("-q*(q^{2n}-1)^2/(q^{2n}*(q^2-1))"),
            r("q^3*(1-q^{2n})^3/(q^{4n}*(q^2-1)^2)"),
            r("(q^3-q^{2n+1})*(q^{2n}-1)^3/(q^{4n}*(q^2-1)^2)"),
            r("(q^{2n}-1)^2/q^{2n}"),
            r("{n}*(q^{2n}-1)^2/q^{2n}"),
            r("(q^{2n}-1)*({n+1}*q^4-2*{n}*q^2+{n})/(q^{2n+1}*(q^2-1))"),
        ],
        vec![
            z(),
            r("q^2*(q^{2n}-1)^3/(q^{2n}*(q^2-1)^3)"),
            z(),
            z(),
            r("-q*(q^{2n}-1)^2/(q^{2n}*(q^2-1))"),
            r("-{n}*q*(q^{2n}-1)^2/(q^{2n}*(q^2-1))"),
            r("(q^{2n}-1)*({n}-{n+1}*q^2)/(q^{2n}*(q^2-1))"),
        ],
        vec![
            z(),
            z(),
            r("q^4*(q^{2n}-1)^3/(q^{4n}*(q^2-1)^3)"),
            r("(q^{2n}-1)^3*(q^{2n+2}-q^4)/(q^{4n}*(q^2-1)^3)"),
            r("-q*(q^{2n}-1)^2/(q^{2n}*(q^2-1))"),
            r("-{n}*q*(q^{2n}-1)^2/(q^{2n}*(q^2-1))"),
            r("(q^{2n}-1)*({n}-{n+1}*q^2)/(q^{2n}*(q^2-1))"),
        ],
        vec![
            z(),
            z(),
            z(),
            r("(q^{2n}-1)^3*(q^{2n+2}-q^4)/(q^{4n}*(q^2-1)^4)"),
            c1,
            c2,
            c3,
        ],
        vec![
            z(),
            z(),
            z(),
            z(),
            r("q^2*(q^{2n}-1)^2/(q^{2n}*(q^2-1)^2)"),
            z(),
            r("q*(q^{2n}-1)/(q^{2n}*(q^2-1))"),
        ],
        vec![
            z(),
            z(),
            z(),
            z(),
            z(),
            r("q^2*(q^{2n}-1)^2/(q^{2n}*(q^2-1)^2)"),
            r("q*(q^{2n}-1)/(q^{2n}*(q^2-1))"),
        ],
    ]
}
