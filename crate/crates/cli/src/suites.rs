//! Verification suites; each prints one line per check.

use std::io::Write;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qhaar::algebra::{permutations, quantum_determinant, Gen, Word};
use qhaar::coalgebra::{apply_haar_left, apply_haar_right, delta};
use qhaar::haar3::rules::render_combination;
use qhaar::haar3::source::{source_closed_form, source_reference_entries};
use qhaar::haar3::standard::all_standard;
use qhaar::haar3::{reordering_identities, source_matrix, HaarStore};
use qhaar::oracle::{build_system_capped, rank_report};
use qhaar::wg::{classical_limit, examples, haar_star, phi_twist_pair, StarWord};

use crate::Suite;

struct Log<'a, W: Write> {
    out: &'a mut W,
    ok: bool,
}

impl<W: Write> Log<'_, W> {
    fn check(&mut self, pass: bool, name: &str, detail: impl FnOnce() -> String) -> anyhow::Result<()> {
        if pass {
            writeln!(self.out, "PASS {name}")?;
        } else {
            self.ok = false;
            writeln!(self.out, "FAIL {name}: {}", detail())?;
        }
        Ok(())
    }

    fn report(&mut self, name: &str, detail: &str) -> anyhow::Result<()> {
        writeln!(self.out, "REPORT {name}: {detail}")?;
        Ok(())
    }
}

pub fn run(suite: Suite, order: usize, st: &mut HaarStore, out: &mut impl Write) -> anyhow::Result<bool> {
    let mut log = Log { out, ok: true };
    match suite {
        Suite::AppendixC => appendix_c(&mut log)?,
        Suite::Source => source(st, &mut log)?,
        Suite::Table1 => table1(st, &mut log)?,
        Suite::Oracle => oracle(order, st, &mut log)?,
        Suite::Wg => wg(st, &mut log)?,
        Suite::Invariance => invariance(st, &mut log)?,
    }
    Ok(log.ok)
}

fn appendix_c(log: &mut Log<impl Write>) -> anyhow::Result<()> {
    for id in reordering_identities() {
        let name = format!("identity {}: {}", id.label, id.lhs);
        let holds = id.holds()?;
        if id.label == "8" {
            let derived = render_combination(&id.rederive()?);
            let verdict = if holds { "printed right side holds" } else { "printed right side differs" };
            log.report(&name, &format!("{verdict}; engine: {} = {derived}", id.lhs))?;
        } else {
            log.check(holds, &name, || format!("defect {}", id.defect().map(|d| d.to_string()).unwrap_or_default()))?;
        }
    }
    Ok(())
}

fn source(st: &mut HaarStore, log: &mut Log<impl Write>) -> anyhow::Result<()> {
    for m in 2..=4 {
        st.ensure_order(m - 1)?;
        let sm = source_matrix(m, st.table())?;
        log.check(!sm.determinant.is_zero(), &format!("source order {m}: determinant nonzero"), String::new)?;
        let closed = source_closed_form(m);
        for (k, col) in sm.columns.iter().enumerate() {
            log.check(sm.solution[k] == closed[k], &format!("source order {m}: h({col})"), || {
                format!("solved {} but closed form {}", sm.solution[k], closed[k])
            })?;
        }
    }
    Ok(())
}

fn table1(st: &mut HaarStore, log: &mut Log<impl Write>) -> anyhow::Result<()> {
    for m in 2..=3 {
        st.ensure_order(m - 1)?;
        let sm = source_matrix(m, st.table())?;
        let reference = source_reference_entries(m);
        for (r, (row, label)) in sm.matrix.iter().zip(sm.relations.iter().map(|r| &r.label)).enumerate() {
            let bad: Vec<usize> = (0..7).filter(|&c| row[c] != reference[r][c]).collect();
            log.check(bad.is_empty(), &format!("table order {m} row {} ({label})", r + 1), || {
                format!("columns {bad:?} differ")
            })?;
        }
    }
    Ok(())
}

fn oracle(m: usize, st: &mut HaarStore, log: &mut Log<impl Write>) -> anyhow::Result<()> {
    st.ensure_order(m)?;
    let sys = build_system_capped(m, 3)?;
    let sol = sys.solve()?;
    writeln!(log.out, "{}", rank_report(&sys, &sol))?;
    let mismatched: Vec<String> = sol
        .values
        .iter()
        .filter(|(s, v)| st.table().get(s) != Some(*v))
        .map(|(s, _)| s.to_string())
        .collect();
    log.check(mismatched.is_empty(), &format!("oracle order {m}: {} values agree", sol.values.len()), || {
        format!("first mismatch {}", mismatched[0])
    })?;
    let q0 = BigRational::new(1.into(), 2.into());
    let num = sys.solve_at(&q0)?;
    let bad = num.values.iter().find(|(s, v)| sol.values[*s].eval_at(&q0).ok().as_ref() != Some(*v));
    log.check(bad.is_none(), &format!("oracle order {m}: numeric solve at q = 1/2"), || {
        format!("first mismatch {}", bad.unwrap().0)
    })?;
    Ok(())
}

/// A doubly stochastic word of order `k` cut at a random point.
pub fn random_split_pair(rng: &mut impl Rng, k: usize) -> (Word, Word) {
    let perms = permutations(3);
    let mut gens: Vec<Gen> = (0..k)
        .flat_map(|_| {
            let p = perms.choose(rng).unwrap();
            (0..3).map(|i| Gen::new(i as u8, p[i] as u8)).collect::<Vec<_>>()
        })
        .collect();
    gens.shuffle(rng);
    let cut = rng.gen_range(0..=gens.len());
    let y = gens.split_off(cut);
    (Word::new(3, gens), Word::new(3, y))
}

fn wg(st: &mut HaarStore, log: &mut Log<impl Write>) -> anyhow::Result<()> {
    for e in examples() {
        let v = haar_star(&StarWord::parse(e.word, 3)?, st)?;
        let name = format!("example {}.{} h({})", e.id, e.variant, e.word);
        log.check(v == e.expected_value(), &name, || format!("engine {v}, printed {}", e.expected))?;
        let lim = classical_limit(&v)?;
        let want = BigRational::new(e.classical.0.into(), e.classical.1.into());
        log.check(lim == want, &format!("{name} at q = 1"), || format!("{lim} instead of {want}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = Vec::new();
    for i in 0..50 {
        let (x, y) = random_split_pair(&mut rng, 1 + i % 2);
        let (l, r) = phi_twist_pair(&x, &y, st)?;
        if l != r {
            failures.push(format!("x = {x}, y = {y}"));
        }
    }
    log.check(failures.is_empty(), "phi twist on 50 random pairs", || failures[0].clone())?;
    Ok(())
}

fn invariance(st: &mut HaarStore, log: &mut Log<impl Write>) -> anyhow::Result<()> {
    st.ensure_order(2)?;
    let table = st.table();
    for m in 1..=2 {
        let dq = quantum_determinant(3).pow(m as u32).to_rational();
        for s in all_standard(m) {
            let w = s.to_word();
            let hs = table.value_of_word(&w)?;
            let expect = dq.scale(&hs);
            let d = delta(&w);
            let right = apply_haar_right(&d, |x| table.value_of_word(x))?;
            let left = apply_haar_left(&d, |x| table.value_of_word(x))?;
            log.check(right == expect, &format!("right invariance {s}"), || format!("got {right}"))?;
            log.check(left == expect, &format!("left invariance {s}"), || format!("got {left}"))?;
        }
    }
    Ok(())
}
