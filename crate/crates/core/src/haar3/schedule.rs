//! Order-by-order driver: named steps, each checked for how many unknowns
//! it really leaves, followed by a closure pass over a pool of relations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qfield::linalg::{Echelon, RowOutcome, SparseRow};
use crate::qfield::RationalFunction;

use super::basis::order_basis;
use super::relation::{derive_relation, dq_identity, segments_label, LinearRelation};
use super::standard::{StandardMonomial, AEK, AFH, BDK, BFG, CDH, CEG};
use super::table::HaarTable;

/// How a step produces a relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelSpec {
    /// Invariance of `h` on the word `eq`, matched on the basis monomial `cmp`.
    Derived { eq: Vec<usize>, cmp: StandardMonomial },
    /// `h(left * D_q * right) = h(left * right)`.
    Dq { left: Vec<usize>, right: Vec<usize> },
}

impl RelSpec {
    pub fn build(&self, known: &HaarTable) -> Result<LinearRelation> {
        match self {
            RelSpec::Derived { eq, cmp } => derive_relation(eq, cmp),
            RelSpec::Dq { left, right } => dq_identity(left, right, known),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Step {
    pub name: String,
    /// Words whose values the step is meant to produce.
    pub targets: Vec<Vec<usize>>,
    pub relations: Vec<RelSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepStatus {
    /// Every unknown the relations touched was determined.
    Solved,
    /// Nothing unknown was left; relations held.
    Checked,
    /// More unknowns than the relations can fix; left to the closure pass.
    Deferred(String),
}

#[derive(Clone, Debug)]
pub struct StepRecord {
    pub name: String,
    pub relations: Vec<String>,
    pub unknowns: Vec<StandardMonomial>,
    pub solved: Vec<StandardMonomial>,
    pub status: StepStatus,
}

#[derive(Clone, Debug, Default)]
pub struct ScheduleReport {
    pub order: usize,
    pub steps: Vec<StepRecord>,
    /// Unknowns fixed by the closure pass, with the method used.
    pub closure: Vec<(StandardMonomial, String)>,
}

impl ScheduleReport {
    pub fn deferred(&self) -> impl Iterator<Item = &StepRecord> {
        self.steps
            .iter()
            .filter(|s| matches!(s.status, StepStatus::Deferred(_)))
    }
}

impl fmt::Display for ScheduleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "order {}", self.order)?;
        for s in &self.steps {
            let st = match &s.status {
                StepStatus::Solved => "solved".to_string(),
                StepStatus::Checked => "checked".to_string(),
                StepStatus::Deferred(why) => format!("deferred: {why}"),
            };
            let solved: Vec<String> = s.solved.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {}: {} [{}]", s.name, st, solved.join(", "))?;
        }
        for (s, how) in &self.closure {
            writeln!(f, "  closure: {s} via {how}")?;
        }
        Ok(())
    }
}

/// Run one step against the table, inserting what it determines.
pub fn run_step(step: &Step, table: &mut HaarTable) -> Result<StepRecord> {
    let rels: Vec<LinearRelation> = step
        .relations
        .iter()
        .map(|r| r.build(table).map(|x| x.substitute(table)))
        .collect::<Result<_>>()?;
    let unknowns: BTreeSet<StandardMonomial> = rels.iter().flat_map(|r| r.terms.keys().copied()).collect();
    let unknowns: Vec<StandardMonomial> = unknowns.into_iter().collect();
    let mut record = StepRecord {
        name: step.name.clone(),
        relations: rels.iter().map(|r| r.label.clone()).collect(),
        unknowns: unknowns.clone(),
        solved: Vec::new(),
        status: StepStatus::Checked,
    };
    if unknowns.is_empty() {
        if let Some(r) = rels.iter().find(|r| !r.rhs.is_zero()) {
            return Err(Error::Inconsistent(format!("step {}: {} fails", step.name, r.label)));
        }
        return finish(step, table, record);
    }
    if unknowns.len() > rels.len() {
        let list: Vec<String> = unknowns.iter().map(|s| s.to_string()).collect();
        record.status = StepStatus::Deferred(format!(
            "{} unknowns for {} relations: {}",
            unknowns.len(),
            rels.len(),
            list.join(", ")
        ));
        return Ok(record);
    }
    let col: BTreeMap<StandardMonomial, usize> = unknowns.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut e: Echelon<RationalFunction> = Echelon::new();
    for r in &rels {
        let row: SparseRow<RationalFunction> = r.terms.iter().map(|(s, c)| (col[s], c.clone())).collect();
        if e.push(row, r.rhs.clone())? == RowOutcome::Inconsistent {
            return Err(Error::Inconsistent(format!("step {}: relations disagree", step.name)));
        }
    }
    for (i, s) in unknowns.iter().enumerate() {
        if let Some(v) = e.value(i) {
            table.insert(*s, v)?;
            record.solved.push(*s);
        }
    }
    if record.solved.len() < unknowns.len() {
        record.status = StepStatus::Deferred(format!("rank {} for {} unknowns", e.rank(), unknowns.len()));
        return Ok(record);
    }
    record.status = StepStatus::Solved;
    finish(step, table, record)
}

/// A step is only done when its targets no longer depend on unknowns.
fn finish(step: &Step, table: &HaarTable, mut record: StepRecord) -> Result<StepRecord> {
    for t in &step.targets {
        let order = t.len();
        let basis = order_basis(order)?;
        let coords = basis.word_coords(&super::standard::segments_word(t))?;
        let open: Vec<String> = coords
            .keys()
            .map(|&i| basis.basis[i])
            .filter(|s| table.get(s).is_none())
            .map(|s| s.to_string())
            .collect();
        if !open.is_empty() {
            record.status = StepStatus::Deferred(format!(
                "target {} still depends on {}",
                segments_label(t),
                open.join(", ")
            ));
            return Ok(record);
        }
    }
    Ok(record)
}

/// Segment word from `(segment, power)` pairs, skipping zero powers.
pub fn w(parts: &[(usize, usize)]) -> Vec<usize> {
    parts
        .iter()
        .flat_map(|&(s, p)| std::iter::repeat(s).take(p))
        .collect()
}

fn basis_of(parts: &[(usize, usize)]) -> StandardMonomial {
    let mut e = [0u32; 6];
    for &(s, p) in parts {
        e[s] += p as u32;
    }
    StandardMonomial::new(e)
}

/// Swap `afh <-> bdk` and `cdh <-> bfg`.
fn mirror_seg(s: usize) -> usize {
    match s {
        AFH => BDK,
        BDK => AFH,
        CDH => BFG,
        BFG => CDH,
        x => x,
    }
}

struct Plan {
    m: usize,
    steps: Vec<Step>,
}

impl Plan {
    fn cmp_afh(&self) -> StandardMonomial {
        basis_of(&[(AEK, self.m - 1), (AFH, 1)])
    }

    fn cmp_bdk(&self) -> StandardMonomial {
        basis_of(&[(AEK, self.m - 1), (BDK, 1)])
    }

    fn cmp_for(&self, mirrored: bool) -> StandardMonomial {
        if mirrored {
            self.cmp_bdk()
        } else {
            self.cmp_afh()
        }
    }

    fn derived(&self, eq: Vec<usize>, mirrored: bool) -> RelSpec {
        RelSpec::Derived {
            eq,
            cmp: self.cmp_for(mirrored),
        }
    }

    fn push(&mut self, name: String, targets: Vec<Vec<usize>>, relations: Vec<RelSpec>) {
        self.steps.push(Step {
            name,
            targets,
            relations,
        });
    }

    /// One relation per target, written for the unmirrored family and
    /// optionally repeated for the mirror image.
    fn single(&mut self, tag: &str, target: &[(usize, usize)], eq: &[(usize, usize)], mirrored: bool) {
        let mapw = |parts: &[(usize, usize)]| -> Vec<usize> {
            let v = w(parts);
            if mirrored {
                v.into_iter().map(mirror_seg).collect()
            } else {
                v
            }
        };
        let t = mapw(target);
        let rel = self.derived(mapw(eq), mirrored);
        self.push(format!("{tag} {}", segments_label(&t)), vec![t], vec![rel]);
    }

    fn dq(&mut self, tag: &str, left: Vec<usize>, right: Vec<usize>, target: Vec<usize>) {
        self.push(
            format!("{tag} {}", segments_label(&target)),
            vec![target],
            vec![RelSpec::Dq { left, right }],
        );
    }

    /// Pair or triple of unknowns fixed jointly.
    fn system(&mut self, tag: &str, targets: Vec<Vec<usize>>, relations: Vec<RelSpec>) {
        let names: Vec<String> = targets.iter().map(|t| segments_label(t)).collect();
        self.push(format!("{tag} {}", names.join(" & ")), targets, relations);
    }
}

fn mirror(v: Vec<usize>, on: bool) -> Vec<usize> {
    if on {
        v.into_iter().map(mirror_seg).collect()
    } else {
        v
    }
}

/// The named steps for order `m >= 2`.
pub fn plan(m: usize) -> Vec<Step> {
    let mut p = Plan { m, steps: Vec::new() };
    if m < 2 {
        return p.steps;
    }
    let (a, f, b, g, c, e) = (AEK, AFH, BDK, BFG, CDH, CEG);

    // Seven unknowns around (ceg)^m.
    let mut rels = vec![RelSpec::Dq {
        left: vec![],
        right: w(&[(e, m - 1)]),
    }];
    for cmp in super::source::source_comparing(m) {
        rels.push(RelSpec::Derived {
            eq: w(&[(e, m)]),
            cmp,
        });
    }
    let targets = super::source::source_columns(m).iter().map(|s| s.to_word_segments()).collect();
    p.push("source".into(), targets, rels);

    // Powers of cdh and bfg against ceg.
    for mir in [false, true] {
        for i in 2..=m {
            p.single("recursion", &[(c, i), (e, m - i)], &[(c, i - 1), (e, m - i + 1)], mir);
        }
    }

    // One high segment followed by cdh powers, alternating bfg and bdk.
    for mir in [false, true] {
        p.single("zigzag", &[(b, 1), (c, 1), (e, m - 2)], &[(b, 1), (e, m - 1)], mir);
        for t in 2..m {
            p.single("zigzag", &[(g, 1), (c, t), (e, m - t - 1)], &[(g, 1), (c, t - 1), (e, m - t)], mir);
            p.single("zigzag", &[(b, 1), (c, t), (e, m - t - 1)], &[(b, 1), (c, t - 1), (e, m - t)], mir);
        }
    }

    // Two segments in front of (ceg)^(m-2).
    p.single("front", &[(b, 1), (g, 1), (e, m - 2)], &[(g, 2), (e, m - 2)], false);
    p.single("front", &[(b, 1), (g, 1), (e, m - 2)], &[(g, 2), (e, m - 2)], true);
    p.single("front", &[(a, 1), (c, 1), (e, m - 2)], &[(a, 1), (e, m - 1)], false);
    p.single("front", &[(a, 1), (c, 1), (e, m - 2)], &[(a, 1), (e, m - 1)], true);

    if m >= 3 {
        for mir in [false, true] {
            let tg = vec![
                mirror(w(&[(f, 1), (c, 2), (e, m - 3)]), mir),
                mirror(w(&[(a, 1), (c, 2), (e, m - 3)]), mir),
            ];
            let rels = vec![
                RelSpec::Dq {
                    left: vec![],
                    right: mirror(w(&[(c, 2), (e, m - 3)]), mir),
                },
                p.derived(mirror(w(&[(f, 1), (c, 1), (e, m - 2)]), mir), mir),
            ];
            p.system("pair", tg, rels);
        }
        let tg = vec![
            w(&[(a, 1), (g, 1), (c, 1), (e, m - 3)]),
            w(&[(f, 1), (g, 1), (c, 1), (e, m - 3)]),
            w(&[(b, 1), (g, 1), (c, 1), (e, m - 3)]),
        ];
        let rels = vec![
            RelSpec::Dq {
                left: vec![],
                right: w(&[(g, 1), (c, 1), (e, m - 3)]),
            },
            p.derived(w(&[(f, 1), (g, 1), (e, m - 2)]), false),
            p.derived(w(&[(b, 1), (c, 1), (e, m - 2)]), true),
        ];
        p.system("triple", tg, rels);
    }

    // Two high segments in front of (ceg)^(m-2).
    p.single("double", &[(b, 2), (e, m - 2)], &[(b, 1), (g, 1), (e, m - 2)], false);
    p.single("double", &[(b, 2), (e, m - 2)], &[(b, 1), (g, 1), (e, m - 2)], true);
    p.system("decompose", vec![w(&[(f, 1), (b, 1), (e, m - 2)]), w(&[(b, 1), (f, 1), (e, m - 2)])], vec![]);
    p.dq("unit", vec![], w(&[(b, 1), (e, m - 2)]), w(&[(a, 1), (b, 1), (e, m - 2)]));
    p.dq("unit", vec![], w(&[(f, 1), (e, m - 2)]), w(&[(a, 1), (f, 1), (e, m - 2)]));
    p.dq("unit", vec![a], w(&[(e, m - 2)]), w(&[(a, 2), (e, m - 2)]));

    for i in 2..m {
        sweep(&mut p, i);
    }
    low_tail(&mut p);
    p.steps
}

/// Families ending in `(ceg)^(m-i-1)` and in two low segments before
/// `(ceg)^(m-i-2)`.
fn sweep(p: &mut Plan, i: usize) {
    let m = p.m;
    let (a, f, b, g, c, e) = (AEK, AFH, BDK, BFG, CDH, CEG);
    let tag = format!("sweep {i}");

    // i high segments from {bdk, bfg} followed by cdh powers.
    for mir in [false, true] {
        p.single(&tag, &[(b, i), (c, 1), (e, m - i - 1)], &[(b, i), (e, m - i)], mir);
        for t in 2..=m - i {
            for r in 0..=i {
                p.single(
                    &tag,
                    &[(b, r), (g, i - r), (c, t), (e, m - i - t)],
                    &[(b, r), (g, i - r), (c, t - 1), (e, m - i - t + 1)],
                    mir,
                );
            }
        }
    }

    if i + 2 > m {
        return;
    }

    // One high segment before two low ones.
    for mir in [false, true] {
        let tg = vec![
            mirror(w(&[(a, 1), (c, i + 1), (e, m - i - 2)]), mir),
            mirror(w(&[(f, 1), (c, i + 1), (e, m - i - 2)]), mir),
        ];
        let rels = vec![
            RelSpec::Dq {
                left: vec![],
                right: mirror(w(&[(c, i + 1), (e, m - i - 2)]), mir),
            },
            p.derived(mirror(w(&[(f, 1), (c, i), (e, m - i - 1)]), mir), mir),
        ];
        p.system(&tag, tg, rels);
    }
    for l in 0..i {
        let right = w(&[(g, i - 1 - l), (c, 2 + l), (e, m - i - 2)]);
        let mut t = vec![a];
        t.extend(&right);
        p.dq(&tag, vec![], right, t);
    }
    {
        let right = w(&[(g, i), (c, 1), (e, m - i - 2)]);
        let tg = vec![
            [vec![a], right.clone()].concat(),
            [vec![b], right.clone()].concat(),
        ];
        let rels = vec![
            RelSpec::Dq { left: vec![], right },
            p.derived(w(&[(b, 1), (g, i - 1), (c, 1), (e, m - i - 1)]), true),
        ];
        p.system(&tag, tg, rels);
        let right = w(&[(c, i), (g, 1), (e, m - i - 2)]);
        let tg = vec![
            [vec![a], right.clone()].concat(),
            [vec![f], right.clone()].concat(),
        ];
        let rels = vec![
            RelSpec::Dq { left: vec![], right },
            p.derived(w(&[(f, 1), (c, i - 1), (g, 1), (e, m - i - 1)]), false),
        ];
        p.system(&tag, tg, rels);
    }

    // Two high segments before (ceg)^(m-i-1).
    for r in 0..i {
        let s = i - 1 - r;
        let tail = w(&[(g, r), (c, s), (e, m - i - 1)]);
        p.system(
            &tag,
            vec![[vec![f, b], tail.clone()].concat(), [vec![b, f], tail.clone()].concat()],
            vec![],
        );
        p.single(&tag, &[(b, 2), (g, r), (c, s), (e, m - i - 1)], &[(b, 1), (g, r + 1), (c, s), (e, m - i - 1)], false);
        p.single(&tag, &[(f, 2), (g, r), (c, s), (e, m - i - 1)], &[(f, 1), (g, r), (c, s + 1), (e, m - i - 1)], true);
        p.dq(&tag, vec![], [vec![f], tail.clone()].concat(), [vec![a, f], tail.clone()].concat());
        p.dq(&tag, vec![], [vec![b], tail.clone()].concat(), [vec![a, b], tail.clone()].concat());
        p.dq(&tag, vec![a], tail.clone(), [vec![a, a], tail].concat());
    }

    // More high segments.
    for wv in 2..=i {
        for mir in [false, true] {
            let mw = |parts: &[(usize, usize)]| mirror(w(parts), mir);
            let tg = vec![
                mw(&[(a, 1), (b, wv - 1), (c, i - wv + 2), (e, m - i - 2)]),
                mw(&[(f, 1), (b, wv - 1), (c, i - wv + 2), (e, m - i - 2)]),
            ];
            let rels = vec![
                RelSpec::Dq {
                    left: vec![],
                    right: mw(&[(b, wv - 1), (c, i - wv + 2), (e, m - i - 2)]),
                },
                p.derived(mw(&[(f, 1), (b, wv - 1), (c, i + 1 - wv), (e, m - i - 1)]), mir),
            ];
            p.system(&tag, tg, rels);
            for t in 2..=wv {
                let tg = vec![
                    mw(&[(a, 1), (f, t - 1), (b, wv - t), (c, i + 2 - wv), (e, m - i - 2)]),
                    mw(&[(f, t), (b, wv - t), (c, i + 2 - wv), (e, m - i - 2)]),
                ];
                let rels = vec![
                    RelSpec::Dq {
                        left: vec![],
                        right: mw(&[(f, t - 1), (b, wv - t), (c, i + 2 - wv), (e, m - i - 2)]),
                    },
                    p.derived(mw(&[(f, t), (b, wv - t), (c, i + 1 - wv), (e, m - i - 1)]), mir),
                ];
                p.system(&tag, tg, rels);
            }
            for n in 2..=wv {
                for j in 0..=wv - n {
                    let right = mw(&[(f, j), (b, wv - j - n), (c, i + 2 - wv), (e, m - i - 2)]);
                    let target = [vec![a; n], right.clone()].concat();
                    p.dq(&tag, vec![a; n - 1], right, target);
                }
            }
        }
        // wv + 1 high segments before (ceg)^(m-i-1).
        for s in 0..=i - wv {
            let r = i - wv - s;
            let tail = |parts: &[(usize, usize)]| {
                let mut v = w(parts);
                v.extend(w(&[(c, s), (g, r), (e, m - i - 1)]));
                v
            };
            p.single(
                &tag,
                &[(f, wv + 1), (c, s), (g, r), (e, m - i - 1)],
                &[(f, wv), (c, s + 1), (g, r), (e, m - i - 1)],
                true,
            );
            let tb = tail(&[(b, wv + 1)]);
            let eb = [w(&[(b, wv)]), w(&[(c, s), (g, r + 1), (e, m - i - 1)])].concat();
            let rel = p.derived(eb, false);
            p.push(format!("{tag} {}", segments_label(&tb)), vec![tb], vec![rel]);
            for hi in [f, b] {
                for j in 1..=wv {
                    let right = tail(&[(hi, wv - j + 1)]);
                    let target = [vec![a; j], right.clone()].concat();
                    p.dq(&tag, vec![a; j - 1], right, target);
                }
            }
            let right = tail(&[]);
            let target = [vec![a; wv + 1], right.clone()].concat();
            p.dq(&tag, vec![a; wv], right, target);
        }
    }
}

/// Monomials with at most one low segment.
fn low_tail(p: &mut Plan) {
    let m = p.m;
    let (a, f, b, c, e) = (AEK, AFH, BDK, CDH, CEG);
    for mir in [false, true] {
        let mw = |parts: &[(usize, usize)]| mirror(w(parts), mir);
        for i in 0..=m - 2 {
            let tg = vec![
                mw(&[(a, 1), (b, i), (c, m - 1 - i)]),
                mw(&[(f, 1), (b, i), (c, m - 1 - i)]),
            ];
            let rels = vec![
                RelSpec::Dq {
                    left: vec![],
                    right: mw(&[(b, i), (c, m - 1 - i)]),
                },
                p.derived(mw(&[(f, 1), (b, i), (c, m - i - 2), (e, 1)]), mir),
            ];
            p.system("low tail", tg, rels);
        }
        for n in 1..m {
            for t in 1..m {
                if n + t >= m {
                    continue;
                }
                let tg = vec![
                    mw(&[(a, 1), (f, t), (b, n - 1), (c, m - n - t)]),
                    mw(&[(f, t + 1), (b, n - 1), (c, m - n - t)]),
                ];
                let rels = vec![
                    RelSpec::Dq {
                        left: vec![],
                        right: mw(&[(f, t), (b, n - 1), (c, m - n - t)]),
                    },
                    p.derived(mw(&[(f, t + 1), (b, n - 1), (c, m - n - t - 1), (e, 1)]), mir),
                ];
                p.system("low tail", tg, rels);
            }
        }
        for n in 2..m {
            for j in 0..=m - n {
                for i in 0..=m - n - j {
                    let r = m - n - j - i;
                    if r == 0 {
                        continue;
                    }
                    let right = mw(&[(f, j), (b, i), (c, r)]);
                    let target = [vec![a; n], right.clone()].concat();
                    p.dq("low tail", vec![a; n - 1], right, target);
                }
            }
        }
    }
    // No low segment at all.
    for i in 1..=m {
        if i >= 2 {
            p.single("no low", &[(f, m - i), (b, i)], &[(f, m - i), (b, i - 1), (BFG, 1)], false);
        } else {
            let t = w(&[(f, m - 1), (b, 1)]);
            let rel = p.derived(w(&[(f, m - 1), (c, 1)]), true);
            p.push(format!("no low {}", segments_label(&t)), vec![t], vec![rel]);
        }
    }
    for n in 1..=m {
        for r in 0..=m - n {
            let right = w(&[(f, r), (b, m - n - r)]);
            let target = [vec![a; n], right.clone()].concat();
            p.dq("no low", vec![a; n - 1], right, target);
        }
    }
}

/// Candidate relations for the closure pass.
fn pool(m: usize, known: &HaarTable, all_comparing: bool) -> Result<Vec<LinearRelation>> {
    let basis = order_basis(m)?;
    let cmps: Vec<StandardMonomial> = if all_comparing {
        basis.basis.clone()
    } else if m == 1 {
        vec![basis_of(&[(AFH, 1)]), basis_of(&[(BDK, 1)])]
    } else {
        vec![basis_of(&[(AEK, m - 1), (AFH, 1)]), basis_of(&[(AEK, m - 1), (BDK, 1)])]
    };
    let specs: Vec<(Vec<usize>, StandardMonomial)> = basis
        .basis
        .iter()
        .flat_map(|s| cmps.iter().map(move |c| (s.to_word_segments(), *c)))
        .collect();
    let mut rels: Vec<LinearRelation> = specs
        .par_iter()
        .map(|(eq, c)| derive_relation(eq, c))
        .collect::<Result<_>>()?;
    for t in 0..m {
        for y in order_basis(m - 1 - t)?.basis.iter() {
            rels.push(dq_identity(&vec![AEK; t], &y.to_word_segments(), known)?);
        }
    }
    Ok(rels)
}

/// Solve whatever remains from the pool: single unknowns first, then small
/// square systems, then whatever a joint elimination pins down.
fn closure(m: usize, table: &mut HaarTable, report: &mut ScheduleReport) -> Result<()> {
    let basis = order_basis(m)?;
    let missing = |t: &HaarTable| basis.basis.iter().filter(|s| t.get(s).is_none()).count();
    if missing(table) == 0 {
        return Ok(());
    }
    for all_comparing in [false, true] {
        let raw = pool(m, table, all_comparing)?;
        let how = if all_comparing { "all comparing" } else { "paired comparing" };
        loop {
            if missing(table) == 0 {
                return Ok(());
            }
            let rels: Vec<LinearRelation> = raw
                .iter()
                .map(|r| r.substitute(table))
                .filter(|r| !r.is_trivial())
                .collect();
            if let Some(r) = rels.iter().find(|r| r.terms.is_empty()) {
                return Err(Error::Inconsistent(format!("closure: {} fails", r.label)));
            }
            let mut progress = false;
            for k in 1..=3 {
                let mut groups: BTreeMap<Vec<StandardMonomial>, Vec<&LinearRelation>> = BTreeMap::new();
                for r in rels.iter().filter(|r| r.terms.len() == k) {
                    groups.entry(r.terms.keys().copied().collect()).or_default().push(r);
                }
                for (unk, rs) in groups {
                    if unk.iter().any(|s| table.get(s).is_some()) || rs.len() < k {
                        continue;
                    }
                    let mut e: Echelon<RationalFunction> = Echelon::new();
                    for r in &rs {
                        let row = r
                            .terms
                            .iter()
                            .map(|(s, c)| (unk.iter().position(|x| x == s).unwrap(), c.clone()))
                            .collect();
                        if e.push(row, r.rhs.clone())? == RowOutcome::Inconsistent {
                            return Err(Error::Inconsistent(format!("closure at {}", unk[0])));
                        }
                    }
                    for (i, s) in unk.iter().enumerate() {
                        if let Some(v) = e.value(i) {
                            table.insert(*s, v)?;
                            let labels: Vec<&str> = rs.iter().map(|r| r.label.as_str()).collect();
                            report.closure.push((*s, format!("{k}x{k} system ({how}): {}", labels.join("; "))));
                            progress = true;
                        }
                    }
                }
                if progress {
                    break;
                }
            }
            if progress {
                continue;
            }
            // Joint elimination over everything left.
            let unk: Vec<StandardMonomial> = basis.basis.iter().filter(|s| table.get(s).is_none()).copied().collect();
            let col: BTreeMap<StandardMonomial, usize> = unk.iter().enumerate().map(|(i, s)| (*s, i)).collect();
            let mut e: Echelon<RationalFunction> = Echelon::new();
            for r in &rels {
                let row = r.terms.iter().map(|(s, c)| (col[s], c.clone())).collect();
                if e.push(row, r.rhs.clone())? == RowOutcome::Inconsistent {
                    return Err(Error::Inconsistent("closure: joint elimination".into()));
                }
            }
            for (i, s) in unk.iter().enumerate() {
                if let Some(v) = e.value(i) {
                    table.insert(*s, v)?;
                    report.closure.push((*s, format!("joint elimination ({how})")));
                    progress = true;
                }
            }
            if !progress {
                break;
            }
        }
    }
    let left: Vec<String> = basis
        .basis
        .iter()
        .filter(|s| table.get(s).is_none())
        .map(|s| s.to_string())
        .collect();
    Err(Error::Schedule {
        step: "closure".into(),
        msg: format!("stalled with {} unknowns: {}", left.len(), left.join(", ")),
    })
}

/// Fill in order `m`; all lower orders must be present.
pub fn compute_order(m: usize, table: &mut HaarTable) -> Result<ScheduleReport> {
    if !table.has_order(m.saturating_sub(1)) || m == 0 {
        return Err(Error::Schedule {
            step: format!("order {m}"),
            msg: "lower orders missing".into(),
        });
    }
    let mut report = ScheduleReport {
        order: m,
        ..Default::default()
    };
    for step in plan(m) {
        report.steps.push(run_step(&step, table)?);
    }
    closure(m, table, &mut report)?;
    table.seal_order(m)?;
    Ok(report)
}

/// As [`compute_order`], but any step that could not do its job is an error.
pub fn compute_order_strict(m: usize, table: &mut HaarTable) -> Result<ScheduleReport> {
    let mut scratch = table.clone();
    let report = compute_order(m, &mut scratch)?;
    if let Some(s) = report.deferred().next() {
        let StepStatus::Deferred(why) = &s.status else { unreachable!() };
        return Err(Error::Schedule {
            step: s.name.clone(),
            msg: why.clone(),
        });
    }
    *table = scratch;
    Ok(report)
}
