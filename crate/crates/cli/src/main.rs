use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use qhaar::algebra::{normal_form, Word};
use qhaar::haar3::{decompose_to_basis, rules::render_combination, HaarStore};
use qhaar::qfield::parse_rational_number;
use qhaar::wg::{classical_limit, examples, haar_star, StarWord};

mod suites;

#[derive(Parser)]
#[command(name = "qhaar", version, about = "Exact Haar states on O(SL_q(3))")]
struct Cli {
    /// Directory for cached order tables.
    #[arg(long, global = true, env = "QHAAR_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Normal form of a word.
    Reduce {
        word: String,
        /// Print the standard-monomial decomposition instead.
        #[arg(long)]
        basis: bool,
    },
    /// Haar state of a word; starred letters are allowed.
    Haar {
        word: String,
        /// Evaluate at an exact rational `P/Q`.
        #[arg(long)]
        q: Option<String>,
        #[arg(long, default_value_t = qhaar::haar3::store::DEFAULT_MAX_ORDER)]
        max_order: usize,
    },
    /// Write the JSON-lines table of one order.
    Table {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = qhaar::haar3::store::DEFAULT_MAX_ORDER)]
        max_order: usize,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Order for the oracle suite.
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Evaluate the printed Weingarten examples.
    Wg {
        #[arg(long)]
        example: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Suite {
    #[value(name = "appendixC")]
    AppendixC,
    Source,
    Table1,
    Oracle,
    Wg,
    Invariance,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let store = |max: usize| HaarStore::new().with_max_order(max).with_cache_dir(cli.cache_dir.clone());
    let mut out = io::stdout().lock();
    match cli.cmd {
        Cmd::Reduce { word, basis } => {
            let w = Word::parse_auto(&word)?;
            if basis {
                writeln!(out, "{}", render_combination(&decompose_to_basis(&w)?))?;
            } else {
                writeln!(out, "{}", normal_form(&w))?;
            }
        }
        Cmd::Haar { word, q, max_order } => {
            let mut st = store(max_order);
            let v = if word.contains('*') {
                haar_star(&StarWord::parse_auto(&word)?, &mut st)?
            } else {
                st.haar_word(&Word::parse_auto(&word)?)?
            };
            match q {
                Some(q) => {
                    let q0 = parse_rational_number(&q).context("--q takes an exact rational P/Q")?;
                    writeln!(out, "{}", v.eval_at(&q0)?)?;
                }
                None => writeln!(out, "{v}")?,
            }
        }
        Cmd::Table { order, out: path, max_order } => {
            let mut st = store(max_order);
            st.ensure_order(order)?;
            match path {
                Some(p) => {
                    let f = File::create(&p).with_context(|| format!("creating {}", p.display()))?;
                    st.table().write_order(order, BufWriter::new(f))?;
                }
                None => st.table().write_order(order, &mut out)?,
            }
        }
        Cmd::Verify { suite, order } => {
            let mut st = store(order.max(qhaar::haar3::store::DEFAULT_MAX_ORDER));
            return suites::run(suite, order, &mut st, &mut out);
        }
        Cmd::Wg { example } => {
            let list: Vec<_> = examples().into_iter().filter(|e| e.id == example).collect();
            if list.is_empty() {
                bail!("no example {example}; choose 1, 2 or 3");
            }
            let mut st = store(2);
            let mut ok = true;
            for e in list {
                let v = haar_star(&StarWord::parse(e.word, 3)?, &mut st)?;
                let matches = v == e.expected_value();
                ok &= matches;
                writeln!(
                    out,
                    "h({}) = {v}\n  q -> 1: {}\n  printed value: {}",
                    e.word,
                    classical_limit(&v)?,
                    if matches { "matches" } else { "DIFFERS" }
                )?;
            }
            return Ok(ok);
        }
    }
    Ok(true)
}
