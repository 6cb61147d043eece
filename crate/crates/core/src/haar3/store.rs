//! On-demand Haar evaluation backed by a per-order cache.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};

use super::order1::order1_haar;
use super::schedule::{compute_order, ScheduleReport};
use super::table::HaarTable;
use crate::algebra::{normal_form, Mono, NCPoly, Word};
use crate::{Error, RationalFunction, Result};

/// Environment variable naming the table cache directory.
pub const CACHE_ENV: &str = "QHAAR_CACHE_DIR";
pub const DEFAULT_MAX_ORDER: usize = 4;

#[derive(Debug)]
pub struct HaarStore {
    table: HaarTable,
    max_order: usize,
    cache_dir: Option<PathBuf>,
    reports: Vec<ScheduleReport>,
}

impl Default for HaarStore {
    fn default() -> Self {
        Self::new()
    }
}

impl HaarStore {
    pub fn new() -> Self {
        HaarStore {
            table: HaarTable::new(),
            max_order: DEFAULT_MAX_ORDER,
            cache_dir: None,
            reports: Vec::new(),
        }
    }

    /// Store configured from [`CACHE_ENV`], if set.
    pub fn from_env() -> Self {
        let dir = std::env::var_os(CACHE_ENV).map(PathBuf::from);
        Self::new().with_cache_dir(dir)
    }

    pub fn with_max_order(mut self, m: usize) -> Self {
        self.max_order = m;
        self
    }

    pub fn with_cache_dir(mut self, dir: Option<PathBuf>) -> Self {
        self.cache_dir = dir;
        self
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn table(&self) -> &HaarTable {
        &self.table
    }

    /// Schedule reports for orders computed (not loaded) by this store.
    pub fn reports(&self) -> &[ScheduleReport] {
        &self.reports
    }

    fn order_path(dir: &Path, m: usize) -> PathBuf {
        dir.join(format!("order-{m}.jsonl"))
    }

    /// Make every order up to `m` available, loading cached files where present.
    pub fn ensure_order(&mut self, m: usize) -> Result<()> {
        if m > self.max_order {
            return Err(Error::OrderTooLarge { order: m, max: self.max_order });
        }
        for k in self.table.max_order() + 1..=m {
            if !self.try_load(k)? {
                let report = compute_order(k, &mut self.table)?;
                self.reports.push(report);
                self.persist(k)?;
            }
        }
        Ok(())
    }

    fn try_load(&mut self, m: usize) -> Result<bool> {
        let Some(dir) = &self.cache_dir else { return Ok(false) };
        let path = Self::order_path(dir, m);
        if !path.exists() {
            return Ok(false);
        }
        let (order, values) = HaarTable::read_order(BufReader::new(File::open(&path)?))?;
        if order != m {
            return Err(Error::Format(format!("{} holds order {order}", path.display())));
        }
        self.table.load_order(m, values)?;
        Ok(true)
    }

    fn persist(&self, m: usize) -> Result<()> {
        let Some(dir) = &self.cache_dir else { return Ok(()) };
        fs::create_dir_all(dir)?;
        let path = Self::order_path(dir, m);
        let tmp = path.with_extension("tmp");
        self.table.write_order(m, BufWriter::new(File::create(&tmp)?))?;
        fs::rename(tmp, path)?;
        Ok(())
    }

    /// Recompute order `m` from scratch on a fresh table and compare with this store.
    /// Returns the number of entries compared.
    pub fn validate_order(&mut self, m: usize) -> Result<usize> {
        self.ensure_order(m)?;
        let mut fresh = HaarTable::new();
        for k in 1..=m {
            compute_order(k, &mut fresh)?;
        }
        let mut count = 0;
        for (s, v) in self.table.order_entries(m) {
            if fresh.get(s) != Some(v) {
                return Err(Error::Inconsistent(format!("stored value of {s} disagrees with recomputation")));
            }
            count += 1;
        }
        Ok(count)
    }

    /// Haar state of a word; zero unless its counting matrix is doubly stochastic.
    pub fn haar_word(&mut self, w: &Word) -> Result<RationalFunction> {
        let counts = Mono::from_word(w);
        let Some(order) = counts.doubly_stochastic_order() else {
            return Ok(if w.is_empty() { RationalFunction::one() } else { RationalFunction::zero() });
        };
        if w.n != 3 {
            if order != 1 {
                return Err(Error::UnsupportedN(w.n));
            }
            // Order-1 normal monomials are x_{1 t(1)} ... x_{n t(n)}.
            let mut acc = RationalFunction::zero();
            for (m, c) in normal_form(w).terms() {
                let perm: Vec<usize> =
                    (0..w.n).map(|i| (0..w.n).find(|&j| m.entry(i, j) == 1).unwrap_or(0)).collect();
                acc += &(&order1_haar(w.n, &perm) * &RationalFunction::from(c));
            }
            return Ok(acc);
        }
        self.ensure_order(order)?;
        self.table.value_of_word(w)
    }

    pub fn haar_poly(&mut self, p: &NCPoly) -> Result<RationalFunction> {
        let mut acc = RationalFunction::zero();
        for (m, c) in p.terms() {
            let v = self.haar_word(&m.to_word())?;
            if !v.is_zero() {
                acc += &(&v * &RationalFunction::from(c));
            }
        }
        Ok(acc)
    }

    pub fn haar_str(&mut self, s: &str) -> Result<RationalFunction> {
        self.haar_word(&Word::parse_auto(s)?)
    }
}
