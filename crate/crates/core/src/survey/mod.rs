//! Range sweeps: per-`n` minimal-K classification with per-K aggregates,
//! and the Frobenius tables for lists of `n`.
//!
//! A sweep splits its range into fixed-size blocks, classifies a wave of
//! blocks on a worker pool, then folds the blocks in `n` order into the
//! summary, the kclass CSV and the checkpoint. Everything written depends
//! only on the range, never on the worker count.

pub mod checkpoint;
pub mod csv;

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use rayon::prelude::*;

use crate::arith::{build_sieve, SieveTables};
use crate::error::{Error, Result};
use crate::lattice::{analyze, SquareSumTable};
use crate::semigroup::{f_four, frobenius_gamma, DEFAULT_FACTOR};
pub use checkpoint::Checkpoint;

/// Sweeps above this need `full_range`.
pub const DEFAULT_CEILING: u64 = 100_000;

/// Hard limit with `full_range`.
pub const FULL_RANGE_CEILING: u64 = 16_000_000;

/// Minimal-K classification of one integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KClassRow {
    pub n: u64,
    pub min_k: u64,
    pub l_max: u64,
    pub squarefree: bool,
}

/// Aggregates for one value of K: how many integers have it as their
/// minimal K, how many of those are squarefree, and the largest such
/// squarefree integer.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct KStats {
    pub count_i: u64,
    pub count_s: u64,
    pub max_s: Option<u64>,
}

impl KStats {
    fn record(&mut self, row: &KClassRow) {
        self.count_i += 1;
        if row.squarefree {
            self.count_s += 1;
            self.max_s = self.max_s.max(Some(row.n));
        }
    }

    fn merge(&mut self, other: &KStats) {
        self.count_i += other.count_i;
        self.count_s += other.count_s;
        self.max_s = self.max_s.max(other.max_s);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Table1Row {
    pub k: u64,
    pub stats: KStats,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Summary {
    pub range_lo: u64,
    pub range_hi: u64,
    pub classes: BTreeMap<u64, KStats>,
}

impl Table1Summary {
    pub fn new(range_lo: u64, range_hi: u64) -> Self {
        Table1Summary {
            range_lo,
            range_hi,
            classes: BTreeMap::new(),
        }
    }

    pub fn record(&mut self, row: &KClassRow) {
        self.classes.entry(row.min_k).or_default().record(row);
    }

    pub fn merge(&mut self, other: &Table1Summary) {
        for (k, s) in &other.classes {
            self.classes.entry(*k).or_default().merge(s);
        }
    }

    pub fn get(&self, k: u64) -> KStats {
        self.classes.get(&k).copied().unwrap_or_default()
    }

    pub fn total(&self) -> u64 {
        self.classes.values().map(|s| s.count_i).sum()
    }

    pub fn max_k(&self) -> Option<u64> {
        self.classes.keys().next_back().copied()
    }

    /// One row per K from 1 to the largest K seen, zero rows included.
    pub fn rows(&self) -> Vec<Table1Row> {
        (1..=self.max_k().unwrap_or(0))
            .map(|k| Table1Row {
                k,
                stats: self.get(k),
            })
            .collect()
    }
}

/// Fraction of rows re-checked against full enumeration. Row `n` is
/// checked when `⌊n·num/den⌋` steps up at `n`, so `1/1000` picks every
/// 1000th integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyFraction {
    num: u64,
    den: u64,
}

impl VerifyFraction {
    pub const NONE: VerifyFraction = VerifyFraction { num: 0, den: 1 };
    pub const DEFAULT: VerifyFraction = VerifyFraction { num: 1, den: 1000 };

    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::domain(
                "verify fraction",
                format!("{num}/{den} is not in [0, 1]"),
            ));
        }
        Ok(VerifyFraction { num, den })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn selects(&self, n: u64) -> bool {
        let (num, den) = (self.num as u128, self.den as u128);
        let n = n as u128;
        n >= 1 && (n * num) / den != ((n - 1) * num) / den
    }
}

impl Default for VerifyFraction {
    fn default() -> Self {
        Self::DEFAULT
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub range_lo: u64,
    pub range_hi: u64,
    pub worker_count: usize,
    pub checkpoint_path: Option<PathBuf>,
    /// Destination of the kclass CSV; `None` keeps rows in memory only.
    pub output_path: Option<PathBuf>,
    pub verify_fraction: VerifyFraction,
    pub block_size: u64,
    /// Permits `range_hi` above [`DEFAULT_CEILING`].
    pub full_range: bool,
}

impl SweepConfig {
    pub fn new(range_lo: u64, range_hi: u64) -> Self {
        SweepConfig {
            range_lo,
            range_hi,
            worker_count: 1,
            checkpoint_path: None,
            output_path: None,
            verify_fraction: VerifyFraction::DEFAULT,
            block_size: 4096,
            full_range: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.range_lo == 0 {
            return Err(Error::zero("range start"));
        }
        if self.range_lo > self.range_hi {
            return Err(Error::domain(
                "range",
                format!("start {} exceeds end {}", self.range_lo, self.range_hi),
            ));
        }
        if self.worker_count == 0 {
            return Err(Error::zero("worker count"));
        }
        if self.block_size == 0 {
            return Err(Error::zero("block size"));
        }
        let ceiling = if self.full_range {
            FULL_RANGE_CEILING
        } else {
            DEFAULT_CEILING
        };
        if self.range_hi > ceiling {
            return Err(Error::Capacity {
                arg: "range end",
                value: self.range_hi,
                limit: ceiling,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepOutcome {
    Complete,
    /// Stopped by the caller after `last_n` was checkpointed.
    Halted { last_n: u64 },
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub summary: Table1Summary,
    pub outcome: SweepOutcome,
    /// Rows classified by this run, when no output file was requested.
    pub rows: Vec<KClassRow>,
}

fn classify_block(
    lo: u64,
    hi: u64,
    sums: &SquareSumTable,
    sieve: &SieveTables,
    verify: VerifyFraction,
) -> Result<Vec<KClassRow>> {
    (lo..=hi)
        .map(|n| {
            let l_max = sums.l_max(n);
            let row = KClassRow {
                n,
                min_k: crate::lattice::min_k_for(n, l_max),
                l_max,
                squarefree: sieve.is_squarefree(n),
            };
            if verify.selects(n) {
                let full = analyze(n)?;
                if (full.min_k, full.l_max) != (row.min_k, row.l_max) {
                    return Err(Error::Verification {
                        n,
                        detail: format!(
                            "fast search gave K={} L={}, enumeration gave K={} L={}",
                            row.min_k, row.l_max, full.min_k, full.l_max
                        ),
                    });
                }
            }
            Ok(row)
        })
        .collect()
}

/// Restores a resumable state, truncating the kclass file to the
/// checkpointed prefix.
fn resume(config: &SweepConfig) -> Result<Table1Summary> {
    let mut summary = Table1Summary::new(config.range_lo, config.range_hi);
    let Some(ckpt_path) = &config.checkpoint_path else {
        return Ok(summary);
    };
    if !ckpt_path.exists() {
        return Ok(summary);
    }
    let ckpt = Checkpoint::read(ckpt_path)?;
    let bad = |detail: String| Error::Format {
        path: ckpt_path.clone(),
        detail,
    };
    if ckpt.last_n + 1 < config.range_lo || ckpt.last_n > config.range_hi {
        return Err(bad(format!(
            "last_n={} does not lie in the sweep range {}..={}",
            ckpt.last_n, config.range_lo, config.range_hi
        )));
    }
    summary.range_lo = config.range_lo;
    summary.classes = ckpt.classes;
    let done = ckpt.last_n + 1 - config.range_lo;
    if summary.total() != done {
        return Err(bad(format!(
            "aggregates cover {} integers, expected {done}",
            summary.total()
        )));
    }
    if let Some(out) = &config.output_path {
        let text = fs::read_to_string(out)?;
        let rows = csv::parse_kclass(&text, out)?;
        let kept: Vec<KClassRow> = rows.into_iter().filter(|r| r.n <= ckpt.last_n).collect();
        let contiguous = kept
            .iter()
            .zip(config.range_lo..)
            .all(|(r, n)| r.n == n);
        if kept.len() as u64 != done || !contiguous {
            return Err(Error::Format {
                path: out.clone(),
                detail: format!(
                    "holds {} rows up to n={}, checkpoint expects {done}",
                    kept.len(),
                    ckpt.last_n
                ),
            });
        }
        fs::write(out, csv::kclass_csv(&kept))?;
    }
    Ok(summary)
}

/// Classifies every `n` in the configured range.
///
/// After each block is folded in, `keep_going` receives the highest
/// contiguous completed `n`; returning `false` stops the sweep there.
/// If the checkpoint file already exists, the sweep resumes from it.
pub fn sweep_classification_with(
    config: &SweepConfig,
    mut keep_going: impl FnMut(u64) -> bool,
) -> Result<SweepReport> {
    config.validate()?;
    let mut summary = resume(config)?;
    let mut next = config.range_lo + summary.total();

    let mut out = match &config.output_path {
        Some(path) => {
            let file = if next > config.range_lo {
                fs::OpenOptions::new().append(true).open(path)?
            } else {
                let mut f = File::create(path)?;
                writeln!(f, "{}", csv::KCLASS_HEADER)?;
                f
            };
            Some(BufWriter::new(file))
        }
        None => None,
    };
    let checkpoint = |summary: &Table1Summary, last_n: u64| -> Result<()> {
        if let Some(path) = &config.checkpoint_path {
            Checkpoint {
                last_n,
                classes: summary.classes.clone(),
            }
            .write(path)?;
        }
        Ok(())
    };
    checkpoint(&summary, next - 1)?;

    let sums = SquareSumTable::new(config.range_hi)?;
    let sieve = build_sieve(config.range_hi)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.worker_count)
        .build()
        .map_err(|e| Error::domain("worker count", e.to_string()))?;

    let mut rows_in_memory = Vec::new();
    let wave_blocks = config.worker_count as u64 * 4;
    while next <= config.range_hi {
        let blocks: Vec<(u64, u64)> = (0..wave_blocks)
            .map(|i| next + i * config.block_size)
            .take_while(|&lo| lo <= config.range_hi)
            .map(|lo| (lo, (lo + config.block_size - 1).min(config.range_hi)))
            .collect();
        let results: Vec<Result<Vec<KClassRow>>> = pool.install(|| {
            blocks
                .par_iter()
                .map(|&(lo, hi)| classify_block(lo, hi, &sums, &sieve, config.verify_fraction))
                .collect()
        });
        for ((_, hi), rows) in blocks.iter().zip(results) {
            let rows = rows?;
            for row in &rows {
                summary.record(row);
            }
            match out.as_mut() {
                Some(w) => {
                    for row in &rows {
                        writeln!(w, "{}", csv::kclass_line(row))?;
                    }
                    w.flush()?;
                }
                None => rows_in_memory.extend(rows),
            }
            checkpoint(&summary, *hi)?;
            next = hi + 1;
            if next <= config.range_hi && !keep_going(*hi) {
                return Ok(SweepReport {
                    summary,
                    outcome: SweepOutcome::Halted { last_n: *hi },
                    rows: rows_in_memory,
                });
            }
        }
    }
    Ok(SweepReport {
        summary,
        outcome: SweepOutcome::Complete,
        rows: rows_in_memory,
    })
}

pub fn sweep_classification(config: &SweepConfig) -> Result<SweepReport> {
    sweep_classification_with(config, |_| true)
}

/// Rows and summary for `lo..=hi` in memory, without files.
pub fn classify_range(lo: u64, hi: u64, workers: usize) -> Result<(Vec<KClassRow>, Table1Summary)> {
    let mut config = SweepConfig::new(lo, hi);
    config.worker_count = workers;
    config.full_range = true;
    let report = sweep_classification(&config)?;
    Ok((report.rows, report.summary))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Table2Row {
    pub n: u64,
    pub f_gamma: u64,
    pub f_four: u64,
}

fn per_row<T: Send>(
    n_values: &[u64],
    f: impl Fn(u64) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    n_values
        .par_iter()
        .map(|&n| {
            f(n).map_err(|e| Error::Row {
                n,
                source: Box::new(e),
            })
        })
        .collect()
}

fn check_at_least_two(n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::domain("n", format!("must be at least 2, got {n}")));
    }
    Ok(())
}

/// `F(Γₙ)` and the four-square value for each `n`, in input order.
pub fn table2_survey(n_values: &[u64], factor: u64) -> Result<Vec<Table2Row>> {
    per_row(n_values, |n| {
        check_at_least_two(n)?;
        Ok(Table2Row {
            n,
            f_gamma: frobenius_gamma(n)?.frobenius,
            f_four: f_four(n, factor)?.largest_gap,
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fig1Row {
    pub n: u64,
    pub f_gamma: u64,
    pub f_four: u64,
    pub bound46: u64,
    pub bound64: u64,
}

/// The `table2` columns next to the curves `46n²` and `64n²`; for `n >= 5` the
/// four-square value must lie under `46n²`.
pub fn figure1_data(n_values: &[u64]) -> Result<Vec<Fig1Row>> {
    per_row(n_values, |n| {
        check_at_least_two(n)?;
        let f_gamma = frobenius_gamma(n)?.frobenius;
        let f_four = f_four(n, DEFAULT_FACTOR)?.largest_gap;
        let bound46 = 46 * n * n;
        if n >= 5 && f_four > bound46 {
            return Err(Error::DataInconsistency {
                n,
                detail: format!("four-square value {f_four} exceeds 46n² = {bound46}"),
            });
        }
        Ok(Fig1Row {
            n,
            f_gamma,
            f_four,
            bound46,
            bound64: 64 * n * n,
        })
    })
}
