//! Integral points on the sphere `a1² + a2² + a3² + a4² = n`.
//!
//! Representations are kept in canonical form (non-negative, ascending),
//! one per sign/permutation orbit. From them we derive the signed count
//! `r(n)`, the L-value of a point (its least nonzero coordinate), and the
//! minimal `K` such that some point of the sphere has every nonzero
//! coordinate at least `√n / K`.

use std::fmt;

use crate::arith::{ceil_sqrt, exact_sqrt};
use crate::error::{Error, Result};

/// Largest `n` for which representations are listed exhaustively.
pub const ENUMERATION_MAX: u64 = 10_000_000;

/// Largest `n` accepted by the early-exit minimal-K search.
pub const MIN_K_FAST_MAX: u64 = 1 << 40;

/// A canonical four-square representation: entries sorted ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Quad([u64; 4]);

impl Quad {
    pub fn new(mut entries: [u64; 4]) -> Self {
        entries.sort_unstable();
        Quad(entries)
    }

    pub fn entries(&self) -> [u64; 4] {
        self.0
    }

    pub fn norm(&self) -> u128 {
        self.0.iter().map(|&a| a as u128 * a as u128).sum()
    }

    /// Entrywise multiple; order is preserved.
    pub fn scaled(&self, factor: u64) -> Quad {
        Quad(self.0.map(|a| a * factor))
    }

    pub fn nonzero_count(&self) -> u32 {
        self.0.iter().filter(|&&a| a != 0).count() as u32
    }

    /// Number of ordered signed quadruples in this orbit.
    pub fn orbit_size(&self) -> u64 {
        let mut perms = 24;
        let mut run = 1;
        for i in 1..4 {
            if self.0[i] == self.0[i - 1] {
                run += 1;
                perms /= run;
            } else {
                run = 1;
            }
        }
        perms << self.nonzero_count()
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "{a} {b} {c} {d}")
    }
}

/// Least nonzero entry; 0 for the zero quad.
pub fn l_value(q: &Quad) -> u64 {
    q.0.iter().copied().find(|&a| a != 0).unwrap_or(0)
}

fn check_enumerable(n: u64) -> Result<()> {
    if n > ENUMERATION_MAX {
        return Err(Error::Capacity {
            arg: "n",
            value: n,
            limit: ENUMERATION_MAX,
        });
    }
    Ok(())
}

fn check_positive(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::zero("n"));
    }
    Ok(())
}

/// Visits canonical representations with `a1 >= first_min` in
/// lexicographic order until `visit` returns `false`.
fn for_each_rep(n: u64, first_min: u64, mut visit: impl FnMut(Quad) -> bool) {
    let mut a = first_min;
    while 4 * a * a <= n {
        let mut b = a;
        while a * a + 3 * b * b <= n {
            let rest = n - a * a - b * b;
            let mut c = b;
            while 2 * c * c <= rest {
                if let Some(d) = exact_sqrt(rest - c * c) {
                    if !visit(Quad([a, b, c, d])) {
                        return;
                    }
                }
                c += 1;
            }
            b += 1;
        }
        a += 1;
    }
}

/// All canonical representations of `n`, sorted lexicographically.
pub fn enumerate_reps(n: u64) -> Result<Vec<Quad>> {
    check_enumerable(n)?;
    let mut reps = Vec::new();
    for_each_rep(n, 0, |q| {
        reps.push(q);
        true
    });
    Ok(reps)
}

/// `r(n)`: ordered signed quadruples, via orbit sizes of canonical reps.
pub fn ordered_signed_count(n: u64) -> Result<u64> {
    Ok(enumerate_reps(n)?.iter().map(Quad::orbit_size).sum())
}

pub fn has_four_nonzero_rep(n: u64) -> Result<bool> {
    check_positive(n)?;
    check_enumerable(n)?;
    let mut found = false;
    for_each_rep(n, 1, |_| {
        found = true;
        false
    });
    Ok(found)
}

/// Membership in the set of integers that are not a sum of four nonzero
/// squares: `{1,3,5,9,11,17,29,41}` together with `4^α·{2,6,14}`.
pub fn in_b(n: u64) -> bool {
    const SPORADIC: [u64; 8] = [1, 3, 5, 9, 11, 17, 29, 41];
    if SPORADIC.contains(&n) {
        return true;
    }
    if n == 0 {
        return false;
    }
    let mut m = n;
    while m.is_multiple_of(4) {
        m /= 4;
    }
    matches!(m, 2 | 6 | 14)
}

/// Points of the sphere whose coordinates all satisfy `denom·|a_i| >= √n`,
/// together with the total `r(n)`.
pub fn cap_count(n: u64, denom: u64) -> Result<(u64, u64)> {
    check_positive(n)?;
    if denom == 0 {
        return Err(Error::zero("denom"));
    }
    let reps = enumerate_reps(n)?;
    let total = reps.iter().map(Quad::orbit_size).sum();
    let denom = denom as u128;
    let in_cap = reps
        .iter()
        .filter(|q| {
            let least = q.0[0] as u128;
            least >= 1 && denom * denom * least * least >= n as u128
        })
        .map(Quad::orbit_size)
        .sum();
    Ok((in_cap, total))
}

/// Least `K >= 1` with `(K·l)² >= n`, for `l >= 1`.
pub fn min_k_for(n: u64, l: u64) -> u64 {
    debug_assert!(l >= 1);
    ceil_sqrt(n).div_ceil(l).max(1)
}

/// L-order analysis of a single integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepAnalysis {
    pub n: u64,
    pub reps: Vec<Quad>,
    /// Largest L-value over all representations.
    pub l_max: u64,
    /// Maximal points of the L-order: the reps attaining `l_max`.
    pub witnesses: Vec<Quad>,
    pub min_k: u64,
    pub has_four_nonzero: bool,
}

pub fn analyze(n: u64) -> Result<RepAnalysis> {
    check_positive(n)?;
    let reps = enumerate_reps(n)?;
    let l_max = reps.iter().map(l_value).max().unwrap_or(0);
    let witnesses = reps
        .iter()
        .filter(|q| l_value(q) == l_max)
        .copied()
        .collect();
    let has_four_nonzero = reps.iter().any(|q| q.0[0] > 0);
    Ok(RepAnalysis {
        n,
        min_k: min_k_for(n, l_max),
        reps,
        l_max,
        witnesses,
        has_four_nonzero,
    })
}

/// Queries about sums of two and three nonzero squares with a floor on the
/// smallest part. The early-exit L-max search is written against this so
/// scalar queries and table-backed sweeps share one code path.
pub trait SquareSums {
    /// Largest `c >= lo` with `r = c² + d²` and `c <= d`.
    fn two_min(&self, r: u64, lo: u64) -> Option<u64>;

    /// Largest `a >= lo` with `r = a² + b² + c²` and `a <= b <= c`.
    fn three_min(&self, r: u64, lo: u64) -> Option<u64> {
        if !is_sum_of_three_squares(r) {
            return None;
        }
        let lo = lo.max(1);
        let mut a = (r / 3).isqrt();
        while a >= lo {
            if self.two_min(r - a * a, a).is_some() {
                return Some(a);
            }
            a -= 1;
        }
        None
    }
}

/// Legendre: `r` is a sum of three squares unless `r = 4^a(8b + 7)`.
fn is_sum_of_three_squares(mut r: u64) -> bool {
    if r == 0 {
        return true;
    }
    while r.is_multiple_of(4) {
        r /= 4;
    }
    r % 8 != 7
}

/// Direct search, no precomputation.
#[derive(Debug, Clone, Copy, Default)]
pub struct ScalarSums;

impl SquareSums for ScalarSums {
    fn two_min(&self, r: u64, lo: u64) -> Option<u64> {
        let lo = lo.max(1);
        let mut c = (r / 2).isqrt();
        while c >= lo {
            if exact_sqrt(r - c * c).is_some() {
                return Some(c);
            }
            c -= 1;
        }
        None
    }
}

/// Precomputed best smallest parts of two- and three-square sums up to a
/// limit. Shared read-only by sweep workers.
#[derive(Debug, Clone)]
pub struct SquareSumTable {
    limit: u64,
    best_two: Vec<u32>,
    best_three: Vec<u32>,
}

impl SquareSumTable {
    pub fn new(limit: u64) -> Result<Self> {
        if limit > u32::MAX as u64 / 2 {
            return Err(Error::Capacity {
                arg: "limit",
                value: limit,
                limit: u32::MAX as u64 / 2,
            });
        }
        let len = limit as usize + 1;
        let mut best_two = vec![0u32; len];
        let mut c = 1u64;
        while 2 * c * c <= limit {
            let mut d = c;
            while c * c + d * d <= limit {
                best_two[(c * c + d * d) as usize] = c as u32;
                d += 1;
            }
            c += 1;
        }
        let mut table = SquareSumTable {
            limit,
            best_two,
            best_three: Vec::new(),
        };
        let best_three = (0..=limit)
            .map(|r| {
                let scalar = TwoOnly(&table.best_two);
                scalar.three_min(r, 1).unwrap_or(0) as u32
            })
            .collect();
        table.best_three = best_three;
        Ok(table)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Largest L-value over the representations of `n`.
    pub fn l_max(&self, n: u64) -> u64 {
        assert!(n <= self.limit, "{n} beyond table limit {}", self.limit);
        l_max_with(n, self)
    }

    pub fn min_k(&self, n: u64) -> u64 {
        min_k_for(n, self.l_max(n))
    }
}

// Table lookups for two-square sums while the three-square table is built.
struct TwoOnly<'a>(&'a [u32]);

impl SquareSums for TwoOnly<'_> {
    fn two_min(&self, r: u64, lo: u64) -> Option<u64> {
        let best = self.0[r as usize] as u64;
        (best >= lo.max(1)).then_some(best)
    }
}

impl SquareSums for SquareSumTable {
    fn two_min(&self, r: u64, lo: u64) -> Option<u64> {
        let best = self.best_two[r as usize] as u64;
        (best >= lo.max(1)).then_some(best)
    }

    fn three_min(&self, r: u64, lo: u64) -> Option<u64> {
        let best = self.best_three[r as usize] as u64;
        (best >= lo.max(1)).then_some(best)
    }
}

/// Largest least-nonzero-part over representations of `n >= 1`, searching
/// one, two, three and four nonzero parts with early exit.
pub fn l_max_with<S: SquareSums + ?Sized>(n: u64, sums: &S) -> u64 {
    if let Some(root) = exact_sqrt(n) {
        return root;
    }
    let mut best = sums.two_min(n, 1).unwrap_or(0);
    if let Some(a) = sums.three_min(n, best + 1) {
        best = a;
    }
    let mut a = (n / 4).isqrt();
    while a > best {
        if sums.three_min(n - a * a, a).is_some() {
            best = a;
            break;
        }
        a -= 1;
    }
    best
}

/// Minimal K of `n` without listing every representation.
pub fn min_k_fast(n: u64) -> Result<u64> {
    check_positive(n)?;
    if n > MIN_K_FAST_MAX {
        return Err(Error::Capacity {
            arg: "n",
            value: n,
            limit: MIN_K_FAST_MAX,
        });
    }
    Ok(min_k_for(n, l_max_with(n, &ScalarSums)))
}
