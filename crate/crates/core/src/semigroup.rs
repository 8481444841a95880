//! Sums of squares of integers `>= n`.
//!
//! `Γₙ` is the additive monoid generated by `{n², (n+1)², …}` (0 belongs
//! through the empty sum). Its Frobenius number is found by growing a
//! membership bit table until it contains `n²` consecutive members, after
//! which every larger integer is a member too. The bounded variant allows
//! at most four squares, and its largest gap is searched below
//! `factor · n²`.

use crate::bits::BitTable;
use crate::error::{Error, Result};

/// Largest membership table, in bits.
pub const MEMBERSHIP_MAX_BITS: u64 = 2_000_000_000;

/// Largest `n` for the two-generator Frobenius formula in 64-bit arithmetic.
pub const SYLVESTER_MAX_N: u64 = 1 << 15;

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::zero("n"));
    }
    Ok(())
}

fn check_bound(bound: u64) -> Result<()> {
    if bound >= MEMBERSHIP_MAX_BITS {
        return Err(Error::Capacity {
            arg: "bound",
            value: bound,
            limit: MEMBERSHIP_MAX_BITS - 1,
        });
    }
    Ok(())
}

/// Frobenius number of the coprime pair `{n², (n+1)²}`, or -1 when `n = 1`.
pub fn sylvester_frobenius(n: u64) -> Result<i64> {
    check_n(n)?;
    if n > SYLVESTER_MAX_N {
        return Err(Error::Capacity {
            arg: "n",
            value: n,
            limit: SYLVESTER_MAX_N,
        });
    }
    let a = (n * n) as i64;
    let b = ((n + 1) * (n + 1)) as i64;
    Ok(a * b - a - b)
}

/// Squares `k²` with `k >= n` and `k² <= bound`.
fn generators(n: u64, bound: u64) -> impl Iterator<Item = u64> {
    (n..).map(|k| k * k).take_while(move |&g| g <= bound)
}

/// Membership in `Γₙ` for every integer in `0..=bound`.
pub fn gamma_membership_table(n: u64, bound: u64) -> Result<BitTable> {
    check_n(n)?;
    check_bound(bound)?;
    let mut table = BitTable::new(bound + 1);
    table.set(0);
    for g in generators(n, bound) {
        table.close_under(g, 0);
    }
    Ok(table)
}

/// Frobenius number of `Γₙ` with its certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GammaResult {
    pub n: u64,
    pub frobenius: u64,
    /// `frobenius + 1 ..= certified_bound` were all verified members and
    /// contain `n²` consecutive members.
    pub certified_bound: u64,
    /// Number of positive integers outside `Γₙ`.
    pub gaps: u64,
}

/// Exact `F(Γₙ)`.
///
/// For `n = 1` there are no gaps and the result is the sentinel
/// `frobenius = 0, gaps = 0`.
pub fn frobenius_gamma(n: u64) -> Result<GammaResult> {
    check_n(n)?;
    if n == 1 {
        return Ok(GammaResult {
            n,
            frobenius: 0,
            certified_bound: 1,
            gaps: 0,
        });
    }
    let window = n * n;
    // Past this, the two smallest generators alone cover everything.
    let hard_limit = sylvester_frobenius(n)? as u64 + window;

    let mut table = BitTable::new(1);
    table.set(0);
    let mut gens: Vec<u64> = Vec::new();
    let mut last_gap = 0u64;
    let mut chunk = 8 * window;

    loop {
        let done = table.len();
        let len = (done + chunk).min(hard_limit + 1);
        check_bound(len - 1)?;
        table.grow(len);
        // register generators that now fall inside the table
        let next = n + gens.len() as u64;
        gens.extend(generators(next, len - 1));
        for &g in &gens {
            table.close_under(g, done);
        }
        if let Some(z) = table.last_zero_in(done, len) {
            last_gap = z;
        }
        if len - 1 - last_gap >= window || len > hard_limit {
            break;
        }
        chunk *= 2;
    }

    let gaps = (1..=last_gap).filter(|&m| !table.get(m)).count() as u64;
    Ok(GammaResult {
        n,
        frobenius: last_gap,
        certified_bound: last_gap + window,
        gaps,
    })
}

/// Membership in sums of at most four squares `>= n²`, over `0..=bound`.
pub fn four_square_membership(n: u64, bound: u64) -> Result<BitTable> {
    check_n(n)?;
    check_bound(bound)?;
    let gens: Vec<u64> = generators(n, bound).collect();
    let mut reach = BitTable::new(bound + 1);
    reach.set(0);
    for _ in 0..4 {
        let mut next = reach.clone();
        for &g in &gens {
            next.or_shifted(&reach, g);
        }
        reach = next;
    }
    Ok(reach)
}

/// Largest integer up to `factor · n²` that is not a sum of at most four
/// squares `>= n²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FourSquareResult {
    pub n: u64,
    pub bound: u64,
    pub largest_gap: u64,
    /// Always true: no gap above `bound` is ruled out unconditionally.
    /// With the default factor 64 the bound holds whenever every integer
    /// has a representation whose nonzero parts are all `>= √m / 8`.
    pub conditional: bool,
}

pub const DEFAULT_FACTOR: u64 = 64;

pub fn f_four(n: u64, factor: u64) -> Result<FourSquareResult> {
    check_n(n)?;
    if n < 2 {
        return Err(Error::domain("n", "must be at least 2, got 1"));
    }
    if factor == 0 {
        return Err(Error::zero("factor"));
    }
    let bound = factor
        .checked_mul(n * n)
        .filter(|&b| b < MEMBERSHIP_MAX_BITS)
        .ok_or(Error::Capacity {
            arg: "factor·n²",
            value: factor.saturating_mul(n.saturating_mul(n)),
            limit: MEMBERSHIP_MAX_BITS - 1,
        })?;
    let table = four_square_membership(n, bound)?;
    let largest_gap = table
        .last_zero_in(1, bound + 1)
        .expect("n² - 1 is never a sum of squares >= n²");
    Ok(FourSquareResult {
        n,
        bound,
        largest_gap,
        conditional: true,
    })
}

/// `46 · 4^(⌈log₂ n⌉ - 1)`, the observed closed form of the four-square
/// Frobenius value for `n >= 5`.
pub fn f_four_pattern(n: u64) -> Result<u64> {
    if n < 5 {
        return Err(Error::domain("n", format!("must be at least 5, got {n}")));
    }
    let ceil_log2 = 64 - (n - 1).leading_zeros();
    46u64
        .checked_mul(1u64.checked_shl(2 * (ceil_log2 - 1)).unwrap_or(0))
        .filter(|&v| v != 0)
        .ok_or(Error::Capacity {
            arg: "n",
            value: n,
            limit: 1 << 30,
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones(t: &BitTable) -> Vec<u64> {
        t.ones().collect()
    }

    // Naive recursive descent: m is a member iff m = 0 or m - g is a member
    // for some generator g.
    fn member_naive(m: u64, n: u64, memo: &mut Vec<Option<bool>>) -> bool {
        if m == 0 {
            return true;
        }
        if let Some(v) = memo[m as usize] {
            return v;
        }
        let v = generators(n, m).any(|g| member_naive(m - g, n, memo));
        memo[m as usize] = Some(v);
        v
    }

    // Sums of at most `parts` generators, by recursion on the largest part.
    fn four_naive(m: u64, n: u64, parts: u32, max_gen: u64) -> bool {
        if m == 0 {
            return true;
        }
        if parts == 0 {
            return false;
        }
        generators(n, m.min(max_gen)).any(|g| four_naive(m - g, n, parts - 1, g))
    }

    // Largest non-negative integer outside the span of {a, b}.
    fn coin_frobenius_brute(a: u64, b: u64) -> i64 {
        let limit = a * b;
        let mut reach = vec![false; limit as usize + 1];
        reach[0] = true;
        for m in 1..=limit as usize {
            reach[m] = (m >= a as usize && reach[m - a as usize])
                || (m >= b as usize && reach[m - b as usize]);
        }
        reach.iter().rposition(|&r| !r).map_or(-1, |p| p as i64)
    }

    #[test]
    fn sylvester_examples() {
        assert_eq!(sylvester_frobenius(1).unwrap(), -1);
        assert_eq!(sylvester_frobenius(2).unwrap(), 23);
        assert_eq!(sylvester_frobenius(3).unwrap(), 119);
        assert!(sylvester_frobenius(0).is_err());
        assert!(sylvester_frobenius(SYLVESTER_MAX_N + 1).is_err());
        assert!(sylvester_frobenius(SYLVESTER_MAX_N).is_ok());
        for n in 1..=5u64 {
            assert_eq!(
                sylvester_frobenius(n).unwrap(),
                coin_frobenius_brute(n * n, (n + 1) * (n + 1))
            );
        }
    }

    #[test]
    fn gamma_table_examples() {
        assert_eq!(ones(&gamma_membership_table(1, 5).unwrap()), (0..=5).collect::<Vec<_>>());
        assert_eq!(ones(&gamma_membership_table(2, 10).unwrap()), vec![0, 4, 8, 9]);
        assert_eq!(ones(&gamma_membership_table(3, 8).unwrap()), vec![0]);
        assert!(gamma_membership_table(0, 8).is_err());
        assert!(gamma_membership_table(2, MEMBERSHIP_MAX_BITS).is_err());
    }

    #[test]
    fn four_square_examples() {
        assert_eq!(
            ones(&four_square_membership(2, 20).unwrap()),
            vec![0, 4, 8, 9, 12, 13, 16, 17, 18, 20]
        );
        assert_eq!(four_square_membership(1, 10).unwrap().count_ones(), 11);
        assert_eq!(
            ones(&four_square_membership(3, 35).unwrap()),
            vec![0, 9, 16, 18, 25, 27, 32, 34]
        );
    }

    #[test]
    fn tables_match_naive_oracles() {
        for n in 2..=4 {
            let gamma = gamma_membership_table(n, 500).unwrap();
            let four = four_square_membership(n, 500).unwrap();
            let mut memo = vec![None; 501];
            for m in 0..=500 {
                assert_eq!(gamma.get(m), member_naive(m, n, &mut memo), "Γ_{n} at {m}");
                assert_eq!(four.get(m), four_naive(m, n, 4, u64::MAX), "four_{n} at {m}");
            }
        }
    }

    #[test]
    fn gamma_small_rows() {
        assert_eq!(frobenius_gamma(2).unwrap().frobenius, 23);
        assert_eq!(frobenius_gamma(5).unwrap().frobenius, 201);
        assert_eq!(frobenius_gamma(30).unwrap().frobenius, 5523);
        let one = frobenius_gamma(1).unwrap();
        assert_eq!((one.frobenius, one.gaps), (0, 0));
        assert!(frobenius_gamma(0).is_err());
    }

    #[test]
    fn gamma_certificate_holds() {
        for n in 2..=25 {
            let r = frobenius_gamma(n).unwrap();
            let t = gamma_membership_table(n, r.certified_bound).unwrap();
            assert!(!t.get(r.frobenius));
            assert!((r.frobenius + 1..=r.frobenius + n * n).all(|m| t.get(m)));
            let gaps = (1..=r.frobenius).filter(|&m| !t.get(m)).count() as u64;
            assert_eq!(gaps, r.gaps);
            assert!(r.gaps >= 1 && !t.get(n * n - 1));
            assert!(r.frobenius as i64 <= sylvester_frobenius(n).unwrap());
        }
    }

    #[test]
    fn f_four_small_rows() {
        assert_eq!(f_four(2, DEFAULT_FACTOR).unwrap().largest_gap, 55);
        assert_eq!(f_four(3, DEFAULT_FACTOR).unwrap().largest_gap, 184);
        assert_eq!(f_four(9, DEFAULT_FACTOR).unwrap().largest_gap, 2944);
        let r = f_four(4, DEFAULT_FACTOR).unwrap();
        assert_eq!((r.largest_gap, r.bound, r.conditional), (239, 1024, true));
        assert!(f_four(1, 64).is_err());
        assert!(f_four(3, 0).is_err());
    }

    #[test]
    fn pattern_examples() {
        assert_eq!(f_four_pattern(5).unwrap(), 736);
        assert_eq!(f_four_pattern(8).unwrap(), 736);
        assert_eq!(f_four_pattern(9).unwrap(), 2944);
        assert_eq!(f_four_pattern(200).unwrap(), 753664);
        assert!(f_four_pattern(4).is_err());
    }

    #[test]
    fn gamma_is_closed_under_addition() {
        for n in 1..=20 {
            let t = gamma_membership_table(n, 10_000).unwrap();
            for a in t.ones() {
                let mut shifted = BitTable::new(t.len());
                shifted.or_shifted(&t, a);
                assert!(shifted.is_subset_of(&t), "n={n}: {a} + member escapes");
            }
        }
    }
}
