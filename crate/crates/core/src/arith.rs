//! Exact integer arithmetic: divisor sums avoiding multiples of 4,
//! squarefree detection and decomposition, and a batch sieve for sweeps.
//!
//! Everything here is integer-only. `σ′(n)` denotes the sum of the divisors
//! of `n` that are not divisible by 4, so that the number of ordered signed
//! four-square representations of `n` equals `8σ′(n)`.

use crate::error::{Error, Result};

/// Largest `limit` the batch sieve accepts (about 21 bytes per entry while building).
pub const SIEVE_MAX: u64 = 20_000_000;

/// Returns `Some(r)` when `n == r * r`.
pub fn exact_sqrt(n: u64) -> Option<u64> {
    let r = n.isqrt();
    (r * r == n).then_some(r)
}

/// Smallest `k` with `k * k >= n`.
pub fn ceil_sqrt(n: u64) -> u64 {
    let r = n.isqrt();
    if r * r == n {
        r
    } else {
        r + 1
    }
}

/// Sum of the divisors of `n` that are not multiples of 4, by trial division.
pub fn sigma_prime(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::zero("n"));
    }
    let mut sum = 0;
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            if d % 4 != 0 {
                sum += d;
            }
            let e = n / d;
            if e != d && !e.is_multiple_of(4) {
                sum += e;
            }
        }
        d += 1;
    }
    Ok(sum)
}

/// `r(n)` through Jacobi's closed form `8σ′(n)`.
pub fn jacobi_r(n: u64) -> Result<u64> {
    Ok(8 * sigma_prime(n)?)
}

pub fn is_squarefree(n: u64) -> Result<bool> {
    Ok(squarefree_decompose(n)?.0 == 1)
}

/// Writes `n = rho² · q` with `q` squarefree.
pub fn squarefree_decompose(n: u64) -> Result<(u64, u64)> {
    if n == 0 {
        return Err(Error::zero("n"));
    }
    let mut rest = n;
    let mut rho = 1;
    let mut q = 1;
    let mut p = 2;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            rho *= p.pow(e / 2);
            if e % 2 == 1 {
                q *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // whatever survives is a single prime
    q *= rest;
    Ok((rho, q))
}

/// Batch `σ′` values and squarefree flags for `1..=limit`.
///
/// Built once with a linear smallest-prime-factor sieve, then read-only.
#[derive(Debug, Clone)]
pub struct SieveTables {
    limit: u64,
    sigma_prime: Vec<u64>,
    squarefree: Vec<bool>,
}

impl SieveTables {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Panics when `k` is 0 or above the limit.
    pub fn sigma_prime(&self, k: u64) -> u64 {
        assert!(k >= 1 && k <= self.limit, "index {k} outside 1..={}", self.limit);
        self.sigma_prime[k as usize]
    }

    /// Panics when `k` is 0 or above the limit.
    pub fn is_squarefree(&self, k: u64) -> bool {
        assert!(k >= 1 && k <= self.limit, "index {k} outside 1..={}", self.limit);
        self.squarefree[k as usize]
    }

    pub fn sigma_prime_table(&self) -> &[u64] {
        &self.sigma_prime[1..]
    }

    pub fn squarefree_flags(&self) -> &[bool] {
        &self.squarefree[1..]
    }
}

pub fn build_sieve(limit: u64) -> Result<SieveTables> {
    if limit == 0 {
        return Err(Error::zero("limit"));
    }
    if limit > SIEVE_MAX {
        return Err(Error::Capacity {
            arg: "limit",
            value: limit,
            limit: SIEVE_MAX,
        });
    }
    let len = limit as usize + 1;

    let mut spf = vec![0u32; len];
    // largest power of spf[k] dividing k
    let mut spf_power = vec![0u64; len];
    let mut primes: Vec<u32> = Vec::new();
    let mut sigma = vec![0u64; len];
    let mut squarefree = vec![false; len];
    sigma[1] = 1;
    squarefree[1] = true;

    for k in 2..len {
        if spf[k] == 0 {
            spf[k] = k as u32;
            primes.push(k as u32);
        }
        let p = spf[k];
        for &q in &primes {
            let multiple = k * q as usize;
            if q > p || multiple >= len {
                break;
            }
            spf[multiple] = q;
        }

        let p = p as u64;
        let m = k as u64 / p;
        let pk = if m.is_multiple_of(p) { spf_power[m as usize] * p } else { p };
        spf_power[k] = pk;
        let cofactor = k as u64 / pk;
        let local = if p == 2 { 3 } else { (pk * p - 1) / (p - 1) };
        sigma[k] = sigma[cofactor as usize] * local;
        squarefree[k] = pk == p && squarefree[cofactor as usize];
    }

    Ok(SieveTables {
        limit,
        sigma_prime: sigma,
        squarefree,
    })
}
