//! Möbius values and Mertens prefix sums up to a fixed limit.

use crate::error::{Error, Result};

/// Default largest sieve limit, in entries.
pub const DEFAULT_MEMORY_CAP: u64 = 100_000_000;

/// Environment variable overriding [`DEFAULT_MEMORY_CAP`].
pub const MEMORY_CAP_ENV: &str = "MERTENS_MEMORY_CAP";

/// Bytes per sieve entry: one for μ, eight for M, one for the composite flag.
const BYTES_PER_ENTRY: u64 = 10;

/// Memory cap from the environment, falling back to the default.
pub fn memory_cap_from_env() -> u64 {
    std::env::var(MEMORY_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().replace('_', "").parse().ok())
        .unwrap_or(DEFAULT_MEMORY_CAP)
}

#[derive(Debug, Clone)]
pub struct MertensTable {
    // index 0 is unused for μ and holds M(0) = 0 for M
    mobius: Vec<i8>,
    mertens: Vec<i64>,
}

impl MertensTable {
    /// Sieve up to `limit` with the default memory cap.
    pub fn new(limit: u64) -> Result<Self> {
        Self::with_cap(limit, DEFAULT_MEMORY_CAP)
    }

    /// Linear sieve up to `limit`, rejecting limits above `cap` entries.
    pub fn with_cap(limit: u64, cap: u64) -> Result<Self> {
        if limit == 0 {
            return Err(Error::ZeroLimit);
        }
        if limit > cap {
            return Err(Error::LimitAboveCap {
                limit,
                cap,
                bytes: limit.saturating_mul(BYTES_PER_ENTRY),
            });
        }
        let len = usize::try_from(limit).map_err(|_| Error::Overflow("sieve size"))? + 1;

        let mut mobius = vec![0i8; len];
        let mut composite = vec![false; len];
        let mut primes: Vec<usize> = Vec::new();
        mobius[1] = 1;
        for i in 2..len {
            if !composite[i] {
                primes.push(i);
                mobius[i] = -1;
            }
            for &p in &primes {
                let m = i * p;
                if m >= len {
                    break;
                }
                composite[m] = true;
                if i % p == 0 {
                    mobius[m] = 0;
                    break;
                }
                mobius[m] = -mobius[i];
            }
        }
        drop(composite);

        let mut mertens = Vec::with_capacity(len);
        let mut acc = 0i64;
        mertens.push(0);
        for &mu in &mobius[1..] {
            acc += i64::from(mu);
            mertens.push(acc);
        }
        Ok(Self { mobius, mertens })
    }

    pub fn limit(&self) -> u64 {
        (self.mertens.len() - 1) as u64
    }

    /// μ(k) for `1 <= k <= limit`.
    ///
    /// # Panics
    /// If `k` is zero or above the limit.
    #[inline]
    pub fn mobius(&self, k: u64) -> i8 {
        assert!(k >= 1, "mobius is defined from 1");
        self.mobius[k as usize]
    }

    /// M(k) for `0 <= k <= limit`, with `M(0) = 0`.
    ///
    /// # Panics
    /// If `k` is above the limit.
    #[inline]
    pub fn mertens(&self, k: u64) -> i64 {
        self.mertens[k as usize]
    }

    pub fn try_mertens(&self, k: u64) -> Result<i64> {
        self.mertens
            .get(k as usize)
            .copied()
            .ok_or(Error::TableTooSmall { limit: self.limit(), needed: k })
    }

    /// Fails unless `k <= limit`.
    pub fn require(&self, k: u64) -> Result<()> {
        if k > self.limit() {
            Err(Error::TableTooSmall { limit: self.limit(), needed: k })
        } else {
            Ok(())
        }
    }

    /// μ(1..=limit) as a slice, `mobius_slice()[k - 1] == μ(k)`.
    pub fn mobius_slice(&self) -> &[i8] {
        &self.mobius[1..]
    }
}

/// μ(k) by trial-division factorisation. Independent of the sieve; meant
/// for tests and small arguments.
pub fn mobius_bruteforce(k: u64) -> i8 {
    assert!(k >= 1);
    let mut rest = k;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            rest /= p;
            if rest.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if rest > 1 {
        sign = -sign;
    }
    sign
}
