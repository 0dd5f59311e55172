//! The floor-division congruence `i ~ j <=> floor(n/i) == floor(n/j)`.
//!
//! Bounded classes are the intervals `(k⁻, k]` where `k` runs over the sorted
//! representative set and `k⁻` is the previous representative (`0` before
//! the first). Everything above `n` forms one unbounded class.

use serde::Serialize;

use crate::error::{Error, Result};

/// Exact integer square root, `floor(sqrt(v))`.
///
/// Newton iteration on integers starting above the root; the sequence is
/// strictly decreasing until it reaches the floor.
pub fn isqrt(v: u64) -> u64 {
    if v < 2 {
        return v;
    }
    // 2^(ceil(bits/2)) >= sqrt(v)
    let bits = 64 - v.leading_zeros();
    let mut x = 1u64 << bits.div_ceil(2);
    loop {
        let y = (x + v / x) / 2;
        if y >= x {
            break;
        }
        x = y;
    }
    // final correction guards the boundary at perfect squares
    while x.checked_mul(x).is_none_or(|sq| sq > v) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= v) {
        x += 1;
    }
    x
}

/// `#S` from the two-case description: `2r - 1` when `n < r² + r`, else `2r`,
/// with `r = isqrt(n)`.
pub fn cardinality_by_cases(n: u64) -> u64 {
    let r = isqrt(n);
    if n < r * r + r {
        2 * r - 1
    } else {
        2 * r
    }
}

/// `#S = floor(sqrt(n)) + floor(sqrt(n + 1/4) - 1/2)`, evaluated as
/// `isqrt(n) + (isqrt(4n + 1) - 1) / 2`.
pub fn cardinality_synthetic(n: u64) -> u64 {
    isqrt(n) + (isqrt(4 * n + 1) - 1) / 2
}

/// Whether `floor(floor(n/i)/j) == floor(n/(i j))`. Always true; kept as a
/// checkable statement for tests. The product is taken in 128 bits.
pub fn floor_div_nested_check(n: u64, i: u64, j: u64) -> bool {
    let lhs = (n / i) / j;
    let rhs = u128::from(n) / (u128::from(i) * u128::from(j));
    u128::from(lhs) == rhs
}

/// Class of a positive integer: a representative, or the unbounded class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ClassLabel {
    Rep(u64),
    Infinity,
}

/// Representative set for a fixed `n`, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassStructure {
    n: u64,
    root: u64,
    reps: Vec<u64>,
}

impl ClassStructure {
    /// Builds the representative set in `O(sqrt(n))`: `1..=r` followed by
    /// `n / k` for `k = r..=1`, dropping the repeated `r` when `n < r² + r`.
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroN);
        }
        let root = isqrt(n);
        let upper_start = if n < root * root + root { root - 1 } else { root };
        let mut reps = Vec::with_capacity((root + upper_start) as usize);
        reps.extend(1..=root);
        reps.extend((1..=upper_start).rev().map(|k| n / k));
        Ok(Self { n, root, reps })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `isqrt(n)`.
    pub fn root(&self) -> u64 {
        self.root
    }

    pub fn reps(&self) -> &[u64] {
        &self.reps
    }

    /// Matrix dimension `#S`.
    pub fn s(&self) -> usize {
        self.reps.len()
    }

    /// Position of the class containing `v`, for `1 <= v <= n`, in `O(1)`.
    #[inline]
    pub(crate) fn position_of_value(&self, v: u64) -> usize {
        debug_assert!(v >= 1 && v <= self.n);
        let q = self.n / v;
        if q > self.root {
            // the class representative n / q is at most the root, so it is q-th
            // from the bottom of the lower arm
            (self.n / q) as usize - 1
        } else {
            self.reps.len() - q as usize
        }
    }

    /// Position of `k` in the sorted representative list, if it is one.
    pub fn index_of(&self, k: u64) -> Option<usize> {
        if k == 0 || k > self.n {
            return None;
        }
        let p = self.position_of_value(k);
        (self.reps[p] == k).then_some(p)
    }

    pub fn contains(&self, k: u64) -> bool {
        self.index_of(k).is_some()
    }

    fn require(&self, k: u64) -> Result<usize> {
        self.index_of(k).ok_or(Error::NotARepresentative { n: self.n, k })
    }

    /// The order-reversing involution `k -> floor(n/k)` on representatives.
    pub fn bar(&self, k: u64) -> Result<u64> {
        self.require(k)?;
        Ok(self.n / k)
    }

    /// Largest member of the class of `i`, or [`ClassLabel::Infinity`] when `i > n`.
    pub fn class_of(&self, i: u64) -> Result<ClassLabel> {
        if i == 0 {
            return Err(Error::ZeroArgument);
        }
        if i > self.n {
            return Ok(ClassLabel::Infinity);
        }
        Ok(ClassLabel::Rep(self.n / (self.n / i)))
    }

    /// Previous representative, with `1⁻ = 0`.
    pub fn predecessor(&self, k: u64) -> Result<u64> {
        let p = self.require(k)?;
        Ok(if p == 0 { 0 } else { self.reps[p - 1] })
    }

    /// Number of integers in the class of `k`, that is `k - k⁻`.
    pub fn class_size(&self, k: u64) -> Result<u64> {
        Ok(k - self.predecessor(k)?)
    }

    /// The classes as inclusive intervals `(k⁻ + 1, k)`.
    pub fn intervals(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        let lows = std::iter::once(0).chain(self.reps.iter().copied());
        lows.zip(self.reps.iter().copied()).map(|(lo, hi)| (lo + 1, hi))
    }
}
