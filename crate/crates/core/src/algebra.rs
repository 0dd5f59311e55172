//! The quotient semigroup algebra on the representative set.
//!
//! Basis vectors are the representatives; `i * j` is the class of the
//! integer product when it is at most `n`, and zero otherwise (the unbounded
//! class is sent to zero).

use std::sync::Arc;

use crate::classes::ClassStructure;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Integer;
use crate::sieve::MertensTable;

const ZERO_SLOT: u32 = u32::MAX;

/// Product of two basis elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Product {
    Class(u64),
    Zero,
}

/// Class structure together with its `s x s` multiplication table, held by
/// position in the sorted representative list.
#[derive(Debug)]
pub struct QuotientAlgebra {
    classes: ClassStructure,
    table: Vec<u32>,
}

impl QuotientAlgebra {
    pub fn new(classes: ClassStructure) -> Arc<Self> {
        let s = classes.s();
        let n = classes.n();
        let reps = classes.reps();
        let mut table = vec![ZERO_SLOT; s * s];
        for (p, &i) in reps.iter().enumerate() {
            for (q, &j) in reps.iter().enumerate() {
                // i, j <= n, so the product only fails for huge n; treat as > n
                match i.checked_mul(j) {
                    Some(v) if v <= n => table[p * s + q] = classes.position_of_value(v) as u32,
                    _ => break,
                }
            }
        }
        Arc::new(Self { classes, table })
    }

    pub fn for_n(n: u64) -> Result<Arc<Self>> {
        Ok(Self::new(ClassStructure::new(n)?))
    }

    pub fn classes(&self) -> &ClassStructure {
        &self.classes
    }

    pub fn n(&self) -> u64 {
        self.classes.n()
    }

    pub fn s(&self) -> usize {
        self.classes.s()
    }

    /// Product of basis elements by position; `None` stands for zero.
    #[inline]
    pub fn product_at(&self, p: usize, q: usize) -> Option<usize> {
        let v = self.table[p * self.s() + q];
        (v != ZERO_SLOT).then_some(v as usize)
    }

    /// Product of two representatives.
    pub fn product(&self, i: u64, j: u64) -> Result<Product> {
        let p = self.position(i)?;
        let q = self.position(j)?;
        Ok(match self.product_at(p, q) {
            Some(l) => Product::Class(self.classes.reps()[l]),
            None => Product::Zero,
        })
    }

    fn position(&self, k: u64) -> Result<usize> {
        self.classes
            .index_of(k)
            .ok_or(Error::NotARepresentative { n: self.n(), k })
    }

    /// Multiplication table in the printed layout: a header row of
    /// representatives, then one row per representative, zero printed as `0`.
    pub fn table_text(&self) -> String {
        let reps = self.classes.reps();
        let width = self.n().to_string().len().max(1);
        let mut out = String::new();
        out.push_str(&format!("{:>width$} |", ""));
        for r in reps {
            out.push_str(&format!(" {r:>width$}"));
        }
        out.push('\n');
        out.push_str(&"-".repeat(width + 2 + reps.len() * (width + 1)));
        out.push('\n');
        for (p, r) in reps.iter().enumerate() {
            out.push_str(&format!("{r:>width$} |"));
            for q in 0..reps.len() {
                let v = self.product_at(p, q).map_or(0, |l| reps[l]);
                out.push_str(&format!(" {v:>width$}"));
            }
            out.push('\n');
        }
        out
    }

    /// The multiplication table as labels, zero encoded as `0`.
    pub fn table_labels(&self) -> Vec<Vec<u64>> {
        let reps = self.classes.reps();
        (0..self.s())
            .map(|p| (0..self.s()).map(|q| self.product_at(p, q).map_or(0, |l| reps[l])).collect())
            .collect()
    }
}

/// Element of the quotient algebra: integer coordinates on the basis of
/// representatives, in ascending order.
#[derive(Debug, Clone)]
pub struct ClassVector<T> {
    algebra: Arc<QuotientAlgebra>,
    coeffs: Vec<T>,
}

impl<T: Integer> ClassVector<T> {
    pub fn from_coeffs(algebra: &Arc<QuotientAlgebra>, coeffs: Vec<T>) -> Result<Self> {
        if coeffs.len() != algebra.s() {
            return Err(Error::DimensionMismatch { left: algebra.s(), right: coeffs.len() });
        }
        Ok(Self { algebra: Arc::clone(algebra), coeffs })
    }

    pub fn zero(algebra: &Arc<QuotientAlgebra>) -> Self {
        Self { algebra: Arc::clone(algebra), coeffs: vec![T::zero(); algebra.s()] }
    }

    /// Basis vector of the representative `k`.
    pub fn basis(algebra: &Arc<QuotientAlgebra>, k: u64) -> Result<Self> {
        let p = algebra.position(k)?;
        let mut v = Self::zero(algebra);
        v.coeffs[p] = T::one();
        Ok(v)
    }

    /// The unit, basis vector `1`.
    pub fn unit(algebra: &Arc<QuotientAlgebra>) -> Self {
        let mut v = Self::zero(algebra);
        v.coeffs[0] = T::one();
        v
    }

    /// Image of a sequence `a(1), a(2), ...` (`a[κ - 1] = a(κ)`): the
    /// coordinate on `k` is the sum of `a` over the interval `(k⁻, k]`.
    pub fn project(algebra: &Arc<QuotientAlgebra>, a: &[T]) -> Result<Self> {
        let n = algebra.n();
        if (a.len() as u64) < n {
            return Err(Error::SequenceTooShort { len: a.len(), n });
        }
        let coeffs = algebra
            .classes()
            .intervals()
            .map(|(lo, hi)| {
                a[(lo - 1) as usize..hi as usize]
                    .iter()
                    .try_fold(T::zero(), |acc, &v| acc.add_checked(v, "projection"))
            })
            .collect::<Result<_>>()?;
        Ok(Self { algebra: Arc::clone(algebra), coeffs })
    }

    /// Image of the all-ones sequence: the class sizes `k - k⁻`.
    pub fn ones(algebra: &Arc<QuotientAlgebra>) -> Result<Self> {
        let coeffs = algebra
            .classes()
            .intervals()
            .map(|(lo, hi)| T::try_from_u64(hi - lo + 1))
            .collect::<Result<_>>()?;
        Ok(Self { algebra: Arc::clone(algebra), coeffs })
    }

    /// Image of the Möbius sequence: `M(k) - M(k⁻)`. Only needs `M` at the
    /// representatives.
    pub fn mobius(algebra: &Arc<QuotientAlgebra>, table: &MertensTable) -> Result<Self> {
        table.require(algebra.n())?;
        let coeffs = algebra
            .classes()
            .intervals()
            .map(|(lo, hi)| T::try_from_i64(table.mertens(hi) - table.mertens(lo - 1)))
            .collect::<Result<_>>()?;
        Ok(Self { algebra: Arc::clone(algebra), coeffs })
    }

    pub fn algebra(&self) -> &Arc<QuotientAlgebra> {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coordinate on the representative `k`.
    pub fn coeff(&self, k: u64) -> Result<T> {
        Ok(self.coeffs[self.algebra.position(k)?])
    }

    fn same_algebra(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra.n() == other.algebra.n() {
            Ok(())
        } else {
            Err(Error::StructureMismatch { left: self.algebra.n(), right: other.algebra.n() })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| a.add_checked(b, "vector sum"))
            .collect::<Result<_>>()?;
        Ok(Self { algebra: Arc::clone(&self.algebra), coeffs })
    }

    /// Convolution product; terms whose basis product is zero are dropped.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        let alg = &self.algebra;
        let mut out = vec![T::zero(); alg.s()];
        for (p, &x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (q, &y) in other.coeffs.iter().enumerate() {
                let Some(l) = alg.product_at(p, q) else { break };
                if !y.is_zero() {
                    out[l] = out[l].add_checked(x.mul_checked(y, "convolution")?, "convolution")?;
                }
            }
        }
        Ok(Self { algebra: Arc::clone(alg), coeffs: out })
    }

    /// Matrix of `v -> self * v`: column `j` holds the coordinates of
    /// `self * basis(j)`.
    pub fn regular_representation(&self) -> Result<Matrix<T>> {
        let alg = &self.algebra;
        let mut rho = Matrix::<T>::zeros(alg.s());
        for q in 0..alg.s() {
            for (p, &x) in self.coeffs.iter().enumerate() {
                let Some(l) = alg.product_at(p, q) else { break };
                if !x.is_zero() {
                    rho[(l, q)] = rho[(l, q)].add_checked(x, "regular representation")?;
                }
            }
        }
        Ok(rho)
    }
}

impl<T: PartialEq> PartialEq for ClassVector<T> {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.n() == other.algebra.n() && self.coeffs == other.coeffs
    }
}
