//! The matrices `T`, `U` and `M`, each built two ways.
//!
//! The direct route fills `U[i][j] = floor(n/(ij))` and
//! `M[i][j] = Mertens(floor(n/(ij)))` entry by entry. The representation
//! route multiplies `T` by the regular representation of the images of the
//! all-ones and Möbius sequences. The two must agree exactly.

use std::sync::Arc;

use crate::algebra::{ClassVector, QuotientAlgebra};
use crate::classes::ClassStructure;
use crate::error::Result;
use crate::matrix::Matrix;
use crate::scalar::Integer;
use crate::sieve::MertensTable;

/// `T[p][q] = 1` when `p + q <= s - 1` (zero-based positions), i.e. ones on
/// and above the anti-diagonal.
pub fn build_t<T: Integer>(cs: &ClassStructure) -> Matrix<T> {
    let s = cs.s();
    Matrix::from_fn(s, |p, q| if p + q < s { T::one() } else { T::zero() })
}

/// `floor(n / (i j))` over representative labels, zero once `i j > n`.
pub fn build_u_direct<T: Integer>(cs: &ClassStructure) -> Result<Matrix<T>> {
    let n = cs.n();
    let reps = cs.reps();
    Matrix::try_from_fn(cs.s(), |p, q| T::try_from_u64(floor_div_product(n, reps[p], reps[q])))
}

/// `Mertens(floor(n / (i j)))` over representative labels.
pub fn build_m_direct<T: Integer>(cs: &ClassStructure, table: &MertensTable) -> Result<Matrix<T>> {
    table.require(cs.n())?;
    let n = cs.n();
    let reps = cs.reps();
    Matrix::try_from_fn(cs.s(), |p, q| T::try_from_i64(table.mertens(floor_div_product(n, reps[p], reps[q]))))
}

#[inline]
fn floor_div_product(n: u64, i: u64, j: u64) -> u64 {
    match i.checked_mul(j) {
        Some(ij) => n / ij,
        None => 0,
    }
}

/// `T * rho(x)`.
pub fn t_times_rho<T: Integer>(x: &ClassVector<T>) -> Result<Matrix<T>> {
    build_t(x.algebra().classes()).checked_mul(&x.regular_representation()?)
}

pub fn build_u_via_rho<T: Integer>(algebra: &Arc<QuotientAlgebra>) -> Result<Matrix<T>> {
    t_times_rho(&ClassVector::ones(algebra)?)
}

pub fn build_m_via_rho<T: Integer>(algebra: &Arc<QuotientAlgebra>, table: &MertensTable) -> Result<Matrix<T>> {
    t_times_rho(&ClassVector::mobius(algebra, table)?)
}

/// Outcome of checking `rho(u) rho(mu) = I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InverseCheck<T> {
    Holds,
    /// First offending entry, by position, and its value.
    Fails { row: usize, col: usize, value: T },
}

impl<T> InverseCheck<T> {
    pub fn holds(&self) -> bool {
        matches!(self, InverseCheck::Holds)
    }
}

/// Checks `rho(u) rho(mu) = I` in exact arithmetic, which is the integer
/// form of `M = T U⁻¹ T`.
pub fn verify_inverse_identity<T: Integer>(
    algebra: &Arc<QuotientAlgebra>,
    table: &MertensTable,
) -> Result<InverseCheck<T>> {
    let rho_u = ClassVector::<T>::ones(algebra)?.regular_representation()?;
    let rho_mu = ClassVector::<T>::mobius(algebra, table)?.regular_representation()?;
    let product = rho_u.checked_mul(&rho_mu)?;
    let identity = Matrix::identity(algebra.s());
    Ok(match product.first_difference(&identity) {
        None => InverseCheck::Holds,
        Some((row, col)) => InverseCheck::Fails { row, col, value: product[(row, col)] },
    })
}

/// Checks that `T rho(k)` is the 0/1 matrix with ones exactly where
/// `i j <= floor(n/k)`, equivalently `k <= floor(n/(ij))`, for every
/// basis element `k`. Returns the first failing representative.
pub fn verify_basis_pattern(algebra: &Arc<QuotientAlgebra>) -> Result<Option<u64>> {
    let cs = algebra.classes();
    let n = cs.n();
    let reps = cs.reps();
    for &k in reps {
        let m = t_times_rho(&ClassVector::<i64>::basis(algebra, k)?)?;
        let bound = n / k;
        for p in 0..cs.s() {
            for q in 0..cs.s() {
                let (i, j) = (reps[p], reps[q]);
                let by_product = i.checked_mul(j).is_some_and(|ij| ij <= bound);
                let by_floor = k <= floor_div_product(n, i, j);
                let expected = i64::from(by_product);
                if by_product != by_floor || m[(p, q)] != expected {
                    return Ok(Some(k));
                }
            }
        }
    }
    Ok(None)
}

/// `T`, `U` and `M` for one `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricMatrixPair<T> {
    pub t_matrix: Matrix<T>,
    pub u_matrix: Matrix<T>,
    pub m_matrix: Matrix<T>,
}

impl<T: Integer> SymmetricMatrixPair<T> {
    /// Direct entrywise construction.
    pub fn direct(cs: &ClassStructure, table: &MertensTable) -> Result<Self> {
        Ok(Self {
            t_matrix: build_t(cs),
            u_matrix: build_u_direct(cs)?,
            m_matrix: build_m_direct(cs, table)?,
        })
    }

    /// Construction through the regular representation.
    pub fn via_representation(algebra: &Arc<QuotientAlgebra>, table: &MertensTable) -> Result<Self> {
        Ok(Self {
            t_matrix: build_t(algebra.classes()),
            u_matrix: build_u_via_rho(algebra)?,
            m_matrix: build_m_via_rho(algebra, table)?,
        })
    }
}

/// One named pass/fail line of [`verify_all`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Symmetry, dual-route equality, basis pattern and the inverse identity.
pub fn verify_all(n: u64, table: &MertensTable) -> Result<Vec<CheckOutcome>> {
    let algebra = QuotientAlgebra::for_n(n)?;
    let cs = algebra.classes();
    let direct = SymmetricMatrixPair::<i64>::direct(cs, table)?;
    let via = SymmetricMatrixPair::<i64>::via_representation(&algebra, table)?;
    let mut out = Vec::new();

    let mut push = |name, failure: Option<String>| {
        out.push(CheckOutcome { name, passed: failure.is_none(), detail: failure.unwrap_or_default() });
    };
    let asym = |m: &Matrix<i64>| m.first_asymmetry().map(|(i, j)| format!("entry ({i}, {j})"));

    push("symmetry T", asym(&direct.t_matrix));
    push("symmetry U", asym(&direct.u_matrix));
    push("symmetry M", asym(&direct.m_matrix));
    let diff = |a: &Matrix<i64>, b: &Matrix<i64>| a.first_difference(b).map(|(i, j)| format!("entry ({i}, {j})"));
    push("U direct = T rho(u)", diff(&direct.u_matrix, &via.u_matrix));
    push("M direct = T rho(mu)", diff(&direct.m_matrix, &via.m_matrix));
    let corner = direct.m_matrix[(0, 0)];
    let mn = table.mertens(n);
    push("M[1][1] = M(n)", (corner != mn).then(|| format!("{corner} vs {mn}")));
    push("basis pattern", verify_basis_pattern(&algebra)?.map(|k| format!("k = {k}")));
    let inverse = match verify_inverse_identity::<i64>(&algebra, table)? {
        InverseCheck::Holds => None,
        InverseCheck::Fails { row, col, value } => Some(format!("entry ({row}, {col}) = {value}")),
    };
    push("rho(u) rho(mu) = I", inverse);
    Ok(out)
}

/// `|M(n)|` must not exceed the largest entry magnitude; used with the
/// spectral bound `max |entry| <= ||M||`.
pub fn corner_is_bounded_by_max_entry(m: &Matrix<i64>) -> bool {
    m.dim() == 0 || m[(0, 0)].abs() <= m.max_abs()
}
