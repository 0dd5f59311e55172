use std::sync::Arc;

use mertens_matrices::algebra::{ClassVector, Product, QuotientAlgebra};
use mertens_matrices::builders::{
    build_m_direct, build_m_via_rho, build_t, build_u_direct, build_u_via_rho, t_times_rho,
    verify_basis_pattern, verify_inverse_identity,
};
use mertens_matrices::classes::{cardinality_by_cases, cardinality_synthetic, floor_div_nested_check, isqrt};
use mertens_matrices::harness::{restricted_values, RestrictedForm};
use mertens_matrices::sieve::mobius_bruteforce;
use mertens_matrices::spectral::{spectral_norm_dense, spectral_norm_power};
use mertens_matrices::{ClassLabel, ClassStructure, IntegerMatrix, Matrix, MertensTable};
use proptest::prelude::*;

fn table() -> &'static MertensTable {
    static TABLE: std::sync::OnceLock<MertensTable> = std::sync::OnceLock::new();
    TABLE.get_or_init(|| MertensTable::new(100_000).unwrap())
}

#[test]
fn class_structure_invariants_exhaustive() {
    for n in 1..=10_000u64 {
        let cs = ClassStructure::new(n).unwrap();
        let reps = cs.reps();
        assert_eq!(reps[0], 1);
        assert_eq!(*reps.last().unwrap(), n);
        assert_eq!(cs.s() as u64, cardinality_synthetic(n), "n = {n}");
        assert_eq!(cs.s() as u64, cardinality_by_cases(n), "n = {n}");
        let image: Vec<u64> = reps.iter().rev().map(|&k| cs.bar(k).unwrap()).collect();
        assert_eq!(image, reps, "bar reverses the order, n = {n}");
        for &k in reps {
            assert_eq!(n / (n / k), k);
        }
    }
}

#[test]
fn classes_partition_small_n() {
    for n in 1..=1000u64 {
        let cs = ClassStructure::new(n).unwrap();
        let mut next = 1;
        for (from, to) in cs.intervals() {
            assert_eq!(from, next);
            assert!(to >= from);
            // every member shares floor(n/i) with the representative
            assert!((from..=to).all(|i| n / i == n / to));
            next = to + 1;
        }
        assert_eq!(next, n + 1);
        for i in 1..=n + 3 {
            match cs.class_of(i).unwrap() {
                ClassLabel::Rep(k) => {
                    assert!(i <= n && cs.contains(k) && i <= k && n / i == n / k);
                    assert!(cs.predecessor(k).unwrap() < i);
                }
                ClassLabel::Infinity => assert!(i > n),
            }
        }
    }
}

#[test]
fn mobius_sieve_against_trial_division() {
    let t = table();
    for k in 1..=10_000 {
        assert_eq!(t.mobius(k), mobius_bruteforce(k));
        assert_eq!(t.mertens(k) - t.mertens(k - 1), i64::from(t.mobius(k)));
    }
}

#[test]
fn semigroup_commutative_associative() {
    for n in 1..=200u64 {
        let alg = QuotientAlgebra::for_n(n).unwrap();
        let reps = alg.classes().reps().to_vec();
        let mul = |a: Product, b: Product| match (a, b) {
            (Product::Class(i), Product::Class(j)) => alg.product(i, j).unwrap(),
            _ => Product::Zero,
        };
        for &i in &reps {
            for &j in &reps {
                assert_eq!(alg.product(i, j), alg.product(j, i));
                for &k in &reps {
                    let (pi, pj, pk) = (Product::Class(i), Product::Class(j), Product::Class(k));
                    assert_eq!(mul(mul(pi, pj), pk), mul(pi, mul(pj, pk)), "n = {n}");
                }
            }
        }
    }
}

#[test]
fn rho_multiplicative_on_basis() {
    for n in 1..=100u64 {
        let alg = QuotientAlgebra::for_n(n).unwrap();
        let reps = alg.classes().reps().to_vec();
        let rho: Vec<IntegerMatrix> = reps
            .iter()
            .map(|&k| ClassVector::basis(&alg, k).unwrap().regular_representation().unwrap())
            .collect();
        for (p, &i) in reps.iter().enumerate() {
            for (q, &j) in reps.iter().enumerate() {
                let lhs = rho[p].checked_mul(&rho[q]).unwrap();
                let rhs = match alg.product(i, j).unwrap() {
                    Product::Class(l) => rho[alg.classes().index_of(l).unwrap()].clone(),
                    Product::Zero => Matrix::zeros(reps.len()),
                };
                assert_eq!(lhs, rhs, "n = {n}, i = {i}, j = {j}");
            }
        }
        // one 1 per column at most
        for m in &rho {
            for c in 0..m.dim() {
                let col = m.column(c);
                assert!(col.iter().all(|&v| v == 0 || v == 1));
                assert!(col.iter().sum::<i64>() <= 1);
            }
        }
    }
}

#[test]
fn matrices_symmetric_and_routes_agree() {
    let t = table();
    for n in (1..=10_000u64).step_by(37).chain([10_000]) {
        let alg = QuotientAlgebra::for_n(n).unwrap();
        let cs = alg.classes();
        let u = build_u_direct::<i64>(cs).unwrap();
        let m = build_m_direct::<i64>(cs, t).unwrap();
        assert!(u.is_symmetric() && m.is_symmetric(), "n = {n}");
        assert!(build_t::<i64>(cs).is_symmetric());
        assert_eq!(build_u_via_rho::<i64>(&alg).unwrap(), u, "n = {n}");
        assert_eq!(build_m_via_rho::<i64>(&alg, t).unwrap(), m, "n = {n}");
        assert_eq!(m[(0, 0)], t.mertens(n));
        assert_eq!(u[(0, 0)] as u64, n);
        let first_col: Vec<u64> = u.column(0).iter().map(|&v| v as u64).collect();
        let reversed: Vec<u64> = cs.reps().iter().rev().copied().collect();
        assert_eq!(first_col, reversed);
        for row in u.rows() {
            assert!(row.iter().all(|&v| v >= 0 && v as u64 <= n));
        }
        assert!(verify_inverse_identity::<i64>(&alg, t).unwrap().holds());
    }
}

#[test]
fn inverse_identity_every_n_to_2000() {
    let t = table();
    for n in 1..=2000u64 {
        let alg = QuotientAlgebra::for_n(n).unwrap();
        assert!(verify_inverse_identity::<i64>(&alg, t).unwrap().holds(), "n = {n}");
    }
}

#[test]
fn basis_pattern_small_n() {
    for n in 1..=300u64 {
        let alg = QuotientAlgebra::for_n(n).unwrap();
        assert_eq!(verify_basis_pattern(&alg).unwrap(), None, "n = {n}");
    }
}

#[test]
fn dimension_jumps_exactly_at_restricted_forms() {
    let s = |n: u64| ClassStructure::new(n).unwrap().s();
    for k in 2..=100u64 {
        assert_eq!(s(k * k), s(k * k - 1) + 1);
        assert_eq!(s(k * k + k), s(k * k + k - 1) + 1);
    }
    let restricted: std::collections::HashSet<u64> = restricted_values(2, 10_201).into_iter().collect();
    for n in 2..=10_201u64 {
        let jumped = s(n) != s(n - 1);
        assert_eq!(jumped, restricted.contains(&n), "n = {n}");
        assert_eq!(jumped, RestrictedForm::of(n) != RestrictedForm::Other);
    }
}

fn n_strategy() -> impl Strategy<Value = u64> {
    1u64..=100_000
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn nested_floor_lemma(n in 1u64..=u64::MAX, i in 1u64..=1 << 40, j in 1u64..=1 << 40) {
        prop_assert!(floor_div_nested_check(n, i, j));
    }

    #[test]
    fn isqrt_is_floor_root(v in any::<u64>()) {
        let r = isqrt(v);
        prop_assert!(u128::from(r) * u128::from(r) <= u128::from(v));
        prop_assert!(u128::from(r + 1) * u128::from(r + 1) > u128::from(v));
    }

    #[test]
    fn membership_criterion(n in n_strategy(), k in 1u64..=100_000) {
        prop_assume!(k <= n);
        let cs = ClassStructure::new(n).unwrap();
        prop_assert_eq!(cs.contains(k), n / (k + 1) < n / k);
    }

    #[test]
    fn class_morphism(n in n_strategy(), i in 1u64..=1000, j in 1u64..=1000) {
        // class(i) * class(j) = class(i j)
        let alg = QuotientAlgebra::for_n(n).unwrap();
        let cs = alg.classes();
        let lhs = match (cs.class_of(i).unwrap(), cs.class_of(j).unwrap()) {
            (ClassLabel::Rep(a), ClassLabel::Rep(b)) => alg.product(a, b).unwrap(),
            _ => Product::Zero,
        };
        let rhs = match cs.class_of(i * j).unwrap() {
            ClassLabel::Rep(c) => Product::Class(c),
            ClassLabel::Infinity => Product::Zero,
        };
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn convolution_commutative_and_rho_first_column(
        n in 1u64..=3000,
        seed in proptest::collection::vec(-50i64..=50, 120),
    ) {
        let alg = QuotientAlgebra::for_n(n).unwrap();
        let s = alg.s();
        let x = ClassVector::from_coeffs(&alg, seed.iter().cycle().take(s).copied().collect()).unwrap();
        let y = ClassVector::from_coeffs(&alg, seed.iter().rev().cycle().take(s).copied().collect()).unwrap();
        prop_assert_eq!(x.convolve(&y).unwrap(), y.convolve(&x).unwrap());
        let rho_x = x.regular_representation().unwrap();
        prop_assert_eq!(rho_x.column(0), x.coeffs().to_vec());
        // rho is multiplicative and T rho(x) is symmetric
        let lhs = rho_x.checked_mul(&y.regular_representation().unwrap()).unwrap();
        prop_assert_eq!(lhs, x.convolve(&y).unwrap().regular_representation().unwrap());
        prop_assert!(t_times_rho(&x).unwrap().is_symmetric());
    }

    #[test]
    fn projection_is_a_morphism(n in 1u64..=400, a in proptest::collection::vec(-5i64..=5, 400), b in proptest::collection::vec(-5i64..=5, 400)) {
        // pi(a * b) = pi(a) * pi(b), with the Dirichlet product truncated at n
        let n_us = n as usize;
        let mut conv = vec![0i64; n_us];
        for i in 1..=n_us {
            for j in 1..=n_us / i {
                conv[i * j - 1] += a[i - 1] * b[j - 1];
            }
        }
        let alg: Arc<QuotientAlgebra> = QuotientAlgebra::for_n(n).unwrap();
        let pa = ClassVector::project(&alg, &a[..n_us]).unwrap();
        let pb = ClassVector::project(&alg, &b[..n_us]).unwrap();
        prop_assert_eq!(ClassVector::project(&alg, &conv).unwrap(), pa.convolve(&pb).unwrap());
    }

    #[test]
    fn lower_bound_and_oracle(n in 2u64..=3000) {
        let t = table();
        let m = build_m_direct::<i64>(&ClassStructure::new(n).unwrap(), t).unwrap();
        let p = spectral_norm_power::<f64, _>(&m, 1e-10, 100_000, 42).unwrap();
        let d = spectral_norm_dense::<f64, _>(&m).unwrap();
        prop_assert!(p.converged);
        prop_assert!((p.norm - d.norm).abs() <= 1e-8 * d.norm);
        prop_assert!((t.mertens(n).abs() as f64) <= p.norm + 1e-6);
        prop_assert!(m.max_abs() as f64 <= p.norm + 1e-6);
        prop_assert!(p.norm <= m.dim() as f64 * m.max_abs() as f64);
        prop_assert!(p.residual <= 1e-10 * p.norm);
    }

    #[test]
    fn power_is_deterministic(n in 2u64..=5000, seed in any::<u64>()) {
        let m = build_m_direct::<i64>(&ClassStructure::new(n).unwrap(), table()).unwrap();
        let a = spectral_norm_power::<f64, _>(&m, 1e-10, 100_000, seed).unwrap();
        let b = spectral_norm_power::<f64, _>(&m, 1e-10, 100_000, seed).unwrap();
        prop_assert_eq!(a.norm.to_bits(), b.norm.to_bits());
        prop_assert_eq!(a.iterations, b.iterations);
    }

    #[test]
    fn jacobi_on_permuted_diagonal(diag in proptest::collection::vec(-1000i64..=1000, 1..40), shift in 0usize..40) {
        let s = diag.len();
        let perm: Vec<usize> = (0..s).map(|i| (i + shift) % s).collect();
        let m = Matrix::from_fn(s, |i, j| if i == j { diag[perm[i]] } else { 0 });
        let expected = diag.iter().map(|v| v.abs()).max().unwrap() as f64;
        let got = spectral_norm_dense::<f64, _>(&m).unwrap().norm;
        prop_assert!((got - expected).abs() <= 1e-9 * expected.max(1.0));
    }
}
