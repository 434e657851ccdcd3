mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

use penner::boundary::{contractible_limit, f_gamma, p_gamma, q_arrow, BoundaryPoint};
use penner::catalog::{self, crosscap_augment, puncture_augment, CrosscapVariant, PunctureVariant};
use penner::factor::{degree_of_pf_root, factor_monic};
use penner::graph::{graph_of, is_connected, is_contractible, reduce_backtracking};
use penner::penner::{generator, scale, scale_int, twist_product, IntersectionMatrix, TwistWord};
use penner::poly::{IntPoly, Poly};
use penner::spectral::{
    char_poly_exact, complexity, is_reciprocal, pf_eigenvalue, rank_exact, spectral_report, structure_split,
    symplectic_check,
};

/// Symmetric nonnegative integer matrix with zero diagonal, any support.
fn omega_strategy(max_n: usize, max_entry: i64) -> impl Strategy<Value = IntersectionMatrix> {
    (2..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(0..=max_entry, n * (n - 1) / 2).prop_map(move |upper| {
            let mut w = vec![vec![0i64; n]; n];
            let mut it = upper.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    let x = it.next().unwrap();
                    w[i][j] = x;
                    w[j][i] = x;
                }
            }
            common::from_i64(&w)
        })
    })
}

fn any_word(rng: &mut rand::rngs::StdRng, n: usize, len: usize) -> TwistWord {
    let mut gamma = Vec::with_capacity(len);
    while gamma.len() < len {
        let i = rng.gen_range(1..=n);
        if gamma.last() != Some(&i) {
            gamma.push(i);
        }
    }
    while gamma.len() > 1 && gamma[0] == *gamma.last().unwrap() {
        gamma.pop();
    }
    let powers = common::random_powers(rng, gamma.len(), 3);
    TwistWord::new(gamma, powers).unwrap()
}

fn monic_unit_poly(rng: &mut rand::rngs::StdRng, deg: usize) -> IntPoly {
    let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-3..=3)).collect();
    c[0] = if rng.gen_bool(0.5) { 1 } else { -1 };
    c.push(1);
    Poly::from_i64(&c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generator_power_identity(omega in omega_strategy(6, 3), i_pick in 0usize..6, k in 1u64..5) {
        let i = i_pick % omega.n() + 1;
        let g = generator(&omega, i).unwrap();
        let mut power = g.clone();
        for _ in 1..k {
            power = power.mul(&g);
        }
        prop_assert_eq!(power, generator(&scale_int(&omega, k).unwrap(), i).unwrap());
    }

    #[test]
    fn twist_products_have_unit_determinant(omega in omega_strategy(6, 3), seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let len = rng.gen_range(1..=8);
        let word = any_word(&mut rng, omega.n(), len);
        prop_assert!(twist_product(&omega, &word).unwrap().det().is_one());
    }

    #[test]
    fn disjoint_generators_commute(omega in omega_strategy(6, 2), a in 0usize..6, b in 0usize..6) {
        let (i, j) = (a % omega.n() + 1, b % omega.n() + 1);
        prop_assume!(omega.omega(i, j).is_zero());
        let (qi, qj) = (generator(&omega, i).unwrap(), generator(&omega, j).unwrap());
        prop_assert_eq!(qi.mul(&qj), qj.mul(&qi));
    }

    #[test]
    fn general_products_dominate_identity_plus_omega(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let n = rng.gen_range(2..=6);
        let omega = common::connected_omega(&mut rng, n, 3, 0.3);
        let extra = rng.gen_range(0..=3);
        let word = common::general_word(&mut rng, n, extra, 2);
        let m = twist_product(&omega, &word).unwrap();
        let m = m.integer().unwrap();
        let w = omega.integral().unwrap();
        for r in 0..n {
            for c in 0..n {
                let bound = &w[(r, c)] + if r == c { BigInt::one() } else { BigInt::zero() };
                prop_assert!(m[(r, c)] >= bound);
            }
        }
    }

    #[test]
    fn graph_is_constant_along_rays(omega in omega_strategy(7, 3), p in 1i64..9, q in 1i64..9) {
        let k = BigRational::new(p.into(), q.into());
        prop_assert_eq!(graph_of(&scale(&omega, &k).unwrap()).edges(), graph_of(&omega).edges());
        prop_assert_eq!(rank_exact(&scale(&omega, &k).unwrap()), rank_exact(&omega));
    }

    #[test]
    fn backtracking_reduction_is_idempotent(seed in any::<u64>(), rel in any::<bool>()) {
        let mut rng = common::rng(seed);
        let n = rng.gen_range(2..=6);
        let g = graph_of(&common::connected_omega(&mut rng, n, 1, 0.4));
        let start = rng.gen_range(1..=n);
        let steps = rng.gen_range(1..=12);
        let gamma = if rng.gen_bool(0.5) {
            common::closed_path(&mut rng, &g, start, steps)
        } else {
            common::contractible_path(&mut rng, &g, start, steps)
        };
        let once = reduce_backtracking(&gamma, rel);
        prop_assert_eq!(reduce_backtracking(&once, rel), once.clone());
        let shift = rng.gen_range(0..gamma.len());
        let mut rotated = gamma.clone();
        rotated.rotate_left(shift);
        prop_assert_eq!(is_contractible(&rotated), is_contractible(&gamma));
    }

    #[test]
    fn constant_coefficient_is_a_unit(omega in omega_strategy(6, 3), seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let len = rng.gen_range(1..=8);
        let word = any_word(&mut rng, omega.n(), len);
        let m = twist_product(&omega, &word).unwrap();
        prop_assert!(char_poly_exact(m.integer().unwrap()).coeff(0).abs().is_one());
    }

    #[test]
    fn general_words_realize_rank(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let n = rng.gen_range(2..=7);
        let omega = common::connected_omega(&mut rng, n, 3, 0.3);
        let extra = rng.gen_range(0..=4);
        let word = common::general_word(&mut rng, n, extra, 3);
        let m = twist_product(&omega, &word).unwrap();
        let chi = char_poly_exact(m.integer().unwrap());
        let r = rank_exact(&omega);
        let (e, reduced) = structure_split(&chi, n, r).unwrap();
        prop_assert_eq!(e, n - r);
        prop_assert!(!reduced.eval(&BigInt::one()).is_zero());
        prop_assert_eq!(complexity(&chi), r);
    }

    #[test]
    fn bipartite_products_are_symplectic(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let n = rng.gen_range(2..=7);
        let omega = common::connected_bipartite(&mut rng, n, 3);
        let len = rng.gen_range(1..=9);
        let word = any_word(&mut rng, n, len);
        let m = twist_product(&omega, &word).unwrap().to_rational();
        prop_assert!(symplectic_check(&omega, &m).unwrap());
        let extra = rng.gen_range(0..=3);
        let general = common::general_word(&mut rng, n, extra, 3);
        let report = spectral_report(&omega, &general, 20).unwrap();
        prop_assert!(is_reciprocal(&report.reduced_poly));
    }

    #[test]
    fn pf_eigenvalue_bounded_by_row_sums(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let n = rng.gen_range(2..=6);
        let omega = common::connected_omega(&mut rng, n, 3, 0.3);
        let extra = rng.gen_range(0..=3);
        let word = common::general_word(&mut rng, n, extra, 2);
        let m = twist_product(&omega, &word).unwrap();
        let lambda = pf_eigenvalue(m.integer().unwrap(), 20).unwrap();
        let w = omega.integral().unwrap();
        let min_row = (0..n).map(|r| (0..n).map(|c| w[(r, c)].clone()).sum::<BigInt>() + 1).min().unwrap();
        prop_assert!(lambda.upper() >= BigRational::from_integer(min_row));
    }

    #[test]
    fn factorization_multiplies_back(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let parts = rng.gen_range(1..=3);
        let mut p: IntPoly = Poly::from_i64(&[1]);
        for _ in 0..parts {
            let d = rng.gen_range(1..=4);
            p = p.mul(&monic_unit_poly(&mut rng, d));
        }
        let fac = factor_monic(&p);
        prop_assert!(fac.certified);
        prop_assert_eq!(fac.product(), p);
        for (f, _) in &fac.factors {
            prop_assert!(f.coeff(0).abs().is_one());
        }
    }

    #[test]
    fn pf_degree_stable_under_precision(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let n = rng.gen_range(2..=5);
        let omega = common::connected_omega(&mut rng, n, 2, 0.3);
        let word = common::general_word(&mut rng, n, 1, 2);
        let low = degree_of_pf_root(&spectral_report(&omega, &word, 15).unwrap()).unwrap();
        let high = degree_of_pf_root(&spectral_report(&omega, &word, 60).unwrap()).unwrap();
        prop_assert_eq!(low, high);
    }

    #[test]
    fn boundary_maps_are_scale_invariant(seed in any::<u64>(), p in 1i64..7, q in 1i64..7) {
        let mut rng = common::rng(seed);
        let n = rng.gen_range(2..=6);
        let omega = common::connected_omega(&mut rng, n, 4, 0.3);
        let g = graph_of(&omega);
        let start = rng.gen_range(1..=n);
        let steps = rng.gen_range(1..=8);
        let gamma = common::closed_path(&mut rng, &g, start, steps);
        let k = BigRational::new(p.into(), q.into());
        let a = BoundaryPoint::new(omega.clone()).unwrap();
        let b = BoundaryPoint::new(scale(&omega, &k).unwrap()).unwrap();
        prop_assert_eq!(q_arrow(&a, gamma[1], gamma[0]).unwrap(), q_arrow(&b, gamma[1], gamma[0]).unwrap());
        prop_assert_eq!(p_gamma(&a, &gamma).unwrap(), p_gamma(&b, &gamma).unwrap());
        prop_assert_eq!(f_gamma(&a, &gamma).unwrap(), f_gamma(&b, &gamma).unwrap());
    }

    #[test]
    fn contractible_paths_collapse(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let n = rng.gen_range(2..=7);
        let omega = common::connected_omega(&mut rng, n, 3, 0.3);
        prop_assume!(is_connected(&graph_of(&omega)));
        let g = graph_of(&omega);
        let start = rng.gen_range(1..=n);
        let steps = rng.gen_range(1..=10);
        let gamma = common::contractible_path(&mut rng, &g, start, steps);
        let f = f_gamma(&BoundaryPoint::new(omega).unwrap(), &gamma).unwrap();
        prop_assert_eq!(f.charpoly, contractible_limit(n));
    }
}

#[test]
fn surgery_rank_deltas_on_every_entry() {
    for e in catalog::entries() {
        let w = &e.omega;
        let r0 = rank_exact(w);
        let n = w.n();
        for i1 in 1..=n {
            for i2 in i1 + 1..=n {
                if !w.omega(i1, i2).is_zero() {
                    continue;
                }
                for (v, delta) in [(CrosscapVariant::E, 0), (CrosscapVariant::ED1, 2), (CrosscapVariant::ED1D2, 3)] {
                    let aug = crosscap_augment(w, i1, i2, v).unwrap();
                    assert_eq!(rank_exact(&aug), r0 + delta, "{} crosscap {v:?} at ({i1},{i2})", e.id);
                }
            }
        }
        for c in 1..=n {
            for (v, delta) in [(PunctureVariant::D, 0), (PunctureVariant::DE, 2)] {
                let aug = puncture_augment(w, c, v).unwrap();
                assert_eq!(rank_exact(&aug), r0 + delta, "{} puncture {v:?} at {c}", e.id);
            }
        }
    }
}

#[test]
fn triangle_charpoly_is_not_reciprocal() {
    // Odd cycle: x^3 - 7x^2 + 5x - 1 is neither palindromic nor
    // anti-palindromic. Only this instance is asserted.
    let omega = IntersectionMatrix::from_int_rows(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]).unwrap();
    let report = spectral_report(&omega, &TwistWord::unit(vec![1, 2, 3]).unwrap(), 20).unwrap();
    assert!(!is_reciprocal(&report.reduced_poly));
}
