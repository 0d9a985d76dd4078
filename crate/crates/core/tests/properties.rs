//! Algebraic invariants checked on seeded random inputs.

use bfredholm::dsl::{eval, parse, OperatorExpr};
use bfredholm::engine::{index_trace, index_winding};
use bfredholm::finite_rank::FiniteRankOperator;
use bfredholm::operator::{hankel_defect, BlockOperator};
use bfredholm::poly::Polynomial;
use bfredholm::random;
use bfredholm::roots::{count_zeros_in_disk, count_zeros_in_disk_cayley};
use bfredholm::scalar::GaussianRational as GR;
use bfredholm::suites::{drazin_test_matrix, window_check};
use bfredholm::symbol::RationalSymbol;
use proptest::prelude::*;
use rand::Rng;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn disk_counts_match_constructed_roots(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let mut roots = Vec::new();
        let mut inside = 0;
        for _ in 0..rng.gen_range(1..=5) {
            let is_in = rng.gen_bool(0.5);
            let m = rng.gen_range(1..=2);
            roots.push((random::root_off_circle(&mut rng, is_in), m));
            if is_in {
                inside += m as usize;
            }
        }
        let p = Polynomial::from_roots(&roots).scale(&random::nonzero_scalar(&mut rng));
        prop_assert_eq!(count_zeros_in_disk(&p).unwrap(), inside);
        prop_assert_eq!(count_zeros_in_disk_cayley(&p).unwrap(), inside);
    }

    #[test]
    fn fourier_coefficients_are_linear(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let f = random::split_symbol(&mut rng);
        let g = random::split_symbol(&mut rng);
        let c = random::small_scalar(&mut rng);
        let h = f.add(&g.scale(&c));
        for n in -4..=4 {
            let lhs = h.fourier_coeff(n).unwrap();
            let rhs = &f.fourier_coeff(n).unwrap() + &(&c * &g.fourier_coeff(n).unwrap());
            prop_assert_eq!(lhs, rhs, "n = {}", n);
        }
    }

    #[test]
    fn fourier_coefficients_convolve(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let laurent = |rng: &mut random::SuiteRng| {
            let lo: i64 = rng.gen_range(-3..=0);
            let coeffs = (0..rng.gen_range(1..=5)).map(|_| random::small_scalar(rng)).collect();
            RationalSymbol::new(Polynomial::new(coeffs), Polynomial::one(), lo).unwrap()
        };
        let (f, g) = (laurent(&mut rng), laurent(&mut rng));
        let fg = f.mul(&g);
        for n in -8..=8 {
            let mut sum = GR::zero();
            for k in -8..=8 {
                sum = &sum + &(&f.fourier_coeff(k).unwrap() * &g.fourier_coeff(n - k).unwrap());
            }
            prop_assert_eq!(fg.fourier_coeff(n).unwrap(), sum);
        }
    }

    #[test]
    fn winding_is_additive(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let f = random::split_symbol(&mut rng);
        let g = random::split_symbol(&mut rng);
        prop_assert_eq!(
            f.mul(&g).winding_number().unwrap(),
            f.winding_number().unwrap() + g.winding_number().unwrap()
        );
        prop_assert_eq!(f.reflect().winding_number().unwrap(), -f.winding_number().unwrap());
    }

    #[test]
    fn trace_is_linear_and_cyclic(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let fr = |rng: &mut random::SuiteRng| {
            FiniteRankOperator::from_terms(vec![(random::tailed_sequence(rng), random::tailed_sequence(rng))])
        };
        let (a, b) = (fr(&mut rng), fr(&mut rng));
        let c = random::small_scalar(&mut rng);
        prop_assert_eq!(a.add(&b.scale(&c)).trace(), &a.trace() + &(&c * &b.trace()));
        prop_assert_eq!(a.compose(&b).trace(), b.compose(&a).trace());
        prop_assert_eq!(a.transpose().trace(), a.trace());
    }

    #[test]
    fn hankel_defect_closes_the_product(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let f = random::split_symbol(&mut rng);
        let g = random::split_symbol(&mut rng);
        let lhs = BlockOperator::toeplitz(f.clone()).mul(&BlockOperator::toeplitz(g.clone())).unwrap();
        let h = BlockOperator::finite_rank(hankel_defect(&f, &g).unwrap());
        let rhs = BlockOperator::toeplitz(f.mul(&g)).sub(&h).unwrap();
        prop_assert!(lhs.op_equal(&rhs).unwrap());
    }

    #[test]
    fn drazin_identities(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let n = rng.gen_range(1..=6);
        let (a, k) = drazin_test_matrix(&mut rng, n);
        let (d, got) = a.drazin().unwrap();
        prop_assert_eq!(got, k);
        prop_assert_eq!(a.mul(&d).unwrap(), d.mul(&a).unwrap());
        prop_assert_eq!(d.mul(&a).unwrap().mul(&d).unwrap(), d.clone());
        let ak = a.pow(k as u32).unwrap();
        prop_assert_eq!(ak.mul(&a).unwrap().mul(&d).unwrap(), ak);
    }
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn products_associate(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let mut pick = || eval(&random::operator_expr(&mut rng, 2, false)).unwrap();
        let (a, b, c) = (pick(), pick(), pick());
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(left.op_equal(&right).unwrap());
    }

    #[test]
    fn index_routes_agree_and_add(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let a = BlockOperator::toeplitz(random::split_symbol(&mut rng));
        let b = BlockOperator::toeplitz(random::split_symbol(&mut rng));
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(index_trace(&a).unwrap(), index_winding(&a).unwrap());
        prop_assert_eq!(index_trace(&ab).unwrap(), index_trace(&a).unwrap() + index_trace(&b).unwrap());
    }

    #[test]
    fn printed_expressions_parse_back(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let e: OperatorExpr = random::block_expr(&mut rng, 4);
        let printed = e.to_string();
        prop_assert_eq!(parse(&printed).unwrap(), e, "{}", printed);
    }

    #[test]
    fn windows_match_truncated_matrices(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let e = random::operator_expr(&mut rng, 3, true);
        prop_assert_eq!(window_check(&e, 12), Some(Ok(true)), "{}", e);
    }
}
