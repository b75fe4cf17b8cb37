use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

use iwasawa_core::criterion::{canonical_d, is_squarefree_int, splits_completely};
use iwasawa_core::iwasawa::{fit_invariants, ClassNumberSeries};
use iwasawa_core::poly::{factor, ZPoly};
use iwasawa_core::series::PadicPowerSeries;

fn linear_product(roots: &[i64]) -> ZPoly {
    roots.iter().fold(ZPoly::from_i64(&[1]), |acc, &r| acc.mul(&ZPoly::from_i64(&[-r, 1])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_roots_split_everywhere(roots in prop::collection::btree_set(-30i64..30, 4), p in prop::sample::select(vec![3u64, 5, 7, 11])) {
        let roots: Vec<i64> = roots.into_iter().collect();
        let f = linear_product(&roots);
        prop_assert_eq!(splits_completely(&f, p), Some(true));
        prop_assert_eq!(factor(&f).len(), 4);
    }

    #[test]
    fn repeated_roots_are_indeterminate(a in -20i64..20, b in -20i64..20, c in -20i64..20) {
        let f = linear_product(&[a, a, b, c]);
        prop_assert_eq!(splits_completely(&f, 5), None);
    }

    #[test]
    fn resultant_is_multiplicative(f in prop::collection::vec(-6i64..6, 2..5), g in prop::collection::vec(-6i64..6, 2..5), h in prop::collection::vec(-6i64..6, 2..5)) {
        let (f, g, h) = (ZPoly::from_i64(&f), ZPoly::from_i64(&g), ZPoly::from_i64(&h));
        prop_assert_eq!(f.mul(&g).resultant(&h), f.resultant(&h) * g.resultant(&h));
    }

    #[test]
    fn resultant_of_linear_products_is_root_differences(a in prop::collection::vec(-9i64..9, 1..4), b in prop::collection::vec(-9i64..9, 1..4)) {
        let expected: BigInt = a.iter().flat_map(|x| b.iter().map(move |y| BigInt::from(x - y))).product();
        prop_assert_eq!(linear_product(&a).resultant(&linear_product(&b)), expected);
    }

    #[test]
    fn canonical_d_is_shared_by_both_generators(m in prop::sample::select(vec![7u64, 10, 13, 19, 22, 31, 34, 37, 46]), d in 1u64..5000) {
        prop_assume!(is_squarefree_int(d));
        let g = d.gcd(&m);
        let other = (d / g) * (m / g);
        let c = canonical_d(m, d).unwrap();
        prop_assert!(c == d || c == other);
        prop_assert_eq!(canonical_d(m, other), Some(c));
    }

    #[test]
    fn preparation_of_exact_polynomials(c in prop::collection::vec(-500i64..500, 1..10), p in prop::sample::select(vec![3u64, 5, 7])) {
        let f = PadicPowerSeries::from_i64(p, 8, 24, &c, true).unwrap();
        prop_assume!(!f.is_zero());
        let w = f.weierstrass_prep().unwrap();
        prop_assert!(w.certified && w.is_distinguished());
        let back = w.reassemble().unwrap();
        prop_assert_eq!(back.coeffs(), f.coeffs());
        // mu and lambda from the integer coefficients directly.
        let vp = |x: i64| -> Option<u32> {
            let m = (x as i128).rem_euclid((p as i128).pow(8));
            (m != 0).then(|| (0..).find(|&k| m % (p as i128).pow(k + 1) != 0).unwrap())
        };
        let mu = c.iter().filter_map(|&x| vp(x)).min().unwrap();
        prop_assert_eq!(w.mu, mu);
        prop_assert_eq!(Some(w.lambda), c.iter().position(|&x| vp(x) == Some(mu)));
    }

    #[test]
    fn fits_are_reproduced_by_their_law(values in prop::collection::vec(0u64..200, 4..8), p in prop::sample::select(vec![3u64, 5])) {
        let s = ClassNumberSeries::from_values(p, 0, &values).unwrap();
        if let Some(fit) = fit_invariants(&s).unwrap() {
            for (n, &e) in values.iter().enumerate().skip(fit.n0 as usize) {
                prop_assert_eq!(fit.value_at(p, n as u32), BigInt::from(e));
            }
        }
    }
}
