mod laurent_forms {
    use proptest::prelude::*;

    use whskit::symlaurent::*;

    fn x(i: usize) -> MultiRational {
        MultiRational::var(i)
    }

    #[test]
    fn laurent_detection() {
        let one = MultiRational::one();
        let f = (&one + &x(1)).checked_div(&x(0)).unwrap();
        let l = is_laurent(&f).unwrap();
        assert_eq!(f.denominator_exponents(), Some(vec![1]));
        assert_eq!(l.to_string(), "x1^-1 + x1^-1*x2");
        assert!(is_laurent(&one.checked_div(&(&one + &x(0))).unwrap()).is_none());
        let pent = (&(&one + &x(0)) + &x(1))
            .checked_div(&(&x(0) * &x(1)))
            .unwrap();
        assert_eq!(pent.denominator_exponents(), Some(vec![1, 1]));
        let l = is_laurent(&pent).unwrap();
        assert_eq!(l.min_exponents(2), vec![-1, -1]);
        assert!(l.has_positive_coefficients());
        let half = x(0).checked_div(&MultiRational::constant(2)).unwrap();
        assert!(is_laurent(&half).is_none());
        assert_eq!(
            is_laurent(
                &MultiRational::new(MultiPoly::monomial(&[2], 3), MultiPoly::var(1)).unwrap()
            )
            .unwrap()
            .to_string(),
            "3*x1^2*x2^-1"
        );
    }

    #[test]
    fn weight_grading_of_the_flag_relation() {
        // x1*x23 + x3*x12 over variables x1, x2, x3, x12, x13, x23
        let (w1, w2, w3) = (7, 4, 2);
        let weights = [w1, w2, w3, w1 + w2, w1 + w3, w2 + w3];
        let p = |i| MultiPoly::var(i);
        let rhs = &(&p(0) * &p(5)) + &(&p(2) * &p(3));
        assert_eq!(rhs.weight_of(&weights), Some(w1 + w2 + w3));
        let lhs = &p(1) * &p(4);
        assert_eq!(lhs.weight_of(&weights), Some(w1 + w2 + w3));
    }

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..2), -4i64..5), 1..5).prop_map(|terms| {
            MultiPoly::from_terms(
                terms
                    .into_iter()
                    .map(|((a, b, c), k)| (Monomial::new(vec![a, b, c]), k.into())),
            )
        })
    }

    fn bivariate_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(((0u32..3, 0u32..2), -4i64..5), 1..4).prop_map(|terms| {
            MultiPoly::from_terms(
                terms
                    .into_iter()
                    .map(|((a, b), k)| (Monomial::new(vec![a, b]), k.into())),
            )
        })
    }

    fn small_rational() -> impl Strategy<Value = MultiRational> {
        (bivariate_poly(), bivariate_poly())
            .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
            .prop_map(|(n, d)| MultiRational::new(n, d).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn ring_axioms(a in small_rational(), b in small_rational(), c in small_rational()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }

        #[test]
        fn gcd_divides_both_and_is_maximal(a in small_poly(), b in small_poly(), f in small_poly()) {
            let fa = &f * &a;
            let fb = &f * &b;
            let g = gcd(&fa, &fb);
            if !g.is_zero() {
                prop_assert!(fa.div_exact(&g).is_some());
                prop_assert!(fb.div_exact(&g).is_some());
                prop_assert!(g.div_exact(&f).is_some() || f.is_zero());
            }
        }

        #[test]
        fn canonical_form_is_unique(a in small_rational(), k in small_poly()) {
            prop_assume!(!k.is_zero());
            let scaled = MultiRational::new(a.num() * &k, a.den() * &k).unwrap();
            prop_assert_eq!(&scaled, &a);
            prop_assert!(gcd(a.num(), a.den()).is_one() || a.is_zero());
            prop_assert!(a.den().leading_coefficient() > 0.into());
        }

        #[test]
        fn even_part_ignores_odd_parts(a in small_rational(), b in small_rational(),
                                       c in small_rational(), d in small_rational()) {
            let p = &DualRational::new(a.clone(), b) * &DualRational::new(c.clone(), d);
            prop_assert_eq!(p.even, &a * &c);
        }
    }
}

mod poly {
    use num_bigint::BigInt;

    use whskit::symlaurent::*;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(i)
    }

    fn c(v: i64) -> MultiPoly {
        MultiPoly::constant(v)
    }

    #[test]
    fn rendering() {
        let p = &(&c(3) * &x(0).pow(2)) + &(&x(1) - &c(1));
        assert_eq!(p.to_string(), "-1 + x2 + 3*x1^2");
        assert_eq!((&x(0) + &x(1)).to_string(), "x1 + x2");
        assert_eq!(MultiPoly::zero().to_string(), "0");
        assert_eq!((-&(&x(0) * &x(2))).to_string(), "-x1*x3");
    }

    #[test]
    fn exact_division() {
        let a = &x(0) + &c(1);
        let b = &x(1) - &x(0);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(a.div_exact(&b), None);
        assert_eq!(
            prod.scale(&BigInt::from(6)).div_exact(&c(3)),
            Some(prod.scale(&BigInt::from(2)))
        );
        assert_eq!(c(5).div_exact(&c(2)), None);
    }

    #[test]
    fn gcd_basics() {
        let f = &x(0) + &x(1);
        let g = &x(0) - &c(2);
        let h = &(&x(2) * &x(0)) + &c(1);
        let a = &(&f * &g) * &c(6);
        let b = &(&f * &h) * &c(4);
        assert_eq!(gcd(&a, &b), f.scale(&BigInt::from(2)));
        assert_eq!(gcd(&g, &h), c(1));
        assert_eq!(gcd(&MultiPoly::zero(), &(-&g)), g.clone().normalize_sign());
        let m = MultiPoly::monomial(&[2, 1], 4);
        let q = &MultiPoly::monomial(&[1, 3], 6) + &MultiPoly::monomial(&[3, 1], 2);
        assert_eq!(gcd(&m, &q), MultiPoly::monomial(&[1, 1], 2));
    }

    #[test]
    fn gcd_of_powers_and_shared_factors() {
        let f = &(&x(0) * &x(1)) + &(&x(2) + &c(1));
        let g = &x(0).pow(2) + &x(1);
        let h = &x(1) - &x(2);
        let a = &f.pow(2) * &g;
        let b = &(&f * &g.pow(3)) * &h;
        let expected = (&f * &g).normalize_sign();
        assert_eq!(gcd(&a, &b), expected);
    }

    #[test]
    fn weights() {
        assert_eq!(c(1).weight_of(&[5, 7]), Some(0));
        assert_eq!((&x(0) + &x(0).pow(2)).weight_of(&[1]), None);
        assert_eq!(
            (&(&x(0) * &x(1)) + &x(2).pow(2)).weight_of(&[1, 3, 2]),
            Some(4)
        );
    }

    #[test]
    fn substitution() {
        // (x1 + x2)^2 with x1 -> x2 x3, x2 -> 1
        let p = (&x(0) + &x(1)).pow(2);
        let s = p.substitute(&[&x(1) * &x(2), c(1)]);
        assert_eq!(s, (&(&x(1) * &x(2)) + &c(1)).pow(2));
    }
}

mod rational {

    use whskit::symlaurent::MultiPoly;
    use whskit::symlaurent::SymError;
    use whskit::symlaurent::*;

    fn x(i: usize) -> MultiRational {
        MultiRational::var(i)
    }

    fn c(v: i64) -> MultiRational {
        MultiRational::constant(v)
    }

    #[test]
    fn cancellation() {
        let one_plus_x = &c(1) + &x(0);
        let num = &(&one_plus_x * &one_plus_x) - &c(1);
        let q = num.checked_div(&x(0)).unwrap();
        assert_eq!(q, &c(2) + &x(0));
        assert!(q.is_polynomial());
    }

    #[test]
    fn hand_addition() {
        let a = (&c(1) + &x(1)).checked_div(&x(0)).unwrap();
        let b = (&c(1) + &x(0)).checked_div(&x(1)).unwrap();
        let s = &a + &b;
        let p = |i| MultiPoly::var(i);
        let expected_num = &(&(&p(1) + &p(1).pow(2)) + &p(0)) + &p(0).pow(2);
        assert_eq!(s.num(), &expected_num);
        assert_eq!(s.den(), &(&p(0) * &p(1)));
        assert_eq!(s.to_string(), "(x1 + x2 + x1^2 + x2^2)/(x1*x2)");
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(
            x(0).checked_div(&MultiRational::zero()),
            Err(SymError::DivisionByZero)
        );
        assert_eq!(
            MultiRational::new(MultiPoly::one(), MultiPoly::zero()),
            Err(SymError::DivisionByZero)
        );
    }

    #[test]
    fn denominators_are_normalized() {
        let r = MultiRational::new(MultiPoly::var(0), -MultiPoly::var(1)).unwrap();
        assert_eq!(r.to_string(), "-x1/x2");
        let r = MultiRational::new(MultiPoly::constant(4), MultiPoly::constant(-6)).unwrap();
        assert_eq!(r.to_string(), "-2/3");
    }

    #[test]
    fn cross_multiplication_criterion() {
        let a = (&c(1) + &x(0)).checked_div(&(&x(0) - &x(1))).unwrap();
        let b = (&(&c(1) + &x(0)) * &x(2))
            .checked_div(&(&(&x(0) - &x(1)) * &x(2)))
            .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.num() * b.den(), b.num() * a.den());
    }
}

mod dual {

    use whskit::symlaurent::MultiRational;
    use whskit::symlaurent::SymError;
    use whskit::symlaurent::*;

    fn x(i: usize) -> MultiRational {
        MultiRational::var(i)
    }

    #[test]
    fn eps_squares_to_zero() {
        let z = DualRational::new(x(0), x(1));
        let zbar = DualRational::new(x(0), -x(1));
        let p = &z * &zbar;
        assert_eq!(p.even, &x(0) * &x(0));
        assert!(p.odd.is_zero());
        assert_eq!(z.pow(3), &(&z * &z) * &z);
    }

    #[test]
    fn division_rule() {
        // (1 + x2 + y2 eps) / (x1 + y1 eps), variables x1, x2, y1, y2 = 0..4
        let num = DualRational::new(&MultiRational::one() + &x(1), x(3));
        let den = DualRational::new(x(0), x(2));
        let q = num.checked_div(&den).unwrap();
        assert_eq!(
            q.even,
            (&MultiRational::one() + &x(1)).checked_div(&x(0)).unwrap()
        );
        let expected_odd = (&(&x(3) * &x(0)) - &(&(&MultiRational::one() + &x(1)) * &x(2)))
            .checked_div(&(&x(0) * &x(0)))
            .unwrap();
        assert_eq!(q.odd, expected_odd);
        assert_eq!(&q * &den, num);
        let nil = DualRational::new(MultiRational::zero(), x(0));
        assert_eq!(num.checked_div(&nil), Err(SymError::NonInvertibleEvenPart));
    }
}
