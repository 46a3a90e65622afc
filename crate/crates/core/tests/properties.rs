use proptest::prelude::*;
use tamedeg::{
    cancellation_check, compose_maps, compute_u, construct, expand_word, invert_word,
    jacobian_det, maps_equal_probabilistic, multidegree, semigroup_decompose, Degree, Factor,
    Matrix3, Monomial, Outcome, PolyMap, Polynomial, Rational, TameWord, Var,
};

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-30i64..30, 1i64..12).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn arb_poly_in(vars: [bool; 3], max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    let exp = move |on: bool| if on { 0..=max_exp } else { 0..=0 };
    prop::collection::vec(
        ((exp(vars[0]), exp(vars[1]), exp(vars[2])), arb_rational()),
        0..=max_terms,
    )
    .prop_map(|terms| {
        Polynomial::from_terms(
            terms
                .into_iter()
                .map(|((i, j, k), c)| (Monomial::new(i, j, k), c)),
        )
    })
}

fn arb_poly() -> impl Strategy<Value = Polynomial> {
    arb_poly_in([true; 3], 4, 5)
}

fn arb_point() -> impl Strategy<Value = [Rational; 3]> {
    (arb_rational(), arb_rational(), arb_rational()).prop_map(|(a, b, c)| [a, b, c])
}

fn arb_elementary() -> impl Strategy<Value = Factor> {
    (0usize..3).prop_flat_map(|i| {
        // total degree at most 2 keeps composed words small
        let others: Vec<usize> = (0..3).filter(|&k| k != i).collect();
        prop::collection::vec(((0u32..=2, 0u32..=2), arb_rational()), 0..=3).prop_map(move |ts| {
            let g = Polynomial::from_terms(ts.into_iter().map(|((p, q), c)| {
                let mut e = [0u32; 3];
                e[others[0]] = p;
                e[others[1]] = q.min(2 - p);
                (Monomial::new(e[0], e[1], e[2]), c)
            }));
            Factor::elementary(Var::from_index(i).unwrap(), g).unwrap()
        })
    })
}

fn arb_linear() -> impl Strategy<Value = Factor> {
    prop::array::uniform9(-3i64..=3)
        .prop_filter_map("singular", |e| {
            let m = Matrix3::from_fn(|i, j| Rational::from(e[3 * i + j]));
            Factor::linear(m).ok()
        })
}

fn arb_word() -> impl Strategy<Value = TameWord> {
    prop::collection::vec(
        prop_oneof![4 => arb_elementary(), 1 => arb_linear()],
        0..=2,
    )
    .prop_map(TameWord::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &Polynomial::one(), p.clone());
    }

    #[test]
    fn degree_is_additive(p in arb_poly(), q in arb_poly()) {
        let prod = &p * &q;
        prop_assert_eq!(prod.total_degree(), p.total_degree().plus(q.total_degree()));
        if p.is_zero() || q.is_zero() {
            prop_assert_eq!(prod.total_degree(), Degree::MinusInfinity);
        }
    }

    #[test]
    fn identity_substitution(p in arb_poly()) {
        let [x, y, z] = Var::ALL.map(Polynomial::var);
        prop_assert_eq!(p.substitute(&x, &y, &z), p);
    }

    #[test]
    fn no_zero_coefficients(p in arb_poly(), q in arb_poly()) {
        for s in [&p + &q, &p - &q, &p * &q, p.partial(Var::Y)] {
            prop_assert!(s.terms().all(|(_, c)| !c.is_zero()));
        }
    }

    #[test]
    fn eval_is_a_homomorphism(
        p in arb_poly(), q in arb_poly(),
        sx in arb_poly_in([true; 3], 2, 3), sy in arb_poly_in([true; 3], 2, 3),
        sz in arb_poly_in([true; 3], 2, 3),
        pt in arb_point(),
    ) {
        prop_assert_eq!((&p + &q).eval(&pt), p.eval(&pt) + q.eval(&pt));
        prop_assert_eq!((&p * &q).eval(&pt), p.eval(&pt) * q.eval(&pt));
        let inner = [sx.eval(&pt), sy.eval(&pt), sz.eval(&pt)];
        prop_assert_eq!(p.substitute(&sx, &sy, &sz).eval(&pt), p.eval(&inner));
    }

    #[test]
    fn expand_is_a_monoid_homomorphism(w1 in arb_word(), w2 in arb_word()) {
        let lhs = expand_word(&w1.concat(&w2)).unwrap();
        let rhs = compose_maps(&expand_word(&w2).unwrap(), &expand_word(&w1).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_word_gives_identity(w in arb_word()) {
        let inv = invert_word(&w).unwrap();
        prop_assert!(expand_word(&w.concat(&inv)).unwrap().is_identity());
        prop_assert!(expand_word(&inv.concat(&w)).unwrap().is_identity());
    }

    #[test]
    fn jacobian_is_product_of_linear_dets(w in arb_word()) {
        let f = expand_word(&w).unwrap();
        let det = jacobian_det(&f).constant_value();
        prop_assert_eq!(det.clone(), Some(w.linear_det_product()));
        if w.all_elementary() {
            prop_assert_eq!(det, Some(Rational::one()));
        }
    }

    #[test]
    fn probabilistic_equality_accepts_equal_maps(w in arb_word(), seed in any::<u64>()) {
        let f = expand_word(&w).unwrap();
        prop_assert!(maps_equal_probabilistic(&f, &f.clone(), 3, seed));
    }
}

#[test]
fn identity_multidegree() {
    assert_eq!(multidegree(&PolyMap::identity()).unwrap().0, [1, 1, 1]);
}

/// Generalized binomial coefficient `C(r, k)` for rational `r`.
fn gen_binomial(r: &Rational, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, i| {
        let num = r - &Rational::from(i as i64);
        &(acc * num) / &Rational::from((i + 1) as i64)
    })
}

// The vanishing conditions say (1 + U(t))^(e/b) = (1 + t)^(e/a) modulo
// t^(⌊b/a⌋ + 1), with U(t) = Σ u_k t^k. Taking the (e/b)-th root gives
// u_k = C(b/a, k), computed here without the recursion.
#[test]
fn u_matches_generalized_binomials() {
    for b in 4..=30u32 {
        for a in 3..b {
            if b % a == 0 {
                continue;
            }
            let ratio = Rational::new(b as i64, a as i64).unwrap();
            let u = compute_u(a, b).unwrap();
            assert_eq!(u.0.len(), (b / a) as usize);
            for (k, uk) in u.0.iter().enumerate() {
                assert_eq!(*uk, gen_binomial(&ratio, k as u32 + 1), "u_{} for ({a},{b})", k + 1);
            }
        }
    }
}

#[test]
fn frozen_u_values() {
    let q = |n, d| Rational::new(n, d).unwrap();
    assert_eq!(compute_u(4, 14).unwrap().0, vec![q(7, 2), q(35, 8), q(35, 16)]);
    // C(10/3, k): 10/3, 35/9, 140/81
    assert_eq!(compute_u(3, 10).unwrap().0, vec![q(10, 3), q(35, 9), q(140, 81)]);
    assert!(cancellation_check(3, 10, &compute_u(3, 10).unwrap()).unwrap());
}

#[test]
fn sylvester_on_small_pairs() {
    for a in 3..=15u32 {
        for b in (a + 1)..=15 {
            if num_gcd(a, b) != 1 {
                continue;
            }
            let bound = (a - 1) * (b - 1);
            for c in bound..bound + 2 * a * b {
                assert!(semigroup_decompose(a, b, c).is_some(), "({a},{b},{c})");
            }
            // the Frobenius number ab - a - b is never representable
            assert!(semigroup_decompose(a, b, a * b - a - b).is_none());
        }
    }
}

fn num_gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[test]
fn emitted_plans_hit_their_target() {
    for (a, b, c) in [(3, 5, 8), (4, 6, 7), (4, 6, 9), (5, 8, 31), (6, 9, 13), (4, 14, 16), (3, 7, 18)] {
        let Outcome::Constructed(plan) = construct(a, b, c).unwrap() else {
            panic!("({a},{b},{c}) should be constructible");
        };
        let f = expand_word(&plan.word).unwrap();
        assert_eq!(multidegree(&f).unwrap().0, [a, b, c]);
    }
}
