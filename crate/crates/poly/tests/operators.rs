use brauer_poly::{EvalPoint, MultiPoly, PolyError};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const N: usize = 4;

fn a() -> MultiPoly {
    MultiPoly::a(N)
}
fn z(k: usize) -> MultiPoly {
    MultiPoly::z(N, k)
}
fn w(am: i64, i: usize, j: usize) -> MultiPoly {
    MultiPoly::weight(N, am, i, j)
}

/// Independent route to the divided difference: form `F - tau_i F` and divide
/// by `z_i - z_{i+1}` with the general division algorithm.
fn ddiff_by_division(f: &MultiPoly, i: usize) -> MultiPoly {
    let j = f.cyclic_next(i);
    let num = f - &f.tau(i);
    let den = &MultiPoly::z(f.nvars(), i) - &MultiPoly::z(f.nvars(), j);
    num.exact_divide(&den).expect("F - tau F is divisible by z_i - z_{i+1}")
}

#[test]
fn ddiff_of_weight_product() {
    // d_1((A + z2 - z3)(A + z4 - z1)) = -(2A + z4 - z3)
    let f = &w(1, 2, 3) * &w(1, 4, 1);
    let expected = -w(2, 4, 3);
    assert_eq!(f.ddiff(1), expected);
    assert_eq!(ddiff_by_division(&f, 1), expected);
    // multiply back
    assert_eq!(&expected * &(&z(1) - &z(2)), &f - &f.tau(1));
}

#[test]
fn theta_example() {
    // theta_1((A - z1)(A + z2)) = 4A^2 - (A - z2)(A + z1)
    let f = &(&a() - &z(1)) * &(&a() + &z(2));
    let expected = &a().pow(2).scaled(&BigInt::from(4)) - &(&(&a() - &z(2)) * &(&a() + &z(1)));
    assert_eq!(f.theta(1), expected);
    // oracle: compose the definition
    let by_def = &(&a().scaled(&BigInt::from(-2)) * &f.ddiff(1)) - &f.tau(1);
    assert_eq!(by_def, expected);
}

#[test]
fn theta_on_symmetric_input() {
    let f = &(&z(1) + &z(2)) * &w(1, 3, 4);
    assert_eq!(f.theta(1), &(&a().scaled(&BigInt::from(-2)) * &f.ddiff(1)) - &f);
}

#[test]
fn exact_divide_recursion_example() {
    // -(A^2 - (z1 - z2)^2)(A + z3 - z4)(2A + z4 - z3) / (A + z2 - z1)
    let f = -(&(&(&w(1, 1, 2) * &w(1, 2, 1)) * &w(1, 3, 4)) * &w(2, 4, 3));
    let q = f.exact_divide(&w(1, 2, 1)).unwrap();
    let expected = -(&(&w(1, 1, 2) * &w(1, 3, 4)) * &w(2, 4, 3));
    assert_eq!(q, expected);
    assert_eq!(&q * &w(1, 2, 1), f);
}

#[test]
fn exact_divide_simple_cases() {
    let f = &(&a() + &z(1)) * &(&a() - &z(2));
    assert_eq!(f.exact_divide(&(&a() + &z(1))).unwrap(), &a() - &z(2));
    assert_eq!(z(1).exact_divide(&z(2)), Err(PolyError::InexactDivision));
}

#[test]
fn homogeneous_degree_of_base_product() {
    let p = &(&(&w(1, 1, 2) * &w(1, 2, 3)) * &w(1, 3, 4)) * &w(1, 4, 1);
    assert_eq!(p.homogeneous_degree(), Ok(4));
    let v = p.at_a_one().evaluate(&EvalPoint::origin(N)).unwrap();
    assert_eq!(v, BigRational::from_integer(1.into()));
}

fn arb_poly() -> impl Strategy<Value = MultiPoly> {
    let term = (-5i64..=5, 0u32..3, prop::collection::vec(0u32..4, N));
    prop::collection::vec(term, 0..8).prop_map(|ts| {
        let mut p = MultiPoly::zero(N);
        for (c, ae, ze) in ts {
            p.add_term(brauer_poly::Monomial::from_exponents(ae, &ze), BigInt::from(c));
        }
        p
    })
}

fn arb_point() -> impl Strategy<Value = EvalPoint> {
    let q = (-20i64..=20, 1i64..=7)
        .prop_map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)));
    (q.clone(), prop::collection::vec(q, N)).prop_map(|(a, z)| EvalPoint::new(a, z))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn leibniz_rule(f in arb_poly(), g in arb_poly(), i in 1usize..=N) {
        let lhs = (&f * &g).ddiff(i);
        let rhs = &(&f.ddiff(i) * &g) + &(&f.tau(i) * &g.ddiff(i));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ddiff_is_symmetric_and_nilpotent(f in arb_poly(), i in 1usize..=N) {
        let d = f.ddiff(i);
        prop_assert_eq!(d.tau(i), d.clone());
        prop_assert!(d.ddiff(i).is_zero());
        prop_assert_eq!(f.tau(i).tau(i), f.clone());
        prop_assert_eq!(ddiff_by_division(&f, i), d);
    }

    #[test]
    fn divide_undoes_multiply(f in arb_poly(), g in arb_poly()) {
        prop_assume!(!g.is_zero());
        prop_assert_eq!((&f * &g).exact_divide(&g).unwrap(), f);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(f in arb_poly(), g in arb_poly(), p in arb_point()) {
        let fg = (&f * &g).evaluate(&p).unwrap();
        prop_assert_eq!(fg, f.evaluate(&p).unwrap() * g.evaluate(&p).unwrap());
        let sum = (&f + &g).evaluate(&p).unwrap();
        prop_assert_eq!(sum, f.evaluate(&p).unwrap() + g.evaluate(&p).unwrap());
    }

    #[test]
    fn a_one_commutes_with_evaluate_and_tau(f in arb_poly(), p in arb_point(), i in 1usize..=N) {
        let mut p1 = p.clone();
        p1.a = BigRational::from_integer(1.into());
        prop_assert_eq!(f.at_a_one().evaluate(&p).unwrap(), f.evaluate(&p1).unwrap());
        prop_assert_eq!(f.at_a_one().tau(i), f.tau(i).at_a_one());
        // evaluating tau_i F equals evaluating F at the swapped point
        prop_assert_eq!(f.tau(i).evaluate(&p).unwrap(), f.evaluate(&p.swapped(i)).unwrap());
    }

    #[test]
    fn records_round_trip(f in arb_poly()) {
        prop_assert_eq!(MultiPoly::from_records(N, &f.to_records()).unwrap(), f);
    }
}
