use brauer_core::linalg::{q, Q};
use brauer_core::linkpat::{enumerate, maximal_pattern, LinkPattern};
use brauer_core::loopchain::{match_psi, stationary, transition_matrix};
use brauer_core::points::seeded;
use brauer_core::psitable::{
    base_mdeg, check_homogeneity, check_normalization, compute_table, compute_table_ordered, positivity_spot_check,
    recursion_step, rotation_covariance, sector_product, smallarch_check, specialize_check, sum_rule_sector,
    verify_exchange, EdgeOrder, MdegTable,
};
use brauer_core::CoreError;
use brauer_poly::{EvalPoint, MultiPoly};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

fn lp(n: usize, ch: &[(usize, usize)]) -> LinkPattern {
    LinkPattern::from_chords(n, ch).unwrap()
}

fn origin_values(t: &MdegTable) -> Vec<(String, i64)> {
    t.patterns().iter().zip(t.values_at_origin()).map(|(p, v)| (p.to_string(), v.try_into().unwrap())).collect()
}

#[test]
fn values_at_the_origin() {
    let t3 = compute_table(3).unwrap();
    assert!(t3.values_at_origin().iter().all(|v| v.is_one()));
    let t4 = compute_table(4).unwrap();
    assert_eq!(*t4.get(&lp(4, &[(1, 3), (2, 4)])), base_mdeg(4));
    assert_eq!(maximal_pattern(4), lp(4, &[(1, 3), (2, 4)]));
    assert_eq!(t4.total_degree(), BigInt::from(7));
    assert_eq!(compute_table(5).unwrap().total_degree(), BigInt::from(55));

    // frozen from the stationary distribution of the loop chain, checked below
    let six = [
        ("(12)(34)(56)", 63),
        ("(12)(35)(46)", 13),
        ("(12)(36)(45)", 31),
        ("(13)(24)(56)", 13),
        ("(13)(25)(46)", 3),
        ("(13)(26)(45)", 13),
        ("(14)(23)(56)", 31),
        ("(14)(25)(36)", 1),
        ("(14)(26)(35)", 3),
        ("(15)(23)(46)", 13),
        ("(15)(24)(36)", 3),
        ("(15)(26)(34)", 13),
        ("(16)(23)(45)", 63),
        ("(16)(24)(35)", 13),
        ("(16)(25)(34)", 31),
    ];
    let t6 = compute_table(6).unwrap();
    let want: Vec<(String, i64)> = six.iter().map(|&(p, v)| (p.to_string(), v)).collect();
    assert_eq!(origin_values(&t6), want);
    assert_eq!(t6.total_degree(), BigInt::from(307));
    let sol = stationary(6).unwrap();
    let chain: Vec<(String, i64)> =
        sol.patterns.iter().zip(&sol.normalized).map(|(p, v)| (p.to_string(), v.try_into().unwrap())).collect();
    assert_eq!(chain, want);
}

#[test]
fn recursion_is_an_involution() {
    for n in 3..=6 {
        let t = compute_table(n).unwrap();
        for p in t.patterns() {
            for i in 1..=n {
                if p.has_small_chord(i) {
                    assert!(matches!(recursion_step(t.get(p), p, i), Err(CoreError::ChordPresent { .. })));
                    continue;
                }
                let there = recursion_step(t.get(p), p, i).unwrap();
                assert_eq!(there, *t.get(&p.apply_f(i)), "{p}, i={i}");
                assert_eq!(recursion_step(&there, &p.apply_f(i), i).unwrap(), *t.get(p), "{p}, i={i}");
            }
        }
    }
}

#[test]
fn structure_of_the_tables() {
    for n in 2..=6 {
        let t = compute_table(n).unwrap();
        check_homogeneity(&t).unwrap();
        check_normalization(&t).unwrap();
        rotation_covariance(&t).unwrap();
        let other = compute_table_ordered(n, EdgeOrder::Descending).unwrap();
        for p in t.patterns() {
            assert_eq!(t.get(p), other.get(p), "N={n}, {p}");
        }
    }
}

/// The exchange relation with its rational coefficients, checked by evaluation at `A = 1`.
fn exchange_by_evaluation(t: &MdegTable, points: usize, seed: u64) {
    let n = t.size();
    let psis: Vec<MultiPoly> = t.patterns().iter().map(|p| t.psi(p)).collect();
    let value = |p: &LinkPattern, at: &EvalPoint| {
        let k = t.patterns().iter().position(|x| x == p).unwrap();
        psis[k].evaluate(at).unwrap()
    };
    let mut rng = seeded(seed);
    let mut done = 0;
    while done < points {
        let z: Vec<Q> = (0..n).map(|_| Q::new(BigInt::from(rng.gen_range(-50..=50)), BigInt::from(7))).collect();
        let at = EvalPoint::new(q(1), z);
        for i in 1..=n {
            let u = &at.z[i - 1] - &at.z[i % n];
            let den = (q(2) - &u) * (q(1) + &u);
            if den.is_zero() {
                continue;
            }
            let a = q(2) * (q(1) - &u) / &den;
            let b = &u * (q(1) - &u) / &den;
            let c = q(2) * &u / &den;
            for target in t.patterns() {
                let e_sum: Q =
                    t.patterns().iter().filter(|rho| rho.apply_e(i) == *target).map(|rho| value(rho, &at)).sum();
                let lhs = &a * value(target, &at) + &b * value(&target.apply_f(i), &at) + &c * e_sum;
                assert_eq!(lhs, value(target, &at.swapped(i)), "N={n}, i={i}, {target}");
            }
        }
        done += 1;
    }
}

#[test]
fn exchange_relations() {
    for n in 2..=6 {
        let t = compute_table(n).unwrap();
        assert_eq!(verify_exchange(&t).unwrap(), n * t.len());
        exchange_by_evaluation(&t, if n <= 5 { 20 } else { 3 }, n as u64);
    }
    let t5 = compute_table(5).unwrap();
    let p = t5.patterns()[3].clone();
    let z1 = MultiPoly::z(5, 1);
    let bumped = t5.with_entry(&p, t5.get(&p) + &(&z1 * &MultiPoly::a(5).pow(4)));
    assert!(verify_exchange(&bumped).is_err());
}

#[test]
fn loop_chain() {
    for n in 2..=6 {
        let (pats, m) = transition_matrix(n);
        for row in &m {
            assert_eq!(row.iter().sum::<Q>(), q(1));
        }
        let sol = stationary(n).unwrap();
        assert_eq!(sol.patterns, pats);
        assert_eq!(sol.probabilities.iter().sum::<Q>(), q(1));
        assert!(sol.normalized.iter().all(|v| *v >= BigInt::one()));
        // invariant under rotation
        for (p, v) in sol.patterns.iter().zip(&sol.normalized) {
            let k = sol.patterns.iter().position(|x| *x == p.rotate()).unwrap();
            assert_eq!(sol.normalized[k], *v);
        }
        // stationarity checked directly
        for s in 0..pats.len() {
            let flow: Q = (0..pats.len()).map(|r| &sol.probabilities[r] * &m[r][s]).sum();
            assert_eq!(flow, sol.probabilities[s]);
        }
        let t = compute_table(n).unwrap();
        match_psi(&t, &sol).unwrap();
        assert_eq!(t.total_degree(), sol.normalized_sum());
    }
    let t4 = compute_table(4).unwrap();
    let p = lp(4, &[(1, 2), (3, 4)]);
    let mutated = t4.with_entry(&p, t4.get(&p) + &MultiPoly::a(4).pow(4));
    assert!(matches!(match_psi(&mutated, &stationary(4).unwrap()), Err(CoreError::Mismatch { .. })));
    assert!(match_psi(&t4, &stationary(6).unwrap()).is_err());
}

#[test]
fn sector_sums() {
    assert_eq!(sector_product(2), MultiPoly::one(2));
    for n in [2, 4, 6] {
        sum_rule_sector(&compute_table(n).unwrap()).unwrap();
    }
    let t4 = compute_table(4).unwrap();
    let sector: BigInt = t4
        .patterns()
        .iter()
        .zip(t4.values_at_origin())
        .filter(|(p, _)| p.in_permutation_sector())
        .map(|(_, v)| v)
        .sum();
    assert_eq!(sector, BigInt::from(4));
}

#[test]
fn specialization_and_small_arches() {
    let tables: Vec<MdegTable> = (2..=6).map(|n| compute_table(n).unwrap()).collect();
    for n in 4..=6 {
        let count = specialize_check(&tables[n - 2], &tables[n - 4]).unwrap();
        let expected: usize =
            enumerate(n).iter().map(|p| (1..=n).filter(|&i| p.has_small_chord(i)).count()).sum();
        assert_eq!(count, expected);
    }
    for n in 2..=6 {
        smallarch_check(&tables[n - 2]).unwrap();
    }
}

#[test]
fn positivity() {
    let mut rng = seeded(3);
    for n in 2..=6 {
        let t = compute_table(n).unwrap();
        assert_eq!(positivity_spot_check(&t, 100, &mut rng).unwrap(), 100);
    }
    // a polynomial negative somewhere in the region
    let t4 = compute_table(4).unwrap();
    let p = lp(4, &[(1, 2), (3, 4)]);
    let z = &MultiPoly::z(4, 1) - &MultiPoly::z(4, 2);
    let bad = t4.with_entry(&p, &z * &MultiPoly::a(4).pow(3));
    assert!(positivity_spot_check(&bad, 100, &mut rng).is_err());
}
