use brauer_core::circlealg::{cp_inv, cp_mul, cycle, ExactMatrix};
use brauer_core::escheme::{
    check_linear_conditions, check_rank_bounds, expected_stabilizer_codim, expected_tangent_dimension,
    identify_pattern, is_in_e, pattern_matrix, random_parameters, random_sample, random_unipotent, region_rank,
    square_diag, stabilizer_codim, tangent_dimension,
};
use brauer_core::linalg::{q, rank, Q};
use brauer_core::linkpat::{enumerate, wrap, LinkPattern};
use brauer_core::points::seeded;

#[test]
fn samples_of_every_component() {
    let mut rng = seeded(2024);
    for n in 3..=6 {
        for pi in enumerate(n) {
            for _ in 0..25 {
                let s = random_sample(&pi, &mut rng);
                assert!(is_in_e(&s.m), "{pi}");
                let t: Vec<Q> = s.t.iter().map(|x| x.parse().unwrap()).collect();
                let d = square_diag(&s.m);
                for i in 1..=n {
                    let j = pi.partner(i);
                    let want = if i == j { q(0) } else { &t[i - 1] * &t[j - 1] };
                    assert_eq!(d[i - 1], want, "{pi}, i={i}");
                }
                assert_eq!(identify_pattern(&s.m).unwrap(), pi);
                assert!(check_rank_bounds(&s.m, &pi), "{pi}");
                assert!(check_linear_conditions(&s.m, &pi), "{pi}");
            }
        }
    }
}

#[test]
fn squared_diagonal_is_conjugation_invariant() {
    let mut rng = seeded(5);
    for n in 3..=6 {
        for pi in enumerate(n) {
            let m = pattern_matrix(&pi, &random_parameters(&pi, &mut rng));
            let p = random_unipotent(n, &mut rng);
            let conj = cp_mul(&cp_mul(&p, &m), &cp_inv(&p).unwrap());
            assert_eq!(square_diag(&conj), square_diag(&m));
        }
    }
}

#[test]
fn cycling_moves_samples_to_the_backward_rotation() {
    let mut rng = seeded(9);
    for n in 3..=6 {
        for pi in enumerate(n) {
            let s = random_sample(&pi, &mut rng);
            let c = cycle(&s.m);
            assert!(is_in_e(&c));
            assert_eq!(identify_pattern(&c).unwrap(), pi.rotate_back(), "{pi}");
            assert!(check_rank_bounds(&c, &pi.rotate_back()));
        }
    }
    // (12)(34) and its forward rotation (14)(23) are distinct, so the direction matters
    let pi = LinkPattern::from_chords(4, &[(1, 2), (3, 4)]).unwrap();
    let c = cycle(&random_sample(&pi, &mut rng).m);
    assert_ne!(identify_pattern(&c).unwrap(), pi.rotate_back().rotate_back());
    assert_eq!(pi.rotate(), pi.rotate_back());
    let pi5 = LinkPattern::from_chords(5, &[(1, 2), (3, 4)]).unwrap();
    let c5 = cycle(&random_sample(&pi5, &mut rng).m);
    assert_ne!(identify_pattern(&c5).unwrap(), pi5.rotate());
}

/// Rank of the strip triangle read directly from the periodic extension.
fn strip_rank(m: &ExactMatrix, i: usize, d: usize) -> usize {
    let n = m.size();
    let rows: Vec<Vec<Q>> = (i..=i + d)
        .map(|a| {
            (i..=i + d)
                .map(|b| if b < a { q(0) } else { m[(wrap(a as i64, n), wrap(b as i64, n))].clone() })
                .collect()
        })
        .collect();
    rank(&rows)
}

#[test]
fn region_rank_matches_strip_rank_and_pattern_table() {
    let mut rng = seeded(13);
    for n in 3..=6 {
        for pi in enumerate(n) {
            let s = random_sample(&pi, &mut rng);
            let table = pi.rank_table();
            for i in 1..=n {
                for d in 0..n {
                    let r = region_rank(&s.m, i, d);
                    assert_eq!(r, strip_rank(&s.m, i, d));
                    // generic points of the component attain the bound
                    assert_eq!(r, table.get(i, d), "{pi} at ({i}, {d})");
                }
            }
        }
    }
}

#[test]
fn dimensions_at_every_pattern() {
    let mut rng = seeded(21);
    for n in 2..=6 {
        for pi in enumerate(n) {
            let s = random_sample(&pi, &mut rng);
            assert_eq!(tangent_dimension(&s.m), expected_tangent_dimension(n), "{pi}");
            let t = random_parameters(&pi, &mut rng);
            assert_eq!(stabilizer_codim(&pi, &t).unwrap(), expected_stabilizer_codim(n), "{pi}");
        }
    }
}

#[test]
fn rank_bounds_with_pairing_separate_components() {
    let mut rng = seeded(31);
    for n in 4..=6 {
        let pats = enumerate(n);
        for pi in &pats {
            let s = random_sample(pi, &mut rng);
            for sigma in &pats {
                let d = square_diag(&s.m);
                let paired = (1..=n).all(|i| d[i - 1] == d[sigma.partner(i) - 1]);
                let all = paired && check_rank_bounds(&s.m, sigma) && check_linear_conditions(&s.m, sigma);
                assert_eq!(all, sigma == pi, "sample of {pi} against {sigma}");
            }
        }
    }
}

#[test]
fn rank_bounds_alone_can_be_weaker() {
    let mut rng = seeded(37);
    let nested = LinkPattern::from_chords(4, &[(1, 2), (3, 4)]).unwrap();
    let crossing = LinkPattern::from_chords(4, &[(1, 3), (2, 4)]).unwrap();
    let s = random_sample(&nested, &mut rng);
    assert!(!check_rank_bounds(&s.m, &crossing));
    let s = random_sample(&crossing, &mut rng);
    assert!(check_rank_bounds(&s.m, &nested));
}
