use std::collections::{BTreeSet, HashSet, VecDeque};

use brauer_core::linkpat::{enumerate, maximal_pattern, LinkPattern};

/// Every map {1..n} -> {1..n} that is an involution with n mod 2 fixed points.
fn brute_force_patterns(n: usize) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    let total = n.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let f: Vec<usize> = (0..n)
            .map(|_| {
                let v = c % n + 1;
                c /= n;
                v
            })
            .collect();
        let involution = (0..n).all(|k| f[f[k] - 1] == k + 1);
        let fixed = (0..n).filter(|&k| f[k] == k + 1).count();
        if involution && fixed == n % 2 {
            out.insert(f);
        }
    }
    out
}

#[test]
fn enumeration_matches_brute_force() {
    for n in 1..=7 {
        let listed: Vec<Vec<usize>> = enumerate(n).iter().map(|p| p.pairing().to_vec()).collect();
        let set: BTreeSet<Vec<usize>> = listed.iter().cloned().collect();
        assert_eq!(set.len(), listed.len(), "duplicates at N={n}");
        assert_eq!(set, brute_force_patterns(n), "N={n}");
        let mut sorted = listed.clone();
        sorted.sort();
        assert_eq!(sorted, listed, "order at N={n}");
    }
}

#[test]
fn counts() {
    // (N-1)!! for even N, N!! for odd N
    let want = [(2, 1), (3, 3), (4, 3), (5, 15), (6, 15), (7, 105), (8, 105), (9, 945), (10, 945)];
    for (n, c) in want {
        assert_eq!(enumerate(n).len(), c, "N={n}");
    }
}

#[test]
fn f_is_an_involution_and_e_is_idempotent() {
    for n in 2..=8 {
        for p in enumerate(n) {
            for i in 1..=n {
                assert_eq!(p.apply_f(i).apply_f(i), p, "{p}, i={i}");
                let e = p.apply_e(i);
                assert_eq!(e.apply_e(i), e, "{p}, i={i}");
                assert!(e.has_small_chord(i) || e.is_fixed(i) || e.is_fixed(i % n + 1), "{p}, i={i}");
            }
        }
    }
}

#[test]
fn f_changes_crossings_by_at_most_one() {
    for n in 2..=8 {
        for p in enumerate(n) {
            for i in 1..=n {
                let diff = p.apply_f(i).crossings() as i64 - p.crossings() as i64;
                assert!((-1..=1).contains(&diff), "{p}, i={i}: {diff}");
                if p.has_small_chord(i) {
                    assert_eq!(p.apply_f(i), p);
                }
            }
        }
    }
}

#[test]
fn rotation_has_order_n() {
    for n in 2..=8 {
        for p in enumerate(n) {
            let mut r = p.clone();
            for _ in 0..n {
                r = r.rotate();
            }
            assert_eq!(r, p);
            assert_eq!(p.rotate().rotate_back(), p);
            assert_eq!(p.rotate().crossings(), p.crossings());
        }
    }
}

#[test]
fn maximal_pattern_is_rotation_invariant_and_most_crossing() {
    for n in 2..=9 {
        let pi0 = maximal_pattern(n);
        let max = enumerate(n).iter().map(LinkPattern::crossings).max().unwrap();
        assert_eq!(pi0.crossings(), max, "N={n}");
        if n % 2 == 0 {
            assert_eq!(pi0.rotate(), pi0);
        }
    }
}

#[test]
fn recursion_edges_reach_every_pattern() {
    for n in 2..=9 {
        let all: HashSet<LinkPattern> = enumerate(n).into_iter().collect();
        let mut seen = HashSet::from([maximal_pattern(n)]);
        let mut queue = VecDeque::from([maximal_pattern(n)]);
        while let Some(p) = queue.pop_front() {
            for i in 1..=n {
                if !p.has_small_chord(i) {
                    let q = p.apply_f(i);
                    if seen.insert(q.clone()) {
                        queue.push_back(q);
                    }
                }
            }
        }
        assert_eq!(seen, all, "N={n}");
    }
}

#[test]
fn essential_set_implies_rank_table() {
    for n in 2..=7 {
        for p in enumerate(n) {
            let t = p.rank_table();
            for e in p.essential_set() {
                assert!(p.diagram().contains(&e));
            }
            for i in 1..=n {
                for d in 0..n {
                    assert!(
                        p.implied_rank_bound(i, d) <= t.get(i, d),
                        "{p}: bound at ({i}, {d}) is {} but the table says {}",
                        p.implied_rank_bound(i, d),
                        t.get(i, d)
                    );
                }
            }
        }
    }
}

#[test]
fn rank_table_shape() {
    for n in 2..=8 {
        for p in enumerate(n) {
            let t = p.rank_table();
            for i in 1..=n {
                assert_eq!(t.get(i, 0), 0);
                assert_eq!(t.get(i, n - 1), n / 2);
                for d in 1..n {
                    let step = t.get(i, d) - t.get(i, d - 1);
                    assert!(step <= 1, "{p} at ({i}, {d})");
                }
            }
        }
    }
}

#[test]
fn removing_a_small_chord_keeps_the_rest() {
    for n in 4..=8 {
        for p in enumerate(n) {
            for i in 1..=n {
                match p.remove_small_chord(i) {
                    Ok(q) => {
                        assert!(p.has_small_chord(i));
                        assert_eq!(q.size(), n - 2);
                        assert_eq!(q.chords().len() + 1, p.chords().len());
                    }
                    Err(_) => assert!(!p.has_small_chord(i)),
                }
            }
        }
    }
}
