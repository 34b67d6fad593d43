//! Points of the Brauer loop scheme `E = {M : M ∘ M = 0, diag M = 0}` and of
//! its components `E_pi`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::circlealg::{cp_inv, cp_mul, ExactMatrix};
use crate::error::{CoreError, Result};
use crate::linalg::{rank, Q};
use crate::linkpat::{wrap, LinkPattern};

/// `M = P ∘ (pi t) ∘ P^{∘-1}` together with the data that produced it.
#[derive(Clone, Debug, Serialize)]
pub struct SamplePoint {
    pub m: ExactMatrix,
    pub pattern: LinkPattern,
    pub t: Vec<String>,
    pub p: ExactMatrix,
}

/// `(pi t)_{i, pi(i)} = t_{pi(i)}`; fixed points give zero rows.
pub fn pattern_matrix(pi: &LinkPattern, t: &[Q]) -> ExactMatrix {
    let n = pi.size();
    let mut m = ExactMatrix::zero(n);
    for i in 1..=n {
        let j = pi.partner(i);
        if j != i {
            m[(i, j)] = t[j - 1].clone();
        }
    }
    m
}

/// All `t_i` nonzero and the chord products `t_i t_{pi(i)}` pairwise distinct.
pub fn check_generic(pi: &LinkPattern, t: &[Q]) -> Result<()> {
    if t.len() != pi.size() {
        return Err(CoreError::InvalidInput(format!("{} parameters for N = {}", t.len(), pi.size())));
    }
    if let Some(k) = t.iter().position(|x| x.is_zero()) {
        return Err(CoreError::DegenerateParameters(format!("t_{} = 0", k + 1)));
    }
    let products: Vec<Q> = pi.chords().iter().map(|&(a, b)| &t[a - 1] * &t[b - 1]).collect();
    for x in 0..products.len() {
        for y in x + 1..products.len() {
            if products[x] == products[y] {
                return Err(CoreError::DegenerateParameters(format!(
                    "chords {:?} and {:?} share the product {}",
                    pi.chords()[x],
                    pi.chords()[y],
                    products[x]
                )));
            }
        }
    }
    Ok(())
}

pub fn sample_point(pi: &LinkPattern, t: &[Q], p: &ExactMatrix) -> Result<SamplePoint> {
    check_generic(pi, t)?;
    if p.size() != pi.size() || !p.has_unit_diagonal() {
        return Err(CoreError::InvalidInput("P must have size N and unit diagonal".into()));
    }
    let m = cp_mul(&cp_mul(p, &pattern_matrix(pi, t)), &cp_inv(p)?);
    Ok(SamplePoint { m, pattern: pi.clone(), t: t.iter().map(|x| x.to_string()).collect(), p: p.clone() })
}

/// Small nonzero integers `t`, redrawn until generic.
pub fn random_parameters(pi: &LinkPattern, rng: &mut impl Rng) -> Vec<Q> {
    let bound = 3 * pi.size() as i64;
    loop {
        let t: Vec<Q> = (0..pi.size())
            .map(|_| {
                let v = rng.gen_range(1..=bound) * if rng.gen_bool(0.5) { 1 } else { -1 };
                Q::from_integer(BigInt::from(v))
            })
            .collect();
        if check_generic(pi, &t).is_ok() {
            return t;
        }
    }
}

/// Unit diagonal, other entries uniform in `-3..=3`.
pub fn random_unipotent(n: usize, rng: &mut impl Rng) -> ExactMatrix {
    ExactMatrix::from_fn(n, |i, j| {
        if i == j {
            Q::one()
        } else {
            Q::from_integer(BigInt::from(rng.gen_range(-3..=3)))
        }
    })
}

pub fn random_sample(pi: &LinkPattern, rng: &mut impl Rng) -> SamplePoint {
    let t = random_parameters(pi, rng);
    let p = random_unipotent(pi.size(), rng);
    sample_point(pi, &t, &p).expect("random parameters are generic")
}

pub fn is_in_e(m: &ExactMatrix) -> bool {
    m.has_zero_diagonal() && cp_mul(m, m).is_zero()
}

/// Diagonal of the ordinary square `M^2`.
pub fn square_diag(m: &ExactMatrix) -> Vec<Q> {
    m.matmul(m).diagonal()
}

/// Pairs up equal nonzero entries of `diag(M^2)`; a zero entry, allowed only
/// for odd `N`, becomes the fixed point.
pub fn identify_pattern(m: &ExactMatrix) -> Result<LinkPattern> {
    let n = m.size();
    let d = square_diag(m);
    let mut groups: FxHashMap<&Q, Vec<usize>> = FxHashMap::default();
    for (k, v) in d.iter().enumerate() {
        groups.entry(v).or_default().push(k + 1);
    }
    let mut pairing: Vec<usize> = (1..=n).collect();
    for (v, labels) in &groups {
        if v.is_zero() {
            if labels.len() != n % 2 {
                return Err(CoreError::AmbiguousPairing(format!("{} zero entries", labels.len())));
            }
            continue;
        }
        if labels.len() != 2 {
            return Err(CoreError::AmbiguousPairing(format!("value {v} occurs {} times", labels.len())));
        }
        pairing[labels[0] - 1] = labels[1];
        pairing[labels[1] - 1] = labels[0];
    }
    LinkPattern::new(pairing).map_err(|e| CoreError::AmbiguousPairing(e.to_string()))
}

/// Rank of the strip triangle `{(a, b) : i <= a <= b <= i + d}` of `Φ(M)`.
pub fn region_rank(m: &ExactMatrix, i: usize, d: usize) -> usize {
    let n = m.size();
    let rows: Vec<Vec<Q>> = (0..=d)
        .map(|x| {
            (0..=d)
                .map(|y| {
                    if y < x {
                        Q::zero()
                    } else {
                        m[(wrap((i + x) as i64, n), wrap((i + y) as i64, n))].clone()
                    }
                })
                .collect()
        })
        .collect();
    rank(&rows)
}

/// `r_ij(M) <= r_ij(pi)` at every strip position.
pub fn check_rank_bounds(m: &ExactMatrix, pi: &LinkPattern) -> bool {
    let n = m.size();
    let table = pi.rank_table();
    (1..=n).all(|i| (0..n).all(|d| region_rank(m, i, d) <= table.get(i, d)))
}

/// Entries `M_{i, i+d}` vanish wherever `r_{i, i+d}(pi) = 0`.
pub fn check_linear_conditions(m: &ExactMatrix, pi: &LinkPattern) -> bool {
    let n = m.size();
    let table = pi.rank_table();
    (1..=n).all(|i| {
        (0..n).all(|d| table.get(i, d) != 0 || m[(i, wrap((i + d) as i64, n))].is_zero())
    })
}

/// Coordinates of a zero-diagonal matrix: the off-diagonal positions.
fn off_diagonal(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j))).collect()
}

/// Rank of a linear map on zero-diagonal matrices, given as a function of a
/// matrix unit.
fn map_rank(n: usize, f: impl Fn(&ExactMatrix) -> ExactMatrix) -> usize {
    let cols: Vec<Vec<Q>> = off_diagonal(n)
        .into_iter()
        .map(|(i, j)| f(&ExactMatrix::unit(n, i, j)).rows().into_iter().flatten().collect())
        .collect();
    rank(&cols)
}

/// `dim {X : diag X = 0, X ∘ M + M ∘ X = 0}`.
pub fn tangent_dimension(m: &ExactMatrix) -> usize {
    let n = m.size();
    n * (n - 1) - map_rank(n, |x| &cp_mul(x, m) + &cp_mul(m, x))
}

/// Codimension, among zero-diagonal `X`, of `{X : (pi t) ∘ X = X ∘ (pi t)}`.
pub fn stabilizer_codim(pi: &LinkPattern, t: &[Q]) -> Result<usize> {
    check_generic(pi, t)?;
    let pt = pattern_matrix(pi, t);
    Ok(map_rank(pi.size(), |x| &cp_mul(&pt, x) - &cp_mul(x, &pt)))
}

/// `floor(N^2 / 2)`.
pub fn expected_tangent_dimension(n: usize) -> usize {
    n * n / 2
}

/// `2n(n + r - 1)`.
pub fn expected_stabilizer_codim(n_total: usize) -> usize {
    let (n, r) = (n_total / 2, n_total % 2);
    2 * n * (n + r).saturating_sub(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use crate::linkpat::maximal_pattern;
    use crate::points::seeded;

    fn lp(n: usize, ch: &[(usize, usize)]) -> LinkPattern {
        LinkPattern::from_chords(n, ch).unwrap()
    }

    fn ts(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn sample_with_identity_conjugator() {
        let pi = lp(4, &[(1, 2), (3, 4)]);
        let s = sample_point(&pi, &ts(&[1, 2, 3, 4]), &ExactMatrix::identity(4)).unwrap();
        assert_eq!(s.m, pattern_matrix(&pi, &ts(&[1, 2, 3, 4])));
        assert_eq!(square_diag(&s.m), ts(&[2, 2, 12, 12]));
        assert!(matches!(
            sample_point(&pi, &ts(&[1, 6, 2, 3]), &ExactMatrix::identity(4)),
            Err(CoreError::DegenerateParameters(_))
        ));
    }

    #[test]
    fn random_sample_lies_in_e() {
        let mut rng = seeded(11);
        let pi = lp(4, &[(1, 2), (3, 4)]);
        let s = random_sample(&pi, &mut rng);
        assert!(s.m.has_zero_diagonal());
        assert!(cp_mul(&s.m, &s.m).is_zero());
        assert_eq!(identify_pattern(&s.m).unwrap(), pi);
    }

    #[test]
    fn membership_examples() {
        assert!(is_in_e(&ExactMatrix::zero(3)));
        assert!(is_in_e(&ExactMatrix::unit(3, 1, 2)));
        assert!(!is_in_e(&ExactMatrix::identity(3)));
        assert_eq!(square_diag(&ExactMatrix::zero(3)), ts(&[0, 0, 0]));
        assert!(matches!(identify_pattern(&ExactMatrix::zero(4)), Err(CoreError::AmbiguousPairing(_))));
        let m = pattern_matrix(&maximal_pattern(4), &ts(&[1, 2, 5, 7]));
        assert_eq!(identify_pattern(&m).unwrap(), maximal_pattern(4));
    }

    #[test]
    fn rank_bound_examples() {
        let pi0 = maximal_pattern(4);
        let a = lp(4, &[(1, 2), (3, 4)]);
        assert!(check_rank_bounds(&ExactMatrix::zero(4), &a));
        let m = pattern_matrix(&pi0, &ts(&[1, 2, 5, 7]));
        assert!(check_rank_bounds(&m, &pi0));
        // a point of E_(12)(34) has M_12 != 0, while r_12(pi0) = 0
        let s = pattern_matrix(&a, &ts(&[1, 2, 5, 7]));
        assert!(!check_rank_bounds(&s, &pi0));
        assert!(!check_linear_conditions(&s, &pi0));
    }

    #[test]
    fn dimension_examples() {
        let m = pattern_matrix(&maximal_pattern(4), &ts(&[1, 2, 5, 7]));
        assert_eq!(tangent_dimension(&m), 8);
        let m3 = pattern_matrix(&maximal_pattern(3), &ts(&[2, 3, 5]));
        assert_eq!(tangent_dimension(&m3), 4);
        assert_eq!(tangent_dimension(&ExactMatrix::zero(4)), 12);
        assert_eq!(stabilizer_codim(&maximal_pattern(4), &ts(&[1, 2, 5, 7])).unwrap(), 4);
        assert_eq!(stabilizer_codim(&maximal_pattern(3), &ts(&[2, 3, 5])).unwrap(), 2);
        assert_eq!(stabilizer_codim(&maximal_pattern(2), &ts(&[2, 3])).unwrap(), 0);
        assert_eq!(expected_stabilizer_codim(4), 4);
        assert_eq!(expected_stabilizer_codim(3), 2);
        assert_eq!(expected_stabilizer_codim(2), 0);
    }
}
