//! The loop-model Markov chain on link patterns and its exact stationary law.
//!
//! At each step a position `i` is chosen uniformly; then `e_i` is applied with
//! probability 2/3 and `f_i` with probability 1/3.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use crate::error::{violation, CoreError, Result};
use crate::linalg::{qf, solve_unique, Q};
use crate::linkpat::{enumerate, LinkPattern};
use crate::psitable::MdegTable;

/// Row-stochastic transition matrix over `enumerate(n)`, in that order.
pub fn transition_matrix(n: usize) -> (Vec<LinkPattern>, Vec<Vec<Q>>) {
    let patterns = enumerate(n);
    let index: FxHashMap<&LinkPattern, usize> = patterns.iter().enumerate().map(|(k, p)| (p, k)).collect();
    let size = patterns.len();
    let pe = qf(2, 3 * n as i64);
    let pf = qf(1, 3 * n as i64);
    let mut m = vec![vec![Q::zero(); size]; size];
    for (a, p) in patterns.iter().enumerate() {
        for i in 1..=n {
            m[a][index[&p.apply_e(i)]] += &pe;
            m[a][index[&p.apply_f(i)]] += &pf;
        }
    }
    (patterns, m)
}

#[derive(Clone, Debug)]
pub struct StationarySolution {
    pub n: usize,
    pub patterns: Vec<LinkPattern>,
    pub probabilities: Vec<Q>,
    /// `probabilities / min`, which are integers.
    pub normalized: Vec<BigInt>,
}

impl StationarySolution {
    pub fn minimum_probability(&self) -> Q {
        self.probabilities.iter().min().cloned().unwrap_or_else(Q::zero)
    }

    pub fn normalized_sum(&self) -> BigInt {
        self.normalized.iter().sum()
    }
}

/// Solves `x P = x`, `sum x = 1` exactly.
pub fn stationary(n: usize) -> Result<StationarySolution> {
    let (patterns, p) = transition_matrix(n);
    let size = patterns.len();
    // rows of (P^T - I), then the normalization row
    let mut a: Vec<Vec<Q>> = (0..size)
        .map(|s| (0..size).map(|t| if s == t { &p[t][s] - Q::one() } else { p[t][s].clone() }).collect())
        .collect();
    a.push(vec![Q::one(); size]);
    let mut b = vec![Q::zero(); size];
    b.push(Q::one());
    let x = solve_unique(&a, &b).ok_or(CoreError::NonUniqueStationary)?;
    let min = x.iter().min().cloned().ok_or(CoreError::NonUniqueStationary)?;
    if min <= Q::zero() {
        return Err(violation("stationary positivity", format!("minimum probability {min}")));
    }
    let mut normalized = Vec::with_capacity(size);
    for (pat, v) in patterns.iter().zip(&x) {
        let r = v / &min;
        if !r.is_integer() {
            return Err(violation("stationary integrality", format!("{pat}: {r}")));
        }
        normalized.push(r.to_integer());
    }
    Ok(StationarySolution { n, patterns, probabilities: x, normalized })
}

/// `normalized(pi) = Psi_pi(0)` for every pattern.
pub fn match_psi(table: &MdegTable, sol: &StationarySolution) -> Result<()> {
    if table.size() != sol.n {
        return Err(CoreError::InvalidInput(format!("table N={} vs chain N={}", table.size(), sol.n)));
    }
    for (p, d) in sol.patterns.iter().zip(&sol.normalized) {
        let v = table.get(p).constant_at_origin();
        if v != *d {
            return Err(CoreError::Mismatch { pattern: p.to_string(), expected: d.to_string(), got: v.to_string() });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn n2_is_trivial() {
        let (pats, m) = transition_matrix(2);
        assert_eq!(pats.len(), 1);
        assert_eq!(m, vec![vec![q(1)]]);
    }

    #[test]
    fn n4_matrix() {
        let (pats, m) = transition_matrix(4);
        for row in &m {
            assert_eq!(row.iter().sum::<Q>(), q(1));
        }
        // from (13)(24): every e_i gives a pattern with the chord (i, i+1), every f_i
        // gives the other one
        let pi0 = pats.iter().position(|p| p.crossings() == 1).unwrap();
        let a = pats.iter().position(|p| p.partner(1) == 2).unwrap();
        // e_1, e_3 -> (12)(34); f_2, f_4 -> (12)(34)
        assert_eq!(m[pi0][a], qf(1, 4) * (qf(2, 3) + qf(2, 3) + qf(1, 3) + qf(1, 3)));
        assert_eq!(m[pi0][pi0], q(0));
    }

    #[test]
    fn small_stationary_vectors() {
        let s3 = stationary(3).unwrap();
        assert_eq!(s3.normalized, vec![BigInt::from(1); 3]);
        let s4 = stationary(4).unwrap();
        let want: Vec<BigInt> = [3, 1, 3].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(s4.normalized, want);
        assert_eq!(s4.minimum_probability(), qf(1, 7));
    }
}
