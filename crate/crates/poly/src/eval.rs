use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::poly::MultiPoly;
use crate::{PolyError, Result};

/// Exact values for `A` and `z_1, ..., z_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalPoint {
    pub a: BigRational,
    pub z: Vec<BigRational>,
}

impl EvalPoint {
    pub fn new(a: BigRational, z: Vec<BigRational>) -> EvalPoint {
        EvalPoint { a, z }
    }

    pub fn from_integers(a: i64, z: &[i64]) -> EvalPoint {
        let r = |x: i64| BigRational::from_integer(BigInt::from(x));
        EvalPoint { a: r(a), z: z.iter().map(|&x| r(x)).collect() }
    }

    /// `A = 1`, all `z_k = 0`.
    pub fn origin(nvars: usize) -> EvalPoint {
        EvalPoint { a: BigRational::one(), z: vec![BigRational::zero(); nvars] }
    }

    pub fn nvars(&self) -> usize {
        self.z.len()
    }

    /// The point with `z_i` and `z_{i+1}` (cyclically) exchanged.
    pub fn swapped(&self, i: usize) -> EvalPoint {
        let n = self.z.len();
        let mut p = self.clone();
        p.z.swap(i - 1, i % n);
        p
    }
}

impl MultiPoly {
    /// Exact value at a rational point. The coordinates are brought to a
    /// common denominator `D`, terms are summed as integers grouped by total
    /// degree `d`, and each group is divided by `D^d` at the end.
    pub fn evaluate(&self, p: &EvalPoint) -> Result<BigRational> {
        if p.nvars() != self.nvars() {
            return Err(PolyError::DimensionMismatch { expected: self.nvars(), got: p.nvars() });
        }
        let den = std::iter::once(&p.a).chain(&p.z).fold(BigInt::one(), |d, x| d.lcm(x.denom()));
        let scale = |x: &BigRational| x.numer() * (&den / x.denom());
        let a_pows = powers(&scale(&p.a), self.terms().map(|(m, _)| m.a()).max().unwrap_or(0));
        let z_pows: Vec<Vec<BigInt>> = (1..=self.nvars())
            .map(|k| powers(&scale(&p.z[k - 1]), self.degree_in_z(k)))
            .collect();
        let mut by_degree: Vec<BigInt> = Vec::new();
        for (m, c) in self.terms() {
            let mut t = c * &a_pows[m.a() as usize];
            for k in 1..=self.nvars() {
                let e = m.z(k) as usize;
                if e > 0 {
                    t *= &z_pows[k - 1][e];
                }
            }
            let d = m.total_degree() as usize;
            if by_degree.len() <= d {
                by_degree.resize(d + 1, BigInt::zero());
            }
            by_degree[d] += t;
        }
        if by_degree.is_empty() {
            return Ok(BigRational::zero());
        }
        // sum_d S_d / D^d = (sum_d S_d D^{top - d}) / D^top
        let mut num = BigInt::zero();
        let mut den_pow = BigInt::one();
        for s in by_degree.iter().rev() {
            num += s * &den_pow;
            den_pow *= &den;
        }
        Ok(BigRational::new(num, den_pow / &den))
    }
}

fn powers(x: &BigInt, max: u32) -> Vec<BigInt> {
    let mut v = Vec::with_capacity(max as usize + 1);
    v.push(BigInt::one());
    for e in 1..=max as usize {
        let next = &v[e - 1] * x;
        v.push(next);
    }
    v
}
