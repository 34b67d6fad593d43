//! Pfaffians over commutative rings, the degree determinants, and the closed
//! forms for the multidegree of `{M : M^2 = 0}`.

use brauer_poly::{EvalPoint, MultiPoly};
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{violation, CoreError, Result};
use crate::field::Field;
use crate::linalg::{determinant, Q};
use crate::psitable::MdegTable;

/// The operations a Pfaffian needs from its coefficient domain.
pub trait Ring: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Ring for Q {
    fn zero_like(&self) -> Self {
        Q::zero()
    }
    fn one_like(&self) -> Self {
        Q::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Ring for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        MultiPoly::one(self.nvars())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// An antisymmetric matrix, 1-based.
#[derive(Clone, Debug)]
pub struct SkewMatrix<T> {
    size: usize,
    zero: T,
    entries: Vec<T>,
}

impl<T: Ring> SkewMatrix<T> {
    /// Builds the matrix from its strict upper triangle `f(i, j)`, `i < j`.
    pub fn from_upper(size: usize, zero: T, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = vec![zero.zero_like(); size * size];
        for i in 1..=size {
            for j in i + 1..=size {
                let v = f(i, j);
                entries[(j - 1) * size + (i - 1)] = v.neg();
                entries[(i - 1) * size + (j - 1)] = v;
            }
        }
        SkewMatrix { size, zero, entries }
    }

    /// Checks antisymmetry of a full matrix given row by row.
    pub fn from_rows(zero: T, rows: Vec<Vec<T>>) -> Result<Self>
    where
        T: PartialEq,
    {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return Err(CoreError::NotSkew);
        }
        for i in 0..size {
            if !rows[i][i].is_zero_elem() {
                return Err(CoreError::NotSkew);
            }
            for j in i + 1..size {
                if rows[i][j] != rows[j][i].neg() {
                    return Err(CoreError::NotSkew);
                }
            }
        }
        Ok(SkewMatrix { size, zero, entries: rows.into_iter().flatten().collect() })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[(i - 1) * self.size + (j - 1)]
    }

    /// Swaps labels `i` and `j` in both rows and columns.
    pub fn swapped(&self, i: usize, j: usize) -> Self {
        let s = |k: usize| if k == i { j } else if k == j { i } else { k };
        let n = self.size;
        let mut entries = self.entries.clone();
        for a in 1..=n {
            for b in 1..=n {
                entries[(a - 1) * n + (b - 1)] = self.get(s(a), s(b)).clone();
            }
        }
        SkewMatrix { size: n, zero: self.zero.clone(), entries }
    }
}

/// Sum over perfect matchings with the crossing sign. For odd size the
/// unmatched label `k` contributes the sign `(-1)^(size-k)`, which is what the
/// normalized sum over all permutations gives when the last slot is unpaired.
pub fn pfaffian<T: Ring>(a: &SkewMatrix<T>) -> T {
    let labels: Vec<usize> = (1..=a.size).collect();
    if a.size.is_multiple_of(2) {
        return pf_rec(a, &labels);
    }
    let mut acc = a.zero.zero_like();
    for k in 1..=a.size {
        let rest: Vec<usize> = labels.iter().copied().filter(|&x| x != k).collect();
        let term = pf_rec(a, &rest);
        acc = if (a.size - k).is_multiple_of(2) { acc.add(&term) } else { acc.add(&term.neg()) };
    }
    acc
}

fn pf_rec<T: Ring>(a: &SkewMatrix<T>, labels: &[usize]) -> T {
    if labels.is_empty() {
        return a.zero.one_like();
    }
    let first = labels[0];
    let mut acc = a.zero.zero_like();
    for p in 1..labels.len() {
        let x = a.get(first, labels[p]);
        if x.is_zero_elem() {
            continue;
        }
        let rest: Vec<usize> =
            labels[1..].iter().enumerate().filter(|&(k, _)| k + 1 != p).map(|(_, &l)| l).collect();
        let term = x.mul(&pf_rec(a, &rest));
        acc = if p % 2 == 1 { acc.add(&term) } else { acc.add(&term.neg()) };
    }
    acc
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// `det[C(2i+2j+1, 2i)]` for even `N`, `det[C(2i+2j+3, 2i+1)]` for odd `N`,
/// with `0 <= i, j < floor(N/2)`.
pub fn degree_determinant(n_total: usize) -> BigInt {
    let n = (n_total / 2) as u64;
    let odd = n_total % 2 == 1;
    let rows: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let b = if odd { binomial(2 * i + 2 * j + 3, 2 * i + 1) } else { binomial(2 * i + 2 * j + 1, 2 * i) };
                    Q::from_integer(b)
                })
                .collect()
        })
        .collect();
    let d = determinant(&rows);
    assert!(d.is_integer());
    d.to_integer()
}

fn check_poles<F: Field>(a: &F, z: &[F]) -> Result<()> {
    for i in 0..z.len() {
        for j in 0..z.len() {
            if i == j {
                continue;
            }
            if z[i] == z[j] {
                return Err(CoreError::PoleHit(format!("z{} = z{}", i + 1, j + 1)));
            }
            if a.add(&z[i].minus(&z[j])).is_zero_elem() {
                return Err(CoreError::PoleHit(format!("A + z{} - z{} = 0", i + 1, j + 1)));
            }
        }
    }
    Ok(())
}

fn pow2<F: Field>(e: usize) -> F {
    (0..e).fold(F::from_int(1), |acc, _| acc.mul(&F::from_int(2)))
}

fn inv<F: Field>(x: &F) -> F {
    x.invert().expect("poles are checked first")
}

/// `(z_i - z_j) / ((A + z_i - z_j)(A + z_j - z_i))`.
fn pf_matrix<F: Field>(a: &F, z: &[F]) -> SkewMatrix<F> {
    SkewMatrix::from_upper(z.len(), F::from_int(0), |i, j| {
        let d = z[i - 1].minus(&z[j - 1]);
        let den = a.add(&d).mul(&a.minus(&d));
        d.mul(&inv(&den))
    })
}

/// `prod_{i<j} (A + z_i - z_j)(A + z_j - z_i) / (z_i - z_j)`.
fn vandermonde_ratio<F: Field>(a: &F, z: &[F]) -> F {
    let mut acc = F::from_int(1);
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            let d = z[i].minus(&z[j]);
            acc = acc.mul(&a.add(&d).mul(&a.minus(&d)).mul(&inv(&d)));
        }
    }
    acc
}

/// Sign relating the permutation-sum Pfaffian of odd size to the
/// multidegree: `(-1)^n` for `N = 2n + 1`, and `1` for even `N`.
pub fn odd_pfaffian_sign(n_total: usize) -> Q {
    sign_in(n_total)
}

fn sign_in<F: Field>(n_total: usize) -> F {
    F::from_int(if n_total % 2 == 1 && (n_total / 2) % 2 == 1 { -1 } else { 1 })
}

/// The Pfaffian closed form for the total multidegree of the loop scheme,
/// reading the denominators as `(A + z_i - z_j)(A + z_j - z_i)`, with
/// [`odd_pfaffian_sign`] applied.
pub fn total_mdeg_formula(p: &EvalPoint) -> Result<Q> {
    total_mdeg_at(&p.a, &p.z)
}

/// [`total_mdeg_formula`] over any field.
pub fn total_mdeg_at<F: Field>(a: &F, z: &[F]) -> Result<F> {
    check_poles(a, z)?;
    Ok(sign_in::<F>(z.len()).mul(&pfaffian(&pf_matrix(a, z))).mul(&vandermonde_ratio(a, z)))
}

/// Localization sum
/// `2^r prod_{i,j} (A + z_i - z_j) sum_{|S| = n} prod_{s in S, t notin S} ((A + z_s - z_t)(z_t - z_s))^-1`.
pub fn d1_mdeg_localization(p: &EvalPoint) -> Result<Q> {
    d1_localization_at(&p.a, &p.z)
}

/// [`d1_mdeg_localization`] over any field.
pub fn d1_localization_at<F: Field>(a: &F, z: &[F]) -> Result<F> {
    check_poles(a, z)?;
    let nt = z.len();
    let (n, r) = (nt / 2, nt % 2);
    let mut pre: F = pow2(r);
    for i in 0..nt {
        for j in 0..nt {
            pre = pre.mul(&a.add(&z[i].minus(&z[j])));
        }
    }
    let mut sum = F::from_int(0);
    for mask in 0u32..(1 << nt) {
        if mask.count_ones() as usize != n {
            continue;
        }
        let mut term = F::from_int(1);
        for s in (0..nt).filter(|&s| mask >> s & 1 == 1) {
            for t in (0..nt).filter(|&t| mask >> t & 1 == 0) {
                let d = z[s].minus(&z[t]);
                term = term.mul(&a.add(&d).mul(&d.neg()));
            }
        }
        sum = sum.add(&inv(&term));
    }
    Ok(pre.mul(&sum))
}

/// `2^{n+r} A^N prod_{i<j} (A - z_i + z_j)(A - z_j + z_i)/(z_i - z_j) Pf(...)`,
/// with [`odd_pfaffian_sign`] applied.
pub fn d1_mdeg_pfaffian_form(p: &EvalPoint) -> Result<Q> {
    d1_pfaffian_form_at(&p.a, &p.z)
}

pub fn d1_pfaffian_form_at<F: Field>(a: &F, z: &[F]) -> Result<F> {
    check_poles(a, z)?;
    let nt = z.len();
    let (n, r) = (nt / 2, nt % 2);
    let a_pow = (0..nt).fold(F::from_int(1), |acc, _| acc.mul(a));
    let pf = sign_in::<F>(nt).mul(&pfaffian(&pf_matrix(a, z)));
    Ok(pow2::<F>(n + r).mul(&a_pow).mul(&vandermonde_ratio(a, z)).mul(&pf))
}

/// The Pfaffian form without the odd-size sign correction.
pub fn d1_mdeg_pfaffian_form_unsigned(p: &EvalPoint) -> Result<Q> {
    Ok(odd_pfaffian_sign(p.nvars()) * d1_mdeg_pfaffian_form(p)?)
}

/// Checks `localization = 2^{n+r} A^N sum_pi mdeg E_pi` at each point.
pub fn d0_multiplicity_check(table: &MdegTable, points: &[EvalPoint]) -> Result<usize> {
    let nt = table.size();
    let (n, r) = (nt / 2, nt % 2);
    for p in points {
        let lhs = d1_mdeg_localization(p)?;
        let mut sum = Q::zero();
        for (_, f) in table.iter() {
            sum += f.evaluate(p)?;
        }
        let mut rhs = pow2::<Q>(n + r) * sum;
        for _ in 0..nt {
            rhs *= &p.a;
        }
        if lhs != rhs {
            return Err(violation(
                "D1 multiplicity",
                format!("N={nt}, point {p:?}: localization {lhs} vs {rhs}"),
            ));
        }
    }
    Ok(points.len())
}
