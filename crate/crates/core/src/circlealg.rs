//! Square matrices with the cyclic-order product `P ∘ Q`, its inverse, and the
//! semidirect, periodic-strip and one-parameter models of that product.
//!
//! Matrix indices are 1-based throughout.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::linalg::Q;

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<String>>", into = "Vec<Vec<String>>")]
pub struct ExactMatrix {
    n: usize,
    data: Vec<Q>,
}

impl ExactMatrix {
    pub fn zero(n: usize) -> ExactMatrix {
        ExactMatrix { n, data: vec![Q::zero(); n * n] }
    }

    pub fn identity(n: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zero(n);
        for i in 1..=n {
            m[(i, i)] = Q::one();
        }
        m
    }

    /// The matrix unit `e^{ij}`.
    pub fn unit(n: usize, i: usize, j: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zero(n);
        m[(i, j)] = Q::one();
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Q) -> ExactMatrix {
        let mut data = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                data.push(f(i, j));
            }
        }
        ExactMatrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<ExactMatrix> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(CoreError::InvalidInput("matrix is not square".into()));
        }
        Ok(ExactMatrix { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<Q>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn diagonal(&self) -> Vec<Q> {
        (1..=self.n).map(|i| self[(i, i)].clone()).collect()
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (1..=self.n).all(|i| self[(i, i)].is_zero())
    }

    pub fn has_unit_diagonal(&self) -> bool {
        (1..=self.n).all(|i| self[(i, i)].is_one())
    }

    pub fn scaled(&self, c: &Q) -> ExactMatrix {
        ExactMatrix { n: self.n, data: self.data.iter().map(|x| x * c).collect() }
    }

    /// The ordinary matrix product.
    pub fn matmul(&self, other: &ExactMatrix) -> ExactMatrix {
        self.check_size(other);
        let n = self.n;
        let mut out = ExactMatrix::zero(n);
        for i in 1..=n {
            for j in 1..=n {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 1..=n {
                    let b = &other[(j, k)];
                    if !b.is_zero() {
                        out[(i, k)] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Upper triangle including the diagonal.
    pub fn upper(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.n, |i, j| if j >= i { self[(i, j)].clone() } else { Q::zero() })
    }

    /// Strict lower triangle.
    pub fn strict_lower(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.n, |i, j| if j < i { self[(i, j)].clone() } else { Q::zero() })
    }

    /// Inverse of an upper-triangular matrix by back substitution.
    pub fn upper_inverse(&self) -> Result<ExactMatrix> {
        let n = self.n;
        if let Some(i) = (1..=n).find(|&i| self[(i, i)].is_zero()) {
            return Err(CoreError::NotInvertible(i));
        }
        let mut inv = ExactMatrix::zero(n);
        for j in 1..=n {
            inv[(j, j)] = self[(j, j)].recip();
            for i in (1..j).rev() {
                let mut s = Q::zero();
                for k in i + 1..=j {
                    s += &self[(i, k)] * &inv[(k, j)];
                }
                inv[(i, j)] = -s / &self[(i, i)];
            }
        }
        Ok(inv)
    }

    fn check_size(&self, other: &ExactMatrix) {
        assert_eq!(self.n, other.n, "matrices of different sizes");
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[(i - 1) * self.n + (j - 1)]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[(i - 1) * self.n + (j - 1)]
    }
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, o: &ExactMatrix) -> ExactMatrix {
        self.check_size(o);
        ExactMatrix { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, o: &ExactMatrix) -> ExactMatrix {
        self.check_size(o);
        ExactMatrix { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        ExactMatrix { n: self.n, data: self.data.iter().map(|a| -a).collect() }
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, o: &ExactMatrix) -> ExactMatrix {
        self.matmul(o)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", Vec::<Vec<String>>::from(self.clone()))
    }
}

impl From<ExactMatrix> for Vec<Vec<String>> {
    fn from(m: ExactMatrix) -> Self {
        m.rows().into_iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
    }
}

impl TryFrom<Vec<Vec<String>>> for ExactMatrix {
    type Error = CoreError;
    fn try_from(rows: Vec<Vec<String>>) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| {
                        s.parse::<Q>()
                            .map_err(|_| CoreError::InvalidInput(format!("bad rational {s:?}")))
                    })
                    .collect::<Result<Vec<Q>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        ExactMatrix::from_rows(parsed)
    }
}

/// True iff some rotation of `seq` is weakly increasing; a sequence that starts
/// and ends with the same label must be constant.
pub fn cyc_ordered(seq: &[usize]) -> bool {
    let k = seq.len();
    if k <= 1 {
        return true;
    }
    if seq[0] == seq[k - 1] {
        return seq.iter().all(|&x| x == seq[0]);
    }
    let descents = (0..k).filter(|&p| seq[p] > seq[(p + 1) % k]).count();
    descents <= 1
}

/// `(P ∘ Q)_{ik} = sum over j with (i, j, k) cyclically ordered of P_ij Q_jk`.
pub fn cp_mul(p: &ExactMatrix, q: &ExactMatrix) -> ExactMatrix {
    p.check_size(q);
    let n = p.size();
    let mut out = ExactMatrix::zero(n);
    for i in 1..=n {
        for j in 1..=n {
            let a = &p[(i, j)];
            if a.is_zero() {
                continue;
            }
            for k in 1..=n {
                let b = &q[(j, k)];
                if !b.is_zero() && cyc_ordered(&[i, j, k]) {
                    out[(i, k)] += a * b;
                }
            }
        }
    }
    out
}

/// A matrix split as `(R, L)`: `R` upper triangular including the diagonal, `L`
/// a representative of the strict lower part. Only the strict lower triangle
/// of `L` is ever read.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semidirect {
    pub r: ExactMatrix,
    pub l: ExactMatrix,
}

pub fn to_semidirect(m: &ExactMatrix) -> Semidirect {
    Semidirect { r: m.upper(), l: m.strict_lower() }
}

pub fn from_semidirect(s: &Semidirect) -> ExactMatrix {
    &s.r.upper() + &s.l.strict_lower()
}

/// `(R, L)(V, M) = (RV, RM + LV)`.
pub fn semidirect_mul(x: &Semidirect, y: &Semidirect) -> Semidirect {
    let r = x.r.upper();
    let v = y.r.upper();
    let l = x.l.strict_lower();
    let m = y.l.strict_lower();
    Semidirect { r: r.matmul(&v), l: (&r.matmul(&m) + &l.matmul(&v)).strict_lower() }
}

/// The ∘-inverse through the semidirect model: `(R^-1, -R^-1 L R^-1)`.
pub fn cp_inv(p: &ExactMatrix) -> Result<ExactMatrix> {
    let s = to_semidirect(p);
    let r_inv = s.r.upper_inverse()?;
    let l = -&r_inv.matmul(&s.l).matmul(&r_inv);
    Ok(from_semidirect(&Semidirect { r: r_inv, l }))
}

/// `cycle(M)_{ij} = M_{i+1, j+1}`, indices mod `N`.
pub fn cycle(m: &ExactMatrix) -> ExactMatrix {
    let n = m.size();
    ExactMatrix::from_fn(n, |i, j| m[(i % n + 1, j % n + 1)].clone())
}

/// Finite window of the periodic strip `Φ(M)`: rows `first_row .. first_row + rows`
/// and, in each row `i`, the columns `i .. i + N - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripWindow {
    n: usize,
    first_row: i64,
    entries: Vec<Vec<Q>>,
}

/// Default window: rows `1..=3N`.
pub fn default_window(n: usize) -> std::ops::Range<i64> {
    1..3 * n as i64 + 1
}

pub fn strip_embed(m: &ExactMatrix, rows: std::ops::Range<i64>) -> Result<StripWindow> {
    let n = m.size();
    let count = (rows.end - rows.start).max(0) as usize;
    if count < n {
        return Err(CoreError::WindowTooSmall { rows: count, needed: n });
    }
    let entries = rows
        .clone()
        .map(|i| {
            (0..n as i64)
                .map(|d| {
                    let r = crate::linkpat::wrap(i, n);
                    let c = crate::linkpat::wrap(i + d, n);
                    m[(r, c)].clone()
                })
                .collect()
        })
        .collect();
    Ok(StripWindow { n, first_row: rows.start, entries })
}

impl StripWindow {
    pub fn width(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> std::ops::Range<i64> {
        self.first_row..self.first_row + self.entries.len() as i64
    }

    /// Entry at `(i, j)` of the infinite strip, if row `i` is in the window;
    /// positions outside the band `0 <= j - i < N` are zero.
    pub fn get(&self, i: i64, j: i64) -> Option<Q> {
        if !self.rows().contains(&i) {
            return None;
        }
        let d = j - i;
        if d < 0 || d >= self.n as i64 {
            return Some(Q::zero());
        }
        Some(self.entries[(i - self.first_row) as usize][d as usize].clone())
    }

    /// Product of two windows, truncated to the width-N band. Only rows whose
    /// whole band lies inside both windows are kept.
    pub fn truncated_mul(&self, other: &StripWindow) -> Result<StripWindow> {
        assert_eq!(self.n, other.n);
        let n = self.n as i64;
        let lo = self.first_row.max(other.first_row);
        let hi = self.rows().end.min(other.rows().end) - (n - 1);
        if hi <= lo {
            return Err(CoreError::WindowTooSmall {
                rows: self.entries.len().min(other.entries.len()),
                needed: self.n,
            });
        }
        let entries = (lo..hi)
            .map(|i| {
                (0..n)
                    .map(|d| {
                        let k = i + d;
                        let mut s = Q::zero();
                        for j in i..=k {
                            let a = self.get(i, j).unwrap();
                            if !a.is_zero() {
                                s += a * other.get(j, k).unwrap();
                            }
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        Ok(StripWindow { n: self.n, first_row: lo, entries })
    }

    /// Restriction to a sub-range of rows.
    pub fn restrict(&self, rows: std::ops::Range<i64>) -> StripWindow {
        assert!(rows.start >= self.first_row && rows.end <= self.rows().end);
        let a = (rows.start - self.first_row) as usize;
        let b = (rows.end - self.first_row) as usize;
        StripWindow { n: self.n, first_row: rows.start, entries: self.entries[a..b].to_vec() }
    }

    /// True if the window repeats with period `N` wherever both rows are present.
    pub fn is_periodic(&self) -> bool {
        let n = self.n;
        (n..self.entries.len()).all(|k| self.entries[k] == self.entries[k - n])
    }
}

/// `(s·M)_{ij} = s^{(j - i) mod N} M_{ij}`.
pub fn s_act(m: &ExactMatrix, s: &Q) -> ExactMatrix {
    let n = m.size();
    let powers = s_powers(s, n);
    ExactMatrix::from_fn(n, |i, j| &m[(i, j)] * &powers[(j + n - i) % n])
}

fn s_powers(s: &Q, n: usize) -> Vec<Q> {
    let mut p = vec![Q::one()];
    for k in 1..n {
        let next = &p[k - 1] * s;
        p.push(next);
    }
    p
}

/// `M ×_s Q = s^{-1}·((s·M)(s·Q))`; at `s = 0` this is the ∘ product.
pub fn s_mul(m: &ExactMatrix, q: &ExactMatrix, s: &Q) -> ExactMatrix {
    if s.is_zero() {
        return cp_mul(m, q);
    }
    s_act(&s_act(m, s).matmul(&s_act(q, s)), &s.recip())
}

/// The entries of `M ×_s Q` as polynomials in `s`: every summand carries
/// `s^0` or `s^N`, so the product is `C0 + s^N CN`.
pub fn s_mul_polynomial(m: &ExactMatrix, q: &ExactMatrix) -> (ExactMatrix, ExactMatrix) {
    let n = m.size();
    let mut c0 = ExactMatrix::zero(n);
    let mut cn = ExactMatrix::zero(n);
    for i in 1..=n {
        for k in 1..=n {
            for j in 1..=n {
                let e = (j + n - i) % n + (k + n - j) % n - (k + n - i) % n;
                let t = &m[(i, j)] * &q[(j, k)];
                if e == 0 {
                    c0[(i, k)] += t;
                } else {
                    debug_assert_eq!(e, n);
                    cn[(i, k)] += t;
                }
            }
        }
    }
    (c0, cn)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn cyclic_order_examples() {
        assert!(cyc_ordered(&[1, 2, 3]));
        assert!(!cyc_ordered(&[1, 3, 2]));
        assert!(cyc_ordered(&[2, 2, 1]));
        assert!(!cyc_ordered(&[1, 3, 1]));
        assert!(cyc_ordered(&[3, 1, 2]));
        assert!(cyc_ordered(&[2, 2, 2]));
    }

    #[test]
    fn product_examples() {
        let e = |i, j| ExactMatrix::unit(3, i, j);
        assert_eq!(cp_mul(&e(1, 2), &e(2, 3)), e(1, 3));
        assert!(cp_mul(&e(1, 3), &e(3, 2)).is_zero());
        assert_eq!(e(1, 3).matmul(&e(3, 2)), e(1, 2));
    }

    #[test]
    fn inverse_examples() {
        let i4 = ExactMatrix::identity(4);
        assert_eq!(cp_inv(&i4).unwrap(), i4);
        let r = ExactMatrix::from_fn(3, |i, j| if j >= i { q((i + 2 * j) as i64) } else { q(0) });
        assert_eq!(cp_inv(&r).unwrap(), r.upper_inverse().unwrap());
        assert_eq!(r.matmul(&r.upper_inverse().unwrap()), ExactMatrix::identity(3));
        let mut m = ExactMatrix::identity(3);
        m[(1, 1)] = q(0);
        assert!(matches!(cp_inv(&m), Err(CoreError::NotInvertible(1))));
    }

    #[test]
    fn semidirect_of_upper_triangular() {
        let r = ExactMatrix::from_fn(3, |i, j| if j >= i { q(1) } else { q(0) });
        let s = to_semidirect(&r);
        assert_eq!(s.r, r);
        assert!(s.l.is_zero());
    }

    #[test]
    fn strip_example() {
        let w = strip_embed(&ExactMatrix::unit(4, 3, 1), default_window(4)).unwrap();
        assert_eq!(w.get(3, 5), Some(q(1)));
        assert_eq!(w.get(7, 9), Some(q(1)));
        assert_eq!(w.get(3, 4), Some(q(0)));
        assert!(w.is_periodic());
        assert!(strip_embed(&ExactMatrix::unit(4, 3, 1), 1..3).is_err());
    }

    #[test]
    fn cycle_example() {
        let e = |i, j| ExactMatrix::unit(3, i, j);
        assert_eq!(cycle(&e(2, 3)), e(1, 2));
        assert_eq!(cycle(&e(1, 2)), e(3, 1));
    }

    #[test]
    fn matrix_serializes_as_rational_strings() {
        let mut m = ExactMatrix::zero(2);
        m[(1, 2)] = crate::linalg::qf(-3, 4);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[["0","-3/4"],["0","0"]]"#);
        assert_eq!(serde_json::from_str::<ExactMatrix>(&s).unwrap(), m);
    }
}
