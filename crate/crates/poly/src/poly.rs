use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use crate::monomial::{Monomial, MAX_Z_VARS};
use crate::{PolyError, Result};

pub(crate) type TermMap = FxHashMap<Monomial, BigInt>;

/// Sparse polynomial in `A, z_1, ..., z_nvars` with integer coefficients.
///
/// No zero coefficient is ever stored, so two polynomials are equal exactly
/// when their term maps are equal.
#[derive(Clone)]
pub struct MultiPoly {
    nvars: usize,
    terms: TermMap,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> MultiPoly {
        assert!(nvars <= MAX_Z_VARS, "at most {MAX_Z_VARS} z-variables are supported");
        MultiPoly { nvars, terms: TermMap::default() }
    }

    pub fn one(nvars: usize) -> MultiPoly {
        MultiPoly::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> MultiPoly {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(Monomial::ONE, c.into());
        p
    }

    /// The variable `A`.
    pub fn a(nvars: usize) -> MultiPoly {
        MultiPoly::monomial(nvars, Monomial::from_exponents(1, &[]), BigInt::one())
    }

    /// The variable `z_k`, `k` 1-based.
    pub fn z(nvars: usize, k: usize) -> MultiPoly {
        assert!((1..=nvars).contains(&k), "z_{k} is not a variable of a {nvars}-variable ring");
        let mut m = Monomial::ONE;
        m.set_z(k, 1);
        MultiPoly::monomial(nvars, m, BigInt::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: impl Into<BigInt>) -> MultiPoly {
        debug_assert!(m.max_z_index() <= nvars);
        let mut p = MultiPoly::zero(nvars);
        p.add_term(m, c.into());
        p
    }

    /// `a_mult * A + z_i - z_j`, the torus weight of the matrix entry `(i, j)`
    /// scaled in its `A` part. Indices are 1-based; `i == j` gives `a_mult * A`.
    pub fn weight(nvars: usize, a_mult: i64, i: usize, j: usize) -> MultiPoly {
        let mut p = MultiPoly::a(nvars).scaled(&BigInt::from(a_mult));
        if i != j {
            p += &MultiPoly::z(nvars, i);
            p -= &MultiPoly::z(nvars, j);
        }
        p
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> MultiPoly
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut p = MultiPoly::zero(nvars);
        for (m, c) in terms {
            debug_assert!(m.max_z_index() <= nvars);
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn from_map(nvars: usize, mut terms: TermMap) -> MultiPoly {
        terms.retain(|_, c| !c.is_zero());
        MultiPoly { nvars, terms }
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[inline]
    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Terms in ascending monomial order (A-major lexicographic).
    pub fn sorted_terms(&self) -> Vec<(Monomial, BigInt)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_unstable_by_key(|x| x.0);
        v
    }

    /// Adds `c * m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        add_into(&mut self.terms, m, c);
    }

    pub fn scaled(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(m, x)| (*m, x * c)).collect();
        MultiPoly { nvars: self.nvars, terms }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Total degree of every term when they agree.
    pub fn homogeneous_degree(&self) -> Result<u32> {
        let mut it = self.terms.keys().map(Monomial::total_degree);
        let d = it.next().ok_or(PolyError::ZeroPolynomial)?;
        if it.all(|e| e == d) {
            Ok(d)
        } else {
            Err(PolyError::NotHomogeneous)
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Largest exponent of `z_k` over all terms.
    pub fn degree_in_z(&self, k: usize) -> u32 {
        self.terms.keys().map(|m| m.z(k)).max().unwrap_or(0)
    }

    /// Embeds into a ring with more z-variables.
    pub fn with_nvars(&self, nvars: usize) -> MultiPoly {
        assert!(nvars >= self.nvars, "cannot shrink the variable set with with_nvars");
        MultiPoly { nvars, terms: self.terms.clone() }
    }

    /// Renames `z_k` to `z_{map[k-1]}` in a ring with `nvars` variables.
    pub fn remap_z(&self, nvars: usize, map: &[usize]) -> MultiPoly {
        assert_eq!(map.len(), self.nvars, "one target per source variable");
        let mut out = MultiPoly::zero(nvars);
        for (m, c) in &self.terms {
            let mut t = Monomial::ONE;
            t.set_a(m.a());
            for (k, &target) in map.iter().enumerate() {
                let e = m.z(k + 1);
                if e > 0 {
                    assert!((1..=nvars).contains(&target));
                    t.set_z(target, t.z(target) + e);
                }
            }
            out.add_term(t, c.clone());
        }
        out
    }

    /// Sets `A = 1`.
    pub fn at_a_one(&self) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut t = *m;
            t.set_a(0);
            out.add_term(t, c.clone());
        }
        out
    }

    /// Sets `z_k = 0`.
    pub fn at_z_zero(&self, k: usize) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.z(k) == 0)
            .map(|(m, c)| (*m, c.clone()))
            .collect();
        MultiPoly { nvars: self.nvars, terms }
    }

    /// Replaces `z_k` by the polynomial `value` (same ring).
    pub fn substitute_z(&self, k: usize, value: &MultiPoly) -> MultiPoly {
        assert_eq!(value.nvars, self.nvars);
        let max_e = self.degree_in_z(k) as usize;
        let mut powers = Vec::with_capacity(max_e + 1);
        powers.push(MultiPoly::one(self.nvars));
        for e in 1..=max_e {
            let next = &powers[e - 1] * value;
            powers.push(next);
        }
        let mut acc = TermMap::default();
        for (m, c) in &self.terms {
            let e = m.z(k) as usize;
            let mut rest = *m;
            rest.set_z(k, 0);
            for (pm, pc) in powers[e].terms.iter() {
                add_into(&mut acc, rest.mul(pm), c * pc);
            }
        }
        MultiPoly::from_map(self.nvars, acc)
    }

    /// The value with `A = 1` and every `z_k = 0`.
    pub fn constant_at_origin(&self) -> BigInt {
        self.terms
            .iter()
            .filter(|(m, _)| m.z_degree() == 0)
            .map(|(_, c)| c.clone())
            .sum()
    }

    /// Content of the coefficients (gcd, non-negative).
    pub fn content(&self) -> BigInt {
        use num_integer::Integer;
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn leading_term(&self) -> Option<(Monomial, BigInt)> {
        self.terms.iter().max_by(|x, y| x.0.cmp(y.0)).map(|(m, c)| (*m, c.clone()))
    }

    fn check_same_ring(&self, other: &MultiPoly) {
        assert_eq!(
            self.nvars, other.nvars,
            "polynomials live in rings with different numbers of variables"
        );
    }
}

#[inline]
pub(crate) fn add_into(map: &mut TermMap, m: Monomial, c: BigInt) {
    use std::collections::hash_map::Entry;
    match map.entry(m) {
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        self.check_same_ring(rhs);
        for (m, c) in &rhs.terms {
            add_into(&mut self.terms, *m, c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        self.check_same_ring(rhs);
        for (m, c) in &rhs.terms {
            add_into(&mut self.terms, *m, -c);
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c)).collect();
        MultiPoly { nvars: self.nvars, terms }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.check_same_ring(rhs);
        // iterate the outer loop over the shorter operand
        let (small, large) = if self.nterms() <= rhs.nterms() { (self, rhs) } else { (rhs, self) };
        let mut acc = TermMap::default();
        acc.reserve(large.nterms() * small.nterms().min(4));
        for (sm, sc) in &small.terms {
            for (lm, lc) in &large.terms {
                add_into(&mut acc, sm.mul(lm), sc * lc);
            }
        }
        MultiPoly { nvars: self.nvars, terms: acc }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = self.sorted_terms();
        terms.reverse();
        for (idx, (m, c)) in terms.iter().enumerate() {
            let mut factors = Vec::new();
            match m.a() {
                0 => {}
                1 => factors.push("A".to_string()),
                e => factors.push(format!("A^{e}")),
            }
            for k in 1..=self.nvars {
                match m.z(k) {
                    0 => {}
                    1 => factors.push(format!("z{k}")),
                    e => factors.push(format!("z{k}^{e}")),
                }
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.nvars, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(k: usize) -> MultiPoly {
        MultiPoly::z(4, k)
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let p = &z(1) - &z(1);
        assert!(p.is_zero());
        assert_eq!(p.nterms(), 0);
        assert_eq!(p, MultiPoly::zero(4));
    }

    #[test]
    fn product_of_weights_expands() {
        // (A + z1 - z2)(A - z1 + z2) = A^2 - (z1 - z2)^2
        let p = &MultiPoly::weight(4, 1, 1, 2) * &MultiPoly::weight(4, 1, 2, 1);
        let d = &z(1) - &z(2);
        let expected = &MultiPoly::a(4).pow(2) - &d.pow(2);
        assert_eq!(p, expected);
    }

    #[test]
    fn homogeneous_degree_cases() {
        assert_eq!((&MultiPoly::a(4) + &z(1)).homogeneous_degree(), Ok(1));
        let inhom = &MultiPoly::a(4) + &z(1).pow(2);
        assert_eq!(inhom.homogeneous_degree(), Err(PolyError::NotHomogeneous));
        assert_eq!(MultiPoly::zero(4).homogeneous_degree(), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn substitution_and_remap() {
        // z2 := z1 + A in (A + z2 - z3)
        let p = MultiPoly::weight(4, 1, 2, 3);
        let s = p.substitute_z(2, &(&z(1) + &MultiPoly::a(4)));
        assert_eq!(s, &(&MultiPoly::a(4).scaled(&BigInt::from(2)) + &z(1)) - &z(3));
        // (z1, z2) of a 2-variable ring become (z3, z4) of a 4-variable ring
        let q = MultiPoly::weight(2, 1, 1, 2).remap_z(4, &[3, 4]);
        assert_eq!(q, MultiPoly::weight(4, 1, 3, 4));
    }

    #[test]
    fn display_is_readable() {
        let p = &(&MultiPoly::a(2).pow(2) - &MultiPoly::z(2, 1).scaled(&BigInt::from(3))) + &MultiPoly::one(2);
        assert_eq!(p.to_string(), "A^2 - 3*z1 + 1");
    }
}
