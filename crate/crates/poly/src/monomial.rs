use std::fmt;

/// Number of z-variables a monomial can carry.
pub const MAX_Z_VARS: usize = 15;

const SLOTS: usize = MAX_Z_VARS + 1;

/// Dense exponent vector: slot 0 holds the exponent of `A`, slot `k` the
/// exponent of `z_k`.
///
/// The derived ordering is lexicographic with `A` most significant, which is
/// the term order used by [`crate::MultiPoly::exact_divide`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial([u8; SLOTS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; SLOTS]);

    pub fn from_exponents(a: u32, z: &[u32]) -> Monomial {
        assert!(z.len() <= MAX_Z_VARS, "too many z-variables");
        let mut m = Monomial::ONE;
        m.set_a(a);
        for (k, &e) in z.iter().enumerate() {
            m.set_z(k + 1, e);
        }
        m
    }

    #[inline]
    pub fn a(&self) -> u32 {
        self.0[0] as u32
    }

    /// Exponent of `z_k`, `k` 1-based.
    #[inline]
    pub fn z(&self, k: usize) -> u32 {
        self.0[k] as u32
    }

    #[inline]
    pub fn set_a(&mut self, e: u32) {
        self.0[0] = narrow(e);
    }

    #[inline]
    pub fn set_z(&mut self, k: usize, e: u32) {
        assert!((1..SLOTS).contains(&k), "z-variable index {k} out of range");
        self.0[k] = narrow(e);
    }

    pub fn z_exponents(&self, nvars: usize) -> Vec<u32> {
        (1..=nvars).map(|k| self.z(k)).collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn z_degree(&self) -> u32 {
        self.0[1..].iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (o, &e) in out.0.iter_mut().zip(other.0.iter()) {
            *o = narrow(*o as u32 + e as u32);
        }
        out
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = *self;
        for (o, &e) in out.0.iter_mut().zip(other.0.iter()) {
            *o = o.checked_sub(e)?;
        }
        Some(out)
    }

    #[inline]
    pub fn swap_z(&mut self, i: usize, j: usize) {
        self.0.swap(i, j);
    }

    /// Highest variable index with a nonzero exponent (0 when only `A` occurs).
    pub fn max_z_index(&self) -> usize {
        (1..SLOTS).rev().find(|&k| self.0[k] != 0).unwrap_or(0)
    }
}

#[inline]
fn narrow(e: u32) -> u8 {
    u8::try_from(e).expect("exponent overflow (> 255)")
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A^{}", self.a())?;
        for k in 1..=self.max_z_index() {
            write!(f, " z{}^{}", k, self.z(k))?;
        }
        Ok(())
    }
}
