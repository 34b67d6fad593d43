//! Fields for evaluating identities: the rationals, and integers modulo the
//! prime `2^61 - 1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::linalg::Q;
use crate::pfdet::Ring;

pub trait Field: Ring + PartialEq + fmt::Debug {
    fn from_int(v: i64) -> Self;
    fn minus(&self, other: &Self) -> Self;
    /// `None` for zero.
    fn invert(&self) -> Option<Self>;
}

impl Field for Q {
    fn from_int(v: i64) -> Self {
        Q::from_integer(BigInt::from(v))
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn invert(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

pub const MODULUS: u64 = (1 << 61) - 1;

/// An element of `Z / (2^61 - 1)`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Fp(u64);

fn reduce(x: u128) -> u64 {
    let folded = (x & MODULUS as u128) as u64 + (x >> 61) as u64;
    let once = if folded >= MODULUS { folded - MODULUS } else { folded };
    if once >= MODULUS { once - MODULUS } else { once }
}

impl Fp {
    pub fn new(v: i64) -> Fp {
        let r = v.rem_euclid(MODULUS as i64);
        Fp(r as u64)
    }

    pub fn from_bigint(v: &BigInt) -> Fp {
        let r = v.mod_floor(&BigInt::from(MODULUS));
        Fp(r.to_u64().expect("reduced below the modulus"))
    }

    pub fn random(rng: &mut impl Rng) -> Fp {
        Fp(rng.gen_range(0..MODULUS))
    }

    pub fn value(self) -> u64 {
        self.0
    }

    /// The representative in `(-p/2, p/2]`.
    pub fn lift(self) -> i64 {
        if self.0 > MODULUS / 2 { self.0 as i64 - MODULUS as i64 } else { self.0 as i64 }
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let (mut base, mut acc) = (self, Fp(1));
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inverse(self) -> Option<Fp> {
        (!self.is_zero()).then(|| self.pow(MODULUS - 2))
    }
}

/// Replaces every entry by its inverse with a single exponentiation. Returns
/// false, leaving the slice untouched, if some entry is zero.
pub fn batch_invert(xs: &mut [Fp]) -> bool {
    let mut prefix = Vec::with_capacity(xs.len());
    let mut acc = Fp(1);
    for &x in xs.iter() {
        if x.is_zero() {
            return false;
        }
        prefix.push(acc);
        acc = acc * x;
    }
    let mut inv = acc.inverse().expect("product of nonzero elements");
    for k in (0..xs.len()).rev() {
        let x = xs[k];
        xs[k] = inv * prefix[k];
        inv = inv * x;
    }
    true
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, o: Fp) -> Fp {
        let s = self.0 + o.0;
        Fp(if s >= MODULUS { s - MODULUS } else { s })
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, o: Fp) -> Fp {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + MODULUS - o.0 })
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, o: Fp) -> Fp {
        Fp(reduce(self.0 as u128 * o.0 as u128))
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp(if self.0 == 0 { 0 } else { MODULUS - self.0 })
    }
}

impl Ring for Fp {
    fn zero_like(&self) -> Self {
        Fp(0)
    }
    fn one_like(&self) -> Self {
        Fp(1)
    }
    fn is_zero_elem(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, other: &Self) -> Self {
        *self + *other
    }
    fn mul(&self, other: &Self) -> Self {
        *self * *other
    }
    fn neg(&self) -> Self {
        -*self
    }
}

impl Field for Fp {
    fn from_int(v: i64) -> Self {
        Fp::new(v)
    }
    fn minus(&self, other: &Self) -> Self {
        *self - *other
    }
    fn invert(&self) -> Option<Self> {
        self.inverse()
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::points::seeded;

    #[test]
    fn arithmetic() {
        assert_eq!(Fp::new(-1) + Fp::new(1), Fp::new(0));
        assert_eq!(Fp::new(-1).lift(), -1);
        assert_eq!(Fp::new(MODULUS as i64 - 1) * Fp::new(MODULUS as i64 - 1), Fp::new(1));
        assert_eq!(Fp::from_bigint(&BigInt::from(-5)), Fp::new(-5));
        assert_eq!(Fp::from_bigint(&(BigInt::from(MODULUS) * 3 + 7)), Fp::new(7));
        assert_eq!(Fp::new(0).inverse(), None);
        let mut rng = seeded(4);
        for _ in 0..200 {
            let (a, b) = (Fp::random(&mut rng), Fp::random(&mut rng));
            let wide = (a.value() as u128 * b.value() as u128 % MODULUS as u128) as u64;
            assert_eq!((a * b).value(), wide);
            assert_eq!(a - b + b, a);
            if let Some(i) = a.inverse() {
                assert_eq!(a * i, Fp::new(1));
            }
        }
    }

    #[test]
    fn batch_inversion() {
        let mut xs: Vec<Fp> = (1..50).map(Fp::new).collect();
        let orig = xs.clone();
        assert!(batch_invert(&mut xs));
        for (x, y) in xs.iter().zip(&orig) {
            assert_eq!(*x * *y, Fp::new(1));
        }
        let mut with_zero = vec![Fp::new(3), Fp::new(0)];
        assert!(!batch_invert(&mut with_zero));
        assert_eq!(with_zero, vec![Fp::new(3), Fp::new(0)]);
    }
}
