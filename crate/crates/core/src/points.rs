//! Seeded random rationals for identity testing by evaluation.

use brauer_poly::EvalPoint;
use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::Q;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p / q` with `|p| <= num_max` and `1 <= q <= den_max`.
pub fn random_rational(rng: &mut impl Rng, num_max: i64, den_max: i64) -> Q {
    Q::new(BigInt::from(rng.gen_range(-num_max..=num_max)), BigInt::from(rng.gen_range(1..=den_max)))
}

/// A point with nonzero `A` and pairwise distinct `z`s, none of the weights
/// `A + z_i - z_j` or `2A + z_i - z_j` vanishing.
pub fn generic_point(rng: &mut impl Rng, nvars: usize) -> EvalPoint {
    loop {
        let a = random_rational(rng, 40, 9);
        let z: Vec<Q> = (0..nvars).map(|_| random_rational(rng, 40, 9)).collect();
        if is_generic(&a, &z) {
            return EvalPoint::new(a, z);
        }
    }
}

fn is_generic(a: &Q, z: &[Q]) -> bool {
    use num_traits::Zero;
    if a.is_zero() {
        return false;
    }
    let two_a = a + a;
    for (i, zi) in z.iter().enumerate() {
        for (j, zj) in z.iter().enumerate() {
            if i == j {
                continue;
            }
            let d = zi - zj;
            if d.is_zero() || (a + &d).is_zero() || (&two_a + &d).is_zero() {
                return false;
            }
        }
    }
    true
}
