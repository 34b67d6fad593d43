//! Degrees of the commuting variety from chains of `theta_i = -2A ddiff_i - tau_i`.

use brauer_poly::MultiPoly;
use num_bigint::BigInt;

use crate::error::{violation, CoreError, Result};
use crate::linkpat::LinkPattern;
use crate::psitable::MdegTable;

#[derive(Clone, Debug)]
pub struct DeltaResult {
    pub n: usize,
    pub delta: MultiPoly,
    /// `delta` at `A = 1`, `z = 0`.
    pub degree: BigInt,
}

/// `prod_{i=1..n} (A + z_i)^{i-1} (A - z_i)^{n-i}`.
pub fn seed_polynomial(n: usize) -> MultiPoly {
    let mut acc = MultiPoly::one(n);
    for i in 1..=n {
        let plus = &MultiPoly::a(n) + &MultiPoly::z(n, i);
        let minus = &MultiPoly::a(n) - &MultiPoly::z(n, i);
        acc = &acc * &(&plus.pow(i as u32 - 1) * &minus.pow((n - i) as u32));
    }
    acc
}

fn theta_run(mut f: MultiPoly, indices: impl Iterator<Item = usize>) -> MultiPoly {
    for i in indices {
        f = f.theta(i);
    }
    f
}

/// `A^n theta_1 (theta_2 theta_1) ... (theta_{n-1} ... theta_1)` applied to
/// [`seed_polynomial`]. After the group ending in `theta_k` is applied, no
/// later operator touches `z_{k+1}`, which is then set to zero.
pub fn delta(n: usize) -> DeltaResult {
    assert!(n >= 1);
    let mut f = seed_polynomial(n);
    for k in (1..n).rev() {
        f = theta_run(f, 1..=k);
        f = f.at_z_zero(k + 1);
    }
    f = f.at_z_zero(1);
    finish(n, f)
}

/// The unspecialized chain `theta_1 theta_2 ... theta_{n-1} ... theta_1 theta_2 theta_1`,
/// times `A^n`.
pub fn delta_chain_alt(n: usize) -> MultiPoly {
    assert!(n >= 1);
    let mut f = seed_polynomial(n);
    for k in 1..n {
        f = theta_run(f, (1..=k).rev());
    }
    &f * &MultiPoly::a(n).pow(n as u32)
}

/// [`delta_chain_alt`] with every `z_k = 0`.
pub fn delta_alt_order(n: usize) -> DeltaResult {
    let mut f = delta_chain_alt(n);
    for k in 1..=n {
        f = f.at_z_zero(k);
    }
    DeltaResult { n, degree: f.constant_at_origin(), delta: f }
}

fn finish(n: usize, f: MultiPoly) -> DeltaResult {
    let delta = &f * &MultiPoly::a(n).pow(n as u32);
    DeltaResult { n, degree: delta.constant_at_origin(), delta }
}

pub fn degree_sequence(max_n: usize) -> Vec<BigInt> {
    (1..=max_n).map(|n| delta(n).degree).collect()
}

/// The reversal pattern `i <-> 2n + 1 - i`.
pub fn reversal_pattern(n: usize) -> LinkPattern {
    LinkPattern::new((1..=2 * n).map(|i| 2 * n + 1 - i).collect()).expect("reversal is a link pattern")
}

/// `prod_{i<j<=n} (A + z_i - z_j) prod_{n<i<j<=2n} (A + z_i - z_j)`, in `2n` variables.
pub fn sector_span_mdeg(n: usize) -> MultiPoly {
    let nt = 2 * n;
    let mut acc = MultiPoly::one(nt);
    for (lo, hi) in [(1, n), (n + 1, nt)] {
        for i in lo..=hi {
            for j in i + 1..=hi {
                acc = &acc * &MultiPoly::weight(nt, 1, i, j);
            }
        }
    }
    acc
}

/// `mdeg E_{pi_n} / Phi_n` where `Phi_n` is [`sector_span_mdeg`].
pub fn commuting_quotient(table: &MdegTable) -> Result<MultiPoly> {
    let nt = table.size();
    if !nt.is_multiple_of(2) {
        return Err(CoreError::InvalidInput(format!("table N = {nt} is odd")));
    }
    Ok(table.get(&reversal_pattern(nt / 2)).exact_divide(&sector_span_mdeg(nt / 2))?)
}

/// `Psi_{pi_n}(0)` against `delta(n).degree`. With `symbolic`, also that
/// `Phi_n` divides `mdeg E_{pi_n}`, that the quotient at `z_{n+1..2n} = 0`,
/// times `A^n`, equals the unspecialized operator chain, and that the
/// quotient with the halves identified is symmetric in `z_1..z_n`.
pub fn crosscheck_with_table(table: &MdegTable, result: &DeltaResult, symbolic: bool) -> Result<()> {
    let nt = table.size();
    if !nt.is_multiple_of(2) || nt / 2 != result.n {
        return Err(CoreError::InvalidInput(format!("table N = {nt} does not match n = {}", result.n)));
    }
    let n = result.n;
    let pi = reversal_pattern(n);
    let v = table.get(&pi).constant_at_origin();
    if v != result.degree {
        return Err(CoreError::Mismatch {
            pattern: pi.to_string(),
            expected: result.degree.to_string(),
            got: v.to_string(),
        });
    }
    if symbolic {
        let quotient = commuting_quotient(table)?;
        let mut restricted = quotient.clone();
        for k in n + 1..=nt {
            restricted = restricted.at_z_zero(k);
        }
        // z_{n+1..2n} no longer occur, so any target works for them
        let keep: Vec<usize> = (1..=nt).map(|k| k.min(n)).collect();
        let restricted = &restricted.remap_z(n, &keep) * &MultiPoly::a(n).pow(n as u32);
        if restricted != delta_chain_alt(n) {
            return Err(violation("commuting chain", format!("n = {n}: quotient differs from the operator chain")));
        }
        let identified = identify_halves(&quotient, n);
        for i in 1..n {
            if identified.tau(i) != identified {
                return Err(violation("commuting chain", format!("n = {n}: identified quotient not symmetric")));
            }
        }
        if identified.at_a_one().constant_at_origin() != result.degree {
            return Err(violation("commuting chain", format!("n = {n}: identified quotient has the wrong degree")));
        }
    }
    Ok(())
}

/// Renames `z_{2n+1-i}` to `z_i`; the second half of the strip runs backwards
/// relative to the first.
pub fn identify_halves(f: &MultiPoly, n: usize) -> MultiPoly {
    let map: Vec<usize> = (1..=2 * n).map(|k| if k <= n { k } else { 2 * n + 1 - k }).collect();
    f.remap_z(n, &map)
}
