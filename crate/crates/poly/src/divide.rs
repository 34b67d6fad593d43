use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::monomial::Monomial;
use crate::poly::{add_into, MultiPoly, TermMap};
use crate::{PolyError, Result};

impl MultiPoly {
    /// Returns `Q` with `self = Q * divisor`, or `InexactDivision` when no
    /// such `Q` exists in `Z[A, z]`.
    ///
    /// Runs the multivariate division algorithm in the A-major lexicographic
    /// order. When the divisor divides `self`, every leading term of the
    /// running remainder is divisible by the divisor's leading term, so the
    /// first failure of that test (or a non-integral coefficient quotient)
    /// proves the division is inexact.
    pub fn exact_divide(&self, divisor: &MultiPoly) -> Result<MultiPoly> {
        assert_eq!(self.nvars(), divisor.nvars(), "operands live in different rings");
        let (lead_m, lead_c) = divisor.leading_term().ok_or(PolyError::DivisionByZero)?;
        if self.is_zero() {
            return Ok(MultiPoly::zero(self.nvars()));
        }
        let tail: Vec<(Monomial, BigInt)> = divisor
            .terms()
            .filter(|(m, _)| **m != lead_m)
            .map(|(m, c)| (*m, c.clone()))
            .collect();

        let mut rem: BTreeMap<Monomial, BigInt> =
            self.terms().map(|(m, c)| (*m, c.clone())).collect();
        let mut quotient = TermMap::default();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.checked_div(&lead_m).ok_or(PolyError::InexactDivision)?;
            let (qc, r) = c.div_rem(&lead_c);
            if !r.is_zero() {
                return Err(PolyError::InexactDivision);
            }
            for (tm, tc) in &tail {
                let key = qm.mul(tm);
                let delta = -(&qc * tc);
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(delta);
                    }
                }
            }
            add_into(&mut quotient, qm, qc);
        }
        Ok(MultiPoly::from_map(self.nvars(), quotient))
    }
}
