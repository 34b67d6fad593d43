use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::monomial::{Monomial, MAX_Z_VARS};
use crate::poly::MultiPoly;
use crate::{PolyError, Result};

/// One serialized term: `[coefficient as decimal string, exponent of A, [exponents of z]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord(pub String, pub u32, pub Vec<u32>);

impl MultiPoly {
    /// Term records sorted by exponent vector (A first, then z_1, ..., z_N).
    pub fn to_records(&self) -> Vec<TermRecord> {
        self.sorted_terms()
            .into_iter()
            .map(|(m, c)| TermRecord(c.to_string(), m.a(), m.z_exponents(self.nvars())))
            .collect()
    }

    pub fn from_records(nvars: usize, records: &[TermRecord]) -> Result<MultiPoly> {
        if nvars > MAX_Z_VARS {
            return Err(PolyError::BadRecord(format!("{nvars} variables exceed the supported {MAX_Z_VARS}")));
        }
        let mut p = MultiPoly::zero(nvars);
        for TermRecord(coeff, a, z) in records {
            if z.len() != nvars {
                return Err(PolyError::BadRecord(format!(
                    "term has {} z-exponents, expected {nvars}",
                    z.len()
                )));
            }
            if *a > 255 || z.iter().any(|&e| e > 255) {
                return Err(PolyError::BadRecord("exponent exceeds 255".into()));
            }
            let c: BigInt = coeff
                .parse()
                .map_err(|_| PolyError::BadRecord(format!("bad coefficient {coeff:?}")))?;
            p.add_term(Monomial::from_exponents(*a, z), c);
        }
        Ok(p)
    }
}
