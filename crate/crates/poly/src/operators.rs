use num_bigint::BigInt;

use crate::monomial::Monomial;
use crate::poly::{add_into, MultiPoly, TermMap};

impl MultiPoly {
    /// The cyclic successor of the variable index `i` (so `N` is followed by `1`).
    pub fn cyclic_next(&self, i: usize) -> usize {
        assert!((1..=self.nvars()).contains(&i), "index {i} outside 1..={}", self.nvars());
        i % self.nvars() + 1
    }

    /// `tau_i`: swaps `z_i` and `z_{i+1}` (with `z_{N+1} = z_1`).
    pub fn tau(&self, i: usize) -> MultiPoly {
        let j = self.cyclic_next(i);
        let terms = self
            .terms()
            .map(|(m, c)| {
                let mut t = *m;
                t.swap_z(i, j);
                (t, c.clone())
            })
            .collect();
        MultiPoly::from_map(self.nvars(), terms)
    }

    /// Divided difference `(F - tau_i F) / (z_i - z_{i+1})`.
    ///
    /// Computed term by term: `z_i^a z_j^b` with `a > b` maps to
    /// `z_i^b z_j^b (z_i^{a-b-1} + z_i^{a-b-2} z_j + ... + z_j^{a-b-1})`, and the
    /// case `a < b` is the negated mirror image. The quotient is exact.
    pub fn ddiff(&self, i: usize) -> MultiPoly {
        let j = self.cyclic_next(i);
        let mut acc = TermMap::default();
        for (m, c) in self.terms() {
            ddiff_term(&mut acc, m, c, i, j);
        }
        MultiPoly::from_map(self.nvars(), acc)
    }

    /// `theta_i = -2A ddiff_i - tau_i`.
    pub fn theta(&self, i: usize) -> MultiPoly {
        let j = self.cyclic_next(i);
        let mut acc = TermMap::default();
        let minus_two = BigInt::from(-2);
        let mut d = TermMap::default();
        for (m, c) in self.terms() {
            d.clear();
            ddiff_term(&mut d, m, c, i, j);
            for (dm, dc) in d.drain() {
                let mut t = dm;
                t.set_a(t.a() + 1);
                add_into(&mut acc, t, dc * &minus_two);
            }
            let mut t = *m;
            t.swap_z(i, j);
            add_into(&mut acc, t, -c);
        }
        MultiPoly::from_map(self.nvars(), acc)
    }
}

fn ddiff_term(acc: &mut TermMap, m: &Monomial, c: &BigInt, i: usize, j: usize) {
    let (a, b) = (m.z(i), m.z(j));
    if a == b {
        return;
    }
    let (hi, lo, hi_var, lo_var, coeff) = if a > b {
        (a, b, i, j, c.clone())
    } else {
        (b, a, j, i, -c)
    };
    // z_hi^{hi} z_lo^{lo} - z_hi^{lo} z_lo^{hi}, over (z_hi - z_lo), up to sign
    let span = hi - lo;
    for k in 0..span {
        let mut t = *m;
        t.set_z(hi_var, lo + span - 1 - k);
        t.set_z(lo_var, lo + k);
        add_into(acc, t, coeff.clone());
    }
}
