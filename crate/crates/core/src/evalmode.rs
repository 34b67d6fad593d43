//! Multidegree tables in evaluation mode, for sizes where the polynomials are
//! too large to expand.
//!
//! Every `mdeg E_pi` is known through its values at the points obtained from
//! one point `(A, v)` by permuting the `z` coordinates. That set is closed
//! under the swaps `z_i <-> z_{i+1}`, so the divided differences in the
//! recursion can be evaluated inside it. Arithmetic is modulo `2^61 - 1`.

use std::collections::VecDeque;

use num_bigint::BigInt;
use rand::Rng;
use rustc_hash::FxHashMap;

use crate::error::{violation, CoreError, Result};
use crate::field::{batch_invert, Fp};
use crate::linkpat::{cyc_next, enumerate, maximal_pattern, LinkPattern};
use crate::loopchain::StationarySolution;
use crate::pfdet::{d1_localization_at, degree_determinant, total_mdeg_at};
use crate::psitable::{base_factors, expected_degree, ChainEdge, EdgeOrder};

/// All permutations of `N` coordinates, with the moves between them.
#[derive(Clone, Debug)]
pub struct Orbit {
    n: usize,
    /// Point `k` has `z_m = v[perms[k][m - 1]]`; point 0 is `v` itself.
    perms: Vec<Vec<u8>>,
    /// `swap[i - 1][k]`: point `k` with `z_i` and `z_{i+1}` exchanged.
    swap: Vec<Vec<u32>>,
    /// `shift[k]`: point `k` with coordinates `(z_2, ..., z_N, z_1)`.
    shift: Vec<u32>,
}

fn next_permutation(p: &mut [u8]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("a larger element exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

impl Orbit {
    pub fn new(n: usize) -> Orbit {
        assert!((2..=9).contains(&n), "orbit size N = {n} out of range");
        let mut perms = Vec::new();
        let mut p: Vec<u8> = (0..n as u8).collect();
        loop {
            perms.push(p.clone());
            if !next_permutation(&mut p) {
                break;
            }
        }
        let index: FxHashMap<Vec<u8>, u32> = perms.iter().enumerate().map(|(k, p)| (p.clone(), k as u32)).collect();
        let swap = (1..=n)
            .map(|i| {
                let j = cyc_next(i, n);
                perms
                    .iter()
                    .map(|p| {
                        let mut q = p.clone();
                        q.swap(i - 1, j - 1);
                        index[&q]
                    })
                    .collect()
            })
            .collect();
        let shift = perms
            .iter()
            .map(|p| {
                let mut q = p.clone();
                q.rotate_left(1);
                index[&q]
            })
            .collect();
        Orbit { n, perms, swap, shift }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn coords(&self, v: &[Fp], k: usize) -> Vec<Fp> {
        self.perms[k].iter().map(|&m| v[m as usize]).collect()
    }

    pub fn swapped(&self, i: usize, k: usize) -> usize {
        self.swap[i - 1][k] as usize
    }

    pub fn shifted(&self, k: usize) -> usize {
        self.shift[k] as usize
    }
}

/// The values of every `mdeg E_pi` on an [`Orbit`].
#[derive(Clone, Debug)]
pub struct OrbitTable {
    n: usize,
    a: Fp,
    v: Vec<Fp>,
    patterns: Vec<LinkPattern>,
    values: Vec<Vec<Fp>>,
    chain: Vec<Option<ChainEdge>>,
    index: FxHashMap<LinkPattern, usize>,
}

impl OrbitTable {
    /// Runs the recursion from the maximal pattern on the orbit of `(a, v)`,
    /// with the same consistency check as the symbolic table.
    pub fn compute(orbit: &Orbit, a: Fp, v: &[Fp], order: EdgeOrder) -> Result<OrbitTable> {
        let n = orbit.n;
        assert_eq!(v.len(), n);
        let len = orbit.len();
        let x = |k: usize, m: usize| v[orbit.perms[k][m - 1] as usize];

        // 1 / (z_i - z_{i+1}) and 1 / (A + z_{i+1} - z_i) at every point
        let mut inv_diff = Vec::with_capacity(n);
        let mut inv_weight = Vec::with_capacity(n);
        for i in 1..=n {
            let j = cyc_next(i, n);
            let mut d: Vec<Fp> = (0..len).map(|k| x(k, i) - x(k, j)).collect();
            let mut w: Vec<Fp> = (0..len).map(|k| a + x(k, j) - x(k, i)).collect();
            if !batch_invert(&mut d) || !batch_invert(&mut w) {
                return Err(CoreError::PoleHit(format!("orbit point degenerate at i = {i}")));
            }
            inv_diff.push(d);
            inv_weight.push(w);
        }

        let patterns = enumerate(n);
        let index: FxHashMap<LinkPattern, usize> =
            patterns.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect();
        let mut values: Vec<Option<Vec<Fp>>> = vec![None; patterns.len()];
        let mut chain = vec![None; patterns.len()];

        let factors = base_factors(n);
        let base: Vec<Fp> = (0..len)
            .map(|k| factors.iter().fold(Fp::new(1), |acc, &(i, j)| acc * (a + x(k, i) - x(k, j))))
            .collect();
        let pi0 = maximal_pattern(n);
        values[index[&pi0]] = Some(base);
        let indices: Vec<usize> = match order {
            EdgeOrder::Ascending => (1..=n).collect(),
            EdgeOrder::Descending => (1..=n).rev().collect(),
        };
        let two_a = a + a;
        let mut queue = VecDeque::from([pi0]);
        while let Some(rho) = queue.pop_front() {
            let f = values[index[&rho]].clone().expect("queued patterns have values");
            for &i in &indices {
                if rho.has_small_chord(i) {
                    continue;
                }
                let j = cyc_next(i, n);
                let out: Vec<Fp> = (0..len)
                    .map(|k| {
                        let s = orbit.swapped(i, k);
                        let (xi, xj) = (x(k, i), x(k, j));
                        let h = ((a + xj - xi) * f[k] - (a + xi - xj) * f[s]) * inv_diff[i - 1][k];
                        let q = h * inv_weight[i - 1][k];
                        -((two_a + xj - xi) * q) - f[k]
                    })
                    .collect();
                let sigma = rho.apply_f(i);
                let t = index[&sigma];
                match &values[t] {
                    Some(existing) if *existing != out => {
                        return Err(CoreError::ChainInconsistency { pattern: sigma.to_string() });
                    }
                    Some(_) => {}
                    None => {
                        values[t] = Some(out);
                        chain[t] = Some(ChainEdge { parent: rho.clone(), i });
                        queue.push_back(sigma);
                    }
                }
            }
        }
        let values = values
            .into_iter()
            .zip(&patterns)
            .map(|(e, p)| e.ok_or_else(|| violation("reachability", format!("{p} never reached"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(OrbitTable { n, a, v: v.to_vec(), patterns, values, chain, index })
    }

    /// [`OrbitTable::compute`] at a random point, retrying on degenerate ones.
    pub fn random(orbit: &Orbit, a: Fp, rng: &mut impl Rng) -> Result<OrbitTable> {
        retry(|| {
            let v: Vec<Fp> = (0..orbit.n).map(|_| Fp::random(rng)).collect();
            OrbitTable::compute(orbit, a, &v, EdgeOrder::Ascending)
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> Fp {
        self.a
    }

    pub fn point(&self) -> &[Fp] {
        &self.v
    }

    pub fn patterns(&self) -> &[LinkPattern] {
        &self.patterns
    }

    pub fn values(&self, p: &LinkPattern) -> &[Fp] {
        &self.values[self.index[p]]
    }

    /// The value at `(A, v)` itself.
    pub fn at_base(&self, p: &LinkPattern) -> Fp {
        self.values(p)[0]
    }

    pub fn chain_edge(&self, p: &LinkPattern) -> Option<&ChainEdge> {
        self.chain[self.index[p]].as_ref()
    }
}

fn retry<T>(mut attempt: impl FnMut() -> Result<T>) -> Result<T> {
    let mut last = None;
    for _ in 0..8 {
        match attempt() {
            Err(CoreError::PoleHit(w)) => last = Some(w),
            other => return other,
        }
    }
    Err(CoreError::PoleHit(last.unwrap_or_default()))
}

/// `Psi_pi(0)` for every pattern, with the recursion edges used.
#[derive(Clone, Debug)]
pub struct ValueTable {
    pub n: usize,
    pub patterns: Vec<LinkPattern>,
    pub chain: Vec<Option<ChainEdge>>,
    pub values: Vec<BigInt>,
}

impl ValueTable {
    pub fn total_degree(&self) -> BigInt {
        self.values.iter().sum()
    }

    pub fn get(&self, p: &LinkPattern) -> Option<&BigInt> {
        self.patterns.iter().position(|q| q == p).map(|k| &self.values[k])
    }
}

/// `Psi_pi(0)` is the coefficient of `A^d` in `mdeg E_pi(A, v)`, a
/// polynomial of degree `d` in `A` for fixed `v`. It is read off by
/// interpolation through `d + 2` values of `A`; the extra node checks that
/// the `A^{d+1}` coefficient vanishes.
pub fn origin_values(n: usize, rng: &mut impl Rng) -> Result<ValueTable> {
    let orbit = Orbit::new(n);
    let d = expected_degree(n) as usize;
    let nodes: Vec<Fp> = (1..=d as i64 + 2).map(Fp::new).collect();
    let tables: Vec<OrbitTable> = retry(|| {
        let v: Vec<Fp> = (0..n).map(|_| Fp::random(rng)).collect();
        nodes.iter().map(|&a| OrbitTable::compute(&orbit, a, &v, EdgeOrder::Ascending)).collect()
    })?;
    let first = &tables[0];
    let mut values = Vec::with_capacity(first.patterns.len());
    for p in &first.patterns {
        let ys: Vec<Fp> = tables.iter().map(|t| t.at_base(p)).collect();
        if !leading_coefficient(&nodes, &ys).is_zero() {
            return Err(violation("homogeneity", format!("{p}: degree in A exceeds {d}")));
        }
        let c = leading_coefficient(&nodes[..=d], &ys[..=d]);
        values.push(BigInt::from(c.lift()));
    }
    Ok(ValueTable { n, patterns: first.patterns.clone(), chain: first.chain.clone(), values })
}

/// Coefficient of `x^{k-1}` in the polynomial through `k` points.
fn leading_coefficient(xs: &[Fp], ys: &[Fp]) -> Fp {
    let mut acc = Fp::new(0);
    for (k, (&xk, &yk)) in xs.iter().zip(ys).enumerate() {
        let den = xs.iter().enumerate().filter(|&(l, _)| l != k).fold(Fp::new(1), |acc, (_, &xl)| acc * (xk - xl));
        acc = acc + yk * den.inverse().expect("distinct nodes");
    }
    acc
}

/// `Psi_{pi0}(0) = 1`, every `Psi_pi(0)` positive, and the sum equal to the
/// degree determinant.
pub fn check_values(table: &ValueTable) -> Result<()> {
    let pi0 = maximal_pattern(table.n);
    if table.get(&pi0) != Some(&BigInt::from(1)) {
        return Err(violation("normalization", "Psi at the maximal pattern is not 1 at the origin"));
    }
    if let Some((p, v)) = table.patterns.iter().zip(&table.values).find(|(_, v)| **v < BigInt::from(1)) {
        return Err(violation("normalization", format!("Psi_{p}(0) = {v}")));
    }
    let det = degree_determinant(table.n);
    if table.total_degree() != det {
        return Err(violation("total degree", format!("table sum {}, determinant {det}", table.total_degree())));
    }
    Ok(())
}

/// `normalized(pi) = Psi_pi(0)` for every pattern.
pub fn match_values(table: &ValueTable, sol: &StationarySolution) -> Result<()> {
    if table.n != sol.n {
        return Err(CoreError::InvalidInput(format!("table N={} vs chain N={}", table.n, sol.n)));
    }
    for (p, d) in sol.patterns.iter().zip(&sol.normalized) {
        let v = table.get(p).ok_or_else(|| CoreError::InvalidInput(format!("{p} missing")))?;
        if v != d {
            return Err(CoreError::Mismatch { pattern: p.to_string(), expected: d.to_string(), got: v.to_string() });
        }
    }
    Ok(())
}

/// The exchange relations at `A = 1`, cleared of denominators, at every
/// point of the orbit.
pub fn exchange_on_orbit(table: &OrbitTable, orbit: &Orbit) -> Result<usize> {
    if table.a != Fp::new(1) {
        return Err(CoreError::InvalidInput("the exchange relations need A = 1".into()));
    }
    let n = table.n;
    let mut count = 0;
    for i in 1..=n {
        let j = cyc_next(i, n);
        for target in &table.patterns {
            let preimages: Vec<&[Fp]> =
                table.patterns.iter().filter(|rho| rho.apply_e(i) == *target).map(|rho| table.values(rho)).collect();
            let own = table.values(target);
            let flipped = table.values(&target.apply_f(i));
            for k in 0..orbit.len() {
                let u = table.v[orbit.perms[k][i - 1] as usize] - table.v[orbit.perms[k][j - 1] as usize];
                let (one, two) = (Fp::new(1), Fp::new(2));
                let e_sum = preimages.iter().fold(Fp::new(0), |acc, vals| acc + vals[k]);
                let lhs = two * (one - u) * own[k] + u * (one - u) * flipped[k] + two * u * e_sum;
                let rhs = (two - u) * (one + u) * own[orbit.swapped(i, k)];
                if lhs != rhs {
                    return Err(violation("exchange relation", format!("i = {i}, component {target}, orbit point {k}")));
                }
            }
            count += 1;
        }
    }
    Ok(count)
}

/// `mdeg E_{rot pi}(z_1, ..., z_N) = mdeg E_pi(z_2, ..., z_N, z_1)` at every
/// point of the orbit.
pub fn rotation_on_orbit(table: &OrbitTable, orbit: &Orbit) -> Result<()> {
    for p in &table.patterns {
        let (here, rotated) = (table.values(p), table.values(&p.rotate()));
        if (0..orbit.len()).any(|k| rotated[k] != here[orbit.shifted(k)]) {
            return Err(violation("rotation covariance", p.to_string()));
        }
    }
    Ok(())
}

/// Both tables agree everywhere.
pub fn same_values(a: &OrbitTable, b: &OrbitTable) -> Result<()> {
    match a.patterns.iter().find(|p| a.values(p) != b.values(p)) {
        Some(p) => Err(violation("chain independence", format!("{p} differs"))),
        None => Ok(()),
    }
}

/// Scaling `(A, v)` by `lambda` scales every value by `lambda^d`.
pub fn homogeneity_on_orbit(table: &OrbitTable, orbit: &Orbit, lambda: Fp) -> Result<()> {
    let v: Vec<Fp> = table.v.iter().map(|&x| x * lambda).collect();
    let scaled = OrbitTable::compute(orbit, table.a * lambda, &v, EdgeOrder::Ascending)?;
    let factor = lambda.pow(expected_degree(table.n) as u64);
    for p in &table.patterns {
        if table.values(p).iter().zip(scaled.values(p)).any(|(&x, &y)| x * factor != y) {
            return Err(violation("homogeneity", format!("{p} does not scale with degree {}", expected_degree(table.n))));
        }
    }
    Ok(())
}

/// Sum of the entries at the base point against the Pfaffian formula.
pub fn total_on_orbit(table: &OrbitTable) -> Result<()> {
    let sum = table.patterns.iter().fold(Fp::new(0), |acc, p| acc + table.at_base(p));
    let rhs = total_mdeg_at(&table.a, &table.v)?;
    if sum != rhs {
        return Err(violation("total multidegree", format!("N={}, point {:?}", table.n, table.v)));
    }
    Ok(())
}

/// `localization = 2^{n+r} A^N sum_pi mdeg E_pi` at the base point.
pub fn d0_multiplicity_on_orbit(table: &OrbitTable) -> Result<()> {
    let nt = table.n;
    let lhs = d1_localization_at(&table.a, &table.v)?;
    let sum = table.patterns.iter().fold(Fp::new(0), |acc, p| acc + table.at_base(p));
    let rhs = Fp::new(2).pow((nt / 2 + nt % 2) as u64) * table.a.pow(nt as u64) * sum;
    if lhs != rhs {
        return Err(violation("D1 multiplicity", format!("N={nt}, point {:?}", table.v)));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::points::seeded;
    use crate::psitable::compute_table;
    use brauer_poly::MultiPoly;

    fn eval_mod(f: &MultiPoly, a: Fp, z: &[Fp]) -> Fp {
        f.terms().fold(Fp::new(0), |acc, (m, c)| {
            let mono = (0..z.len()).fold(a.pow(m.a() as u64), |t, k| t * z[k].pow(m.z(k + 1) as u64));
            acc + Fp::from_bigint(c) * mono
        })
    }

    #[test]
    fn orbit_moves() {
        let o = Orbit::new(4);
        assert_eq!(o.len(), 24);
        assert_eq!(o.perms[0], vec![0, 1, 2, 3]);
        for i in 1..=4 {
            for k in 0..o.len() {
                assert_eq!(o.swapped(i, o.swapped(i, k)), k);
            }
        }
        let v: Vec<Fp> = (10..14).map(Fp::new).collect();
        assert_eq!(o.coords(&v, o.shifted(0)), vec![v[1], v[2], v[3], v[0]]);
        assert_eq!(o.coords(&v, o.swapped(4, 0)), vec![v[3], v[1], v[2], v[0]]);
    }

    #[test]
    fn agrees_with_the_symbolic_table() {
        let mut rng = seeded(6);
        for n in 2..=5 {
            let t = compute_table(n).unwrap();
            let orbit = Orbit::new(n);
            let a = Fp::random(&mut rng);
            let ot = OrbitTable::random(&orbit, a, &mut rng).unwrap();
            for p in t.patterns() {
                for k in [0, orbit.len() / 2, orbit.len() - 1] {
                    let z = orbit.coords(ot.point(), k);
                    assert_eq!(ot.values(p)[k], eval_mod(t.get(p), a, &z), "N={n}, {p}");
                }
            }
        }
    }

    #[test]
    fn origin_values_match_small_tables() {
        let mut rng = seeded(8);
        for n in 2..=6 {
            let t = compute_table(n).unwrap();
            let vt = origin_values(n, &mut rng).unwrap();
            assert_eq!(vt.values, t.values_at_origin(), "N={n}");
            check_values(&vt).unwrap();
        }
    }

    #[test]
    fn mutations_are_caught() {
        let mut rng = seeded(9);
        let orbit = Orbit::new(4);
        let mut t = OrbitTable::random(&orbit, Fp::new(1), &mut rng).unwrap();
        exchange_on_orbit(&t, &orbit).unwrap();
        rotation_on_orbit(&t, &orbit).unwrap();
        total_on_orbit(&t).unwrap();
        t.values[1][3] = t.values[1][3] + Fp::new(1);
        assert!(exchange_on_orbit(&t, &orbit).is_err());
        assert!(rotation_on_orbit(&t, &orbit).is_err());
        let mut vt = origin_values(4, &mut rng).unwrap();
        vt.values[0] += 1;
        assert!(check_values(&vt).is_err());
    }
}
