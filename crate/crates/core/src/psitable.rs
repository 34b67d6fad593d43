//! Multidegrees `mdeg E_pi` of the loop-scheme components, built from the
//! maximally crossing pattern by the divided-difference recursion, and the
//! identities they satisfy.

use std::collections::VecDeque;

use brauer_poly::{EvalPoint, MultiPoly};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rustc_hash::FxHashMap;

use crate::error::{violation, CoreError, Result};
use crate::linalg::Q;
use crate::linkpat::{cyc_next, enumerate, maximal_pattern, LinkPattern};
use crate::pfdet::{degree_determinant, total_mdeg_formula};

/// The parent pattern and index `i` whose recursion step produced an entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainEdge {
    pub parent: LinkPattern,
    pub i: usize,
}

#[derive(Clone, Debug)]
pub struct MdegTable {
    n: usize,
    patterns: Vec<LinkPattern>,
    entries: Vec<MultiPoly>,
    chain: Vec<Option<ChainEdge>>,
    index: FxHashMap<LinkPattern, usize>,
}

/// Order in which the recursion edges `(rho, i)` are explored.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeOrder {
    Ascending,
    Descending,
}

/// `ceil(N^2 / 2) - N`.
pub fn expected_degree(n: usize) -> u32 {
    (n * n).div_ceil(2) as u32 - n as u32
}

/// The pairs `(i, j)` of the linear factors `A + z_i - z_j` of [`base_mdeg`].
pub fn base_factors(n_total: usize) -> Vec<(usize, usize)> {
    assert!(n_total >= 2);
    let n = n_total / 2;
    let mut out = Vec::new();
    for i in 1..=n_total {
        for k in 1..n {
            out.push((i, (i - 1 + k) % n_total + 1));
        }
    }
    if n_total % 2 == 1 {
        for i in n + 1..=n_total {
            out.push((i, (i - 1 + n) % n_total + 1));
        }
    }
    out
}

/// `prod_{i=1..N} prod_{j = i+1..i+n-1 (mod N)} (A + z_i - z_j)`, times
/// `prod_{i=n+1..N} (A + z_i - z_{i+n})` when `N` is odd.
pub fn base_mdeg(n_total: usize) -> MultiPoly {
    base_factors(n_total)
        .into_iter()
        .fold(MultiPoly::one(n_total), |acc, (i, j)| &acc * &MultiPoly::weight(n_total, 1, i, j))
}

/// From `mdeg E_rho`, the multidegree of `f_i · rho`:
/// `-(2A + z_{i+1} - z_i) q - mdeg E_rho`, where
/// `q = ddiff_i((A + z_{i+1} - z_i) mdeg E_rho) / (A + z_{i+1} - z_i)`.
pub fn recursion_step(mdeg: &MultiPoly, rho: &LinkPattern, i: usize) -> Result<MultiPoly> {
    let nt = rho.size();
    if rho.has_small_chord(i) {
        return Err(CoreError::ChordPresent { pattern: rho.to_string(), i });
    }
    let j = cyc_next(i, nt);
    let w = MultiPoly::weight(nt, 1, j, i);
    let h = (&w * mdeg).ddiff(i);
    let q = h.exact_divide(&w)?;
    Ok(-(&(&MultiPoly::weight(nt, 2, j, i) * &q) + mdeg))
}

pub fn compute_table(n: usize) -> Result<MdegTable> {
    compute_table_ordered(n, EdgeOrder::Ascending)
}

/// Breadth-first search from the maximally crossing pattern over every valid
/// edge; a pattern reached twice must receive the same polynomial.
pub fn compute_table_ordered(n: usize, order: EdgeOrder) -> Result<MdegTable> {
    assert!(n >= 2);
    let patterns = enumerate(n);
    let index: FxHashMap<LinkPattern, usize> =
        patterns.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect();
    let mut entries: Vec<Option<MultiPoly>> = vec![None; patterns.len()];
    let mut chain = vec![None; patterns.len()];
    let degree = expected_degree(n);

    let pi0 = maximal_pattern(n);
    entries[index[&pi0]] = Some(base_mdeg(n));
    let mut queue = VecDeque::from([pi0]);
    let indices: Vec<usize> = match order {
        EdgeOrder::Ascending => (1..=n).collect(),
        EdgeOrder::Descending => (1..=n).rev().collect(),
    };
    while let Some(rho) = queue.pop_front() {
        let mdeg = entries[index[&rho]].clone().expect("queued patterns have entries");
        for &i in &indices {
            if rho.has_small_chord(i) {
                continue;
            }
            let sigma = rho.apply_f(i);
            let value = recursion_step(&mdeg, &rho, i)?;
            if value.homogeneous_degree().ok() != Some(degree) && !(degree == 0 && value.is_zero()) {
                return Err(violation(
                    "homogeneity",
                    format!("step ({rho}, {i}) gives a polynomial not homogeneous of degree {degree}"),
                ));
            }
            let k = index[&sigma];
            match &entries[k] {
                Some(existing) if *existing != value => {
                    return Err(CoreError::ChainInconsistency { pattern: sigma.to_string() });
                }
                Some(_) => {}
                None => {
                    entries[k] = Some(value);
                    chain[k] = Some(ChainEdge { parent: rho.clone(), i });
                    queue.push_back(sigma);
                }
            }
        }
    }
    let entries = entries
        .into_iter()
        .zip(&patterns)
        .map(|(e, p)| e.ok_or_else(|| violation("reachability", format!("{p} never reached"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(MdegTable { n, patterns, entries, chain, index })
}

impl MdegTable {
    /// Assembles a table from stored parts; patterns must be exactly the
    /// enumeration of size `n`.
    pub fn from_parts(
        n: usize,
        patterns: Vec<LinkPattern>,
        entries: Vec<MultiPoly>,
        chain: Vec<Option<ChainEdge>>,
    ) -> Result<MdegTable> {
        if patterns != enumerate(n) || entries.len() != patterns.len() || chain.len() != patterns.len() {
            return Err(CoreError::InvalidInput(format!("table parts do not match size {n}")));
        }
        if entries.iter().any(|e| e.nvars() != n) {
            return Err(CoreError::InvalidInput("entry in the wrong polynomial ring".into()));
        }
        let index = patterns.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect();
        Ok(MdegTable { n, patterns, entries, chain, index })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn patterns(&self) -> &[LinkPattern] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn get(&self, p: &LinkPattern) -> &MultiPoly {
        &self.entries[self.index[p]]
    }

    pub fn chain_edge(&self, p: &LinkPattern) -> Option<&ChainEdge> {
        self.chain[self.index[p]].as_ref()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LinkPattern, &MultiPoly)> {
        self.patterns.iter().zip(&self.entries)
    }

    /// `Psi_pi = mdeg E_pi` at `A = 1`.
    pub fn psi(&self, p: &LinkPattern) -> MultiPoly {
        self.get(p).at_a_one()
    }

    /// `Psi_pi(0)` for every pattern, in table order.
    pub fn values_at_origin(&self) -> Vec<BigInt> {
        self.entries.iter().map(|e| e.constant_at_origin()).collect()
    }

    pub fn total_degree(&self) -> BigInt {
        self.values_at_origin().into_iter().sum()
    }

    /// A copy with one entry replaced, for exercising the checks.
    pub fn with_entry(&self, p: &LinkPattern, value: MultiPoly) -> MdegTable {
        let mut t = self.clone();
        t.entries[self.index[p]] = value;
        t
    }
}

/// Every entry homogeneous of degree `ceil(N^2/2) - N`, and `Psi_{pi0}(0) = 1`.
pub fn check_homogeneity(table: &MdegTable) -> Result<()> {
    let d = expected_degree(table.size());
    for (p, e) in table.iter() {
        if e.homogeneous_degree().ok() != Some(d) && !(d == 0 && *e == MultiPoly::one(table.size())) {
            return Err(violation("homogeneity", format!("{p} is not homogeneous of degree {d}")));
        }
    }
    Ok(())
}

/// Checks that `Psi_pi(0)` are positive integers, that `Psi_{pi0}(0) = 1`
/// and that the coefficients of the whole table have no common factor.
pub fn check_normalization(table: &MdegTable) -> Result<()> {
    use num_integer::Integer;
    let pi0 = maximal_pattern(table.size());
    if table.get(&pi0).constant_at_origin() != BigInt::one() {
        return Err(violation("normalization", "Psi at the maximal pattern is not 1 at the origin"));
    }
    for (p, v) in table.patterns().iter().zip(table.values_at_origin()) {
        if !v.is_positive() {
            return Err(violation("normalization", format!("Psi_{p}(0) = {v}")));
        }
    }
    let g = table.iter().fold(BigInt::zero(), |g, (_, e)| g.gcd(&e.content()));
    if !g.is_one() {
        return Err(violation("normalization", format!("coefficient gcd {g}")));
    }
    Ok(())
}

/// The polynomial `LHS - RHS` of the exchange relation at `(i, pi')`:
/// `2(1-u) Psi_{pi'} + u(1-u) Psi_{f_i pi'} + 2u sum_{e_i rho = pi'} Psi_rho - (2-u)(1+u) tau_i Psi_{pi'}`
/// with `u = z_i - z_{i+1}`.
pub fn exchange_residual(table: &MdegTable, i: usize, target: &LinkPattern) -> MultiPoly {
    let nt = table.size();
    let j = cyc_next(i, nt);
    let one = MultiPoly::one(nt);
    let two = MultiPoly::constant(nt, 2);
    let u = &MultiPoly::z(nt, i) - &MultiPoly::z(nt, j);
    let psi = table.psi(target);
    let mut lhs = &(&two * &(&one - &u)) * &psi;
    lhs += &(&(&u * &(&one - &u)) * &table.psi(&target.apply_f(i)));
    let mut e_sum = MultiPoly::zero(nt);
    for rho in table.patterns() {
        if rho.apply_e(i) == *target {
            e_sum += &table.psi(rho);
        }
    }
    lhs += &(&(&two * &u) * &e_sum);
    let rhs = &(&(&two - &u) * &(&one + &u)) * &psi.tau(i);
    &lhs - &rhs
}

/// The exchange relation for every `i = 1..N` (the last one pairs `z_N` with
/// `z_1`) and every component; returns the number of identities checked.
pub fn verify_exchange(table: &MdegTable) -> Result<usize> {
    let mut count = 0;
    for i in 1..=table.size() {
        for p in table.patterns() {
            let r = exchange_residual(table, i, p);
            if !r.is_zero() {
                return Err(violation("exchange relation", format!("i = {i}, component {p}")));
            }
            count += 1;
        }
    }
    Ok(count)
}

/// `sum_pi Psi_pi(0)` against the determinant, then `sum_pi mdeg E_pi` against
/// the Pfaffian closed form at the given points.
pub fn sum_rule_total(table: &MdegTable, points: &[EvalPoint]) -> Result<usize> {
    let det = degree_determinant(table.size());
    let sum = table.total_degree();
    if det != sum {
        return Err(violation("total degree", format!("table sum {sum}, determinant {det}")));
    }
    for p in points {
        let mut lhs = Q::zero();
        for (_, e) in table.iter() {
            lhs += e.evaluate(p)?;
        }
        let rhs = total_mdeg_formula(p)?;
        if lhs != rhs {
            return Err(violation(
                "total multidegree",
                format!("N={} at {p:?}: table {lhs}, Pfaffian {rhs}", table.size()),
            ));
        }
    }
    Ok(points.len() + 1)
}

/// `prod_{i<j<=n} (A + z_i - z_j)(2A + z_j - z_i) prod_{n<i<j<=N} (same)`.
pub fn sector_product(n_total: usize) -> MultiPoly {
    let n = n_total / 2;
    let mut acc = MultiPoly::one(n_total);
    let mut block = |lo: usize, hi: usize| {
        for i in lo..=hi {
            for j in i + 1..=hi {
                acc = &acc * &(&MultiPoly::weight(n_total, 1, i, j) * &MultiPoly::weight(n_total, 2, j, i));
            }
        }
    };
    block(1, n);
    block(n + 1, n_total);
    acc
}

/// The sum over the permutation sector equals [`sector_product`].
pub fn sum_rule_sector(table: &MdegTable) -> Result<()> {
    let mut sum = MultiPoly::zero(table.size());
    for (p, e) in table.iter() {
        if p.in_permutation_sector() {
            sum += e;
        }
    }
    if sum != sector_product(table.size()) {
        return Err(violation("sector sum rule", format!("N = {}", table.size())));
    }
    Ok(())
}

/// Substituting `z_{i+1} = z_i + A` into `mdeg E_pi` (with `pi(i) = i+1`)
/// gives `prod_{k != i,i+1} (A + z_{i+1} - z_k)(A + z_k - z_i)` times the
/// multidegree of the pattern with the chord removed, in the remaining
/// variables.
pub fn specialize_check_one(
    table: &MdegTable,
    smaller: &MdegTable,
    p: &LinkPattern,
    i: usize,
) -> Result<()> {
    let nt = table.size();
    assert_eq!(smaller.size() + 2, nt);
    let reduced = p.remove_small_chord(i)?;
    let j = cyc_next(i, nt);
    let shift = &MultiPoly::z(nt, i) + &MultiPoly::a(nt);
    let lhs = table.get(p).substitute_z(j, &shift);
    let kept: Vec<usize> = (1..=nt).filter(|&k| k != i && k != j).collect();
    let mut rhs = smaller.get(&reduced).remap_z(nt, &kept);
    for &k in &kept {
        let f = &MultiPoly::weight(nt, 1, j, k) * &MultiPoly::weight(nt, 1, k, i);
        rhs = &rhs * &f;
    }
    let rhs = rhs.substitute_z(j, &shift);
    if lhs != rhs {
        return Err(violation("specialization", format!("N = {nt}, {p}, i = {i}")));
    }
    Ok(())
}

/// [`specialize_check_one`] over every pattern and every `i` with `pi(i) = i+1`.
pub fn specialize_check(table: &MdegTable, smaller: &MdegTable) -> Result<usize> {
    let mut count = 0;
    for p in table.patterns() {
        for i in 1..=table.size() {
            if p.has_small_chord(i) {
                specialize_check_one(table, smaller, p, i)?;
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Patterns `rho != pi` with `e_i rho = pi` whose strands from `i` and `i+1`
/// cross, one from each pair `{rho, f_i rho}`. When one of `i, i+1` is the
/// fixed point, the member with `i+1` fixed is taken.
pub fn smallarch_partners(table: &MdegTable, p: &LinkPattern, i: usize) -> Vec<LinkPattern> {
    let nt = table.size();
    let j = cyc_next(i, nt);
    table
        .patterns()
        .iter()
        .filter(|rho| *rho != p && rho.apply_e(i) == *p)
        .filter(|rho| {
            let (a, b) = (rho.partner(i), rho.partner(j));
            if a == i {
                return false;
            }
            if b == j {
                return true;
            }
            // strands cross iff, going forward from i+1, a comes before b
            (a + nt - j) % nt < (b + nt - j) % nt
        })
        .cloned()
        .collect()
}

/// `-ddiff_i((A + z_i - z_{i+1}) M_pi) = -2A sum_rho ddiff_i M_rho` where
/// `M_sigma = (A + z_{i+1} - z_i) mdeg E_sigma` and `rho` runs over
/// [`smallarch_partners`].
pub fn smallarch_check_one(
    table: &MdegTable,
    p: &LinkPattern,
    i: usize,
    partners: &[LinkPattern],
) -> Result<()> {
    let nt = table.size();
    if !p.has_small_chord(i) {
        return Err(CoreError::NoSmallChord { pattern: p.to_string(), i });
    }
    let j = cyc_next(i, nt);
    let w = MultiPoly::weight(nt, 1, j, i);
    let lhs = -(&MultiPoly::weight(nt, 1, i, j) * &(&w * table.get(p))).ddiff(i);
    let mut sum = MultiPoly::zero(nt);
    for rho in partners {
        sum += &(&w * table.get(rho)).ddiff(i);
    }
    let rhs = &MultiPoly::a(nt).scaled(&BigInt::from(-2)) * &sum;
    if lhs != rhs {
        return Err(violation("small arch", format!("N = {nt}, {p}, i = {i}")));
    }
    Ok(())
}

pub fn smallarch_check(table: &MdegTable) -> Result<usize> {
    let mut count = 0;
    for p in table.patterns() {
        for i in 1..=table.size() {
            if p.has_small_chord(i) {
                smallarch_check_one(table, p, i, &smallarch_partners(table, p, i))?;
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Evaluates every `Psi_pi` at random points with `|z_k| < 1/2`, where all
/// factors `1 + z_i - z_j` are positive, and requires positive values.
pub fn positivity_spot_check(table: &MdegTable, trials: usize, rng: &mut impl Rng) -> Result<usize> {
    let nt = table.size();
    let psis: Vec<MultiPoly> = table.patterns().iter().map(|p| table.psi(p)).collect();
    for _ in 0..trials {
        let z: Vec<Q> = (0..nt)
            .map(|_| Q::new(BigInt::from(rng.gen_range(-499..=499)), BigInt::from(1000)))
            .collect();
        let point = EvalPoint::new(Q::one(), z);
        for (p, psi) in table.patterns().iter().zip(&psis) {
            let v = psi.evaluate(&point)?;
            if !v.is_positive() {
                return Err(violation("positivity", format!("Psi_{p} = {v} at {point:?}")));
            }
        }
    }
    Ok(trials)
}

/// `mdeg E_{rot pi}` is `mdeg E_pi` with every `z_k` renamed `z_{k+1}`.
pub fn rotation_covariance(table: &MdegTable) -> Result<()> {
    let nt = table.size();
    let shift: Vec<usize> = (1..=nt).map(|k| cyc_next(k, nt)).collect();
    for (p, e) in table.iter() {
        if *table.get(&p.rotate()) != e.remap_z(nt, &shift) {
            return Err(violation("rotation covariance", format!("{p}")));
        }
    }
    Ok(())
}
