//! Verification suites: each runs a family of checks and records one line per
//! check, with a replayable witness on failure.

use std::ops::RangeInclusive;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::circlealg::{
    cp_inv, cp_mul, cycle, default_window, from_semidirect, s_mul, s_mul_polynomial, semidirect_mul,
    strip_embed, to_semidirect, ExactMatrix,
};
use crate::commvar::{crosscheck_with_table, delta, delta_alt_order};
use crate::error::{violation, CoreError, Result};
use crate::escheme::{
    check_linear_conditions, check_rank_bounds, expected_stabilizer_codim, expected_tangent_dimension,
    identify_pattern, is_in_e, random_sample, square_diag, stabilizer_codim, tangent_dimension,
};
use crate::linalg::Q;
use crate::linkpat::enumerate;
use crate::loopchain::{match_psi, stationary};
use crate::evalmode::{
    check_values, d0_multiplicity_on_orbit, exchange_on_orbit, homogeneity_on_orbit, match_values,
    rotation_on_orbit, same_values, total_on_orbit, Orbit, OrbitTable,
};
use crate::field::Fp;
use crate::persist::{TableStore, SYMBOLIC_MAX};
use crate::pfdet::{d0_multiplicity_check, d1_mdeg_localization, d1_mdeg_pfaffian_form};
use crate::points::{generic_point, random_rational, seeded};
use crate::psitable::{
    check_homogeneity, check_normalization, compute_table_ordered, positivity_spot_check, rotation_covariance,
    smallarch_check, specialize_check, sum_rule_sector, sum_rule_total, verify_exchange, EdgeOrder, MdegTable,
};

/// Published commuting-variety degrees for `n = 1..=7`.
pub const REFERENCE_COMMUTING_DEGREES: [u64; 7] = [1, 3, 31, 1145, 154881, 77899563, 147226330175];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub passed: bool,
    /// What was checked on success, the witness on failure.
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u128>,
}

impl SuiteReport {
    pub fn new(suite: &str) -> SuiteReport {
        SuiteReport { suite: suite.into(), passed: true, checks: Vec::new(), wall_ms: None }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn record(&mut self, id: impl Into<String>, outcome: Result<String>) {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(e) => (false, e.to_string()),
        };
        self.passed &= passed;
        self.checks.push(CheckResult { id: id.into(), passed, detail });
    }

    pub fn merge(&mut self, other: SuiteReport) {
        self.passed &= other.passed();
        self.checks.extend(other.checks);
    }

    /// Sorts the checks by id and stamps the wall time if asked to.
    pub fn finish(mut self, start: Instant, timings: bool) -> SuiteReport {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
        self.passed = self.passed();
        if timings {
            self.wall_ms = Some(start.elapsed().as_millis());
        }
        self
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            s.push_str(&format!("{status} {}: {}\n", c.id, c.detail));
        }
        let failed = self.failures().count();
        s.push_str(&format!(
            "{} {}: {} checks, {} failed\n",
            if failed == 0 { "PASS" } else { "FAIL" },
            self.suite,
            self.checks.len(),
            failed
        ));
        if let Some(ms) = self.wall_ms {
            s.push_str(&format!("wall time {ms} ms\n"));
        }
        s
    }
}

/// Counts and seed shared by the randomized checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Evaluation points per identity.
    pub points: usize,
    /// Sample points per link pattern.
    pub samples: usize,
    /// Random instances per algebra property.
    pub instances: usize,
    /// Points for the positivity spot check.
    pub positivity: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 1, points: 20, samples: 200, instances: 1000, positivity: 100 }
    }
}

/// Random matrix with small rational entries, about a third of them zero.
pub fn random_matrix(rng: &mut impl Rng, n: usize) -> ExactMatrix {
    ExactMatrix::from_fn(n, |_, _| if rng.gen_range(0..3) == 0 { Q::zero() } else { random_rational(rng, 5, 3) })
}

/// Like [`random_matrix`] with a nonzero diagonal.
pub fn random_invertible(rng: &mut impl Rng, n: usize) -> ExactMatrix {
    let mut m = random_matrix(rng, n);
    for i in 1..=n {
        while m[(i, i)].is_zero() {
            m[(i, i)] = random_rational(rng, 5, 3);
        }
    }
    m
}

/// `sum over cyclically ordered i <= j <= k <= l of P_ij Q_jk R_kl`.
pub fn triple_product(p: &ExactMatrix, q: &ExactMatrix, r: &ExactMatrix) -> ExactMatrix {
    let n = p.size();
    // forward distance from i; j, k, l must not move backwards, and a chain
    // returning to i must stay at i
    let off = |i: usize, x: usize| (x + n - i) % n;
    ExactMatrix::from_fn(n, |i, l| {
        let mut s = Q::zero();
        for j in 1..=n {
            for k in 1..=n {
                let (dj, dk, dl) = (off(i, j), off(i, k), off(i, l));
                if dj <= dk && dk <= dl && (i != l || (j == i && k == i)) {
                    s += &p[(i, j)] * &q[(j, k)] * &r[(k, l)];
                }
            }
        }
        s
    })
}

/// Runs `f` on `instances` independent sub-generators; the first failure
/// becomes the witness.
fn per_instance(
    instances: usize,
    rng: &mut ChaCha8Rng,
    check: &str,
    mut f: impl FnMut(&mut ChaCha8Rng) -> std::result::Result<(), String>,
) -> Result<String> {
    for k in 0..instances {
        let mut sub = ChaCha8Rng::seed_from_u64(rng.gen());
        f(&mut sub).map_err(|w| violation(check, format!("instance {k}: {w}")))?;
    }
    Ok(format!("{instances} instances"))
}

fn mat(m: &ExactMatrix) -> String {
    serde_json::to_string(m).unwrap_or_else(|_| format!("{m:?}"))
}

/// The ∘ product and its models on random matrices of each size in `sizes`.
pub fn algebra_suite(sizes: RangeInclusive<usize>, cfg: &SuiteConfig, timings: bool) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new("algebra");
    for n in sizes {
        let mut rng = seeded(cfg.seed ^ ((n as u64) << 32));
        let m = cfg.instances;
        let id = |what: &str| format!("algebra.N{n}.{what}");

        report.record(
            id("associativity"),
            per_instance(m, &mut rng, "associativity", |r| {
                let (p, q, s) = (random_matrix(r, n), random_matrix(r, n), random_matrix(r, n));
                let left = cp_mul(&cp_mul(&p, &q), &s);
                if left != cp_mul(&p, &cp_mul(&q, &s)) {
                    return Err(format!("P={} Q={} R={}", mat(&p), mat(&q), mat(&s)));
                }
                if left != triple_product(&p, &q, &s) {
                    return Err(format!("triple sum differs, P={} Q={} R={}", mat(&p), mat(&q), mat(&s)));
                }
                let one = ExactMatrix::identity(n);
                if cp_mul(&one, &p) != p || cp_mul(&p, &one) != p {
                    return Err(format!("identity is not a unit for {}", mat(&p)));
                }
                Ok(())
            }),
        );

        report.record(
            id("inverse"),
            per_instance(m, &mut rng, "inverse", |r| {
                let p = random_invertible(r, n);
                let inv = cp_inv(&p).map_err(|e| format!("{e} for {}", mat(&p)))?;
                let one = ExactMatrix::identity(n);
                if cp_mul(&p, &inv) != one || cp_mul(&inv, &p) != one {
                    return Err(format!("P={}", mat(&p)));
                }
                let mut singular = p.clone();
                let k = r.gen_range(1..=n);
                singular[(k, k)] = Q::zero();
                if !matches!(cp_inv(&singular), Err(CoreError::NotInvertible(_))) {
                    return Err(format!("zero diagonal accepted: {}", mat(&singular)));
                }
                Ok(())
            }),
        );

        report.record(
            id("unit_group"),
            per_instance(m, &mut rng, "unit group", |r| {
                let mut p = random_matrix(r, n);
                let mut q = random_matrix(r, n);
                for i in 1..=n {
                    p[(i, i)] = Q::from_integer(1.into());
                    q[(i, i)] = Q::from_integer(1.into());
                }
                let inv = cp_inv(&p).map_err(|e| e.to_string())?;
                if !cp_mul(&p, &q).has_unit_diagonal() || !inv.has_unit_diagonal() {
                    return Err(format!("P={} Q={}", mat(&p), mat(&q)));
                }
                Ok(())
            }),
        );

        report.record(
            id("upper_triangular"),
            per_instance(m, &mut rng, "upper triangular", |r| {
                let p = random_invertible(r, n).upper();
                let q = random_matrix(r, n).upper();
                if cp_mul(&p, &q) != p.matmul(&q) {
                    return Err(format!("R={} R'={}", mat(&p), mat(&q)));
                }
                let inv = p.upper_inverse().map_err(|e| e.to_string())?;
                if cp_inv(&p).map_err(|e| e.to_string())? != inv {
                    return Err(format!("inverse of R={}", mat(&p)));
                }
                Ok(())
            }),
        );

        report.record(
            id("semidirect"),
            per_instance(m, &mut rng, "semidirect", |r| {
                let (p, q) = (random_matrix(r, n), random_matrix(r, n));
                if from_semidirect(&to_semidirect(&p)) != p {
                    return Err(format!("round trip of {}", mat(&p)));
                }
                let prod = from_semidirect(&semidirect_mul(&to_semidirect(&p), &to_semidirect(&q)));
                if prod != cp_mul(&p, &q) {
                    return Err(format!("P={} Q={}", mat(&p), mat(&q)));
                }
                Ok(())
            }),
        );

        report.record(
            id("strip"),
            per_instance(m, &mut rng, "strip", |r| {
                let (p, q) = (random_matrix(r, n), random_matrix(r, n));
                let w = default_window(n);
                let fp = strip_embed(&p, w.clone()).map_err(|e| e.to_string())?;
                let fq = strip_embed(&q, w.clone()).map_err(|e| e.to_string())?;
                let prod = fp.truncated_mul(&fq).map_err(|e| e.to_string())?;
                let direct = strip_embed(&cp_mul(&p, &q), w).map_err(|e| e.to_string())?.restrict(prod.rows());
                if prod != direct {
                    return Err(format!("P={} Q={}", mat(&p), mat(&q)));
                }
                if !fp.is_periodic() {
                    return Err(format!("not periodic: {}", mat(&p)));
                }
                // the strip determines the matrix
                let ni = n as i64;
                for i in 1..=ni {
                    for j in 1..=ni {
                        let d = (j - i).rem_euclid(ni);
                        if fp.get(i, i + d) != Some(p[(i as usize, j as usize)].clone()) {
                            return Err(format!("entry ({i},{j}) lost for {}", mat(&p)));
                        }
                    }
                }
                Ok(())
            }),
        );

        report.record(
            id("s_family"),
            per_instance(m, &mut rng, "s-family", |r| {
                let (p, q, t) = (random_matrix(r, n), random_matrix(r, n), random_matrix(r, n));
                let one = Q::from_integer(1.into());
                if s_mul(&p, &q, &one) != p.matmul(&q) {
                    return Err(format!("s = 1, P={} Q={}", mat(&p), mat(&q)));
                }
                if s_mul(&p, &q, &Q::zero()) != cp_mul(&p, &q) {
                    return Err(format!("s = 0, P={} Q={}", mat(&p), mat(&q)));
                }
                let (c0, cn) = s_mul_polynomial(&p, &q);
                if c0 != cp_mul(&p, &q) {
                    return Err(format!("constant term, P={} Q={}", mat(&p), mat(&q)));
                }
                let mut s = Q::zero();
                while s.is_zero() {
                    s = random_rational(r, 7, 5);
                }
                let sn = (0..n).fold(one.clone(), |acc, _| acc * &s);
                let at_s = s_mul(&p, &q, &s);
                if at_s != &c0 + &cn.scaled(&sn) {
                    return Err(format!("s = {s}, P={} Q={}", mat(&p), mat(&q)));
                }
                if s_mul(&at_s, &t, &s) != s_mul(&p, &s_mul(&q, &t, &s), &s) {
                    return Err(format!("associativity at s = {s}"));
                }
                Ok(())
            }),
        );

        report.record(
            id("cycling"),
            per_instance(m, &mut rng, "cycling", |r| {
                let (p, q) = (random_matrix(r, n), random_matrix(r, n));
                if cycle(&cp_mul(&p, &q)) != cp_mul(&cycle(&p), &cycle(&q)) {
                    return Err(format!("∘ product, P={} Q={}", mat(&p), mat(&q)));
                }
                if cycle(&p.matmul(&q)) != cycle(&p).matmul(&cycle(&q)) {
                    return Err(format!("ordinary product, P={} Q={}", mat(&p), mat(&q)));
                }
                let mut c = p.clone();
                for _ in 0..n {
                    c = cycle(&c);
                }
                if c != p {
                    return Err(format!("cycle^N, P={}", mat(&p)));
                }
                Ok(())
            }),
        );
    }
    report.finish(start, timings)
}

/// Sample points of every component: membership, diagonal pairing, pattern
/// identification, rank conditions, the cycling map, and tangent and
/// stabilizer dimensions.
pub fn geometry_suite(n: usize, cfg: &SuiteConfig, timings: bool) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new("geometry");
    let mut rng = seeded(cfg.seed ^ ((n as u64) << 40));
    let patterns = enumerate(n);
    let names = ["membership", "pairing", "identify", "rank_bounds", "linear", "cycling", "tangent", "stabilizer"];
    let mut first_failure: Vec<Option<String>> = vec![None; names.len()];
    let mut note = |k: usize, w: String| {
        if first_failure[k].is_none() {
            first_failure[k] = Some(w);
        }
    };
    let tangent_samples = 3.min(cfg.samples);
    for pi in &patterns {
        for s in 0..cfg.samples {
            let sp = random_sample(pi, &mut rng);
            let t: Vec<Q> = sp.t.iter().map(|x| x.parse().expect("stored parameters parse")).collect();
            let witness = || format!("{pi}, sample {s}, t = {:?}, P = {}", sp.t, mat(&sp.p));
            if !is_in_e(&sp.m) {
                note(0, witness());
            }
            let diag = square_diag(&sp.m);
            let paired = (1..=n).all(|i| {
                let j = pi.partner(i);
                let want = if i == j { Q::zero() } else { &t[i - 1] * &t[j - 1] };
                diag[i - 1] == want
            });
            if !paired {
                note(1, witness());
            }
            match identify_pattern(&sp.m) {
                Ok(found) if found == *pi => {}
                Ok(found) => note(2, format!("{} identified as {found}", witness())),
                Err(e) => note(2, format!("{}: {e}", witness())),
            }
            if !check_rank_bounds(&sp.m, pi) {
                note(3, witness());
            }
            if !check_linear_conditions(&sp.m, pi) {
                note(4, witness());
            }
            let c = cycle(&sp.m);
            let target = pi.rotate_back();
            if !is_in_e(&c) || !check_rank_bounds(&c, &target) || identify_pattern(&c).ok().as_ref() != Some(&target)
            {
                note(5, format!("{} should land in {target}", witness()));
            }
            if s < tangent_samples {
                let d = tangent_dimension(&sp.m);
                if d != expected_tangent_dimension(n) {
                    note(6, format!("{}: dimension {d}", witness()));
                }
                match stabilizer_codim(pi, &t) {
                    Ok(c) if c == expected_stabilizer_codim(n) => {}
                    Ok(c) => note(7, format!("{}: codimension {c}", witness())),
                    Err(e) => note(7, format!("{}: {e}", witness())),
                }
            }
        }
    }
    for (k, name) in names.iter().enumerate() {
        let outcome = match first_failure[k].take() {
            None => Ok(if k >= 6 {
                format!("{} patterns x {tangent_samples} samples", patterns.len())
            } else {
                format!("{} patterns x {} samples", patterns.len(), cfg.samples)
            }),
            Some(w) => Err(violation(name, w)),
        };
        report.record(format!("geometry.N{n}.{name}"), outcome);
    }
    report.finish(start, timings)
}

fn get_table(report: &mut SuiteReport, store: &TableStore, n: usize, id: String) -> Option<MdegTable> {
    match store.get(n) {
        Ok(t) => Some(t),
        Err(e) => {
            report.record(id, Err(e));
            None
        }
    }
}

/// The exchange suite beyond the symbolic range: everything is checked on
/// the orbit of one random point modulo `2^61 - 1`.
fn exchange_by_evaluation(report: &mut SuiteReport, n: usize, store: &TableStore, cfg: &SuiteConfig) {
    let id = |what: &str| format!("exchange.N{n}.{what}");
    report.record(id("normalization"), store.values(n).and_then(|t| check_values(&t)).map(|_| "positive at the origin".into()));
    let orbit = Orbit::new(n);
    let mut rng = seeded(cfg.seed ^ ((n as u64) << 48));
    let table = match OrbitTable::random(&orbit, Fp::new(1), &mut rng) {
        Ok(t) => t,
        Err(e) => return report.record(id("relations"), Err(e)),
    };
    report.record(
        id("relations"),
        exchange_on_orbit(&table, &orbit).map(|c| format!("{c} identities at {} points mod 2^61-1", orbit.len())),
    );
    report.record(
        id("chain_independence"),
        OrbitTable::compute(&orbit, table.a(), table.point(), EdgeOrder::Descending)
            .and_then(|other| same_values(&table, &other))
            .map(|_| "ascending and descending edge orders agree".into()),
    );
    report.record(id("rotation"), rotation_on_orbit(&table, &orbit).map(|_| "covariant".into()));
    let lambda = Fp::random(&mut rng);
    report.record(id("homogeneity"), homogeneity_on_orbit(&table, &orbit, lambda).map(|_| "scales correctly".into()));
}

/// Structural properties of the multidegree table and the exchange relation.
pub fn exchange_suite(n: usize, store: &TableStore, cfg: &SuiteConfig, timings: bool) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new("exchange");
    let id = |what: &str| format!("exchange.N{n}.{what}");
    if n > SYMBOLIC_MAX {
        exchange_by_evaluation(&mut report, n, store, cfg);
        return report.finish(start, timings);
    }
    let Some(table) = get_table(&mut report, store, n, id("table")) else {
        return report.finish(start, timings);
    };
    report.record(id("homogeneity"), check_homogeneity(&table).map(|_| format!("{} entries", table.len())));
    report.record(id("normalization"), check_normalization(&table).map(|_| "gcd 1, positive at the origin".into()));
    report.record(id("relations"), verify_exchange(&table).map(|c| format!("{c} identities")));
    report.record(
        id("chain_independence"),
        compute_table_ordered(n, EdgeOrder::Descending).and_then(|other| {
            match table.iter().find(|(p, e)| other.get(p) != *e) {
                Some((p, _)) => Err(violation("chain independence", format!("{p} differs"))),
                None => Ok("ascending and descending edge orders agree".into()),
            }
        }),
    );
    report.record(id("rotation"), rotation_covariance(&table).map(|_| "covariant".into()));
    let mut rng = seeded(cfg.seed ^ ((n as u64) << 48));
    report.record(
        id("positivity"),
        positivity_spot_check(&table, cfg.positivity, &mut rng).map(|c| format!("{c} points")),
    );
    report.record(id("small_arch"), smallarch_check(&table).map(|c| format!("{c} identities")));
    if n >= 4 {
        if let Some(smaller) = get_table(&mut report, store, n - 2, id("specialization")) {
            report.record(id("specialization"), specialize_check(&table, &smaller).map(|c| format!("{c} identities")));
        }
    }
    report.finish(start, timings)
}

fn points(cfg: &SuiteConfig, n: usize, salt: u64) -> Vec<brauer_poly::EvalPoint> {
    let mut rng = seeded(cfg.seed ^ salt ^ ((n as u64) << 16));
    (0..cfg.points).map(|_| generic_point(&mut rng, n)).collect()
}

/// Total degree against the determinant, the total multidegree against the
/// Pfaffian formula, and the permutation-sector sum rule.
pub fn sumrules_suite(n: usize, store: &TableStore, cfg: &SuiteConfig, timings: bool) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new("sumrules");
    let id = |what: &str| format!("sumrules.N{n}.{what}");
    if n > SYMBOLIC_MAX {
        let outcome = store.values(n).and_then(|t| {
            check_values(&t)?;
            let orbit = Orbit::new(n);
            let mut rng = seeded(cfg.seed ^ (0x5u64 << 56) ^ ((n as u64) << 16));
            for _ in 0..cfg.points {
                let a = Fp::random(&mut rng);
                total_on_orbit(&OrbitTable::random(&orbit, a, &mut rng)?)?;
            }
            Ok(format!("degree {}, Pfaffian at {} points mod 2^61-1", t.total_degree(), cfg.points))
        });
        report.record(id("total"), outcome);
        return report.finish(start, timings);
    }
    let Some(table) = get_table(&mut report, store, n, id("table")) else {
        return report.finish(start, timings);
    };
    report.record(
        id("total"),
        sum_rule_total(&table, &points(cfg, n, 0x5u64 << 56))
            .map(|_| format!("degree {}, Pfaffian at {} points", table.total_degree(), cfg.points)),
    );
    if n.is_multiple_of(2) {
        report.record(id("sector"), sum_rule_sector(&table).map(|_| "symbolic".into()));
    }
    report.finish(start, timings)
}

/// The stationary law of the loop chain against `Psi_pi(0)`.
pub fn markov_suite(n: usize, store: &TableStore, timings: bool) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new("markov");
    let id = |what: &str| format!("markov.N{n}.{what}");
    if n > SYMBOLIC_MAX {
        match (stationary(n), store.values(n)) {
            (Ok(sol), Ok(t)) => {
                let rendered: Vec<String> = sol.normalized.iter().map(BigInt::to_string).collect();
                report.record(id("stationary"), Ok(format!("[{}], sum {}", rendered.join(", "), sol.normalized_sum())));
                report.record(id("match"), match_values(&t, &sol).map(|_| "equal to Psi at the origin".into()));
            }
            (Err(e), _) => report.record(id("stationary"), Err(e)),
            (_, Err(e)) => report.record(id("table"), Err(e)),
        }
        return report.finish(start, timings);
    }
    let Some(table) = get_table(&mut report, store, n, id("table")) else {
        return report.finish(start, timings);
    };
    match stationary(n) {
        Ok(sol) => {
            let rendered: Vec<String> = sol.normalized.iter().map(BigInt::to_string).collect();
            report.record(id("stationary"), Ok(format!("[{}], sum {}", rendered.join(", "), sol.normalized_sum())));
            report.record(id("match"), match_psi(&table, &sol).map(|_| "equal to Psi at the origin".into()));
        }
        Err(e) => report.record(id("stationary"), Err(e)),
    }
    report.finish(start, timings)
}

/// The two closed forms for the `D_1` multidegree, and its relation to the
/// sum of the component multidegrees.
pub fn d1_suite(n: usize, store: &TableStore, cfg: &SuiteConfig, timings: bool) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new("d1");
    let id = |what: &str| format!("d1.N{n}.{what}");
    let pts = points(cfg, n, 0xd1u64 << 56);
    let agree = pts.iter().enumerate().try_for_each(|(k, p)| {
        let a = d1_mdeg_localization(p)?;
        let b = d1_mdeg_pfaffian_form(p)?;
        if a != b {
            return Err(violation("D1 forms", format!("point {k} {p:?}: {a} vs {b}")));
        }
        Ok(())
    });
    report.record(id("forms"), agree.map(|_| format!("{} points", pts.len())));
    if n > SYMBOLIC_MAX {
        let orbit = Orbit::new(n);
        let mut rng = seeded(cfg.seed ^ (0xd1u64 << 56) ^ ((n as u64) << 16));
        let outcome = (0..cfg.points).try_for_each(|_| {
            let a = Fp::random(&mut rng);
            d0_multiplicity_on_orbit(&OrbitTable::random(&orbit, a, &mut rng)?)
        });
        report.record(id("multiplicity"), outcome.map(|_| format!("{} points mod 2^61-1", cfg.points)));
        return report.finish(start, timings);
    }
    if let Some(table) = get_table(&mut report, store, n, id("table")) {
        report.record(id("multiplicity"), d0_multiplicity_check(&table, &pts).map(|c| format!("{c} points")));
    }
    report.finish(start, timings)
}

/// The commuting-variety degrees by both operator orders, against the
/// published values and, for small `n`, the table.
pub fn commuting_suite(max_n: usize, store: &TableStore, timings: bool) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new("commuting");
    let mut sequence = Vec::new();
    for n in 1..=max_n {
        let d = delta(n);
        sequence.push(d.degree.to_string());
        if let Some(&want) = REFERENCE_COMMUTING_DEGREES.get(n - 1) {
            let outcome = if d.degree == BigInt::from(want) {
                Ok(format!("degree {}", d.degree))
            } else {
                Err(CoreError::Mismatch { pattern: format!("n = {n}"), expected: want.to_string(), got: d.degree.to_string() })
            };
            report.record(format!("commuting.n{n}.reference"), outcome);
        }
        if n <= 4 {
            let alt = delta_alt_order(n).degree;
            let outcome = if alt == d.degree {
                Ok(format!("both orders give {alt}"))
            } else {
                Err(violation("operator order", format!("n = {n}: {} vs {alt}", d.degree)))
            };
            report.record(format!("commuting.n{n}.order"), outcome);
        }
        if n <= 3 {
            let id = format!("commuting.n{n}.table");
            if let Some(table) = get_table(&mut report, store, 2 * n, id.clone()) {
                report.record(id, crosscheck_with_table(&table, &d, true).map(|_| "symbolic".into()));
            }
        }
    }
    report.record("commuting.sequence", Ok(format!("[{}]", sequence.join(", "))));
    report.finish(start, timings)
}
