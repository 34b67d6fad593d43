//! Link patterns: involutions of `{1..N}` with `N mod 2` fixed points.
//!
//! Labels are 1-based and every index is read cyclically, so `N + 1` is `1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

/// `i + 1` on the cycle `1..=n`.
pub fn cyc_next(i: usize, n: usize) -> usize {
    i % n + 1
}

/// `i - 1` on the cycle `1..=n`.
pub fn cyc_prev(i: usize, n: usize) -> usize {
    (i + n - 2) % n + 1
}

/// Reduces any integer label into `1..=n`.
pub fn wrap(k: i64, n: usize) -> usize {
    (k - 1).rem_euclid(n as i64) as usize + 1
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct LinkPattern {
    pairing: Vec<usize>,
}

impl TryFrom<Vec<usize>> for LinkPattern {
    type Error = CoreError;
    fn try_from(pairing: Vec<usize>) -> Result<Self> {
        LinkPattern::new(pairing)
    }
}

impl From<LinkPattern> for Vec<usize> {
    fn from(p: LinkPattern) -> Vec<usize> {
        p.pairing
    }
}

impl LinkPattern {
    /// Validates a 1-based pairing array (`pairing[i-1]` is the partner of `i`).
    pub fn new(pairing: Vec<usize>) -> Result<LinkPattern> {
        let n = pairing.len();
        if n == 0 {
            return Err(CoreError::InvalidPattern("empty pairing".into()));
        }
        for (k, &p) in pairing.iter().enumerate() {
            if !(1..=n).contains(&p) {
                return Err(CoreError::InvalidPattern(format!("label {p} out of range 1..={n}")));
            }
            if pairing[p - 1] != k + 1 {
                return Err(CoreError::InvalidPattern(format!("{pairing:?} is not an involution")));
            }
        }
        let fixed = pairing.iter().enumerate().filter(|(k, &p)| p == k + 1).count();
        if fixed != n % 2 {
            return Err(CoreError::InvalidPattern(format!(
                "{pairing:?} has {fixed} fixed points, expected {}",
                n % 2
            )));
        }
        Ok(LinkPattern { pairing })
    }

    /// Builds a pattern of size `n` from its chords.
    pub fn from_chords(n: usize, chords: &[(usize, usize)]) -> Result<LinkPattern> {
        let mut pairing: Vec<usize> = (1..=n).collect();
        for &(a, b) in chords {
            if !(1..=n).contains(&a) || !(1..=n).contains(&b) || a == b {
                return Err(CoreError::InvalidPattern(format!("bad chord ({a},{b})")));
            }
            if pairing[a - 1] != a || pairing[b - 1] != b {
                return Err(CoreError::InvalidPattern(format!("chord ({a},{b}) reuses a point")));
            }
            pairing[a - 1] = b;
            pairing[b - 1] = a;
        }
        LinkPattern::new(pairing)
    }

    pub fn size(&self) -> usize {
        self.pairing.len()
    }

    /// `n = floor(N/2)`, the number of chords.
    pub fn half(&self) -> usize {
        self.size() / 2
    }

    pub fn partner(&self, i: usize) -> usize {
        self.pairing[i - 1]
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    pub fn is_fixed(&self, i: usize) -> bool {
        self.partner(i) == i
    }

    pub fn fixed_point(&self) -> Option<usize> {
        (1..=self.size()).find(|&i| self.is_fixed(i))
    }

    /// Chords as pairs `(a, b)` with `a < b`, ordered by `a`.
    pub fn chords(&self) -> Vec<(usize, usize)> {
        (1..=self.size()).filter(|&a| self.partner(a) > a).map(|a| (a, self.partner(a))).collect()
    }

    /// True when `i` and `i + 1` (cyclically) are joined by a chord.
    pub fn has_small_chord(&self, i: usize) -> bool {
        self.partner(i) == cyc_next(i, self.size())
    }

    /// The Temperley-Lieb action `e_i`: join `i` to `i + 1` and join their old
    /// partners to each other. A fixed point among `i, i + 1` passes its
    /// unpaired status on to the other old partner.
    pub fn apply_e(&self, i: usize) -> LinkPattern {
        let n = self.size();
        let j = cyc_next(i, n);
        if self.partner(i) == j {
            return self.clone();
        }
        let (a, b) = (self.partner(i), self.partner(j));
        let mut p = self.pairing.clone();
        p[i - 1] = j;
        p[j - 1] = i;
        if a == i {
            p[b - 1] = b;
        } else if b == j {
            p[a - 1] = a;
        } else {
            p[a - 1] = b;
            p[b - 1] = a;
        }
        LinkPattern { pairing: p }
    }

    /// `f_i`: conjugation by the transposition `(i, i + 1)`.
    pub fn apply_f(&self, i: usize) -> LinkPattern {
        let n = self.size();
        let j = cyc_next(i, n);
        let s = |k: usize| if k == i { j } else if k == j { i } else { k };
        let mut p = vec![0; n];
        for k in 1..=n {
            p[s(k) - 1] = s(self.partner(k));
        }
        LinkPattern { pairing: p }
    }

    /// `rot(pi)(i) = pi(i - 1) + 1`.
    pub fn rotate(&self) -> LinkPattern {
        let n = self.size();
        let mut p = vec![0; n];
        for i in 1..=n {
            p[cyc_next(i, n) - 1] = cyc_next(self.partner(i), n);
        }
        LinkPattern { pairing: p }
    }

    /// The inverse rotation, `pi(i + 1) - 1`.
    pub fn rotate_back(&self) -> LinkPattern {
        let n = self.size();
        let p = (1..=n).map(|i| cyc_prev(self.partner(cyc_next(i, n)), n)).collect();
        LinkPattern { pairing: p }
    }

    pub fn crossings(&self) -> usize {
        let ch = self.chords();
        let mut count = 0;
        for (x, &(a, b)) in ch.iter().enumerate() {
            for &(c, d) in &ch[x + 1..] {
                if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                    count += 1;
                }
            }
        }
        count
    }

    /// True iff every `i <= n` is paired with a label above `n`.
    pub fn in_permutation_sector(&self) -> bool {
        let n = self.half();
        (1..=n).all(|i| self.partner(i) > n)
    }

    /// Deletes the labels `i, i + 1` (which must form a chord) and relabels the
    /// remaining points in increasing order.
    pub fn remove_small_chord(&self, i: usize) -> Result<LinkPattern> {
        let n = self.size();
        if !self.has_small_chord(i) {
            return Err(CoreError::NoSmallChord { pattern: self.to_string(), i });
        }
        let j = cyc_next(i, n);
        let kept: Vec<usize> = (1..=n).filter(|&k| k != i && k != j).collect();
        let label = |k: usize| kept.iter().position(|&x| x == k).unwrap() + 1;
        let p = kept.iter().map(|&k| label(self.partner(k))).collect();
        LinkPattern::new(p)
    }

    pub fn rank_table(&self) -> RankTable {
        let n = self.size();
        let mut entries = vec![vec![0usize; n]; n];
        for i in 1..=n {
            for d in 0..n {
                entries[i - 1][d] = self
                    .chords()
                    .iter()
                    .filter(|&&(a, b)| in_window(a, i, d, n) && in_window(b, i, d, n))
                    .count();
            }
        }
        RankTable { n, entries }
    }

    /// Boxes of the strip that survive after crossing out, for each 1-entry of
    /// the zero-diagonal permutation matrix, everything to its north and to its
    /// east. Only offsets `1..=N-2` are considered: the diagonal is zero in the
    /// ambient space and the top diagonal carries no condition.
    pub fn diagram(&self) -> Vec<StripPos> {
        let n = self.size();
        let mut out = Vec::new();
        for i in 1..=n {
            for d in 1..n.saturating_sub(1) {
                if self.in_diagram(i as i64, i as i64 + d as i64) {
                    out.push(StripPos { row: i, offset: d });
                }
            }
        }
        out
    }

    fn in_diagram(&self, i: i64, j: i64) -> bool {
        let n = self.size() as i64;
        let d = j - i;
        if d < 1 || d > n - 2 {
            return false;
        }
        let ri = wrap(i, n as usize);
        let cj = wrap(j, n as usize);
        let east_ok = if self.is_fixed(ri) {
            true
        } else {
            let c = i + (self.partner(ri) as i64 - ri as i64).rem_euclid(n);
            j < c
        };
        let north_ok = if self.is_fixed(cj) {
            true
        } else {
            let a = j - (cj as i64 - self.partner(cj) as i64).rem_euclid(n);
            i > a
        };
        east_ok && north_ok
    }

    /// North-east corners of the diagram: boxes whose northern and eastern
    /// neighbours are both outside it.
    pub fn essential_set(&self) -> Vec<StripPos> {
        self.diagram()
            .into_iter()
            .filter(|p| {
                let (i, j) = (p.row as i64, (p.row + p.offset) as i64);
                !self.in_diagram(i - 1, j) && !self.in_diagram(i, j + 1)
            })
            .collect()
    }

    /// The tightest rank bound at `(i, i + d)` that follows from the rank
    /// conditions at the essential set together with `rank <= d`.
    pub fn implied_rank_bound(&self, i: usize, d: usize) -> usize {
        let n = self.size() as i64;
        let table = self.rank_table();
        let (i, j) = (i as i64, i as i64 + d as i64);
        let mut best = d as i64;
        for e in self.essential_set() {
            let r = table.get(e.row, e.offset) as i64;
            for k in -2..=2 {
                let er = e.row as i64 + k * n;
                let ec = er + e.offset as i64;
                let bound = r + (er - i).max(0) + (j - ec).max(0);
                best = best.min(bound);
            }
        }
        best as usize
    }
}

/// True if label `a` lies in the cyclic window `i, i+1, ..., i+d`.
fn in_window(a: usize, i: usize, d: usize, n: usize) -> bool {
    (a + n - i) % n <= d
}

impl fmt::Display for LinkPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.size() >= 10 { "," } else { "" };
        for (a, b) in self.chords() {
            write!(f, "({a}{sep}{b})")?;
        }
        if let Some(k) = self.fixed_point() {
            write!(f, "[{k}]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LinkPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Every link pattern of size `n`, in lexicographic order of the pairing array.
pub fn enumerate(n: usize) -> Vec<LinkPattern> {
    assert!(n >= 1);
    fn rec(p: &mut Vec<usize>, fixed_left: usize, out: &mut Vec<Vec<usize>>) {
        let Some(k) = p.iter().position(|&x| x == 0) else {
            out.push(p.clone());
            return;
        };
        if fixed_left > 0 {
            p[k] = k + 1;
            rec(p, fixed_left - 1, out);
            p[k] = 0;
        }
        for m in k + 1..p.len() {
            if p[m] == 0 {
                p[k] = m + 1;
                p[m] = k + 1;
                rec(p, fixed_left, out);
                p[k] = 0;
                p[m] = 0;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![0; n], n % 2, &mut out);
    out.sort();
    out.into_iter().map(|pairing| LinkPattern { pairing }).collect()
}

/// The maximally crossing pattern: `i <-> i + n` for `i <= n`, with `N` fixed
/// when `N` is odd.
pub fn maximal_pattern(n_total: usize) -> LinkPattern {
    assert!(n_total >= 1);
    let n = n_total / 2;
    let mut p: Vec<usize> = (1..=n_total).collect();
    for i in 1..=n {
        p[i - 1] = i + n;
        p[i + n - 1] = i;
    }
    LinkPattern { pairing: p }
}

/// A strip position `(row, row + offset)` with `row` in `1..=N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StripPos {
    pub row: usize,
    pub offset: usize,
}

/// `r_{i,i+d}` for rows `1..=N` and offsets `0..N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankTable {
    n: usize,
    entries: Vec<Vec<usize>>,
}

impl RankTable {
    pub fn size(&self) -> usize {
        self.n
    }

    /// Rank at row `i` (any integer label, reduced cyclically) and offset `d`.
    pub fn get(&self, i: usize, d: usize) -> usize {
        self.entries[(i - 1) % self.n][d]
    }

    /// Rank at the strip position `(i, j)` given by `j >= i` on the unrolled strip.
    pub fn get_ij(&self, i: usize, j: usize) -> usize {
        assert!(j >= i && j - i < self.n, "({i},{j}) is outside the width-{} strip", self.n);
        self.get(i, j - i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(n: usize, ch: &[(usize, usize)]) -> LinkPattern {
        LinkPattern::from_chords(n, ch).unwrap()
    }

    #[test]
    fn validation() {
        assert!(LinkPattern::new(vec![2, 1]).is_ok());
        assert!(LinkPattern::new(vec![1, 2]).is_err());
        assert!(LinkPattern::new(vec![2, 3, 1]).is_err());
        assert!(LinkPattern::new(vec![2, 1, 4]).is_err());
        assert!(LinkPattern::new(vec![]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate(2), vec![lp(2, &[(1, 2)])]);
        assert_eq!(
            enumerate(4),
            vec![lp(4, &[(1, 2), (3, 4)]), lp(4, &[(1, 3), (2, 4)]), lp(4, &[(1, 4), (2, 3)])]
        );
        assert_eq!(enumerate(6).len(), 15);
        assert_eq!(enumerate(3).len(), 3);
        assert_eq!(enumerate(1).len(), 1);
    }

    #[test]
    fn e_and_f_examples() {
        let a = lp(4, &[(1, 2), (3, 4)]);
        let b = lp(4, &[(1, 3), (2, 4)]);
        let c = lp(4, &[(1, 4), (2, 3)]);
        assert_eq!(a.apply_e(1), a);
        assert_eq!(a.apply_e(2), c);
        assert_eq!(b.apply_e(1), a);
        assert_eq!(a.apply_f(2), b);
        assert_eq!(b.apply_f(1), c);
        // N = 3: (12) with 3 fixed; f_3 swaps labels 3 and 1
        let p = lp(3, &[(1, 2)]);
        assert_eq!(p.apply_f(3), lp(3, &[(2, 3)]));
        // e_i at a fixed point: the unpaired status moves to the old partner
        assert_eq!(p.apply_e(2), lp(3, &[(2, 3)]));
        assert_eq!(p.apply_e(3), lp(3, &[(1, 3)]));
    }

    #[test]
    fn rotation_examples() {
        let a = lp(4, &[(1, 2), (3, 4)]);
        assert_eq!(a.rotate(), lp(4, &[(2, 3), (1, 4)]));
        let pi0 = maximal_pattern(4);
        assert_eq!(pi0.rotate(), pi0);
        let p = lp(5, &[(1, 3), (2, 5)]);
        let mut q = p.clone();
        for _ in 0..5 {
            q = q.rotate();
        }
        assert_eq!(q, p);
        assert_eq!(p.rotate().rotate_back(), p);
    }

    #[test]
    fn crossing_examples() {
        assert_eq!(lp(4, &[(1, 3), (2, 4)]).crossings(), 1);
        assert_eq!(lp(4, &[(1, 2), (3, 4)]).crossings(), 0);
        assert_eq!(maximal_pattern(6).crossings(), 3);
    }

    #[test]
    fn maximal_pattern_examples() {
        assert_eq!(maximal_pattern(4), lp(4, &[(1, 3), (2, 4)]));
        assert_eq!(maximal_pattern(2), lp(2, &[(1, 2)]));
        assert_eq!(maximal_pattern(3), lp(3, &[(1, 2)]));
    }

    #[test]
    fn rank_table_examples() {
        let pi0 = maximal_pattern(4);
        let t = pi0.rank_table();
        assert_eq!(t.get_ij(1, 2), 0);
        assert_eq!(t.get_ij(1, 3), 1);
        assert_eq!(lp(4, &[(1, 2), (3, 4)]).rank_table().get_ij(1, 2), 1);
        assert_eq!(t.get(1, 3), 2);
    }

    #[test]
    fn essential_set_examples() {
        assert!(enumerate(2)[0].essential_set().is_empty());
        let ess = maximal_pattern(4).essential_set();
        let expected: Vec<StripPos> = (1..=4).map(|row| StripPos { row, offset: 1 }).collect();
        assert_eq!(ess, expected);
        let t = maximal_pattern(4).rank_table();
        assert!(ess.iter().all(|p| t.get(p.row, p.offset) == 0));
    }

    #[test]
    fn sector_examples() {
        assert!(lp(4, &[(1, 3), (2, 4)]).in_permutation_sector());
        assert!(!lp(4, &[(1, 2), (3, 4)]).in_permutation_sector());
        assert!(lp(3, &[(1, 3)]).in_permutation_sector());
    }

    #[test]
    fn remove_small_chord_relabels() {
        let p = lp(6, &[(1, 4), (2, 3), (5, 6)]);
        assert_eq!(p.remove_small_chord(2).unwrap(), lp(4, &[(1, 2), (3, 4)]));
        assert_eq!(p.remove_small_chord(5).unwrap(), lp(4, &[(1, 4), (2, 3)]));
        assert!(p.remove_small_chord(1).is_err());
        // cyclic chord between N and 1
        let q = lp(4, &[(1, 4), (2, 3)]);
        assert_eq!(q.remove_small_chord(4).unwrap(), lp(2, &[(1, 2)]));
    }

    #[test]
    fn serde_as_pairing_array() {
        let p = lp(4, &[(1, 3), (2, 4)]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[3,4,1,2]");
        let back: LinkPattern = serde_json::from_str("[3,4,1,2]").unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<LinkPattern>("[1,2]").is_err());
    }
}
