//! Difficulty on two or three adjacent runners, and exhaustive derivation of
//! the tables of locally difficult runner configurations.
//!
//! A runner pair is described by the quotient partitions on runners `j-1` and
//! `j` and the difference `g` of their bead counts. Rows are counted relative
//! to the left runner: the left runner holds beads in rows `μ_k - k` and the
//! right runner in rows `g + μ_k - k` (`k ≥ 1`). Removable nodes of residue
//! `i_j` are beads on the right runner facing a gap on the left, and addable
//! ones are beads on the left runner facing a gap on the right.

use std::cmp::Reverse;
use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abacus::{runner_rows, AbacusDisplay};
use crate::error::{Error, Result};
use crate::partition::{partitions_of, Partition};
use crate::signatures::{is_difficult, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RunnerPairConfig {
    pub left: Partition,
    pub right: Partition,
    /// Bead count of the right runner minus that of the left runner.
    pub gap: usize,
}

impl RunnerPairConfig {
    pub fn new(left: Partition, right: Partition, gap: usize) -> Self {
        RunnerPairConfig { left, right, gap }
    }

    pub fn weight(&self) -> usize {
        self.left.size() + self.right.size()
    }

    fn sort_key(&self) -> impl Ord + '_ {
        (
            self.weight(),
            Reverse(self.gap),
            Reverse(self.left.size()),
            Reverse(&self.left),
            Reverse(&self.right),
        )
    }
}

impl fmt::Display for RunnerPairConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            self.left.to_text(),
            self.right.to_text(),
            self.gap
        )
    }
}

/// Occupied rows of a runner with quotient `mu` and `charge` beads above the reference, from row `lo` up.
fn rows_from(mu: &Partition, charge: i64, lo: i64) -> BTreeSet<i64> {
    let depth = (charge - lo).max(0) as usize + 1;
    (1..=depth.max(mu.height()))
        .map(|k| charge + mu.part(k) as i64 - k as i64)
        .filter(|&r| r >= lo)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalSignature {
    /// `(row, sign)` in increasing row order.
    pub signs: Vec<(i64, Sign)>,
    pub reduced: Vec<(i64, Sign)>,
    pub eps: usize,
    pub phi: usize,
    /// Row of the lowest surviving `-`.
    pub good_row: Option<i64>,
    /// Row of the highest surviving `+`.
    pub cogood_row: Option<i64>,
}

impl LocalSignature {
    pub fn word(&self) -> String {
        self.signs.iter().map(|s| s.1.symbol()).collect()
    }

    pub fn reduced_word(&self) -> String {
        self.reduced.iter().map(|s| s.1.symbol()).collect()
    }
}

fn signature_of_rows(left: &BTreeSet<i64>, right: &BTreeSet<i64>) -> LocalSignature {
    let mut signs = Vec::new();
    for &t in left.union(right) {
        match (left.contains(&t), right.contains(&t)) {
            (false, true) => signs.push((t, Sign::Minus)),
            (true, false) => signs.push((t, Sign::Plus)),
            _ => {}
        }
    }
    let mut reduced: Vec<(i64, Sign)> = Vec::new();
    for &s in &signs {
        if s.1 == Sign::Plus && reduced.last().is_some_and(|t| t.1 == Sign::Minus) {
            reduced.pop();
        } else {
            reduced.push(s);
        }
    }
    let eps = reduced.iter().filter(|s| s.1 == Sign::Minus).count();
    LocalSignature {
        good_row: reduced.iter().find(|s| s.1 == Sign::Minus).map(|s| s.0),
        cogood_row: reduced
            .iter()
            .rev()
            .find(|s| s.1 == Sign::Plus)
            .map(|s| s.0),
        phi: reduced.len() - eps,
        eps,
        signs,
        reduced,
    }
}

fn lowest_row(pair: &RunnerPairConfig) -> i64 {
    -(pair.left.height().max(pair.right.height()) as i64) - 1
}

/// The `i_j`-signature seen by the two runners alone.
pub fn local_signature(pair: &RunnerPairConfig) -> LocalSignature {
    let lo = lowest_row(pair);
    let left = rows_from(&pair.left, 0, lo);
    let right = rows_from(&pair.right, pair.gap as i64, lo);
    signature_of_rows(&left, &right)
}

/// `ε, φ > 0` and the good node's row sits directly above the cogood node's
/// row. Beads on other runners between the two positions are not constrained here.
pub fn locally_difficult(pair: &RunnerPairConfig) -> Result<bool> {
    if pair.gap == 0 || pair.gap >= pair.weight() {
        return Err(Error::Precondition(format!(
            "gap must lie in 1..{}, got {}",
            pair.weight(),
            pair.gap
        )));
    }
    Ok(locally_difficult_unchecked(pair))
}

fn locally_difficult_unchecked(pair: &RunnerPairConfig) -> bool {
    let s = local_signature(pair);
    matches!((s.good_row, s.cogood_row), (Some(a), Some(b)) if a == b + 1)
}

/// Every locally difficult pair of weight `2..=max_weight`, sorted by weight,
/// then gap (largest first), then left and right quotients (largest first).
pub fn derive_table1(max_weight: usize) -> Vec<RunnerPairConfig> {
    let mut jobs = Vec::new();
    for w in 2..=max_weight {
        for wl in 0..=w {
            for left in partitions_of(wl) {
                for right in partitions_of(w - wl) {
                    jobs.push((left.clone(), right));
                }
            }
        }
    }
    let mut rows: Vec<RunnerPairConfig> = jobs
        .into_par_iter()
        .flat_map_iter(|(left, right)| {
            let w = left.size() + right.size();
            (1..w)
                .map(move |g| RunnerPairConfig::new(left.clone(), right.clone(), g))
                .filter(locally_difficult_unchecked)
        })
        .collect();
    rows.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    rows
}

/// Labels `B_w^k` in table order: `k` counts rows of weight `w`.
pub fn table1_labels(rows: &[RunnerPairConfig]) -> Vec<String> {
    let mut out = Vec::with_capacity(rows.len());
    let mut seen = std::collections::HashMap::new();
    for r in rows {
        let k = seen.entry(r.weight()).or_insert(0);
        *k += 1;
        out.push(format!("B{}^{}", r.weight(), k));
    }
    out
}

/// Three adjacent runners `j-2, j-1, j` with strictly increasing bead counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RunnerTripleConfig {
    pub left: Partition,
    pub middle: Partition,
    pub right: Partition,
    /// Bead count of the middle runner minus that of the left runner.
    pub gap_middle: usize,
    /// Bead count of the right runner minus that of the left runner.
    pub gap_right: usize,
}

impl RunnerTripleConfig {
    pub fn weight(&self) -> usize {
        self.left.size() + self.middle.size() + self.right.size()
    }

    pub fn lower_pair(&self) -> RunnerPairConfig {
        RunnerPairConfig::new(self.left.clone(), self.middle.clone(), self.gap_middle)
    }

    pub fn upper_pair(&self) -> RunnerPairConfig {
        RunnerPairConfig::new(
            self.middle.clone(),
            self.right.clone(),
            self.gap_right - self.gap_middle,
        )
    }

    /// Each pair's difficulty window is filled where it crosses the third
    /// runner: the good row of the upper pair is occupied on the left runner,
    /// and the row below the good row of the lower pair is occupied on the right runner.
    /// Rows of the upper pair are measured from the middle runner.
    pub fn cross_occupancy_holds(&self) -> bool {
        let (Some(t), Some(s)) = (
            local_signature(&self.upper_pair()).good_row,
            local_signature(&self.lower_pair()).good_row,
        ) else {
            return false;
        };
        let t = t + self.gap_middle as i64;
        let lo = t.min(s) - 2;
        let left = rows_from(&self.left, 0, lo);
        let right = rows_from(&self.right, self.gap_right as i64, lo);
        left.contains(&t) && right.contains(&(s - 1))
    }
}

impl fmt::Display for RunnerTripleConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {}, {})",
            self.left.to_text(),
            self.middle.to_text(),
            self.right.to_text(),
            self.gap_middle,
            self.gap_right
        )
    }
}

/// Triples whose two overlapping pairs both appear in `table1` with total weight at most `max_weight`.
pub fn table2_candidates(
    table1: &[RunnerPairConfig],
    max_weight: usize,
) -> Vec<(RunnerPairConfig, RunnerPairConfig)> {
    let mut out = Vec::new();
    for lower in table1 {
        for upper in table1 {
            if lower.right == upper.left && lower.weight() + upper.right.size() <= max_weight {
                out.push((lower.clone(), upper.clone()));
            }
        }
    }
    out
}

/// Every runner triple with both pairs locally difficult, total weight at most
/// `max_weight`, and the cross-runner occupancy satisfied.
pub fn derive_table2_with(max_weight: usize) -> Vec<RunnerTripleConfig> {
    let table1 = derive_table1(max_weight);
    let mut rows: Vec<RunnerTripleConfig> = table2_candidates(&table1, max_weight)
        .into_iter()
        .map(|(lower, upper)| RunnerTripleConfig {
            left: lower.left,
            middle: lower.right,
            right: upper.right,
            gap_middle: lower.gap,
            gap_right: lower.gap + upper.gap,
        })
        .filter(RunnerTripleConfig::cross_occupancy_holds)
        .collect();
    rows.sort_by(|a, b| {
        (a.weight(), &a.left, &a.middle, &a.right).cmp(&(b.weight(), &b.left, &b.middle, &b.right))
    });
    rows
}

pub fn derive_table2() -> Vec<RunnerTripleConfig> {
    derive_table2_with(7)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Row {
    pub label: String,
    #[serde(flatten)]
    pub config: RunnerPairConfig,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table2Row {
    pub label: String,
    #[serde(flatten)]
    pub config: RunnerTripleConfig,
}

pub fn golden_table1() -> Vec<Table1Row> {
    serde_json::from_str(include_str!("../../../data/table1.json")).expect("shipped table parses")
}

pub fn golden_table2() -> Vec<Table2Row> {
    serde_json::from_str(include_str!("../../../data/table2.json")).expect("shipped table parses")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableComparison<T> {
    pub matched: usize,
    pub expected: usize,
    pub derived: usize,
    /// In the expected table but not derived.
    pub missing: Vec<T>,
    /// Derived but not in the expected table.
    pub extra: Vec<T>,
}

impl<T> TableComparison<T> {
    pub fn is_match(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

/// Multiset comparison.
pub fn compare<T: Ord + Clone>(derived: &[T], expected: &[T]) -> TableComparison<T> {
    let mut d: Vec<T> = derived.to_vec();
    let mut e: Vec<T> = expected.to_vec();
    d.sort();
    e.sort();
    let (mut i, mut j) = (0, 0);
    let (mut missing, mut extra, mut matched) = (Vec::new(), Vec::new(), 0);
    while i < d.len() || j < e.len() {
        match (d.get(i), e.get(j)) {
            (Some(x), Some(y)) if x == y => {
                matched += 1;
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                extra.push(x.clone());
                i += 1;
            }
            (Some(x), None) => {
                extra.push(x.clone());
                i += 1;
            }
            (_, Some(y)) => {
                missing.push(y.clone());
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    TableComparison {
        matched,
        expected: expected.len(),
        derived: derived.len(),
        missing,
        extra,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TablesReport {
    pub max_weight: usize,
    pub table1: TableComparison<RunnerPairConfig>,
    pub table2: TableComparison<RunnerTripleConfig>,
}

impl TablesReport {
    pub fn is_match(&self) -> bool {
        self.table1.is_match() && self.table2.is_match()
    }

    pub fn summary(&self) -> String {
        format!(
            "Table I: {}/{} match; Table II: {}/{} match",
            self.table1.matched, self.table1.expected, self.table2.matched, self.table2.expected
        )
    }
}

/// Derive both tables up to `max_weight` and compare with the shipped rows of that weight.
pub fn verify_tables(max_weight: usize) -> TablesReport {
    verify_tables_with(max_weight, &golden_table1(), &golden_table2())
}

/// As [`verify_tables`], against the given expected rows.
pub fn verify_tables_with(
    max_weight: usize,
    table1: &[Table1Row],
    table2: &[Table2Row],
) -> TablesReport {
    let t1 = derive_table1(max_weight);
    let g1: Vec<RunnerPairConfig> = table1
        .iter()
        .map(|r| r.config.clone())
        .filter(|c| c.weight() <= max_weight)
        .collect();
    let t2 = derive_table2_with(max_weight);
    let g2: Vec<RunnerTripleConfig> = table2
        .iter()
        .map(|r| r.config.clone())
        .filter(|c| c.weight() <= max_weight)
        .collect();
    TablesReport {
        max_weight,
        table1: compare(&t1, &g1),
        table2: compare(&t2, &g2),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realization {
    pub partition: Partition,
    pub display: AbacusDisplay,
    /// Index of the rightmost runner of the configuration.
    pub runner: usize,
    /// Residues at which the partition was checked to be difficult.
    pub residues: Vec<usize>,
}

/// Full display with the given quotients on runners `j - q.len() + 1 ..= j`,
/// empty runners elsewhere, and at least `need[l]` beads on runner `l`.
/// Also returns the row offset applied to every runner.
fn embed(
    quotients: &[(Partition, i64)],
    j: usize,
    p: usize,
    need: &[i64],
) -> Option<(AbacusDisplay, i64)> {
    let first = j + 1 - quotients.len();
    let mut counts: Vec<(Partition, i64)> = (0..p)
        .map(|l| {
            if (first..=j).contains(&l) {
                quotients[l - first].clone()
            } else {
                (Partition::empty(), need[l])
            }
        })
        .collect();
    let shift = counts
        .iter()
        .map(|(m, c)| m.height() as i64 - c)
        .max()
        .unwrap_or(0)
        .max(0);
    for c in &mut counts {
        c.1 += shift;
    }
    let mut occupied = Vec::new();
    for (l, (mu, c)) in counts.iter().enumerate() {
        occupied.extend(
            runner_rows(mu, *c as usize)
                .into_iter()
                .map(|row| row * p + l),
        );
    }
    AbacusDisplay::from_positions(p, occupied)
        .ok()
        .map(|d| (d, shift))
}

/// Removes unprotected beads until no `p` consecutive beads follow a gap,
/// i.e. until the partition is `p`-regular.
fn punch_holes(
    display: &AbacusDisplay,
    protected: impl Fn(usize) -> bool,
) -> Option<AbacusDisplay> {
    let p = display.p();
    let mut occ: BTreeSet<usize> = display.occupied().iter().copied().collect();
    loop {
        let top = occ.iter().next_back().copied().unwrap_or(0);
        let run =
            (1..=top).find(|&x| !occ.contains(&(x - 1)) && (x..x + p).all(|y| occ.contains(&y)));
        let Some(x) = run else {
            return AbacusDisplay::from_positions(p, occ.into_iter().collect()).ok();
        };
        let hole = (x..x + p).find(|&y| !protected(y))?;
        occ.remove(&hole);
    }
}

/// Bead demands on the empty runners so the window between the good bead on
/// runner `j` (row `t`) and its target on row `t - 1` is filled.
fn window_needs(j: usize, t: i64, need: &mut [i64]) {
    for (l, n) in need.iter_mut().enumerate() {
        if l + 1 < j {
            *n = (*n).max(t + 1);
        } else if l > j {
            *n = (*n).max(t);
        }
    }
}

fn realize(
    p: usize,
    quotients: &[(Partition, i64)],
    windows: &[(usize, i64)],
    first_runner: usize,
) -> Result<Realization> {
    let span = quotients.len();
    for j in (span - 1).max(first_runner)..p {
        let mut need = vec![i64::MIN / 4; p];
        for &(back, t) in windows {
            window_needs(j - back, t, &mut need);
        }
        for n in need.iter_mut().filter(|n| **n == i64::MIN / 4) {
            *n = 0;
        }
        let Some((display, shift)) = embed(quotients, j, p, &need) else {
            continue;
        };
        let first = j + 1 - span;
        let protected = |x: usize| {
            (first..=j).contains(&(x % p))
                || windows.iter().any(|&(back, t)| {
                    let a = (t + shift) * p as i64 + (j - back) as i64;
                    (a - p as i64..a).contains(&(x as i64))
                })
        };
        let Some(display) = punch_holes(&display, protected) else {
            continue;
        };
        let lambda = display.partition();
        let residues: Vec<usize> = windows
            .iter()
            .map(|&(back, _)| display.runner_residue(j - back))
            .collect();
        if residues
            .iter()
            .all(|&i| is_difficult(&lambda, p, i).unwrap_or(false))
        {
            return Ok(Realization {
                partition: lambda,
                display,
                runner: j,
                residues,
            });
        }
    }
    Err(Error::NoEmbedding(format!(
        "no {p}-abacus realizes the configuration as difficult"
    )))
}

/// A partition whose display carries the pair on two adjacent runners and is
/// difficult at the corresponding residue.
pub fn realize_pair(pair: &RunnerPairConfig, p: usize) -> Result<Realization> {
    if p < 3 {
        return Err(Error::UnsupportedPrime(p));
    }
    let t = local_signature(pair)
        .good_row
        .ok_or_else(|| Error::NoEmbedding(format!("{pair} has no good node")))?;
    let q = [
        (pair.left.clone(), 0),
        (pair.right.clone(), pair.gap as i64),
    ];
    realize(p, &q, &[(0, t)], 1)
}

/// A partition difficult at the residues of both pairs of the triple.
pub fn realize_triple(triple: &RunnerTripleConfig, p: usize) -> Result<Realization> {
    if p < 3 {
        return Err(Error::UnsupportedPrime(p));
    }
    let no_good = || Error::NoEmbedding(format!("{triple} has a pair with no good node"));
    let t = local_signature(&triple.upper_pair())
        .good_row
        .ok_or_else(no_good)?
        + triple.gap_middle as i64;
    let s = local_signature(&triple.lower_pair())
        .good_row
        .ok_or_else(no_good)?;
    let q = [
        (triple.left.clone(), 0),
        (triple.middle.clone(), triple.gap_middle as i64),
        (triple.right.clone(), triple.gap_right as i64),
    ];
    realize(p, &q, &[(0, t), (1, s)], 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;

    #[test]
    fn local_examples() {
        let b21 = RunnerPairConfig::new(Partition::empty(), part![1, 1], 1);
        let s = local_signature(&b21);
        assert!(s.eps > 0 && s.phi > 0);
        assert_eq!(s.good_row.unwrap(), s.cogood_row.unwrap() + 1);
        assert!(locally_difficult(&b21).unwrap());
        assert!(locally_difficult(&RunnerPairConfig::new(part![1], part![1, 1, 1], 1)).unwrap());
        assert!(
            !locally_difficult(&RunnerPairConfig::new(Partition::empty(), part![2], 1)).unwrap()
        );
        assert!(
            locally_difficult(&RunnerPairConfig::new(Partition::empty(), part![2], 2)).is_err()
        );
        let empty = local_signature(&RunnerPairConfig::new(
            Partition::empty(),
            Partition::empty(),
            3,
        ));
        assert_eq!((empty.eps, empty.phi), (3, 0));
    }

    #[test]
    fn small_tables() {
        assert_eq!(
            derive_table1(2),
            vec![RunnerPairConfig::new(Partition::empty(), part![1, 1], 1)]
        );
        assert_eq!(derive_table1(4).len(), 7);
    }

    #[test]
    fn realizations() {
        let b21 = RunnerPairConfig::new(Partition::empty(), part![1, 1], 1);
        let r = realize_pair(&b21, 3).unwrap();
        assert!(is_difficult(&r.partition, 3, r.residues[0]).unwrap());
        let b43 = RunnerPairConfig::new(part![1], part![1, 1, 1], 1);
        realize_pair(&b43, 5).unwrap();
        let c1 = golden_table2().remove(0).config;
        let r = realize_triple(&c1, 3).unwrap();
        assert_eq!(r.residues.len(), 2);
        for &i in &r.residues {
            assert!(is_difficult(&r.partition, 3, i).unwrap());
        }
    }

    #[test]
    fn weight_four_tables_match() {
        let rep = verify_tables(4);
        assert!(rep.is_match(), "{rep:?}");
        assert_eq!(rep.table1.matched, 7);
        assert_eq!(rep.table2.expected, 0);
    }

    #[test]
    fn compare_reports_differences() {
        let c = compare(&[1, 2, 2, 5], &[2, 3, 5, 5]);
        assert_eq!((c.matched, c.missing, c.extra), (2, vec![3, 5], vec![1, 2]));
    }
}
