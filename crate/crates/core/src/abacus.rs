//! Abacus displays: beta-sets on `p` runners, cores, quotients and weights.
//!
//! Position `x` sits on runner `x mod p` in row `x div p`. A display with `N`
//! beads encodes the partition with beta-numbers `λ_i + N - i`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{residue_of, Node, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDisplay")]
pub struct AbacusDisplay {
    p: usize,
    beads: usize,
    /// Strictly decreasing.
    occupied: Vec<usize>,
}

#[derive(Deserialize)]
struct RawDisplay {
    p: usize,
    beads: usize,
    occupied: Vec<usize>,
}

impl TryFrom<RawDisplay> for AbacusDisplay {
    type Error = Error;
    fn try_from(raw: RawDisplay) -> Result<Self> {
        let d = AbacusDisplay::from_positions(raw.p, raw.occupied)?;
        if d.beads != raw.beads {
            return Err(Error::InvalidAbacus(format!(
                "bead count {} does not match {} occupied positions",
                raw.beads, d.beads
            )));
        }
        Ok(d)
    }
}

/// Per-runner data of a display.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunnerInfo {
    pub runner: usize,
    pub beads: usize,
    pub quotient: Partition,
    pub weight: usize,
    /// Residue of the nodes added or removed by moving beads on this runner.
    pub residue: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunnerStats {
    pub p: usize,
    pub beads: usize,
    pub runners: Vec<RunnerInfo>,
}

impl RunnerStats {
    pub fn weight(&self) -> usize {
        self.runners.iter().map(|r| r.weight).sum()
    }

    pub fn quotient(&self) -> Vec<Partition> {
        self.runners.iter().map(|r| r.quotient.clone()).collect()
    }

    pub fn bead_counts(&self) -> Vec<usize> {
        self.runners.iter().map(|r| r.beads).collect()
    }
}

/// Partition encoded by the bead rows `{c - k + μ_k : k = 1..c}` of a runner.
/// Returns the rows in decreasing order; `c` must be at least `h(μ)`.
pub fn runner_rows(mu: &Partition, c: usize) -> Vec<usize> {
    debug_assert!(c >= mu.height());
    (1..=c).map(|k| c - k + mu.part(k)).collect()
}

/// Inverse of [`runner_rows`]: rows in decreasing order.
pub fn runner_partition(rows: &[usize]) -> Partition {
    let r = rows.len();
    Partition::from_unsorted(
        rows.iter()
            .enumerate()
            .map(|(k, &b)| b - (r - 1 - k))
            .collect(),
    )
}

impl AbacusDisplay {
    /// Display of `λ` with `beads` beads, adding `p` beads at a time until position 0 is occupied.
    pub fn new(lambda: &Partition, p: usize, beads: usize) -> Result<Self> {
        if beads < lambda.height() {
            return Err(Error::TooFewBeads {
                beads,
                height: lambda.height(),
            });
        }
        let mut n = beads;
        while n == lambda.height() {
            n += p;
        }
        let occupied = (1..=n).map(|i| lambda.part(i) + n - i).collect();
        Ok(AbacusDisplay {
            p,
            beads: n,
            occupied,
        })
    }

    /// Display of `λ` with exactly `beads` beads, even if position 0 ends up empty.
    pub fn exact(lambda: &Partition, p: usize, beads: usize) -> Result<Self> {
        if beads < lambda.height() {
            return Err(Error::TooFewBeads {
                beads,
                height: lambda.height(),
            });
        }
        let occupied = (1..=beads).map(|i| lambda.part(i) + beads - i).collect();
        Ok(AbacusDisplay { p, beads, occupied })
    }

    /// Display with the fewest beads that has position 0 occupied.
    pub fn canonical(lambda: &Partition, p: usize) -> Self {
        Self::new(lambda, p, lambda.height()).expect("height beads always suffice")
    }

    /// Raw beta-set, kept exactly as given.
    pub fn from_positions(p: usize, mut positions: Vec<usize>) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidAbacus(format!(
                "need at least 2 runners, got {p}"
            )));
        }
        positions.sort_unstable_by(|a, b| b.cmp(a));
        if positions.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidAbacus("repeated position".into()));
        }
        Ok(AbacusDisplay {
            p,
            beads: positions.len(),
            occupied: positions,
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn beads(&self) -> usize {
        self.beads
    }

    /// Occupied positions, largest first.
    pub fn occupied(&self) -> &[usize] {
        &self.occupied
    }

    pub fn is_occupied(&self, x: usize) -> bool {
        self.occupied.binary_search_by(|y| x.cmp(y)).is_ok()
    }

    fn is_occupied_signed(&self, x: i64) -> bool {
        // Positions below zero behave as occupied.
        x < 0 || self.is_occupied(x as usize)
    }

    pub fn max_position(&self) -> Option<usize> {
        self.occupied.first().copied()
    }

    pub fn partition(&self) -> Partition {
        let n = self.beads;
        Partition::from_unsorted(
            self.occupied
                .iter()
                .enumerate()
                .map(|(i, &b)| b.saturating_sub(n - 1 - i))
                .collect(),
        )
    }

    /// Add `k` beads at the bottom, shifting every bead up by `k` positions.
    pub fn with_extra_beads(&self, k: usize) -> Self {
        let mut occupied: Vec<usize> = self.occupied.iter().map(|x| x + k).collect();
        occupied.extend((0..k).rev());
        AbacusDisplay {
            p: self.p,
            beads: self.beads + k,
            occupied,
        }
    }

    /// Add `p` beads until position 0 is occupied.
    pub fn normalized(&self) -> Self {
        if self.is_occupied(0) {
            self.clone()
        } else {
            self.with_extra_beads(self.p).normalized()
        }
    }

    /// Rows occupied on runner `j`, largest first.
    pub fn runner(&self, j: usize) -> Vec<usize> {
        self.occupied
            .iter()
            .filter(|&&x| x % self.p == j)
            .map(|&x| x / self.p)
            .collect()
    }

    pub fn bead_count(&self, j: usize) -> usize {
        self.occupied.iter().filter(|&&x| x % self.p == j).count()
    }

    /// Residue `(j - N) mod p` of nodes moved on runner `j`.
    pub fn runner_residue(&self, j: usize) -> usize {
        residue_of(j as i64 - self.beads as i64, self.p)
    }

    pub fn quotient(&self) -> RunnerStats {
        let runners = (0..self.p)
            .map(|j| {
                let rows = self.runner(j);
                let quotient = runner_partition(&rows);
                RunnerInfo {
                    runner: j,
                    beads: rows.len(),
                    weight: quotient.size(),
                    quotient,
                    residue: self.runner_residue(j),
                }
            })
            .collect();
        RunnerStats {
            p: self.p,
            beads: self.beads,
            runners,
        }
    }

    /// Display with every bead pushed as far up its runner as possible.
    pub fn core_display(&self) -> Self {
        let mut occupied = Vec::with_capacity(self.beads);
        for j in 0..self.p {
            occupied.extend((0..self.bead_count(j)).map(|row| row * self.p + j));
        }
        AbacusDisplay::from_positions(self.p, occupied).expect("distinct positions")
    }

    /// No empty position followed by `p` occupied ones.
    pub fn is_p_regular(&self) -> bool {
        let top = self.max_position().unwrap_or(0) as i64;
        !(-1..=top).any(|r| {
            !self.is_occupied_signed(r)
                && (r + 1..=r + self.p as i64).all(|x| self.is_occupied_signed(x))
        })
    }

    /// Occupied positions `k` with `k - 1` empty, increasing.
    pub fn removable_positions(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .occupied
            .iter()
            .copied()
            .filter(|&k| k > 0 && !self.is_occupied(k - 1))
            .collect();
        out.reverse();
        out
    }

    /// Empty positions `k` with `k - 1` occupied, increasing.
    pub fn addable_positions(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .occupied
            .iter()
            .map(|&k| k + 1)
            .filter(|&k| !self.is_occupied(k))
            .collect();
        out.reverse();
        out
    }

    /// Node removed by moving the bead at removable position `k` down one place.
    pub fn node_of_removable(&self, k: usize) -> Option<Node> {
        let i = self.occupied.iter().position(|&x| x == k)?;
        if k == 0 || self.is_occupied(k - 1) {
            return None;
        }
        let row = i + 1;
        Some(Node::new(row, k - (self.beads - row)))
    }

    /// Node added by moving the bead at `k - 1` to the empty position `k`.
    pub fn node_of_addable(&self, k: usize) -> Option<Node> {
        if k == 0 || self.is_occupied(k) {
            return None;
        }
        let i = self.occupied.iter().position(|&x| x == k - 1)?;
        let row = i + 1;
        Some(Node::new(row, k - (self.beads - row)))
    }

    pub fn position_of_removable(&self, node: Node) -> Option<usize> {
        let k = *self.occupied.get(node.row - 1)?;
        (self.node_of_removable(k) == Some(node)).then_some(k)
    }

    pub fn position_of_addable(&self, node: Node) -> Option<usize> {
        let k = *self.occupied.get(node.row - 1)? + 1;
        (self.node_of_addable(k) == Some(node)).then_some(k)
    }

    /// Rotate through 180 degrees inside the smallest window `[0, W)` with
    /// `W ≡ 0 mod p` and `W ≥ max position + 2`; the result encodes the transpose.
    pub fn transpose_display(&self) -> Self {
        let need = self.max_position().map_or(0, |m| m + 2).max(self.beads);
        let w = need.div_ceil(self.p).max(1) * self.p;
        self.transpose_display_in(w)
            .expect("window is large enough")
    }

    /// Complement-and-reverse inside `[0, window)`.
    pub fn transpose_display_in(&self, window: usize) -> Result<Self> {
        if !window.is_multiple_of(self.p) || self.max_position().is_some_and(|m| m >= window) {
            return Err(Error::InvalidAbacus(format!(
                "window {window} must be a multiple of {} containing every bead",
                self.p
            )));
        }
        let occupied = (0..window)
            .filter(|&x| !self.is_occupied(x))
            .map(|x| window - 1 - x)
            .collect();
        AbacusDisplay::from_positions(self.p, occupied)
    }
}

impl fmt::Display for AbacusDisplay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top = self.max_position().unwrap_or(0) / self.p;
        for row in 0..=top {
            let line: String = (0..self.p)
                .map(|j| {
                    if self.is_occupied(row * self.p + j) {
                        '●'
                    } else {
                        '·'
                    }
                })
                .collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// `(core, weight)` of `λ`.
pub fn core_and_weight(lambda: &Partition, p: usize) -> (Partition, usize) {
    let d = AbacusDisplay::canonical(lambda, p);
    let weight = d.quotient().weight();
    (d.core_display().partition(), weight)
}

pub fn weight(lambda: &Partition, p: usize) -> usize {
    AbacusDisplay::canonical(lambda, p).quotient().weight()
}

pub fn is_core(lambda: &Partition, p: usize) -> bool {
    weight(lambda, p) == 0
}

/// A partition and a bead-count offset for each runner, relative to a common base.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RunnerConfig {
    pub runners: Vec<(Partition, i64)>,
}

impl RunnerConfig {
    pub fn new(runners: Vec<(Partition, i64)>) -> Self {
        RunnerConfig { runners }
    }

    /// Read off a display, with offsets relative to the smallest bead count.
    pub fn from_display(d: &AbacusDisplay) -> Self {
        let stats = d.quotient();
        let min = stats.runners.iter().map(|r| r.beads).min().unwrap_or(0) as i64;
        RunnerConfig {
            runners: stats
                .runners
                .into_iter()
                .map(|r| (r.quotient, r.beads as i64 - min))
                .collect(),
        }
    }

    pub fn weight(&self) -> usize {
        self.runners.iter().map(|(m, _)| m.size()).sum()
    }

    /// Smallest base making every runner's bead count at least the height of its partition.
    pub fn min_base(&self) -> i64 {
        self.runners
            .iter()
            .map(|(m, off)| m.height() as i64 - off)
            .max()
            .unwrap_or(0)
            .max(0)
    }

    /// Display with bead count `base + offset` on each runner.
    pub fn display_with_base(&self, p: usize, base: i64) -> Result<AbacusDisplay> {
        if self.runners.len() != p {
            return Err(Error::Precondition(format!(
                "configuration has {} runners, expected {p}",
                self.runners.len()
            )));
        }
        let mut occupied = Vec::new();
        for (j, (mu, off)) in self.runners.iter().enumerate() {
            let c = base + off;
            if c < mu.height() as i64 {
                return Err(Error::NegativeBeadCount { runner: j });
            }
            occupied.extend(
                runner_rows(mu, c as usize)
                    .into_iter()
                    .map(|row| row * p + j),
            );
        }
        AbacusDisplay::from_positions(p, occupied)
    }

    pub fn decode_with_base(&self, p: usize, base: i64) -> Result<Partition> {
        Ok(self.display_with_base(p, base)?.partition())
    }

    pub fn decode(&self, p: usize) -> Result<Partition> {
        self.decode_with_base(p, self.min_base())
    }
}

/// Decode a configuration, padding with full rows as needed.
pub fn decode_config(cfg: &RunnerConfig, p: usize) -> Result<Partition> {
    cfg.decode(p)
}

impl fmt::Display for RunnerConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .runners
            .iter()
            .map(|(m, off)| {
                let m = if m.is_empty() {
                    "-".to_string()
                } else {
                    format!("({})", m.to_text())
                };
                format!("({m},{off})")
            })
            .collect();
        write!(f, "({})", items.join(","))
    }
}

impl FromStr for RunnerConfig {
    type Err = Error;

    /// Parses `((-,0),((1^2),1),(-,2)^3)`: a partition (or `-`) and an
    /// offset per runner, with `^k` repeating the preceding runner.
    fn from_str(s: &str) -> Result<Self> {
        let err = |m: &str| Error::Parse(format!("runner configuration {s:?}: {m}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| err("expected outer parentheses"))?;
        let chars: Vec<char> = body.chars().collect();
        let mut runners = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            if chars[i] != '(' {
                return Err(err("expected '('"));
            }
            let mut depth = 0;
            let start = i;
            while i < chars.len() {
                match chars[i] {
                    '(' => depth += 1,
                    ')' => {
                        depth -= 1;
                        if depth == 0 {
                            break;
                        }
                    }
                    _ => {}
                }
                i += 1;
            }
            if i == chars.len() {
                return Err(err("unbalanced parentheses"));
            }
            let item: String = chars[start + 1..i].iter().collect();
            i += 1;
            let (mu, off) = item
                .rsplit_once(',')
                .ok_or_else(|| err("expected (partition,offset)"))?;
            let mu: Partition = mu.parse()?;
            let off: i64 = off.parse().map_err(|_| err("bad offset"))?;
            let mut reps = 1;
            if i < chars.len() && chars[i] == '^' {
                let j = i + 1;
                let mut k = j;
                while k < chars.len() && chars[k].is_ascii_digit() {
                    k += 1;
                }
                reps = chars[j..k]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| err("bad repetition"))?;
                i = k;
            }
            for _ in 0..reps {
                runners.push((mu.clone(), off));
            }
            if i < chars.len() {
                if chars[i] != ',' {
                    return Err(err("expected ','"));
                }
                i += 1;
            }
        }
        Ok(RunnerConfig { runners })
    }
}
