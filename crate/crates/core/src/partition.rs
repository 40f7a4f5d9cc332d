//! Partitions, nodes and residues.
//!
//! A partition is stored as its nonzero parts, largest first; the empty
//! partition is the empty vector. Rows and columns of nodes are 1-based.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Node {
    pub row: usize,
    pub col: usize,
}

impl Node {
    pub fn new(row: usize, col: usize) -> Self {
        debug_assert!(row >= 1 && col >= 1);
        Node { row, col }
    }

    /// `(col - row) mod p`.
    pub fn residue(&self, p: usize) -> usize {
        residue_of(self.col as i64 - self.row as i64, p)
    }

    /// Shift by `(dr, dc)`, if the result is still a node.
    pub fn offset(&self, dr: i64, dc: i64) -> Option<Node> {
        let r = self.row as i64 + dr;
        let c = self.col as i64 + dc;
        (r >= 1 && c >= 1).then(|| Node::new(r as usize, c as usize))
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

pub fn residue_of(x: i64, p: usize) -> usize {
    x.rem_euclid(p as i64) as usize
}

/// Number of nodes of each residue, indexed by residue.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResidueContent {
    pub counts: Vec<usize>,
}

impl ResidueContent {
    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn get(&self, i: usize) -> usize {
        self.counts[i % self.counts.len()]
    }
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParts(parts));
        }
        Ok(Partition(parts))
    }

    /// Build from parts in any order, dropping zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn height(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The `k`-th part (1-based), zero past the last row.
    pub fn part(&self, k: usize) -> usize {
        if k == 0 {
            return usize::MAX;
        }
        self.0.get(k - 1).copied().unwrap_or(0)
    }

    pub fn contains(&self, node: Node) -> bool {
        self.part(node.row) >= node.col
    }

    pub fn nodes(&self) -> impl Iterator<Item = Node> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |c| Node::new(i + 1, c)))
    }

    pub fn transpose(&self) -> Partition {
        let width = self.part(1);
        let cols = (1..=width)
            .map(|c| self.0.iter().take_while(|&&x| x >= c).count())
            .collect();
        Partition(cols)
    }

    /// Dominance order `self ⊵ other`.
    pub fn dominates(&self, other: &Partition) -> Result<bool> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch(self.size(), other.size()));
        }
        let (mut a, mut b) = (0usize, 0usize);
        for k in 1..=self.height().max(other.height()) {
            a += self.part(k);
            b += other.part(k);
            if a < b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// No part value occurs `p` or more times.
    pub fn is_p_regular(&self, p: usize) -> bool {
        self.0.windows(p).all(|w| w[0] != w[p - 1])
    }

    /// Consecutive differences (including the last part) are below `p`.
    pub fn is_p_restricted(&self, p: usize) -> bool {
        (1..=self.height()).all(|k| self.part(k) - self.part(k + 1) < p)
    }

    pub fn content(&self, p: usize) -> ResidueContent {
        let mut counts = vec![0; p];
        for n in self.nodes() {
            counts[n.residue(p)] += 1;
        }
        ResidueContent { counts }
    }

    /// Removable nodes, top to bottom.
    pub fn removable_nodes(&self) -> Vec<Node> {
        (1..=self.height())
            .filter(|&k| self.part(k) > self.part(k + 1))
            .map(|k| Node::new(k, self.part(k)))
            .collect()
    }

    /// Addable nodes, top to bottom.
    pub fn addable_nodes(&self) -> Vec<Node> {
        (1..=self.height() + 1)
            .filter(|&k| k == 1 || self.part(k - 1) > self.part(k))
            .map(|k| Node::new(k, self.part(k) + 1))
            .collect()
    }

    pub fn is_removable(&self, node: Node) -> bool {
        self.part(node.row) == node.col && self.part(node.row + 1) < node.col
    }

    pub fn is_addable(&self, node: Node) -> bool {
        self.part(node.row) + 1 == node.col && self.part(node.row - 1) >= node.col
    }

    /// Remove a set of nodes, each removable in the result of removing the others.
    pub fn remove_nodes(&self, nodes: &[Node]) -> Option<Partition> {
        let mut parts = self.0.clone();
        for n in nodes {
            if n.row > parts.len() || parts[n.row - 1] != n.col {
                return None;
            }
            parts[n.row - 1] -= 1;
        }
        Partition::new(parts).ok()
    }

    pub fn add_nodes(&self, nodes: &[Node]) -> Option<Partition> {
        let mut parts = self.0.clone();
        for n in nodes {
            if n.row > parts.len() + 1 {
                return None;
            }
            if n.row == parts.len() + 1 {
                parts.push(0);
            }
            if parts[n.row - 1] + 1 != n.col {
                return None;
            }
            parts[n.row - 1] += 1;
        }
        Partition::new(parts).ok()
    }

    pub fn remove_node(&self, node: Node) -> Option<Partition> {
        self.remove_nodes(&[node])
    }

    pub fn add_node(&self, node: Node) -> Option<Partition> {
        self.add_nodes(&[node])
    }

    /// Compact text form: `4,2^3,1`, or `-` for the empty partition.
    pub fn to_text(&self) -> String {
        if self.is_empty() {
            return "-".to_string();
        }
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let v = self.0[i];
            let j = i + self.0[i..].iter().take_while(|&&x| x == v).count();
            if j - i > 1 {
                out.push(format!("{}^{}", v, j - i));
            } else {
                out.push(v.to_string());
            }
            i = j;
        }
        out.join(",")
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", inner.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `4,2^3,1`, `(4,2,2,2,1)`, `[4,2,2,2,1]`, and `-` or `∅` for the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .or_else(|| t.strip_prefix('[').and_then(|x| x.strip_suffix(']')))
            .unwrap_or(t)
            .trim();
        if t.is_empty() || t == "-" || t == "∅" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in t.split(',') {
            let tok = tok.trim();
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim()),
                None => (tok, "1"),
            };
            let v: usize = base
                .parse()
                .map_err(|_| Error::Parse(format!("bad part {tok:?} in {s:?}")))?;
            let k: usize = exp
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?;
            parts.extend(std::iter::repeat_n(v, k));
        }
        Partition::new(parts).map_err(|e| Error::Parse(format!("{s:?}: {e}")))
    }
}

/// Convenience constructor for literals; panics on invalid input.
#[macro_export]
macro_rules! part {
    () => { $crate::Partition::empty() };
    ($($x:expr),+ $(,)?) => { $crate::Partition::new(vec![$($x),+]).expect("valid partition") };
}

/// All partitions of `n`, in reverse lexicographic order starting at `(n)`.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for v in (1..=rem.min(max)).rev() {
            cur.push(v);
            rec(rem - v, v, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}

pub fn regular_partitions_of(n: usize, p: usize) -> Vec<Partition> {
    partitions_of(n)
        .into_iter()
        .filter(|l| l.is_p_regular(p))
        .collect()
}

pub fn is_prime(p: usize) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}
