//! Basis labels and dimensions of the zigzag Schur algebra `T(m, d)` built on
//! the zigzag algebra with `p - 1` vertices.
//!
//! A basis label is a multiset of `d` letters `(z, r, s)`, `z` a basis element
//! of the zigzag algebra and `r, s ∈ 1..=m`. Odd letters (arrows) may not repeat.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Element {
    /// Idempotent at a vertex, degree 0.
    E(usize),
    /// Loop at a vertex, degree 2.
    C(usize),
    /// Arrow between adjacent vertices, degree 1.
    A(usize, usize),
}

impl Element {
    pub fn degree(self) -> usize {
        match self {
            Element::E(_) => 0,
            Element::A(..) => 1,
            Element::C(_) => 2,
        }
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Element::A(..))
    }

    /// Basis of the zigzag algebra on vertices `0..p-1`.
    pub fn basis(p: usize) -> Vec<Element> {
        let v = p - 1;
        let mut out: Vec<Element> = (0..v).map(Element::E).collect();
        out.extend((0..v).map(Element::C));
        for i in 0..v {
            if i > 0 {
                out.push(Element::A(i, i - 1));
            }
            if i + 1 < v {
                out.push(Element::A(i, i + 1));
            }
        }
        out
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::E(j) => write!(f, "e{j}"),
            Element::C(j) => write!(f, "c{j}"),
            Element::A(i, j) => write!(f, "a{i}{j}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub z: Element,
    pub r: usize,
    pub s: usize,
}

/// A sorted word of letters, the canonical representative of its orbit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BasisLabel(pub Vec<Letter>);

impl BasisLabel {
    pub fn new(mut letters: Vec<Letter>) -> Result<Self> {
        letters.sort();
        if letters.windows(2).any(|w| w[0] == w[1] && w[0].z.is_odd()) {
            return Err(Error::Precondition("odd letters cannot repeat".into()));
        }
        Ok(BasisLabel(letters))
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|l| l.z.degree()).sum()
    }

    pub fn odd_count(&self) -> usize {
        self.0.iter().filter(|l| l.z.is_odd()).count()
    }
}

pub fn letters(p: usize, m: usize) -> Vec<Letter> {
    let mut out = Vec::new();
    for z in Element::basis(p) {
        for r in 1..=m {
            for s in 1..=m {
                out.push(Letter { z, r, s });
            }
        }
    }
    out.sort();
    out
}

/// Every basis label of `T(m, d)` whose letters are accepted by `keep`, in sorted order.
pub fn enumerate_labels(
    p: usize,
    m: usize,
    d: usize,
    keep: impl Fn(&Letter) -> bool,
) -> Vec<BasisLabel> {
    let alphabet: Vec<Letter> = letters(p, m).into_iter().filter(|l| keep(l)).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn rec(
        alpha: &[Letter],
        start: usize,
        d: usize,
        cur: &mut Vec<Letter>,
        out: &mut Vec<BasisLabel>,
    ) {
        if cur.len() == d {
            out.push(BasisLabel(cur.clone()));
            return;
        }
        for idx in start..alpha.len() {
            let next = if alpha[idx].z.is_odd() { idx + 1 } else { idx };
            cur.push(alpha[idx]);
            rec(alpha, next, d, cur, out);
            cur.pop();
        }
    }
    rec(&alphabet, 0, d, &mut cur, &mut out);
    out
}

/// Number of basis labels whose letters are accepted by `keep`, by walking
/// every label without storing them.
pub fn count_labels(p: usize, m: usize, d: usize, keep: impl Fn(&Letter) -> bool) -> u128 {
    let alphabet: Vec<Letter> = letters(p, m).into_iter().filter(|l| keep(l)).collect();
    fn rec(alpha: &[Letter], start: usize, left: usize) -> u128 {
        if left == 0 {
            return 1;
        }
        (start..alpha.len())
            .map(|idx| {
                let next = if alpha[idx].z.is_odd() { idx + 1 } else { idx };
                rec(alpha, next, left - 1)
            })
            .sum()
    }
    rec(&alphabet, 0, d)
}

pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Multisets of size `k` from `n` kinds.
fn multichoose(n: u128, k: u128) -> u128 {
    if k == 0 {
        1
    } else {
        binomial(n + k - 1, k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub p: usize,
    pub m: usize,
    pub d: usize,
    pub total: u128,
    /// Count of labels in each total degree `0..=2d`.
    pub by_degree: BTreeMap<usize, u128>,
}

fn require_odd_prime(p: usize) -> Result<()> {
    if p < 3 || !crate::partition::is_prime(p) {
        return Err(Error::UnsupportedPrime(p));
    }
    Ok(())
}

/// Number of basis labels, split by degree.
pub fn basis_dimension(p: usize, m: usize, d: usize) -> Result<DimensionReport> {
    require_odd_prime(p)?;
    let mm = (m * m) as u128;
    let even_kinds = (p as u128 - 1) * mm;
    let odd_kinds = 2 * (p as u128 - 2) * mm;
    let mut by_degree = BTreeMap::new();
    for k in 0..=d {
        for c in 0..=d - k {
            let a = d - k - c;
            let n = multichoose(even_kinds, a as u128)
                * multichoose(even_kinds, c as u128)
                * binomial(odd_kinds, k as u128);
            if n > 0 {
                *by_degree.entry(2 * c + k).or_insert(0) += n;
            }
        }
    }
    let total = (0..=d as u128)
        .map(|k| binomial(odd_kinds, k) * multichoose(2 * even_kinds, d as u128 - k))
        .sum();
    Ok(DimensionReport {
        p,
        m,
        d,
        total,
        by_degree,
    })
}

/// Degree-zero dimension as a sum over compositions of `d` into `p - 1` parts
/// of products of Schur algebra dimensions `C(m² + d_j - 1, d_j)`.
pub fn degree_zero_dimension(p: usize, m: usize, d: usize) -> Result<u128> {
    require_odd_prime(p)?;
    let mm = (m * m) as u128;
    fn rec(parts: usize, rem: usize, mm: u128) -> u128 {
        if parts == 1 {
            return multichoose(mm, rem as u128);
        }
        (0..=rem)
            .map(|dj| multichoose(mm, dj as u128) * rec(parts - 1, rem - dj, mm))
            .sum()
    }
    Ok(rec(p - 1, d, mm))
}

/// A degree-one generator: an arrow in position `(1, 1)` together with a
/// multiset of idempotents `e_j` in diagonal positions `(r, r)`, `r ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub arrow: Element,
    pub tail: Vec<Letter>,
}

impl Generator {
    pub fn label(&self) -> BasisLabel {
        let mut letters = vec![Letter {
            z: self.arrow,
            r: 1,
            s: 1,
        }];
        letters.extend(self.tail.iter().copied());
        BasisLabel::new(letters).expect("one odd letter")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorReport {
    pub p: usize,
    pub m: usize,
    pub d: usize,
    pub degree_one: Vec<Generator>,
    pub count: usize,
}

pub fn generator_count(p: usize, m: usize, d: usize) -> Result<GeneratorReport> {
    require_odd_prime(p)?;
    if m < d {
        return Err(Error::Precondition(format!(
            "need m ≥ d, got m = {m}, d = {d}"
        )));
    }
    let mut degree_one = Vec::new();
    if d > 0 {
        let arrows: Vec<Element> = Element::basis(p)
            .into_iter()
            .filter(|z| z.is_odd())
            .collect();
        let tails = enumerate_labels(p, m, d - 1, |l| {
            matches!(l.z, Element::E(_)) && l.r == l.s && l.r >= 2
        });
        for &arrow in &arrows {
            for t in &tails {
                degree_one.push(Generator {
                    arrow,
                    tail: t.0.clone(),
                });
            }
        }
    }
    let count = degree_one.len();
    Ok(GeneratorReport {
        p,
        m,
        d,
        degree_one,
        count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_dimensions() {
        assert_eq!(Element::basis(3).len(), 6);
        assert_eq!(basis_dimension(3, 1, 1).unwrap().total, 6);
        assert_eq!(basis_dimension(3, 1, 2).unwrap().total, 19);
        assert_eq!(basis_dimension(7, 3, 0).unwrap().total, 1);
        assert_eq!(degree_zero_dimension(3, 1, 1).unwrap(), 2);
        assert_eq!(degree_zero_dimension(3, 2, 2).unwrap(), 36);
        assert_eq!(degree_zero_dimension(5, 2, 0).unwrap(), 1);
        assert!(basis_dimension(2, 1, 1).is_err());
    }

    #[test]
    fn breakdown_matches_enumeration() {
        for p in [3, 5] {
            for m in 1..=2 {
                for d in 0..=3 {
                    let rep = basis_dimension(p, m, d).unwrap();
                    let labels = enumerate_labels(p, m, d, |_| true);
                    assert_eq!(labels.len() as u128, rep.total);
                    assert_eq!(count_labels(p, m, d, |_| true), rep.total);
                    let mut counts = BTreeMap::new();
                    for l in &labels {
                        *counts.entry(l.degree()).or_insert(0u128) += 1;
                    }
                    assert_eq!(counts, rep.by_degree, "p={p} m={m} d={d}");
                    assert_eq!(rep.by_degree.values().sum::<u128>(), rep.total);
                    assert_eq!(
                        rep.by_degree.get(&0).copied().unwrap_or(0),
                        degree_zero_dimension(p, m, d).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn generators() {
        assert_eq!(generator_count(3, 1, 1).unwrap().count, 2);
        assert_eq!(generator_count(3, 2, 2).unwrap().count, 4);
        assert_eq!(generator_count(5, 3, 0).unwrap().count, 0);
        assert!(generator_count(3, 1, 2).is_err());
        for g in generator_count(5, 3, 3).unwrap().degree_one {
            let l = g.label();
            assert_eq!((l.degree(), l.odd_count(), l.0.len()), (1, 1, 3));
        }
    }
}
