//! Blocks: core and weight, block enumeration, Rouquier cores.

use serde::{Deserialize, Serialize};

use crate::abacus::{core_and_weight, is_core, runner_rows, AbacusDisplay};
use crate::error::{Error, Result};
use crate::partition::{partitions_of, Partition};
use crate::signatures::require_regular;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockId {
    pub core: Partition,
    pub weight: usize,
    pub p: usize,
}

impl BlockId {
    pub fn new(core: Partition, weight: usize, p: usize) -> Result<Self> {
        if !is_core(&core, p) {
            return Err(Error::NotCore { partition: core, p });
        }
        Ok(BlockId { core, weight, p })
    }

    /// Size of the partitions in the block.
    pub fn degree(&self) -> usize {
        self.core.size() + self.p * self.weight
    }
}

pub fn block_of(lambda: &Partition, p: usize) -> BlockId {
    let (core, weight) = core_and_weight(lambda, p);
    BlockId { core, weight, p }
}

/// All `p`-multipartitions of `d`, runner 0 first, sizes in increasing order.
pub fn multipartitions(p: usize, d: usize) -> Vec<Vec<Partition>> {
    fn rec(p: usize, rem: usize, cur: &mut Vec<Partition>, out: &mut Vec<Vec<Partition>>) {
        if cur.len() == p - 1 {
            for mu in partitions_of(rem) {
                cur.push(mu);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for k in 0..=rem {
            for mu in partitions_of(k) {
                cur.push(mu);
                rec(p, rem - k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(p, d, &mut Vec::new(), &mut out);
    out
}

/// Number of `p`-multipartitions of `d`.
pub fn multipartition_count(p: usize, d: usize) -> usize {
    let pn: Vec<usize> = (0..=d).map(|k| partitions_of(k).len()).collect();
    let mut ways = vec![0usize; d + 1];
    ways[0] = 1;
    for _ in 0..p {
        let mut next = vec![0usize; d + 1];
        for (a, &w) in ways.iter().enumerate() {
            for b in 0..=d - a {
                next[a + b] += w * pn[b];
            }
        }
        ways = next;
    }
    ways[d]
}

/// Partition with the block's core whose quotient (on the display of the core
/// with `h(ρ) + p·d` beads, position 0 occupied) is `quotient`.
pub fn from_core_and_quotient(block: &BlockId, quotient: &[Partition]) -> Result<Partition> {
    let p = block.p;
    if quotient.len() != p {
        return Err(Error::Precondition(format!(
            "quotient needs {p} components"
        )));
    }
    let base = AbacusDisplay::new(
        &block.core,
        p,
        block.core.height() + p * block.weight.max(1),
    )?;
    let mut occupied = Vec::with_capacity(base.beads());
    for (j, mu) in quotient.iter().enumerate() {
        let c = base.bead_count(j);
        if c < mu.height() {
            return Err(Error::NegativeBeadCount { runner: j });
        }
        occupied.extend(runner_rows(mu, c).into_iter().map(|row| row * p + j));
    }
    Ok(AbacusDisplay::from_positions(p, occupied)?.partition())
}

/// Every partition in the block, in the order of [`multipartitions`].
pub fn enumerate_block(block: &BlockId, regular_only: bool) -> Vec<Partition> {
    multipartitions(block.p, block.weight)
        .iter()
        .map(|q| from_core_and_quotient(block, q).expect("enough beads on every runner"))
        .filter(|l| !regular_only || l.is_p_regular(block.p))
        .collect()
}

/// Some display of the core `ρ` has at least `d - 1` more beads on runner
/// `i + 1` than on runner `i` for every `i`. Weight 0 always counts as Rouquier.
pub fn is_rouquier(rho: &Partition, p: usize, d: usize) -> Result<bool> {
    if !is_core(rho, p) {
        return Err(Error::NotCore {
            partition: rho.clone(),
            p,
        });
    }
    if d == 0 {
        return Ok(true);
    }
    Ok(rouquier_display(rho, p, d).is_some())
}

/// A display of `ρ` witnessing that it is `d`-Rouquier.
pub fn rouquier_display(rho: &Partition, p: usize, d: usize) -> Option<AbacusDisplay> {
    let h = rho.height();
    // Adding one bead rotates the runner counts cyclically, and adding p beads
    // raises all of them equally, so p consecutive bead counts cover every case;
    // the wider range below is kept as a safety margin.
    (h..=h + p * (d + 1)).find_map(|n| {
        let disp = AbacusDisplay::exact(rho, p, n).ok()?;
        let r: Vec<i64> = (0..p).map(|j| disp.bead_count(j) as i64).collect();
        r.windows(2)
            .all(|w| w[1] - w[0] >= d as i64 - 1)
            .then_some(disp)
    })
}

/// The block of `λ` has a Rouquier core for its weight.
pub fn is_rock_block(lambda: &Partition, p: usize) -> Result<bool> {
    require_regular(lambda, p)?;
    let b = block_of(lambda, p);
    is_rouquier(&b.core, p, b.weight)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;

    #[test]
    fn block_examples() {
        assert_eq!(
            block_of(&part![4, 2, 1], 3),
            BlockId {
                core: part![1],
                weight: 2,
                p: 3
            }
        );
        assert_eq!(block_of(&part![2, 1, 1], 3).weight, 0);
        let b = BlockId::new(part![1], 1, 3).unwrap();
        let mut members = enumerate_block(&b, false);
        members.sort();
        assert_eq!(members, vec![part![1, 1, 1, 1], part![2, 2], part![4]]);
        let b0 = BlockId::new(part![2, 1, 1], 0, 3).unwrap();
        assert_eq!(enumerate_block(&b0, false), vec![part![2, 1, 1]]);
        assert!(BlockId::new(part![2, 1], 1, 3).is_err());
    }

    #[test]
    fn block_sizes_match_multipartition_counts() {
        for p in [2, 3, 5] {
            for d in 0..5 {
                let b = BlockId::new(part![1], d, p).unwrap();
                let all = enumerate_block(&b, false);
                assert_eq!(all.len(), multipartition_count(p, d));
                assert_eq!(multipartitions(p, d).len(), multipartition_count(p, d));
                for l in &all {
                    assert_eq!(block_of(l, p), b);
                }
            }
        }
        assert_eq!(multipartition_count(3, 7), 429);
    }

    #[test]
    fn rouquier_examples() {
        assert!(is_rouquier(&part![3, 1, 1], 3, 2).unwrap());
        let d = rouquier_display(&part![3, 1, 1], 3, 2).unwrap();
        let r: Vec<usize> = (0..3).map(|j| d.bead_count(j)).collect();
        assert!(r.windows(2).all(|w| w[1] > w[0]));
        for p in [3, 5] {
            assert!(is_rouquier(&Partition::empty(), p, 0).unwrap());
            assert!(is_rouquier(&Partition::empty(), p, 1).unwrap());
            assert!(!is_rouquier(&Partition::empty(), p, 2).unwrap());
        }
        assert!(is_rouquier(&part![2, 1], 3, 1).is_err());
        assert!(is_rock_block(&part![2, 1, 1], 3).unwrap());
    }

    #[test]
    fn rouquier_is_monotone() {
        for n in 0..12 {
            for rho in partitions_of(n).into_iter().filter(|l| is_core(l, 3)) {
                let flags: Vec<bool> = (0..6).map(|d| is_rouquier(&rho, 3, d).unwrap()).collect();
                assert!(flags.windows(2).all(|w| w[0] || !w[1]), "{rho}: {flags:?}");
            }
        }
    }
}
