//! Irreducibility of Specht modules from the abacus, and the search for an
//! irreducible Specht module whose regularization is a given label.
//!
//! `S^λ` is irreducible (for odd `p`) exactly when some display of `λ` has
//! runners `j`, `k` such that:
//! 1. every quotient component off `j` and `k` is empty;
//! 2. above the first gap on runner `j` there are no beads off runner `j`;
//! 3. below the last bead on runner `k` there are no gaps off runner `k`;
//! 4. `λ^(j)` is `p`-regular with irreducible Specht module;
//! 5. `λ^(k)` is `p`-restricted with irreducible Specht module.
//!
//! Adding `p` beads adds a full row under every runner and leaves all five
//! conditions unchanged, so the `p` displays with `h(λ), ..., h(λ)+p-1` beads
//! cover every display up to that shift.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::abacus::{is_core, AbacusDisplay};
use crate::bijections::regularize;
use crate::blocks::{block_of, from_core_and_quotient, BlockId};
use crate::error::{Error, Result};
use crate::partition::{partitions_of, Partition};
use crate::signatures::{e_tilde_max, require_regular, signature};

static MEMO: LazyLock<RwLock<HashMap<(usize, Partition), bool>>> = LazyLock::new(Default::default);

type PreimageIndex = Arc<HashMap<Partition, Partition>>;

/// Per block: regularization of each irreducible Specht label, mapped to that
/// label. For odd `p` the map is injective.
static PREIMAGES: LazyLock<RwLock<HashMap<BlockId, PreimageIndex>>> =
    LazyLock::new(Default::default);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpechtWitness {
    /// Weight-zero block, one simple module.
    Core,
    Runners {
        display: AbacusDisplay,
        /// Runner carrying the `p`-regular component.
        j: usize,
        /// Runner carrying the `p`-restricted component.
        k: usize,
        regular_component: Partition,
        restricted_component: Partition,
        regular_witness: Box<SpechtWitness>,
        restricted_witness: Box<SpechtWitness>,
    },
}

fn gap_condition(d: &AbacusDisplay, j: usize) -> bool {
    let p = d.p();
    let first_gap = (0..)
        .map(|row| row * p + j)
        .find(|&x| !d.is_occupied(x))
        .expect("finite display");
    d.occupied().iter().all(|&x| x % p == j || x < first_gap)
}

fn bead_condition(d: &AbacusDisplay, k: usize) -> bool {
    let p = d.p();
    let Some(&last) = d.occupied().iter().find(|&&x| x % p == k) else {
        return true;
    };
    (0..last).all(|x| x % p == k || d.is_occupied(x))
}

/// Whether `S^λ` is irreducible (odd `p`).
pub fn specht_irreducible(lambda: &Partition, p: usize) -> bool {
    let key = (p, lambda.clone());
    if let Some(&v) = MEMO.read().expect("memo lock").get(&key) {
        return v;
    }
    let v = specht_witness(lambda, p).is_some();
    MEMO.write().expect("memo lock").insert(key, v);
    v
}

/// A display and runner pair exhibiting irreducibility, with witnesses for the components.
pub fn specht_witness(lambda: &Partition, p: usize) -> Option<SpechtWitness> {
    if is_core(lambda, p) {
        return Some(SpechtWitness::Core);
    }
    let h = lambda.height();
    for n in h..h + p {
        let d = AbacusDisplay::exact(lambda, p, n).expect("n ≥ h");
        let quotient = d.quotient().quotient();
        let nonempty: Vec<usize> = (0..p).filter(|&l| !quotient[l].is_empty()).collect();
        if nonempty.len() > 2 {
            continue;
        }
        for j in 0..p {
            for k in 0..p {
                if nonempty.iter().any(|&l| l != j && l != k) {
                    continue;
                }
                let (qj, qk) = (&quotient[j], &quotient[k]);
                if !qj.is_p_regular(p) || !qk.is_p_restricted(p) {
                    continue;
                }
                if !gap_condition(&d, j) || !bead_condition(&d, k) {
                    continue;
                }
                if !specht_irreducible(qj, p) || !specht_irreducible(qk, p) {
                    continue;
                }
                return Some(SpechtWitness::Runners {
                    display: d.clone(),
                    j,
                    k,
                    regular_component: qj.clone(),
                    restricted_component: qk.clone(),
                    regular_witness: Box::new(specht_witness(qj, p).expect("irreducible")),
                    restricted_witness: Box::new(specht_witness(qk, p).expect("irreducible")),
                });
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialRunners {
    pub display: Option<AbacusDisplay>,
    /// The runner `j` when `λ` is not `p`-restricted.
    pub non_restricted: Option<usize>,
    /// The runner `k` when `λ` is not `p`-regular.
    pub non_regular: Option<usize>,
}

/// The non-restricted and non-regular runners of a display witnessing irreducibility.
pub fn special_runners(lambda: &Partition, p: usize) -> Result<SpecialRunners> {
    match specht_witness(lambda, p) {
        None => Err(Error::Precondition(format!(
            "S^{lambda} is not irreducible at p = {p}"
        ))),
        Some(SpechtWitness::Core) => Ok(SpecialRunners {
            display: None,
            non_restricted: None,
            non_regular: None,
        }),
        Some(SpechtWitness::Runners { display, j, k, .. }) => Ok(SpecialRunners {
            display: Some(display),
            non_restricted: (!lambda.is_p_restricted(p)).then_some(j),
            non_regular: (!lambda.is_p_regular(p)).then_some(k),
        }),
    }
}

/// A `ν` with `ν^R = μ` and `S^ν` irreducible, searching the block of `μ`.
pub fn irreducible_specht_preimage(mu: &Partition, p: usize) -> Result<Option<Partition>> {
    require_regular(mu, p)?;
    if specht_irreducible(mu, p) {
        return Ok(Some(mu.clone()));
    }
    Ok(preimage_index(&block_of(mu, p)).get(mu).cloned())
}

fn preimage_index(block: &BlockId) -> PreimageIndex {
    if let Some(idx) = PREIMAGES.read().unwrap().get(block) {
        return idx.clone();
    }
    let p = block.p;
    let mut idx = HashMap::new();
    for nu in two_component_members(block) {
        if specht_irreducible(&nu, p) {
            idx.entry(regularize(&nu, p)).or_insert(nu);
        }
    }
    let idx = Arc::new(idx);
    PREIMAGES
        .write()
        .unwrap()
        .insert(block.clone(), idx.clone());
    idx
}

/// Block members whose quotient has at most two nonempty components. Changing
/// the bead count only rotates the components, so every irreducible Specht
/// label of the block is among these.
fn two_component_members(block: &BlockId) -> Vec<Partition> {
    let (p, w) = (block.p, block.weight);
    let usable = |m: &Partition| m.is_p_regular(p) || m.is_p_restricted(p);
    let mut out = Vec::new();
    let mut quotient = vec![Partition::empty(); p];
    let mut push = |q: &[Partition]| {
        out.push(from_core_and_quotient(block, q).expect("enough beads on every runner"));
    };
    if w == 0 {
        push(&quotient);
        return out;
    }
    for a in 0..p {
        for mu in partitions_of(w).into_iter().filter(usable) {
            quotient[a] = mu;
            push(&quotient);
        }
        for b in a + 1..p {
            for wa in 1..w {
                for mu in partitions_of(wa).into_iter().filter(usable) {
                    for nu in partitions_of(w - wa).into_iter().filter(usable) {
                        quotient[a] = mu.clone();
                        quotient[b] = nu;
                        push(&quotient);
                    }
                }
            }
            quotient[b] = Partition::empty();
        }
        quotient[a] = Partition::empty();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpechtDescent {
    pub residue: usize,
    pub eps: usize,
    /// `ẽ_i^{ε_i} λ`.
    pub mu: Partition,
    /// Irreducible Specht label with `ν^R = μ`.
    pub nu: Partition,
}

/// First residue `i` for which `ẽ_i^{ε_i} λ` labels a simple module that is an irreducible Specht module.
pub fn specht_descent(lambda: &Partition, p: usize) -> Result<Option<SpechtDescent>> {
    require_regular(lambda, p)?;
    if p < 3 {
        return Err(Error::UnsupportedPrime(p));
    }
    for i in 0..p {
        let eps = signature(lambda, p, i).eps;
        let mu = e_tilde_max(lambda, p, i)?;
        if let Some(nu) = irreducible_specht_preimage(&mu, p)? {
            return Ok(Some(SpechtDescent {
                residue: i,
                eps,
                mu,
                nu,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;

    #[test]
    fn examples() {
        assert!(specht_irreducible(&part![4, 1, 1, 1], 3));
        assert!(specht_irreducible(&part![2, 1, 1], 3));
        assert!(!specht_irreducible(&part![2, 1], 3));
        assert!(!specht_irreducible(&part![2, 2], 3));
        assert!(specht_irreducible(&part![4], 3));
        assert!(specht_irreducible(&part![1, 1, 1, 1], 3));
    }

    #[test]
    fn special_runner_examples() {
        let s = special_runners(&part![4, 1, 1, 1], 3).unwrap();
        assert!(s.non_regular.is_some());
        let c = special_runners(&part![2, 1, 1], 3).unwrap();
        assert_eq!((c.non_restricted, c.non_regular), (None, None));
        assert!(special_runners(&part![2, 2], 3).is_err());
    }

    #[test]
    fn preimage_examples() {
        assert_eq!(
            irreducible_specht_preimage(&part![9, 4, 4, 3, 1, 1], 3).unwrap(),
            Some(part![9, 4, 2, 2, 1, 1, 1, 1, 1])
        );
        assert_eq!(
            irreducible_specht_preimage(&part![2, 1, 1], 3).unwrap(),
            Some(part![2, 1, 1])
        );
        assert_eq!(
            irreducible_specht_preimage(&part![2, 2], 3).unwrap(),
            Some(part![1, 1, 1, 1])
        );
    }

    #[test]
    fn specht_descent_example() {
        let w = specht_descent(&part![10, 5, 4, 3, 1, 1], 3)
            .unwrap()
            .unwrap();
        assert_eq!(w.residue, 0);
        assert_eq!(w.eps, 2);
        assert_eq!(w.mu, part![9, 4, 4, 3, 1, 1]);
        assert_eq!(w.nu, part![9, 4, 2, 2, 1, 1, 1, 1, 1]);
        assert!(specht_descent(&part![4, 1, 1, 1], 3).is_err());
        assert!(specht_descent(&part![4, 2, 1], 3).unwrap().is_some());
    }
}
