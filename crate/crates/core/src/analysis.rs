//! One-shot summary of a partition at a prime.

use serde::{Deserialize, Serialize};

use crate::abacus::{core_and_weight, AbacusDisplay};
use crate::bijections::{mullineux, regularize};
use crate::error::{Error, Result};
use crate::partition::{is_prime, Partition};
use crate::signatures::{is_difficult, signature, SignatureReport};
use crate::specht::specht_irreducible;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub partition: Partition,
    pub p: usize,
    pub size: usize,
    pub p_regular: bool,
    pub p_restricted: bool,
    pub core: Partition,
    pub weight: usize,
    /// Quotient on the display with `h(λ)` beads.
    pub quotient: Vec<Partition>,
    /// One report per residue `0..p`.
    pub signatures: Vec<SignatureReport>,
    /// Residues at which `λ` is difficult; empty unless `λ` is `p`-regular.
    pub difficult: Vec<usize>,
    pub mullineux: Option<Partition>,
    pub regularization: Partition,
    pub specht_irreducible: Option<bool>,
}

pub fn analyze(lambda: &Partition, p: usize) -> Result<Analysis> {
    if !is_prime(p) {
        return Err(Error::UnsupportedPrime(p));
    }
    let (core, weight) = core_and_weight(lambda, p);
    let p_regular = lambda.is_p_regular(p);
    let signatures: Vec<SignatureReport> = (0..p).map(|i| signature(lambda, p, i)).collect();
    let difficult = if p_regular {
        (0..p)
            .filter(|&i| is_difficult(lambda, p, i).unwrap_or(false))
            .collect()
    } else {
        Vec::new()
    };
    Ok(Analysis {
        partition: lambda.clone(),
        p,
        size: lambda.size(),
        p_regular,
        p_restricted: lambda.is_p_restricted(p),
        core,
        weight,
        quotient: AbacusDisplay::canonical(lambda, p).quotient().quotient(),
        signatures,
        difficult,
        mullineux: if p_regular {
            Some(mullineux(lambda, p)?)
        } else {
            None
        },
        regularization: regularize(lambda, p),
        // The runner criterion is stated for odd p.
        specht_irreducible: (p > 2).then(|| specht_irreducible(lambda, p)),
    })
}
