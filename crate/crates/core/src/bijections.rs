//! The Mullineux involution and James regularization.

use crate::abacus::AbacusDisplay;
use crate::error::{Error, Result};
use crate::partition::{Node, Partition};
use crate::signatures::{self, require_regular};

/// Number of nodes each row loses when the `p`-rim is removed.
///
/// The rim is cut into segments of `p` nodes starting at the top right; a new
/// segment always starts at the end of the next row down.
pub fn p_rim_profile(lambda: &Partition, p: usize) -> Vec<usize> {
    let parts = lambda.parts();
    let h = parts.len();
    let mut x = vec![0; h];
    let mut c = 0;
    for k in 0..h {
        let e = if k + 1 < h {
            parts[k] - parts[k + 1] + 1
        } else {
            parts[k]
        };
        if c + e < p {
            x[k] = e;
            c += e;
        } else {
            x[k] = p - c;
            c = 0;
        }
    }
    x
}

pub fn remove_p_rim(lambda: &Partition, p: usize) -> Partition {
    let x = p_rim_profile(lambda, p);
    Partition::from_unsorted(lambda.parts().iter().zip(&x).map(|(a, b)| a - b).collect())
}

/// Mullineux symbol: `(|p-rim|, height)` for each successive rim removal.
pub fn mullineux_symbol(lambda: &Partition, p: usize) -> Result<Vec<(usize, usize)>> {
    require_regular(lambda, p)?;
    let mut cols = Vec::new();
    let mut cur = lambda.clone();
    while !cur.is_empty() {
        let x = p_rim_profile(&cur, p);
        cols.push((x.iter().sum(), cur.height()));
        cur = remove_p_rim(&cur, p);
    }
    Ok(cols)
}

/// The `p`-regular partition with the given symbol.
pub fn from_mullineux_symbol(cols: &[(usize, usize)], p: usize) -> Result<Partition> {
    let mut lambda = Partition::empty();
    for &(a, r) in cols.iter().rev() {
        lambda = add_p_rim(&lambda, a, r, p).ok_or_else(|| {
            Error::Precondition(format!(
                "no {p}-regular partition has symbol column ({a},{r}) over {lambda}"
            ))
        })?;
    }
    Ok(lambda)
}

/// The `p`-regular `λ` of height `r` whose `p`-rim has `a` nodes and whose removal leaves `ν`.
fn add_p_rim(nu: &Partition, a: usize, r: usize, p: usize) -> Option<Partition> {
    if nu.height() > r || r == 0 {
        return None;
    }
    let nu_at = |k: usize| nu.part(k + 1);
    // Rows 0..r (0-based); `c` counts nodes in the current segment.
    fn dfs(
        k: usize,
        c: usize,
        lam: &mut Vec<usize>,
        tot: usize,
        ctx: &(usize, usize, usize, &dyn Fn(usize) -> usize),
        out: &mut Option<Vec<usize>>,
    ) {
        let (a, r, p, nu_at) = *ctx;
        if out.is_some() {
            return;
        }
        let lk = lam[k];
        let Some(xk) = lk.checked_sub(nu_at(k)) else {
            return;
        };
        if tot + xk > a {
            return;
        }
        if k == r - 1 {
            let e = lk;
            let ok = if c + e < p { xk == e } else { xk == p - c };
            if ok && tot + xk == a && lk > 0 {
                *out = Some(lam.clone());
            }
            return;
        }
        for next in nu_at(k + 1).max(1)..=lk {
            let e = lk - next + 1;
            let nc = if c + e < p {
                if xk != e {
                    continue;
                }
                c + e
            } else {
                if xk != p - c {
                    continue;
                }
                0
            };
            lam.push(next);
            dfs(k + 1, nc, lam, tot + xk, ctx, out);
            lam.pop();
            if out.is_some() {
                return;
            }
        }
    }
    let ctx: (usize, usize, usize, &dyn Fn(usize) -> usize) = (a, r, p, &nu_at);
    let first = nu_at(0);
    for l1 in first.max(1)..=first + p {
        let mut lam = vec![l1];
        let mut out = None;
        dfs(0, 0, &mut lam, 0, &ctx, &mut out);
        if let Some(parts) = out {
            let cand = Partition::new(parts).ok()?;
            if cand.is_p_regular(p) && remove_p_rim(&cand, p) == *nu {
                return Some(cand);
            }
        }
    }
    None
}

/// Mullineux image of a `p`-regular partition, via the rim symbol: each
/// column `(a, r)` becomes `(a, a - r + [p ∤ a])`.
pub fn mullineux(lambda: &Partition, p: usize) -> Result<Partition> {
    let cols = mullineux_symbol(lambda, p)?;
    let conj: Vec<(usize, usize)> = cols
        .iter()
        .map(|&(a, r)| (a, a + usize::from(a % p != 0) - r))
        .collect();
    from_mullineux_symbol(&conj, p)
}

/// Mullineux image via crystals: if `λ = f̃_{i_n} ... f̃_{i_1} ∅` then
/// `λ^M = f̃_{-i_n} ... f̃_{-i_1} ∅`.
pub fn mullineux_by_crystal(lambda: &Partition, p: usize) -> Result<Partition> {
    require_regular(lambda, p)?;
    let mut path = Vec::new();
    let mut cur = lambda.clone();
    while !cur.is_empty() {
        let (i, next) = (0..p)
            .find_map(|i| {
                signatures::e_tilde(&cur, p, i, 1)
                    .expect("regular")
                    .map(|m| (i, m))
            })
            .expect("a nonempty partition has a good node");
        path.push(i);
        cur = next;
    }
    let mut out = Partition::empty();
    for &i in path.iter().rev() {
        let j = (p - i) % p;
        out = signatures::f_tilde(&out, p, j, 1)?.expect("φ_{-i} > 0 along the image path");
    }
    Ok(out)
}

/// Ladder index of a node: nodes `(row, col)` and `(row - (p-1), col + 1)` share a ladder.
pub fn ladder(node: Node, p: usize) -> usize {
    (node.row - 1) + (p - 1) * (node.col - 1)
}

/// James regularization: slide every node as high as possible along its ladder.
pub fn regularize(lambda: &Partition, p: usize) -> Partition {
    let mut counts: Vec<usize> = Vec::new();
    for n in lambda.nodes() {
        let l = ladder(n, p);
        if counts.len() <= l {
            counts.resize(l + 1, 0);
        }
        counts[l] += 1;
    }
    let mut rows: Vec<usize> = Vec::new();
    for (l, &k) in counts.iter().enumerate() {
        // Positions on ladder l, top first: column j from the largest down.
        let mut placed = 0;
        let mut j = l / (p - 1) + 1;
        while placed < k {
            let row = l - (p - 1) * (j - 1) + 1;
            if rows.len() < row {
                rows.resize(row, 0);
            }
            rows[row - 1] += 1;
            placed += 1;
            j -= 1;
        }
    }
    Partition::new(rows).expect("ladder filling yields a partition")
}

/// Regularization on the abacus, keeping the bead count.
pub fn regularize_display(d: &AbacusDisplay) -> AbacusDisplay {
    let reg = regularize(&d.partition(), d.p());
    AbacusDisplay::exact(&reg, d.p(), d.beads()).expect("regularization never increases the height")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;

    #[test]
    fn rim_symbol() {
        // (4,2,1) at p = 3: rim rows give 3, 2 and 1 nodes; segments cut after 3 then after 3.
        assert_eq!(p_rim_profile(&part![4, 2, 1], 3), vec![3, 2, 1]);
        assert_eq!(remove_p_rim(&part![4, 2, 1], 3), part![1]);
        assert_eq!(
            mullineux_symbol(&part![4, 2, 1], 3).unwrap(),
            vec![(6, 3), (1, 1)]
        );
        assert_eq!(
            from_mullineux_symbol(&[(6, 3), (1, 1)], 3).unwrap(),
            part![4, 2, 1]
        );
    }

    #[test]
    fn mullineux_examples() {
        assert_eq!(mullineux(&part![3], 3).unwrap(), part![2, 1]);
        assert_eq!(mullineux(&part![5], 5).unwrap(), part![2, 1, 1, 1]);
        assert_eq!(
            mullineux(&Partition::empty(), 3).unwrap(),
            Partition::empty()
        );
        let m = mullineux(&part![4, 2, 1], 3).unwrap();
        assert_eq!(mullineux(&m, 3).unwrap(), part![4, 2, 1]);
        assert_eq!(m, mullineux_by_crystal(&part![4, 2, 1], 3).unwrap());
        assert!(mullineux(&part![1, 1, 1], 3).is_err());
    }

    #[test]
    fn regularize_examples() {
        assert_eq!(regularize(&part![1, 1, 1], 3), part![2, 1]);
        assert_eq!(
            regularize(&part![6, 1, 1, 1, 1, 1], 5),
            part![6, 2, 1, 1, 1]
        );
        assert_eq!(regularize(&part![4, 2, 1], 3), part![4, 2, 1]);
        assert_eq!(regularize(&part![1, 1, 1, 1], 3), part![2, 2]);
        let d = AbacusDisplay::canonical(&part![1, 1, 1], 3);
        let r = regularize_display(&d);
        assert_eq!(r.partition(), part![2, 1]);
        assert_eq!(r.beads(), d.beads());
    }
}
