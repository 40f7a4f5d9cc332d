//! `i`-signatures, normal and conormal nodes, and the crystal operators.
//!
//! The `i`-removable (`-`) and `i`-addable (`+`) nodes are read from the
//! bottom row of the diagram to the top, which is increasing position on the
//! abacus. Adjacent `-+` pairs are erased until none remain. Each erasure
//! pairs a `-` with the nearest unmatched `+` after it, exactly as bracket
//! matching does, so one left-to-right pass with a stack gives the unique
//! reduced word `+...+-...-` whatever order the erasures are done in.

use serde::{Deserialize, Serialize};

use crate::abacus::{self, AbacusDisplay};
use crate::error::{Error, Result};
use crate::partition::{Node, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedNode {
    pub node: Node,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureReport {
    pub residue: usize,
    /// Reading order: bottom-left to top-right.
    pub signs: Vec<SignedNode>,
    pub reduced: Vec<SignedNode>,
    /// `A_1, A_2, ...` from bottom to top.
    pub normal: Vec<Node>,
    /// `B_1, B_2, ...` from top to bottom.
    pub conormal: Vec<Node>,
    pub eps: usize,
    pub phi: usize,
    pub eps_prime: usize,
    pub phi_prime: usize,
}

impl SignatureReport {
    pub fn good(&self) -> Option<Node> {
        self.normal.first().copied()
    }

    pub fn cogood(&self) -> Option<Node> {
        self.conormal.first().copied()
    }

    pub fn word(&self) -> String {
        self.signs.iter().map(|s| s.sign.symbol()).collect()
    }

    pub fn reduced_word(&self) -> String {
        self.reduced.iter().map(|s| s.sign.symbol()).collect()
    }

    /// `i`-removable nodes from bottom to top.
    pub fn removable(&self) -> Vec<Node> {
        self.signs
            .iter()
            .filter(|s| s.sign == Sign::Minus)
            .map(|s| s.node)
            .collect()
    }

    /// `i`-addable nodes from top to bottom.
    pub fn addable(&self) -> Vec<Node> {
        let mut v: Vec<Node> = self
            .signs
            .iter()
            .filter(|s| s.sign == Sign::Plus)
            .map(|s| s.node)
            .collect();
        v.reverse();
        v
    }
}

/// Erase `-+` pairs.
pub fn reduce(signs: &[SignedNode]) -> Vec<SignedNode> {
    let mut stack: Vec<SignedNode> = Vec::with_capacity(signs.len());
    for &s in signs {
        if s.sign == Sign::Plus && stack.last().is_some_and(|t| t.sign == Sign::Minus) {
            stack.pop();
        } else {
            stack.push(s);
        }
    }
    stack
}

pub fn signature(lambda: &Partition, p: usize, i: usize) -> SignatureReport {
    let h = lambda.height();
    let mut signs = Vec::new();
    for k in (1..=h + 1).rev() {
        let len = lambda.part(k);
        if len > lambda.part(k + 1) {
            let node = Node::new(k, len);
            if node.residue(p) == i {
                signs.push(SignedNode {
                    node,
                    sign: Sign::Minus,
                });
            }
        }
        if k == 1 || lambda.part(k - 1) > len {
            let node = Node::new(k, len + 1);
            if node.residue(p) == i {
                signs.push(SignedNode {
                    node,
                    sign: Sign::Plus,
                });
            }
        }
    }
    let reduced = reduce(&signs);
    let normal: Vec<Node> = reduced
        .iter()
        .filter(|s| s.sign == Sign::Minus)
        .map(|s| s.node)
        .collect();
    let conormal: Vec<Node> = reduced
        .iter()
        .rev()
        .filter(|s| s.sign == Sign::Plus)
        .map(|s| s.node)
        .collect();
    let eps_prime = signs.iter().filter(|s| s.sign == Sign::Minus).count();
    SignatureReport {
        residue: i,
        eps: normal.len(),
        phi: conormal.len(),
        eps_prime,
        phi_prime: signs.len() - eps_prime,
        signs,
        reduced,
        normal,
        conormal,
    }
}

pub fn signatures(lambda: &Partition, p: usize) -> Vec<SignatureReport> {
    (0..p).map(|i| signature(lambda, p, i)).collect()
}

pub fn eps(lambda: &Partition, p: usize, i: usize) -> usize {
    signature(lambda, p, i).eps
}

pub fn phi(lambda: &Partition, p: usize, i: usize) -> usize {
    signature(lambda, p, i).phi
}

pub(crate) fn require_regular(lambda: &Partition, p: usize) -> Result<()> {
    if lambda.is_p_regular(p) {
        Ok(())
    } else {
        Err(Error::NotRegular {
            partition: lambda.clone(),
            p,
        })
    }
}

/// Remove the `r` lowest normal nodes; `None` when `r > ε_i`.
pub fn e_tilde(lambda: &Partition, p: usize, i: usize, r: usize) -> Result<Option<Partition>> {
    require_regular(lambda, p)?;
    let s = signature(lambda, p, i);
    Ok((r <= s.eps).then(|| {
        lambda
            .remove_nodes(&s.normal[..r])
            .expect("normal nodes are removable")
    }))
}

/// Add the `r` highest conormal nodes; `None` when `r > φ_i`.
pub fn f_tilde(lambda: &Partition, p: usize, i: usize, r: usize) -> Result<Option<Partition>> {
    require_regular(lambda, p)?;
    let s = signature(lambda, p, i);
    Ok((r <= s.phi).then(|| {
        lambda
            .add_nodes(&s.conormal[..r])
            .expect("conormal nodes are addable")
    }))
}

/// `ẽ_i^{ε_i} λ`.
pub fn e_tilde_max(lambda: &Partition, p: usize, i: usize) -> Result<Partition> {
    require_regular(lambda, p)?;
    let s = signature(lambda, p, i);
    Ok(lambda
        .remove_nodes(&s.normal)
        .expect("normal nodes are removable"))
}

/// `f̃_i^{φ_i} λ`.
pub fn f_tilde_max(lambda: &Partition, p: usize, i: usize) -> Result<Partition> {
    require_regular(lambda, p)?;
    let s = signature(lambda, p, i);
    Ok(lambda
        .add_nodes(&s.conormal)
        .expect("conormal nodes are addable"))
}

/// Remove the `r` lowest `i`-removable nodes; `None` past `ε'_i`.
pub fn e_hat(lambda: &Partition, p: usize, i: usize, r: usize) -> Option<Partition> {
    let rem = signature(lambda, p, i).removable();
    (r <= rem.len()).then(|| lambda.remove_nodes(&rem[..r]).expect("removable nodes"))
}

/// Add the `r` highest `i`-addable nodes; `None` past `φ'_i`.
pub fn f_hat(lambda: &Partition, p: usize, i: usize, r: usize) -> Option<Partition> {
    let add = signature(lambda, p, i).addable();
    (r <= add.len()).then(|| lambda.add_nodes(&add[..r]).expect("addable nodes"))
}

/// All `λ_A` for `r`-element sets `A` of `i`-removable nodes.
pub fn remove_subsets(lambda: &Partition, p: usize, i: usize, r: usize) -> Vec<Partition> {
    subsets(&signature(lambda, p, i).removable(), r)
        .into_iter()
        .map(|s| lambda.remove_nodes(&s).expect("removable nodes"))
        .collect()
}

/// All `λ^B` for `r`-element sets `B` of `i`-addable nodes.
pub fn add_subsets(lambda: &Partition, p: usize, i: usize, r: usize) -> Vec<Partition> {
    subsets(&signature(lambda, p, i).addable(), r)
        .into_iter()
        .map(|s| lambda.add_nodes(&s).expect("addable nodes"))
        .collect()
}

fn subsets(items: &[Node], r: usize) -> Vec<Vec<Node>> {
    if r == 0 {
        return vec![vec![]];
    }
    if items.len() < r {
        return vec![];
    }
    let mut out = subsets(&items[1..], r - 1);
    for s in &mut out {
        s.insert(0, items[0]);
    }
    out.extend(subsets(&items[1..], r));
    out
}

/// `r(φ_i - ε_i - r)`, the weight change from `λ` to `f̃_i^r λ`.
pub fn weight_delta(lambda: &Partition, p: usize, i: usize, r: usize) -> Result<i64> {
    let s = signature(lambda, p, i);
    if r > s.phi {
        return Err(Error::OutOfRange(format!(
            "r = {r} exceeds φ_{i} = {}",
            s.phi
        )));
    }
    let r = r as i64;
    Ok(r * (s.phi as i64 - s.eps as i64 - r))
}

/// `ε_i, φ_i > 0` and moving the good node to the cogood position breaks `p`-regularity.
pub fn is_difficult(lambda: &Partition, p: usize, i: usize) -> Result<bool> {
    require_regular(lambda, p)?;
    let s = signature(lambda, p, i);
    let (Some(a), Some(b)) = (s.good(), s.cogood()) else {
        return Ok(false);
    };
    let moved = lambda
        .remove_node(a)
        .and_then(|l| l.add_node(b))
        .expect("good node removable and cogood node addable after removal");
    Ok(!moved.is_p_regular(p))
}

/// The abacus form of difficulty: the good node's removable position `a` and
/// the cogood node's addable position `b` satisfy `a = b + p`, and every
/// position strictly between `b` and `a - 1` is occupied.
pub fn difficult_abacus_check(lambda: &Partition, p: usize, i: usize) -> Result<bool> {
    let s = signature(lambda, p, i);
    let (Some(good), Some(cogood)) = (s.good(), s.cogood()) else {
        return Err(Error::Precondition(format!(
            "need ε_{i} > 0 and φ_{i} > 0, got ε = {} and φ = {}",
            s.eps, s.phi
        )));
    };
    let d = AbacusDisplay::canonical(lambda, p);
    let a = d
        .position_of_removable(good)
        .expect("good node has a removable position");
    let b = d
        .position_of_addable(cogood)
        .expect("cogood node has an addable position");
    Ok(a == b + p && (b + 1..a.saturating_sub(1)).all(|c| d.is_occupied(c)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjacencyEntry {
    pub r: usize,
    pub node: Node,
    /// Moving this node alone gives a `p`-singular partition.
    pub singular: bool,
    /// `r ≥ 2` and moving some `j ≤ r - 2` earlier nodes together with this one is singular.
    pub singular_with_earlier: bool,
    /// `r ≥ 2` and this node is the previous one shifted by `(1-p, 1)` (removal) or `(p-1, -1)` (addition).
    pub shifted_from_previous: bool,
}

impl AdjacencyEntry {
    pub fn consistent(&self) -> bool {
        self.singular == self.singular_with_earlier && self.singular == self.shifted_from_previous
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjacencyReport {
    pub residue: usize,
    pub removal: Vec<AdjacencyEntry>,
    pub addition: Vec<AdjacencyEntry>,
}

impl AdjacencyReport {
    pub fn consistent(&self) -> bool {
        self.removal
            .iter()
            .chain(&self.addition)
            .all(AdjacencyEntry::consistent)
    }
}

/// Checks the three equivalent descriptions of when removing a normal node
/// (or adding a conormal node) leaves the `p`-regular partitions.
pub fn node_adjacency_checks(lambda: &Partition, p: usize, i: usize) -> Result<AdjacencyReport> {
    require_regular(lambda, p)?;
    let s = signature(lambda, p, i);
    let pi = p as i64;
    let entries = |nodes: &[Node], apply: &dyn Fn(&[Node]) -> Partition, shift: (i64, i64)| {
        (1..=nodes.len())
            .map(|r| {
                let node = nodes[r - 1];
                let singular = !apply(&[node]).is_p_regular(p);
                let singular_with_earlier = r >= 2
                    && (0..=r - 2).any(|j| {
                        let mut set = nodes[..j].to_vec();
                        set.push(node);
                        !apply(&set).is_p_regular(p)
                    });
                let shifted_from_previous =
                    r >= 2 && nodes[r - 2].offset(shift.0, shift.1) == Some(node);
                AdjacencyEntry {
                    r,
                    node,
                    singular,
                    singular_with_earlier,
                    shifted_from_previous,
                }
            })
            .collect::<Vec<_>>()
    };
    let removal = entries(
        &s.normal,
        &|set| lambda.remove_nodes(set).expect("normal nodes"),
        (1 - pi, 1),
    );
    let addition = entries(
        &s.conormal,
        &|set| lambda.add_nodes(set).expect("conormal nodes"),
        (pi - 1, -1),
    );
    Ok(AdjacencyReport {
        residue: i,
        removal,
        addition,
    })
}

/// `(i, μ)` for each `i`-reflection `μ` of `λ`.
pub fn reflections(lambda: &Partition, p: usize) -> Result<Vec<(usize, Partition)>> {
    require_regular(lambda, p)?;
    let mut out = Vec::new();
    for i in 0..p {
        let s = signature(lambda, p, i);
        if s.eps == 0 && s.phi > 0 {
            out.push((i, lambda.add_nodes(&s.conormal).expect("conormal nodes")));
        } else if s.phi == 0 && s.eps > 0 {
            out.push((i, lambda.remove_nodes(&s.normal).expect("normal nodes")));
        }
    }
    Ok(out)
}

/// Shape `((a+1)^c, a^{p-2}, a-1, ...)` with `a, c ≥ 1`, where `(c, a+1)` is
/// good and `(c+p-1, a)` is cogood for their common residue `i`. Returns `i`.
pub fn fixed_top_shape(lambda: &Partition, p: usize) -> Option<usize> {
    if p < 3 || lambda.is_empty() {
        return None;
    }
    let top = lambda.part(1);
    let c = lambda.parts().iter().take_while(|&&x| x == top).count();
    let a = top - 1;
    if a == 0 {
        return None;
    }
    if !(c + 1..=c + p - 2).all(|k| lambda.part(k) == a) || lambda.part(c + p - 1) != a - 1 {
        return None;
    }
    let good = Node::new(c, a + 1);
    let cogood = Node::new(c + p - 1, a);
    let i = good.residue(p);
    let s = signature(lambda, p, i);
    (s.good() == Some(good) && s.cogood() == Some(cogood)).then_some(i)
}

/// `φ_i - ε_i` from the residue content: `δ_{i0} - 2a_i + a_{i-1} + a_{i+1}`.
pub fn phi_minus_eps_from_content(lambda: &Partition, p: usize, i: usize) -> i64 {
    let c = lambda.content(p);
    let a = |j: usize| c.get(j) as i64;
    (i == 0) as i64 - 2 * a(i) + a((i + p - 1) % p) + a((i + 1) % p)
}

/// Weight of `λ` computed on the abacus.
pub fn abacus_weight(lambda: &Partition, p: usize) -> usize {
    abacus::weight(lambda, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;

    fn n(r: usize, c: usize) -> Node {
        Node::new(r, c)
    }

    #[test]
    fn signature_examples() {
        let s = signature(&part![4, 2, 1], 3, 0);
        assert_eq!(
            s.signs,
            vec![
                SignedNode {
                    node: n(4, 1),
                    sign: Sign::Plus
                },
                SignedNode {
                    node: n(2, 2),
                    sign: Sign::Minus
                },
                SignedNode {
                    node: n(1, 4),
                    sign: Sign::Minus
                },
            ]
        );
        assert_eq!(s.reduced_word(), "+--");
        assert_eq!((s.eps, s.phi), (2, 1));
        assert_eq!(s.good(), Some(n(2, 2)));
        assert_eq!(s.cogood(), Some(n(4, 1)));

        let e = signature(&Partition::empty(), 5, 0);
        assert_eq!((e.reduced_word().as_str(), e.eps, e.phi), ("+", 0, 1));

        let t = signature(&part![2, 2, 1], 3, 0);
        assert_eq!((t.eps, t.phi), (1, 1));
        assert_eq!(t.good(), Some(n(2, 2)));
        assert_eq!(t.cogood(), Some(n(4, 1)));
    }

    #[test]
    fn cancellation_is_bracket_matching() {
        let mk = |w: &str| -> Vec<SignedNode> {
            w.chars()
                .enumerate()
                .map(|(k, c)| SignedNode {
                    node: n(k + 1, 1),
                    sign: if c == '+' { Sign::Plus } else { Sign::Minus },
                })
                .collect()
        };
        let word = |v: &[SignedNode]| v.iter().map(|s| s.sign.symbol()).collect::<String>();
        assert_eq!(word(&reduce(&mk("-+"))), "");
        assert_eq!(word(&reduce(&mk("+-"))), "+-");
        assert_eq!(word(&reduce(&mk("--++-+"))), "");
        assert_eq!(word(&reduce(&mk("+--+-++-"))), "+-");
    }

    #[test]
    fn crystal_operator_examples() {
        let l = part![4, 2, 1];
        assert_eq!(e_tilde(&l, 3, 0, 2).unwrap(), Some(part![3, 1, 1]));
        assert_eq!(e_tilde(&l, 3, 0, 3).unwrap(), None);
        assert_eq!(f_tilde(&l, 3, 0, 1).unwrap(), Some(part![4, 2, 1, 1]));
        assert_eq!(e_tilde(&l, 3, 1, 0).unwrap(), Some(l.clone()));
        assert!(e_tilde(&part![1, 1, 1], 3, 0, 0).is_err());

        assert_eq!(f_hat(&l, 3, 0, 2), None);
        assert_eq!(f_hat(&l, 3, 0, 1), Some(part![4, 2, 1, 1]));
        assert_eq!(e_hat(&l, 3, 0, 0), Some(l.clone()));
        assert_eq!(e_hat(&l, 3, 0, 2), Some(part![3, 1, 1]));
    }

    #[test]
    fn weight_delta_examples() {
        let l = part![4, 2, 1];
        assert_eq!(weight_delta(&l, 3, 0, 1).unwrap(), -2);
        assert_eq!(abacus_weight(&part![4, 2, 1, 1], 3), 0);
        assert_eq!(abacus_weight(&l, 3), 2);
        assert_eq!(weight_delta(&l, 3, 0, 0).unwrap(), 0);
        assert!(weight_delta(&l, 3, 0, 2).is_err());
    }

    #[test]
    fn difficulty_examples() {
        assert!(is_difficult(&part![2, 2, 1], 3, 0).unwrap());
        assert!(difficult_abacus_check(&part![2, 2, 1], 3, 0).unwrap());
        // moving (2,2) to (4,1) gives (2,1,1,1)
        assert_eq!(
            part![2, 2, 1]
                .remove_node(n(2, 2))
                .unwrap()
                .add_node(n(4, 1)),
            Some(part![2, 1, 1, 1])
        );
        // (4,2,1) is 0-difficult: moving (2,2) to (4,1) gives the 3-singular (4,1,1,1).
        assert!(!part![4, 1, 1, 1].is_p_regular(3));
        assert!(is_difficult(&part![4, 2, 1], 3, 0).unwrap());
        assert!(difficult_abacus_check(&part![4, 2, 1], 3, 0).unwrap());
        // (5,2,1): good (2,2), cogood (4,1) gives (5,1,1,1), also singular; (3,1): compare both routes
        for l in [part![3, 1], part![5, 3, 1], part![6, 4, 2]] {
            for i in 0..3 {
                let s = signature(&l, 3, i);
                if s.eps > 0 && s.phi > 0 {
                    assert_eq!(
                        is_difficult(&l, 3, i).unwrap(),
                        difficult_abacus_check(&l, 3, i).unwrap()
                    );
                }
            }
        }
        assert_eq!(phi(&part![1], 3, 0), 0);
        assert!(!is_difficult(&part![1], 3, 0).unwrap());
        assert!(difficult_abacus_check(&part![1], 3, 0).is_err());
    }

    #[test]
    fn adjacency_examples() {
        let rep = node_adjacency_checks(&part![2, 2, 1], 3, 0).unwrap();
        assert_eq!(rep.addition.len(), 1);
        assert!(rep.consistent());
        let l = part![3, 1, 1];
        let s = signature(&l, 3, 2);
        assert_eq!(s.removable(), vec![n(1, 3)]);
        let rep = node_adjacency_checks(&l, 3, 2).unwrap();
        assert_eq!(rep.removal.len(), s.eps);
        assert!(rep.consistent());
    }

    #[test]
    fn reflection_examples() {
        assert_eq!(
            reflections(&Partition::empty(), 3).unwrap(),
            vec![(0, part![1])]
        );
        let r = reflections(&part![4, 2, 1], 3).unwrap();
        assert!(r.iter().all(|(i, _)| *i != 0));
        for (i, mu) in &r {
            let s = signature(&part![4, 2, 1], 3, *i);
            assert!(s.eps == 0 || s.phi == 0);
            assert_eq!(abacus_weight(mu, 3), 2);
        }
    }

    #[test]
    fn fixed_top_examples() {
        assert_eq!(fixed_top_shape(&part![4, 2, 1], 3), None);
        assert_eq!(fixed_top_shape(&Partition::empty(), 3), None);
        // (3,2,1): A = (1,3) and B = (3,2) both have residue 2; the 2-signature is "+-".
        let s = signature(&part![3, 2, 1], 3, 2);
        assert_eq!(s.reduced_word(), "+-");
        assert_eq!(fixed_top_shape(&part![3, 2, 1], 3), Some(2));
    }

    #[test]
    fn subset_helpers() {
        let l = part![4, 2, 1];
        let rem = remove_subsets(&l, 3, 0, 1);
        assert_eq!(rem, vec![part![4, 1, 1], part![3, 2, 1]]);
        assert_eq!(remove_subsets(&l, 3, 0, 2), vec![part![3, 1, 1]]);
        assert_eq!(add_subsets(&l, 3, 0, 1), vec![part![4, 2, 1, 1]]);
        assert!(add_subsets(&l, 3, 0, 2).is_empty());
    }
}
