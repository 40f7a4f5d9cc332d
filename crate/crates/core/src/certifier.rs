//! Certificates that a simple module `D^λ` has no self-extensions.
//!
//! A certificate is a chain `λ = λ_0 → λ_1 → ... → λ_k` of reductions, each of
//! which embeds `Ext¹(D^{λ_j}, D^{λ_j})` into `Ext¹(D^{λ_{j+1}}, D^{λ_{j+1}})`,
//! ending at a partition covered by one of the vanishing theorems used as
//! terminal rules. [`certify`] searches breadth first; [`validate`] checks a
//! certificate from scratch using independent computations where available.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abacus::{self, AbacusDisplay};
use crate::bijections::regularize;
use crate::bijections::{mullineux, mullineux_by_crystal};
use crate::blocks::{block_of, is_rock_block, is_rouquier};
use crate::error::{Error, Result};
use crate::partition::{is_prime, regular_partitions_of, Node, Partition};
use crate::signatures::{
    difficult_abacus_check, e_tilde, f_tilde, fixed_top_shape, is_difficult, reflections,
    require_regular, signature,
};
use crate::specht::{specht_descent, specht_irreducible};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RuleTag {
    #[serde(rename = "T-HEIGHT")]
    THeight,
    #[serde(rename = "T-WEIGHT")]
    TWeight,
    #[serde(rename = "T-ROCK")]
    TRock,
    #[serde(rename = "T-SPECHT")]
    TSpecht,
    #[serde(rename = "T-SMALL")]
    TSmall,
    #[serde(rename = "R-REFLECT")]
    RReflect,
    #[serde(rename = "R-TRICK1")]
    RTrick1,
    #[serde(rename = "R-SOCLE")]
    RSocle,
    #[serde(rename = "R-FIXEDTOP")]
    RFixedTop,
    #[serde(rename = "R-TRICK2")]
    RTrick2,
    #[serde(rename = "R-MULLINEUX")]
    RMullineux,
}

impl RuleTag {
    pub const ALL: [RuleTag; 11] = [
        RuleTag::THeight,
        RuleTag::TWeight,
        RuleTag::TRock,
        RuleTag::TSpecht,
        RuleTag::TSmall,
        RuleTag::RReflect,
        RuleTag::RTrick1,
        RuleTag::RSocle,
        RuleTag::RFixedTop,
        RuleTag::RTrick2,
        RuleTag::RMullineux,
    ];

    /// Terminal rules in the order they are tried: cheapest first.
    pub const TERMINALS: [RuleTag; 5] = [
        RuleTag::TWeight,
        RuleTag::THeight,
        RuleTag::TSmall,
        RuleTag::TRock,
        RuleTag::TSpecht,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleTag::THeight => "T-HEIGHT",
            RuleTag::TWeight => "T-WEIGHT",
            RuleTag::TRock => "T-ROCK",
            RuleTag::TSpecht => "T-SPECHT",
            RuleTag::TSmall => "T-SMALL",
            RuleTag::RReflect => "R-REFLECT",
            RuleTag::RTrick1 => "R-TRICK1",
            RuleTag::RSocle => "R-SOCLE",
            RuleTag::RFixedTop => "R-FIXEDTOP",
            RuleTag::RTrick2 => "R-TRICK2",
            RuleTag::RMullineux => "R-MULLINEUX",
        }
    }

    pub fn is_terminal(self) -> bool {
        RuleTag::TERMINALS.contains(&self)
    }
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleTag {
    type Err = Error;

    /// Case-insensitive, `_` accepted for `-`.
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('_', "-");
        RuleTag::ALL
            .into_iter()
            .find(|t| t.name() == norm)
            .ok_or_else(|| Error::Parse(format!("unknown rule {s:?}")))
    }
}

/// Which half of the socle rule is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SocleSide {
    /// Pass to `ẽ_i^{ε_i} λ`.
    Remove,
    /// Pass to `f̃_i^{φ_i} λ`.
    Add,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", content = "params")]
pub enum Reduction {
    /// Isomorphism: `ε_i = 0` and `f̃_i^{φ_i}`, or `φ_i = 0` and `ẽ_i^{ε_i}`.
    #[serde(rename = "R-REFLECT")]
    Reflect { residue: usize },
    /// `ε_i > 0` and `λ` not `i`-difficult: pass to `ẽ_i^{ε_i} λ`.
    #[serde(rename = "R-TRICK1")]
    Trick1 { residue: usize, eps: usize },
    #[serde(rename = "R-SOCLE")]
    Socle { residue: usize, side: SocleSide },
    /// Remove the node `(c, a+1)` from `((a+1)^c, a^{p-2}, a-1, ...)`.
    #[serde(rename = "R-FIXEDTOP")]
    FixedTop { residue: usize },
    /// Reflections `λ^{ℓ+1} = f̃_{i+ℓ}^{φ} λ^ℓ` for `ℓ < m`, then `ẽ_{i+m}^{ε}` at `λ^m`.
    /// `chain` lists `λ^1, ..., λ^m`.
    #[serde(rename = "R-TRICK2")]
    Trick2 {
        residue: usize,
        chain: Vec<Partition>,
    },
    /// Isomorphism given by tensoring with the sign module.
    #[serde(rename = "R-MULLINEUX")]
    Mullineux {},
}

impl Reduction {
    pub fn tag(&self) -> RuleTag {
        match self {
            Reduction::Reflect { .. } => RuleTag::RReflect,
            Reduction::Trick1 { .. } => RuleTag::RTrick1,
            Reduction::Socle { .. } => RuleTag::RSocle,
            Reduction::FixedTop { .. } => RuleTag::RFixedTop,
            Reduction::Trick2 { .. } => RuleTag::RTrick2,
            Reduction::Mullineux {} => RuleTag::RMullineux,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", content = "params")]
pub enum Terminal {
    #[serde(rename = "T-HEIGHT")]
    Height { height: usize },
    #[serde(rename = "T-WEIGHT")]
    Weight { weight: usize },
    #[serde(rename = "T-ROCK")]
    Rock { core: Partition, weight: usize },
    /// `ẽ_i^{ε} λ = μ = ν^R` with `S^ν` irreducible.
    #[serde(rename = "T-SPECHT")]
    Specht {
        residue: usize,
        eps: usize,
        mu: Partition,
        nu: Partition,
    },
    #[serde(rename = "T-SMALL")]
    Small { size: usize },
}

impl Terminal {
    pub fn tag(&self) -> RuleTag {
        match self {
            Terminal::Height { .. } => RuleTag::THeight,
            Terminal::Weight { .. } => RuleTag::TWeight,
            Terminal::Rock { .. } => RuleTag::TRock,
            Terminal::Specht { .. } => RuleTag::TSpecht,
            Terminal::Small { .. } => RuleTag::TSmall,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    #[serde(flatten)]
    pub rule: Reduction,
    pub from: Partition,
    pub to: Partition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Certified,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Certified => "CERTIFIED",
            Status::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub p: usize,
    pub start: Partition,
    pub steps: Vec<Step>,
    pub terminal: Option<Terminal>,
    pub status: Status,
}

impl Certificate {
    /// Partition the terminal rule applies to.
    pub fn last(&self) -> &Partition {
        self.steps.last().map_or(&self.start, |s| &s.to)
    }

    /// Every rule used, terminal included.
    pub fn rules(&self) -> Vec<RuleTag> {
        let mut v: Vec<RuleTag> = self.steps.iter().map(|s| s.rule.tag()).collect();
        v.extend(self.terminal.as_ref().map(Terminal::tag));
        v
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} at p = {}", self.status, self.start, self.p)?;
        for s in &self.steps {
            writeln!(f, "  {} -> {}  [{}]", s.from, s.to, s.rule.tag())?;
        }
        match &self.terminal {
            Some(t) => write!(f, "  {}: {}", self.last(), t.tag()),
            None => write!(f, "  no terminal rule reached"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifyOptions {
    pub enabled: BTreeSet<RuleTag>,
    /// Longest reduction chain explored.
    pub max_steps: usize,
    /// Partitions expanded before giving up.
    pub max_nodes: usize,
    /// Longest chain tried by Trick 2; `None` means `p`.
    pub max_chain: Option<usize>,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            enabled: RuleTag::ALL.into_iter().collect(),
            max_steps: 64,
            max_nodes: 20_000,
            max_chain: None,
        }
    }
}

impl CertifyOptions {
    pub fn with_rules(rules: impl IntoIterator<Item = RuleTag>) -> Self {
        CertifyOptions {
            enabled: rules.into_iter().collect(),
            ..Default::default()
        }
    }

    pub fn without(mut self, rules: &[RuleTag]) -> Self {
        for r in rules {
            self.enabled.remove(r);
        }
        self
    }

    fn on(&self, t: RuleTag) -> bool {
        self.enabled.contains(&t)
    }
}

fn check_prime(p: usize) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::UnsupportedPrime(p));
    }
    Ok(())
}

/// The first terminal rule (in priority order) that holds for `λ`.
pub fn terminal_for(lambda: &Partition, p: usize, options: &CertifyOptions) -> Option<Terminal> {
    RuleTag::TERMINALS
        .into_iter()
        .filter(|&t| options.on(t))
        .find_map(|t| terminal_rule(lambda, p, t))
}

fn terminal_rule(lambda: &Partition, p: usize, tag: RuleTag) -> Option<Terminal> {
    match tag {
        RuleTag::TWeight => {
            let w = abacus::weight(lambda, p);
            (w <= 7).then_some(Terminal::Weight { weight: w })
        }
        RuleTag::THeight => (lambda.height() <= p + 2).then_some(Terminal::Height {
            height: lambda.height(),
        }),
        RuleTag::TSmall => (lambda.size() < p).then_some(Terminal::Small {
            size: lambda.size(),
        }),
        RuleTag::TRock => is_rock_block(lambda, p).ok()?.then(|| {
            let b = block_of(lambda, p);
            Terminal::Rock {
                core: b.core,
                weight: b.weight,
            }
        }),
        RuleTag::TSpecht => {
            let w = specht_descent(lambda, p).ok()??;
            Some(Terminal::Specht {
                residue: w.residue,
                eps: w.eps,
                mu: w.mu,
                nu: w.nu,
            })
        }
        _ => None,
    }
}

/// `(i, ẽ_i^{ε_i} λ)` for every `i` with `ε_i > 0` and `λ` not `i`-difficult.
pub fn trick1_targets(lambda: &Partition, p: usize) -> Result<Vec<(usize, Partition)>> {
    require_regular(lambda, p)?;
    let mut out = Vec::new();
    for i in 0..p {
        let s = signature(lambda, p, i);
        if s.eps > 0 && !is_difficult(lambda, p, i)? {
            out.push((i, e_tilde(lambda, p, i, s.eps)?.expect("r ≤ ε")));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trick2Chain {
    pub residue: usize,
    /// `λ^1 = λ, ..., λ^m`.
    pub chain: Vec<Partition>,
    pub target: Partition,
}

/// Follow the chain for a fixed starting residue; `None` if it breaks or
/// does not end within `max_chain` steps.
fn trick2_from(lambda: &Partition, p: usize, i: usize, max_chain: usize) -> Option<Trick2Chain> {
    let mut chain = vec![lambda.clone()];
    for m in 2..=max_chain {
        let prev = chain.last().expect("nonempty");
        let j = (i + m - 1) % p;
        let s = signature(prev, p, j);
        if s.eps != 0 {
            return None;
        }
        let next = f_tilde(prev, p, j, s.phi).ok()??;
        let k = (i + m) % p;
        let t = signature(&next, p, k);
        chain.push(next);
        let cur = chain.last().expect("nonempty");
        if t.eps > 0 && t.phi > 0 && !is_difficult(cur, p, k).ok()? {
            let target = e_tilde(cur, p, k, t.eps).ok()??;
            return Some(Trick2Chain {
                residue: i,
                chain,
                target,
            });
        }
    }
    None
}

/// The shortest Trick 2 chain for each starting residue, with `m ≤ max_chain`.
pub fn trick2_targets(lambda: &Partition, p: usize, max_chain: usize) -> Result<Vec<Trick2Chain>> {
    require_regular(lambda, p)?;
    Ok((0..p)
        .filter_map(|i| trick2_from(lambda, p, i, max_chain))
        .collect())
}

/// Target of the socle rule on the given side, when its condition allows it.
pub fn socle_target(
    lambda: &Partition,
    p: usize,
    i: usize,
    side: SocleSide,
) -> Result<Option<Partition>> {
    require_regular(lambda, p)?;
    let s = signature(lambda, p, i);
    let (r, phi) = (s.eps, s.phi);
    match side {
        SocleSide::Remove => {
            if r == 0 {
                return Ok(None);
            }
            let mu = e_tilde(lambda, p, i, r)?.expect("r ≤ ε");
            if phi > 0 {
                let b = signature(&mu, p, i).conormal[r];
                if !mu
                    .add_node(b)
                    .expect("conormal node is addable")
                    .is_p_regular(p)
                {
                    return Ok(None);
                }
            }
            Ok(Some(mu))
        }
        SocleSide::Add => {
            if phi == 0 {
                return Ok(None);
            }
            let nu = f_tilde(lambda, p, i, phi)?.expect("s ≤ φ");
            if r > 0 {
                let a = signature(&nu, p, i).normal[phi];
                if !nu
                    .remove_node(a)
                    .expect("normal node is removable")
                    .is_p_regular(p)
                {
                    return Ok(None);
                }
            }
            Ok(Some(nu))
        }
    }
}

/// `λ_A` for `λ = ((a+1)^c, a^{p-2}, a-1, ...)` with `A = (c, a+1)` good and `(c+p-1, a)` cogood.
pub fn fixed_top_target(lambda: &Partition, p: usize) -> Option<(usize, Partition)> {
    let i = fixed_top_shape(lambda, p)?;
    let c = lambda
        .parts()
        .iter()
        .take_while(|&&x| x == lambda.part(1))
        .count();
    Some((i, lambda.remove_node(Node::new(c, lambda.part(1)))?))
}

fn reductions(
    lambda: &Partition,
    p: usize,
    options: &CertifyOptions,
) -> Vec<(Reduction, Partition)> {
    let mut out = Vec::new();
    if options.on(RuleTag::RReflect) {
        for (i, mu) in reflections(lambda, p).expect("regular") {
            out.push((Reduction::Reflect { residue: i }, mu));
        }
    }
    if options.on(RuleTag::RTrick1) {
        for (i, mu) in trick1_targets(lambda, p).expect("regular") {
            let eps = signature(lambda, p, i).eps;
            out.push((Reduction::Trick1 { residue: i, eps }, mu));
        }
    }
    if options.on(RuleTag::RFixedTop) {
        if let Some((i, mu)) = fixed_top_target(lambda, p) {
            out.push((Reduction::FixedTop { residue: i }, mu));
        }
    }
    if options.on(RuleTag::RSocle) {
        for i in 0..p {
            for side in [SocleSide::Remove, SocleSide::Add] {
                if let Some(mu) = socle_target(lambda, p, i, side).expect("regular") {
                    out.push((Reduction::Socle { residue: i, side }, mu));
                }
            }
        }
    }
    if options.on(RuleTag::RTrick2) {
        let max_chain = options.max_chain.unwrap_or(p);
        for t in trick2_targets(lambda, p, max_chain).expect("regular") {
            out.push((
                Reduction::Trick2 {
                    residue: t.residue,
                    chain: t.chain,
                },
                t.target,
            ));
        }
    }
    out
}

/// Search for a certificate. Returns an `UNKNOWN` certificate with no steps
/// when no enabled rule leads to a terminal within the limits.
pub fn certify(lambda: &Partition, p: usize, options: &CertifyOptions) -> Result<Certificate> {
    check_prime(p)?;
    require_regular(lambda, p)?;
    let use_m = options.on(RuleTag::RMullineux);
    let orbit_key = |x: &Partition| -> Partition {
        if use_m {
            let m = mullineux(x, p).expect("regular");
            if m < *x {
                return m;
            }
        }
        x.clone()
    };
    let done = |steps: Vec<Step>, terminal: Terminal| Certificate {
        p,
        start: lambda.clone(),
        steps,
        terminal: Some(terminal),
        status: Status::Certified,
    };

    let mut visited: HashSet<Partition> = HashSet::new();
    let mut queue: VecDeque<(Partition, Vec<Step>)> = VecDeque::new();
    visited.insert(orbit_key(lambda));
    queue.push_back((lambda.clone(), Vec::new()));
    let mut expanded = 0;
    while let Some((x, path)) = queue.pop_front() {
        expanded += 1;
        if expanded > options.max_nodes {
            break;
        }
        let mut sides = vec![(x.clone(), path.clone())];
        if use_m {
            let xm = mullineux(&x, p)?;
            if xm != x {
                let mut pm = path.clone();
                pm.push(Step {
                    rule: Reduction::Mullineux {},
                    from: x.clone(),
                    to: xm.clone(),
                });
                sides.push((xm, pm));
            }
        }
        for (y, py) in &sides {
            if let Some(t) = terminal_for(y, p, options) {
                return Ok(done(py.clone(), t));
            }
        }
        for (y, py) in sides {
            if py.len() >= options.max_steps {
                continue;
            }
            for (rule, z) in reductions(&y, p, options) {
                if visited.insert(orbit_key(&z)) {
                    let mut pz = py.clone();
                    pz.push(Step {
                        rule,
                        from: y.clone(),
                        to: z.clone(),
                    });
                    queue.push_back((z, pz));
                }
            }
        }
    }
    Ok(Certificate {
        p,
        start: lambda.clone(),
        steps: Vec::new(),
        terminal: None,
        status: Status::Unknown,
    })
}

/// Why a certificate was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationIssue {
    /// Step index, or `None` for the certificate as a whole or its terminal.
    pub step: Option<usize>,
    pub message: String,
}

/// Check every step and the terminal rule; empty means valid.
pub fn validation_issues(cert: &Certificate) -> Vec<ValidationIssue> {
    let mut issues = Vec::new();
    let whole = |m: String| ValidationIssue {
        step: None,
        message: m,
    };
    let p = cert.p;
    if !is_prime(p) || p == 2 {
        return vec![whole(format!("p = {p} is not an odd prime"))];
    }
    if cert.status != Status::Certified {
        issues.push(whole("status is not CERTIFIED".into()));
    }
    let mut seen = HashSet::new();
    seen.insert(cert.start.clone());
    let mut cur = &cert.start;
    if !cur.is_p_regular(p) {
        return vec![whole(format!("{cur} is not {p}-regular"))];
    }
    for (k, step) in cert.steps.iter().enumerate() {
        if step.from != *cur {
            issues.push(ValidationIssue {
                step: Some(k),
                message: format!("starts at {} instead of {cur}", step.from),
            });
            return issues;
        }
        if !step.to.is_p_regular(p) {
            issues.push(ValidationIssue {
                step: Some(k),
                message: format!("{} is not {p}-regular", step.to),
            });
            return issues;
        }
        if let Err(m) = check_step(step, p) {
            issues.push(ValidationIssue {
                step: Some(k),
                message: m,
            });
        }
        if !seen.insert(step.to.clone()) {
            issues.push(ValidationIssue {
                step: Some(k),
                message: format!("{} repeats", step.to),
            });
        }
        cur = &step.to;
    }
    match &cert.terminal {
        None => issues.push(whole("no terminal rule".into())),
        Some(t) => {
            if let Err(m) = check_terminal(t, cur, p) {
                issues.push(whole(m));
            }
        }
    }
    issues
}

pub fn validate(cert: &Certificate) -> bool {
    validation_issues(cert).is_empty()
}

/// `ε_i` and `φ_i` counted from the raw `i`-signature by bracket matching on the abacus.
fn eps_phi_by_abacus(lambda: &Partition, p: usize, i: usize) -> (usize, usize) {
    let d = AbacusDisplay::canonical(lambda, p);
    let n = d.beads();
    let res = |x: usize| (x + p * n - n) % p;
    let mut word: Vec<(usize, bool)> = d
        .removable_positions()
        .into_iter()
        .filter(|&x| res(x) == i)
        .map(|x| (x, false))
        .chain(
            d.addable_positions()
                .into_iter()
                .filter(|&x| res(x) == i)
                .map(|x| (x, true)),
        )
        .collect();
    word.sort();
    let (mut open_minus, mut plus) = (0usize, 0usize);
    for (_, is_plus) in word {
        if is_plus {
            if open_minus > 0 {
                open_minus -= 1;
            } else {
                plus += 1;
            }
        } else {
            open_minus += 1;
        }
    }
    (open_minus, plus)
}

fn difficult_by_abacus(lambda: &Partition, p: usize, i: usize) -> bool {
    difficult_abacus_check(lambda, p, i).unwrap_or(false)
}

/// `r` applications of a crystal operator one node at a time.
fn iterate(lambda: &Partition, p: usize, i: usize, r: usize, raise: bool) -> Option<Partition> {
    let mut cur = lambda.clone();
    for _ in 0..r {
        cur = if raise {
            f_tilde(&cur, p, i, 1).ok()??
        } else {
            e_tilde(&cur, p, i, 1).ok()??
        };
    }
    Some(cur)
}

fn check_step(step: &Step, p: usize) -> std::result::Result<(), String> {
    let (x, y) = (&step.from, &step.to);
    let expect = |got: Option<Partition>, what: &str| match got {
        Some(z) if z == *y => Ok(()),
        Some(z) => Err(format!("{what} gives {z}, not {y}")),
        None => Err(format!("{what} is undefined")),
    };
    match &step.rule {
        Reduction::Reflect { residue: i } => {
            let (eps, phi) = eps_phi_by_abacus(x, p, *i);
            match (eps, phi) {
                (0, s) if s > 0 => expect(iterate(x, p, *i, s, true), "raising"),
                (r, 0) if r > 0 => expect(iterate(x, p, *i, r, false), "lowering"),
                _ => Err(format!("no {i}-reflection: ε = {eps}, φ = {phi}")),
            }
        }
        Reduction::Trick1 { residue: i, eps } => {
            let (e, phi) = eps_phi_by_abacus(x, p, *i);
            if e == 0 || e != *eps {
                return Err(format!("ε_{i} is {e}, certificate says {eps}"));
            }
            if phi > 0 && difficult_by_abacus(x, p, *i) {
                return Err(format!("{x} is {i}-difficult"));
            }
            expect(iterate(x, p, *i, e, false), "lowering")
        }
        Reduction::Socle { residue: i, side } => {
            let (r, s) = eps_phi_by_abacus(x, p, *i);
            match side {
                SocleSide::Remove => {
                    if r == 0 {
                        return Err(format!("ε_{i} = 0"));
                    }
                    let mu = iterate(x, p, *i, r, false).ok_or("lowering failed")?;
                    if s > 0 {
                        // The (r+1)-th conormal node of μ from the top is the
                        // top addable i-node of μ that keeps the word reduced.
                        let b = signature(&mu, p, *i)
                            .conormal
                            .get(r)
                            .copied()
                            .ok_or("missing conormal node")?;
                        if !mu.add_node(b).is_some_and(|z| z.is_p_regular(p)) {
                            return Err("adding the next conormal node is singular".into());
                        }
                    }
                    expect(Some(mu), "lowering")
                }
                SocleSide::Add => {
                    if s == 0 {
                        return Err(format!("φ_{i} = 0"));
                    }
                    let nu = iterate(x, p, *i, s, true).ok_or("raising failed")?;
                    if r > 0 {
                        let a = signature(&nu, p, *i)
                            .normal
                            .get(s)
                            .copied()
                            .ok_or("missing normal node")?;
                        if !nu.remove_node(a).is_some_and(|z| z.is_p_regular(p)) {
                            return Err("removing the next normal node is singular".into());
                        }
                    }
                    expect(Some(nu), "raising")
                }
            }
        }
        Reduction::FixedTop { residue: i } => {
            let parts = x.parts();
            let top = x.part(1);
            let c = parts.iter().take_while(|&&v| v == top).count();
            if top < 2 {
                return Err("first row too short".into());
            }
            let a = top - 1;
            let shape = (c + 1..c + p - 1).all(|k| x.part(k) == a) && x.part(c + p - 1) == a - 1;
            if !shape {
                return Err(format!(
                    "{x} is not of the form ((a+1)^c, a^(p-2), a-1, ...)"
                ));
            }
            let good = Node::new(c, top);
            let cogood = Node::new(c + p - 1, a);
            let s = signature(x, p, *i);
            if good.residue(p) != *i || s.good() != Some(good) || s.cogood() != Some(cogood) {
                return Err("top node is not good or the node below is not cogood".into());
            }
            expect(x.remove_node(good), "removing the top node")
        }
        Reduction::Trick2 { residue: i, chain } => {
            if chain.len() < 2 || chain[0] != *x {
                return Err(
                    "chain must start at the step's partition and have length at least 2".into(),
                );
            }
            let m = chain.len();
            for l in 1..m {
                let j = (i + l) % p;
                let (e, f) = eps_phi_by_abacus(&chain[l - 1], p, j);
                if e != 0 {
                    return Err(format!("ε_{j} of link {l} is {e}"));
                }
                if iterate(&chain[l - 1], p, j, f, true).as_ref() != Some(&chain[l]) {
                    return Err(format!("link {l} is not the {j}-reflection"));
                }
            }
            let k = (i + m) % p;
            let last = &chain[m - 1];
            let (e, f) = eps_phi_by_abacus(last, p, k);
            if e == 0 || f == 0 || difficult_by_abacus(last, p, k) {
                return Err(format!("Trick 1 does not apply to {last} at residue {k}"));
            }
            expect(iterate(last, p, k, e, false), "final lowering")
        }
        Reduction::Mullineux {} => {
            expect(mullineux_by_crystal(x, p).ok(), "the crystal Mullineux map")
        }
    }
}

fn check_terminal(t: &Terminal, x: &Partition, p: usize) -> std::result::Result<(), String> {
    match t {
        Terminal::Weight { weight } => {
            let w = AbacusDisplay::canonical(x, p).quotient().weight();
            if w != *weight || w > 7 {
                return Err(format!("weight of {x} is {w}"));
            }
        }
        Terminal::Height { height } => {
            if x.height() != *height || *height > p + 2 {
                return Err(format!("height of {x} is {}", x.height()));
            }
        }
        Terminal::Small { size } => {
            if x.size() != *size || *size >= p {
                return Err(format!("size of {x} is {}", x.size()));
            }
        }
        Terminal::Rock { core, weight } => {
            let (c, w) = abacus::core_and_weight(x, p);
            if c != *core || w != *weight {
                return Err(format!("{x} lies in the block ({c}, {w})"));
            }
            if !is_rouquier(core, p, *weight).map_err(|e| e.to_string())? {
                return Err(format!("{core} is not {weight}-Rouquier"));
            }
        }
        Terminal::Specht {
            residue: i,
            eps,
            mu,
            nu,
        } => {
            let (e, _) = eps_phi_by_abacus(x, p, *i);
            if e != *eps {
                return Err(format!("ε_{i} is {e}"));
            }
            if iterate(x, p, *i, e, false).as_ref() != Some(mu) {
                return Err(format!("lowering does not reach {mu}"));
            }
            if regularize(nu, p) != *mu {
                return Err(format!("{nu} does not regularize to {mu}"));
            }
            if !specht_irreducible(nu, p) {
                return Err(format!("S^{nu} is reducible"));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyReport {
    pub p: usize,
    pub n: usize,
    pub total: usize,
    pub certified: usize,
    pub unknown: Vec<Partition>,
    /// Failures of [`validate`] on emitted certificates.
    pub invalid: Vec<Partition>,
    /// Number of certificates using each rule.
    pub rule_usage: BTreeMap<String, usize>,
    /// Number of certificates ending in each terminal rule.
    pub terminals: BTreeMap<String, usize>,
    pub certificates: Vec<Certificate>,
}

/// Certify every `p`-regular partition of `n`, in parallel; results are in
/// the order of [`regular_partitions_of`].
pub fn survey(p: usize, n: usize, options: &CertifyOptions) -> Result<SurveyReport> {
    survey_of(p, n, &regular_partitions_of(n, p), options)
}

/// Certify the given partitions of `n`, in parallel; results keep the input order.
pub fn survey_of(
    p: usize,
    n: usize,
    parts: &[Partition],
    options: &CertifyOptions,
) -> Result<SurveyReport> {
    check_prime(p)?;
    if let Some(l) = parts.iter().find(|l| l.size() != n) {
        return Err(Error::Precondition(format!(
            "{l} is not a partition of {n}"
        )));
    }
    let certificates: Vec<Certificate> = parts
        .par_iter()
        .map(|l| certify(l, p, options))
        .collect::<Result<_>>()?;
    let valid: Vec<bool> = certificates.par_iter().map(validate).collect();
    let mut rule_usage = BTreeMap::new();
    let mut terminals = BTreeMap::new();
    let mut unknown = Vec::new();
    let mut invalid = Vec::new();
    for (c, ok) in certificates.iter().zip(valid) {
        if c.status == Status::Unknown {
            unknown.push(c.start.clone());
            continue;
        }
        if !ok {
            invalid.push(c.start.clone());
        }
        let used: BTreeSet<RuleTag> = c.rules().into_iter().collect();
        for r in used {
            *rule_usage.entry(r.to_string()).or_insert(0) += 1;
        }
        if let Some(t) = &c.terminal {
            *terminals.entry(t.tag().to_string()).or_insert(0) += 1;
        }
    }
    Ok(SurveyReport {
        p,
        n,
        total: certificates.len(),
        certified: certificates.len() - unknown.len(),
        unknown,
        invalid,
        rule_usage,
        terminals,
        certificates,
    })
}
