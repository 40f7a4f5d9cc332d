use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::Serialize;
use serde_json::json;

use symext::bijections::{mullineux, regularize};
use symext::blocks::{enumerate_block, BlockId};
use symext::certifier::{certify, survey_of, validate, validation_issues, Certificate, Status};
use symext::specht::{specht_irreducible, specht_witness, SpechtWitness};
use symext::tables::{verify_tables_with, Table1Row, Table2Row};
use symext::zigzag::{basis_dimension, generator_count};
use symext::{analyze, regular_partitions_of, CertifyOptions, Partition, RuleTag};

#[derive(Parser)]
#[command(
    name = "symext",
    version,
    about = "Partitions, abacus displays, crystals and Ext¹ certificates for symmetric groups"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Core, weight, quotient, signatures, Mullineux image and regularization.
    Analyze {
        partition: Partition,
        #[arg(long)]
        p: usize,
    },
    /// Search for a certificate that Ext¹(D, D) vanishes.
    Certify {
        partition: Partition,
        #[arg(long)]
        p: usize,
        /// Comma-separated rule names, e.g. t-weight,r-trick1. Default: all.
        #[arg(long, value_delimiter = ',')]
        rules: Option<Vec<RuleTag>>,
        #[arg(long, default_value_t = 64)]
        max_steps: usize,
        #[arg(long, default_value_t = 20_000)]
        max_nodes: usize,
    },
    /// Certify every p-regular partition of n and report rule usage.
    Survey {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        rules: Option<Vec<RuleTag>>,
        #[arg(long, default_value_t = 64)]
        max_steps: usize,
        /// Certify a random sample of this many partitions instead of all.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include every certificate in the JSON output.
        #[arg(long)]
        certificates: bool,
    },
    /// Check a certificate read from a JSON file, or `-` for stdin.
    Validate { file: PathBuf },
    /// Re-derive the tables of locally difficult runner configurations and
    /// compare them with the shipped transcriptions.
    VerifyTables {
        #[arg(long, default_value_t = 7)]
        max_weight: usize,
        /// Directory holding table1.json and table2.json; defaults to the built-in copies.
        #[arg(long)]
        data: Option<PathBuf>,
    },
    /// All partitions with the given p-core and weight.
    EnumerateBlock {
        #[arg(long)]
        core: Partition,
        #[arg(long)]
        weight: usize,
        #[arg(long)]
        p: usize,
        /// Only p-regular partitions.
        #[arg(long)]
        regular: bool,
    },
    /// Whether the Specht module S^λ is irreducible (odd p).
    SpechtIrreducible {
        partition: Partition,
        #[arg(long)]
        p: usize,
        /// Show the abacus witness.
        #[arg(long)]
        witness: bool,
    },
    /// Mullineux image of a p-regular partition.
    Mullineux {
        partition: Partition,
        #[arg(long)]
        p: usize,
    },
    /// p-regularization.
    Regularize {
        partition: Partition,
        #[arg(long)]
        p: usize,
    },
    /// Dimension of the zigzag Schur algebra T(m, d).
    ZigzagDim {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
        /// Split the count by degree.
        #[arg(long)]
        by_degree: bool,
        /// Also list the degree-one generators (needs m ≥ d).
        #[arg(long)]
        generators: bool,
    },
}

/// Bad input, reported with exit status 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type Outcome = Result<bool, UsageError>;

fn emit(json: bool, value: &impl Serialize, human: impl FnOnce() -> String) {
    let text = if json {
        serde_json::to_string(value).expect("serializable output")
    } else {
        human()
    };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn options(rules: Option<Vec<RuleTag>>, max_steps: usize, max_nodes: usize) -> CertifyOptions {
    let mut o = match rules {
        Some(r) => CertifyOptions::with_rules(r),
        None => CertifyOptions::default(),
    };
    o.max_steps = max_steps;
    o.max_nodes = max_nodes;
    o
}

fn require_odd_prime(p: usize) -> Result<(), UsageError> {
    if p < 3 || !symext::is_prime(p) {
        return Err(UsageError(format!("p must be an odd prime, got {p}")));
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::Analyze { partition, p } => {
            let a = analyze(&partition, p)?;
            emit(json, &a, || {
                let mut s = String::new();
                let _ = writeln!(s, "{} at p = {}, size {}", a.partition, p, a.size);
                let _ = writeln!(
                    s,
                    "core {}, weight {}, quotient {}",
                    a.core,
                    a.weight,
                    a.quotient
                        .iter()
                        .map(|q| q.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                );
                let _ = writeln!(
                    s,
                    "p-regular {}, p-restricted {}",
                    a.p_regular, a.p_restricted
                );
                for r in &a.signatures {
                    let signs: String = r.signs.iter().map(|n| n.sign.symbol()).collect();
                    let _ = writeln!(
                        s,
                        "  i = {}: signature {:<8} eps {} phi {}{}",
                        r.residue,
                        if signs.is_empty() {
                            "∅".into()
                        } else {
                            signs
                        },
                        r.eps,
                        r.phi,
                        if a.difficult.contains(&r.residue) {
                            "  difficult"
                        } else {
                            ""
                        }
                    );
                }
                if let Some(m) = &a.mullineux {
                    let _ = writeln!(s, "Mullineux image {m}");
                }
                let _ = write!(s, "regularization {}", a.regularization);
                if let Some(irr) = a.specht_irreducible {
                    let _ = write!(
                        s,
                        "\nSpecht module {}",
                        if irr { "irreducible" } else { "reducible" }
                    );
                }
                s
            });
            Ok(true)
        }
        Command::Certify {
            partition,
            p,
            rules,
            max_steps,
            max_nodes,
        } => {
            let c = certify(&partition, p, &options(rules, max_steps, max_nodes))?;
            if c.status == Status::Certified && !validate(&c) {
                eprintln!("internal error: emitted certificate does not validate");
                return Ok(false);
            }
            emit(json, &c, || c.to_string());
            Ok(c.status == Status::Certified)
        }
        Command::Survey {
            p,
            n,
            rules,
            max_steps,
            sample,
            seed,
            certificates,
        } => {
            let mut parts = regular_partitions_of(n, p);
            if let Some(k) = sample {
                let mut rng = StdRng::seed_from_u64(seed);
                parts.shuffle(&mut rng);
                parts.truncate(k);
                parts.sort_by(|a, b| b.cmp(a));
            }
            let rep = survey_of(p, n, &parts, &options(rules, max_steps, 20_000))?;
            let ok = rep.unknown.is_empty() && rep.invalid.is_empty();
            let mut v = serde_json::to_value(&rep)?;
            if !certificates {
                v.as_object_mut().expect("object").remove("certificates");
            }
            emit(json, &v, || {
                let mut s = format!(
                    "p = {p}, n = {n}: {} partitions, {} certified, {} unknown, {} invalid",
                    rep.total,
                    rep.certified,
                    rep.unknown.len(),
                    rep.invalid.len()
                );
                s.push_str("\nrule usage (certificates using each rule):");
                for (r, k) in &rep.rule_usage {
                    let _ = write!(s, "\n  {r:<12} {k}");
                }
                s.push_str("\nterminals:");
                for (r, k) in &rep.terminals {
                    let _ = write!(s, "\n  {r:<12} {k}");
                }
                for l in rep.unknown.iter().take(20) {
                    let _ = write!(s, "\nUNKNOWN {l}");
                }
                for l in &rep.invalid {
                    let _ = write!(s, "\nINVALID {l}");
                }
                s
            });
            Ok(ok)
        }
        Command::Validate { file } => {
            let text = if file.as_os_str() == "-" {
                std::io::read_to_string(std::io::stdin())?
            } else {
                std::fs::read_to_string(&file)?
            };
            let c: Certificate = serde_json::from_str(&text)?;
            let issues = validation_issues(&c);
            let ok = issues.is_empty();
            emit(json, &json!({ "valid": ok, "issues": issues }), || {
                if ok {
                    "certificate is valid".into()
                } else {
                    issues
                        .iter()
                        .map(|i| match i.step {
                            Some(k) => format!("step {k}: {}", i.message),
                            None => format!("certificate: {}", i.message),
                        })
                        .collect::<Vec<_>>()
                        .join("\n")
                }
            });
            Ok(ok)
        }
        Command::VerifyTables { max_weight, data } => {
            let rep = match data {
                None => symext::tables::verify_tables(max_weight),
                Some(dir) => {
                    let t1: Vec<Table1Row> =
                        serde_json::from_str(&std::fs::read_to_string(dir.join("table1.json"))?)?;
                    let t2: Vec<Table2Row> =
                        serde_json::from_str(&std::fs::read_to_string(dir.join("table2.json"))?)?;
                    verify_tables_with(max_weight, &t1, &t2)
                }
            };
            emit(json, &rep, || {
                let mut s = rep.summary();
                for r in &rep.table1.missing {
                    let _ = write!(s, "\nTable I missing {r}");
                }
                for r in &rep.table1.extra {
                    let _ = write!(s, "\nTable I extra {r}");
                }
                for r in &rep.table2.missing {
                    let _ = write!(s, "\nTable II missing {r}");
                }
                for r in &rep.table2.extra {
                    let _ = write!(s, "\nTable II extra {r}");
                }
                s
            });
            Ok(rep.is_match())
        }
        Command::EnumerateBlock {
            core,
            weight,
            p,
            regular,
        } => {
            if !symext::is_prime(p) {
                return Err(UsageError(format!("p must be prime, got {p}")));
            }
            let block = BlockId::new(core, weight, p)?;
            let members = enumerate_block(&block, regular);
            let out = json!({
                "core": block.core,
                "weight": weight,
                "p": p,
                "regular_only": regular,
                "count": members.len(),
                "partitions": members,
            });
            emit(json, &out, || {
                members
                    .iter()
                    .map(|l| l.to_string())
                    .collect::<Vec<_>>()
                    .join("\n")
            });
            Ok(true)
        }
        Command::SpechtIrreducible {
            partition,
            p,
            witness,
        } => {
            require_odd_prime(p)?;
            let irr = specht_irreducible(&partition, p);
            let w = if witness {
                specht_witness(&partition, p)
            } else {
                None
            };
            let mut out = json!({ "partition": partition, "p": p, "irreducible": irr });
            if witness {
                out["witness"] = serde_json::to_value(&w)?;
            }
            emit(json, &out, || {
                let mut s = format!(
                    "S^{partition} is {} at p = {p}",
                    if irr { "irreducible" } else { "reducible" }
                );
                if let Some(w) = &w {
                    describe_witness(&mut s, &partition, w, 1);
                }
                s
            });
            Ok(true)
        }
        Command::Mullineux { partition, p } => {
            let out = mullineux(&partition, p)?;
            emit(
                json,
                &json!({ "input": partition, "output": out, "p": p }),
                || out.to_string(),
            );
            Ok(true)
        }
        Command::Regularize { partition, p } => {
            if !symext::is_prime(p) {
                return Err(UsageError(format!("p must be prime, got {p}")));
            }
            let out = regularize(&partition, p);
            emit(
                json,
                &json!({ "input": partition, "output": out, "p": p }),
                || out.to_string(),
            );
            Ok(true)
        }
        Command::ZigzagDim {
            p,
            m,
            d,
            by_degree,
            generators,
        } => {
            let rep = basis_dimension(p, m, d)?;
            let gens = if generators {
                Some(generator_count(p, m, d)?)
            } else {
                None
            };
            let mut v = serde_json::to_value(&rep)?;
            if !by_degree {
                v.as_object_mut().expect("object").remove("by_degree");
            }
            if let Some(g) = &gens {
                v["generators"] = json!({
                    "count": g.count,
                    "labels": g.degree_one.iter().map(|x| label_text(&x.label())).collect::<Vec<_>>(),
                });
            }
            emit(json, &v, || {
                let mut s = format!("dim T({m},{d}) at p = {p}: {}", rep.total);
                if by_degree {
                    for (k, n) in &rep.by_degree {
                        let _ = write!(s, "\n  degree {k}: {n}");
                    }
                }
                if let Some(g) = &gens {
                    let _ = write!(s, "\ndegree-one generators: {}", g.count);
                    for x in &g.degree_one {
                        let _ = write!(s, "\n  {}", label_text(&x.label()));
                    }
                }
                s
            });
            Ok(true)
        }
    }
}

fn label_text(l: &symext::zigzag::BasisLabel) -> String {
    l.0.iter()
        .map(|x| format!("{}[{},{}]", x.z, x.r, x.s))
        .collect::<Vec<_>>()
        .join(" ")
}

fn describe_witness(s: &mut String, lambda: &Partition, w: &SpechtWitness, depth: usize) {
    let pad = "  ".repeat(depth);
    match w {
        SpechtWitness::Core => {
            let _ = write!(s, "\n{pad}{lambda}: p-core");
        }
        SpechtWitness::Runners {
            display,
            j,
            k,
            regular_component,
            restricted_component,
            regular_witness,
            restricted_witness,
        } => {
            let _ = write!(
                s,
                "\n{pad}{lambda}: {} beads, regular component {regular_component} on runner {j}, restricted component {restricted_component} on runner {k}",
                display.beads()
            );
            if !regular_component.is_empty() {
                describe_witness(s, regular_component, regular_witness, depth + 1);
            }
            if !restricted_component.is_empty() {
                describe_witness(s, restricted_component, restricted_witness, depth + 1);
            }
        }
    }
}

fn init_threads() -> Result<(), UsageError> {
    if let Ok(v) = std::env::var("SYMEXT_THREADS") {
        let n: usize = v.parse().map_err(|_| {
            UsageError(format!(
                "SYMEXT_THREADS must be a positive integer, got {v:?}"
            ))
        })?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match init_threads().and_then(|()| run(cli)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
