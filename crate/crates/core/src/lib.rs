//! Combinatorics of partitions, abacus displays and crystals behind
//! self-extension vanishing for simple modules of symmetric groups, plus a
//! rule engine that emits checkable certificates.

pub mod abacus;
pub mod analysis;
pub mod bijections;
pub mod blocks;
pub mod certifier;
pub mod error;
pub mod partition;
pub mod signatures;
pub mod specht;
pub mod tables;
pub mod zigzag;

pub use abacus::{
    core_and_weight, decode_config, AbacusDisplay, RunnerConfig, RunnerInfo, RunnerStats,
};
pub use analysis::{analyze, Analysis};
pub use certifier::{certify, validate, Certificate, CertifyOptions, RuleTag, Status};
pub use error::{Error, Result};
pub use partition::{
    is_prime, partitions_of, regular_partitions_of, Node, Partition, ResidueContent,
};
pub use signatures::{Sign, SignatureReport, SignedNode};
pub use tables::{RunnerPairConfig, RunnerTripleConfig};
