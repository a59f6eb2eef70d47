//! Replication certificates for uniformly random seeds.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitrow::BitRow;
use crate::config::BinaryConfig;
use crate::error::{Error, Result};
use crate::replication::certificate::{certificate_path_type, replication_certificate, ReplicationCertificate};
use crate::rng::{trial_rng, RNG_ALGORITHM};
use crate::webca::WebRule;

pub const NOT_CERTIFIED: &str = "not certified";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedExperiment {
    pub rule: String,
    #[serde(rename = "L")]
    pub l: usize,
    pub trials: u64,
    pub m_max: u32,
    /// Ether signature (or "not certified") → number of trials.
    pub ethers: BTreeMap<String, u64>,
    #[serde(rename = "R")]
    pub r: BTreeMap<usize, u64>,
    pub rng_algorithm: String,
    pub rng_seed: u64,
}

impl SeedExperiment {
    pub fn count(&self, key: &str) -> u64 {
        self.ethers.get(key).copied().unwrap_or(0)
    }

    /// Empirical frequency and its standard error.
    pub fn frequency(&self, key: &str) -> (f64, f64) {
        let p = self.count(key) as f64 / self.trials as f64;
        (p, (p * (1.0 - p) / self.trials as f64).sqrt())
    }

    pub fn certified_fraction(&self) -> f64 {
        1.0 - self.frequency(NOT_CERTIFIED).0
    }
}

/// The seed of trial `trial`: `L + 1` fair bits on `[0, L]`.
pub fn random_seed(rng_seed: u64, trial: u64, l: usize) -> BinaryConfig {
    let mut rng = trial_rng(rng_seed, trial);
    BinaryConfig::finite(0, BitRow::from_bools((0..=l).map(|_| rng.gen::<bool>())))
}

pub fn seed_certificate(rule: &WebRule, l: usize, rng_seed: u64, trial: u64, m_max: u32) -> Result<ReplicationCertificate> {
    replication_certificate(rule, &random_seed(rng_seed, trial, l), Some(l as i64), m_max)
}

pub fn mc_random_seed_experiment(
    rule: &WebRule,
    l: usize,
    trials: u64,
    rng_seed: u64,
    m_max: u32,
    workers: usize,
) -> Result<SeedExperiment> {
    certificate_path_type(rule)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    let certs: Vec<ReplicationCertificate> = pool.install(|| {
        (0..trials)
            .into_par_iter()
            .map(|t| seed_certificate(rule, l, rng_seed, t, m_max))
            .collect::<Result<_>>()
    })?;
    let mut ethers = BTreeMap::new();
    let mut r = BTreeMap::new();
    for c in &certs {
        let key = c.ether.as_ref().map_or(NOT_CERTIFIED.to_string(), |e| e.signature.to_string());
        *ethers.entry(key).or_default() += 1;
        if let Some(rv) = c.r {
            *r.entry(rv).or_default() += 1;
        }
    }
    Ok(SeedExperiment {
        rule: rule.id.clone(),
        l,
        trials,
        m_max,
        ethers,
        r,
        rng_algorithm: RNG_ALGORITHM.into(),
        rng_seed,
    })
}
