//! Ethers: doubly periodic {0,2} orbits of the web CA on periodic rows.

use std::collections::HashMap;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::config::{bracket_notation, parse_word, TernaryConfig};
use crate::error::{Error, Result};
use crate::webca::{step_periodic, WebRule};

pub const DEFAULT_ETHER_CAP: usize = 1 << 16;

/// A word over {0,2} up to rotation, ordered by length and then
/// lexicographically with `0 < 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature(Vec<u8>);

impl Ord for Signature {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.0.len(), &self.0).cmp(&(other.0.len(), &other.0))
    }
}

impl PartialOrd for Signature {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Signature {
    pub fn new(states: Vec<u8>) -> Self {
        Signature(canonical_word(&states))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let states = parse_word(s.trim())?;
        if states.is_empty() || states.contains(&1) {
            return Err(Error::Parse(format!("`{s}` is not a nonempty word over {{0,2}}")));
        }
        Ok(Signature::new(states))
    }

    pub fn states(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&s| s == 0)
    }

    pub fn twos(&self) -> usize {
        self.0.iter().filter(|&&s| s == 2).count()
    }

    pub fn reversed(&self) -> Signature {
        let mut r = self.0.clone();
        r.reverse();
        Signature::new(r)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&bracket_notation(&self.0))
    }
}

impl Serialize for Signature {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Signature {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Signature::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Smallest `p` with `row[i] == row[(i + p) mod n]` for all `i`.
pub fn minimal_period(row: &[u8]) -> usize {
    let n = row.len();
    (1..=n)
        .filter(|p| n % p == 0)
        .find(|&p| (0..n).all(|i| row[i] == row[(i + p) % n]))
        .unwrap_or(n)
}

/// Lexicographically least rotation.
pub fn least_rotation(word: &[u8]) -> Vec<u8> {
    let n = word.len();
    (0..n)
        .map(|k| word[k..].iter().chain(&word[..k]).copied().collect::<Vec<u8>>())
        .min()
        .unwrap_or_default()
}

fn canonical_word(row: &[u8]) -> Vec<u8> {
    least_rotation(&row[..minimal_period(row)])
}

/// Signature of a single periodic row: minimal period, then least rotation.
pub fn canonical_signature(row: &[u8]) -> Signature {
    Signature(canonical_word(row))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtherDescriptor {
    pub signature: Signature,
    #[serde(rename = "sigma")]
    pub spatial_period: usize,
    #[serde(rename = "tau")]
    pub temporal_period: usize,
    /// Space-time density of 2s over one period.
    #[serde(with = "crate::replication::ratio_json")]
    pub density2: Ratio<u64>,
    /// Steps from the initial row to the first row of the cycle.
    pub burn_in: usize,
    /// Cycle rows of length `spatial_period`, starting at the signature row.
    #[serde(skip)]
    pub orbit: Vec<Vec<u8>>,
}

impl EtherDescriptor {
    pub fn is_zero(&self) -> bool {
        self.signature.is_zero()
    }
}

/// Evolves a periodic row until a row repeats exactly and describes the cycle.
/// Fails when 1s persist on the cycle or no repeat occurs within `cap` steps.
pub fn produce_ether(rule: &WebRule, start: &TernaryConfig, cap: usize) -> Result<EtherDescriptor> {
    if !start.periodic {
        return Err(Error::Precondition("ether production needs a periodic row".into()));
    }
    let mut seen: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut rows = Vec::new();
    let mut row = start.states.clone();
    let (mu, tau) = loop {
        if let Some(&s) = seen.get(&row) {
            break (s, rows.len() - s);
        }
        if rows.len() > cap {
            return Err(Error::Unresolved(format!("no recurrence within {cap} steps")));
        }
        seen.insert(row.clone(), rows.len());
        let next = step_periodic(rule, &row);
        rows.push(std::mem::replace(&mut row, next));
    };
    let cycle = &rows[mu..];
    if cycle.iter().any(|r| r.contains(&1)) {
        return Err(Error::Unresolved(
            "first level persists on the cycle; no {0,2} ether".into(),
        ));
    }
    let n = start.states.len();
    let twos: usize = cycle.iter().map(|r| r.iter().filter(|&&s| s == 2).count()).sum();
    let sig = cycle.iter().map(|r| canonical_signature(r)).min().unwrap();
    let orbit = ether_orbit(rule, &sig, tau);
    Ok(EtherDescriptor {
        spatial_period: sig.len(),
        temporal_period: tau,
        density2: Ratio::new(twos as u64, (n * tau) as u64),
        burn_in: mu,
        signature: sig,
        orbit,
    })
}

/// Cycle rows of the ether through its signature row.
pub fn ether_orbit(rule: &WebRule, sig: &Signature, tau: usize) -> Vec<Vec<u8>> {
    let mut out = vec![sig.0.clone()];
    for _ in 1..tau {
        let next = step_periodic(rule, out.last().unwrap());
        out.push(next);
    }
    out
}

/// Ether generated by a signature word itself.
pub fn ether_from_signature(rule: &WebRule, sig: &Signature, cap: usize) -> Result<EtherDescriptor> {
    produce_ether(rule, &TernaryConfig::periodic(sig.0.clone())?, cap)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "class", content = "with")]
pub enum ReflectionClass {
    Symmetric,
    PairWith(Signature),
}

/// Compares the ether with the one generated by its reflected signature row.
pub fn reflection_class(ether: &EtherDescriptor, rule: &WebRule, cap: usize) -> Result<ReflectionClass> {
    let mut rev = ether.signature.0.clone();
    rev.reverse();
    let other = produce_ether(rule, &TernaryConfig::periodic(rev)?, cap)?;
    Ok(if other.signature == ether.signature {
        ReflectionClass::Symmetric
    } else {
        ReflectionClass::PairWith(other.signature)
    })
}
