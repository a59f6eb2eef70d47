//! Exhaustive census of the Φ-image: non-degeneracy, blocking and ethers.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{Read, Seek, SeekFrom, Write};
use std::path::PathBuf;
use std::sync::Mutex;
use std::time::Instant;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::census::cylinder::{ether_key, Cyl, PlaneRule};
use crate::census::phi::image_word;
use crate::error::{Error, Result};
use crate::percolation::PathType;
use crate::replication::ether::{produce_ether, reflection_class, ReflectionClass, Signature};
use crate::config::TernaryConfig;
use crate::webca::WebRule;

pub const CENSUS_ETHER_CAP: usize = 1 << 12;
const SHARD_BITS: u32 = 12;
const MAGIC: &[u8; 8] = b"WEBCENS\0";
const VERSION: u32 = 1;
/// Unresolved words kept per shard for inspection.
const KEEP_UNRESOLVED: usize = 64;

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub workers: usize,
    pub checkpoint: Option<PathBuf>,
    /// Stop after this many newly processed shards (the run is then incomplete).
    pub stop_after: Option<usize>,
    pub combine_reflections: bool,
    pub ether_cap: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            workers: 1,
            checkpoint: None,
            stop_after: None,
            combine_reflections: true,
            ether_cap: CENSUS_ETHER_CAP,
        }
    }
}

/// Tally for one shard, or for the whole image after merging.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub enumerated: u64,
    pub n_n: u64,
    pub n_b: u64,
    pub unresolved: u64,
    pub ethers: BTreeMap<u64, u64>,
    pub unresolved_words: Vec<u64>,
}

impl Tally {
    pub fn merge(&mut self, o: &Tally) {
        self.enumerated += o.enumerated;
        self.n_n += o.n_n;
        self.n_b += o.n_b;
        self.unresolved += o.unresolved;
        for (&k, &v) in &o.ethers {
            *self.ethers.entry(k).or_default() += v;
        }
        self.unresolved_words.extend(&o.unresolved_words);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtherTally {
    pub signature: Signature,
    /// The other orientation, for asymmetric ethers.
    pub reflection: Option<Signature>,
    pub temporal_period: usize,
    pub spatial_period: usize,
    #[serde(with = "crate::replication::ratio_json")]
    pub density2: Ratio<u64>,
    pub n_b: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusResult {
    pub rule_id: String,
    pub m: u32,
    pub path_type: PathType,
    pub total_image: u64,
    #[serde(rename = "N_n")]
    pub n_n: u64,
    #[serde(rename = "N_b")]
    pub n_b: u64,
    pub per_ether: Vec<EtherTally>,
    pub unresolved: u64,
    pub unresolved_words: Vec<String>,
    pub combined_reflections: bool,
    pub runtime_ms: u64,
}

impl CensusResult {
    pub fn ether(&self, sig: &str) -> Option<&EtherTally> {
        let s = Signature::parse(sig).ok()?;
        self.per_ether
            .iter()
            .find(|e| e.signature == s || e.reflection.as_ref() == Some(&s))
    }

    /// JSON without the timing field, for determinism comparisons.
    pub fn canonical_json(&self) -> String {
        let mut c = self.clone();
        c.runtime_ms = 0;
        serde_json::to_string(&c).expect("census results serialize")
    }
}

/// Classifies every rotation-least word whose free bits lie in one shard.
pub fn census_shard(rule: &PlaneRule, m: u32, path: PathType, shard: u64, shard_bits: u32, cap: usize) -> Tally {
    let n = 3u32 << m;
    let cyl = Cyl::new(n);
    let free_bits = 2u32 << m;
    let low_bits = free_bits - shard_bits;
    let depth = 1usize << m;
    let mut t = Tally::default();
    let mut rows = vec![0u64; depth];
    for low in 0..1u64 << low_bits {
        let w = image_word(m, (shard << low_bits) | low);
        if !cyl.is_least_rotation(w) {
            continue;
        }
        let weight = cyl.orbit_size(w);
        t.enumerated += weight;
        rows[0] = w;
        for k in 1..depth {
            rows[k] = cyl.step_1or3(rows[k - 1]);
        }
        if rows[depth - 1] == 0 {
            continue;
        }
        t.n_n += weight;
        if cyl.crosses(&rows, path) {
            continue;
        }
        t.n_b += weight;
        let (mut ones, mut twos) = (w, 0u64);
        for _ in 0..depth {
            (ones, twos) = rule.step(ones, twos);
        }
        match (ones == 0).then(|| ether_key(rule, twos, cap)).flatten() {
            Some(key) => *t.ethers.entry(key).or_default() += weight,
            None => {
                t.unresolved += weight;
                if t.unresolved_words.len() < KEEP_UNRESOLVED {
                    t.unresolved_words.push(w);
                }
            }
        }
    }
    t
}

fn header(rule: &WebRule, m: u32, path: PathType, shard_bits: u32) -> Vec<u8> {
    let mut h = Vec::new();
    h.extend_from_slice(MAGIC);
    h.extend_from_slice(&VERSION.to_le_bytes());
    h.extend_from_slice(&m.to_le_bytes());
    h.extend_from_slice(&shard_bits.to_le_bytes());
    let p = path.name();
    h.push(p.len() as u8);
    h.extend_from_slice(p.as_bytes());
    h.extend_from_slice(&(rule.id.len() as u16).to_le_bytes());
    h.extend_from_slice(rule.id.as_bytes());
    h.extend_from_slice(rule.table());
    h
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf29ce484222325u64, |h, &b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

fn encode_record(shard: u64, t: &Tally) -> Vec<u8> {
    let mut r = Vec::new();
    r.extend_from_slice(&(shard as u32).to_le_bytes());
    for v in [t.enumerated, t.n_n, t.n_b, t.unresolved] {
        r.extend_from_slice(&v.to_le_bytes());
    }
    r.extend_from_slice(&(t.ethers.len() as u32).to_le_bytes());
    for (&k, &v) in &t.ethers {
        r.extend_from_slice(&k.to_le_bytes());
        r.extend_from_slice(&v.to_le_bytes());
    }
    r.extend_from_slice(&(t.unresolved_words.len() as u32).to_le_bytes());
    for &w in &t.unresolved_words {
        r.extend_from_slice(&w.to_le_bytes());
    }
    let sum = fnv1a(&r);
    let mut out = (r.len() as u32).to_le_bytes().to_vec();
    out.extend(r);
    out.extend_from_slice(&sum.to_le_bytes());
    out
}

struct Cursor<'a>(&'a [u8]);

impl Cursor<'_> {
    fn take<const N: usize>(&mut self) -> Option<[u8; N]> {
        if self.0.len() < N {
            return None;
        }
        let (a, b) = self.0.split_at(N);
        self.0 = b;
        a.try_into().ok()
    }
    fn u32(&mut self) -> Option<u32> {
        self.take::<4>().map(u32::from_le_bytes)
    }
    fn u64(&mut self) -> Option<u64> {
        self.take::<8>().map(u64::from_le_bytes)
    }
}

fn decode_record(body: &[u8]) -> Option<(u64, Tally)> {
    let mut c = Cursor(body);
    let shard = c.u32()? as u64;
    let mut t = Tally {
        enumerated: c.u64()?,
        n_n: c.u64()?,
        n_b: c.u64()?,
        unresolved: c.u64()?,
        ..Default::default()
    };
    for _ in 0..c.u32()? {
        let k = c.u64()?;
        t.ethers.insert(k, c.u64()?);
    }
    for _ in 0..c.u32()? {
        t.unresolved_words.push(c.u64()?);
    }
    c.0.is_empty().then_some((shard, t))
}

/// Opens or creates a checkpoint; returns completed shards and the file
/// positioned for appending (a torn trailing record is cut off).
fn open_checkpoint(path: &PathBuf, head: &[u8]) -> Result<(File, BTreeMap<u64, Tally>)> {
    let mut f = OpenOptions::new().read(true).write(true).create(true).truncate(false).open(path)?;
    let mut bytes = Vec::new();
    f.read_to_end(&mut bytes)?;
    let mut done = BTreeMap::new();
    if bytes.is_empty() {
        f.write_all(head)?;
        f.flush()?;
        return Ok((f, done));
    }
    if !bytes.starts_with(head) {
        return Err(Error::Checkpoint(format!(
            "{} belongs to a different census (header mismatch)",
            path.display()
        )));
    }
    let mut pos = head.len();
    loop {
        let rest = &bytes[pos..];
        if rest.len() < 4 {
            break;
        }
        let len = u32::from_le_bytes(rest[..4].try_into().unwrap()) as usize;
        if rest.len() < 4 + len + 8 {
            break;
        }
        let body = &rest[4..4 + len];
        let sum = u64::from_le_bytes(rest[4 + len..12 + len].try_into().unwrap());
        if fnv1a(body) != sum {
            break;
        }
        let (shard, t) =
            decode_record(body).ok_or_else(|| Error::Checkpoint("malformed shard record".into()))?;
        done.insert(shard, t);
        pos += 12 + len;
    }
    f.set_len(pos as u64)?;
    f.seek(SeekFrom::Start(pos as u64))?;
    Ok((f, done))
}

/// Runs the census, resuming from the checkpoint file when it exists.
pub fn run_census(rule: &WebRule, m: u32, path: PathType, opts: &CensusOptions) -> Result<CensusResult> {
    if m > 4 {
        return Err(Error::Precondition(format!("census supports m <= 4, got {m}")));
    }
    if !rule.compliance().complies(path) {
        return Err(Error::Precondition(format!("rule `{}` is not {path}-compliant", rule.id)));
    }
    let start = Instant::now();
    let free_bits = 2u32 << m;
    let shard_bits = SHARD_BITS.min(free_bits);
    let plane = PlaneRule::new(rule, 3 << m);
    let head = header(rule, m, path, shard_bits);
    let (file, mut done) = match &opts.checkpoint {
        Some(p) => {
            let (f, d) = open_checkpoint(p, &head)?;
            (Some(Mutex::new(f)), d)
        }
        None => (None, BTreeMap::new()),
    };
    let mut todo: Vec<u64> = (0..1u64 << shard_bits).filter(|s| !done.contains_key(s)).collect();
    let stopped = opts.stop_after.is_some_and(|k| k < todo.len());
    if let Some(k) = opts.stop_after {
        todo.truncate(k);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    let fresh: Vec<(u64, Tally)> = pool.install(|| {
        todo.par_iter()
            .map(|&s| {
                let t = census_shard(&plane, m, path, s, shard_bits, opts.ether_cap);
                if let Some(f) = &file {
                    let rec = encode_record(s, &t);
                    let mut f = f.lock().unwrap();
                    f.write_all(&rec).and_then(|_| f.flush())?;
                }
                Ok((s, t))
            })
            .collect::<Result<Vec<_>>>()
    })?;
    done.extend(fresh);
    if stopped {
        return Err(Error::Checkpoint(format!(
            "stopped with {} of {} shards done",
            done.len(),
            1u64 << shard_bits
        )));
    }
    let mut total = Tally::default();
    for t in done.values() {
        total.merge(t);
    }
    let image = 1u64 << free_bits;
    if total.enumerated != image {
        return Err(Error::Unresolved(format!(
            "enumerated weight {} differs from image size {image}",
            total.enumerated
        )));
    }
    finish(rule, m, path, total, opts, start)
}

/// Turns orbit keys into ether rows, merging keys with the same signature.
pub fn finish(
    rule: &WebRule,
    m: u32,
    path: PathType,
    total: Tally,
    opts: &CensusOptions,
    start: Instant,
) -> Result<CensusResult> {
    let n = 3usize << m;
    let mut by_sig: BTreeMap<Signature, EtherTally> = BTreeMap::new();
    for (&key, &count) in &total.ethers {
        let row: Vec<u8> = (0..n).map(|i| if key >> i & 1 == 1 { 2 } else { 0 }).collect();
        let e = produce_ether(rule, &TernaryConfig::periodic(row)?, opts.ether_cap)?;
        by_sig
            .entry(e.signature.clone())
            .or_insert(EtherTally {
                signature: e.signature,
                reflection: None,
                temporal_period: e.temporal_period,
                spatial_period: e.spatial_period,
                density2: e.density2,
                n_b: 0,
            })
            .n_b += count;
    }
    assemble(rule, m, path, &total, by_sig, opts, start)
}

/// Builds the result from per-signature tallies, combining reflections when asked.
pub fn assemble(
    rule: &WebRule,
    m: u32,
    path: PathType,
    total: &Tally,
    by_sig: BTreeMap<Signature, EtherTally>,
    opts: &CensusOptions,
    start: Instant,
) -> Result<CensusResult> {
    let n = 3usize << m;
    let mut per_ether: Vec<EtherTally> = if opts.combine_reflections {
        let mut comb: BTreeMap<Signature, EtherTally> = BTreeMap::new();
        for (sig, t) in by_sig {
            let e = crate::replication::ether::ether_from_signature(rule, &sig, opts.ether_cap)?;
            let other = match reflection_class(&e, rule, opts.ether_cap)? {
                ReflectionClass::Symmetric => None,
                ReflectionClass::PairWith(o) => Some(o),
            };
            let rep = other.as_ref().map_or(sig.clone(), |o| o.clone().min(sig.clone()));
            let entry = comb.entry(rep.clone()).or_insert_with(|| EtherTally {
                signature: rep.clone(),
                reflection: None,
                n_b: 0,
                ..t.clone()
            });
            entry.n_b += t.n_b;
            if let Some(o) = other {
                entry.reflection = Some(if rep == sig { o } else { sig.clone() });
                if rep == sig {
                    entry.temporal_period = t.temporal_period;
                    entry.spatial_period = t.spatial_period;
                    entry.density2 = t.density2;
                }
            }
        }
        comb.into_values().collect()
    } else {
        by_sig.into_values().collect()
    };
    per_ether.sort_by(|a, b| b.n_b.cmp(&a.n_b).then_with(|| a.signature.cmp(&b.signature)));
    Ok(CensusResult {
        rule_id: rule.id.clone(),
        m,
        path_type: path,
        total_image: total.enumerated,
        n_n: total.n_n,
        n_b: total.n_b,
        per_ether,
        unresolved: total.unresolved,
        unresolved_words: total.unresolved_words.iter().map(|w| format!("{w:0width$x}", width = n.div_ceil(4))).collect(),
        combined_reflections: opts.combine_reflections,
        runtime_ms: start.elapsed().as_millis() as u64,
    })
}
