//! Slow reference census: every word of length `3·2^m` is generated naively,
//! filtered by the image constraint, and classified with the generic link,
//! path and ether code.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::bitrow::BitRow;
use crate::census::phi::satisfies_constraint;
use crate::census::run::{assemble, CensusOptions, CensusResult, EtherTally, Tally};
use crate::config::TernaryConfig;
use crate::error::{Error, Result};
use crate::percolation::PathType;
use crate::replication::{is_blocker, is_nondegenerate, produce_ether, LinkString, Signature};
use crate::webca::WebRule;

pub fn reference_census(rule: &WebRule, m: u32, path: PathType, opts: &CensusOptions) -> Result<CensusResult> {
    if m > 2 {
        return Err(Error::Precondition(format!("the reference census is limited to m <= 2, got {m}")));
    }
    let start = Instant::now();
    let n = 3usize << m;
    let depth = 1usize << m;
    let mut total = Tally::default();
    let mut by_sig: BTreeMap<Signature, EtherTally> = BTreeMap::new();
    for v in 0..1u64 << n {
        let bits: Vec<bool> = (0..n).map(|i| v >> i & 1 == 1).collect();
        if !satisfies_constraint(m, &bits) {
            continue;
        }
        total.enumerated += 1;
        let link = LinkString::new(m, BitRow::from_bools(bits.iter().copied()))?;
        if !is_nondegenerate(&link, depth) {
            continue;
        }
        total.n_n += 1;
        if !is_blocker(&link, path, depth) {
            continue;
        }
        total.n_b += 1;
        let row = TernaryConfig::periodic(bits.iter().map(|&b| b as u8).collect())?;
        match produce_ether(rule, &row, opts.ether_cap) {
            Ok(e) => {
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
                    .n_b += 1;
            }
            Err(Error::Unresolved(_)) => {
                total.unresolved += 1;
                total.unresolved_words.push(v);
            }
            Err(e) => return Err(e),
        }
    }
    assemble(rule, m, path, &total, by_sig, opts, start)
}
