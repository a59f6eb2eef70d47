//! Lower bounds on ether probabilities from census tallies.

use num_rational::Ratio;
use serde::Serialize;

use crate::census::run::CensusResult;
use crate::error::{Error, Result};
use crate::replication::Signature;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub signature: Signature,
    pub reflection: Option<Signature>,
    pub temporal_period: usize,
    pub spatial_period: usize,
    #[serde(with = "crate::replication::ratio_json")]
    pub density2: Ratio<u64>,
    #[serde(rename = "N_b")]
    pub n_b: u64,
    #[serde(with = "crate::replication::ratio_json")]
    pub exact: Ratio<u64>,
    /// `N_b / N_n` truncated to four decimals, in units of 10^-4.
    pub truncated_1e4: u64,
}

impl BoundRow {
    pub fn lower_bound(&self) -> String {
        format_1e4(self.truncated_1e4)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub rows: Vec<BoundRow>,
    #[serde(with = "crate::replication::ratio_json")]
    pub overall: Ratio<u64>,
    pub overall_truncated_1e4: u64,
}

pub fn truncate_1e4(r: Ratio<u64>) -> u64 {
    (*r.numer() as u128 * 10_000 / *r.denom() as u128) as u64
}

pub fn format_1e4(v: u64) -> String {
    format!("{}.{:04}", v / 10_000, v % 10_000)
}

pub fn lower_bounds(result: &CensusResult) -> Result<Bounds> {
    if result.n_n == 0 {
        return Err(Error::Precondition("no non-degenerate words, bounds undefined".into()));
    }
    let rows: Vec<BoundRow> = result
        .per_ether
        .iter()
        .map(|e| {
            let exact = Ratio::new(e.n_b, result.n_n);
            BoundRow {
                signature: e.signature.clone(),
                reflection: e.reflection.clone(),
                temporal_period: e.temporal_period,
                spatial_period: e.spatial_period,
                density2: e.density2,
                n_b: e.n_b,
                exact,
                truncated_1e4: truncate_1e4(exact),
            }
        })
        .collect();
    let overall = Ratio::new(rows.iter().map(|r| r.n_b).sum(), result.n_n);
    Ok(Bounds {
        rows,
        overall,
        overall_truncated_1e4: truncate_1e4(overall),
    })
}

/// CSV: signature, temporal_period, spatial_period, density2, N_b, lower_bound.
pub fn bounds_csv(bounds: &Bounds) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(["signature", "temporal_period", "spatial_period", "density2", "N_b", "lower_bound"])
        .map_err(io)?;
    for r in &bounds.rows {
        w.write_record([
            r.signature.to_string(),
            r.temporal_period.to_string(),
            r.spatial_period.to_string(),
            format!("{}/{}", r.density2.numer(), r.density2.denom()),
            r.n_b.to_string(),
            r.lower_bound(),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// An exact dyadic rational `num / 2^exp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Dyadic {
    pub num: u64,
    pub exp: u32,
}

impl Dyadic {
    pub fn to_f64(self) -> f64 {
        self.num as f64 * (-(self.exp as f64)).exp2()
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let e = self.exp.max(other.exp);
        ((self.num as u128) << (e - self.exp)).cmp(&((other.num as u128) << (e - other.exp)))
    }
}

impl std::fmt::Display for Dyadic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/2^{}", self.num, self.exp)
    }
}

/// Probability floor `2^(-s - 2^(m+1))` carried by a blocker witness of width `s`.
pub fn seed_based_bound(s: u32, m: u32) -> Dyadic {
    Dyadic {
        num: 1,
        exp: s + (2u32 << m),
    }
}
