//! Replication certificates for concrete seeds and their finite-horizon check.

use serde::{Deserialize, Serialize};

use crate::config::{BinaryConfig, TernaryConfig};
use crate::error::{Error, Result};
use crate::percolation::PathType;
use crate::replication::ether::{produce_ether, EtherDescriptor, DEFAULT_ETHER_CAP};
use crate::replication::link::{compute_link_with, is_blocker, is_nondegenerate, seed_window, LinkString};
use crate::webca::{evolve_web, WebRule};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplicationCertificate {
    pub rule: String,
    pub seed: String,
    #[serde(rename = "L")]
    pub l: i64,
    pub path_type: PathType,
    /// `None` stands for M = ∞: not certified.
    #[serde(rename = "M")]
    pub m: Option<u32>,
    #[serde(rename = "R")]
    pub r: Option<usize>,
    pub ether: Option<EtherDescriptor>,
    pub link_used: Option<LinkString>,
    pub link_hex: Option<String>,
    pub nondegenerate: Option<bool>,
    /// Time of the row the link was read from.
    pub horizon: i64,
    pub skipped_components: Option<usize>,
    pub status: String,
}

impl ReplicationCertificate {
    pub fn certified(&self) -> bool {
        self.m.is_some()
    }
}

/// Strongest non-empty path type the rule complies with.
pub fn certificate_path_type(rule: &WebRule) -> Result<PathType> {
    let c = rule.compliance();
    [PathType::Diagonal, PathType::Free(3), PathType::Wide, PathType::Free(4), PathType::Free(5)]
        .into_iter()
        .find(|&p| c.complies(p))
        .ok_or_else(|| Error::Precondition(format!("rule `{}` complies with no blocking path type", rule.id)))
}

/// Scans levels `m = 0 ..= min(m_max, floor(log2 L) - 1)` for the first blocker
/// link and derives the ether and the thickness `R` from it. `l` defaults to
/// the right end of the seed's support.
pub fn replication_certificate(
    rule: &WebRule,
    seed: &BinaryConfig,
    l: Option<i64>,
    m_max: u32,
) -> Result<ReplicationCertificate> {
    let path = certificate_path_type(rule)?;
    let l = match l {
        Some(l) => {
            let hi = seed_window(seed)?;
            if hi > l {
                return Err(Error::Precondition(format!("seed extends to {hi} > L = {l}")));
            }
            l
        }
        None => seed_window(seed)?,
    };
    let mut cert = ReplicationCertificate {
        rule: rule.id.clone(),
        seed: seed.to_string(),
        l,
        path_type: path,
        m: None,
        r: None,
        ether: None,
        link_used: None,
        link_hex: None,
        nondegenerate: None,
        horizon: 0,
        skipped_components: None,
        status: "not certified".into(),
    };
    if l < 4 {
        return Ok(cert);
    }
    let top = (63 - (l as u64).leading_zeros()) - 1;
    for m in 0..=m_max.min(top) {
        let (link, t) = compute_link_with(seed, l, m)?;
        let depth = 1usize << m;
        if !is_blocker(&link, path, depth) {
            continue;
        }
        let ether = produce_ether(rule, &link_row(&link), DEFAULT_ETHER_CAP)?;
        cert.m = Some(m);
        cert.r = Some(ether.burn_in + 1);
        cert.nondegenerate = Some(is_nondegenerate(&link, depth));
        cert.link_hex = Some(link.hex());
        cert.link_used = Some(link);
        cert.ether = Some(ether);
        cert.horizon = t;
        cert.status = "certified".into();
        break;
    }
    Ok(cert)
}

fn link_row(link: &LinkString) -> TernaryConfig {
    TernaryConfig::periodic(link.bits.iter().map(u8::from).collect()).expect("links are nonempty")
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub checked_components: usize,
    pub skipped_components: usize,
    /// A cell of the first component that no ether translate fits.
    pub failure: Option<(i64, i64)>,
}

/// Checks that every bounded component of the complement of the
/// `r`-neighbourhood (ℓ1) of the first level, closing before row
/// `T - σ - τ`, is filled by one translate of the ether.
pub fn verify_replicator(
    rule: &WebRule,
    seed: &TernaryConfig,
    r: usize,
    ether: &EtherDescriptor,
    horizon: usize,
) -> Result<VerifyReport> {
    if horizon == 0 {
        return Err(Error::Precondition("horizon must be at least 1".into()));
    }
    if seed.periodic {
        return Err(Error::Precondition("replicator seeds are finite".into()));
    }
    let d = evolve_web(rule, seed, horizon)?;
    let (lo, hi) = seed.support().unwrap_or((0, 0));
    let pad = horizon as i64 + r as i64 + 2;
    let x0 = lo - pad;
    let w = (hi - lo + 2 * pad + 1) as usize;
    let h = horizon + 1;
    let state = |x: usize, t: usize| d.get(x0 + x as i64, t);

    // ℓ1 distance to the first level, two-pass city-block transform
    let inf = u32::MAX / 2;
    let mut dist: Vec<u32> = (0..h)
        .flat_map(|t| (0..w).map(move |x| (t, x)))
        .map(|(t, x)| if state(x, t) == 1 { 0 } else { inf })
        .collect();
    for t in 0..h {
        for x in 0..w {
            let mut d = dist[t * w + x];
            if t > 0 {
                d = d.min(dist[(t - 1) * w + x] + 1);
            }
            if x > 0 {
                d = d.min(dist[t * w + x - 1] + 1);
            }
            dist[t * w + x] = d;
        }
    }
    for t in (0..h).rev() {
        for x in (0..w).rev() {
            let mut d = dist[t * w + x];
            if t + 1 < h {
                d = d.min(dist[(t + 1) * w + x] + 1);
            }
            if x + 1 < w {
                d = d.min(dist[t * w + x + 1] + 1);
            }
            dist[t * w + x] = d;
        }
    }
    let blocked = |x: usize, t: usize| dist[t * w + x] <= r as u32;

    let sigma = ether.spatial_period;
    let tau = ether.temporal_period;
    let orbit = &ether.orbit;
    if orbit.len() != tau || orbit.iter().any(|o| o.len() != sigma) {
        return Err(Error::Precondition("ether descriptor has no orbit rows".into()));
    }
    let closing = horizon.saturating_sub(sigma + tau);
    let mut seen = vec![false; w * h];
    let mut report = VerifyReport {
        ok: true,
        ..Default::default()
    };
    let mut stack = Vec::new();
    let mut cells = Vec::new();
    for t0 in 0..h {
        for x0c in 0..w {
            if seen[t0 * w + x0c] || blocked(x0c, t0) {
                continue;
            }
            cells.clear();
            seen[t0 * w + x0c] = true;
            stack.push((x0c, t0));
            let (mut open, mut late) = (false, false);
            while let Some((x, t)) = stack.pop() {
                cells.push((x, t));
                open |= x == 0 || x + 1 == w;
                late |= t > closing;
                let mut visit = |x: usize, t: usize| {
                    if !seen[t * w + x] && !blocked(x, t) {
                        seen[t * w + x] = true;
                        stack.push((x, t));
                    }
                };
                if x > 0 {
                    visit(x - 1, t);
                }
                if x + 1 < w {
                    visit(x + 1, t);
                }
                if t > 0 {
                    visit(x, t - 1);
                }
                if t + 1 < h {
                    visit(x, t + 1);
                }
            }
            if open {
                continue;
            }
            if late {
                report.skipped_components += 1;
                continue;
            }
            report.checked_components += 1;
            let mut cands: Vec<(usize, usize)> = (0..sigma).flat_map(|dx| (0..tau).map(move |dt| (dx, dt))).collect();
            for &(x, t) in &cells {
                let s = state(x, t);
                let gx = x0 + x as i64;
                cands.retain(|&(dx, dt)| orbit[(t + dt) % tau][(gx + dx as i64).rem_euclid(sigma as i64) as usize] == s);
                if cands.is_empty() {
                    report.ok = false;
                    report.failure.get_or_insert((gx, t as i64));
                    break;
                }
            }
        }
    }
    Ok(report)
}
