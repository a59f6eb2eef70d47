//! The linear map from seeds on `[0, L]` to level-2^m links, and its image.

use serde::{Deserialize, Serialize};

use crate::bitrow::BitRow;
use crate::config::BinaryConfig;
use crate::error::{Error, Result};
use crate::gf2;
use crate::replication::LinkString;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiMap {
    pub m: u32,
    pub l: usize,
    /// `rows[i]` has bit `y` set when seed cell `y` feeds link cell `i`.
    #[serde(skip)]
    pub rows: Vec<BitRow>,
    pub rank: usize,
}

/// `A_0 = 1 □ 1 □ 0 □` with `□` a run of `2^m - 1` zeros, read periodically.
pub fn a0(m: u32, k: i64) -> bool {
    let s = 1i64 << m;
    let k = k.rem_euclid(3 * s);
    k == 0 || k == s
}

/// Builds Φ for seeds on `[0, l]`. Link cell `i` sums seed cells `y` with
/// `A_0^∞(i - y + l)`: the single-site pattern shifted by each seed cell.
pub fn build_phi(m: u32, l: usize) -> Result<PhiMap> {
    let n = 3usize << m;
    if l < n {
        return Err(Error::Precondition(format!("Φ needs L >= 3·2^m = {n}, got {l}")));
    }
    let rows: Vec<BitRow> = (0..n as i64)
        .map(|i| BitRow::from_bools((0..=l as i64).map(|y| a0(m, i - y + l as i64))))
        .collect();
    let rank = gf2::rank(&rows);
    let phi = PhiMap { m, l, rows, rank };
    if rank != 2 << m {
        return Err(Error::Unresolved(format!("Φ has rank {rank}, expected {}", 2 << m)));
    }
    for y in 0..=l {
        let col: Vec<bool> = phi.rows.iter().map(|r| r.get(y)).collect();
        if !satisfies_constraint(m, &col) {
            return Err(Error::Unresolved(format!("column {y} of Φ violates the image constraint")));
        }
    }
    Ok(phi)
}

impl PhiMap {
    pub fn len(&self) -> usize {
        3 << self.m
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn apply(&self, seed: &BinaryConfig) -> Result<LinkString> {
        if let Some((lo, hi)) = seed.support() {
            if lo < 0 || hi > self.l as i64 || seed.is_periodic() {
                return Err(Error::Precondition(format!("seed must lie in [0, {}]", self.l)));
            }
        }
        let s = seed.window(0, self.l + 1);
        let bits = self.rows.iter().map(|r| r.and(&s).count_ones() % 2 == 1);
        LinkString::new(self.m, BitRow::from_bools(bits))
    }

    /// Image size `2^(2^(m+1))`.
    pub fn image_size(&self) -> u128 {
        1u128 << (2u32 << self.m)
    }
}

/// `b_i + b_{2^m+i} + b_{2^{m+1}+i} = 0` for `i < 2^m`.
pub fn satisfies_constraint(m: u32, b: &[bool]) -> bool {
    let s = 1usize << m;
    b.len() == 3 * s && (0..s).all(|i| !(b[i] ^ b[s + i] ^ b[2 * s + i]))
}

/// Image word with free bits `b_0 .. b_{2^{m+1}-1}` taken from `free`.
#[inline]
pub fn image_word(m: u32, free: u64) -> u64 {
    let s = 1u32 << m;
    let lo = free & ((1u64 << s) - 1);
    let hi = (free >> s) & ((1u64 << s) - 1);
    (free & ((1u64 << (2 * s)) - 1)) | ((lo ^ hi) << (2 * s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_images() {
        let phi = build_phi(1, 6).unwrap();
        assert_eq!(phi.rank, 4);
        assert_eq!(phi.image_size(), 16);
        for free in 0..16u64 {
            let w = image_word(1, free);
            let b: Vec<bool> = (0..6).map(|i| w >> i & 1 == 1).collect();
            assert!(satisfies_constraint(1, &b));
        }
        assert!(build_phi(2, 5).is_err());
    }
}
