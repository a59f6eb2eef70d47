//! Level-2^m links of finite seeds and the blocker and non-degeneracy tests.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::additive::{step_cyclic, step_row, AdditiveRule};
use crate::bitrow::BitRow;
use crate::config::BinaryConfig;
use crate::error::{Error, Result};
use crate::percolation::path::{crosses, cyclic_field, PathType};
use crate::percolation::voids::principal_void;

/// A word of length `3 * 2^m`, meaningful up to rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinkString {
    pub m: u32,
    pub bits: BitRow,
}

impl LinkString {
    pub fn new(m: u32, bits: BitRow) -> Result<Self> {
        if bits.len() != 3 << m {
            return Err(Error::Precondition(format!(
                "a level-2^{m} link has length {}, got {}",
                3 << m,
                bits.len()
            )));
        }
        Ok(LinkString { m, bits })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let len = s.len();
        if len % 3 != 0 || !(len / 3).is_power_of_two() {
            return Err(Error::Parse(format!("link length {len} is not 3 * 2^m")));
        }
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse(format!("unexpected `{c}` in link"))),
            })
            .collect::<Result<Vec<_>>>()?;
        LinkString::new((len / 3).trailing_zeros(), BitRow::from_bools(bits))
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_zero()
    }

    /// Equality up to rotation.
    pub fn equivalent(&self, other: &LinkString) -> bool {
        self.len() == other.len() && (0..self.len()).any(|k| self.bits.rotate_up(k) == other.bits)
    }

    pub fn xor(&self, other: &LinkString) -> LinkString {
        LinkString {
            m: self.m,
            bits: self.bits.xor(&other.bits),
        }
    }

    /// Position 0 in the most significant nibble's high bit.
    pub fn hex(&self) -> String {
        let bits: Vec<bool> = self.bits.iter().collect();
        bits.chunks(4)
            .map(|c| {
                let v = c.iter().enumerate().fold(0u32, |a, (i, &b)| a | ((b as u32) << (3 - i)));
                char::from_digit(v, 16).unwrap()
            })
            .collect()
    }

    pub fn periodic(&self) -> BinaryConfig {
        BinaryConfig::periodic(self.bits.clone()).expect("links are nonempty")
    }
}

impl fmt::Display for LinkString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl Serialize for LinkString {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LinkString {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        LinkString::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Right end `L` of the seed window `[0, L]`.
pub fn seed_window(seed: &BinaryConfig) -> Result<i64> {
    if seed.is_periodic() {
        return Err(Error::Precondition("links are defined for finite seeds".into()));
    }
    match seed.support() {
        None => Ok(0),
        Some((lo, _)) if lo < 0 => Err(Error::Precondition(format!("seed has a 1 at {lo} < 0"))),
        Some((_, hi)) => Ok(hi),
    }
}

/// Index of the first principal void wide enough to read a level-2^m link
/// for seeds on `[0, L]`: width at least `L + 2^m`.
pub fn link_void_index(l: i64, m: u32) -> u32 {
    let need = l + (1i64 << m);
    let mut j = 0u32;
    while (1i64 << (j + 1)) - 1 < need {
        j += 1;
    }
    2 * j
}

/// Reads the link on the interval `2^m` rows above the top of `W_i^L`, starting
/// at its leftmost cell.
pub fn link_at(seed: &BinaryConfig, l: i64, m: u32, i: u32) -> Result<LinkString> {
    read_link(seed, l, m, i).map(|(a, _)| a)
}

fn read_link(seed: &BinaryConfig, l: i64, m: u32, i: u32) -> Result<(LinkString, i64)> {
    let p = principal_void(i, l, false);
    let w = p.w.ok_or_else(|| Error::Precondition(format!("W_{i}^{l} is empty")))?;
    let s = 1i64 << m;
    if w.width() < s || w.t < s {
        return Err(Error::Precondition(format!("void V_{i} is too narrow for level 2^{m}")));
    }
    let t = (w.t - s) as usize;
    let lo = w.a - s;
    let mut row = seed.window(-(t as i64) - 1, (l + 2 * t as i64 + 3) as usize);
    for _ in 0..t {
        row = step_row(&row, AdditiveRule::OneOr3);
    }
    let start = (lo + t as i64 + 1) as usize;
    Ok((LinkString::new(m, row.slice(start, 3 << m))?, t as i64))
}

/// The level-2^m link of a seed on `[0, L]`.
pub fn compute_link(seed: &BinaryConfig, m: u32) -> Result<LinkString> {
    let l = seed_window(seed)?;
    link_at(seed, l, m, link_void_index(l, m))
}

/// The link for a seed on `[0, l]` and the time of the row it was read from.
pub fn compute_link_with(seed: &BinaryConfig, l: i64, m: u32) -> Result<(LinkString, i64)> {
    read_link(seed, l, m, link_void_index(l, m))
}

/// Whether row `depth - 1` of the 1 Or 3 evolution of `A^∞` is nonzero.
pub fn is_nondegenerate(link: &LinkString, depth: usize) -> bool {
    if depth == 0 {
        return false;
    }
    let mut row = link.bits.clone();
    for _ in 1..depth {
        row = step_cyclic(&row, AdditiveRule::OneOr3);
    }
    !row.is_zero()
}

/// Whether no path of the type joins rows 0 and `depth - 1` of the evolution of `A^∞`.
pub fn is_blocker(link: &LinkString, path: PathType, depth: usize) -> bool {
    !crosses(&cyclic_field(&link.periodic(), depth), depth, path)
}
