//! One time-row of a CA over the integer line, and the seed text grammar.
//!
//! Grammar: `body` or `body@k` for finite rows (offset `k`, default 0) and
//! `(body)*` for spatially periodic rows. `body` is a string over `0 1 2`
//! where `[n]` expands to `n` zeros.

use std::fmt;

use crate::bitrow::BitRow;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BinaryConfig {
    /// Bits cover `offset..offset + len`; first and last bits are 1 unless empty.
    Finite { offset: i64, bits: BitRow },
    /// One period of a spatially periodic row, indexed from 0.
    Periodic { bits: BitRow },
}

impl BinaryConfig {
    pub fn empty() -> Self {
        BinaryConfig::Finite {
            offset: 0,
            bits: BitRow::zeros(0),
        }
    }

    /// A single 1 at the origin.
    pub fn single() -> Self {
        BinaryConfig::Finite {
            offset: 0,
            bits: BitRow::ones(1),
        }
    }

    /// Finite row with canonical trimming applied.
    pub fn finite(offset: i64, bits: BitRow) -> Self {
        match (bits.first_one(), bits.last_one()) {
            (Some(lo), Some(hi)) => BinaryConfig::Finite {
                offset: offset + lo as i64,
                bits: bits.slice(lo, hi - lo + 1),
            },
            _ => BinaryConfig::empty(),
        }
    }

    pub fn periodic(bits: BitRow) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::Precondition("periodic row needs period >= 1".into()));
        }
        Ok(BinaryConfig::Periodic { bits })
    }

    pub fn from_bits_str(s: &str, offset: i64) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse(format!("unexpected `{c}` in binary word"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BinaryConfig::finite(offset, BitRow::from_bools(bits)))
    }

    /// Finite row with 1s exactly at the given sites (duplicates cancel).
    pub fn from_sites(sites: &[i64]) -> Self {
        if sites.is_empty() {
            return BinaryConfig::empty();
        }
        let lo = *sites.iter().min().unwrap();
        let hi = *sites.iter().max().unwrap();
        let mut bits = BitRow::zeros((hi - lo + 1) as usize);
        for &s in sites {
            let i = (s - lo) as usize;
            bits.set(i, !bits.get(i));
        }
        BinaryConfig::finite(lo, bits)
    }

    pub fn parse(s: &str) -> Result<Self> {
        TernaryConfig::parse(s)?.to_binary()
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self, BinaryConfig::Periodic { .. })
    }

    pub fn bits(&self) -> &BitRow {
        match self {
            BinaryConfig::Finite { bits, .. } | BinaryConfig::Periodic { bits } => bits,
        }
    }

    /// Leftmost represented cell; 0 for periodic rows.
    pub fn offset(&self) -> i64 {
        match self {
            BinaryConfig::Finite { offset, .. } => *offset,
            BinaryConfig::Periodic { .. } => 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bits().is_zero()
    }

    pub fn get(&self, x: i64) -> bool {
        match self {
            BinaryConfig::Finite { offset, bits } => bits.get_or_zero(x - offset),
            BinaryConfig::Periodic { bits } => bits.get(x.rem_euclid(bits.len() as i64) as usize),
        }
    }

    /// Inclusive support `[left, right]` of a finite row.
    pub fn support(&self) -> Option<(i64, i64)> {
        match self {
            BinaryConfig::Finite { offset, bits } if !bits.is_empty() => {
                Some((*offset, *offset + bits.len() as i64 - 1))
            }
            _ => None,
        }
    }

    /// Sites holding a 1 (one period for periodic rows).
    pub fn sites(&self) -> Vec<i64> {
        let off = self.offset();
        self.bits()
            .iter()
            .enumerate()
            .filter(|(_, b)| *b)
            .map(|(i, _)| off + i as i64)
            .collect()
    }

    /// Bits on the window `[lo, lo + len)`.
    pub fn window(&self, lo: i64, len: usize) -> BitRow {
        match self {
            BinaryConfig::Finite { offset, bits } => {
                let mut out = BitRow::zeros(len);
                let (start, end) = (*offset, *offset + bits.len() as i64);
                let a = start.max(lo);
                let b = end.min(lo + len as i64);
                for x in a..b {
                    if bits.get((x - start) as usize) {
                        out.set((x - lo) as usize, true);
                    }
                }
                out
            }
            BinaryConfig::Periodic { .. } => {
                BitRow::from_bools((0..len as i64).map(|i| self.get(lo + i)))
            }
        }
    }

    pub fn to_ternary(&self) -> TernaryConfig {
        TernaryConfig {
            offset: self.offset(),
            states: self.bits().iter().map(u8::from).collect(),
            periodic: self.is_periodic(),
        }
    }
}

impl fmt::Display for BinaryConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_ternary().fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TernaryConfig {
    pub offset: i64,
    pub states: Vec<u8>,
    pub periodic: bool,
}

impl TernaryConfig {
    pub fn empty() -> Self {
        TernaryConfig {
            offset: 0,
            states: Vec::new(),
            periodic: false,
        }
    }

    /// Finite row with trimming to the nonzero support.
    pub fn finite(offset: i64, states: Vec<u8>) -> Self {
        let lo = states.iter().position(|&s| s != 0);
        let hi = states.iter().rposition(|&s| s != 0);
        match (lo, hi) {
            (Some(lo), Some(hi)) => TernaryConfig {
                offset: offset + lo as i64,
                states: states[lo..=hi].to_vec(),
                periodic: false,
            },
            _ => TernaryConfig::empty(),
        }
    }

    pub fn periodic(states: Vec<u8>) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::Precondition("periodic row needs period >= 1".into()));
        }
        Ok(TernaryConfig {
            offset: 0,
            states,
            periodic: true,
        })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('(') {
            let body = inner
                .strip_suffix(")*")
                .ok_or_else(|| Error::Parse(format!("periodic word `{s}` must end with `)*`")))?;
            let states = parse_word(body)?;
            return TernaryConfig::periodic(states).map_err(|_| Error::Parse("empty period".into()));
        }
        let (body, offset) = match s.split_once('@') {
            Some((b, k)) => (
                b,
                k.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad offset `{k}`")))?,
            ),
            None => (s, 0),
        };
        Ok(TernaryConfig::finite(offset, parse_word(body)?))
    }

    pub fn get(&self, x: i64) -> u8 {
        if self.periodic {
            self.states[x.rem_euclid(self.states.len() as i64) as usize]
        } else {
            let i = x - self.offset;
            if i < 0 || i as usize >= self.states.len() {
                0
            } else {
                self.states[i as usize]
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.states.iter().all(|&s| s == 0)
    }

    pub fn support(&self) -> Option<(i64, i64)> {
        if self.periodic || self.states.is_empty() {
            None
        } else {
            Some((self.offset, self.offset + self.states.len() as i64 - 1))
        }
    }

    /// The first-level projection δ (state 1 ↦ 1, others ↦ 0).
    pub fn delta(&self) -> BinaryConfig {
        let bits = BitRow::from_bools(self.states.iter().map(|&s| s == 1));
        if self.periodic {
            BinaryConfig::Periodic { bits }
        } else {
            BinaryConfig::finite(self.offset, bits)
        }
    }

    pub fn to_binary(&self) -> Result<BinaryConfig> {
        if self.states.iter().any(|&s| s > 1) {
            return Err(Error::Parse("state 2 in a binary configuration".into()));
        }
        let bits = BitRow::from_bools(self.states.iter().map(|&s| s == 1));
        Ok(if self.periodic {
            BinaryConfig::Periodic { bits }
        } else {
            BinaryConfig::finite(self.offset, bits)
        })
    }
}

/// Parses a raw word over {0,1,2} with `[k]` zero runs, keeping every cell.
pub fn parse_word(body: &str) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    let mut chars = body.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '0' | '1' | '2' => out.push(c as u8 - b'0'),
            '[' => {
                let mut num = String::new();
                loop {
                    match chars.next() {
                        Some(']') => break,
                        Some(d) if d.is_ascii_digit() => num.push(d),
                        _ => return Err(Error::Parse(format!("bad zero-run in `{body}`"))),
                    }
                }
                let n: usize = num
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad zero-run in `{body}`")))?;
                out.extend(std::iter::repeat(0).take(n));
            }
            _ => return Err(Error::Parse(format!("unexpected `{c}` in `{body}`"))),
        }
    }
    Ok(out)
}

/// Renders a word over {0,1,2}, writing runs of at least four 0s as `[k]`.
pub fn bracket_notation(states: &[u8]) -> String {
    let mut out = String::new();
    let mut i = 0;
    while i < states.len() {
        if states[i] == 0 {
            let j = states[i..].iter().position(|&s| s != 0).map_or(states.len(), |p| i + p);
            let run = j - i;
            if run >= 4 {
                out.push_str(&format!("[{run}]"));
            } else {
                out.extend(std::iter::repeat('0').take(run));
            }
            i = j;
        } else {
            out.push((b'0' + states[i]) as char);
            i += 1;
        }
    }
    out
}

impl fmt::Display for TernaryConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: String = self.states.iter().map(|&s| (b'0' + s) as char).collect();
        if self.periodic {
            write!(f, "({body})*")
        } else if self.offset != 0 {
            write!(f, "{body}@{}", self.offset)
        } else {
            write!(f, "{body}")
        }
    }
}
