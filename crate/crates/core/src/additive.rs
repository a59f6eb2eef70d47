//! The additive rules 1 Or 3 (λ) and Xor (μ) over GF(2).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitrow::BitRow;
use crate::config::BinaryConfig;
use crate::error::{Error, Result};
use crate::gf2;

/// Default cap on the number of cells a diagram may hold.
pub const DEFAULT_CELL_CAP: u64 = 1 << 33;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdditiveRule {
    OneOr3,
    Xor,
}

impl AdditiveRule {
    pub fn name(self) -> &'static str {
        match self {
            AdditiveRule::OneOr3 => "one_or_3",
            AdditiveRule::Xor => "xor",
        }
    }
}

impl fmt::Display for AdditiveRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AdditiveRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "one_or_3" | "1or3" => Ok(AdditiveRule::OneOr3),
            "xor" => Ok(AdditiveRule::Xor),
            _ => Err(Error::UnknownRule(s.to_string())),
        }
    }
}

/// One update of a row of fixed length with zero boundary (bits beyond the
/// ends are dropped).
pub fn step_row(row: &BitRow, rule: AdditiveRule) -> BitRow {
    let mut out = row.shl(1);
    out.xor_assign(&row.shr(1));
    if rule == AdditiveRule::OneOr3 {
        out.xor_assign(row);
    }
    out
}

/// One update of a cyclic row.
pub fn step_cyclic(row: &BitRow, rule: AdditiveRule) -> BitRow {
    let mut out = row.rotate_up(1);
    out.xor_assign(&row.rotate_down(1));
    if rule == AdditiveRule::OneOr3 {
        out.xor_assign(row);
    }
    out
}

pub fn step_additive(config: &BinaryConfig, rule: AdditiveRule) -> BinaryConfig {
    match config {
        BinaryConfig::Finite { offset, bits } => {
            if bits.is_empty() {
                return BinaryConfig::empty();
            }
            let mut padded = bits.clone();
            padded.resize(bits.len() + 2);
            let padded = padded.shl(1);
            BinaryConfig::finite(offset - 1, step_row(&padded, rule))
        }
        BinaryConfig::Periodic { bits } => BinaryConfig::Periodic {
            bits: step_cyclic(bits, rule),
        },
    }
}

/// Stacked rows `0..=T` of an additive run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceTimeDiagram {
    pub rule_id: String,
    pub rows: Vec<BinaryConfig>,
}

impl SpaceTimeDiagram {
    pub fn horizon(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, x: i64, t: usize) -> bool {
        self.rows[t].get(x)
    }

    /// Smallest interval containing every support, if any row is nonzero.
    pub fn extent(&self) -> Option<(i64, i64)> {
        self.rows
            .iter()
            .filter_map(BinaryConfig::support)
            .reduce(|(a, b), (c, d)| (a.min(c), b.max(d)))
    }

    /// All rows as fixed-length windows `[lo, lo + width)`.
    pub fn dense(&self, lo: i64, width: usize) -> Vec<BitRow> {
        self.rows.iter().map(|r| r.window(lo, width)).collect()
    }
}

pub fn evolve(config: &BinaryConfig, rule: AdditiveRule, steps: usize) -> Result<SpaceTimeDiagram> {
    evolve_capped(config, rule, steps, DEFAULT_CELL_CAP)
}

pub fn evolve_capped(
    config: &BinaryConfig,
    rule: AdditiveRule,
    steps: usize,
    cell_cap: u64,
) -> Result<SpaceTimeDiagram> {
    let width = config.bits().len() as u64 + if config.is_periodic() { 0 } else { 2 * steps as u64 };
    let needed = width.saturating_mul(steps as u64 + 1);
    if needed > cell_cap {
        return Err(Error::MemoryCap { needed, cap: cell_cap });
    }
    let mut rows = Vec::with_capacity(steps + 1);
    rows.push(config.clone());
    for t in 0..steps {
        let next = step_additive(&rows[t], rule);
        rows.push(next);
    }
    Ok(SpaceTimeDiagram {
        rule_id: rule.name().to_string(),
        rows,
    })
}

/// λ• at time `t` on the window `[-t, t]` (index `x + t`).
///
/// Uses the factorization of the generating polynomial over the binary
/// digits of `t`, so the cost is `O(t · popcount(t) / 64)`.
pub fn single_site_row(t: u64) -> BitRow {
    let n = 2 * t as usize + 1;
    let mut row = BitRow::zeros(n);
    row.set(t as usize, true);
    let mut j = 0;
    while t >> j != 0 {
        if t >> j & 1 == 1 {
            let s = 1usize << j;
            let mut next = row.shl(s);
            next.xor_assign(&row.shr(s));
            next.xor_assign(&row);
            row = next;
        }
        j += 1;
    }
    row
}

/// λ•_t(x) in `O(log t)` by counting signed binary digit expansions mod 2.
pub fn lambda_dot(t: u64, x: i64) -> bool {
    if x.unsigned_abs() > t {
        return false;
    }
    // residuals r (multiples of 2^j) with the parity of the number of ways to reach them
    let mut states: Vec<(i64, bool)> = vec![(x, true)];
    let mut j = 0;
    while t >> j != 0 {
        let bit = t >> j & 1 == 1;
        let unit = 1i64 << j;
        let mut next: Vec<(i64, bool)> = Vec::with_capacity(4);
        let mut push = |r: i64, p: bool| match next.iter_mut().find(|(q, _)| *q == r) {
            Some(e) => e.1 ^= p,
            None => next.push((r, p)),
        };
        for &(r, p) in &states {
            if (r >> j) & 1 == 0 {
                push(r, p);
            } else if bit {
                push(r - unit, p);
                push(r + unit, p);
            }
        }
        next.retain(|e| e.1);
        states = next;
        j += 1;
    }
    states.iter().any(|&(r, p)| r == 0 && p)
}

/// μ• from a single 1 at the origin: Pascal's triangle mod 2.
pub fn mu_dot(t: u64, x: i64) -> bool {
    if x.unsigned_abs() > t || (t as i64 + x) % 2 != 0 {
        return false;
    }
    let k = ((t as i64 + x) / 2) as u64;
    k & (t - k) == 0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagramMethod {
    Direct,
    Recursive,
}

/// λ• up to time `T`.
pub fn single_site_diagram(steps: usize, method: DiagramMethod) -> Result<SpaceTimeDiagram> {
    match method {
        DiagramMethod::Direct => evolve(&BinaryConfig::single(), AdditiveRule::OneOr3, steps),
        DiagramMethod::Recursive => {
            let h = steps + 1;
            if !h.is_power_of_two() {
                return Err(Error::Precondition(format!(
                    "recursive construction needs T+1 a power of two, got T={steps}"
                )));
            }
            let b = block(h.trailing_zeros());
            let rows = (0..h)
                .map(|t| {
                    let bits = BitRow::from_bools(
                        (-(t as i64)..=t as i64).map(|x| b[t][x.unsigned_abs() as usize] == 1),
                    );
                    BinaryConfig::finite(-(t as i64), bits)
                })
                .collect();
            Ok(SpaceTimeDiagram {
                rule_id: AdditiveRule::OneOr3.name().into(),
                rows,
            })
        }
    }
}

/// The block B_n on `[0, 2^n] × [0, 2^n - 1]`, as `rows[t][x]`.
pub fn block(n: u32) -> Vec<Vec<u8>> {
    match n {
        0 => vec![vec![1, 0]],
        1 => vec![vec![1, 0, 0], vec![1, 1, 0]],
        _ => {
            let size = 1usize << n;
            let half = size / 2;
            let quarter = size / 4;
            let mut grid: Vec<Vec<Option<u8>>> = vec![vec![None; size + 1]; size];
            let b1 = block(n - 1);
            let b2 = block(n - 2);
            let b2m: Vec<Vec<u8>> = b2.iter().map(|r| r.iter().rev().copied().collect()).collect();
            let mut place = |src: &Vec<Vec<u8>>, x0: usize, t0: usize| {
                for (dt, row) in src.iter().enumerate() {
                    for (dx, &v) in row.iter().enumerate() {
                        let cell = &mut grid[t0 + dt][x0 + dx];
                        assert!(cell.is_none_or(|c| c == v), "inconsistent overlap in B_{n}");
                        *cell = Some(v);
                    }
                }
            };
            place(&b1, 0, 0);
            place(&b1, half, half);
            place(&b2, 0, half);
            place(&b2, 0, half + quarter);
            place(&b2m, quarter, half);
            place(&b2m, quarter, half + quarter);
            grid.into_iter()
                .map(|r| r.into_iter().map(|c| c.unwrap_or(0)).collect())
                .collect()
        }
    }
}

/// Parity sum of λ•_t(x - y) over the seed sites y.
pub fn duality_eval(seed_sites: &[i64], x: i64, t: u64) -> bool {
    seed_sites.iter().fold(false, |acc, &y| acc ^ lambda_dot(t, x - y))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Void {
    pub a: i64,
    pub b: i64,
    pub t: i64,
    /// `Some(k)` when the width is `2^k - 1`.
    pub k: Option<u32>,
}

impl Void {
    pub fn new(a: i64, b: i64, t: i64) -> Self {
        let w = (b - a + 1) as u64;
        let k = (w + 1).is_power_of_two().then(|| (w + 1).trailing_zeros());
        Void { a, b, t, k }
    }

    pub fn width(&self) -> i64 {
        self.b - self.a + 1
    }

    /// Last row of the triangle.
    pub fn bottom(&self) -> i64 {
        self.t + (self.width() + 1) / 2 - 1
    }

    pub fn contains(&self, x: i64, t: i64) -> bool {
        let i = t - self.t;
        i >= 0 && x >= self.a + i && x <= self.b - i
    }
}

/// Voids of a diagram whose whole triangle lies within the rows.
pub fn voids_in(diagram: &SpaceTimeDiagram, min_width: i64) -> Vec<Void> {
    let horizon = diagram.horizon() as i64;
    let mut out = Vec::new();
    for (t, row) in diagram.rows.iter().enumerate() {
        let sites = row.sites();
        for w in sites.windows(2) {
            let (a, b) = (w[0] + 1, w[1] - 1);
            if b < a || b - a + 1 < min_width {
                continue;
            }
            if t > 0 {
                let parent = &diagram.rows[t - 1];
                if parent.window(a - 1, (b - a + 3) as usize).is_zero() {
                    continue;
                }
            }
            let v = Void::new(a, b, t as i64);
            if v.bottom() <= horizon {
                out.push(v);
            }
        }
    }
    out
}

pub fn enumerate_voids(seed: &BinaryConfig, steps: usize, min_width: i64) -> Result<Vec<Void>> {
    if seed.is_periodic() {
        return Err(Error::Precondition("void enumeration needs a finite seed".into()));
    }
    Ok(voids_in(&evolve(seed, AdditiveRule::OneOr3, steps)?, min_width))
}

/// The unique finite S with one 1 Or 3 step mapping S to `seed`.
pub fn predecessor(seed: &BinaryConfig) -> Option<BinaryConfig> {
    let (p, q) = match seed.support() {
        Some(s) => s,
        None => return (!seed.is_periodic()).then(BinaryConfig::empty),
    };
    if q - p < 2 {
        return None;
    }
    // S' lives on [p+1, q-1]; solve S'(x+1) = S(x) + S'(x) + S'(x-1) from the left.
    let n = (q - p - 1) as usize;
    let mut pred = BitRow::zeros(n);
    let at = |row: &BitRow, x: i64| row.get_or_zero(x - (p + 1));
    for x in p..q - 1 {
        let v = seed.get(x) ^ at(&pred, x) ^ at(&pred, x - 1);
        pred.set((x + 1 - (p + 1)) as usize, v);
    }
    let cand = BinaryConfig::finite(p + 1, pred);
    (step_additive(&cand, AdditiveRule::OneOr3) == *seed).then_some(cand)
}

/// Largest `k <= k_max` such that the k-fold predecessor exists.
pub fn predecessor_count(seed: &BinaryConfig, k_max: usize) -> usize {
    let mut cur = seed.clone();
    for k in 0..k_max {
        match predecessor(&cur) {
            Some(p) => cur = p,
            None => return k,
        }
    }
    k_max
}

/// GF(2) rank of the map from seed bits on `[0, L]` to the states at `targets`.
pub fn window_rank(l: usize, targets: &[(i64, u64)]) -> usize {
    let mut cache: HashMap<u64, BitRow> = HashMap::new();
    let rows: Vec<BitRow> = targets
        .iter()
        .map(|&(x, t)| {
            let lam = cache.entry(t).or_insert_with(|| single_site_row(t));
            BitRow::from_bools((0..=l as i64).map(|y| lam.get_or_zero(x - y + t as i64)))
        })
        .collect();
    gf2::rank(&rows)
}
