//! 2D solidification CA on the Moore neighbourhood and their two-level
//! extremal boundary dynamics.

use std::collections::HashMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::webca::rules::{delta, lr, tuple, validate_web_rule, WebRule, TABLE_SIZE};

/// `n[row][col]`, row 0 above the centre, row 2 below it; the centre is unoccupied.
pub type Neighborhood = [[bool; 3]; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule2d {
    Box13,
    PiggybackBox,
}

impl Rule2d {
    pub fn name(self) -> &'static str {
        match self {
            Rule2d::Box13 => "box13",
            Rule2d::PiggybackBox => "piggyback_box",
        }
    }

    pub fn born(self, n: &Neighborhood) -> bool {
        let occ_inf = n.iter().flatten().filter(|&&c| c).count();
        match self {
            Rule2d::Box13 => matches!(occ_inf, 1 | 3),
            Rule2d::PiggybackBox => {
                let occ1 = [n[0][1], n[1][0], n[1][2], n[2][1]].iter().filter(|&&c| c).count();
                occ1 == 2 || (occ1 <= 1 && matches!(occ_inf, 1 | 3))
            }
        }
    }
}

impl FromStr for Rule2d {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "box13" => Ok(Rule2d::Box13),
            "piggyback_box" => Ok(Rule2d::PiggybackBox),
            _ => Err(Error::UnknownRule(s.to_string())),
        }
    }
}

/// Occupation times on a window `[x0, x0 + width) × [y0, y0 + height)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid2D {
    pub x0: i64,
    pub y0: i64,
    pub width: usize,
    pub height: usize,
    pub occupied_at: HashMap<(i64, i64), u32>,
}

impl Grid2D {
    pub fn time(&self, x: i64, y: i64) -> Option<u32> {
        self.occupied_at.get(&(x, y)).copied()
    }
}

pub fn solidify_2d(rule: Rule2d, seed: &[(i64, i64)], steps: u32) -> Grid2D {
    let pad = steps as i64 + 1;
    let (mut xl, mut xh, mut yl, mut yh) = (0i64, 0i64, 0i64, 0i64);
    if let Some(&(x, y)) = seed.first() {
        (xl, xh, yl, yh) = (x, x, y, y);
    }
    for &(x, y) in seed {
        xl = xl.min(x);
        xh = xh.max(x);
        yl = yl.min(y);
        yh = yh.max(y);
    }
    let (x0, y0) = (xl - pad, yl - pad);
    let width = (xh - xl + 1 + 2 * pad) as usize;
    let height = (yh - yl + 1 + 2 * pad) as usize;
    let mut occ = vec![false; width * height];
    let mut times = HashMap::new();
    for &(x, y) in seed {
        occ[(y - y0) as usize * width + (x - x0) as usize] = true;
        times.insert((x, y), 0);
    }
    for t in 1..=steps {
        let mut born = Vec::new();
        for j in 1..height - 1 {
            for i in 1..width - 1 {
                if occ[j * width + i] {
                    continue;
                }
                let mut n = [[false; 3]; 3];
                for (r, row) in n.iter_mut().enumerate() {
                    for (c, cell) in row.iter_mut().enumerate() {
                        let jj = j + 1 - r;
                        *cell = occ[jj * width + i + c - 1];
                    }
                }
                if rule.born(&n) {
                    born.push(j * width + i);
                }
            }
        }
        for k in born {
            occ[k] = true;
            let (i, j) = ((k % width) as i64, (k / width) as i64);
            times.insert((x0 + i, y0 + j), t);
        }
    }
    Grid2D {
        x0,
        y0,
        width,
        height,
        occupied_at: times,
    }
}

/// Builds the two-level EBD web rule of a solidification rule given by its
/// birth predicate.
pub fn derive_two_level_ebd_from(id: &str, born: impl Fn(&Neighborhood) -> bool) -> Result<WebRule> {
    // first level: only the row just below is occupied
    for m in 0..8u8 {
        let below = [m & 1 == 1, m & 2 == 2, m & 4 == 4];
        let n = [[false; 3], [false; 3], below];
        let parity = below.iter().filter(|&&c| c).count() % 2 == 1;
        if born(&n) != parity {
            return Err(Error::Precondition(format!(
                "induced first level of `{id}` is not 1 Or 3 (pattern {below:?})"
            )));
        }
    }
    let mut table = [0u8; TABLE_SIZE];
    for (i, out) in table.iter_mut().enumerate() {
        let t = tuple(i);
        let [_, b, c, d, _] = t;
        if (delta(b) + delta(c) + delta(d)) & 1 == 1 {
            *out = 1;
            continue;
        }
        let (l, r) = lr(t);
        let n = [
            [false; 3],
            [l == 1, false, r == 1],
            [b != 0, c != 0, d != 0],
        ];
        *out = if born(&n) { 2 } else { 0 };
    }
    validate_web_rule(id, table)
}

pub fn derive_two_level_ebd(rule: Rule2d) -> Result<WebRule> {
    derive_two_level_ebd_from(rule.name(), |n| rule.born(n))
}
