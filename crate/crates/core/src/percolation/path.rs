//! Path types and row-by-row reachability over a space-time field.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::additive::SpaceTimeDiagram;
use crate::bitrow::BitRow;
use crate::config::BinaryConfig;
use crate::error::{Error, Result};

/// Serialized by name: `empty`, `diagonal`, `wide`, `free3`, ...
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PathType {
    Empty,
    Diagonal,
    Wide,
    Free(u8),
}

impl PathType {
    pub fn name(self) -> String {
        match self {
            PathType::Empty => "empty".into(),
            PathType::Diagonal => "diagonal".into(),
            PathType::Wide => "wide".into(),
            PathType::Free(t) => format!("free{t}"),
        }
    }
}

impl fmt::Display for PathType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for PathType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "empty" => Ok(PathType::Empty),
            "diagonal" => Ok(PathType::Diagonal),
            "wide" => Ok(PathType::Wide),
            "free3" => Ok(PathType::Free(3)),
            "free4" => Ok(PathType::Free(4)),
            "free5" => Ok(PathType::Free(5)),
            _ => Err(Error::Parse(format!("unknown path type `{s}`"))),
        }
    }
}

impl Serialize for PathType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

impl<'de> Deserialize<'de> for PathType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A rectangle of first-level states: `rows[t]` covers cells `x0..x0 + width`.
/// Open fields have no cells outside the window; cyclic ones wrap around.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Field {
    pub x0: i64,
    pub rows: Vec<BitRow>,
    pub cyclic: bool,
}

impl Field {
    pub fn open(x0: i64, rows: Vec<BitRow>) -> Self {
        Field { x0, rows, cyclic: false }
    }

    pub fn cyclic(rows: Vec<BitRow>) -> Self {
        Field { x0: 0, rows, cyclic: true }
    }

    /// A window of the diagram wide enough that no path from `extra` points
    /// or from the support can reach its edge.
    pub fn from_diagram(d: &SpaceTimeDiagram, extra: &[(i64, usize)]) -> Self {
        if d.rows[0].is_periodic() {
            return Field::cyclic(d.rows.iter().map(|r| r.bits().clone()).collect());
        }
        let pad = d.horizon() as i64 + 2;
        let mut lo = 0;
        let mut hi = 0;
        if let Some((a, b)) = d.extent() {
            (lo, hi) = (a, b);
        }
        for &(x, _) in extra {
            lo = lo.min(x);
            hi = hi.max(x);
        }
        let x0 = lo - pad;
        let width = (hi - lo + 1 + 2 * pad) as usize;
        Field::open(x0, d.dense(x0, width))
    }

    pub fn width(&self) -> usize {
        self.rows.first().map_or(0, BitRow::len)
    }

    pub fn height(&self) -> usize {
        self.rows.len()
    }

    /// Column index of cell `x`, if it is in the window.
    pub fn col(&self, x: i64) -> Option<usize> {
        let w = self.width() as i64;
        if self.cyclic {
            Some((x - self.x0).rem_euclid(w) as usize)
        } else {
            let i = x - self.x0;
            (0..w).contains(&i).then_some(i as usize)
        }
    }

    /// State at `(x, t)`; rows before 0 and cells off an open window read 0.
    pub fn get(&self, x: i64, t: i64) -> bool {
        if t < 0 || t as usize >= self.rows.len() {
            return false;
        }
        self.col(x).is_some_and(|i| self.rows[t as usize].get(i))
    }

    /// Cells of row `t` that may lie on a path of the given type.
    pub fn allowed(&self, t: usize, path: PathType) -> BitRow {
        let prev = t.checked_sub(1).map(|p| &self.rows[p]);
        allowed_rows(prev, &self.rows[t], path, self.cyclic)
    }

    /// Cells of row `t + 1` reachable in one step from the set `from` in row `t`.
    pub fn advance(&self, from: &BitRow, t: usize, path: PathType) -> BitRow {
        advance_rows(from, &self.rows[t], &self.rows[t + 1], path, self.cyclic)
    }

    /// Whether a single step `(x, t) -> (y, t + 1)` is legal for the path type
    /// (the endpoints' own point conditions are checked separately).
    pub fn step_ok(&self, x: i64, t: i64, y: i64, path: PathType) -> bool {
        let d = y - x;
        match path {
            PathType::Empty | PathType::Free(_) => d.abs() <= 1,
            PathType::Diagonal => d.abs() == 1,
            PathType::Wide => d.abs() <= 1 && !(d != 0 && self.get(y, t) && self.get(x, t + 1)),
        }
    }

    pub fn point_ok(&self, x: i64, t: i64, path: PathType) -> bool {
        if self.get(x, t) || (!self.cyclic && self.col(x).is_none()) {
            return false;
        }
        match path {
            PathType::Free(theta) => {
                let n = [(x - 1, t), (x + 1, t), (x - 1, t - 1), (x + 1, t - 1), (x, t - 1)]
                    .iter()
                    .filter(|&&(a, b)| self.get(a, b))
                    .count();
                n < theta as usize
            }
            _ => true,
        }
    }

    /// Checks that consecutive points form a legal path of the given type.
    pub fn validate_path(&self, path: &[(i64, i64)], kind: PathType) -> bool {
        path.iter().all(|&(x, t)| self.point_ok(x, t, kind))
            && path
                .windows(2)
                .all(|w| w[1].1 == w[0].1 + 1 && self.step_ok(w[0].0, w[0].1, w[1].0, kind))
    }
}

/// Bit `i` of the result holds bit `i - 1` of `row` (a rightward shift in space).
fn right(row: &BitRow, cyclic: bool) -> BitRow {
    if cyclic {
        row.rotate_up(1)
    } else {
        row.shl(1)
    }
}

/// Bit `i` of the result holds bit `i + 1` of `row`.
fn left(row: &BitRow, cyclic: bool) -> BitRow {
    if cyclic {
        row.rotate_down(1)
    } else {
        row.shr(1)
    }
}

/// Cells of `row` that may lie on a path of the given type; `prev` is the row
/// above (`None` reads as all 0).
pub fn allowed_rows(prev: Option<&BitRow>, row: &BitRow, path: PathType, cyclic: bool) -> BitRow {
    let mut ok = row.not();
    if let PathType::Free(theta) = path {
        let zero;
        let prev = match prev {
            Some(p) => p,
            None => {
                zero = BitRow::zeros(row.len());
                &zero
            }
        };
        let inputs = [right(row, cyclic), left(row, cyclic), right(prev, cyclic), left(prev, cyclic), prev.clone()];
        ok.and_not_assign(&count_at_least(&inputs, theta));
    }
    ok
}

/// Cells of `next` reachable in one step from the set `from` in `cur`.
pub fn advance_rows(from: &BitRow, cur: &BitRow, next: &BitRow, path: PathType, cyclic: bool) -> BitRow {
    let mut n = match path {
        PathType::Empty | PathType::Free(_) => {
            let mut n = right(from, cyclic);
            n.or_assign(&left(from, cyclic));
            n.or_assign(from);
            n
        }
        PathType::Diagonal => {
            let mut n = right(from, cyclic);
            n.or_assign(&left(from, cyclic));
            n
        }
        PathType::Wide => {
            // x -> x+1 is blocked when λ(x+1, t) = λ(x, t+1) = 1
            let mut block_r = left(cur, cyclic);
            block_r.and_assign(next);
            let mut block_l = right(cur, cyclic);
            block_l.and_assign(next);
            let mut n = from.clone();
            let mut r = from.clone();
            r.and_not_assign(&block_r);
            n.or_assign(&right(&r, cyclic));
            let mut l = from.clone();
            l.and_not_assign(&block_l);
            n.or_assign(&left(&l, cyclic));
            n
        }
    };
    n.and_assign(&allowed_rows(Some(cur), next, path, cyclic));
    n
}

/// Bit-sliced test "at least `theta` of the inputs are set".
pub fn count_at_least(inputs: &[BitRow], theta: u8) -> BitRow {
    let len = inputs[0].len();
    let nw = inputs[0].words().len();
    let mut out = vec![0u64; nw];
    for (w, o) in out.iter_mut().enumerate() {
        let (mut b0, mut b1, mut b2) = (0u64, 0u64, 0u64);
        for inp in inputs {
            let x = inp.words()[w];
            let c0 = b0 & x;
            b0 ^= x;
            let c1 = b1 & c0;
            b1 ^= c0;
            b2 |= c1;
        }
        *o = match theta {
            0 => !0,
            1 => b0 | b1 | b2,
            2 => b1 | b2,
            3 => b2 | (b1 & b0),
            4 => b2,
            5 => b2 & b0,
            _ => 0,
        };
    }
    BitRow::from_words(len, out)
}

/// Points reachable by paths of one type from a set of sources.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachSet {
    pub path_type: PathType,
    pub x0: i64,
    pub cyclic: bool,
    pub rows: Vec<BitRow>,
}

impl ReachSet {
    pub fn contains(&self, x: i64, t: usize) -> bool {
        let w = self.rows[0].len() as i64;
        let i = if self.cyclic { (x - self.x0).rem_euclid(w) } else { x - self.x0 };
        (0..w).contains(&i) && self.rows[t].get(i as usize)
    }

    /// Marked cells of row `t`.
    pub fn row_points(&self, t: usize) -> Vec<i64> {
        self.rows[t]
            .iter()
            .enumerate()
            .filter(|(_, b)| *b)
            .map(|(i, _)| self.x0 + i as i64)
            .collect()
    }

    pub fn is_subset_of(&self, other: &ReachSet) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a.and(&b.not()).is_zero())
    }
}

pub fn reachable_field(field: &Field, sources: &[(i64, usize)], path: PathType) -> ReachSet {
    let h = field.height();
    let w = field.width();
    let mut seeds = vec![BitRow::zeros(w); h];
    for &(x, t) in sources {
        if let (Some(i), true) = (field.col(x), t < h) {
            seeds[t].set(i, true);
        }
    }
    let mut rows: Vec<BitRow> = Vec::with_capacity(h);
    for t in 0..h {
        let mut cur = seeds[t].and(&field.allowed(t, path));
        if t > 0 {
            cur.or_assign(&field.advance(&rows[t - 1], t - 1, path));
        }
        rows.push(cur);
    }
    ReachSet {
        path_type: path,
        x0: field.x0,
        cyclic: field.cyclic,
        rows,
    }
}

pub fn reachable_set(diagram: &SpaceTimeDiagram, sources: &[(i64, usize)], path: PathType) -> ReachSet {
    reachable_field(&Field::from_diagram(diagram, sources), sources, path)
}

/// Whether some path of the type joins row 0 to row `depth - 1` of the field.
pub fn crosses(field: &Field, depth: usize, path: PathType) -> bool {
    if depth == 0 {
        return false;
    }
    let mut cur = field.allowed(0, path);
    for t in 0..depth - 1 {
        if cur.is_zero() {
            return false;
        }
        cur = field.advance(&cur, t, path);
    }
    !cur.is_zero()
}

/// Evolution of a cyclic row for `depth` rows (row 0 is the input).
pub fn cyclic_field(config: &BinaryConfig, depth: usize) -> Field {
    let mut rows = vec![config.bits().clone()];
    for _ in 1..depth {
        let next = crate::additive::step_cyclic(rows.last().unwrap(), crate::additive::AdditiveRule::OneOr3);
        rows.push(next);
    }
    Field::cyclic(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn count_thresholds() {
        let rows: Vec<BitRow> = (0..5).map(|k| BitRow::from_u64(0b11111 >> k, 5)).collect();
        for theta in 1..=5u8 {
            let m = count_at_least(&rows, theta);
            for j in 0..5 {
                let count = (0..5).filter(|&k| rows[k].get(j)).count();
                assert_eq!(m.get(j), count >= theta as usize);
            }
        }
    }
}
