//! Z-paths, the refresh-point exploration, and lazily evolved random lines.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::additive::{step_row, AdditiveRule};
use crate::bitrow::BitRow;
use crate::error::{Error, Result};
use crate::percolation::path::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrajectoryKind {
    ZRight,
    ZLeft,
    Chi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Left,
    Right,
}

/// Positions indexed by time from `t0`; `None` marks the −∞ sentinel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trajectory {
    pub kind: TrajectoryKind,
    pub t0: usize,
    pub positions: Vec<Option<i64>>,
}

impl Trajectory {
    pub fn at(&self, t: usize) -> Option<i64> {
        t.checked_sub(self.t0).and_then(|i| self.positions.get(i).copied().flatten())
    }
}

/// Next Z-path position in a row: the extremal zero no further than one
/// cell beyond `prev` in the path's direction.
fn z_next(row: &BitRow, x0: i64, prev: i64, dir: Direction) -> Option<i64> {
    let zeros = row.not();
    match dir {
        Direction::Right => {
            let lim = prev + 1 - x0;
            if lim < 0 {
                return None;
            }
            zeros.last_one_at_or_below(lim as usize).map(|i| x0 + i as i64)
        }
        Direction::Left => {
            let lim = (prev - 1 - x0).max(0);
            zeros.first_one_at_or_above(lim as usize).map(|i| x0 + i as i64)
        }
    }
}

pub fn z_path_field(field: &Field, start: (i64, usize), dir: Direction) -> Trajectory {
    let (x, t0) = start;
    let mut positions = vec![Some(x)];
    let mut cur = Some(x);
    for t in t0 + 1..field.height() {
        cur = cur.and_then(|p| z_next(&field.rows[t], field.x0, p, dir));
        positions.push(cur);
    }
    Trajectory {
        kind: match dir {
            Direction::Right => TrajectoryKind::ZRight,
            Direction::Left => TrajectoryKind::ZLeft,
        },
        t0,
        positions,
    }
}

pub fn z_path(
    diagram: &crate::additive::SpaceTimeDiagram,
    start: (i64, usize),
    dir: Direction,
) -> Trajectory {
    z_path_field(&Field::from_diagram(diagram, &[start]), start, dir)
}

/// A 1 Or 3 row on a finite window, evolved with zero boundary. Cells within
/// `t` of either end of the initial window are unreliable at time `t`.
pub struct LazyLine {
    pub x0: i64,
    pub row: BitRow,
    pub t: usize,
}

impl LazyLine {
    pub fn new(x0: i64, row: BitRow) -> Self {
        LazyLine { x0, row, t: 0 }
    }

    /// Uniform random bits on `[lo, hi]`, with the given overrides.
    pub fn random<R: Rng>(rng: &mut R, lo: i64, hi: i64, fixed: &[(i64, bool)]) -> Self {
        let n = (hi - lo + 1) as usize;
        let words: Vec<u64> = (0..n.div_ceil(64)).map(|_| rng.gen()).collect();
        let mut row = BitRow::from_words(n, words);
        for &(x, v) in fixed {
            row.set((x - lo) as usize, v);
        }
        LazyLine::new(lo, row)
    }

    pub fn step(&mut self) {
        self.row = step_row(&self.row, AdditiveRule::OneOr3);
        self.t += 1;
    }

    /// Reliable cells `[lo, hi]` at the current time.
    pub fn valid(&self) -> (i64, i64) {
        (self.x0 + self.t as i64, self.x0 + self.row.len() as i64 - 1 - self.t as i64)
    }

    pub fn get(&self, x: i64) -> bool {
        self.row.get_or_zero(x - self.x0)
    }

    fn check(&self, x: i64) -> Result<()> {
        let (lo, hi) = self.valid();
        if x < lo || x > hi {
            return Err(Error::Precondition(format!(
                "path left the sampled window at t={} (x={x}, window [{lo},{hi}])",
                self.t
            )));
        }
        Ok(())
    }

    /// Advances one step and moves a rightward Z-path along.
    pub fn z_right_step(&mut self, r: i64) -> Result<i64> {
        self.step();
        self.check(r + 1)?;
        let next = z_next(&self.row, self.x0, r, Direction::Right)
            .ok_or_else(|| Error::Precondition("Z-path has no zero in the window".into()))?;
        self.check(next)?;
        Ok(next)
    }
}

/// One refresh point of the exploration process and the number `G` of
/// witness points examined in the row below it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refresh {
    pub x: i64,
    pub t: i64,
    pub g: u32,
}

/// Runs the exploration on a realized field from the refresh point `(x, t)`
/// until the next refresh time would exceed `horizon`.
pub fn explore_field(field: &Field, start: (i64, i64), horizon: i64) -> Result<Vec<Refresh>> {
    let (mut x, mut t) = start;
    let mut out = Vec::new();
    while t < horizon {
        let mut g = 0u32;
        let mut y = x + 1;
        loop {
            if field.col(y).is_none() {
                return Err(Error::Precondition("exploration left the window".into()));
            }
            g += 1;
            if !field.get(y, t + 1) {
                break;
            }
            y -= 1;
        }
        out.push(Refresh { x, t, g });
        x += 1 - (g / 2) as i64;
        t += g.div_ceil(2) as i64;
    }
    Ok(out)
}

/// Rightward Z-path from the first refresh point, rebuilt from the refresh
/// points alone.
pub fn z_from_refresh(points: &[Refresh], horizon: i64) -> Vec<i64> {
    let mut out = Vec::new();
    for p in points {
        if out.is_empty() {
            out.push(p.x);
        }
        let half = p.g.div_ceil(2) as i64;
        for j in 0..half {
            let t = p.t + 1 + j;
            if t > horizon {
                return out;
            }
            out.push(p.x + 2 - p.g as i64 + j);
        }
    }
    out
}

/// Realizes the drift-lemma law (0 at the origin, uniform elsewhere) on a
/// window wide enough for `steps` rows and records the exploration.
pub fn refresh_walk<R: Rng>(rng: &mut R, steps: usize) -> Result<(Vec<Refresh>, Field)> {
    let w = 2 * steps as i64 + 4;
    let mut line = LazyLine::random(rng, -w, w, &[(0, false)]);
    let mut rows = vec![line.row.clone()];
    for _ in 0..steps {
        line.step();
        rows.push(line.row.clone());
    }
    let field = Field::open(-w, rows);
    let walk = explore_field(&field, (0, 0), steps as i64)?;
    Ok((walk, field))
}
