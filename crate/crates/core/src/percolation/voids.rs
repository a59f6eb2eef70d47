//! Principal voids of λ•, their perturbed versions, and 3-free paths chaining
//! through them from seeds supported in 4Z.

use serde::{Deserialize, Serialize};

use crate::additive::{evolve, AdditiveRule, Void};
use crate::config::BinaryConfig;
use crate::error::{Error, Result};
use crate::percolation::path::{Field, PathType};

/// `V_i`, its perturbation `W_i^L` (absent when its width is at most `L`),
/// and the interval `J` directly above the top of `W_i^L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrincipalVoid {
    pub i: u32,
    pub l: i64,
    pub v: Void,
    pub w: Option<Void>,
    /// `(a, b, t)` of the row above `w`'s top, same length.
    pub j: Option<(i64, i64, i64)>,
}

impl PrincipalVoid {
    /// Bottom point of `W_i^L`.
    pub fn apex(&self) -> Option<(i64, i64)> {
        self.w.map(|w| ((w.a + w.b) / 2, w.bottom()))
    }
}

/// `V_{2j}` has top `[1, 2^(j+1) - 1]` at time `2^(j+1)`, `V_{2j+1}` the same
/// top at time `3 * 2^j`. `mirror` picks the negative-x void instead.
pub fn principal_void(i: u32, l: i64, mirror: bool) -> PrincipalVoid {
    let j = i / 2;
    let width = (1i64 << (j + 1)) - 1;
    let t = if i % 2 == 0 { 2i64 << j } else { 3i64 << j };
    let v = if mirror {
        Void::new(-width, -1, t)
    } else {
        Void::new(1, width, t)
    };
    let w = (width > l).then(|| Void::new(v.a + l, v.b, t));
    let j_int = w.map(|w| (w.a, w.b, w.t - 1));
    PrincipalVoid { i, l, v, w, j: j_int }
}

/// One verified path from the apex of `W_i` to the apex of `W_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainSegment {
    pub i: u32,
    pub points: Vec<(i64, i64)>,
}

fn check_seed(seed: &BinaryConfig, l: i64, i_start: u32) -> Result<()> {
    if l < 0 || l % 4 != 0 {
        return Err(Error::Precondition(format!("L = {l} is not a multiple of 4")));
    }
    if seed.is_periodic() {
        return Err(Error::Precondition("seed must be finite".into()));
    }
    for x in seed.sites() {
        if x.rem_euclid(4) != 0 || x < 0 || x > l {
            return Err(Error::Precondition(format!("seed has a 1 at {x}, outside 4Z ∩ [0,{l}]")));
        }
    }
    if l > (1i64 << (i_start / 2)) - 2 {
        return Err(Error::Precondition(format!(
            "L = {l} exceeds 2^floor(i/2) - 2 at i = {i_start}"
        )));
    }
    Ok(())
}

/// Greedy step preferring moves toward `target`, keeping to zeros that pass the
/// free(3) test and, with `keep_run`, to the zero run meeting the current one.
fn greedy_step(field: &Field, x: i64, t: i64, target: i64, keep_run: bool) -> Option<i64> {
    let mut cands = [x - 1, x, x + 1];
    cands.sort_by_key(|&y| (y - target).abs());
    let ok = |y: i64| field.point_ok(y, t + 1, PathType::Free(3)) && field.step_ok(x, t, y, PathType::Wide);
    if keep_run {
        // stay in the successor run: it meets the current run, which holds x
        if let Some(&y) = cands.iter().find(|&&y| ok(y) && (y == x || !field.get(y, t))) {
            return Some(y);
        }
    }
    cands.into_iter().find(|&y| ok(y))
}

/// Explicit 3-free paths from `W_i` to `W_{i+1}` for `i = i_start .. i_start + links`.
pub fn three_free_chain(seed: &BinaryConfig, l: i64, i_start: u32, links: u32) -> Result<Vec<ChainSegment>> {
    check_seed(seed, l, i_start)?;
    let last = principal_void(i_start + links, l, false);
    let (_, horizon) = last.apex().expect("W nonempty under the precondition");
    let d = evolve(seed, AdditiveRule::OneOr3, horizon as usize)?;
    let field = Field::from_diagram(&d, &[]);
    let mut out = Vec::with_capacity(links as usize);
    for i in i_start..i_start + links {
        let from = principal_void(i, l, false);
        let to = principal_void(i + 1, l, false);
        let (mut x, mut t) = from.apex().unwrap();
        let (tx, tt) = to.apex().unwrap();
        let top = to.w.unwrap();
        let mut points = vec![(x, t)];
        while t < tt {
            let inside = t + 1 >= top.t;
            let y = greedy_step(&field, x, t, tx, !inside)
                .ok_or_else(|| Error::Unresolved(format!("3-free chain stuck at i = {i}, point ({x},{t})")))?;
            x = y;
            t += 1;
            points.push((x, t));
        }
        if x != tx
            || !field.validate_path(&points, PathType::Free(3))
            || !field.validate_path(&points, PathType::Wide)
        {
            return Err(Error::Unresolved(format!("3-free chain failed validation at i = {i}")));
        }
        out.push(ChainSegment { i, points });
    }
    Ok(out)
}
