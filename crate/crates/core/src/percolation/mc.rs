//! Monte Carlo estimators for crossing, survival and drift.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bitrow::BitRow;
use crate::error::Result;
use crate::percolation::path::{advance_rows, allowed_rows, PathType};
use crate::percolation::zpath::{refresh_walk, LazyLine};
use crate::rng::{trial_rng, RNG_ALGORITHM};

/// Two-sided 99% normal quantile.
pub const Z99: f64 = 2.5758293035489004;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub op: String,
    pub params: Value,
    pub trials: u64,
    pub estimate: f64,
    pub stderr: f64,
    pub ci99: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sd: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub successes: Option<u64>,
    pub rng_algorithm: String,
    pub rng_seed: u64,
    pub runtime_ms: u64,
}

impl Estimate {
    fn proportion(op: &str, params: Value, trials: u64, hits: u64, seed: u64, start: Instant) -> Self {
        let p = hits as f64 / trials as f64;
        let se = (p * (1.0 - p) / trials as f64).sqrt();
        Estimate {
            op: op.into(),
            params,
            trials,
            estimate: p,
            stderr: se,
            ci99: [p - Z99 * se, p + Z99 * se],
            sd: None,
            successes: Some(hits),
            rng_algorithm: RNG_ALGORITHM.into(),
            rng_seed: seed,
            runtime_ms: start.elapsed().as_millis() as u64,
        }
    }
}

/// Runs the path DP along a lazily evolved line from `sources` (a subset of
/// row 0, relative to the line's `x0`) and returns the reachable set of row `depth`.
fn reach_on_line(line: &mut LazyLine, sources: &BitRow, depth: usize, path: PathType) -> BitRow {
    let mut reach = sources.and(&allowed_rows(None, &line.row, path, false));
    for _ in 0..depth {
        if reach.is_zero() {
            break;
        }
        let cur = line.row.clone();
        line.step();
        reach = advance_rows(&reach, &cur, &line.row, path, false);
    }
    reach
}

fn crossing_trial(seed: u64, trial: u64, path: PathType, t: usize) -> bool {
    let mut rng = trial_rng(seed, trial);
    let w = t as i64 + 2;
    let mut line = LazyLine::random(&mut rng, -w, w, &[]);
    let all = BitRow::ones(line.row.len());
    let reach = reach_on_line(&mut line, &all, t, path);
    reach.get_or_zero(-line.x0)
}

/// Probability that a path of the type joins row 0 to `(0, t)` in a uniformly
/// random line.
pub fn mc_crossing(path: PathType, t: usize, trials: u64, seed: u64) -> Estimate {
    let start = Instant::now();
    let hits = (0..trials)
        .into_par_iter()
        .filter(|&i| crossing_trial(seed, i, path, t))
        .count() as u64;
    let params = json!({"path_type": path.name(), "t": t, "row_minus_one": "zero"});
    Estimate::proportion("mc_crossing", params, trials, hits, seed, start)
}

/// Exact crossing probability by enumerating the `2t + 3` relevant initial cells.
pub fn exact_crossing(path: PathType, t: usize) -> (u64, u64) {
    assert!(t <= 10, "exact enumeration is limited to t <= 10");
    let n = 2 * t + 3;
    let w = t as i64 + 1;
    let all = BitRow::ones(n);
    let hits = (0..1u64 << n)
        .filter(|&m| {
            let mut line = LazyLine::new(-w, BitRow::from_u64(m, n));
            reach_on_line(&mut line, &all, t, path).get_or_zero(w)
        })
        .count() as u64;
    (hits, 1 << n)
}

fn survival_trial(seed: u64, trial: u64, t: usize, origin_zero: bool) -> bool {
    let mut rng = trial_rng(seed, trial);
    let w = 2 * t as i64 + 2;
    let fixed: &[(i64, bool)] = if origin_zero { &[(0, false)] } else { &[] };
    let mut line = LazyLine::random(&mut rng, -w, w, fixed);
    let mut src = BitRow::zeros(line.row.len());
    src.set(w as usize, true);
    !reach_on_line(&mut line, &src, t, PathType::Empty).is_zero()
}

/// Probability of an empty path from `(0, 0)` to row `t`.
pub fn mc_empty_survival(t: usize, trials: u64, seed: u64, origin_zero: bool) -> Estimate {
    let start = Instant::now();
    let hits = (0..trials)
        .into_par_iter()
        .filter(|&i| survival_trial(seed, i, t, origin_zero))
        .count() as u64;
    let params = json!({"t": t, "origin_zero": origin_zero});
    Estimate::proportion("mc_empty_survival", params, trials, hits, seed, start)
}

/// `r_T / T` for one realization of the drift law.
pub fn drift_trial(seed: u64, trial: u64, horizon: usize) -> Result<f64> {
    let mut rng = trial_rng(seed, trial);
    let w = 2 * horizon as i64 + 4;
    let mut line = LazyLine::random(&mut rng, -w, w, &[(0, false)]);
    let mut r = 0i64;
    for _ in 0..horizon {
        r = line.z_right_step(r)?;
    }
    Ok(r as f64 / horizon as f64)
}

/// Sample mean and sd of `r_T / T` for the rightward Z-path from the origin.
pub fn mc_drift(horizon: usize, trials: u64, seed: u64) -> Result<Estimate> {
    let start = Instant::now();
    let xs = (0..trials)
        .into_par_iter()
        .map(|i| drift_trial(seed, i, horizon))
        .collect::<Result<Vec<f64>>>()?;
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
    let sd = var.sqrt();
    let se = sd / n.sqrt();
    Ok(Estimate {
        op: "mc_drift".into(),
        params: json!({"T": horizon}),
        trials,
        estimate: mean,
        stderr: se,
        ci99: [mean - Z99 * se, mean + Z99 * se],
        sd: Some(sd),
        successes: None,
        rng_algorithm: RNG_ALGORITHM.into(),
        rng_seed: seed,
        runtime_ms: start.elapsed().as_millis() as u64,
    })
}

/// Pooled exploration statistics over independent realizations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RefreshStats {
    pub steps: u64,
    pub mean_step: [f64; 2],
    /// `g_counts[g - 1]` is the number of steps with `G = g`.
    pub g_counts: Vec<u64>,
}

/// Collects at least `min_steps` exploration steps from runs of `horizon` rows.
pub fn refresh_stats(min_steps: u64, horizon: usize, seed: u64) -> Result<RefreshStats> {
    let mut steps = 0u64;
    let (mut dx, mut dt) = (0i64, 0i64);
    let mut g_counts = Vec::new();
    let mut trial = 0u64;
    while steps < min_steps {
        let mut rng = trial_rng(seed, trial);
        let (walk, _) = refresh_walk(&mut rng, horizon)?;
        for p in &walk {
            let g = p.g as usize;
            if g_counts.len() < g {
                g_counts.resize(g, 0);
            }
            g_counts[g - 1] += 1;
            dx += 1 - (p.g / 2) as i64;
            dt += p.g.div_ceil(2) as i64;
        }
        steps += walk.len() as u64;
        trial += 1;
    }
    Ok(RefreshStats {
        steps,
        mean_step: [dx as f64 / steps as f64, dt as f64 / steps as f64],
        g_counts,
    })
}
