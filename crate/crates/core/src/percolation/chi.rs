//! The χ-path in the Xor automaton started from 1s at {−1, 0}.

use crate::additive::mu_dot;
use crate::percolation::zpath::{Trajectory, TrajectoryKind};

/// μ(x, t) for the initial row with 1s at −1 and 0.
pub fn mu_pair(x: i64, t: u64) -> bool {
    mu_dot(t, x) ^ mu_dot(t, x + 1)
}

/// The χ-path from (0, 0) up to time `steps`.
pub fn chi_path_xor(steps: u64) -> Trajectory {
    let mut x = 0i64;
    let mut positions = Vec::with_capacity(steps as usize + 1);
    positions.push(Some(0));
    for t in 0..steps {
        if !mu_pair(x, t) {
            x += 1;
        }
        positions.push(Some(x));
    }
    Trajectory { kind: TrajectoryKind::Chi, t0: 0, positions }
}

/// Exit times `E_k` (the first `t` with `t - x_t >= 2^k`) for `k = 1..=k_max`,
/// streamed without storing the path.
pub fn chi_exit_times(k_max: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(k_max as usize);
    let (mut x, mut t) = (0i64, 0u64);
    for k in 1..=k_max {
        let lag = 1u64 << k;
        while t - (x as u64) < lag {
            if !mu_pair(x, t) {
                x += 1;
            }
            t += 1;
        }
        out.push(t);
    }
    out
}

/// `e_k = E_k / 2^(k-1)` for `k = 1..=k_max`.
pub fn chi_e_sequence(k_max: u32) -> Vec<u64> {
    chi_exit_times(k_max)
        .into_iter()
        .enumerate()
        .map(|(i, e)| e >> i)
        .collect()
}

/// The recursion `e_{k+1} = floor(e_k / 2) + e_k` from `e_2 = 3`, for `k = 2..=k_max`.
pub fn chi_e_recursion(k_max: u32) -> Vec<u64> {
    let mut e = vec![3u64];
    for _ in 3..=k_max {
        let last = *e.last().unwrap();
        e.push(last / 2 + last);
    }
    e
}

/// Least-squares slope of `log(2^k)` against `log E_k` over `k in ks`.
pub fn chi_slope(exits: &[u64], ks: std::ops::RangeInclusive<u32>) -> f64 {
    let pts: Vec<(f64, f64)> = ks
        .map(|k| ((exits[k as usize - 1] as f64).ln(), k as f64 * std::f64::consts::LN_2))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}
