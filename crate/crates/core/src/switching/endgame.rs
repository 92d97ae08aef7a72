use rand::Rng;
use rayon::prelude::*;

use crate::circuit::{circuit_stats, Circuit, McEstimate};
use crate::rng::Stream;

use super::config::RestrictionConfig;
use super::SwitchingError;

#[derive(Debug, Clone, PartialEq)]
pub struct FlipSensitivity {
    pub n: usize,
    /// `P(C(rho0) = 0 and C(rho1) = 1)`.
    pub up: McEstimate,
    /// `P(C(rho0) = 1 and C(rho1) = 0)`.
    pub down: McEstimate,
    /// Largest level-1 fan-in over `2n + 1`.
    pub fanin_bound: f64,
    /// `c0 ln n / n`.
    pub log_bound: f64,
}

/// Draws a complete assignment with exactly `n` ones on `m = 2n + 1` inputs,
/// turns one uniformly chosen zero into a one, and records how often the
/// circuit changes value in each direction. Depth at most 2.
pub fn single_flip_sensitivity(
    c: &Circuit,
    trials: u64,
    config: &RestrictionConfig,
    stream: &Stream,
) -> Result<FlipSensitivity, SwitchingError> {
    let m = c.inputs();
    if m < 3 || m.is_multiple_of(2) {
        return Err(SwitchingError::Host { m });
    }
    let stats = circuit_stats(c);
    if stats.depth > 2 {
        return Err(SwitchingError::Shape(format!("depth {} exceeds 2", stats.depth)));
    }
    assert!(trials >= 1);
    let n = (m - 1) / 2;
    let (up, down) = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream.branch(t).rng();
            let mut bits = crate::circuit::sample_weight_assignment(m, n, &mut rng);
            let before = c.eval(&bits);
            let zeros: Vec<usize> = (0..m).filter(|&v| !bits[v]).collect();
            bits[zeros[rng.gen_range(0..zeros.len())]] = true;
            let after = c.eval(&bits);
            ((!before && after) as u64, (before && !after) as u64)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(FlipSensitivity {
        n,
        up: McEstimate::from_hits(up, trials),
        down: McEstimate::from_hits(down, trials),
        fanin_bound: stats.max_level1_fanin() as f64 / m as f64,
        log_bound: config.fanin_budget(n) / n as f64,
    })
}
