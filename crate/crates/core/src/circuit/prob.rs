//! `f_C(i)`: acceptance probability of a circuit when exactly `i` inputs,
//! chosen uniformly, are true.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rayon::prelude::*;

use crate::models::Restriction;
use crate::rng::Stream;

use super::ir::Circuit;
use super::CircuitError;

/// Cap on the number of assignments an exact computation enumerates.
pub const EXACT_LIMIT: u128 = 100_000_000;

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 1..=k as u128 {
        // exact at every step: acc * (n-k+j) is divisible by j
        acc = acc * (n as u128 - k as u128 + j) / j;
    }
    acc
}

/// All `t`-subsets of `0..n`, each differing from the previous one by
/// swapping a single element (revolving-door order).
#[derive(Debug, Clone)]
pub struct RevolvingDoor {
    n: usize,
    t: usize,
    c: Vec<usize>,
    state: DoorState,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum DoorState {
    Fresh,
    Running,
    Done,
}

impl RevolvingDoor {
    pub fn new(n: usize, t: usize) -> Self {
        assert!(t <= n);
        // c[1..=t] hold the combination in increasing order, c[t+1] = n sentinel
        let mut c = vec![0; t + 2];
        for (j, slot) in c.iter_mut().enumerate().take(t + 1).skip(1) {
            *slot = j - 1;
        }
        c[t + 1] = n;
        RevolvingDoor {
            n,
            t,
            c,
            state: DoorState::Fresh,
        }
    }

    pub fn current(&self) -> &[usize] {
        &self.c[1..=self.t]
    }

    /// Moves to the next combination; false when exhausted.
    pub fn advance(&mut self) -> bool {
        match self.state {
            DoorState::Done => return false,
            DoorState::Fresh => {
                self.state = DoorState::Running;
                return true;
            }
            DoorState::Running => {}
        }
        let t = self.t;
        if t == 0 || t == self.n {
            self.state = DoorState::Done;
            return false;
        }
        let c = &mut self.c;
        if t == 1 {
            if c[1] + 1 < self.n {
                c[1] += 1;
                return true;
            }
            self.state = DoorState::Done;
            return false;
        }
        // Knuth, Algorithm R
        let mut j;
        let mut try_increase;
        if t % 2 == 1 {
            if c[1] + 1 < c[2] {
                c[1] += 1;
                return true;
            }
            j = 2;
            try_increase = false;
        } else {
            if c[1] > 0 {
                c[1] -= 1;
                return true;
            }
            j = 2;
            try_increase = true;
        }
        loop {
            if !try_increase {
                if c[j] >= j {
                    c[j] = c[j - 1];
                    c[j - 1] = j - 2;
                    return true;
                }
                j += 1;
            }
            if c[j] + 1 < c[j + 1] {
                c[j - 1] = c[j];
                c[j] += 1;
                return true;
            }
            j += 1;
            if j > t {
                self.state = DoorState::Done;
                return false;
            }
            try_increase = false;
        }
    }
}

/// Number of weight-`weight` assignments consistent with `rho` (counting the
/// ones `rho` already fixes) on which `c` is true, and the total number of
/// such assignments.
pub fn count_weight(c: &Circuit, rho: &Restriction, weight: usize) -> Result<(u128, u128), CircuitError> {
    let m = c.inputs();
    assert_eq!(rho.host(), m);
    if weight > m {
        return Err(CircuitError::InvalidWeight { weight, inputs: m });
    }
    let fixed_ones = rho.ones();
    let stars = rho.stars();
    if weight < fixed_ones || weight - fixed_ones > stars.len() {
        return Ok((0, 0));
    }
    let free = weight - fixed_ones;
    let total = binomial(stars.len() as u64, free as u64);
    if total > EXACT_LIMIT {
        return Err(CircuitError::TooLarge { assignments: total });
    }
    if let Some(v) = c.as_constant() {
        return Ok((if v { total } else { 0 }, total));
    }

    let base: Vec<u64> = (0..m).map(|v| if rho.get(v) == Some(true) { !0 } else { 0 }).collect();
    let mut lanes = base.clone();
    let mut scratch = Vec::new();
    let mut hits: u128 = 0;
    let mut slot = 0;
    let mut door = RevolvingDoor::new(stars.len(), free);
    let mut flush = |lanes: &mut Vec<u64>, used: usize, hits: &mut u128| {
        let mask = if used == 64 { !0 } else { (1u64 << used) - 1 };
        *hits += (c.eval_lanes(lanes, &mut scratch) & mask).count_ones() as u128;
        lanes.copy_from_slice(&base);
    };
    while door.advance() {
        for &k in door.current() {
            lanes[stars[k]] |= 1 << slot;
        }
        slot += 1;
        if slot == 64 {
            flush(&mut lanes, 64, &mut hits);
            slot = 0;
        }
    }
    if slot > 0 {
        flush(&mut lanes, slot, &mut hits);
    }
    Ok((hits, total))
}

/// Exact `f_C(i)` by enumerating all `C(m, i)` weight-`i` assignments.
pub fn exact_weight_probability(c: &Circuit, i: usize) -> Result<BigRational, CircuitError> {
    exact_weight_probability_restricted(c, &Restriction::all_star(c.inputs()), i)
}

/// `P(C = 1)` for a uniform weight-`i` assignment conditioned on agreeing
/// with `rho`.
pub fn exact_weight_probability_restricted(
    c: &Circuit,
    rho: &Restriction,
    i: usize,
) -> Result<BigRational, CircuitError> {
    let (hits, total) = count_weight(c, rho, i)?;
    if total == 0 {
        return Err(CircuitError::InvalidWeight {
            weight: i,
            inputs: c.inputs(),
        });
    }
    Ok(BigRational::new(BigInt::from(hits), BigInt::from(total)))
}

/// Mean and binomial standard error of a Bernoulli sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub trials: u64,
}

impl McEstimate {
    pub fn from_hits(hits: u64, trials: u64) -> McEstimate {
        assert!(trials >= 1);
        let p = hits as f64 / trials as f64;
        McEstimate {
            estimate: p,
            stderr: (p * (1.0 - p) / trials as f64).sqrt(),
            trials,
        }
    }
}

/// Uniform weight-`i` assignment on `m` inputs (partial Fisher-Yates).
pub fn sample_weight_assignment<R: Rng + ?Sized>(m: usize, i: usize, rng: &mut R) -> Vec<bool> {
    let mut order: Vec<usize> = (0..m).collect();
    let mut bits = vec![false; m];
    for k in 0..i {
        let j = rng.gen_range(k..m);
        order.swap(k, j);
        bits[order[k]] = true;
    }
    bits
}

/// Monte Carlo `f_C(i)`; trial `t` draws from `stream.branch(t)`.
pub fn mc_weight_probability(
    c: &Circuit,
    i: usize,
    trials: u64,
    stream: &Stream,
) -> Result<McEstimate, CircuitError> {
    let m = c.inputs();
    if i > m {
        return Err(CircuitError::InvalidWeight { weight: i, inputs: m });
    }
    if trials == 0 {
        return Err(CircuitError::NoTrials);
    }
    let hits = (0..trials)
        .into_par_iter()
        .filter(|&t| {
            let mut rng = stream.branch(t).rng();
            c.eval(&sample_weight_assignment(m, i, &mut rng))
        })
        .count() as u64;
    Ok(McEstimate::from_hits(hits, trials))
}
