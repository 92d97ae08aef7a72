use std::fmt;

/// Constants of the depth-reduction argument for circuits with at most
/// `n^t` gates.
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictionConfig {
    pub t: f64,
    /// Level-1 fan-in budget factor: fan-in above `c0 ln n` should not survive.
    pub c0: f64,
    /// Exponent of the star budget `2 floor(n^star_exponent) + 1`.
    pub star_exponent: f64,
    /// Least integer with `star_exponent * k >= t`; also the default decision tree cap.
    pub k: usize,
    /// Size factor allowed when a depth-2 block is inverted.
    pub c1: f64,
    /// Below this `n` the asymptotic budgets are not expected to hold.
    pub n0: usize,
}

impl RestrictionConfig {
    pub fn new(t: f64) -> RestrictionConfig {
        assert!(t > 0.0 && t.is_finite(), "size exponent must be positive");
        let star_exponent = 0.5;
        // guard against t / 0.5 landing a hair above an integer
        let k = ((t / star_exponent) - 1e-9).ceil().max(1.0) as usize;
        RestrictionConfig {
            t,
            c0: 4f64.ln() * t,
            star_exponent,
            k,
            c1: 2f64.powi(k as i32),
            n0: 8,
        }
    }

    /// Config whose `t` makes `size <= n^t`.
    pub fn for_size(size: usize, n: usize) -> RestrictionConfig {
        let t = if n < 2 || size < 2 {
            1.0
        } else {
            ((size as f64).ln() / (n as f64).ln()).max(1.0)
        };
        RestrictionConfig::new(t)
    }

    /// `1 / 2^(1+l)`.
    pub fn epsilon_level(&self, level: usize) -> f64 {
        0.5f64.powi(1 + level as i32)
    }

    /// `k * 2^l`.
    pub fn k_level(&self, level: usize) -> usize {
        self.k << level
    }

    /// `c0 ln n`, the level-1 fan-in expected to survive the first restriction.
    pub fn fanin_budget(&self, n: usize) -> f64 {
        self.c0 * (n as f64).ln()
    }

    /// `2 floor(n^star_exponent) + 1`.
    pub fn star_target(&self, n: usize) -> usize {
        2 * ((n as f64).powf(self.star_exponent) + 1e-9).floor() as usize + 1
    }

    pub fn below_n0(&self, n: usize) -> bool {
        n < self.n0
    }
}

impl fmt::Display for RestrictionConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "t={} c0={:.4} star_exponent={} k={} k_l=k*2^l c1={} n0={}",
            self.t, self.c0, self.star_exponent, self.k, self.c1, self.n0
        )
    }
}
