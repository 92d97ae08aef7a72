use rand::Rng;

use super::ModelError;

/// A subset of `0..host`, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubsetSelection {
    host: usize,
    members: Vec<usize>,
}

impl SubsetSelection {
    pub fn new(host: usize, mut members: Vec<usize>) -> Result<Self, ModelError> {
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) || members.last().is_some_and(|&x| x >= host) {
            return Err(ModelError::InvalidSubset { host });
        }
        Ok(SubsetSelection { host, members })
    }

    pub fn full(host: usize) -> Self {
        SubsetSelection {
            host,
            members: (0..host).collect(),
        }
    }

    /// Subset with bit `x` of `mask` set iff `x` is a member.
    pub fn from_mask(host: usize, mask: u64) -> Self {
        SubsetSelection {
            host,
            members: (0..host).filter(|&x| mask >> x & 1 == 1).collect(),
        }
    }

    pub fn host(&self) -> usize {
        self.host
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn indicator(&self) -> Vec<bool> {
        let mut v = vec![false; self.host];
        for &x in &self.members {
            v[x] = true;
        }
        v
    }

    /// `inner` selects positions of this subset; the result selects the
    /// corresponding host elements.
    pub fn compose(&self, inner: &SubsetSelection) -> SubsetSelection {
        assert_eq!(inner.host, self.members.len());
        SubsetSelection {
            host: self.host,
            members: inner.members.iter().map(|&k| self.members[k]).collect(),
        }
    }
}

/// Uniform `size`-subset of `0..host` via a partial Fisher-Yates shuffle.
pub fn sample_subset_exact<R: Rng + ?Sized>(host: usize, size: usize, rng: &mut R) -> SubsetSelection {
    assert!(size <= host, "subset size {size} exceeds host size {host}");
    let mut pool: Vec<usize> = (0..host).collect();
    for k in 0..size {
        let j = rng.gen_range(k..host);
        pool.swap(k, j);
    }
    pool.truncate(size);
    pool.sort_unstable();
    SubsetSelection { host, members: pool }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn extremes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(sample_subset_exact(5, 0, &mut rng).is_empty());
        assert_eq!(sample_subset_exact(5, 5, &mut rng), SubsetSelection::full(5));
    }

    #[test]
    fn uniform_pairs_of_five() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let trials = 100_000;
        let mut counts = std::collections::HashMap::new();
        for _ in 0..trials {
            let s = sample_subset_exact(5, 2, &mut rng);
            *counts.entry(s.members().to_vec()).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 10);
        let sigma = (0.1f64 * 0.9 / trials as f64).sqrt();
        for (pair, c) in counts {
            let freq = c as f64 / trials as f64;
            assert!((freq - 0.1).abs() <= 3.0 * sigma, "{pair:?}: {freq}");
        }
    }

    #[test]
    fn validation() {
        assert!(SubsetSelection::new(3, vec![0, 0]).is_err());
        assert!(SubsetSelection::new(3, vec![3]).is_err());
        assert_eq!(SubsetSelection::new(4, vec![3, 1]).unwrap().members(), &[1, 3]);
        assert_eq!(SubsetSelection::from_mask(4, 0b1010).members(), &[1, 3]);
    }
}
