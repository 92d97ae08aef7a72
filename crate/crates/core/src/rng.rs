//! Splittable, counter-based random streams.
//!
//! A [`Stream`] is a pair (root seed, branch key). Branching mixes a child key
//! into the branch key, and materialising a generator selects the ChaCha stream
//! with that key under the root seed. Two distinct branches therefore never
//! share keystream, and any branch can be recreated from its path alone, which
//! is what makes parallel trials bit-reproducible.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Stream {
    seed: u64,
    key: u64,
}

impl Stream {
    pub fn new(seed: u64) -> Self {
        Stream { seed, key: 0 }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Child stream for `index`; the parent is left untouched.
    pub fn branch(&self, index: u64) -> Stream {
        let key = mix64(self.key.wrapping_add(GOLDEN_GAMMA) ^ mix64(index.wrapping_add(1)));
        Stream {
            seed: self.seed,
            key,
        }
    }

    /// Child stream named by a label, for readable experiment plumbing.
    pub fn branch_named(&self, label: &str) -> Stream {
        let h = label
            .bytes()
            .fold(0xCBF2_9CE4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01B3));
        self.branch(h)
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.key);
        rng
    }
}
