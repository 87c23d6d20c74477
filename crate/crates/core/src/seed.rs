//! Deterministic, label-addressed random streams.
//!
//! A stream is identified by a base seed, an experiment name and a path of
//! integer labels (model index, dimension, trial, role, ...). The 64-bit key
//! is derived by folding each label into a SplitMix64 state:
//!
//! ```text
//! key = mix(base ^ fnv1a(name))
//! key = mix(key ^ mix(label + GOLDEN * (position + 1)))   for each label
//! ```
//!
//! and then expanded into a ChaCha8 generator. Nothing depends on the order
//! in which streams are created, so running trials on any number of workers
//! reproduces the same draws.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Random stream handed to samplers.
pub type Stream = ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedSpec {
    pub base_seed: u64,
    pub experiment: String,
    pub labels: Vec<u64>,
}

impl SeedSpec {
    pub fn new(base_seed: u64, experiment: impl Into<String>) -> Self {
        Self {
            base_seed,
            experiment: experiment.into(),
            labels: Vec::new(),
        }
    }

    /// A copy of this spec with one more label appended.
    pub fn child(&self, label: u64) -> Self {
        let mut next = self.clone();
        next.labels.push(label);
        next
    }

    pub fn key(&self) -> u64 {
        let mut state = splitmix64(self.base_seed ^ fnv1a(self.experiment.as_bytes()));
        for (position, &label) in self.labels.iter().enumerate() {
            let salt = label.wrapping_add(GOLDEN.wrapping_mul(position as u64 + 1));
            state = splitmix64(state ^ splitmix64(salt));
        }
        state
    }

    pub fn stream(&self) -> Stream {
        derive_stream(self)
    }
}

pub fn derive_stream(seed: &SeedSpec) -> Stream {
    ChaCha8Rng::seed_from_u64(seed.key())
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}
