//! Deterministic random source.
//!
//! All randomness flows through [`SimRng`], ChaCha with 8 rounds
//! (`rand_chacha::ChaCha8Rng`), a counter-based generator seeded from a
//! single `u64` via `SeedableRng::seed_from_u64`. Same seed, same stream, on
//! every platform for a given build.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub type SimRng = ChaCha8Rng;

/// 64-bit seed for one stochastic stage.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RngSeed(pub u64);

impl RngSeed {
    pub fn rng(self) -> SimRng {
        SimRng::seed_from_u64(self.0)
    }
}
