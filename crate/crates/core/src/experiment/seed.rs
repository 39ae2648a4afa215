use serde::{Deserialize, Serialize};

use crate::generation::RngSeed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Generate,
    Randomize,
    Attack,
}

impl Stage {
    fn code(self) -> u64 {
        match self {
            Stage::Generate => 1,
            Stage::Randomize => 2,
            Stage::Attack => 3,
        }
    }
}

/// SplitMix64 output function (Steele, Lea, Flood 2014).
#[inline]
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for one stage of one cell. Each coordinate is folded in with its
/// own odd multiplier and a full SplitMix64 round, so the result depends on
/// nothing but the four inputs.
pub fn derive_seed(base: u64, gamma_index: usize, realization: usize, stage: Stage) -> RngSeed {
    let mut h = splitmix64(base);
    h = splitmix64(h ^ (gamma_index as u64 + 1).wrapping_mul(0xd6e8_feb8_6659_fd93));
    h = splitmix64(h ^ (realization as u64 + 1).wrapping_mul(0xa076_1d64_78bd_642f));
    h = splitmix64(h ^ stage.code().wrapping_mul(0xe703_7ed1_a0b4_28db));
    RngSeed(h)
}
