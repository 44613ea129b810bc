//! Seeded 64-bit generator used by every randomized experiment.
//!
//! The generator is SplitMix64:
//!
//! ```text
//! state  = state + 0x9E3779B97F4A7C15            (wrapping)
//! z      = state
//! z      = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9   (wrapping)
//! z      = (z ^ (z >> 27)) * 0x94D049BB133111EB   (wrapping)
//! output = z ^ (z >> 31)
//! ```
//!
//! Uniform integers in `[0, m)` use rejection: draw `x`, reject while
//! `x >= 2^64 - (2^64 mod m)`, return `x mod m`. Shuffles are Fisher-Yates
//! from the last index down. Trial `t` of a run seeded with `s` uses the
//! stream seeded with `mix(s ^ mix(t + 1 + 0x9E3779B97F4A7C15))` (wrapping),
//! where `mix` is the two multiply-xorshift rounds and final xorshift above.

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Independent stream for one trial of a batch.
    pub fn for_trial(seed: u64, trial: u64) -> Self {
        SplitMix64::new(mix(seed ^ mix(trial.wrapping_add(1).wrapping_add(GAMMA))))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        mix(self.state)
    }

    /// Uniform in `[0, m)`.
    pub fn below(&mut self, m: u64) -> u64 {
        assert!(m > 0);
        let zone = u64::MAX - (u64::MAX % m + 1) % m;
        loop {
            let x = self.next_u64();
            if x <= zone {
                return x % m;
            }
        }
    }

    /// Uniform in `[lo, hi]`.
    pub fn range_inclusive(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below((hi - lo + 1) as u64) as usize
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}
