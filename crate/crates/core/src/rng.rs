//! Counter-based random numbers.
//!
//! Every value is a pure function of `(seed, counter)`, so a sample stream can
//! be split across any number of threads without changing a single draw. The
//! generator is SplitMix64 evaluated at an explicit position of its Weyl
//! sequence.

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 output finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CounterRng {
    key: u64,
}

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        Self {
            key: mix64(seed ^ GOLDEN_GAMMA),
        }
    }

    pub fn u64_at(&self, counter: u64) -> u64 {
        mix64(
            self.key
                .wrapping_add(counter.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)),
        )
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn f64_at(&self, counter: u64) -> f64 {
        (self.u64_at(counter) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// The `index`-th point of a stream of uniform points in the unit cube.
    pub fn unit_cube(&self, index: u64) -> [f64; 3] {
        let c = index.wrapping_mul(3);
        [self.f64_at(c), self.f64_at(c + 1), self.f64_at(c + 2)]
    }
}
