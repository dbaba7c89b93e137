//! SplitMix64 streams and the samplers built on them.
//!
//! Every replicate owns one stream seeded by [`derive_seed`], so results do
//! not depend on thread scheduling.

pub const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// The SplitMix64 output mix.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for replicate `run_index` of an experiment.
pub fn derive_seed(master_seed: u64, run_index: u64) -> u64 {
    mix64(master_seed.wrapping_add(run_index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Uniform integer in `[0, k)` by multiply-high. `k` must be positive.
    #[inline]
    pub fn below(&mut self, k: u64) -> u64 {
        debug_assert!(k > 0);
        ((self.next_u64() as u128 * k as u128) >> 64) as u64
    }

    #[inline]
    pub fn below_usize(&mut self, k: usize) -> usize {
        self.below(k as u64) as usize
    }

    /// Uniform integer in `[lo, hi]`.
    pub fn range_inclusive(&mut self, lo: u64, hi: u64) -> u64 {
        lo + self.below(hi - lo + 1)
    }

    /// Uniform real in `(0, 1]` with 53 random bits.
    #[inline]
    pub fn unit_open_closed(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    #[inline]
    pub fn coin(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }

    /// Poisson(1) by Knuth's product-of-uniforms method.
    pub fn poisson1(&mut self) -> u32 {
        let limit = (-1.0f64).exp();
        let mut k = 0;
        let mut product = self.unit_open_closed();
        while product >= limit {
            k += 1;
            product *= self.unit_open_closed();
        }
        k
    }
}
