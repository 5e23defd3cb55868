//! Deterministic sampling for non-exhaustive searches and checks.
//!
//! A 64-bit multiplicative congruential generator keeps sampled results
//! reproducible across platforms and releases without tying them to the
//! stream of an external RNG crate.

const MULTIPLIER: u64 = 0xd134_2543_de82_ef95;

#[derive(Clone, Debug)]
pub struct Mcg64 {
    state: u64,
}

impl Mcg64 {
    pub fn new(seed: u64) -> Self {
        Mcg64 { state: seed.wrapping_mul(2).wrapping_add(1) }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self.state.wrapping_mul(MULTIPLIER);
        (self.state >> 32) as u32
    }

    /// Uniform-ish index in `0..bound` for `bound <= 2^32`.
    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0 && bound <= 1 << 32);
        (self.next_u32() as u64 * bound) >> 32
    }

    /// Index in `0..bound` for any `bound`, combining two draws.
    pub fn below_u64(&mut self, bound: u64) -> u64 {
        if bound <= 1 << 32 {
            return self.below(bound);
        }
        let wide = ((self.next_u32() as u128) << 32) | self.next_u32() as u128;
        ((wide * bound as u128) >> 64) as u64
    }

    /// An ordered pair `(i, j)` with `i != j`, both below `n >= 2`.
    pub fn pair(&mut self, n: u64) -> (u64, u64) {
        let i = self.below_u64(n);
        loop {
            let j = self.below_u64(n);
            if j != i {
                return (i, j);
            }
        }
    }
}
