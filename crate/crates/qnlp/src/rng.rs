//! Deterministic pseudo-random numbers.
//!
//! Everything seeded in this crate (dataset shuffles, parameter
//! initialization, SPSA perturbations, shot sampling) goes through this one
//! generator so that a run is reproducible from its seed alone and can be
//! re-implemented bit-exactly elsewhere. The generator is SplitMix64
//! (Steele, Lea & Flood): a 64-bit additive counter passed through a fixed
//! 64-bit mixing function.

/// SplitMix64 stream.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Derive an independent stream for a named sub-task. Mixes the label
    /// into the seed so `generate`, `init`, `train` and `sample` streams
    /// never overlap even for the same run seed.
    pub fn derive(seed: u64, stream: u64) -> Self {
        let mut r = Self::new(seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        r.next_u64();
        r
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `0..bound`. Plain modulo reduction; the bias is far below
    /// anything observable at the bounds used here and keeps the definition
    /// one line long for re-implementation.
    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        self.next_u64() % bound
    }

    /// Fair `+1.0` / `-1.0` draw.
    pub fn rademacher(&mut self) -> f64 {
        if self.next_u64() & 1 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

/// Stream labels for [`SplitMix64::derive`].
pub mod streams {
    pub const SPLIT: u64 = 1;
    pub const INIT: u64 = 2;
    pub const SPSA: u64 = 3;
    pub const SAMPLE: u64 = 4;
}
