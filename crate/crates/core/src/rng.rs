//! Deterministic pseudo-random words for the seeded randomized routines
//! (idempotent splitting, isomorphism testing, sample data generation).
//!
//! SplitMix64: tiny, platform-independent, and good enough for picking
//! random field elements. Every randomized routine takes its generator
//! explicitly, so concurrent tasks can each own one.

#[derive(Clone, Debug)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { state: seed }
    }

    /// Derive an independent stream, e.g. one per subgroup or per task.
    pub fn derive(&self, salt: u64) -> Rng {
        let mut r = Rng::new(self.state ^ salt.wrapping_mul(0x9E3779B97F4A7C15));
        r.next_u64();
        Rng::new(r.next_u64())
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        (self.next_u64() % n as u64) as usize
    }
}

/// Stable mixing of a byte-level fingerprint into a salt, used to derive
/// per-subgroup generator streams independent of call order.
pub fn salt_of(parts: &[usize]) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for &x in parts {
        h ^= x as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}
