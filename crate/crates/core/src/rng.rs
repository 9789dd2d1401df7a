//! Seedable random streams and seed derivation.
//!
//! Every stream is a ChaCha8 generator (`rand_chacha::ChaCha8Rng`) seeded
//! from a single `u64`. ChaCha output is specified independently of
//! platform, word size and thread count, so a seed pins the whole sequence.
//! Uniform variates take the top 53 bits of one 64-bit output, giving values
//! in `[0, 1)`.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic random stream with a draw counter.
///
/// The counter tracks 64-bit words taken from the generator, whether through
/// [`RngStream::uniform`] or through the [`RngCore`] impl used by samplers.
#[derive(Debug, Clone)]
pub struct RngStream {
    inner: ChaCha8Rng,
    draws: u64,
}

impl RngStream {
    pub fn from_seed(seed: u64) -> Self {
        RngStream {
            inner: ChaCha8Rng::seed_from_u64(seed),
            draws: 0,
        }
    }

    /// Uniform draw in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
        (self.next_u64() >> 11) as f64 * SCALE
    }

    /// Number of 64-bit words consumed so far.
    pub fn draws(&self) -> u64 {
        self.draws
    }

    /// Uniform index in `0..n` by rejection, so no modulo bias.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0);
        let n = n as u64;
        let zone = u64::MAX - (u64::MAX - n + 1) % n;
        loop {
            let x = self.next_u64();
            if x <= zone {
                return (x % n) as usize;
            }
        }
    }

    /// Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i + 1);
            items.swap(i, j);
        }
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        (self.next_u64() >> 32) as u32
    }

    fn next_u64(&mut self) -> u64 {
        self.draws += 1;
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        for chunk in dest.chunks_mut(8) {
            let bytes = self.next_u64().to_le_bytes();
            chunk.copy_from_slice(&bytes[..chunk.len()]);
        }
    }
}

/// SplitMix64 finalizer: a bijective 64-bit avalanche mix.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

const ENV_TAG: u64 = 0x656e_765f_7374_726d; // "env_strm"
const POLICY_TAG: u64 = 0x706f_6c5f_7374_726d; // "pol_strm"
const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

fn absorb(state: u64, word: u64) -> u64 {
    mix64(state.wrapping_add(GOLDEN) ^ word)
}

/// Seeds for one run: the environment stream and the policy stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RunSeeds {
    pub env: u64,
    pub policy: u64,
}

/// Derives a run's seeds by iterated [`mix64`] absorption:
///
/// ```text
/// env    = A(A(A(mix64(master), ENV_TAG), horizon), run)
/// policy = A(A(A(A(mix64(master), POLICY_TAG), policy), horizon), run)
/// A(s, w) = mix64((s + 0x9e3779b97f4a7c15) ^ w)
/// ```
///
/// The environment seed ignores `policy_index`, so every policy in a
/// (horizon, run) cell sees the same arm randomness. For fixed leading
/// inputs each absorption is a bijection in its word, so distinct run
/// indices always give distinct seeds.
pub fn derive_seeds(
    master: u64,
    policy_index: u64,
    horizon_index: u64,
    run_index: u64,
) -> RunSeeds {
    let root = mix64(master);
    let env = absorb(absorb(absorb(root, ENV_TAG), horizon_index), run_index);
    let mut policy = absorb(
        absorb(
            absorb(absorb(root, POLICY_TAG), policy_index),
            horizon_index,
        ),
        run_index,
    );
    if policy == env {
        policy = mix64(policy ^ POLICY_TAG);
    }
    RunSeeds { env, policy }
}
