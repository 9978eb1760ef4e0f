//! Deterministic random streams.
//!
//! Every stream is a ChaCha8 keystream. The 256-bit key is built from the
//! experiment seed and the run index, the 64-bit stream id is the agent index,
//! and the draw counter is the keystream word position. The same
//! `(seed, run_index, agent_index)` triple therefore yields the same sequence
//! on every platform, and distinct triples never share keystream.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    /// Main stream of one run: run index 0, agent index 0.
    pub fn new(seed: u64) -> Self {
        Self::derive(seed, 0, 0)
    }

    pub fn derive(seed: u64, run_index: u64, agent_index: u64) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        key[8..16].copy_from_slice(&run_index.to_le_bytes());
        // Fixed domain tag so keys never collide with an all-zero user key.
        key[16..24].copy_from_slice(b"swarmbnc");
        let mut inner = ChaCha8Rng::from_seed(key);
        inner.set_stream(agent_index);
        Self { seed, inner }
    }

    /// Independent sub-stream for one agent of the same run.
    pub fn substream(&self, run_index: u64, agent_index: u64) -> Self {
        Self::derive(self.seed, run_index, agent_index)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of 32-bit words consumed so far.
    pub fn draw_counter(&self) -> u128 {
        self.inner.get_word_pos()
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    /// Uniform on `[lo, hi)`.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    pub fn gaussian(&mut self) -> f64 {
        StandardNormal.sample(&mut self.inner)
    }

    /// Uniform index in `0..n`. `n` must be positive.
    pub fn index(&mut self, n: usize) -> usize {
        self.inner.random_range(0..n)
    }

    pub fn uniform_vec(&mut self, d: usize) -> Vec<f64> {
        (0..d).map(|_| self.uniform()).collect()
    }

    pub fn gaussian_vec(&mut self, d: usize) -> Vec<f64> {
        (0..d).map(|_| self.gaussian()).collect()
    }

    /// Fisher-Yates permutation of `0..n`.
    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = self.index(i + 1);
            perm.swap(i, j);
        }
        perm
    }

    /// `k` distinct indices from `0..n`, none equal to `exclude`, drawn by
    /// random permutation.
    pub fn distinct_excluding(&mut self, n: usize, exclude: usize, k: usize) -> Vec<usize> {
        debug_assert!(n > k);
        self.permutation(n)
            .into_iter()
            .filter(|&j| j != exclude)
            .take(k)
            .collect()
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}
