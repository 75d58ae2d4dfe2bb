use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Deterministic uniform stream for one `(seed, cell, replication)` triple.
///
/// The seed and cell index form the ChaCha key and the replication index
/// selects the stream, so distinct triples never share keystream.
#[derive(Debug, Clone)]
pub struct RngStream {
    inner: ChaCha8Rng,
}

pub fn rng_stream(seed: u64, cell_index: u64, replication: u64) -> RngStream {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&cell_index.to_le_bytes());
    let mut inner = ChaCha8Rng::from_seed(key);
    inner.set_stream(replication);
    RngStream { inner }
}

impl RngStream {
    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform on the open interval (0, 1) with 53-bit resolution.
    pub fn next_open01(&mut self) -> f64 {
        ((self.inner.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }
}
