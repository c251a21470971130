//! Stego-key derivation and deterministic keystreams.
//!
//! The key (a password, treated as raw bytes) is hashed with FNV-1a 64 and
//! the digest drives everything downstream: the arithmetic-progression
//! parameters that place static payload pixels, and three xorshift64*
//! keystreams that XOR-mask the header, the static payload, and the dynamic
//! payload. All derivations are pure functions of the key bytes so any two
//! implementations agree bit for bit. This is obfuscation keyed by a
//! password, not encryption.

use thiserror::Error;

/// Start of the arithmetic progression when no key is supplied.
pub const DEFAULT_START_I: u64 = 5;
/// Progression step when no key is supplied.
pub const DEFAULT_STEP_D: u64 = 3;

const FNV_OFFSET_BASIS: u64 = 0xcbf29ce484222325;
const FNV_PRIME: u64 = 0x100000001b3;

const HEADER_SEED_XOR: u64 = 0x5851F42D4C957F2D;
const DYNAMIC_SEED_XOR: u64 = 0xA5A5A5A5A5A5A5A5;
const ZERO_SEED_REPLACEMENT: u64 = 0x9E3779B97F4A7C15;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KeyError {
    #[error("keystream seed must be nonzero")]
    SeedZero,
}

/// Everything derived from one stego-key: the key digest, the
/// arithmetic-progression parameters, and the three keystream seeds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyMaterial {
    pub digest: u64,
    /// 1-based initial position in the static pixel stream.
    pub start_i: u64,
    /// Distance between consecutive static payload pixels.
    pub step_d: u64,
    pub header_seed: u64,
    pub static_seed: u64,
    pub dynamic_seed: u64,
}

impl KeyMaterial {
    pub fn header_stream(&self) -> Keystream {
        Keystream::new(self.header_seed).expect("seed invariant")
    }

    pub fn static_stream(&self) -> Keystream {
        Keystream::new(self.static_seed).expect("seed invariant")
    }

    pub fn dynamic_stream(&self) -> Keystream {
        Keystream::new(self.dynamic_seed).expect("seed invariant")
    }
}

/// FNV-1a 64-bit hash of arbitrary bytes. Empty input returns the offset basis.
pub fn hash_key(key: &[u8]) -> u64 {
    let mut h = FNV_OFFSET_BASIS;
    for &b in key {
        h ^= b as u64;
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

fn nonzero(seed: u64) -> u64 {
    if seed == 0 {
        ZERO_SEED_REPLACEMENT
    } else {
        seed
    }
}

/// Derive the full key material from an optional key.
///
/// Without a key the progression falls back to the fixed defaults
/// (`start_i = 5`, `step_d = 3`) and the seeds are derived from the hash of
/// the empty byte string, so keyless embed and extract still agree. With a
/// key, `start_i` lands in `1..=64` and `step_d` in `1..=8`.
pub fn derive_key_material(key: Option<&[u8]>) -> KeyMaterial {
    let (h, start_i, step_d) = match key {
        None => (hash_key(&[]), DEFAULT_START_I, DEFAULT_STEP_D),
        Some(bytes) => {
            let h = hash_key(bytes);
            (h, 1 + (h % 64), 1 + ((h >> 8) % 8))
        }
    };
    KeyMaterial {
        digest: h,
        start_i,
        step_d,
        header_seed: nonzero(h ^ HEADER_SEED_XOR),
        static_seed: nonzero(h),
        dynamic_seed: nonzero(h ^ DYNAMIC_SEED_XOR),
    }
}

/// xorshift64* byte generator. Each step scrambles the 64-bit state and
/// emits the top byte of `state * 0x2545F4914F6CDD1D`.
#[derive(Debug, Clone)]
pub struct Keystream {
    state: u64,
}

impl Keystream {
    pub fn new(seed: u64) -> Result<Self, KeyError> {
        if seed == 0 {
            return Err(KeyError::SeedZero);
        }
        Ok(Keystream { state: seed })
    }

    pub fn next_byte(&mut self) -> u8 {
        let mut s = self.state;
        s ^= s >> 12;
        s ^= s << 25;
        s ^= s >> 27;
        self.state = s;
        (s.wrapping_mul(0x2545F4914F6CDD1D) >> 56) as u8
    }

    /// XOR `data` in place with the next `data.len()` stream bytes.
    pub fn mask(&mut self, data: &mut [u8]) {
        for b in data {
            *b ^= self.next_byte();
        }
    }

    /// Advance the stream by `n` bytes without producing output.
    pub fn skip(&mut self, n: usize) {
        for _ in 0..n {
            self.next_byte();
        }
    }
}

impl Iterator for Keystream {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        Some(self.next_byte())
    }
}

/// First `n` bytes of the keystream for `seed`.
pub fn keystream(seed: u64, n: usize) -> Result<Vec<u8>, KeyError> {
    let mut ks = Keystream::new(seed)?;
    Ok((0..n).map(|_| ks.next_byte()).collect())
}
