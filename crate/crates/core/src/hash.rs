//! Content hashing helpers shared by the cache, dedup, and synthetic backends.

use sha2::{Digest, Sha256};

/// Hex-encoded SHA-256 of a byte string.
pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Hex-encoded SHA-256 over a list of fields, length-prefixed so that
/// field boundaries cannot collide.
pub fn sha256_fields(fields: &[&str]) -> String {
    let mut hasher = Sha256::new();
    for field in fields {
        hasher.update((field.len() as u64).to_le_bytes());
        hasher.update(field.as_bytes());
    }
    hex::encode(hasher.finalize())
}

/// Deterministic uniform draw in [0, 1) from a seed and a list of fields.
pub fn unit_draw(seed: u64, fields: &[&str]) -> f64 {
    (draw_u64(seed, fields) >> 11) as f64 / (1u64 << 53) as f64
}

/// Deterministic u64 from a seed and a list of fields.
pub fn draw_u64(seed: u64, fields: &[&str]) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(seed.to_le_bytes());
    for field in fields {
        hasher.update((field.len() as u64).to_le_bytes());
        hasher.update(field.as_bytes());
    }
    let digest = hasher.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("digest is 32 bytes"))
}
