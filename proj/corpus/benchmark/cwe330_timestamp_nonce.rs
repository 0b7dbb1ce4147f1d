use aes_gcm::aead::{Aead, KeyInit};
use aes_gcm::{Aes256Gcm, Nonce};
use std::time::{SystemTime, UNIX_EPOCH};

/// Derives the nonce from the wall clock.
fn clock_nonce() -> [u8; 12] {
    let nanos = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_nanos())
        .unwrap_or(0);
    let mut n = [0u8; 12];
    n.copy_from_slice(&nanos.to_le_bytes()[..12]);
    n
}

pub fn seal(cipher: &Aes256Gcm, msg: &[u8]) -> Result<([u8; 12], Vec<u8>), aes_gcm::Error> {
    let n = clock_nonce();
    let ct = cipher.encrypt(Nonce::from_slice(&n), msg)?;
    Ok((n, ct))
}
