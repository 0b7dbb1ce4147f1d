use chacha20poly1305::aead::{Aead, KeyInit};
use chacha20poly1305::{ChaCha20Poly1305, Nonce};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

pub fn seal(msg: &[u8]) -> Result<Vec<u8>, chacha20poly1305::Error> {
    let mut rng = ChaCha20Rng::from_seed([7u8; 32]);
    let mut key_bytes = [0u8; 32];
    rng.fill_bytes(&mut key_bytes);
    let cipher = ChaCha20Poly1305::new_from_slice(&key_bytes).map_err(|_| chacha20poly1305::Error)?;
    let mut nonce_bytes = [0u8; 12];
    rng.fill_bytes(&mut nonce_bytes);
    cipher.encrypt(Nonce::from_slice(&nonce_bytes), msg)
}
