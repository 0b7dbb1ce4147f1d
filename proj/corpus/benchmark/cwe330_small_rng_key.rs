use chacha20poly1305::aead::{Aead, KeyInit};
use chacha20poly1305::{ChaCha20Poly1305, Key, Nonce};
use rand::rngs::SmallRng;
use rand::{RngCore, SeedableRng};

pub fn seal(msg: &[u8], nonce_bytes: &[u8; 12]) -> Result<Vec<u8>, chacha20poly1305::Error> {
    let mut rng = SmallRng::from_entropy();
    let mut key = [0u8; 32];
    rng.fill_bytes(&mut key);
    let cipher = ChaCha20Poly1305::new(Key::from_slice(&key));
    cipher.encrypt(Nonce::from_slice(nonce_bytes), msg)
}
