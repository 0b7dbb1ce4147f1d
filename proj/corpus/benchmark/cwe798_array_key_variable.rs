use chacha20poly1305::aead::{Aead, AeadCore, KeyInit, OsRng};
use chacha20poly1305::ChaCha20Poly1305;

pub fn seal(msg: &[u8]) -> Result<Vec<u8>, chacha20poly1305::Error> {
    let key_bytes = [0x13u8; 32];
    let cipher = ChaCha20Poly1305::new_from_slice(&key_bytes).map_err(|_| chacha20poly1305::Error)?;
    let nonce = ChaCha20Poly1305::generate_nonce(&mut OsRng);
    cipher.encrypt(&nonce, msg)
}
