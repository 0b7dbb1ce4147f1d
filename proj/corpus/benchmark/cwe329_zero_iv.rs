use chacha20poly1305::aead::{Aead, KeyInit, OsRng};
use chacha20poly1305::ChaCha20Poly1305;

pub fn seal(msg: &[u8]) -> Result<Vec<u8>, chacha20poly1305::Error> {
    let key = ChaCha20Poly1305::generate_key(&mut OsRng);
    let cipher = ChaCha20Poly1305::new(&key);
    let iv = [0u8; 12];
    cipher.encrypt(&iv.into(), msg)
}
