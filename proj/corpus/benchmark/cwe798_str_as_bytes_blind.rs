use chacha20poly1305::aead::{Aead, AeadCore, KeyInit, OsRng};
use chacha20poly1305::{ChaCha20Poly1305, Key};

pub fn seal(msg: &[u8]) -> Result<Vec<u8>, chacha20poly1305::Error> {
    let passphrase: &str = "correct horse battery staple 123";
    let cipher = ChaCha20Poly1305::new(Key::from_slice(passphrase.as_bytes()));
    let nonce = ChaCha20Poly1305::generate_nonce(&mut OsRng);
    cipher.encrypt(&nonce, msg)
}
