use chacha20poly1305::aead::{Aead, AeadCore, KeyInit, OsRng};
use chacha20poly1305::{ChaCha20Poly1305, Key};

pub struct Vault {
    cipher: ChaCha20Poly1305,
}

impl Vault {
    pub fn new() -> Self {
        let master = *b"vault-master-key-do-not-share!!!";
        Vault { cipher: ChaCha20Poly1305::new(Key::from_slice(&master)) }
    }

    pub fn seal(&self, msg: &[u8]) -> Result<Vec<u8>, chacha20poly1305::Error> {
        let nonce = ChaCha20Poly1305::generate_nonce(&mut OsRng);
        self.cipher.encrypt(&nonce, msg)
    }
}
