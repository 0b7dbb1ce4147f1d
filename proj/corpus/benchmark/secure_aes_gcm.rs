use aes_gcm::aead::{Aead, AeadCore, KeyInit, OsRng};
use aes_gcm::Aes256Gcm;

pub struct Sealer {
    cipher: Aes256Gcm,
}

impl Sealer {
    pub fn new() -> Self {
        let key = Aes256Gcm::generate_key(&mut OsRng);
        Sealer { cipher: Aes256Gcm::new(&key) }
    }

    pub fn seal(&self, msg: &[u8]) -> Result<Vec<u8>, aes_gcm::Error> {
        let nonce = Aes256Gcm::generate_nonce(&mut OsRng);
        let mut out = nonce.to_vec();
        out.extend(self.cipher.encrypt(&nonce, msg)?);
        Ok(out)
    }
}
