use aes_gcm::aead::{Aead, KeyInit};
use aes_gcm::{Aes256Gcm, Nonce};

pub fn seal(cipher: &Aes256Gcm, msg: &[u8]) -> Result<Vec<u8>, aes_gcm::Error> {
    let nonce_bytes: [u8; 12] = rand::random();
    let mut out = nonce_bytes.to_vec();
    out.extend(cipher.encrypt(Nonce::from_slice(&nonce_bytes), msg)?);
    Ok(out)
}

pub fn cipher_for(key: &[u8]) -> Option<Aes256Gcm> {
    Aes256Gcm::new_from_slice(key).ok()
}
