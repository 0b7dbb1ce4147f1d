use aes_gcm::aead::{Aead, AeadCore, KeyInit, OsRng};
use aes_gcm::{Aes256Gcm, Nonce};

pub fn seal(msg: &[u8]) -> Result<Vec<u8>, aes_gcm::Error> {
    let key = Aes256Gcm::generate_key(&mut OsRng);
    let cipher = Aes256Gcm::new(&key);
    // IV copied out of a string literal into a heap buffer.
    let iv: Vec<u8> = "fixed-iv-123".as_bytes().to_vec();
    cipher.encrypt(Nonce::from_slice(&iv), msg)
}
