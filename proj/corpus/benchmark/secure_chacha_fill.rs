use chacha20poly1305::aead::{Aead, KeyInit};
use chacha20poly1305::{ChaCha20Poly1305, Key, Nonce};
use rand::rngs::OsRng;
use rand::RngCore;

pub fn seal_all(msgs: &[&[u8]]) -> Result<Vec<Vec<u8>>, chacha20poly1305::Error> {
    let mut key = [0u8; 32];
    OsRng.fill_bytes(&mut key);
    let cipher = ChaCha20Poly1305::new(Key::from_slice(&key));
    let mut out = Vec::new();
    for msg in msgs {
        let mut nonce = [0u8; 12];
        OsRng.fill_bytes(&mut nonce);
        let mut sealed = nonce.to_vec();
        sealed.extend(cipher.encrypt(Nonce::from_slice(&nonce), *msg)?);
        out.push(sealed);
    }
    Ok(out)
}
