use chacha20poly1305::aead::{Aead, AeadCore, KeyInit, OsRng, Payload};
use chacha20poly1305::ChaCha20Poly1305;

pub fn seal_pair(header: &[u8], body: &[u8]) -> Result<(Vec<u8>, Vec<u8>), chacha20poly1305::Error> {
    let key = ChaCha20Poly1305::generate_key(&mut OsRng);
    let cipher = ChaCha20Poly1305::new(&key);
    let nonce = ChaCha20Poly1305::generate_nonce(&mut OsRng);
    let sealed_header = cipher.encrypt(&nonce, header)?;
    let sealed_body = cipher.encrypt(&nonce, Payload { msg: body, aad: header })?;
    Ok((sealed_header, sealed_body))
}
