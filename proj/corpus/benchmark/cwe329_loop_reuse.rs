use aes_gcm::aead::{Aead, AeadCore, KeyInit, OsRng};
use aes_gcm::Aes256Gcm;

pub fn seal_records(records: &[Vec<u8>]) -> Result<Vec<Vec<u8>>, aes_gcm::Error> {
    let key = Aes256Gcm::generate_key(&mut OsRng);
    let cipher = Aes256Gcm::new(&key);
    let nonce = Aes256Gcm::generate_nonce(&mut OsRng);
    let mut sealed = Vec::with_capacity(records.len());
    let mut i = 0;
    while i < records.len() {
        sealed.push(cipher.encrypt(&nonce, records[i].as_slice())?);
        i += 1;
    }
    Ok(sealed)
}
