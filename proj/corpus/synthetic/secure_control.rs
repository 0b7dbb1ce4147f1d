use aes_gcm::aead::{Aead, AeadCore, KeyInit, OsRng};
use aes_gcm::Aes256Gcm;

fn seal(cipher: &Aes256Gcm, msg: &[u8]) -> Result<Vec<u8>, aes_gcm::Error> {
    let nonce = Aes256Gcm::generate_nonce(&mut OsRng);
    let mut out = nonce.to_vec();
    out.extend(cipher.encrypt(&nonce, msg)?);
    Ok(out)
}

fn main() -> Result<(), aes_gcm::Error> {
    let key = Aes256Gcm::generate_key(&mut OsRng);
    let cipher = Aes256Gcm::new(&key);
    for msg in [b"first".as_ref(), b"second".as_ref()] {
        let sealed = seal(&cipher, msg)?;
        println!("{} bytes", sealed.len());
    }
    Ok(())
}
