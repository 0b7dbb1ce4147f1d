use aes_gcm::aead::{Aead, AeadCore, KeyInit, OsRng};
use aes_gcm::{Aes256Gcm, Key};

fn main() -> Result<(), aes_gcm::Error> {
    let key = Key::<Aes256Gcm>::from_slice(&[0x42u8; 32]);
    let cipher = Aes256Gcm::new(key);
    let nonce = Aes256Gcm::generate_nonce(&mut OsRng);
    let ciphertext = cipher.encrypt(&nonce, b"attack at dawn".as_ref())?;
    println!("{} bytes", ciphertext.len());
    Ok(())
}
