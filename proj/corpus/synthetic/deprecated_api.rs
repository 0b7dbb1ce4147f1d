use aes_gcm::aead::{Aead, NewAead};
use aes_gcm::{Aes256Gcm, Key, Nonce};
use rand::rngs::OsRng;
use rand::RngCore;

fn main() -> Result<(), aes_gcm::Error> {
    let mut key = [0u8; 32];
    OsRng.fill_bytes(&mut key);
    let mut nonce = [0u8; 12];
    OsRng.fill_bytes(&mut nonce);
    let cipher = Aes256Gcm::new(Key::from_slice(&key));
    let ct = cipher.encrypt(Nonce::from_slice(&nonce), b"legacy".as_ref())?;
    println!("{}", ct.len());
    Ok(())
}
