use aes_gcm::aead::{Aead, KeyInit};
use aes_gcm::{Aes256Gcm, Key, Nonce};
use rand::rngs::SmallRng;
use rand::{RngCore, SeedableRng};

fn main() -> Result<(), aes_gcm::Error> {
    let mut rng = SmallRng::from_entropy();
    let mut key_bytes = [0u8; 32];
    rng.fill_bytes(&mut key_bytes);
    let mut nonce_bytes = [0u8; 12];
    rng.fill_bytes(&mut nonce_bytes);

    let cipher = Aes256Gcm::new(Key::<Aes256Gcm>::from_slice(&key_bytes));
    let ct = cipher.encrypt(Nonce::from_slice(&nonce_bytes), b"hello".as_ref())?;
    println!("{}", ct.len());
    Ok(())
}
