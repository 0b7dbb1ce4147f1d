use aes_gcm::aead::{Aead, KeyInit};
use aes_gcm::{Aes256Gcm, Key, Nonce};
use rand::rngs::StdRng;
use rand::{RngCore, SeedableRng};

const SEED: u64 = 0x5eed;

pub fn seal(msg: &[u8]) -> Result<(Vec<u8>, [u8; 12]), aes_gcm::Error> {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut key = [0u8; 32];
    let mut iv = [0u8; 12];
    rng.fill_bytes(&mut key);
    rng.fill_bytes(&mut iv);
    let cipher = Aes256Gcm::new(Key::<Aes256Gcm>::from_slice(&key));
    let ct = cipher.encrypt(Nonce::from_slice(&iv), msg)?;
    Ok((ct, iv))
}
