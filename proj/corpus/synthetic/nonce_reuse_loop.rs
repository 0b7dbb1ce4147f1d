use aes_gcm::aead::{Aead, AeadCore, KeyInit, OsRng};
use aes_gcm::Aes256Gcm;

fn encrypt_all(messages: &[&[u8]]) -> Result<Vec<Vec<u8>>, aes_gcm::Error> {
    let key = Aes256Gcm::generate_key(&mut OsRng);
    let cipher = Aes256Gcm::new(&key);
    let nonce = Aes256Gcm::generate_nonce(&mut OsRng);
    let mut out = Vec::new();
    for msg in messages {
        // same nonce for every message
        out.push(cipher.encrypt(&nonce, *msg)?);
    }
    Ok(out)
}

fn main() {
    let msgs: Vec<&[u8]> = vec![b"one", b"two", b"three"];
    match encrypt_all(&msgs) {
        Ok(v) => println!("{} ciphertexts", v.len()),
        Err(e) => eprintln!("error: {e:?}"),
    }
}
