let mut nonce = [0u8; 12];
OsRng.fill_bytes(&mut nonce);
cipher.encrypt(Nonce::from_slice(&nonce), pt)?;
