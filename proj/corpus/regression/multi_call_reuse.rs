let nonce = ChaCha20Poly1305::generate_nonce(&mut OsRng);
let ciphertext = cipher
    .encrypt(&nonce, plaintext.as_ref())
    .expect("encryption failed!");

// later in the program
let ciphertext_with_aad = cipher
    .encrypt(&nonce, chacha20poly1305::aead::Payload {
        msg: plaintext,
        aad: associated_data,
    })
    .expect("encryption with AAD failed");
