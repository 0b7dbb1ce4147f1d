"""Rust sample bodies used to author generation and diagnostic fixtures.

Each variant is written so that clippy reports a single class of error (or
none); capture_*.py record the real compiler output for them.
"""

AES_HEADER = "use aes_gcm::aead::{Aead, AeadCore, KeyInit, OsRng};\nuse aes_gcm::{Aes256Gcm, Key, Nonce};\n"
CHACHA_HEADER = "use chacha20poly1305::aead::{Aead, AeadCore, KeyInit, OsRng};\nuse chacha20poly1305::{ChaCha20Poly1305, Key, Nonce};\n"

VARIANTS = {
    # ---- compiling ----
    "aes_good": (True, None, AES_HEADER + r'''
fn encrypt(cipher: &Aes256Gcm, plaintext: &[u8]) -> Result<(Vec<u8>, Vec<u8>), aes_gcm::Error> {
    let nonce = Aes256Gcm::generate_nonce(&mut OsRng);
    let ciphertext = cipher.encrypt(&nonce, plaintext)?;
    Ok((nonce.to_vec(), ciphertext))
}

fn decrypt(cipher: &Aes256Gcm, nonce: &[u8], ciphertext: &[u8]) -> Result<Vec<u8>, aes_gcm::Error> {
    cipher.decrypt(Nonce::from_slice(nonce), ciphertext)
}

fn main() {
    let key = Aes256Gcm::generate_key(OsRng);
    let cipher = Aes256Gcm::new(&key);
    match encrypt(&cipher, b"attack at dawn") {
        Ok((nonce, ct)) => match decrypt(&cipher, &nonce, &ct) {
            Ok(pt) => println!("round trip: {}", String::from_utf8_lossy(&pt)),
            Err(_) => eprintln!("decryption failed"),
        },
        Err(_) => eprintln!("encryption failed"),
    }
}
'''),
    "aes_unwrap": (True, None, AES_HEADER + r'''
fn main() {
    let key = Aes256Gcm::generate_key(OsRng);
    let cipher = Aes256Gcm::new(&key);
    let nonce = Aes256Gcm::generate_nonce(&mut OsRng);
    let ciphertext = cipher.encrypt(&nonce, b"plaintext message".as_ref()).unwrap();
    let plaintext = cipher.decrypt(&nonce, ciphertext.as_ref()).unwrap();
    let _ = Key::<Aes256Gcm>::default();
    assert_eq!(&plaintext, b"plaintext message");
    println!("ok");
}
'''),
    "aes_hardcoded_key": (True, None, AES_HEADER + r'''
fn main() {
    let key = Key::<Aes256Gcm>::from_slice(b"an example very very secret key.");
    let cipher = Aes256Gcm::new(key);
    let nonce = Aes256Gcm::generate_nonce(&mut OsRng);
    let ciphertext = cipher.encrypt(&nonce, b"hello".as_ref()).expect("encrypt");
    let plaintext = cipher.decrypt(&nonce, ciphertext.as_ref()).expect("decrypt");
    println!("{}", String::from_utf8_lossy(&plaintext));
}
'''),
    # ---- failing: one class each ----
    "aes_hallucinated_api": (False, "APIHallucination", AES_HEADER + r'''
fn main() {
    let key = Aes256Gcm::generate_key(OsRng);
    let cipher = Aes256Gcm::new(&key);
    let nonce = Nonce::generate(&mut OsRng);
    match cipher.encrypt(&nonce, b"secret data".as_ref()) {
        Ok(ct) => println!("{} bytes", ct.len()),
        Err(_) => eprintln!("encryption failed"),
    }
    let _ = Key::<Aes256Gcm>::default();
}
'''),
    "aes_trait_error": (False, "TraitError", AES_HEADER + r'''
use std::error::Error;

fn main() -> Result<(), Box<dyn Error>> {
    let key = Aes256Gcm::generate_key(OsRng);
    let cipher = Aes256Gcm::new(&key);
    let nonce = Aes256Gcm::generate_nonce(&mut OsRng);
    let ciphertext = cipher.encrypt(&nonce, b"secret data".as_ref())?;
    let plaintext = cipher.decrypt(&nonce, ciphertext.as_ref())?;
    let _ = (Key::<Aes256Gcm>::default());
    println!("{}", String::from_utf8_lossy(&plaintext));
    Ok(())
}
'''),
    "aes_unresolved_import": (False, "UnresolvedImport", "use aes_gcm::aead::{Aead, AeadCore, KeyInit, NewAead, OsRng};\nuse aes_gcm::{Aes256Gcm, Key, Nonce};\n" + r'''
fn main() {
    let key = Aes256Gcm::generate_key(OsRng);
    let cipher = Aes256Gcm::new(&key);
    let nonce = Aes256Gcm::generate_nonce(&mut OsRng);
    if let Ok(ct) = cipher.encrypt(&nonce, b"secret data".as_ref()) {
        println!("{} bytes", ct.len());
    }
    let _ = (Key::<Aes256Gcm>::default());
}
'''),
    "aes_type_error": (False, "TypeError", AES_HEADER + r'''
fn main() {
    let key = Aes256Gcm::generate_key(OsRng);
    let cipher = Aes256Gcm::new(&key);
    let nonce: [u8; 12] = Aes256Gcm::generate_nonce(&mut OsRng);
    if let Ok(ct) = cipher.encrypt(Nonce::from_slice(&nonce), b"secret data".as_ref()) {
        println!("{} bytes", ct.len());
    }
    let _ = Key::<Aes256Gcm>::default();
}
'''),
    # ---- ChaCha20-Poly1305 ----
    "chacha_good": (True, None, CHACHA_HEADER + r'''
fn seal(cipher: &ChaCha20Poly1305, msg: &[u8]) -> Result<(Nonce, Vec<u8>), chacha20poly1305::Error> {
    let nonce = ChaCha20Poly1305::generate_nonce(&mut OsRng);
    let ct = cipher.encrypt(&nonce, msg)?;
    Ok((nonce, ct))
}

fn main() {
    let key: Key = ChaCha20Poly1305::generate_key(&mut OsRng);
    let cipher = ChaCha20Poly1305::new(&key);
    match seal(&cipher, b"hello chacha") {
        Ok((nonce, ct)) => match cipher.decrypt(&nonce, ct.as_ref()) {
            Ok(pt) => println!("{}", String::from_utf8_lossy(&pt)),
            Err(_) => eprintln!("open failed"),
        },
        Err(_) => eprintln!("seal failed"),
    }
}
'''),
    "chacha_unwrap": (True, None, CHACHA_HEADER + r'''
fn main() {
    let key: Key = ChaCha20Poly1305::generate_key(&mut OsRng);
    let cipher = ChaCha20Poly1305::new(&key);
    let nonce: Nonce = ChaCha20Poly1305::generate_nonce(&mut OsRng);
    let ct = cipher.encrypt(&nonce, b"hello chacha".as_ref()).unwrap();
    let pt = cipher.decrypt(&nonce, ct.as_ref()).unwrap();
    println!("{}", String::from_utf8_lossy(&pt));
}
'''),
    "chacha_multi_call": (True, None, CHACHA_HEADER + r'''
use chacha20poly1305::aead::Payload;

fn main() {
    let key: Key = ChaCha20Poly1305::generate_key(&mut OsRng);
    let cipher = ChaCha20Poly1305::new(&key);
    let nonce: Nonce = ChaCha20Poly1305::generate_nonce(&mut OsRng);
    let plaintext = b"first message";
    let ciphertext = cipher.encrypt(&nonce, plaintext.as_ref())
        .expect("encryption failed!");
    let aad = b"header";
    let ciphertext_with_aad = cipher
        .encrypt(&nonce, Payload { msg: plaintext, aad })
        .expect("encryption with AAD failed");
    println!("{} {}", ciphertext.len(), ciphertext_with_aad.len());
}
'''),
    "chacha_hallucinated_api": (False, "APIHallucination", CHACHA_HEADER + r'''
fn main() {
    let key: Key = ChaCha20Poly1305::generate_key(&mut OsRng);
    let cipher = ChaCha20Poly1305::new(&key);
    let nonce: Nonce = ChaCha20Poly1305::generate_nonce(&mut OsRng);
    match cipher.encrypt_with_nonce(&nonce, b"hello chacha") {
        Ok(ct) => println!("{} bytes", ct.len()),
        Err(_) => eprintln!("seal failed"),
    }
}
'''),
    "chacha_trait_error": (False, "TraitError", CHACHA_HEADER + r'''
fn main() {
    let key: Key = ChaCha20Poly1305::generate_key(&mut OsRng);
    let cipher = ChaCha20Poly1305::new(&key);
    let nonce: Nonce = ChaCha20Poly1305::generate_nonce(&mut OsRng);
    let message = String::from("hello chacha");
    match cipher.encrypt(&nonce, message) {
        Ok(ct) => println!("{} bytes", ct.len()),
        Err(_) => eprintln!("seal failed"),
    }
}
'''),
    "chacha_unresolved_import": (False, "UnresolvedImport", "use chacha20poly1305::aead::{Aead, AeadCore, KeyInit, OsRng};\nuse chacha20poly1305::{ChaCha20Poly1305, ChaChaKey, Nonce};\n" + r'''
fn main() {
    let key = ChaCha20Poly1305::generate_key(&mut OsRng);
    let cipher = ChaCha20Poly1305::new(&key);
    let nonce: Nonce = ChaCha20Poly1305::generate_nonce(&mut OsRng);
    if let Ok(ct) = cipher.encrypt(&nonce, b"hello chacha".as_ref()) {
        println!("{} bytes", ct.len());
    }
}
'''),
    "chacha_type_error": (False, "TypeError", CHACHA_HEADER + r'''
fn main() {
    let key: Key = ChaCha20Poly1305::generate_key(&mut OsRng);
    let cipher = ChaCha20Poly1305::new(&key);
    let nonce: Nonce = ChaCha20Poly1305::generate_nonce(&mut OsRng);
    let ciphertext: String = cipher.encrypt(&nonce, b"hello chacha".as_ref()).unwrap_or_default();
    println!("{}", ciphertext);
}
'''),
}

# Extra snippets for the diagnostics fixture set (three or more per class,
# different codes where the class has several).
DIAGNOSTIC_EXTRAS = {
    "api_new_from_key": ("APIHallucination", AES_HEADER + r'''
fn main() {
    let key = Aes256Gcm::generate_key(OsRng);
    let cipher = Aes256Gcm::new_from_key(&key);
    let nonce = Aes256Gcm::generate_nonce(&mut OsRng);
    let _ = (cipher, nonce, Key::<Aes256Gcm>::default());
}
'''),
    "import_aead_stream": ("UnresolvedImport", "use aes_gcm::aead::stream::EncryptorBE32;\n" + AES_HEADER + r'''
fn main() {
    let key = Aes256Gcm::generate_key(OsRng);
    let cipher = Aes256Gcm::new(&key);
    let nonce = Aes256Gcm::generate_nonce(&mut OsRng);
    let _ = (cipher, nonce, Key::<Aes256Gcm>::default());
}
'''),
    "trait_display_key": ("TraitError", AES_HEADER + r'''
fn main() {
    let key = Aes256Gcm::generate_key(OsRng);
    println!("key = {}", key);
    let cipher = Aes256Gcm::new(&key);
    let nonce = Aes256Gcm::generate_nonce(&mut OsRng);
    let _ = (cipher, nonce, Key::<Aes256Gcm>::default());
}
'''),
    "type_key_by_value": ("TypeError", AES_HEADER + r'''
fn main() {
    let key_bytes = [7u8; 32];
    let cipher = Aes256Gcm::new(key_bytes);
    let nonce = Aes256Gcm::generate_nonce(&mut OsRng);
    let _ = (cipher, nonce, Key::<Aes256Gcm>::default());
}
'''),
}
