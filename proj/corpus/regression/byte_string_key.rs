Key::from_slice(b"an example very very secret key.");
