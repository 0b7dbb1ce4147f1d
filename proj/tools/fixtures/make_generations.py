"""Authors the replay generation fixtures and their ground-truth manifest.

Writes <out>/<model>/<ALGO>/<strategy>/rNN.md for every cell of the
3 x 2 x 4 matrix, two replicates each, plus <out>/manifest.json. Response
text follows the shape each prompt strategy tends to produce. Compiler
streams are captured afterwards with `aeadlint experiment run` using
configs/record.json.

    python3 tools/fixtures/make_generations.py fixtures/generations
"""

import argparse
import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent))
from variants import VARIANTS  # noqa: E402

MODELS = ["gpt-4o", "deepseek-coder", "gemini-2.5-pro"]
ALGOS = ["AES_256_GCM", "CHACHA20_POLY1305"]
STRATEGIES = ["zero_shot", "constraint_based", "chain_of_thought", "security_focused"]

NO_FENCE = "no_fence"

# (model, algorithm, strategy) -> variants for r01, r02.
PLAN = {
    ("gpt-4o", "AES_256_GCM", "zero_shot"): ["aes_good", "aes_unwrap"],
    ("gpt-4o", "AES_256_GCM", "constraint_based"): ["aes_unwrap", "aes_type_error"],
    ("gpt-4o", "AES_256_GCM", "chain_of_thought"): ["aes_hallucinated_api", "aes_trait_error"],
    ("gpt-4o", "AES_256_GCM", "security_focused"): ["aes_good", "aes_unresolved_import"],
    ("deepseek-coder", "AES_256_GCM", "zero_shot"): ["aes_unwrap", "aes_hardcoded_key"],
    ("deepseek-coder", "AES_256_GCM", "constraint_based"): ["aes_good", "aes_trait_error"],
    ("deepseek-coder", "AES_256_GCM", "chain_of_thought"): ["aes_type_error", "aes_hallucinated_api"],
    ("deepseek-coder", "AES_256_GCM", "security_focused"): ["aes_unwrap", "aes_unresolved_import"],
    ("gemini-2.5-pro", "AES_256_GCM", "zero_shot"): ["aes_hallucinated_api", "aes_unwrap"],
    ("gemini-2.5-pro", "AES_256_GCM", "constraint_based"): ["aes_unresolved_import", "aes_type_error"],
    ("gemini-2.5-pro", "AES_256_GCM", "chain_of_thought"): ["aes_trait_error", NO_FENCE],
    ("gemini-2.5-pro", "AES_256_GCM", "security_focused"): ["aes_good", "aes_hallucinated_api"],
    ("gpt-4o", "CHACHA20_POLY1305", "zero_shot"): ["chacha_unresolved_import", "chacha_multi_call"],
    ("gpt-4o", "CHACHA20_POLY1305", "constraint_based"): ["chacha_hallucinated_api", "chacha_type_error"],
    ("gpt-4o", "CHACHA20_POLY1305", "chain_of_thought"): ["chacha_trait_error", "chacha_hallucinated_api"],
    ("gpt-4o", "CHACHA20_POLY1305", "security_focused"): ["chacha_unresolved_import", "chacha_type_error"],
    ("deepseek-coder", "CHACHA20_POLY1305", "zero_shot"): ["chacha_hallucinated_api", "chacha_unresolved_import"],
    ("deepseek-coder", "CHACHA20_POLY1305", "constraint_based"): ["chacha_trait_error", "chacha_type_error"],
    ("deepseek-coder", "CHACHA20_POLY1305", "chain_of_thought"): ["chacha_hallucinated_api", "chacha_unresolved_import"],
    ("deepseek-coder", "CHACHA20_POLY1305", "security_focused"): ["chacha_good", "chacha_trait_error"],
    ("gemini-2.5-pro", "CHACHA20_POLY1305", "zero_shot"): ["chacha_good", "chacha_multi_call"],
    ("gemini-2.5-pro", "CHACHA20_POLY1305", "constraint_based"): ["chacha_good", "chacha_hallucinated_api"],
    ("gemini-2.5-pro", "CHACHA20_POLY1305", "chain_of_thought"): ["chacha_type_error", "chacha_unresolved_import"],
    ("gemini-2.5-pro", "CHACHA20_POLY1305", "security_focused"): ["chacha_good", "chacha_unwrap"],
}

CARGO_SNIPPET = {
    "AES_256_GCM": '[dependencies]\naes-gcm = "0.10"\n',
    "CHACHA20_POLY1305": '[dependencies]\nchacha20poly1305 = "0.10"\n',
}
ALGO_LABEL = {"AES_256_GCM": "AES-256-GCM", "CHACHA20_POLY1305": "ChaCha20-Poly1305"}


def render(strategy, algo, code, replicate):
    label = ALGO_LABEL[algo]
    cargo = CARGO_SNIPPET[algo]
    if strategy == "zero_shot":
        return (f"Here is a complete Rust program that encrypts and decrypts a message "
                f"with {label}:\n\n```rust\n{code.strip()}\n```\n\n"
                f"Add the crate to your `Cargo.toml`:\n\n```toml\n{cargo}```\n")
    if strategy == "constraint_based":
        return (f"Requirements covered:\n\n- {label} authenticated encryption\n"
                f"- random key and nonce\n- errors returned instead of panics where possible\n\n"
                f"```rs\n{code.strip()}\n```\n")
    if strategy == "chain_of_thought":
        steps = ("Let me work through this step by step.\n\n"
                 f"1. Choose the crate that implements {label}.\n"
                 "2. Generate a 256-bit key from the operating system RNG.\n"
                 "3. Generate a fresh 96-bit nonce for every message.\n"
                 "4. Encrypt, then decrypt to confirm the round trip.\n\n"
                 "A quick sketch of step 3 is ```rust let nonce = ...; ``` and the "
                 "full program follows.\n\n")
        if replicate % 2 == 0:
            return steps + f"```\n{code.strip()}\n```\n\nThis satisfies every step above.\n"
        return steps + f"```rust\n{code.strip()}\n```\n\nThis satisfies every step above.\n"
    # security_focused
    return (f"```rust\n{code.strip()}\n```\n\n"
            "Security notes:\n\n"
            "- Keys come from `OsRng`; never hardcode them.\n"
            "- A nonce must never repeat under the same key.\n"
            "- Authentication failures surface as errors.\n\n"
            f"```toml\n{cargo}```\n")


NO_FENCE_TEXT = (
    "To encrypt with AES-256-GCM in Rust you would use the aes-gcm crate. First "
    "generate a key with Aes256Gcm::generate_key(OsRng), build the cipher with "
    "Aes256Gcm::new(&key), draw a fresh nonce for each message with "
    "Aes256Gcm::generate_nonce(&mut OsRng), and call cipher.encrypt(&nonce, "
    "plaintext). Decryption mirrors this with cipher.decrypt. Keep the nonce "
    "alongside the ciphertext, since it is needed to decrypt.\n"
)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("out", type=pathlib.Path)
    args = ap.parse_args()
    samples = []
    for (model, algo, strategy), picks in sorted(PLAN.items()):
        assert model in MODELS and algo in ALGOS and strategy in STRATEGIES
        for replicate, variant in enumerate(picks, start=1):
            path = args.out / model / algo / strategy / f"r{replicate:02d}.md"
            path.parent.mkdir(parents=True, exist_ok=True)
            if variant == NO_FENCE:
                path.write_text(NO_FENCE_TEXT)
                compiled, cls, extraction_failure = False, "NoError", True
            else:
                compiled, cls, code = VARIANTS[variant]
                path.write_text(render(strategy, algo, code, replicate))
                cls = cls or "NoError"
                extraction_failure = False
            samples.append({
                "model": model, "algorithm": algo, "strategy": strategy,
                "replicate": replicate, "variant": variant, "compiled": compiled,
                "dominant_class": cls, "extraction_failure": extraction_failure,
            })
    assert len(PLAN) == len(MODELS) * len(ALGOS) * len(STRATEGIES)
    (args.out / "manifest.json").write_text(json.dumps({"samples": samples}, indent=2) + "\n")
    print(f"wrote {len(samples)} responses to {args.out}")


if __name__ == "__main__":
    main()
