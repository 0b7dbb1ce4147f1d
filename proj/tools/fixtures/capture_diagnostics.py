"""Captures `cargo clippy --message-format=json` streams for the
diagnostics fixture set and writes the hand labels.

Needs a Rust toolchain with network or a warm registry cache.

    python3 tools/fixtures/capture_diagnostics.py fixtures/diagnostics
"""

import argparse
import json
import os
import pathlib
import shutil
import subprocess
import sys
import tempfile

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent))
from variants import DIAGNOSTIC_EXTRAS, VARIANTS  # noqa: E402

FROM_VARIANTS = [
    "aes_hallucinated_api", "chacha_hallucinated_api",
    "aes_unresolved_import", "chacha_unresolved_import",
    "aes_trait_error", "chacha_trait_error",
    "aes_type_error", "chacha_type_error",
]

CARGO_TOML = """[package]
name = "diag_sample"
version = "0.1.0"
edition = "2021"

[dependencies]
aes-gcm = "0.10"
chacha20poly1305 = "0.10"
"""


def find_cargo():
    cargo = shutil.which("cargo")
    if cargo:
        return cargo
    home = os.environ.get("CARGO_HOME", os.path.expanduser("~/.cargo"))
    candidate = pathlib.Path(home) / "bin" / "cargo"
    if candidate.exists():
        return str(candidate)
    sys.exit("cargo not found")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("out", type=pathlib.Path)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    cargo = find_cargo()

    samples = {name: VARIANTS[name][1:] for name in FROM_VARIANTS}
    samples.update(DIAGNOSTIC_EXTRAS)
    labels = {}
    with tempfile.TemporaryDirectory() as tmp:
        crate = pathlib.Path(tmp)
        (crate / "src").mkdir()
        (crate / "Cargo.toml").write_text(CARGO_TOML)
        for name, (label, code) in sorted(samples.items()):
            (crate / "src" / "main.rs").write_text(code)
            proc = subprocess.run(
                [cargo, "clippy", "--quiet", "--message-format=json"],
                cwd=crate, capture_output=True, text=True,
                env=dict(os.environ, CARGO_TERM_COLOR="never"))
            (args.out / f"{name}.jsonl").write_text(proc.stdout)
            labels[name] = label
            print(f"{name}: exit {proc.returncode}")
    (args.out / "labels.json").write_text(json.dumps(labels, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
