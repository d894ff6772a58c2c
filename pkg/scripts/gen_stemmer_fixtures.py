"""Generate the frozen stemmer-conformance fixtures.

The word list is harvested deterministically from the Python standard
library sources shipped with the interpreter, then frozen into
tests/fixtures/vocabulary.txt. Porter and Snowball expectations come from
the reference implementations under examples/ (independent oracles); the
Lancaster fixture is a frozen regression snapshot of this package's
implementation, since no third-party Lancaster oracle is available
offline (divergences from other published rule tables are documented in
the test that consumes it).

Run from the repository root: python3 scripts/gen_stemmer_fixtures.py
"""

import pathlib
import re
import sys
import sysconfig

ROOT = pathlib.Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "tests" / "fixtures"
sys.path.insert(0, str(ROOT / "scripts"))
sys.path.insert(0, str(ROOT / "src"))

from oracle_stemmers import load_reference_porter, load_reference_snowball  # noqa: E402
from ontomatch import _kernels  # noqa: E402

EXTRA_WORDS = [
    # domain vocabulary exercised by the toolkit's own tests
    "reviews", "reviewing", "reviewed", "review", "steering", "committee",
    "members", "member", "running", "run", "conference", "conferences",
    "papers", "paper", "authors", "author", "sessions", "acceptance",
    "accepted", "organization", "participants", "maximum", "presumably",
    "provision", "friendship", "agreed", "feed", "sky", "dying", "news",
]


def build_vocabulary(limit=10000):
    words = set(EXTRA_WORDS)
    word_re = re.compile(r"[a-z]+")
    stdlib = pathlib.Path(sysconfig.get_paths()["stdlib"])
    for path in sorted(stdlib.glob("*.py")):
        try:
            text = path.read_text(errors="ignore").lower()
        except OSError:
            continue
        words.update(w for w in word_re.findall(text) if 3 <= len(w) <= 24)
        if len(words) >= limit * 2:
            break
    return sorted(words)[:limit]


def main():
    FIXTURES.mkdir(parents=True, exist_ok=True)
    vocab_path = FIXTURES / "vocabulary.txt"
    if vocab_path.exists():
        vocabulary = vocab_path.read_text(encoding="utf-8").split()
    else:
        vocabulary = build_vocabulary()
        vocab_path.write_text("".join(w + "\n" for w in vocabulary), encoding="utf-8")
    porter = load_reference_porter()
    snowball = load_reference_snowball()
    lancaster = _kernels.lancaster_stem
    for name, stemmer in (("porter", porter), ("snowball", snowball), ("lancaster", lancaster)):
        out = FIXTURES / f"stemmer_{name}.txt"
        out.write_text(
            "".join(f"{w}\t{stemmer(w)}\n" for w in vocabulary), encoding="utf-8"
        )
        print(f"wrote {out} ({len(vocabulary)} entries)")


if __name__ == "__main__":
    main()
