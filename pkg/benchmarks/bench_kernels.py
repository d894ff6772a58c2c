#!/usr/bin/env python3
"""Compare the compiled text kernels against the pure-Python fallback.

Usage::

    python3 benchmarks/bench_kernels.py [--repeat 5] [--words 20000]

Imports both implementations directly (the compiled module when built, the
pure module always) and times tokenisation, normalisation, and the three
stemmers over a synthetic identifier workload.
"""

from __future__ import annotations

import argparse
import random
import time

from ontomatch import _kernels as pure

try:
    from ontomatch import _kernels_c as compiled
except ImportError:  # pragma: no cover - build without the extension
    compiled = None

WORD_POOL = [
    "review", "reviewing", "reviewed", "paper", "abstract", "member",
    "membership", "steering", "committee", "organization", "running",
    "connection", "classification", "generalization", "acceptance",
    "notification", "gallery", "chromosome", "thesaurus", "proceedings",
]


def make_workload(count: int, seed: int = 13) -> list[str]:
    rng = random.Random(seed)
    styles = [
        lambda ws: "_".join(ws),
        lambda ws: "".join(w.capitalize() for w in ws),
        lambda ws: ws[0] + "".join(w.capitalize() for w in ws[1:]),
        lambda ws: "-".join(ws) + str(rng.randint(0, 99)),
    ]
    return [
        rng.choice(styles)(rng.choices(WORD_POOL, k=rng.randint(1, 4)))
        for _ in range(count)
    ]


def bench(label: str, func, data, repeat: int) -> float:
    timings = []
    for _ in range(repeat):
        start = time.perf_counter()
        for item in data:
            func(item)
        timings.append(time.perf_counter() - start)
    best = min(timings)
    print(f"  {label:<22} {best * 1000:8.1f} ms")
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5, help="best-of repetitions")
    parser.add_argument("--words", type=int, default=20000, help="workload size")
    args = parser.parse_args()

    names = make_workload(args.words)
    tokens = [t for name in names for t in pure.tokenize_text(name)]
    kernels = [("pure", pure)] + ([("compiled", compiled)] if compiled else [])
    timings: dict[str, dict[str, float]] = {}

    for label, module in kernels:
        print(f"{label} ({args.words} names, {len(tokens)} tokens, best of {args.repeat}):")
        timings[label] = {
            "tokenize": bench("tokenize_text", module.tokenize_text, names, args.repeat),
            "normalize": bench("normalize_token", module.normalize_token, tokens, args.repeat),
            "porter": bench("porter_stem", module.porter_stem, tokens, args.repeat),
            "snowball": bench("snowball_stem", module.snowball_stem, tokens, args.repeat),
            "lancaster": bench("lancaster_stem", module.lancaster_stem, tokens, args.repeat),
        }

    if compiled is None:
        print("\ncompiled extension not built; only the fallback was timed")
        return

    mismatched = sum(
        1 for t in tokens
        if pure.porter_stem(t) != compiled.porter_stem(t)
        or pure.snowball_stem(t) != compiled.snowball_stem(t)
        or pure.lancaster_stem(t) != compiled.lancaster_stem(t)
    )
    print(f"\nagreement check: {len(tokens) - mismatched}/{len(tokens)} tokens identical")
    print("speedup (pure / compiled):")
    for key, pure_time in timings["pure"].items():
        print(f"  {key:<22} {pure_time / timings['compiled'][key]:6.2f}x")


if __name__ == "__main__":
    main()
