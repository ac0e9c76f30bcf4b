"""Benchmark the compiled kernels against the pure-Python fallback.

Runs the three hot kernels (Porter stemming, lexicon scoring, NB
log-posterior accumulation) over an identical synthetic workload on both
backends, checks bit-identical agreement, and reports the speedup.

    python3 benchmarks/bench_kernels.py [--words N] [--docs N] [--repeat N]
"""

from __future__ import annotations

import argparse
import random
import sys
from math import log
from time import perf_counter

from sentilens import _kernels_py as pure

try:
    from sentilens import _kernels_c as compiled
except ImportError:
    compiled = None

SUFFIXES = (
    "",
    "s",
    "es",
    "ies",
    "ed",
    "ing",
    "ational",
    "tional",
    "iveness",
    "fulness",
    "ousli",
    "ization",
    "ement",
    "ness",
    "ly",
)


def make_workload(rng: random.Random, n_words: int, n_docs: int):
    stems = [
        "".join(rng.choice("abcdefghilmnoprstuvy") for _ in range(rng.randint(3, 8)))
        for _ in range(500)
    ]
    words = [
        rng.choice(stems) + rng.choice(SUFFIXES) for _ in range(n_words)
    ]

    vocab = [f"term{i:03d}" for i in range(400)]
    polarity = {t: rng.choice((1, -1)) for t in vocab[:200]}
    docs = [
        [rng.choice(vocab) for _ in range(rng.randint(10, 60))]
        for _ in range(n_docs)
    ]

    classes = 3
    log_prior = [log(1 / classes)] * classes
    log_cond = {
        t: tuple(log(rng.uniform(1e-4, 0.1)) for _ in range(classes))
        for t in vocab[:300]  # the rest of the vocabulary is OOV
    }
    return words, polarity, docs, log_prior, log_cond


def check_parity(words, polarity, docs, log_prior, log_cond) -> None:
    for w in words[:2000]:
        if pure.porter_stem(w) != compiled.porter_stem(w):
            sys.exit(f"stem mismatch on {w!r}")
    for d in docs:
        if pure.score_tokens(d, polarity) != compiled.score_tokens(d, polarity):
            sys.exit("score mismatch")
        a = pure.accumulate_log_posteriors(d, log_prior, log_cond)
        b = compiled.accumulate_log_posteriors(d, log_prior, log_cond)
        if a != b:  # bit-identical, no tolerance
            sys.exit("posterior mismatch")


def best_of(repeat: int, fn) -> float:
    return min(
        (lambda s: (fn(), perf_counter() - s)[1])(perf_counter())
        for _ in range(repeat)
    )


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--words", type=int, default=50_000)
    parser.add_argument("--docs", type=int, default=5_000)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=13)
    args = parser.parse_args(argv)

    if compiled is None:
        print("compiled extension not importable; nothing to compare")
        return 1

    rng = random.Random(args.seed)
    words, polarity, docs, log_prior, log_cond = make_workload(
        rng, args.words, args.docs
    )
    check_parity(words, polarity, docs, log_prior, log_cond)
    print(
        f"parity OK (bit-identical); timing best of {args.repeat} runs, "
        f"{args.words} words / {args.docs} docs"
    )

    cases = {
        "porter_stem": lambda mod: lambda: [mod.porter_stem(w) for w in words],
        "score_tokens": lambda mod: lambda: [
            mod.score_tokens(d, polarity) for d in docs
        ],
        "accumulate_log_posteriors": lambda mod: lambda: [
            mod.accumulate_log_posteriors(d, log_prior, log_cond) for d in docs
        ],
    }
    header = f"{'kernel':<28}{'pure (ms)':>12}{'compiled (ms)':>15}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, make in cases.items():
        t_pure = best_of(args.repeat, make(pure))
        t_comp = best_of(args.repeat, make(compiled))
        print(
            f"{name:<28}{t_pure * 1e3:>12.2f}{t_comp * 1e3:>15.2f}"
            f"{t_pure / t_comp:>9.1f}x"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
