"""Pure-Python token kernels: Porter stemming, lexicon scoring, posterior sums.

These are the per-token inner loops of the pipeline.  A Cython twin with
identical semantics lives in `_kernels_c.pyx`; `sentilens._kernels` picks
whichever is importable.  Keep the two implementations in lockstep — the
test suite asserts they agree bit-for-bit.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence

_VOWELS = "aeiou"


def _cons(w: str, i: int) -> bool:
    # y is a consonant at the start or after a vowel, a vowel after a
    # consonant; a run of y's therefore alternates
    ch = w[i]
    if ch in _VOWELS:
        return False
    if ch != "y":
        return True
    j = i
    while j > 0 and w[j - 1] == "y":
        j -= 1
    if j == 0:
        base = True
    else:
        base = w[j - 1] in _VOWELS
    return base if (i - j) % 2 == 0 else not base


def _measure(w: str) -> int:
    # number of vowel→consonant alternations: [C](VC){m}[V]
    n = len(w)
    i = 0
    while i < n and _cons(w, i):
        i += 1
    m = 0
    while i < n:
        while i < n and not _cons(w, i):
            i += 1
        if i >= n:
            break
        m += 1
        while i < n and _cons(w, i):
            i += 1
    return m


def _has_vowel(w: str) -> bool:
    return any(not _cons(w, i) for i in range(len(w)))


def _ends_double_cons(w: str) -> bool:
    return len(w) >= 2 and w[-1] == w[-2] and _cons(w, len(w) - 1)


def _ends_cvc(w: str) -> bool:
    n = len(w)
    if n < 3:
        return False
    return (
        _cons(w, n - 3)
        and not _cons(w, n - 2)
        and _cons(w, n - 1)
        and w[-1] not in "wxy"
    )


_STEP2 = (
    ("ational", "ate"),
    ("tional", "tion"),
    ("enci", "ence"),
    ("anci", "ance"),
    ("izer", "ize"),
    ("abli", "able"),
    ("alli", "al"),
    ("entli", "ent"),
    ("eli", "e"),
    ("ousli", "ous"),
    ("ization", "ize"),
    ("ation", "ate"),
    ("ator", "ate"),
    ("alism", "al"),
    ("iveness", "ive"),
    ("fulness", "ful"),
    ("ousness", "ous"),
    ("aliti", "al"),
    ("iviti", "ive"),
    ("biliti", "ble"),
)

_STEP3 = (
    ("icate", "ic"),
    ("ative", ""),
    ("alize", "al"),
    ("iciti", "ic"),
    ("ical", "ic"),
    ("ful", ""),
    ("ness", ""),
)

# "ement" must precede "ment" and "ent" so the longest suffix wins
_STEP4 = (
    "al", "ance", "ence", "er", "ic", "able", "ible", "ant",
    "ement", "ment", "ent", "ion", "ou", "ism", "ate", "iti",
    "ous", "ive", "ize",
)


def _rule_pass(w: str, rules) -> str:
    # first string-matching suffix decides the step, whether or not its
    # measure condition lets the replacement happen
    for suffix, replacement in rules:
        if w.endswith(suffix):
            stem = w[: len(w) - len(suffix)]
            if _measure(stem) > 0:
                return stem + replacement
            return w
    return w


def _step1ab(w: str) -> str:
    if w.endswith("s"):
        if w.endswith("sses"):
            w = w[:-2]
        elif w.endswith("ies"):
            w = w[:-2]
        elif not w.endswith("ss"):
            w = w[:-1]
    cleanup = False
    if w.endswith("eed"):
        if _measure(w[:-3]) > 0:
            w = w[:-1]
    elif w.endswith("ed"):
        if _has_vowel(w[:-2]):
            w = w[:-2]
            cleanup = True
    elif w.endswith("ing"):
        if _has_vowel(w[:-3]):
            w = w[:-3]
            cleanup = True
    if cleanup:
        if w.endswith(("at", "bl", "iz")):
            w += "e"
        elif _ends_double_cons(w) and w[-1] not in "lsz":
            w = w[:-1]
        elif _measure(w) == 1 and _ends_cvc(w):
            w += "e"
    return w


def _step1c(w: str) -> str:
    if w.endswith("y") and _has_vowel(w[:-1]):
        w = w[:-1] + "i"
    return w


def _step4(w: str) -> str:
    for suffix in _STEP4:
        if w.endswith(suffix):
            stem = w[: len(w) - len(suffix)]
            if suffix == "ion" and not stem.endswith(("s", "t")):
                return w
            if _measure(stem) > 1:
                return stem
            return w
    return w


def _step5(w: str) -> str:
    if w.endswith("e"):
        stem = w[:-1]
        m = _measure(stem)
        if m > 1 or (m == 1 and not _ends_cvc(stem)):
            w = stem
    if w.endswith("l") and _ends_double_cons(w) and _measure(w) > 1:
        w = w[:-1]
    return w


def porter_stem(word: str) -> str:
    """Stem one lowercase a-z word with the classic Porter algorithm.

    Words shorter than 3 characters, or containing anything outside a-z,
    are returned unchanged.
    """
    if len(word) < 3:
        return word
    for ch in word:
        if not ("a" <= ch <= "z"):
            return word
    w = _step1ab(word)
    w = _step1c(w)
    w = _rule_pass(w, _STEP2)
    w = _rule_pass(w, _STEP3)
    w = _step4(w)
    return _step5(w)


def score_tokens(tokens: Sequence[str], polarity: Mapping[str, int]) -> int:
    """Sum of per-token polarities (+1/-1), unknown tokens contributing 0."""
    total = 0
    for tok in tokens:
        p = polarity.get(tok)
        if p is not None:
            total += p
    return total


def accumulate_log_posteriors(
    tokens: Sequence[str],
    log_prior: Sequence[float],
    log_cond: Mapping[str, Sequence[float]],
) -> list[float]:
    """Per-class log prior plus summed per-token log conditionals.

    Tokens absent from `log_cond` are skipped.  Summation runs in token
    order, then class order, so results are bit-identical across backends.
    """
    totals = list(log_prior)
    n = len(totals)
    for tok in tokens:
        row = log_cond.get(tok)
        if row is not None:
            for c in range(n):
                totals[c] += row[c]
    return totals
