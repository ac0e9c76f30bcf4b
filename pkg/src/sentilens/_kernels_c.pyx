# cython: language_level=3
"""Compiled token kernels: Porter stemming, lexicon scoring, posterior sums.

Line-for-line twin of `_kernels_py`; the algorithms and even the
summation order are kept identical so both backends return
bit-for-bit equal results.  Change the two files together.
"""

cdef str _VOWELS = "aeiou"


cdef bint _cons(str w, Py_ssize_t i):
    # y is a consonant at the start or after a vowel, a vowel after a
    # consonant; a run of y's therefore alternates
    cdef str ch = w[i]
    cdef Py_ssize_t j
    cdef bint base
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
    if (i - j) % 2 == 0:
        return base
    return not base


cdef int _measure(str w):
    # number of vowel->consonant alternations: [C](VC){m}[V]
    cdef Py_ssize_t n = len(w)
    cdef Py_ssize_t i = 0
    cdef int m = 0
    while i < n and _cons(w, i):
        i += 1
    while i < n:
        while i < n and not _cons(w, i):
            i += 1
        if i >= n:
            break
        m += 1
        while i < n and _cons(w, i):
            i += 1
    return m


cdef bint _has_vowel(str w):
    cdef Py_ssize_t i
    for i in range(len(w)):
        if not _cons(w, i):
            return True
    return False


cdef bint _ends_double_cons(str w):
    cdef Py_ssize_t n = len(w)
    return n >= 2 and w[n - 1] == w[n - 2] and _cons(w, n - 1)


cdef bint _ends_cvc(str w):
    cdef Py_ssize_t n = len(w)
    if n < 3:
        return False
    return (
        _cons(w, n - 3)
        and not _cons(w, n - 2)
        and _cons(w, n - 1)
        and w[n - 1] not in "wxy"
    )


cdef tuple _STEP2 = (
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

cdef tuple _STEP3 = (
    ("icate", "ic"),
    ("ative", ""),
    ("alize", "al"),
    ("iciti", "ic"),
    ("ical", "ic"),
    ("ful", ""),
    ("ness", ""),
)

# "ement" must precede "ment" and "ent" so the longest suffix wins
cdef tuple _STEP4 = (
    "al", "ance", "ence", "er", "ic", "able", "ible", "ant",
    "ement", "ment", "ent", "ion", "ou", "ism", "ate", "iti",
    "ous", "ive", "ize",
)


cdef str _rule_pass(str w, tuple rules):
    # first string-matching suffix decides the step, whether or not its
    # measure condition lets the replacement happen
    cdef str suffix, replacement, stem
    for suffix, replacement in rules:
        if w.endswith(suffix):
            stem = w[: len(w) - len(suffix)]
            if _measure(stem) > 0:
                return stem + replacement
            return w
    return w


cdef str _step1ab(str w):
    cdef bint cleanup = False
    if w.endswith("s"):
        if w.endswith("sses"):
            w = w[:-2]
        elif w.endswith("ies"):
            w = w[:-2]
        elif not w.endswith("ss"):
            w = w[:-1]
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
        elif _ends_double_cons(w) and w[len(w) - 1] not in "lsz":
            w = w[:-1]
        elif _measure(w) == 1 and _ends_cvc(w):
            w += "e"
    return w


cdef str _step1c(str w):
    if w.endswith("y") and _has_vowel(w[:-1]):
        w = w[:-1] + "i"
    return w


cdef str _step4_pass(str w):
    cdef str suffix, stem
    for suffix in _STEP4:
        if w.endswith(suffix):
            stem = w[: len(w) - len(suffix)]
            if suffix == "ion" and not stem.endswith(("s", "t")):
                return w
            if _measure(stem) > 1:
                return stem
            return w
    return w


cdef str _step5(str w):
    cdef str stem
    cdef int m
    if w.endswith("e"):
        stem = w[:-1]
        m = _measure(stem)
        if m > 1 or (m == 1 and not _ends_cvc(stem)):
            w = stem
    if w.endswith("l") and _ends_double_cons(w) and _measure(w) > 1:
        w = w[:-1]
    return w


cpdef str porter_stem(str word):
    """Stem one lowercase a-z word with the classic Porter algorithm.

    Words shorter than 3 characters, or containing anything outside a-z,
    are returned unchanged.
    """
    cdef str ch, w
    if len(word) < 3:
        return word
    for ch in word:
        if not ("a" <= ch <= "z"):
            return word
    w = _step1ab(word)
    w = _step1c(w)
    w = _rule_pass(w, _STEP2)
    w = _rule_pass(w, _STEP3)
    w = _step4_pass(w)
    return _step5(w)


cpdef int score_tokens(tokens, polarity):
    """Sum of per-token polarities (+1/-1), unknown tokens contributing 0."""
    cdef int total = 0
    for tok in tokens:
        p = polarity.get(tok)
        if p is not None:
            total += p
    return total


cpdef list accumulate_log_posteriors(tokens, log_prior, log_cond):
    """Per-class log prior plus summed per-token log conditionals.

    Tokens absent from `log_cond` are skipped.  Summation runs in token
    order, then class order, so results are bit-identical across backends.
    """
    cdef list totals = list(log_prior)
    cdef Py_ssize_t n = len(totals)
    cdef Py_ssize_t c
    for tok in tokens:
        row = log_cond.get(tok)
        if row is not None:
            for c in range(n):
                totals[c] = <double> totals[c] + <double> row[c]
    return totals
