"""Kernel-cardinality experiments, Zeckendorf numeration, factor complexity.

The kernel experiments bound from below how many distinct arithmetic-like
subsequences a sequence has, by truncating each kernel element at a prefix
bound and discarding truncations that are proper prefixes of surviving
longer ones. Growth of the bound with no sign of saturation is evidence
against automaticity; saturation at a small constant is the expected
behaviour for automatic controls.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import PrefixTooShortError
from .palindromes import DiffSequence
from .words import WordBuffer


def _sequence_text(x) -> str:
    if isinstance(x, DiffSequence):
        return x.symbols
    if isinstance(x, WordBuffer):
        return x.letters
    if isinstance(x, str):
        return x
    raise TypeError(f"expected a sequence of symbols, got {type(x).__name__}")


@dataclass(frozen=True)
class KernelRow:
    """One row of a kernel growth table."""

    m: int
    bound: int
    count: int
    ratio: float | None = None


def count_maximal_words(words) -> int:
    """Number of distinct words that are not proper prefixes of another.

    Sorting puts every word right before its extensions, so a word is a
    proper prefix of some other distinct word iff its successor extends it.
    """
    uniq = sorted(set(words))
    kept = 0
    for i, w in enumerate(uniq):
        if i + 1 < len(uniq) and uniq[i + 1].startswith(w):
            continue
        kept += 1
    return kept


def k_kernel_lower_bound(d, k: int, m: int, bound: int | None = None) -> KernelRow:
    """Lower bound on the k-kernel cardinality from a finite prefix.

    For every step k**e < B and offset 0 <= b < k**e, the subsequence at
    positions b, b + k**e, ... is truncated at position B (inclusive);
    truncations that are proper prefixes of another surviving truncation
    are discarded and the distinct survivors counted. Steps of B and above
    are skipped: their truncations carry at most two letters and only
    lower-bound what the smaller steps already witness.
    """
    if k < 2:
        raise ValueError("base must be at least 2")
    text = _sequence_text(d)
    if bound is None:
        bound = k ** (2 * m)
    if len(text) < bound + 1:
        raise PrefixTooShortError(
            f"need {bound + 1} symbols to cover positions 0..{bound}, have {len(text)}"
        )
    words = []
    step = 1
    while step < bound:
        words.extend(text[b : bound + 1 : step] for b in range(step))
        step *= k
    return KernelRow(m=m, bound=bound, count=count_maximal_words(words))


def kernel_table(d, k: int, ms) -> list[KernelRow]:
    """Kernel growth rows for the given experiment indices, with ratios."""
    rows = []
    prev = None
    for m in ms:
        row = k_kernel_lower_bound(d, k, m)
        ratio = None if prev is None else row.count / prev
        rows.append(KernelRow(row.m, row.bound, row.count, ratio))
        prev = row.count
    return rows


# --- Zeckendorf numeration ------------------------------------------------

def fibonacci_numbers(limit: int) -> list[int]:
    """Fibonacci numbers F_2, F_3, ... up to the last one <= limit."""
    fibs = [1, 2]
    while fibs[-1] + fibs[-2] <= limit:
        fibs.append(fibs[-1] + fibs[-2])
    return fibs if limit >= 2 else fibs[:1]


@dataclass(frozen=True)
class ZeckendorfRep:
    """Binary word a_r..a_0 with value = sum of a_i * F_(i+2), no two adjacent 1s."""

    bits: str
    value: int

    def __post_init__(self):
        if "11" in self.bits:
            raise ValueError("adjacent Fibonacci numbers are not allowed")
        if self.value > 0 and self.bits[0] != "1":
            raise ValueError("leading digit of a positive value must be 1")


def zeckendorf_encode(n: int) -> ZeckendorfRep:
    """Greedy (unique) Fibonacci representation; 0 encodes as "0"."""
    if n < 0:
        raise ValueError("value must be non-negative")
    if n == 0:
        return ZeckendorfRep("0", 0)
    fibs = fibonacci_numbers(n)
    bits = []
    rest = n
    for f in reversed(fibs):
        if f <= rest:
            bits.append("1")
            rest -= f
        elif bits:
            bits.append("0")
    return ZeckendorfRep("".join(bits), n)


def zeckendorf_decode(bits: str) -> int:
    """Value of a binary word read as a sum of Fibonacci numbers F_(i+2)."""
    fibs = [1, 2]
    while len(fibs) < len(bits):
        fibs.append(fibs[-1] + fibs[-2])
    return sum(f for bit, f in zip(reversed(bits), fibs) if bit == "1")


def zeckendorf_suffix_matches(n: int, s: str) -> bool:
    """True iff the representation of n, left-padded with zeros, ends with s."""
    bits = zeckendorf_encode(n).bits
    if len(bits) < len(s):
        bits = "0" * (len(s) - len(bits)) + bits
    return bits.endswith(s)


def _zeckendorf_strings(count: int) -> list[str]:
    """Representations of 0..count-1, cheaply, by counting in Zeckendorf."""
    reps = []
    fibs = fibonacci_numbers(max(count, 2))
    for n in range(count):
        bits = []
        rest = n
        for f in reversed(fibs):
            if f <= rest:
                bits.append("1")
                rest -= f
            elif bits:
                bits.append("0")
        reps.append("".join(bits) or "0")
    return reps


def fibonacci_kernel_lower_bound(d, m: int, bound: int | None = None) -> KernelRow:
    """Lower bound on the Fibonacci-kernel cardinality from a finite prefix.

    Kernel elements are indexed by binary suffix patterns s: the element of
    pattern s consists of the symbols at indices n whose Fibonacci
    representation, left-padded with zeros to |s| digits, ends with s. The
    padding is forced: the pattern "0" must select index 0. Each element is
    truncated to indices below F_(3m+2); truncations with fewer than two
    symbols are ignored, proper prefixes of surviving truncations are
    discarded, and the distinct survivors counted. The empty pattern
    contributes the whole prefix; the always-empty elements of patterns
    containing "11" are ignored throughout.
    """
    text = _sequence_text(d)
    if bound is None:
        fibs = [1, 2]  # fibs[i] = F_(i+2)
        while len(fibs) <= 3 * m:
            fibs.append(fibs[-1] + fibs[-2])
        bound = fibs[3 * m]  # F_(3m+2)
    if len(text) < bound:
        raise PrefixTooShortError(f"need {bound} symbols, have {len(text)}")
    reps = _zeckendorf_strings(bound)
    words = [text[:bound]]
    ell = 1
    max_len = max(len(r) for r in reps)
    while ell <= max_len:
        buckets: dict[str, list[str]] = {}
        for n, rep in enumerate(reps):
            key = rep[-ell:] if len(rep) >= ell else "0" * (ell - len(rep)) + rep
            buckets.setdefault(key, []).append(text[n])
        for letters in buckets.values():
            if len(letters) >= 2:
                words.append("".join(letters))
        ell += 1
    return KernelRow(m=m, bound=bound, count=count_maximal_words(words))


def fibonacci_kernel_table(d, ms) -> list[KernelRow]:
    rows = []
    prev = None
    for m in ms:
        row = fibonacci_kernel_lower_bound(d, m)
        ratio = None if prev is None else row.count / prev
        rows.append(KernelRow(row.m, row.bound, row.count, ratio))
        prev = row.count
    return rows


# --- factor complexity ----------------------------------------------------

@dataclass(frozen=True)
class FactorComplexityProfile:
    """counts[n] = number of distinct length-n factors of the analysed prefix."""

    counts: np.ndarray

    def __getitem__(self, n: int) -> int:
        return int(self.counts[n])

    def __len__(self) -> int:
        return len(self.counts)

    def to_tsv(self) -> str:
        return "".join(f"{n}\t{c}\n" for n, c in enumerate(self.counts))


@njit(cache=True)
def _sam_length_histogram(codes, sigma, max_n):  # pragma: no cover
    """Distinct-factor counts per length via a suffix automaton.

    Each automaton state covers factor lengths (len(link)+1 .. len); the
    histogram of covered lengths is exactly the factor-complexity profile.
    """
    n = codes.shape[0]
    cap = 2 * n + 5
    nxt = np.zeros((cap, sigma), np.int32)
    link = np.empty(cap, np.int32)
    mlen = np.empty(cap, np.int32)
    link[0] = -1
    mlen[0] = 0
    size = 1
    last = 0
    for i in range(n):
        c = codes[i]
        cur = size
        size += 1
        mlen[cur] = mlen[last] + 1
        link[cur] = -1
        p = last
        while p >= 0 and nxt[p, c] == 0:
            nxt[p, c] = cur
            p = link[p]
        if p == -1:
            link[cur] = 0
        else:
            q = nxt[p, c]
            if mlen[p] + 1 == mlen[q]:
                link[cur] = q
            else:
                clone = size
                size += 1
                mlen[clone] = mlen[p] + 1
                link[clone] = link[q]
                for a in range(sigma):
                    nxt[clone, a] = nxt[q, a]
                while p >= 0 and nxt[p, c] == q:
                    nxt[p, c] = clone
                    p = link[p]
                link[q] = clone
                link[cur] = clone
        last = cur
    hist = np.zeros(max_n + 2, np.int64)
    for v in range(1, size):
        lo = mlen[link[v]] + 1
        hi = mlen[v]
        if lo > max_n:
            continue
        if hi > max_n:
            hi = max_n
        hist[lo] += 1
        hist[hi + 1] -= 1
    return np.cumsum(hist)[: max_n + 1]


def factor_complexity(w, max_n: int) -> FactorComplexityProfile:
    """Number of distinct factors of each length 0..max_n occurring in w.

    The state 0 transition sentinel of the automaton is safe because state 0
    is the initial state and never a transition target.
    """
    text = _sequence_text(w)
    if max_n > len(text):
        raise ValueError(f"max_n {max_n} exceeds word length {len(text)}")
    if len(text) == 0:
        counts = np.zeros(max_n + 1, dtype=np.int64)
        counts[0] = 1
        return FactorComplexityProfile(counts)
    raw = np.frombuffer(text.encode("utf-8"), dtype=np.uint8)
    if len(raw) != len(text):
        raise ValueError("words must be ASCII, one byte per letter")
    alphabet = np.unique(raw)
    lookup = np.zeros(256, dtype=np.uint8)
    lookup[alphabet] = np.arange(len(alphabet), dtype=np.uint8)
    counts = _sam_length_histogram(lookup[raw], len(alphabet), max_n)
    counts[0] = 1
    return FactorComplexityProfile(counts)
