"""Prefix palindromic length profiles and their difference sequences.

The fast path builds an Eertree (palindromic tree) with series links; the
per-position minimisation over palindromic suffixes then costs O(log n),
giving O(n log n) profiles overall. The hot loop is numba-compiled so that
multi-million-letter profiles run in about a second.

A deliberately independent oracle (`brute_force_ppl`) recomputes profiles
from a rolling palindrome table and shares no palindrome-detection code
with the fast path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import OracleLimitExceededError
from .words import WordBuffer, as_text

#: Alphabet of difference sequences: one symbol per PPL step of -1, 0, +1.
DIFF_ALPHABET = "-0+"

ORACLE_LIMIT_DEFAULT = 10_000


@dataclass(frozen=True)
class PplProfile:
    """PPL values of every prefix: values[n] is the PPL of the length-n prefix."""

    values: np.ndarray

    def __post_init__(self):
        v = self.values
        if v.ndim != 1 or len(v) == 0 or v[0] != 0:
            raise ValueError("a profile starts with PPL(0) = 0")
        if len(v) > 1 and np.abs(np.diff(v)).max() > 1:
            raise ValueError("consecutive PPL values may differ by at most 1")

    @property
    def word_length(self) -> int:
        return len(self.values) - 1

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n: int) -> int:
        return int(self.values[n])

    def __eq__(self, other) -> bool:
        return isinstance(other, PplProfile) and np.array_equal(self.values, other.values)

    def to_tsv(self) -> str:
        return "".join(f"{n}\t{v}\n" for n, v in enumerate(self.values))


@dataclass(frozen=True)
class DiffSequence:
    """A word over {-,0,+} recording first differences of a PPL profile."""

    symbols: str

    def __post_init__(self):
        extra = set(self.symbols) - set(DIFF_ALPHABET)
        if extra:
            raise ValueError(f"symbols outside -0+: {sorted(extra)}")

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]

    def __str__(self) -> str:
        return self.symbols


@njit(cache=True)
def _eertree_profile(codes, sigma):  # pragma: no cover - exercised via wrapper
    """PPL of every prefix of `codes` via an eertree with series links.

    Node 0 is the root of odd palindromes (length -1), node 1 the root of
    even palindromes (length 0). `series` points to the longest proper
    palindromic suffix with a different (length - link length) step, so the
    chain of series links visits one arithmetic series of suffix palindromes
    per step.
    """
    n = codes.shape[0]
    cap = n + 3
    length = np.empty(cap, np.int32)
    link = np.empty(cap, np.int32)
    diff = np.empty(cap, np.int32)
    series = np.empty(cap, np.int32)
    series_best = np.empty(cap, np.int32)
    trans = np.zeros((cap, sigma), np.int32)
    length[0] = -1
    length[1] = 0
    for v in range(2):
        link[v] = 0
        diff[v] = 0
        series[v] = 0
        series_best[v] = 0
    node_count = 2
    last = 1
    inf = n + 2
    dp = np.empty(n + 1, np.int32)
    dp[0] = 0
    for i in range(n):
        c = codes[i]
        v = last
        while True:
            j = i - length[v] - 1
            if j >= 0 and codes[j] == c:
                break
            v = link[v]
        t = trans[v, c]
        if t == 0:
            u = link[v]
            while True:
                j = i - length[u] - 1
                if j >= 0 and codes[j] == c:
                    break
                u = link[u]
            t = node_count
            node_count += 1
            length[t] = length[v] + 2
            if length[t] == 1:
                link[t] = 1
            else:
                link[t] = trans[u, c]
            diff[t] = length[t] - length[link[t]]
            if diff[t] == diff[link[t]]:
                series[t] = series[link[t]]
            else:
                series[t] = link[t]
            series_best[t] = inf
            trans[v, c] = t
        last = t
        best = inf
        v = last
        while length[v] > 0:
            s = series[v]
            val = dp[i + 1 - length[s] - diff[v]]
            lv = link[v]
            if diff[v] == diff[lv] and series_best[lv] < val:
                val = series_best[lv]
            series_best[v] = val
            if val + 1 < best:
                best = val + 1
            v = s
        dp[i + 1] = best
    return dp


@njit(cache=True)
def _palindrome_radii(codes):  # pragma: no cover - exercised via wrapper
    """Manacher radii: longest odd and even palindrome length at each center."""
    n = codes.shape[0]
    odd = np.zeros(n, np.int32)
    even = np.zeros(n, np.int32)
    l, r = 0, -1
    for i in range(n):
        k = 1 if i > r else min(odd[l + r - i], r - i + 1)
        while i - k >= 0 and i + k < n and codes[i - k] == codes[i + k]:
            k += 1
        odd[i] = k
        if i + k - 1 > r:
            l, r = i - k + 1, i + k - 1
    l, r = 0, -1
    for i in range(n):
        k = 0 if i > r else min(even[l + r - i + 1], r - i + 1)
        while i - k - 1 >= 0 and i + k < n and codes[i - k - 1] == codes[i + k]:
            k += 1
        even[i] = k
        if i + k - 1 > r:
            l, r = i - k, i + k - 1
    return odd, even


def _encode(text: str) -> tuple[np.ndarray, int]:
    """Map a word to contiguous uint8 codes 0..sigma-1."""
    raw = np.frombuffer(text.encode("utf-8"), dtype=np.uint8)
    if len(raw) != len(text):
        raise ValueError("words must be ASCII, one byte per letter")
    alphabet = np.unique(raw)
    lookup = np.zeros(256, dtype=np.uint8)
    lookup[alphabet] = np.arange(len(alphabet), dtype=np.uint8)
    return lookup[raw], len(alphabet)


def ppl_profile(w) -> PplProfile:
    """PPL of every prefix of w, via the eertree fast path.

    The minimisation over palindromic suffixes needs no tie-breaking: only
    the minimum value matters, never which suffix attains it.
    """
    text = as_text(w)
    if len(text) == 0:
        return PplProfile(np.zeros(1, dtype=np.int32))
    codes, sigma = _encode(text)
    return PplProfile(_eertree_profile(codes, sigma))


def ppl_diff(p: PplProfile) -> DiffSequence:
    """First differences of a profile, written over {-,0,+}."""
    steps = np.diff(p.values)
    table = np.frombuffer(DIFF_ALPHABET.encode(), dtype=np.uint8)
    return DiffSequence(table[steps + 1].tobytes().decode())


def diff_sequence(w) -> DiffSequence:
    """Difference sequence of a word prefix (profile + differencing)."""
    return ppl_diff(ppl_profile(w))


def brute_force_ppl(w, limit: int = ORACLE_LIMIT_DEFAULT) -> PplProfile:
    """Slow oracle for ppl_profile; same contract, independent machinery.

    Maintains, for each end position j, the boolean vector "w[i..j] is a
    palindrome" via the two-letter shrink rule, and minimises the DP over
    that vector directly.
    """
    text = as_text(w)
    n = len(text)
    if n > limit:
        raise OracleLimitExceededError(f"{n} letters exceeds oracle limit {limit}")
    codes = np.frombuffer(text.encode("utf-8"), dtype=np.uint8).astype(np.int16)
    dp = np.zeros(n + 1, dtype=np.int64)
    prev = np.empty(0, dtype=bool)
    for j in range(n):
        pal = np.empty(j + 1, dtype=bool)
        pal[j] = True
        if j >= 1:
            pal[j - 1] = codes[j - 1] == codes[j]
        if j >= 2:
            pal[: j - 1] = (codes[: j - 1] == codes[j]) & prev[1:j]
        dp[j + 1] = 1 + dp[:j + 1][pal].min()
        prev = pal
    return PplProfile(dp.astype(np.int32))


def is_palindrome(w, i: int, j: int) -> bool:
    """True iff w[i..j] (inclusive bounds) reads the same reversed."""
    text = as_text(w)
    if not 0 <= i <= j < len(text):
        raise IndexError(f"range [{i}, {j}] out of bounds for length {len(text)}")
    piece = text[i : j + 1]
    return piece == piece[::-1]


def palindrome_length_maxima(w) -> tuple[int, int]:
    """(longest odd, longest even) palindromic factor lengths of w.

    Because shrinking a palindrome by one letter on each side leaves a
    palindrome, every odd length up to the first maximum and every even
    length up to the second occurs in w.
    """
    text = as_text(w)
    if len(text) == 0:
        return 0, 0
    codes, _ = _encode(text)
    odd, even = _palindrome_radii(codes)
    return int(odd.max() * 2 - 1), int(even.max() * 2)


def max_palindrome_in_prefix(w) -> int:
    """Length of the longest palindromic factor of w."""
    best_odd, best_even = palindrome_length_maxima(w)
    return max(best_odd, best_even)


def palindrome_lengths_present(w) -> set[int]:
    """Set of lengths of palindromic factors occurring in w."""
    best_odd, best_even = palindrome_length_maxima(w)
    present = set(range(1, best_odd + 1, 2))
    present.update(range(2, best_even + 1, 2))
    return present


class Eertree:
    """Palindromic tree of a word: one node per distinct palindromic factor.

    Nodes are integer ids; 0 and 1 are the odd/even roots. Kept as plain
    parallel lists for inspection and small-scale work; `ppl_profile` uses
    the compiled equivalent.
    """

    def __init__(self, w):
        text = as_text(w)
        self.text = text
        self.length = [-1, 0]
        self.suffix_link = [0, 0]
        self.diff = [0, 0]
        self.series_link = [0, 0]
        self.transitions: list[dict[str, int]] = [{}, {}]
        self.longest_suffix: list[int] = []
        last = 1
        for i, c in enumerate(text):
            v = last
            while True:
                j = i - self.length[v] - 1
                if j >= 0 and text[j] == c:
                    break
                v = self.suffix_link[v]
            t = self.transitions[v].get(c)
            if t is None:
                u = self.suffix_link[v]
                while True:
                    j = i - self.length[u] - 1
                    if j >= 0 and text[j] == c:
                        break
                    u = self.suffix_link[u]
                t = len(self.length)
                new_len = self.length[v] + 2
                self.length.append(new_len)
                self.suffix_link.append(1 if new_len == 1 else self.transitions[u][c])
                self.diff.append(new_len - self.length[self.suffix_link[t]])
                if self.diff[t] == self.diff[self.suffix_link[t]]:
                    self.series_link.append(self.series_link[self.suffix_link[t]])
                else:
                    self.series_link.append(self.suffix_link[t])
                self.transitions.append({})
                self.transitions[v][c] = t
            last = t
            self.longest_suffix.append(last)

    @property
    def node_count(self) -> int:
        return len(self.length)

    @property
    def palindrome_count(self) -> int:
        """Number of distinct palindromic factors (nodes minus the roots)."""
        return self.node_count - 2

    def node_word(self, v: int) -> str:
        """The palindrome a node stands for (roots give the empty string)."""
        if v < 2:
            return ""
        i = self.longest_suffix.index(v) if v in self.longest_suffix else None
        # Every node is the longest suffix palindrome at its creation point.
        i = self.longest_suffix.index(v)
        return self.text[i - self.length[v] + 1 : i + 1]

    def profile(self) -> PplProfile:
        """Profile computed from the stored tree; small-scale reference."""
        n = len(self.text)
        inf = n + 2
        dp = [0] * (n + 1)
        series_best = [inf] * self.node_count
        for i in range(n):
            best = inf
            v = self.longest_suffix[i]
            while self.length[v] > 0:
                s = self.series_link[v]
                val = dp[i + 1 - self.length[s] - self.diff[v]]
                lv = self.suffix_link[v]
                if self.diff[v] == self.diff[lv] and series_best[lv] < val:
                    val = series_best[lv]
                series_best[v] = val
                if val + 1 < best:
                    best = val + 1
                v = s
            dp[i + 1] = best
        return PplProfile(np.array(dp, dtype=np.int32))
