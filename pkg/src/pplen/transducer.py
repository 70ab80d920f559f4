"""Block transducers mapping uniform morphic words to their difference sequences.

A word with palindromic factors of bounded length p can be cut into blocks
of a fixed length exceeding p (images of single letters under a power of
the generating morphism). The difference sequence then advances block by
block: the chunk of differences produced while reading a block depends only
on the block, its predecessor, and the p leading differences ("type") of
the predecessor. Scanning a prefix therefore yields a finite transducer,
and for several bundled words the transducer collapses further to an
explicit morphism-plus-coding formula, which this module also carries.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    AuditFailedError,
    MissingTransitionError,
    NotUniformError,
    PalindromeBoundViolatedError,
)
from .palindromes import (
    DiffSequence,
    diff_sequence,
    max_palindrome_in_prefix,
    palindrome_length_maxima,
)
from .words import Morphism, MorphicSpec, builtin_spec, compose_power, identity_coding

State = tuple[str, str]  # (block, type tag)


@dataclass(frozen=True)
class BlockAlphabet:
    """The distinct letter-image blocks of a uniform morphic word."""

    blocks: tuple[str, ...]
    block_length: int
    letter_of: dict[str, tuple[str, ...]] = field(compare=False)


def lambda_block_stream(spec: MorphicSpec, e: int, n: int) -> tuple[list[str], BlockAlphabet]:
    """First n blocks of the word, each the coded e-th power image of one letter.

    The concatenation of the returned blocks is exactly the word prefix of
    length n * k**e.
    """
    k = spec.uniform_length
    if k is None:
        raise NotUniformError("block streams need a k-uniform morphism with k >= 2")
    power = compose_power(spec.morphism, e)
    images = {a: spec.coding(power.images[a]) for a in spec.morphism.alphabet}
    letter_of: dict[str, tuple[str, ...]] = {}
    for a in spec.morphism.alphabet:
        letter_of.setdefault(images[a], ())
        letter_of[images[a]] += (a,)
    alphabet = BlockAlphabet(
        blocks=tuple(dict.fromkeys(images[a] for a in spec.morphism.alphabet)),
        block_length=k ** e,
        letter_of=letter_of,
    )
    inner = spec.inner_prefix(n)
    return [images[a] for a in inner], alphabet


def occurrence_type(d: DiffSequence, m: int, p: int) -> str:
    """Type tag of the occurrence starting at position m: the window d[m..m+p-1]."""
    if m < 0 or m + p > len(d):
        raise IndexError(f"window [{m}, {m + p}) out of range for length {len(d)}")
    return d.symbols[m : m + p]


@dataclass
class BlockTransducer:
    """Deterministic transducer reading blocks and emitting difference chunks.

    States are (block, type) pairs plus one unnamed start state; the start
    transition consumes the word's first block and emits the full first
    difference chunk. Every transition output has the block length, and the
    target state's type is a prefix of the output.
    """

    block_length: int
    palindrome_bound: int
    states: set[State]
    transitions: dict[tuple[State, str], tuple[State, str]]
    start_transition: tuple[str, str, State]  # input block, output, target
    closed: bool
    warning: str | None = None
    scanned_blocks: int = 0

    @property
    def state_count(self) -> int:
        """Number of states, counting the start state."""
        return len(self.states) + 1

    @property
    def transition_count(self) -> int:
        """Number of transitions, counting the start transition."""
        return len(self.transitions) + 1

    def summary(self) -> str:
        return f"states={self.state_count} transitions={self.transition_count} closed={self.closed}"

    def export(self) -> str:
        """Line-oriented text form: start line, one line per transition, summary."""
        block, out, target = self.start_transition
        lines = [f"start: S --{block}|{out}--> ({target[0]},{target[1]})"]
        for (src, inp), (dst, w) in sorted(self.transitions.items()):
            lines.append(f"({src[0]},{src[1]}) --{inp}|{w}--> ({dst[0]},{dst[1]})")
        lines.append(self.summary())
        return "\n".join(lines) + "\n"


def run_block_transducer(t: BlockTransducer, blocks) -> DiffSequence:
    """Feed a block sequence from the start state; concatenate the outputs."""
    out = []
    state: State | None = None
    for i, block in enumerate(blocks):
        if i == 0:
            first, chunk, target = t.start_transition
            if block != first:
                raise MissingTransitionError("S", block)
            out.append(chunk)
            state = target
            continue
        try:
            state, chunk = t.transitions[(state, block)]
        except KeyError:
            raise MissingTransitionError(state, block) from None
        out.append(chunk)
    return DiffSequence("".join(out))


def build_block_transducer(
    spec: MorphicSpec,
    p: int,
    e: int,
    scan_blocks: int,
    reverify: bool = True,
) -> BlockTransducer:
    """Scan a block stream and record every (state, block) transition seen.

    The block length k**e must exceed p, and the scanned prefix must contain
    no palindrome longer than p (PalindromeBoundViolatedError otherwise; the
    construction is meaningless for palindrome-rich words). Closure is
    declared when the final fifth of the scan discovers nothing new and,
    with `reverify`, a stream twice as long replays without missing
    transitions or output mismatches. A transducer that fails closure is
    returned with a warning, not an error.
    """
    k = spec.uniform_length
    if k is None:
        raise NotUniformError("the transducer construction needs a k-uniform spec")
    block_len = k ** e
    if block_len <= p:
        raise ValueError(f"block length {block_len} must exceed the palindrome bound {p}")
    if scan_blocks < 1:
        raise ValueError("need at least one block to scan")

    total_blocks = 2 * scan_blocks if reverify else scan_blocks
    blocks, _ = lambda_block_stream(spec, e, total_blocks)
    word = "".join(blocks)
    longest = max_palindrome_in_prefix(word)
    if longest > p:
        raise PalindromeBoundViolatedError(
            f"palindrome of length {longest} exceeds the stated bound {p}"
        )
    d = diff_sequence(word)

    states: set[State] = set()
    transitions: dict[tuple[State, str], tuple[State, str]] = {}
    start_transition = None
    last_new = 0
    prev_state: State | None = None
    for i in range(scan_blocks):
        chunk = d.symbols[i * block_len : (i + 1) * block_len]
        state = (blocks[i], chunk[:p])
        if state not in states:
            states.add(state)
            last_new = i
        if i == 0:
            start_transition = (blocks[0], chunk, state)
        else:
            key = (prev_state, blocks[i])
            known = transitions.get(key)
            if known is None:
                transitions[key] = (state, chunk)
                last_new = i
            elif known != (state, chunk):
                raise AssertionError(
                    f"scan contradicts determinism at block {i}: {key} -> {known} vs {(state, chunk)}"
                )
        prev_state = state

    closed = last_new < (scan_blocks * 4) // 5
    warning = None
    if not closed:
        warning = (
            f"still discovering states/transitions at block {last_new} "
            f"of {scan_blocks}; scan longer to settle"
        )
    t = BlockTransducer(
        block_length=block_len,
        palindrome_bound=p,
        states=states,
        transitions=transitions,
        start_transition=start_transition,
        closed=closed,
        warning=warning,
        scanned_blocks=scan_blocks,
    )
    if closed and reverify:
        try:
            replay = run_block_transducer(t, blocks)
        except MissingTransitionError as exc:
            t.closed = False
            t.warning = f"replay on a twice-longer stream needed a new transition: {exc}"
        else:
            if replay.symbols != d.symbols:
                t.closed = False
                t.warning = "replay output disagrees with the computed differences"
    return t


@dataclass(frozen=True)
class FirstMismatch:
    """Earliest position where two sequences disagree."""

    index: int
    expected: str
    got: str


def verify_equality(a: DiffSequence, b: DiffSequence, n: int) -> FirstMismatch | None:
    """Compare two difference sequences over their first n symbols.

    Returns None when they agree, else the first mismatch.
    """
    if len(a) < n or len(b) < n:
        raise ValueError(f"need {n} symbols on both sides, have {len(a)} and {len(b)}")
    xs, ys = a.symbols[:n], b.symbols[:n]
    if xs == ys:
        return None
    lcp = 0
    while xs[lcp] == ys[lcp]:
        lcp += 1
    return FirstMismatch(index=lcp, expected=xs[lcp], got=ys[lcp])


# --- closed-form difference formulas ---------------------------------------

@dataclass(frozen=True)
class FormulaSpec:
    """Difference sequence as outer(inner^inf(seed)) with a uniform outer map."""

    inner: Morphism
    outer: Morphism
    seed: str
    name: str | None = None

    def __post_init__(self):
        if self.outer.uniform_length is None:
            raise ValueError("the outer map must be uniform")
        if not self.inner.images[self.seed].startswith(self.seed):
            raise ValueError("inner morphism must be prolongable on the seed")


def formula_stream(f: FormulaSpec, n: int) -> DiffSequence:
    """First n symbols of the formula's difference sequence."""
    width = f.outer.uniform_length
    inner_spec = MorphicSpec(f.inner, identity_coding(f.inner.alphabet), f.seed)
    letters = inner_spec.inner_prefix(-(-n // width)) if n else ""
    return DiffSequence(f.outer(letters)[:n])


# Paperfolding: inner letters annotate each base letter with its predecessor
# in the uncoded fixed point over {a,b,c,d}. A = initial a; B/C = a after
# b/d; D/E = b after a/c; F/G = c after b/d; H/I = d after a/c.
_PF_SEGMENT = "0+00+00-0++-0+0"
_PF_HEAD = {
    "A": "+0+0-+0+000-++0-+-",
    "B": "0++-0+00+00-0+0000",
    "C": "0+00000+00000+000-",
    "D": "0++-0+00+00-0+0000",
    "E": "+00+-00+0000+0000-",
    "F": "0++-0+00+00-0+0000",
    "G": "0+00000+00000+000-",
    "H": "0++-0+00+00-0+0000",
    "I": "+00+-00+0000+0000-",
}
_PF_TAIL_A = "00+00+0-+000+000+00000-0++0-+0-"
_PF_TAIL_B = "+-+0-0+000+000+0+-+0-000+000+0-"
_PF_TAIL = {
    "A": _PF_TAIL_A,
    "B": _PF_TAIL_A,
    "C": _PF_TAIL_A,
    "D": _PF_TAIL_B,
    "E": _PF_TAIL_B,
    "F": _PF_TAIL_A[:-1] + "0",
    "G": _PF_TAIL_A[:-1] + "0",
    "H": _PF_TAIL_B[:-1] + "0",
    "I": _PF_TAIL_B[:-1] + "0",
}

# Rudin-Shapiro: the analogous predecessor-annotated letters collapse to
# five classes A..E; every outer image ends with the same 12-symbol word.
_RS_SEGMENT = "0-+00+00+00+"
_RS_HEAD = {
    "A": "+00+00000-++00-++00-+0+00+00+00+-0+00-+00+-0+0+0-0+0",
    "B": "0+0-0++-00+0+0-++00-+0+00+00+00+0+0-0++-00+0+0-+000+",
    "C": "-0+00-+00+-0+0+00+00-++-+00+000+0-+000+-+0-0+0+0-0+0",
    "D": "-0+00-+00+-0+0+00+00-++-+00+000+0+0-0++-00+0+0-+000+",
    "E": "0+0-0++-00+0+0-++00-+0+00+00+00+-0+00-+00+-0+0+0-0+0",
}


def _formula_builders():
    def thue_morse():
        inner = Morphism({"+": "++0-", "0": "++--", "-": "+0--"})
        return FormulaSpec(inner, identity_coding("+0-"), "+", name="thue_morse")

    def ternary_cycle():
        # Letters classify each block against its predecessor in the cyclic
        # order of the three blocks: s = start, e = equal, u = one step up,
        # d = one step down, h = third block of an ascending run.
        inner = Morphism(
            {"s": "su", "u": "eu", "e": "du", "d": "hu", "h": "eu"}
        )
        outer = Morphism(
            {"s": "++0+", "e": "++0+", "d": "0+0+", "u": "00++", "h": "-+0+"}
        )
        return FormulaSpec(inner, outer, "s", name="ternary_cycle")

    def paperfolding():
        inner = Morphism(
            {
                "A": "AD",
                "B": "BD",
                "C": "CD",
                "D": "FE",
                "E": "GE",
                "F": "BH",
                "G": "CH",
                "H": "FI",
                "I": "GI",
            }
        )
        outer = Morphism(
            {a: _PF_HEAD[a] + _PF_SEGMENT + _PF_TAIL[a] for a in _PF_HEAD}
        )
        return FormulaSpec(inner, outer, "A", name="paperfolding")

    def rudin_shapiro():
        inner = Morphism({"A": "AB", "B": "CD", "C": "EB", "D": "ED", "E": "CB"})
        outer = Morphism({a: _RS_HEAD[a] + _RS_SEGMENT for a in _RS_HEAD})
        return FormulaSpec(inner, outer, "A", name="rudin_shapiro")

    return {
        "thue_morse": thue_morse,
        "ternary_cycle": ternary_cycle,
        "paperfolding": paperfolding,
        "rudin_shapiro": rudin_shapiro,
    }


_FORMULAS = _formula_builders()

FORMULA_NAMES = tuple(_FORMULAS)


def builtin_formula(name: str) -> FormulaSpec:
    """Known closed-form difference formula of a bundled word."""
    try:
        return _FORMULAS[name]()
    except KeyError:
        raise KeyError(
            f"no difference formula for {name!r}; known: {', '.join(FORMULA_NAMES)}"
        ) from None


# --- Rudin-Shapiro block suffix audit ---------------------------------------

#: The two 12-letter words that end every length-64 block of the
#: Rudin-Shapiro word, two blocks each.
RS_BLOCK_SUFFIXES = ("110100011101", "001011100010")


@dataclass(frozen=True)
class BlockSuffixAudit:
    applicable: bool
    block_length: int | None = None
    suffix_split: dict[str, int] | None = None
    max_palindrome: int | None = None
    palindrome_gap: int | None = None  # length absent from the word
    prefix_length: int | None = None


def block_suffix_audit(spec: MorphicSpec, prefix_length: int = 10 ** 6) -> BlockSuffixAudit:
    """Check the block-suffix structure justifying the Rudin-Shapiro formula.

    The length-64 blocks must split two-and-two over the known suffixes, and
    the scanned prefix must contain no length-13 palindrome while reaching
    the maximal length 14. Only meaningful for the Rudin-Shapiro word; other
    specs get a not-applicable report.
    """
    if spec.name != "rudin_shapiro":
        return BlockSuffixAudit(applicable=False)
    _, alphabet = lambda_block_stream(spec, 6, 1)
    split = {
        suffix: sum(1 for b in alphabet.blocks if b.endswith(suffix))
        for suffix in RS_BLOCK_SUFFIXES
    }
    if sorted(split.values()) != [2, 2] or len(alphabet.blocks) != 4:
        raise AuditFailedError(f"unexpected block suffix split: {split}")
    word = spec.prefix(prefix_length)
    best_odd, best_even = palindrome_length_maxima(word)
    if best_odd >= 13:
        raise AuditFailedError(f"found an odd palindrome of length {best_odd} >= 13")
    if max(best_odd, best_even) != 14:
        raise AuditFailedError(
            f"longest palindrome is {max(best_odd, best_even)}, expected 14"
        )
    return BlockSuffixAudit(
        applicable=True,
        block_length=alphabet.block_length,
        suffix_split=split,
        max_palindrome=14,
        palindrome_gap=13,
        prefix_length=prefix_length,
    )
