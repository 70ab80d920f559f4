"""Generation of morphic and automatic words from morphism specifications.

A word is represented as a plain string of single-character letters. A
morphism maps each letter of its source alphabet to a finite word; a coding
is a morphism whose images all have length one. Infinite words enter the
package as fixed points ``coding(morphism^inf(seed))`` and are materialised
prefix by prefix.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    FinitePointError,
    NonProlongableError,
    UnknownLetterError,
    UnknownNameError,
)


def as_text(w) -> str:
    """Return the underlying letter string of a word-like argument."""
    if isinstance(w, WordBuffer):
        return w.letters
    if isinstance(w, str):
        return w
    raise TypeError(f"expected WordBuffer or str, got {type(w).__name__}")


class Morphism:
    """A map letter -> word, applied to words letter by letter.

    The source alphabet is kept in declaration order. Every letter occurring
    in an image must belong to the target alphabet, which defaults to the
    set of letters used by the images.
    """

    def __init__(self, images: dict[str, str], alphabet: tuple[str, ...] | None = None):
        if alphabet is None:
            alphabet = tuple(images)
        for letter in alphabet:
            if len(letter) != 1:
                raise ValueError(f"letters must be single characters, got {letter!r}")
            if letter not in images:
                raise ValueError(f"letter {letter!r} has no image")
            if len(images[letter]) == 0:
                raise ValueError(f"letter {letter!r} has an empty image")
        if set(images) != set(alphabet):
            raise ValueError("image map and alphabet disagree")
        self.alphabet = alphabet
        self.images = dict(images)
        self._table = str.maketrans(self.images)

    @property
    def target_alphabet(self) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        for letter in self.alphabet:
            for c in self.images[letter]:
                seen.setdefault(c, None)
        return tuple(seen)

    @property
    def is_coding(self) -> bool:
        return all(len(img) == 1 for img in self.images.values())

    @property
    def uniform_length(self) -> int | None:
        """Common image length if the morphism is uniform, else None."""
        sizes = {len(img) for img in self.images.values()}
        if len(sizes) == 1:
            return sizes.pop()
        return None

    def __call__(self, w) -> str:
        text = as_text(w)
        missing = set(text) - set(self.alphabet)
        if missing:
            raise UnknownLetterError(f"letters {sorted(missing)} not in source alphabet")
        return text.translate(self._table)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Morphism)
            and self.alphabet == other.alphabet
            and self.images == other.images
        )

    def __repr__(self) -> str:
        rules = ", ".join(f"{a}->{self.images[a]}" for a in self.alphabet)
        return f"Morphism({rules})"


def identity_coding(alphabet) -> Morphism:
    return Morphism({a: a for a in alphabet}, tuple(alphabet))


def compose_power(m: Morphism, e: int) -> Morphism:
    """Compose a morphism with itself e times (e >= 1).

    Requires source and target alphabets to coincide; a k-uniform input
    yields a k**e-uniform output.
    """
    if e < 1:
        raise ValueError("exponent must be positive")
    if not set(m.target_alphabet) <= set(m.alphabet):
        raise ValueError("source and target alphabets must coincide")
    images = dict(m.images)
    for _ in range(e - 1):
        images = {a: m(img) for a, img in images.items()}
    return Morphism(images, m.alphabet)


@dataclass(frozen=True)
class MorphicSpec:
    """A morphism, a coding, and a seed letter defining an infinite word."""

    morphism: Morphism
    coding: Morphism
    seed: str
    name: str | None = None

    def __post_init__(self):
        if self.seed not in self.morphism.alphabet:
            raise ValueError(f"seed {self.seed!r} not in the morphism alphabet")
        if not self.coding.is_coding:
            raise ValueError("coding images must all have length 1")

    @property
    def uniform_length(self) -> int | None:
        """k if the morphism is k-uniform with k >= 2, else None."""
        k = self.morphism.uniform_length
        return k if k is not None and k >= 2 else None

    def inner_prefix(self, n: int) -> str:
        """First n letters of the uncoded fixed point."""
        return _fixed_point_prefix(self, n)

    def prefix(self, n: int) -> str:
        """First n letters of the coded fixed point."""
        return self.coding(_fixed_point_prefix(self, n))


@dataclass(frozen=True)
class WordBuffer:
    """A finite, immutable prefix of a word; indexing is 0-based."""

    letters: str
    origin: object = field(default=None, compare=False)

    def __len__(self) -> int:
        return len(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __iter__(self):
        return iter(self.letters)

    @property
    def length(self) -> int:
        return len(self.letters)


def _fixed_point_prefix(spec: MorphicSpec, n: int) -> str:
    seed = spec.seed
    if not spec.morphism.images[seed].startswith(seed):
        raise NonProlongableError(
            f"image of seed {seed!r} is {spec.morphism.images[seed]!r}, "
            f"which does not start with the seed"
        )
    w = seed
    while len(w) < n:
        grown = spec.morphism(w)
        if len(grown) == len(w):
            raise FinitePointError(
                f"fixed point is finite with {len(w)} letters, {n} requested"
            )
        w = grown
    return w[:n]


def expand_fixed_point(spec: MorphicSpec, n: int) -> WordBuffer:
    """Return the first n letters of coding(morphism^inf(seed)).

    The expansion iterates the morphism on a growing prefix; each round is a
    single C-level translation, so prefixes of 10**7 letters are cheap. A
    round that adds no letters before the target length means the fixed
    point is finite.
    """
    if n < 0:
        raise ValueError("length must be non-negative")
    return WordBuffer(spec.prefix(n), origin=spec)


def apply_coding(coding: Morphism, w) -> WordBuffer:
    """Apply a letter-to-letter coding to a word."""
    if not coding.is_coding:
        raise ValueError("coding images must all have length 1")
    return WordBuffer(coding(as_text(w)), origin=getattr(w, "origin", None))


_BUILTIN_BUILDERS = {}


def _builtin(name):
    def register(fn):
        _BUILTIN_BUILDERS[name] = fn
        return fn

    return register


@_builtin("thue_morse")
def _thue_morse() -> MorphicSpec:
    m = Morphism({"0": "01", "1": "10"})
    return MorphicSpec(m, identity_coding("01"), "0", name="thue_morse")


@_builtin("ternary_cycle")
def _ternary_cycle() -> MorphicSpec:
    # Fixed point abbcbccabccacaab... of the cyclic ternary morphism; its
    # palindromic factors never exceed length 3.
    m = Morphism({"a": "ab", "b": "bc", "c": "ca"})
    return MorphicSpec(m, identity_coding("abc"), "a", name="ternary_cycle")


@_builtin("paperfolding")
def _paperfolding() -> MorphicSpec:
    m = Morphism({"a": "ab", "b": "cb", "c": "ad", "d": "cd"})
    coding = Morphism({"a": "0", "b": "0", "c": "1", "d": "1"})
    return MorphicSpec(m, coding, "a", name="paperfolding")


@_builtin("rudin_shapiro")
def _rudin_shapiro() -> MorphicSpec:
    m = Morphism({"a": "ab", "b": "ac", "c": "db", "d": "dc"})
    coding = Morphism({"a": "0", "b": "0", "c": "1", "d": "1"})
    return MorphicSpec(m, coding, "a", name="rudin_shapiro")


@_builtin("period_doubling")
def _period_doubling() -> MorphicSpec:
    m = Morphism({"a": "ab", "b": "aa"})
    return MorphicSpec(m, identity_coding("ab"), "a", name="period_doubling")


@_builtin("fibonacci")
def _fibonacci() -> MorphicSpec:
    m = Morphism({"a": "ab", "b": "a"})
    return MorphicSpec(m, identity_coding("ab"), "a", name="fibonacci")


BUILTIN_NAMES = tuple(_BUILTIN_BUILDERS)


def builtin_spec(name: str) -> MorphicSpec:
    """Return the spec of one of the bundled words.

    Known names: thue_morse, ternary_cycle, paperfolding, rudin_shapiro,
    period_doubling, fibonacci.
    """
    try:
        builder = _BUILTIN_BUILDERS[name]
    except KeyError:
        raise UnknownNameError(
            f"unknown word {name!r}; known: {', '.join(BUILTIN_NAMES)}"
        ) from None
    return builder()


def parse_morphic_spec(text: str, name: str | None = None) -> MorphicSpec:
    """Parse a line-oriented morphism spec.

    Format, one declaration per line (blank lines and '#' comments allowed):

        a -> ab
        b -> aa
        seed: a
        coding: a=0
        coding: b=1

    Coding lines are optional; letters without one map to themselves.
    """
    images: dict[str, str] = {}
    coding_map: dict[str, str] = {}
    seed = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("seed:"):
            seed = line[len("seed:"):].strip()
            continue
        if line.startswith("coding:"):
            body = line[len("coding:"):].strip()
            letter, _, image = body.partition("=")
            coding_map[letter.strip()] = image.strip()
            continue
        if "->" in line:
            letter, _, image = line.partition("->")
            images[letter.strip()] = image.strip()
            continue
        raise ValueError(f"line {lineno}: cannot parse {raw!r}")
    if not images:
        raise ValueError("no morphism rules found")
    if seed is None:
        raise ValueError("missing 'seed:' line")
    morphism = Morphism(images)
    for letter in morphism.alphabet:
        coding_map.setdefault(letter, letter)
    coding = Morphism(coding_map, morphism.alphabet)
    return MorphicSpec(morphism, coding, seed, name=name)


def load_morphic_spec(path) -> MorphicSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_morphic_spec(fh.read(), name=str(path))


def read_word_file(path) -> WordBuffer:
    """Read a word stored one character per letter; a trailing newline is ignored."""
    with open(path, encoding="utf-8") as fh:
        data = fh.read()
    if data.endswith("\n"):
        data = data[:-1]
    return WordBuffer(data, origin=str(path))
