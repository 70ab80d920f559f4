"""Prefix palindromic length profiles of morphic words, and experiments on them."""

from .errors import PplenError
from .words import (
    BUILTIN_NAMES,
    Morphism,
    MorphicSpec,
    WordBuffer,
    apply_coding,
    builtin_spec,
    compose_power,
    expand_fixed_point,
)
from .palindromes import (
    DiffSequence,
    Eertree,
    PplProfile,
    brute_force_ppl,
    diff_sequence,
    is_palindrome,
    max_palindrome_in_prefix,
    ppl_diff,
    ppl_profile,
)

__version__ = "0.1.0"

__all__ = [
    "BUILTIN_NAMES",
    "DiffSequence",
    "Eertree",
    "Morphism",
    "MorphicSpec",
    "PplProfile",
    "PplenError",
    "WordBuffer",
    "apply_coding",
    "brute_force_ppl",
    "builtin_spec",
    "compose_power",
    "diff_sequence",
    "expand_fixed_point",
    "is_palindrome",
    "max_palindrome_in_prefix",
    "ppl_diff",
    "ppl_profile",
]
