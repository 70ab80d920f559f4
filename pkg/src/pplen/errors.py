"""Exception hierarchy shared by all pplen modules."""


class PplenError(Exception):
    """Base class for all errors raised by this package."""


class NonProlongableError(PplenError):
    """The morphism image of the seed letter does not start with the seed."""


class FinitePointError(PplenError):
    """The fixed point is finite and shorter than the requested length."""


class UnknownLetterError(PplenError):
    """A word contains a letter outside the relevant alphabet."""


class UnknownNameError(PplenError):
    """No builtin word is registered under the requested name."""


class OracleLimitExceededError(PplenError):
    """Input is longer than the configured limit of the slow oracle."""


class PrefixTooShortError(PplenError):
    """A sequence is shorter than the prefix bound an experiment needs."""


class NotUniformError(PplenError):
    """An operation requiring a uniform morphism got a non-uniform one."""


class PalindromeBoundViolatedError(PplenError):
    """A scanned prefix contains a palindrome longer than the stated bound."""


class MissingTransitionError(PplenError):
    """A transducer run hit a (state, input block) pair with no transition."""

    def __init__(self, state, block):
        self.state = state
        self.block = block
        super().__init__(f"no transition from state {state!r} on block {block!r}")


class AuditFailedError(PplenError):
    """A structural audit of block suffixes or palindrome lengths failed."""
