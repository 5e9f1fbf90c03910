"""Exception hierarchy shared by the library and the CLI."""


class SoldynError(Exception):
    """Base class for every error raised by soldyn."""


class ParseError(SoldynError, ValueError):
    """Malformed input document, rational string or matrix shape."""


class NotInvertible(SoldynError, ValueError):
    """A matrix used as an automorphism has determinant zero."""


class NotInvariant(SoldynError, ValueError):
    """A subspace is not mapped onto itself by the given matrix."""


class NotNilpotent(SoldynError):
    """Lower central series did not terminate within the class cap.

    ``witness`` is a non-identity commutator word of the first weight
    that was checked past the cap.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotErgodicGroup(SoldynError):
    """The group has a nonzero character with a finite orbit."""

    def __init__(self, message, character=None):
        super().__init__(message)
        self.character = character


class CapsExhausted(SoldynError):
    """A search hit an engineering cap before reaching an answer.

    This is never a mathematical negative; ``diagnostics`` records how far
    the search got.
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or []


class NormalizationSuspect(SoldynError):
    """The extra automorphism visibly fails to normalize the group."""


class NoFiniteAlphaOrbit(SoldynError):
    """No nonzero finite-orbit character of the group has a finite orbit
    under the extra automorphism."""
