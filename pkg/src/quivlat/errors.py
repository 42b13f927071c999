"""Exception hierarchy shared by all quivlat components.

Three families matter to callers: input problems (bad quiver data, inadmissible
relations), refusals (the computation would need a representation-infinite or
oversized enumeration and is declined with a witness), and internal invariant
breaches (a structural property the mathematics guarantees failed to hold,
which always indicates a bug). The CLI maps them to exit codes 2, 3 and 4.
"""


class QuivlatError(Exception):
    """Base class for all errors raised by quivlat."""


class InputError(QuivlatError):
    """The caller supplied data that cannot describe a valid algebra or query."""


class QuiverFileError(InputError):
    """A quiver file could not be parsed or fails schema validation."""


class RelationNotAPath(InputError):
    """A relation's arrow sequence does not compose head-to-tail."""


class ArrowInIdeal(InputError):
    """A relation of length < 2 was supplied; the ideal must be admissible."""


class NotAdmissible(InputError):
    """The relations do not make the path algebra finite dimensional."""

    def __init__(self, message: str, witness_path=None):
        super().__init__(message)
        self.witness_path = witness_path


class NotStringAlgebra(InputError):
    """A string-algebra-only operation was invoked on a non-string algebra."""


class NotGenClosed(InputError):
    """A candidate torsion part is not closed under quotients of finite sums."""


class NotCogenClosed(InputError):
    """A candidate free part is not closed under submodules of finite sums."""


class HypothesisNotMet(InputError):
    """An identification that needs a distributive lattice was asked of one
    that is not distributive."""


class RefusalError(QuivlatError):
    """The computation was declined; carries a witness explaining why."""


class BandPresent(RefusalError):
    """A band exists, so the algebra is representation-infinite."""

    def __init__(self, message: str, band=None):
        super().__init__(message)
        self.band = band


class DimBoundReached(RefusalError):
    """Brute-force enumeration could not certify finiteness within the bound."""

    def __init__(self, message: str, dim_vector=None):
        super().__init__(message)
        self.dim_vector = dim_vector


class EndTooLarge(RefusalError):
    """An endomorphism algebra exceeds the idempotent-search guard."""


class EndResidueTooLarge(RefusalError):
    """End(M)/rad has dimension > 1 over GF(p): M may split over extensions."""


class SubmoduleEnumerationTooLarge(RefusalError):
    """Submodule enumeration would exceed the configured guard."""


class InternalInvariantError(QuivlatError):
    """A mathematically guaranteed property failed; this is a bug, not bad input."""


class ClosureNotIdempotent(InternalInvariantError):
    """A closure operator handed to the lattice generator is not idempotent."""


class PreorderNotAntisymmetric(InternalInvariantError):
    """The epimorphism preorder failed antisymmetry on a catalog."""
