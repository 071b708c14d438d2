"""Exception types shared across the package."""


class MoebiusDualError(Exception):
    """Base class for all package errors."""


class PartialOrderViolation(MoebiusDualError):
    """The supplied relation is not a partial order.

    Carries the failed axiom and a witness tuple of element labels.
    """

    def __init__(self, axiom, witness):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"{axiom} violated at {witness!r}")


class SizeOverflow(MoebiusDualError):
    """A requested construction exceeds the configured state cap."""


class NotComparable(MoebiusDualError):
    """A pair of elements is not comparable in the relevant order."""


class InvalidSkeleton(MoebiusDualError):
    """Multiset of atom sizes does not sum to the required total."""


class SingularMatrix(MoebiusDualError):
    """Exact Gaussian elimination found no inverse."""


class SingularH(SingularMatrix):
    """The duality matrix H is singular."""


class NonpositiveH(MoebiusDualError):
    """h-transform requires a strictly positive vector."""


class NotIrreducible(MoebiusDualError):
    """Kernel support digraph is not strongly connected."""


class IncompatibleMatrix(MoebiusDualError):
    """A matrix required to be coarse-graining compatible is not.

    ``which`` names the offending matrix, ``witness`` is a triple
    (representative a1, representative a2, class label).
    """

    def __init__(self, which, witness):
        self.which = which
        self.witness = witness
        super().__init__(f"{which} incompatible with the equivalence relation, witness {witness!r}")


class NotExchangeable(MoebiusDualError):
    """Offspring law fails permutation invariance."""


class NonRationalEntry(MoebiusDualError):
    """Matrix input contained a float or other inexact value."""
