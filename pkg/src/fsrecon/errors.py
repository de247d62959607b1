"""Exception hierarchy shared across the package."""


class FsreconError(Exception):
    """Base class for all library-specific errors."""


class EvenTorsion(FsreconError):
    """A torsion order is even; groups with 2-torsion are rejected."""


class GroupMismatch(FsreconError):
    """Operands belong to different groups."""


class InfiniteGroup(FsreconError):
    """Operation requires a finite group but the group has free rank."""


class GroupTooLarge(FsreconError):
    """Finite group exceeds the brute-force enumeration bound."""


class SizeCapExceeded(FsreconError):
    """Multiset size exceeds the subset-sum computation cap."""


class SupportNotUnits(FsreconError):
    """Function support must lie in the units of Z/n."""


class NotDivisible(FsreconError):
    """Multiset size is incompatible with the multiplicative order of 2."""


class BadModulus(FsreconError):
    """Modulus is not an odd integer in the required range."""


class ModulusMismatch(FsreconError):
    """Cyclotomic operands live in rings of different conductor."""


class InfiniteKernel(FsreconError):
    """Pullback requires a homomorphism with finite kernel."""


class MoveNotApplicable(FsreconError):
    """A move's required elements are missing from the multiset."""


class NotInV(FsreconError):
    """Move synthesis requires the difference function to pass v_check."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NonIntegralInversion(FsreconError):
    """Radon inversion produced a non-integral value (inconsistent data)."""


class InternalInconsistency(FsreconError):
    """A theorem-level identity failed; indicates a bug, never expected."""
