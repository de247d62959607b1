"""Exact tools for subset-sum multiset equivalence over odd-torsion abelian groups.

Decides whether two finite multisets have the same multiset of subset
sums up to translation, three independent ways: direct comparison of the
subset-sum multisets, membership of the difference function in the shift
kernel, and explicit move certificates.  Includes the cyclotomic product
criterion, the discrete Radon transform with exact inversion, and a
brute-force scan harness that cross-validates everything.
"""

from .errors import (
    BadModulus,
    EvenTorsion,
    FsreconError,
    GroupMismatch,
    GroupTooLarge,
    InfiniteGroup,
    InfiniteKernel,
    InternalInconsistency,
    ModulusMismatch,
    MoveNotApplicable,
    NonIntegralInversion,
    NotDivisible,
    NotInV,
    SizeCapExceeded,
    SupportNotUnits,
)
from .groups import (
    CyclicSubgroup,
    Embedding,
    GroupElement,
    GroupSpec,
    Homomorphism,
    cyclic_subgroup,
    enumerate_cyclic_subgroups,
    enumerate_embeddings,
    enumerate_subgroups,
    make_group,
)
from .multisets import (
    EquidistributionReport,
    FSMultiset,
    IntFunction,
    check_equidistributed,
    find_shifts,
    fs_multiset,
    minkowski_sum,
    multiset_sum,
    shift,
)
from .vmodule import (
    RankReport,
    USet,
    VMembershipReport,
    VWitness,
    is_in_ofs,
    pullback,
    pushforward,
    rank_closed_form,
    rank_report,
    rank_via_snf,
    tilde_rank_closed_form,
    tilde_v_check,
    u_set,
    v_check,
    v_check_definitional,
    v_generators,
)
from .moves import (
    CosetSwap,
    EquivalenceReport,
    MoveCertificate,
    SignFlip,
    VerifyReport,
    apply_move,
    decide_equivalence,
    move_shift,
    synthesize_moves,
    verify_certificate,
)
from .cyclotomic import CycInt, FourierClaim, cyclotomic_poly, fourier_check
from .radon import RadonData, hom_enumerate, radon_invert, radon_transform
from .oracle import (
    Discrepancy,
    FiberScanConfig,
    FiberScanReport,
    ScanChecks,
    enumerate_multisets,
    fiber_scan,
    scan_domain,
)

__version__ = "0.1.0"
