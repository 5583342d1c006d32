"""Finite autonomous systems: canonical orders, reductions, quotients and minors."""

from .core import (
    AutonomousSystem,
    AutsysError,
    ElementOutside,
    InvalidSystem,
    MalformedInput,
    NotAutonomous,
    ValidationReport,
    autonomous_part,
    canonical_form,
    check,
    full_chain,
    is_axiom,
    isomorphic,
    normalize,
    validate,
)
from .minors import (
    BidirectionalPair,
    PreconditionFailed,
    SearchBoundExceeded,
    WitnessSequence,
    extract_p3,
    extract_p4,
    find_bidirectional_pair,
    find_nonintersecting_pair,
    hex6,
    induced_minor,
    p_n,
    path_system,
    subdot_reachable,
    verify_witness,
)
from .ops import ReductionStep, contract, delete, dot, restrict
from .order import (
    CanonicalOrder,
    PartialOrderRelation,
    canonical_order,
    from_poset,
    is_poset,
    min_aut_containing,
    to_poset,
)
from .quotient import (
    GroundMap,
    Partition,
    is_homomorphism,
    is_homomorphism_induced,
    join,
    quotient_by_map,
    quotient_by_partition,
)

__version__ = "0.1.0"
