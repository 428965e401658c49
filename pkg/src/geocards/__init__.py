"""Slicing announcements over finite vector spaces for the generalized Russian cards problem."""

from .errors import (
    Ambiguous,
    BadHandSize,
    BadParams,
    DivisionByZero,
    EmptyCath,
    FieldMismatch,
    GeoCardsError,
    IndexOutOfRange,
    NotPrimePower,
    PreconditionViolated,
    SizeGuard,
)
from .field import FieldElement, FiniteField, ff_arith, ff_elements, make_field
from .geometry import (
    AffineSpace,
    Direction,
    Hyperplane,
    Slicing,
    enumerate_directions,
    find_avoiding_subspace,
    hyperplane_points,
    is_slicing,
    point_codec,
)
from .params import (
    ProtocolParams,
    SizeRecord,
    check_conditions,
    derive_params,
    enumerate_sizes,
    prime_power_in_range,
    slicing_gap_lower_bound,
)
from .protocol import (
    CardMap,
    Deal,
    EnumeratedAnnouncement,
    ImplicitAnnouncement,
    bob_resolve,
    cath_candidates,
    choose_announcement,
    construct_containing_hand,
    construct_excluding_hand,
    enumerate_announcement,
    run_exchange,
)
from .verifier import Violation, ViolationKind, check_informative, check_k_safe, check_protocol, oracle_slicing_count

__version__ = "0.1.0"
