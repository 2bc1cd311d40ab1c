"""kmroots: exact computations with Kac-Moody root systems.

Root enumeration (real and imaginary, by height), Weyl group balls,
chamber-level half-space geometry, closed sets and closures,
prenilpotency and nilpotency deciders, pro-nilpotent filtrations, and the
Levi decomposition of closed sets of real roots with finite-type
classification of the symmetric part.
"""

from .chambers import (
    NestResult,
    PairClass,
    chamber_distance,
    check_gallery_approach,
    in_halfspace,
    minimal_gallery,
    nestedness,
    pair_relation,
    separating_walls,
)
from .closed import (
    ClosureResult,
    RootSet,
    SliceCache,
    chamber_in_intersection,
    closure,
    is_closed,
    is_ideal,
    is_nilpotent,
    nilpotency_class,
    pair_prenilpotent,
    pronilpotent_filtration,
    root_set,
    set_prenilpotent,
)
from .gcm import GCM, load_gcm, pairing, validate_gcm
from .levi import (
    FiniteType,
    LeviReport,
    cartan_type,
    coroot_span_rank,
    simple_system,
    split,
    verify_levi,
)
from .roots import (
    RealRoot,
    RootSlice,
    enumerate_real_roots,
    enumerate_root_slice,
    height,
    is_positive,
    leq,
    reflect,
)
from .weyl import WeylElt, act, act_coroot, inversion_set, weyl_ball

__version__ = "0.1.0"

__all__ = [
    "GCM",
    "ClosureResult",
    "FiniteType",
    "LeviReport",
    "NestResult",
    "PairClass",
    "RealRoot",
    "RootSet",
    "RootSlice",
    "SliceCache",
    "WeylElt",
    "act",
    "act_coroot",
    "cartan_type",
    "chamber_distance",
    "chamber_in_intersection",
    "check_gallery_approach",
    "closure",
    "coroot_span_rank",
    "enumerate_real_roots",
    "enumerate_root_slice",
    "height",
    "in_halfspace",
    "inversion_set",
    "is_closed",
    "is_ideal",
    "is_nilpotent",
    "is_positive",
    "leq",
    "load_gcm",
    "minimal_gallery",
    "nestedness",
    "nilpotency_class",
    "pair_prenilpotent",
    "pair_relation",
    "pairing",
    "pronilpotent_filtration",
    "reflect",
    "root_set",
    "separating_walls",
    "set_prenilpotent",
    "simple_system",
    "split",
    "validate_gcm",
    "verify_levi",
    "weyl_ball",
]
