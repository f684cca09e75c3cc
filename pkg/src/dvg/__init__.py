"""Exact integer calculus of curvelike divisors on weighted dual
intersection graphs: property checkers with witnesses, birational and twist
moves, decomposition and reduction engines, classification of minimal
(-n)-divisor graphs, and realizability analysis."""

from .lattice import (
    CapExceededError,
    ConfigMismatchError,
    CurveConfig,
    Divisor,
    DvgError,
    Inertia,
    InvalidInputError,
    canonical_permutation,
    canonicalize,
    chi_additivity_check,
    euler_char,
    euler_char_twisted,
    is_connected,
    is_isomorphic,
    is_tree,
    k_degree,
    pairing,
    permuted_divisor,
    subdivisors,
)
from .props import (
    CurvelikeVerdict,
    MinimalityReport,
    NotCurvelikeError,
    SequenceWitness,
    VerdictStatus,
    WitnessKind,
    dominance_sufficient,
    find_negative_filtration,
    find_one_decomposition,
    is_curvelike,
    is_minimal,
    is_negative_definite,
    is_negatively_closed,
    is_one_connected,
    witness_is_valid,
)
from .transforms import (
    BlowUpGeneric,
    BlowUpIntersection,
    Contract,
    Decomposition,
    GenericPointOn,
    IntersectionOf,
    MoveError,
    MoveScript,
    TwistOff,
    TwistOn,
    blow_up,
    contract,
    contractible_in,
    curvelike_decomposition,
    decomposition_is_valid,
    is_essentially_curve,
    laufer_cycle,
    pullback_through_contraction,
    reduce_to_minimal,
    replay,
    twist_off,
    twist_on,
)
from .classify import (
    EnumerationParams,
    PartialEnumerationError,
    brute_force_minimal,
    enumerate_minimal,
    free_trees,
)
from .realize import (
    ClosureResult,
    Obstructed,
    RealizabilityReport,
    RealizableWith,
    Unknown,
    badness_report,
    contraction_closure,
    hodge_obstructed,
    inertia,
    realizability_report,
    realizability_sufficient,
    replay_realization,
)
from .cli import DvgDocument, ParseError, parse, serialize

__version__ = "0.1.0"
