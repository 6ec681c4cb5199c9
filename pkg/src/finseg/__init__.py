"""Final segments of A* under the Higman order.

Antichain algebra, unique factorization into irreducibles, MacNeille closure,
and the injective envelopes whose block structure reproduces the factorization.
"""

from .blocks import BlockPath, Graph, block_decomposition, factorize_via_blocks, graph_of
from .envelope import (
    EnvelopeSpace,
    TransitionSystem,
    automaton_language,
    build_envelope,
    d_V,
    derive_minimal_pairs,
    glue,
    spaces_isomorphic,
    to_transition_system,
)
from .errors import AlphabetError, DomainError, FinsegError, InvariantViolation, ParseError
from .factorization import (
    Factorization,
    equidivisibility_witness,
    factorize,
    is_irreducible,
    two_factor_splits,
    verify_summable,
)
from .macneille import DownSetMax, closed_union, closure, is_closed, lower_cone, upper_cone
from .order import Alphabet, higman_leq, involute_word, parse_word, trivial_alphabet, validate_alphabet
from .upsets import (
    UpSet,
    concat,
    contains,
    graduation,
    intersect,
    involute_upset,
    member,
    min_upper_bounds,
    minimize,
    quotient,
    residual,
    union_meet,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
