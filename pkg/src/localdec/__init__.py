"""Desk-scale laboratory for randomized distributed decision on paths and cycles."""

from ._kernel import BACKEND as KERNEL_BACKEND
from .core import (
    BINARY,
    CYCLE,
    EMPTY_INPUT,
    EPSILON,
    MARKER,
    PATH,
    Alphabet,
    Instance,
    Subpath,
    View,
    ball,
    is_internal,
    make_cycle,
    make_path,
)
from .deciders import (
    Decider,
    Language,
    ThresholdClass,
    VerifyReport,
    always_yes_decider,
    amos_k_decider,
    amos_k_language,
    amos_promise_decider,
    amos_promise_language,
    binary_paths,
    classify_threshold,
    coin_decider,
    no_two_adjacent_language,
    parse_decider,
    parse_language,
    threshold_margin,
    tree_language,
    verify_pq,
)
from .engine import (
    NodeRandom,
    OutcomeVector,
    ProbabilityReport,
    TrialSeed,
    estimate_all_yes,
    exact_all_yes,
    run,
    union_bound_check,
    wilson_interval,
)
from .secure import (
    SecureCoverReport,
    SecureParams,
    SecureReport,
    scan_secure,
    security_length,
    verify_secure_cover,
)

__version__ = "0.1.0"
