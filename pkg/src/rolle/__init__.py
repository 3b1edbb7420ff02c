"""Zero arrangements of real-rooted functions and their derivatives."""

__version__ = "0.1.0"

from .combinatorics import enumerate_periodic, enumerate_rolle_words, flat_count
from .errors import (
    BalancingFailed,
    InadmissibleTuple,
    InterlacingViolated,
    InternalConsistencyError,
    InvalidInput,
    NotStrictlyNice,
    RolleError,
    SizeGuardError,
    ZeroCountMismatch,
)
from .poly_core import (
    Arrangement,
    CoefficientPoly,
    RootList,
    arrangement,
    check_standard_rolle,
    coefficients_from_roots,
    differentiate,
    isolate_roots_interlaced,
    symbolic_sequence,
)
from .rolle3 import Tuple3Arrangement, check_case_inequalities, check_inequalities, construct_3nice
from .search import SamplerConfig, anderson_check, anderson_scan, classify, normalize_quartic, sample_roots
from .trig import TrigPoly, differentiate_trig, eval_trig, periodic_arrangement, real_rooted_trig_from_zeros, roots_on_circle
from .words import CircularSequence, SymbolicSequence, is_possible_periodic, is_rolle_word
