"""Process semantics of regular expressions, equivalence deciders, axiom
soundness suites, and bounded tree-language interpretations."""

from ._kernel import IMPLEMENTATION as KERNEL_IMPLEMENTATION
from .syntax import (
    GenConfig,
    Letter,
    ONE,
    One,
    ParseError,
    Product,
    Regex,
    Star,
    Sum,
    ZERO,
    Zero,
    generate,
    letter_count,
    letters,
    normalize,
    parse,
    render,
    sample,
)
from .semantics import Lts, StateSpaceExceeded, check, explore, trans
from .relations import (
    DistinguishingReport,
    SimRelation,
    TraceWitness,
    Witness,
    bisim_equiv,
    brute_force_sim,
    compare,
    is_maximal_simulation,
    is_simulation,
    max_bisimulation,
    max_simulation,
    replay_trace_witness,
    replay_witness,
    sim_equiv,
    sim_leq,
    trace_equiv,
)

__version__ = "0.1.0"
