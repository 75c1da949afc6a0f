"""Canonical forms for deterministic parity automata.

Structure and streamline a DPA, extract its canonical chain of
good-for-games co-Buchi automata, and compute the natural color of any
ultimately periodic word via co-runs.
"""

from .canonical import (
    ChainLevelStats,
    chain_stats,
    extract_chain,
    is_streamlined,
    is_structured,
    streamline,
    structure_dpa,
    structure_dpa_with_map,
)
from .colors import (
    CoRun,
    ResolverState,
    corun_color,
    coruns,
    gfg_resolver_step,
    natural_color_via_chain,
    resolve_run,
)
from .core import (
    Alphabet,
    AutomatonError,
    ChainRepresentation,
    CoBuchiAutomaton,
    LassoWord,
    ParityAutomaton,
    Partition,
    PreconditionError,
    Transition,
    ValidationReport,
    complete_dpa,
    normalize_lasso,
    validate_dpa,
)
from .formats import FormatError, emit_dot, emit_hoa, emit_native, parse_hoa, parse_native
from .graphs import (
    RunAnalysis,
    SccDecomposition,
    dpa_language_equiv,
    dpa_lasso_run,
    gca_lasso_member,
    reachable_states,
    scc_decompose,
    state_equivalence,
    transient_elements,
)
from .cli import random_dpa

__all__ = [
    "Alphabet",
    "AutomatonError",
    "ChainLevelStats",
    "ChainRepresentation",
    "CoBuchiAutomaton",
    "CoRun",
    "FormatError",
    "LassoWord",
    "ParityAutomaton",
    "Partition",
    "PreconditionError",
    "ResolverState",
    "RunAnalysis",
    "SccDecomposition",
    "Transition",
    "ValidationReport",
    "chain_stats",
    "complete_dpa",
    "corun_color",
    "coruns",
    "dpa_language_equiv",
    "dpa_lasso_run",
    "emit_dot",
    "emit_hoa",
    "emit_native",
    "extract_chain",
    "gca_lasso_member",
    "gfg_resolver_step",
    "is_streamlined",
    "is_structured",
    "natural_color_via_chain",
    "normalize_lasso",
    "parse_hoa",
    "parse_native",
    "random_dpa",
    "reachable_states",
    "resolve_run",
    "scc_decompose",
    "state_equivalence",
    "streamline",
    "structure_dpa",
    "structure_dpa_with_map",
    "transient_elements",
    "validate_dpa",
]
