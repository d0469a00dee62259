"""Circular pattern matching with k mismatches.

Report every position of a text where some rotation of the pattern occurs
with at most k mismatches, using either a per-anchor sweep or a windowed
sample-based algorithm, both cross-checked against brute force.
"""

from .anchors import (
    AnchorContext,
    MarkTable,
    anchor_match,
    build_context,
    deposit_marks,
    heavy_anchors,
    pair_match,
)
from .index import (
    ArithmeticOccurrences,
    TextIndex,
    fragment_occurrences,
    smallest_period,
)
from .intervals import (
    GridAccumulator,
    Interval,
    IntervalChain,
    chain_elements,
    chain_to_rectangles,
    mod_filter,
    shift_chain,
    union_chains,
    union_intervals,
)
from .lightcount import SparseBinaryString, aligned_light_sum, light_fragments
from .periodic import (
    MisperiodSet,
    PPMInstance,
    Sample,
    SampleRun,
    find_runs,
    misperiods,
    periodic_periodic_match,
    run_sample_matching,
    sample_match_nonperiodic,
    split_samples,
)
from .sequences import (
    Occurrence,
    OccurrenceReport,
    Sequence,
    brute_force_cpm,
    hamming_bounded,
    matching_pairs,
    rotate,
)
from .solver import (
    AlphabetMap,
    SolverConfig,
    WindowPlan,
    build_alphabet_map,
    plan_windows,
    recover_witness,
    remap,
    solve,
    solve_anchor_sweep,
    solve_window_k4,
)

__version__ = "0.1.0"

__all__ = [
    "AnchorContext",
    "AlphabetMap",
    "ArithmeticOccurrences",
    "GridAccumulator",
    "Interval",
    "IntervalChain",
    "MarkTable",
    "MisperiodSet",
    "Occurrence",
    "OccurrenceReport",
    "PPMInstance",
    "Sample",
    "SampleRun",
    "Sequence",
    "SolverConfig",
    "SparseBinaryString",
    "TextIndex",
    "WindowPlan",
    "aligned_light_sum",
    "anchor_match",
    "brute_force_cpm",
    "build_alphabet_map",
    "build_context",
    "chain_elements",
    "chain_to_rectangles",
    "deposit_marks",
    "find_runs",
    "fragment_occurrences",
    "hamming_bounded",
    "heavy_anchors",
    "light_fragments",
    "matching_pairs",
    "misperiods",
    "mod_filter",
    "pair_match",
    "periodic_periodic_match",
    "plan_windows",
    "recover_witness",
    "remap",
    "rotate",
    "run_sample_matching",
    "sample_match_nonperiodic",
    "shift_chain",
    "smallest_period",
    "solve",
    "solve_anchor_sweep",
    "solve_window_k4",
    "split_samples",
    "union_chains",
    "union_intervals",
]
