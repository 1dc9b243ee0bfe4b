"""Wang tiles and Wang bars: parameters, reductions, encodings and deciders."""

from .core import (BarPatch, Barset, ParameterReport, Patch, SplitResult, Tileset,
                   Violation, WangBar, WangTile, canonical_west, collapse_patch,
                   expand_bar_patch, parameter, rotate, split_bars, validate_bar_patch,
                   validate_patch)
from .graph import (ClassPartition, Edge, LabeledGraph, ReductionOutcome, contract,
                    eliminate_cycle_classes, from_graph, iter_contract,
                    prune_unreturnable, scc, to_graph, wang_to_bars)
from .search import (Outcome, TorusTiling, Verdict, decide, decide_bars,
                     decide_low_parameter, decide_two_bars, find_patch, find_torus)

__version__ = "0.1.0"
