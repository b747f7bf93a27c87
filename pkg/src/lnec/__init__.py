"""Linear network error correction codes on single-source acyclic networks.

Build codes that meet the extended Singleton bound, compute exact minimum
distances and error-pattern ranks, then simulate transmission with errors.
"""

__version__ = "0.1.0"

from .gf import GF, Field, FieldElement, parse_field
from .network import (
    ExtendedNetwork,
    Network,
    disjoint_paths,
    enumerate_collections,
    load_network,
    min_cut,
    parse_network,
    pattern_rank_network,
)
from .kernels import (
    LocalKernel,
    decoding_matrix,
    error_space,
    extend_kernels,
    format_code,
    load_code,
    message_space,
    parse_code,
    random_code,
    restrict,
    transfer_matrices,
)
from .analysis import (
    CodeReport,
    dominates,
    enumerate_R,
    field_bounds,
    min_distance,
    rank_of_pattern,
    regularity,
    singleton_bound,
    verdicts,
)
from .construct import choose_avoiding, construct_multicast_mds, construct_random
from .sim import capability_sweep, decode, encode, observe

__all__ = [
    "GF",
    "Field",
    "FieldElement",
    "parse_field",
    "ExtendedNetwork",
    "Network",
    "disjoint_paths",
    "enumerate_collections",
    "load_network",
    "min_cut",
    "parse_network",
    "pattern_rank_network",
    "LocalKernel",
    "decoding_matrix",
    "error_space",
    "extend_kernels",
    "format_code",
    "load_code",
    "message_space",
    "parse_code",
    "random_code",
    "restrict",
    "transfer_matrices",
    "CodeReport",
    "dominates",
    "enumerate_R",
    "field_bounds",
    "min_distance",
    "rank_of_pattern",
    "regularity",
    "singleton_bound",
    "verdicts",
    "choose_avoiding",
    "construct_multicast_mds",
    "construct_random",
    "capability_sweep",
    "decode",
    "encode",
    "observe",
]
