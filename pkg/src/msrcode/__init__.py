"""High-rate MSR erasure code with any helper count ``k <= d <= n - 1``."""

__version__ = "0.1.0"

from .codec import Codec, Codeword, encode, parity_residual, reconstruct
from .construct import CauchyMatrix, ParityCheck, build_cauchy, build_parity_check
from .gf import Field, get_field
from .mds import MdsReport, check_mds, find_rho, search_rho
from .params import CodeParams, NodeId, derive_params, node_index, shift_tuple, tuple_index
from .repair import BandwidthReport, repair, repair_codeword_node, repair_plan
from .specfile import CodeSpec, generate_spec

__all__ = [
    "BandwidthReport",
    "CauchyMatrix",
    "Codec",
    "CodeParams",
    "CodeSpec",
    "Codeword",
    "Field",
    "MdsReport",
    "NodeId",
    "ParityCheck",
    "build_cauchy",
    "build_parity_check",
    "check_mds",
    "derive_params",
    "encode",
    "find_rho",
    "generate_spec",
    "get_field",
    "node_index",
    "parity_residual",
    "reconstruct",
    "repair",
    "repair_codeword_node",
    "repair_plan",
    "search_rho",
    "shift_tuple",
    "tuple_index",
]
