"""huffkit: prefix-code toolkit.

Three encoders sharing one codebook model: classical Huffman trees over
exact frequencies, a closed-form direct mapping for equal-frequency
alphabets, and an equivalent matrix encoder built from basis-vector outer
products.  A bit-packed container format makes all of them real file
codecs, and the CLI adds tables, verification sweeps and an op-counting
benchmark.
"""

from .bits import Bits
from .bitio import BitReader, BitWriter
from .codec import (
    ContainerHeader,
    MODE_GENERAL,
    MODE_UNIFORM,
    compress,
    compress_bytes,
    compress_uniform,
    decompress,
    emit_header,
    parse_header,
)
from .directmap import (
    CodeParams,
    binary_fixed,
    code_params,
    direct_codebook,
    direct_decode,
    direct_encode,
)
from .errors import HuffkitError
from .huffman import (
    Codebook,
    HuffmanTree,
    OptimalityReport,
    SymbolDistribution,
    build_tree,
    canonical_from_lengths,
    codes_from_tree,
    entropy,
    expected_length,
    huffman_book,
    is_non_singular,
    is_prefix_free,
    kraft_sum,
    leaf_depths,
    optimality_report,
)
from .instrument import OpCounters
from .qstate import (
    BasisKet,
    EncoderState,
    SparseZeroOneMatrix,
    basis_ket,
    build_state,
    densify,
    outer_product,
    qstate_encode,
)

__version__ = "0.1.0"

__all__ = [
    "Bits",
    "BitReader",
    "BitWriter",
    "BasisKet",
    "Codebook",
    "CodeParams",
    "ContainerHeader",
    "EncoderState",
    "HuffkitError",
    "HuffmanTree",
    "MODE_GENERAL",
    "MODE_UNIFORM",
    "OpCounters",
    "OptimalityReport",
    "SparseZeroOneMatrix",
    "SymbolDistribution",
    "basis_ket",
    "binary_fixed",
    "build_state",
    "build_tree",
    "canonical_from_lengths",
    "code_params",
    "codes_from_tree",
    "compress",
    "compress_bytes",
    "compress_uniform",
    "decompress",
    "densify",
    "direct_codebook",
    "direct_decode",
    "direct_encode",
    "emit_header",
    "entropy",
    "expected_length",
    "huffman_book",
    "is_non_singular",
    "is_prefix_free",
    "kraft_sum",
    "leaf_depths",
    "optimality_report",
    "outer_product",
    "parse_header",
    "qstate_encode",
]
