"""Longer QC-LDPC codes from shorter ones by partitioning a base matrix and
splicing the pieces along a Latin square, with girth analysis and SPA simulation."""

from .construct import (
    LatinSquare,
    MaskSet,
    extend_maskset,
    gcd_base,
    latin_circulant,
    mask_diagonal,
    mask_hamming,
    mask_triangle,
    splice_binary,
    splice_exponent,
    splice_special_n2,
    validate_latin,
)
from .girth import CycleWitness, GirthResult, check_theorem1, girth_exponent, girth_graph
from .kernels import BACKEND
from .matrix import (
    INF,
    CodeProfile,
    ExponentMatrix,
    SparseBinaryMatrix,
    expand,
    mask_binary,
    mask_exponent,
    profile,
)
from .simulate import ChannelPoint, DecodeOutcome, SimResult, StopRule, run_ber, spa_decode, transmit_all_zero

__version__ = "0.1.0"
