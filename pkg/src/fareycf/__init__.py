"""Exact continued-fraction multiplication by tracing geodesics against scaled Farey complexes."""

from .cf import (ContinuedFraction, PeriodicityClass, cf_to_surd, classify, convergents, format_cf, height_B,
                 multiply_oracle, normalize, parse_cf, surd_to_cf)
from .cutseq import CuttingWord, convergent_vertices, multiply_nbar, reduce_word, trace
from .exact import INF, QuadraticSurd, format_surd, parse_surd
from .gamma0 import FareySymbol, build_farey_symbol, invariants, pairing_matrix
from .tiles import decorated_tile, tile_walk, tile_walk_multiply

__version__ = "0.1.0"

__all__ = [
    "ContinuedFraction", "PeriodicityClass", "cf_to_surd", "classify", "convergents", "format_cf", "height_B",
    "multiply_oracle", "normalize", "parse_cf", "surd_to_cf", "CuttingWord", "convergent_vertices",
    "multiply_nbar", "reduce_word", "trace", "INF", "QuadraticSurd", "format_surd", "parse_surd",
    "FareySymbol", "build_farey_symbol", "invariants", "pairing_matrix", "decorated_tile", "tile_walk",
    "tile_walk_multiply",
]
