"""Residual finiteness growth: separating covers for right-angled Artin groups
and divisibility bounds for SL_k(Z)."""

from .covers import PartialCover, PermutationCover, canonical_complete, make_cover
from .oracle import OmegaMode, exact_divisibility, growth_table
from .raag import SimplicialGraph, normal_form, parse_word, validate_graph
from .separation import frame_chain, separating_cover
from .speciallinear import congruence_witness, heisenberg_divisibility, slk_bounds_table

__version__ = "0.1.0"
