"""Bumpless pipe dreams, biword insertion and separated-descent Schubert products."""

from .bpd import BpdGrid, Tile, enumerate_bpds, parse, perm_of, render, rothe_bpd, validate, weight
from .growth import (
    GrowthDiagram,
    bijection_image,
    check_separated_descent_conditions,
    fill_growth,
    jdt,
    square_fill_topleft,
    structure_constants_separated,
)
from .insertion import (
    Biletter,
    Biword,
    left_insert,
    right_insert,
    rsk_left,
    rsk_right,
    unrsk_left,
    unrsk_right,
)
from .moves import cross_bump_swap, max_droop, min_droop, min_undroop, term_move
from .perm import MixedChain, Permutation, down_chain, up_chain
from .poly import Polynomial, divided_difference, expand_in_schubert_basis, schubert_oracle

__version__ = "0.1.0"
