"""Polynomial cocycles of finite Alexander quandles and knot invariants built from them."""

from .chains import Chain, Cochain, boundary, is_cycle, is_quandle_cocycle, pair, quotient_reduce
from .cocycles import InvalidParams, PolyCocycle, build, parse_cocycle
from .invariants import (InvariantMultiset, closed_form_torus2, closed_form_torus3, closed_form_twist,
                         contribution_torus3, invariant_2, invariant_3, parse_upoly, state_sum)
from .knots import KnotDiagram, build_torus, build_twist, enumerate_colorings, parse_knot_spec
from .ring import NotAUnit, QuandleRing, RingElem, RingMismatch, SpecError, parse_poly, parse_ring, twist_ring, xi_ring
from .witness import WitnessReport, check_h23_nontriviality, witness_H4, witness_odd

__all__ = [
    "Chain",
    "Cochain",
    "InvalidParams",
    "InvariantMultiset",
    "KnotDiagram",
    "NotAUnit",
    "PolyCocycle",
    "QuandleRing",
    "RingElem",
    "RingMismatch",
    "SpecError",
    "WitnessReport",
    "boundary",
    "build",
    "build_torus",
    "build_twist",
    "check_h23_nontriviality",
    "closed_form_torus2",
    "closed_form_torus3",
    "closed_form_twist",
    "contribution_torus3",
    "enumerate_colorings",
    "invariant_2",
    "invariant_3",
    "is_cycle",
    "is_quandle_cocycle",
    "pair",
    "parse_cocycle",
    "parse_knot_spec",
    "parse_poly",
    "parse_ring",
    "parse_upoly",
    "quotient_reduce",
    "state_sum",
    "twist_ring",
    "witness_H4",
    "witness_odd",
    "xi_ring",
]
