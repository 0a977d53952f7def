"""Reference invariant values, kept in their original typeset form.

Each entry records the knot, ring and cocycle exponents, the value string as
printed (parsed by :func:`invariants.parse_upoly`), how the table command
should recompute it, and an optional erratum note. Entries with
``suspect=True`` are known or suspected misprints: a mismatch there is
reported as an erratum candidate, not a failure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .ring import QuandleRing, twist_ring, xi_ring


@dataclass(frozen=True)
class GoldenEntry:
    label: str
    knot: str  # knot spec, see knots.parse_knot_spec
    p: int
    modulus: tuple  # ("xi", m) or ("twist", n) or ("poly", coeffs)
    exponents: tuple[int, ...]
    printed: str
    method: str = "brute"  # brute | closed+sample
    suspect: bool = False
    note: Optional[str] = None
    alt_exponents: Optional[tuple] = None  # reading under which a suspect row is tried again

    def ring(self) -> QuandleRing:
        kind, arg = self.modulus
        if kind == "xi":
            return xi_ring(self.p, arg)
        if kind == "twist":
            return twist_ring(self.p, arg)
        return QuandleRing(self.p, tuple(arg))


def _torus(p, m, printed, method="brute", **kw):
    return GoldenEntry(f"p={p} m={m}", f"torus:2,{m}", p, ("xi", m), (1, p, 0), printed, method, **kw)


def _twist(p, n, a1, a2, printed, **kw):
    return GoldenEntry(f"p={p} n={n} a1={a1} a2={a2}", f"twist:{n}", p, ("twist", n), (a1, a2, 0), printed, **kw)


TABLES: dict[str, list[GoldenEntry]] = {
    "trefoil": [
        GoldenEntry("trefoil over Z2[t]/(t^2+t+1)", "torus:2,3", 2, ("poly", (1, 1, 1)), (2, 1),
                    r"4 + 12 U^{(t+1)}",
                    note="the exponent pair is not recorded with the value; (2,1) reproduces it, (1,2) does not"),
    ],
    "torus5-2cocycle": [
        GoldenEntry("T(2,5) over Z2[t]/(xi_5)", "torus:2,5", 2, ("xi", 5), (4, 1),
                    r"16 + 80 U^{(t+1)} + 80 U^{(t^3)} + 80 U^{(t^3+t+1)}"),
    ],
    "torus-p2": [
        _torus(2, 3, r"16+48\ U^t"),
        _torus(2, 5, r"4096"),
        _torus(2, 7, r"262144"),
        _torus(2, 9, r"4194304 + 12582912 \ U^{(t^4+t^7+1)}", suspect=True,
               note="brute force gives U^(t^7+t^4+t); the printed constant term 1 breaks the t^{3k+1} "
                    "pattern of the m=15 row and is not of the form K s^3 with K supported on one factor"),
        _torus(2, 11, r"1073741824", "closed+sample"),
        _torus(2, 13, r"68719476736", "closed+sample"),
        _torus(2, 15, r"1099511627776 + 3298534883328\  U^{(t^{13}+t^{10}+t^7+t^4+t)}", "closed+sample"),
    ],
    "torus-p3": [
        _torus(3, 3, r"243+486\  U^{(2t+2)}"),
        _torus(3, 5, r"531441"),
        _torus(3, 7, r"387420489", "closed+sample"),
        _torus(3, 9, r"94143178827 + 188286357654\ U^{(2t^7+2t^6+t^4+t^3+2t+2)}", "closed+sample"),
    ],
    "torus-p5": [
        _torus(5, 3, r"625+3750U^{(t+3)}+3750\ ( U^{(4t+2)}+U^{(3t+4)}+U^{(2t+1)} )"),
        _torus(5, 5, r"48828125 + 97656250\ ( U^{(4t^3+2t^2+2t+4)}+U^{(t^3+3t^2+3t+1)} )"),
        _torus(5, 7, r"3814697265625", "closed+sample"),
    ],
    "twist-p3": [
        _twist(3, 1, 1, 3, r"81 + 324\ (U^{(t + 2)}+ U^{(1 + 2 t)} )"),
        _twist(3, 1, 3, 1, r"81+324\ (U^{(2t+2)}+U^{(t+1)})"),
        _twist(3, 2, 1, 3, r"243+486\ U^{(t+1)}"),
        _twist(3, 2, 1, 3, r"243+486\ U^{(2t+2)}", suspect=True, alt_exponents=(3, 1, 0),
               note="second row printed with the label a1=1, a2=3; the a1=3, a2=1 reading is tried as well"),
    ],
    "twist-p5": [
        _twist(5, 1, 1, 5, r"3125+6250\ ( U^{(3t+3)}+U^{(2t+2)})"),
        _twist(5, 1, 5, 1, r"3125+6250\ (U^{(3t+3)}+U^{(2t+2)} )"),
        _twist(5, 2, 1, 5, r"15625"),
        _twist(5, 2, 5, 1, r"15625"),
        _twist(5, 3, 1, 5, r"625+3750\ (U^{(t)}+U^{(2t)}+U^{(3t)}+U^{(4t)})"),
        _twist(5, 3, 5, 1, r"625+3750\ (U^{(t+1)}+U^{(2t+2)}+U^{(3t+3)}+U^{(4t+4)})"),
        _twist(5, 4, 1, 5, r"625+3750\ (U^{(t+3)}+U^{(2t+1)}+U^{(3t+4)}+U^{(4t+2)})"),
    ],
    "twist-p7": [
        _twist(7, 1, 1, 7, r"2401+19208\ ( U^{(t+3)}+U^{(4t+5)}+U^{(2t+6)} +U^{(5t+1)}+U^{(6t+4)}+U^{(3t+2)})"),
        _twist(7, 1, 7, 1, r"2401+19208\ (U^{(t+1)}+U^{(2t+2)}+U^{(3t+3)}+U^{(4t+4)}+U^{(5t+5)}+U^{(6t+6)})"),
        _twist(7, 2, 1, 7, r"117649"),
        _twist(7, 2, 7, 1, r"117649"),
        _twist(7, 3, 1, 7, r"2401+19208\ (U^{(3t+4)}+U^{(5t+2)}+U^{(6t+1)}+U^{(t+6)}+U^{(2t+5)}+U^{(4t+3)} )"),
        _twist(7, 3, 7, 1, r"2401+19208\ ( U^{(t+1)}+U^{(2t+2)}+U^{(3t+3)}+U^{(4t+4)}+U^{(5t+5)}+U^{(6t+6)} )"),
        _twist(7, 4, 1, 7, r"2401+19208\ ( U^{(t+2)}+U^{(2t+4)}+U^{(3t+6)}+U^{(4t+1)}+U^{(5t+3)}+U^{6t+5)} )"),
        _twist(7, 4, 7, 1, r"2401+19208\ ( U^{(t+1)}+U^{(2t+2)}+U^{(3t+3)}+U^{(4t+4)}+U^{(5t+5)}+U^{(6t+6)} )"),
        _twist(7, 5, 1, 7, r"16807+33614\ ( U^{(3t+3)}+U^{(5t+5)}+U^{(6t+6)})"),
        _twist(7, 5, 7, 1, r"16807+33614\ (U^{(t+1)}+U^{(2t+2)}+U^{(4t+4)})"),
        _twist(7, 6, 1, 7, r"117649"),
        _twist(7, 6, 7, 1, r"117649"),
    ],
}

TABLE_NAMES = tuple(TABLES)
