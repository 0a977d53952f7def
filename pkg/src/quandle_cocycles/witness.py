"""Explicit cycles paired with polynomial cocycles.

A nonzero value ``f(C)`` for a quandle cycle ``C`` and a quandle cocycle
``f`` shows that the class of ``f`` is nonzero, since coboundaries vanish on
cycles. Cycles come either from colored knot diagrams (dimensions 2 and 3)
or from the degree-raising chain maps below (dimensions 4 and 2r+1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .chains import Chain, CocycleCheck, is_cycle, pair
from .cocycles import PolyCocycle, build
from .invariants import _weights, torus3_coefficient, twist_coefficient
from .knots import (ColoringSpace, KnotDiagram, build_torus, build_twist, colored_chain2, colored_chain3,
                    extend_shadow)
from .linalg import solve_mod_p
from .ring import QuandleRing, RingElem, twist_ring, xi_ring
from .tables import backend_for, can_tabulate


class WitnessError(RuntimeError):
    pass


class ConditionViolated(WitnessError):
    def __init__(self, message: str, index: int):
        super().__init__(f"{message} (index {index})")
        self.index = index


class CycleFailure(WitnessError):
    pass


class PairingMismatch(WitnessError):
    pass


class NonUnitPairing(WitnessError):
    pass


# -- chain maps ---------------------------------------------------------------------


@dataclass(frozen=True)
class ChainMapSpec:
    """``h_a`` (kind "h"), the orbit sum ``h'_a`` (kind "h_prime") or ``h_s`` (kind "h_s").

    For ``h_s`` the sequence ``y_0 .. y_{L-1}`` is read cyclically:
    ``s = sum_i (y_i, y_{i+1})`` and the condition is ``y_{i+1} = y_{i-1} * y_i``
    for every i mod L.
    """

    kind: str
    a: Optional[RingElem] = None
    period: int = 0
    seq: tuple = ()
    summands: Optional[int] = None  # h_prime only; defaults to the period

    @property
    def degree(self) -> int:
        return 2 if self.kind == "h_s" else 1

    def validate(self) -> None:
        if self.kind == "h":
            return
        if self.kind == "h_prime":
            a = self.a
            ring = a.ring
            for i, x in enumerate(ring):
                y = x
                for _ in range(self.period):
                    y = ring.quandle_op(y, a)
                if y != x:
                    raise ConditionViolated(f"(*_a)^{self.period}(x) != x for x = {x}", i)
            return
        if self.kind == "h_s":
            y = self.seq
            L = len(y)
            if L < 2:
                raise ConditionViolated("h_s needs at least two elements", 0)
            ring = y[0].ring
            for i in range(L):
                if y[(i + 1) % L] != ring.quandle_op(y[(i - 1) % L], y[i]):
                    raise ConditionViolated("y_{i+1} != y_{i-1} * y_i", i)
            return
        raise ValueError(f"unknown chain map kind {self.kind!r}")

    def s_chain(self) -> Chain:
        y, L = self.seq, len(self.seq)
        return Chain.from_terms(2, ((1, (y[i], y[(i + 1) % L])) for i in range(L)))


def h_a(a: RingElem) -> ChainMapSpec:
    return ChainMapSpec("h", a=a)


def h_prime(a: RingElem, period: int, summands: Optional[int] = None) -> ChainMapSpec:
    return ChainMapSpec("h_prime", a=a, period=period, summands=summands)


def h_s(seq: Sequence[RingElem]) -> ChainMapSpec:
    return ChainMapSpec("h_s", seq=tuple(seq))


def xi_sequence(ring: QuandleRing, m: int) -> tuple[RingElem, ...]:
    """``xi_0, .., xi_{m-1}``; in Z_p[t]/(xi_m) it closes up since xi_m = 0 and xi_{m+1} = 1."""
    return tuple(ring.xi(k) for k in range(m))


def apply_chain_map(spec: ChainMapSpec, c: Chain, validate: bool = True) -> Chain:
    if validate:
        spec.validate()
    out = Chain(c.dim + spec.degree)
    if spec.kind == "h":
        for tup, k in c.terms.items():
            out._add_term(tup + (spec.a,), k)
    elif spec.kind == "h_prime":
        img = Chain(c.dim + 1, {tup + (spec.a,): k for tup, k in c.terms.items()})
        for _ in range(spec.summands or spec.period):
            out += img
            img = img.act(spec.a)
    else:
        s = spec.s_chain()
        for tup, k in c.terms.items():
            for pair_, j in s.terms.items():
                out._add_term(tup + pair_, k * j)
    return out


# -- reports ---------------------------------------------------------------------------


@dataclass
class WitnessReport:
    cycle: Chain
    cocycle: Optional[PolyCocycle]
    pairing: Optional[RingElem]
    verdict: str  # "nontrivial" | "inconclusive"
    cycle_ok: bool
    cocycle_check: Optional[CocycleCheck]
    details: dict = field(default_factory=dict)
    transcript: list = field(default_factory=list)

    def to_json(self) -> dict:
        cc = self.cocycle_check
        f = self.cocycle
        return {
            "verdict": self.verdict,
            "ring": None if f is None else f.ring.to_json(),
            "cocycle": None if f is None else f.spec(),
            "cycle_dim": self.cycle.dim,
            "cycle_terms": len(self.cycle),
            "cycle_ok": self.cycle_ok,
            "cocycle_check": None if cc is None else {"ok": cc.ok, "mode": cc.mode, "checked": cc.checked},
            "pairing": None if self.pairing is None else str(self.pairing),
            "details": {k: str(v) if isinstance(v, RingElem) else v for k, v in self.details.items()},
        }


def _verdict(cycle_ok: bool, check: Optional[CocycleCheck], value: RingElem) -> str:
    ok = cycle_ok and (check is None or check.ok) and not value.is_zero()
    return "nontrivial" if ok else "inconclusive"


# -- H^4 ---------------------------------------------------------------------------------


def build_C3(ring: QuandleRing, m: int) -> Chain:
    """``sum_{k=0}^{m-1} (0, xi_k, xi_{k+1})``."""
    if m < 2:
        raise ValueError("m must be >= 2")
    z = ring.zero
    return Chain.from_terms(3, ((1, (z, ring.xi(k), ring.xi(k + 1))) for k in range(m)))


def build_C4_prime(ring: QuandleRing, m: int, summands: Optional[int] = None) -> Chain:
    spec = h_prime(ring.zero, m, summands)
    return apply_chain_map(spec, build_C3(ring, m))


def h4_closed_formula(ring: QuandleRing, m: int, a1: int, a3: int) -> RingElem:
    """``-m t^{a3} (1+t^{a1})^{-1} (1+t^{a3})^{-1}``."""
    t, one = ring.t, ring.one
    return -(ring(m) * t ** a3 * (one + t ** a1).inverse() * (one + t ** a3).inverse())


def witness_H4(n: int, certify_mode: str = "auto") -> WitnessReport:
    if n < 1:
        raise ValueError("n must be >= 1")
    m = 2 ** n + 1
    ring = xi_ring(2, m)
    a1 = a2 = 2 ** (n - 1)
    a3 = 1
    log = [f"X = Z_2[t]/(xi_{m}), |X| = {ring.order}"]
    spec = h_prime(ring.zero, m)
    spec.validate()
    log.append(f"(*_0)^{m} = id on X: ok")
    C3 = build_C3(ring, m)
    C4 = apply_chain_map(spec, C3, validate=False)
    ok3, ok4 = is_cycle(C3), is_cycle(C4)
    log.append(f"C3: {len(C3)} terms, cycle={ok3}; C4': {len(C4)} terms, cycle={ok4}")
    if not (ok3 and ok4):
        raise CycleFailure("C3 or C4' is not a quandle cycle")
    f = build(ring, (a1, a2, a3, 0))
    check = f.certify(mode=certify_mode)
    log.append(f"cocycle {f}: {check.mode} check ok={check.ok} ({check.checked} tuples)")
    direct = pair(f.as_cochain(), C4)
    closed = h4_closed_formula(ring, m, a1, a3)
    log.append(f"f(C4') direct = {direct}; closed formula = {closed}")
    if direct != closed:
        raise PairingMismatch(f"direct pairing {direct} != closed formula {closed}")
    return WitnessReport(C4, f, direct, _verdict(ok4, check, direct), ok4, check,
                         {"m": m, "closed_formula": closed}, log)


# -- H^{2r+1} ----------------------------------------------------------------------------


def odd_modulus(p: int, n: int) -> int:
    """m = 2^n + 1 for p = 2 and (p^n + 1)/2 for odd p."""
    return 2 ** n + 1 if p == 2 else (p ** n + 1) // 2


def odd_cocycle(ring: QuandleRing, r: int, q: int) -> PolyCocycle:
    """``(x_1-x_2)(x_2-x_3)^q ... (x_{2r}-x_{2r+1})^q`` as a (2r+1)-cocycle."""
    exps = []
    for _ in range(r):
        exps += [1, q]
    return build(ring, tuple(exps) + (0,))


def witness_odd(r: int, p: int, n: int, certify_mode: str = "auto") -> WitnessReport:
    if r < 1 or n < 1:
        raise ValueError("r and n must be >= 1")
    m = odd_modulus(p, n)
    ring = xi_ring(p, m)
    q = p ** n
    spec = h_s(xi_sequence(ring, m))
    spec.validate()
    log = [f"X = Z_{p}[t]/(xi_{m}), |X| = {ring.order}; s = sum (xi_k, xi_k+1), k < {m}: conditions ok"]
    C = Chain.single((ring.zero,))
    first = None
    value = None
    stages = []
    for k in range(1, r + 1):
        C = apply_chain_map(spec, C, validate=False)
        ok = is_cycle(C)
        if not ok:
            raise CycleFailure(f"C_{2 * k + 1} is not a quandle cycle")
        f = odd_cocycle(ring, k, q)
        value = pair(f.as_cochain(), C)
        if first is None:
            first = value
            expected = value
        else:
            expected = stages[-1] * first
        log.append(f"C_{2 * k + 1}: {len(C)} terms, cycle ok; f_{2 * k + 1}(C) = {value}")
        if value != expected:
            raise PairingMismatch(f"f_{2 * k + 1}(C_{2 * k + 1}) = {value} != {expected}")
        if not ring.is_unit(value):
            raise NonUnitPairing(f"f_{2 * k + 1}(C_{2 * k + 1}) = {value} is not a unit")
        stages.append(value)
    check = f.certify(mode=certify_mode)
    log.append(f"cocycle {f}: {check.mode} check ok={check.ok} ({check.checked} tuples)")
    txi = ring.t * ring.xi_derivative(m)
    details = {"m": m, "f3(C3)": first, "t*xi'_m": txi, "stages": [str(v) for v in stages]}
    return WitnessReport(C, f, value, _verdict(True, check, value), True, check, details, log)


# -- H^2 and H^3 through knot colorings ---------------------------------------------------------


def coloring_with(D: KnotDiagram, ring: QuandleRing, fixed: dict):
    """A coloring with prescribed colors on some arcs (``{arc: RingElem}``), or None."""
    space = ColoringSpace(D, ring)
    d = ring.d
    cols, target = [], []
    for arc, val in fixed.items():
        cols += range(arc * d, (arc + 1) * d)
        target += list(val.coeffs)
    G = solve_mod_p(space.basis[:, cols].T, np.array(target), ring.p)
    if G is None:
        return None
    V = (G @ space.basis % ring.p).reshape(D.n_arcs, d)
    return space.coloring_from_coeffs(V)


def torus_top_coloring(D: KnotDiagram, ring: QuandleRing, a: RingElem, b: RingElem):
    top = D.levels[-1]
    return coloring_with(D, ring, {D.edge_arc[top[0]]: a, D.edge_arc[top[1]]: b})


def left_region(D: KnotDiagram) -> int:
    """Region to the left of the braid in the picture (right of the downward strand 0)."""
    return D.edge_faces[D.levels[-1][0]][1]


CASE3_LISTS = {
    "a": (3, (1, 2)),
    "b": (5, (1, 3, 4)),
    "c": (7, (1, 3, 4, 5)),
    "d": (11, (3, 4, 5, 7, 8, 10)),
    "e": (13, (1, 3, 5, 8, 9, 10, 11)),
}


def _torus_case(p: int, n: int, dim: int) -> WitnessReport:
    m = odd_modulus(p, n)
    ring = xi_ring(p, m)
    q = p ** n
    D = build_torus(m)
    col = torus_top_coloring(D, ring, ring.one, ring.zero)
    log = [f"X = Z_{p}[t]/(xi_{m}); T(2,{m}) colored from top vector (1,0)"]
    if dim == 2:
        f = build(ring, (q, 1))
        cycle = colored_chain2(col)
    else:
        f = build(ring, (1, q, 0))
        cycle = colored_chain3(extend_shadow(D, col, (left_region(D), ring.zero)))
    ok = is_cycle(cycle)
    check = f.certify()
    value = pair(f.as_cochain(), cycle)
    details = {"m": m, "xi'_m": ring.xi_derivative(m)}
    if dim == 3:
        details["coefficient"] = torus3_coefficient(ring, m, (1, q))
    log.append(f"cocycle {f}: {check.mode} check ok={check.ok}; colored chain cycle={ok}; value {value}")
    return WitnessReport(cycle, f, value, _verdict(ok, check, value), ok, check, details, log)


def twist_case(p: int, n: int) -> WitnessReport:
    """Coefficient test plus a diagram witness on the twist knot k(2n), with (a1, a2) = (1, p)."""
    if n % p == 0:
        raise ValueError(f"p={p} divides n={n}: t - n(1-t)^2 degenerates")
    ring = twist_ring(p, n)
    f = build(ring, (1, p, 0))
    coef = twist_coefficient(ring, n, (1, p))
    D = build_twist(n)
    log = [f"X = Z_{p}[t]/(t-{n}(1-t)^2); coefficient -n t^-1 + (1+n(1-t))^(1+p) = {coef}"]
    check = f.certify()
    cycle, value, ok = Chain(3), ring.zero, True
    if can_tabulate(ring):
        space = ColoringSpace(D, ring)
        be = backend_for(ring)
        step = 1 << 16
        for lo in range(0, space.count, step):
            V = space.coeff_block(lo, min(lo + step, space.count))
            idx = be.from_coeffs(V)
            w = _weights(D, f, be, [idx[:, i] for i in range(D.n_arcs)], np.zeros(len(idx), dtype=np.int64))
            hit = np.nonzero(np.asarray(w) != 0)[0]
            if len(hit):
                col = space.coloring_from_coeffs(V[hit[0]])
                cycle = colored_chain3(extend_shadow(D, col, (0, ring.zero)))
                ok = is_cycle(cycle)
                value = pair(f.as_cochain(), cycle)
                break
    log.append(f"witness coloring value {value}; cycle={ok}")
    if coef.is_zero() != value.is_zero():
        raise PairingMismatch(f"coefficient {coef} and witness value {value} disagree on vanishing")
    return WitnessReport(cycle, f, value, _verdict(ok, check, value), ok, check,
                         {"p": p, "n": n, "coefficient": coef}, log)


def check_h23_nontriviality(case: str, n: int, p: Optional[int] = None, dim: int = 3) -> WitnessReport:
    """Cases "1" (p = 2), "2" (odd p), "3a".."3e" (twist rings) and "3" (any odd p, unlisted)."""
    if case == "1":
        return _torus_case(2, n, dim)
    if case == "2":
        if p is None or p == 2:
            raise ValueError("case 2 needs an odd prime p")
        return _torus_case(p, n, dim)
    if case.startswith("3"):
        if dim != 3:
            raise ValueError("case 3 concerns 3-cocycles")
        sub = case[1:]
        if sub:
            p = CASE3_LISTS[sub][0]
        if p is None:
            raise ValueError("case 3 needs p")
        if n % p == 0:
            # t - n(1-t)^2 = t: no quandle, hence no witness
            return WitnessReport(Chain(3), None, None, "inconclusive", False, None,
                                 {"p": p, "n": n, "reason": "p divides n, the modulus degenerates to t"},
                                 [f"p={p} divides n={n}: no Alexander quandle"])
        rep = twist_case(p, n)
        if sub:
            rep.details["listed"] = (n % p) in CASE3_LISTS[sub][1]
        return rep
    raise ValueError(f"unknown case {case!r}")
