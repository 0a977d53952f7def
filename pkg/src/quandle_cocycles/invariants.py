"""State-sum cocycle invariants, U-polynomial rendering and closed forms.

The invariant of a diagram is the multiset, over all colorings (2-cocycles)
or all region colorings (3-cocycles), of the signed sum of cocycle values at
the crossings. Brute force is vectorised over blocks of colorings with one of
the batched backends from :mod:`tables`.
"""

from __future__ import annotations

import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from . import poly as P
from .cocycles import InvalidParams, PolyCocycle
from .knots import ColoringSpace, KnotDiagram, build_torus, crossing_data, extend_shadow
from .ring import QuandleRing, RingElem, SpecError
from .tables import CoeffArith, backend_for, can_tabulate

ROW_LIMIT = 1 << 24  # full enumeration refused above this many (shadow) colorings
CHUNK_ROWS = 1 << 20


class TooLarge(RuntimeError):
    """Full enumeration was requested above ROW_LIMIT without ``force``."""


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("QCL_THREADS", "1")))
    except ValueError:
        return 1


@dataclass
class InvariantMultiset:
    ring: QuandleRing
    counts: dict = field(default_factory=dict)  # RingElem -> multiplicity

    @classmethod
    def from_values(cls, ring: QuandleRing, values: Iterable[RingElem]) -> "InvariantMultiset":
        out = cls(ring)
        for v in values:
            out.add(v)
        return out

    def add(self, value: RingElem, mult: int = 1) -> None:
        if mult:
            self.counts[value] = self.counts.get(value, 0) + mult

    def scaled(self, k: int) -> "InvariantMultiset":
        return InvariantMultiset(self.ring, {v: m * k for v, m in self.counts.items()})

    def negate(self) -> "InvariantMultiset":
        return InvariantMultiset(self.ring, {-v: m for v, m in self.counts.items()})

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def items(self) -> list[tuple[RingElem, int]]:
        """(value, multiplicity) pairs in canonical order (ascending element index)."""
        return sorted(self.counts.items(), key=lambda kv: kv[0].index)

    def __eq__(self, other):
        if not isinstance(other, InvariantMultiset):
            return NotImplemented
        return self.ring == other.ring and self.counts == other.counts

    def render_upoly(self) -> str:
        terms = []
        for v, m in self.items():
            terms.append(str(m) if v.is_zero() else f"{m} U^({v})")
        return " + ".join(terms) if terms else "0"

    __str__ = render_upoly

    def to_json(self) -> dict:
        return {
            "counts": [{"value": str(v), "mult": m} for v, m in self.items()],
            "total": self.total,
        }


render_upoly = InvariantMultiset.render_upoly


# -- U-polynomial parsing --------------------------------------------------------


def _strip_exponent(text: str) -> str:
    s = text.strip()
    while s.startswith("{") or s.startswith("("):
        s = s[1:]
    while s.endswith("}") or s.endswith(")"):
        s = s[:-1]
    return s


def parse_upoly(ring: QuandleRing, text: str) -> InvariantMultiset:
    """Parse U-polynomial text such as ``81 + 324 (U^(t+2)+U^(1+2t))``.

    Accepts LaTeX-ish input (``\\ `` spacing, ``U^{(t+1)}``, ``U^t``) and
    tolerates an unbalanced parenthesis inside an exponent.
    """
    s = text.replace("\\ ", " ").replace("\\", "")
    s = re.sub(r"\s+", "", s)
    out = InvariantMultiset(ring)
    pos = 0

    def exponent(i):
        # returns (element text, next position)
        if s[i] in "{(":
            opener = s[i]
            closer = "}" if opener == "{" else ")"
            depth, j = 0, i
            while j < len(s):
                if s[j] == opener:
                    depth += 1
                elif s[j] == closer:
                    depth -= 1
                    if depth == 0:
                        return s[i:j + 1], j + 1
                j += 1
            raise SpecError(f"unbalanced exponent in {text!r}")
        m = re.match(r"[0-9t^]+", s[i:])
        if not m:
            raise SpecError(f"bad exponent at {s[i:]!r}")
        return m.group(0), i + len(m.group(0))

    def monomial(i):
        if not s.startswith("U^", i):
            raise SpecError(f"expected U^ at {s[i:]!r}")
        raw, j = exponent(i + 2)
        return ring.elem(_strip_exponent(raw)), j

    while pos < len(s):
        if s[pos] == "+":
            pos += 1
            continue
        m = re.match(r"\d+", s[pos:])
        coeff = 1
        if m:
            coeff = int(m.group(0))
            pos += len(m.group(0))
        if pos < len(s) and s[pos] == "(":
            pos += 1
            while s[pos] != ")":
                if s[pos] == "+":
                    pos += 1
                    continue
                v, pos = monomial(pos)
                out.add(v, coeff)
            pos += 1
        elif s.startswith("U^", pos):
            v, pos = monomial(pos)
            out.add(v, coeff)
        elif m:
            out.add(ring.zero, coeff)
        else:
            raise SpecError(f"cannot parse U-polynomial at {s[pos:]!r}")
    return out


# -- brute force engine ------------------------------------------------------------


def _weights(D: KnotDiagram, f: PolyCocycle, be, arcs: list, base=None):
    """Signed crossing sums for a batch.

    ``arcs[i]`` holds the colors of arc i; ``base`` the color of region 0.
    Shapes only need to broadcast against each other.
    """
    faces: list = [None] * D.n_faces
    if f.n == 3:
        faces[0] = base
        for new, known, arc, fwd in D.shadow_plan(0):
            faces[new] = (be.op if fwd else be.unop)(faces[known], arcs[arc])
    acc = None
    for c in D.crossings:
        cols = [arcs[c.source_arc], arcs[c.over_arc]]
        if f.n == 3:
            cols.insert(0, faces[c.source_face])
        w = f.eval_batch(be, cols)
        if acc is None:
            acc = w if c.sign > 0 else be.neg(w)
        else:
            acc = be.add(acc, w) if c.sign > 0 else be.sub(acc, w)
    return acc


def _count_keys(be, values, N) -> dict:
    keys = np.ravel(be.keys(values))
    if N <= 1 << 22:
        bc = np.bincount(keys, minlength=N)
        nz = np.nonzero(bc)[0]
        return dict(zip(nz.tolist(), bc[nz].tolist()))
    u, c = np.unique(keys, return_counts=True)
    return dict(zip(u.tolist(), c.tolist()))


def state_sum(D: KnotDiagram, f: PolyCocycle, threads: Optional[int] = None,
              force: bool = False) -> InvariantMultiset:
    """The cocycle invariant by full enumeration of (shadow) colorings."""
    if f.n not in (2, 3):
        raise ValueError("state sums are defined for 2- and 3-cocycles")
    ring = f.ring
    if not D.crossings:
        n = ring.order ** (f.n - 1)
        return InvariantMultiset(ring, {ring.zero: n})
    space = ColoringSpace(D, ring)
    N = ring.order
    rows = space.count * (N if f.n == 3 else 1)
    if rows > ROW_LIMIT and not force:
        raise TooLarge(f"{rows} colorings exceed the full-enumeration limit {ROW_LIMIT}; sample instead")
    be = backend_for(ring)
    tab = can_tabulate(ring)
    if f.n == 3 and not tab:
        raise TooLarge("3-cocycle brute force needs a tabulated ring")
    per = max(1, CHUNK_ROWS // (N if f.n == 3 else 1))
    bounds = [(lo, min(lo + per, space.count)) for lo in range(0, space.count, per)]

    def work(b):
        V = be.from_coeffs(space.coeff_block(*b))  # (M, arcs) indices or (M, arcs, d)
        if f.n == 2:
            arcs = [V[:, i] for i in range(D.n_arcs)]
            return _count_keys(be, _weights(D, f, be, arcs), N)
        arcs = [V[:, i:i + 1] for i in range(D.n_arcs)]
        base = np.arange(N, dtype=np.int64)[None, :]
        return _count_keys(be, _weights(D, f, be, arcs, base), N)

    threads = threads or default_threads()
    if threads > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(threads) as ex:
            parts = list(ex.map(work, bounds))
    else:
        parts = [work(b) for b in bounds]
    total: dict[int, int] = {}
    for part in parts:
        for k, m in part.items():
            total[k] = total.get(k, 0) + m
    return InvariantMultiset(ring, {_elem_from_key(ring, k): m for k, m in sorted(total.items())})


def _elem_from_key(ring, k):
    return ring.from_index(int(k))


def invariant_2(D: KnotDiagram, f: PolyCocycle, **kw) -> InvariantMultiset:
    if f.n != 2:
        raise ValueError("invariant_2 needs a 2-cocycle")
    return state_sum(D, f, **kw)


def invariant_3(D: KnotDiagram, f: PolyCocycle, **kw) -> InvariantMultiset:
    if f.n != 3:
        raise ValueError("invariant_3 needs a 3-cocycle")
    return state_sum(D, f, **kw)


def state_sum_scalar(D: KnotDiagram, f: PolyCocycle) -> InvariantMultiset:
    """Reference implementation, one coloring at a time with scalar arithmetic."""
    ring = f.ring
    out = InvariantMultiset(ring)
    for col in ColoringSpace(D, ring):
        if f.n == 2:
            w = ring.zero
            for c in D.crossings:
                v = f(col.colors[c.source_arc], col.colors[c.over_arc])
                w = w + v if c.sign > 0 else w - v
            out.add(w)
            continue
        for x0 in ring:
            sc = extend_shadow(D, col, (0, x0))
            w = ring.zero
            for i in range(len(D.crossings)):
                x, y, z, eps = crossing_data(sc, i)
                w = w + f(x, y, z) if eps > 0 else w - f(x, y, z)
            out.add(w)
    return out


# -- torus knots ---------------------------------------------------------------------


def _xi_ring_check(ring: QuandleRing, m: int):
    if ring != QuandleRing(ring.p, P.xi(abs(m), ring.p)):
        raise InvalidParams(f"ring is not Z_{ring.p}[t]/(xi_{abs(m)})")


def _divisibility(ring: QuandleRing, total: int):
    if not (ring.t ** total == ring.one):
        raise InvalidParams(f"g(t) does not divide 1-t^{total}")


def closed_form_torus2(ring: QuandleRing, m: int, exps: tuple[int, int]) -> InvariantMultiset:
    """``{ |X| copies of (t^2 xi'_m)^{a2} s^{a1+a2} : s in X }``, negated for m < 0."""
    _xi_ring_check(ring, m)
    a1, a2 = exps
    _divisibility(ring, a1 + a2)
    coef = (ring.t ** 2 * ring.xi_derivative(abs(m))) ** a2
    out = InvariantMultiset(ring)
    for s in ring:
        out.add(coef * s ** (a1 + a2), ring.order)
    return out.negate() if m < 0 else out


def torus3_coefficient(ring: QuandleRing, m: int, exps: tuple[int, int]) -> RingElem:
    """``sum_{k=1}^m xi_k^{a1} (-t)^{k a2}``, the coloring-independent factor of a contribution."""
    a1, a2 = exps
    mt = -ring.t
    total = ring.zero
    for k in range(1, abs(m) + 1):
        total = total + ring.xi(k) ** a1 * mt ** (k * a2)
    return total


def contribution_torus3(a: RingElem, b: RingElem, m: int, exps: tuple[int, int]) -> RingElem:
    """Contribution of the T(2,m) coloring with top color vector (a, b)."""
    a1, a2 = exps
    return (a - b) ** (a1 + a2) * torus3_coefficient(a.ring, m, exps)


def torus3_from_contribution(ring: QuandleRing, m: int, exps: tuple[int, int]) -> InvariantMultiset:
    """The multiset implied by the contribution formula, with no divisibility hypothesis.

    For each s in X there are |X| top vectors with a - b = s and |X| base
    region colors, hence the multiplicity |X|^2 per s.
    """
    _xi_ring_check(ring, m)
    a1, a2 = exps
    K = torus3_coefficient(ring, m, exps)
    out = InvariantMultiset(ring)
    for s in ring:
        out.add(s ** (a1 + a2) * K, ring.order ** 2)
    return out


def closed_form_torus3(ring: QuandleRing, m: int, exps: tuple[int, int]) -> InvariantMultiset:
    """``{ |X|^2 copies of (-t xi'_m)^{a1} s^{a1+a2} : s in X }`` (needs xi_m | 1-t^{a1+a2})."""
    _xi_ring_check(ring, m)
    a1, a2 = exps
    _divisibility(ring, a1 + a2)
    coef = (-ring.t * ring.xi_derivative(m)) ** a1
    out = InvariantMultiset(ring)
    for s in ring:
        out.add(coef * s ** (a1 + a2), ring.order ** 2)
    return out


@dataclass
class SampleReport:
    samples: int
    agreed: int
    mismatches: list

    @property
    def ok(self) -> bool:
        return self.agreed == self.samples


def sample_torus3(ring: QuandleRing, m: int, f: PolyCocycle, samples: int = 10_000,
                  seed: int = 20080101) -> SampleReport:
    """Random shadow colorings of T(2,m): brute-force weight vs the contribution formula."""
    D = build_torus(m)
    space = ColoringSpace(D, ring)
    rng = np.random.default_rng(seed)
    be = CoeffArith(ring)
    V = space.random_block(samples, rng)  # (S, arcs, d)
    base = rng.integers(0, ring.p, (samples, ring.d))
    arcs = [V[:, i, :] for i in range(D.n_arcs)]
    W = _weights(D, f, be, arcs, base)
    top = D.levels[-1]
    K = torus3_coefficient(ring, m, f.exponents[:2])
    a_col = V[:, D.edge_arc[top[0]], :]
    b_col = V[:, D.edge_arc[top[1]], :]
    expect = be.mul(be.pow(be.sub(a_col, b_col), sum(f.exponents[:2])), np.array(K.coeffs, dtype=np.int64))
    same = np.all(W == expect, axis=-1)
    bad = np.nonzero(~same)[0][:5]
    mism = [{"a": str(be.to_elems(a_col[i])[0]), "b": str(be.to_elems(b_col[i])[0]),
             "brute": str(be.to_elems(W[i])[0]), "formula": str(be.to_elems(expect[i])[0])} for i in bad]
    return SampleReport(samples, int(same.sum()), mism)


# -- twist knots --------------------------------------------------------------------------


def twist_coefficient(ring: QuandleRing, n: int, exps: tuple[int, int]) -> RingElem:
    """``-n t^{-a1} + (1 + n(1-t))^{a1+a2}``."""
    a1, a2 = exps
    t = ring.t
    return -(ring(n) * t ** (-a1)) + (ring.one + ring(n) * (ring.one - t)) ** (a1 + a2)


def closed_form_twist(ring: QuandleRing, n: int, exps: tuple[int, int],
                      s_exponent: Optional[int] = None) -> InvariantMultiset:
    """``{ |X|^2 copies of c * s^e : s in X }`` with c from :func:`twist_coefficient`.

    ``e`` defaults to ``a1 + a2``, which is what brute force reproduces; pass
    ``s_exponent=2`` for the squared variant.
    """
    if n % ring.p == 0:
        raise InvalidParams(f"p={ring.p} divides n={n}: degenerate modulus")
    expected = QuandleRing(ring.p, P.twist_modulus(n, ring.p))
    if ring != expected:
        raise InvalidParams(f"ring is not Z_{ring.p}[t]/(t-{n}(1-t)^2)")
    e = sum(exps) if s_exponent is None else s_exponent
    coef = twist_coefficient(ring, n, exps)
    out = InvariantMultiset(ring)
    for s in ring:
        out.add(coef * s ** e, ring.order ** 2)
    return out
