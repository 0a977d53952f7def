"""Polynomial cocycles ``f = (x_1-x_2)^{a_1} ... (x_{n-1}-x_n)^{a_{n-1}} x_n^{a_n}``.

Every ``a_i`` with ``i < n`` is a power of p, and ``a_n`` is either 0 or a
power of p. With ``a_n = 0`` the function is always a quandle n-cocycle;
otherwise it is one when ``g(t)`` divides ``1 - t^a`` with ``a = sum a_i``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import poly as P
from .chains import DEFAULT_SAMPLES, DEFAULT_SEED, EXHAUSTIVE_LIMIT, CocycleCheck, Cochain, is_quandle_cocycle
from .ring import QuandleRing, RingElem, SpecError
from .tables import RingTables


class InvalidParams(ValueError):
    """The exponent vector does not satisfy the hypotheses for a cocycle."""


def p_log(a: int, p: int):
    """``m`` with ``p^m = a``, or None."""
    if a < 1:
        return None
    m = 0
    while a % p == 0:
        a //= p
        m += 1
    return m if a == 1 else None


@dataclass(frozen=True)
class PolyCocycle:
    """The product formula with exponents ``(a_1, ..., a_n)``.

    Constructing the dataclass directly skips validation (useful for negative
    controls); use :func:`build` for the checked constructor.
    """

    ring: QuandleRing
    exponents: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def total_degree(self) -> int:
        return sum(self.exponents)

    def __call__(self, *xs: RingElem) -> RingElem:
        return self.eval(xs)

    def eval(self, xs: Sequence[RingElem]) -> RingElem:
        xs = tuple(xs)
        if len(xs) != self.n:
            raise ValueError(f"{self.n}-cocycle evaluated on {len(xs)} entries")
        ring = self.ring
        a = self.exponents
        val = xs[-1] ** a[-1] if a[-1] else ring.one
        for i in range(self.n - 1):
            if val.is_zero():
                break
            val = val * (xs[i] - xs[i + 1]) ** a[i]
        return val

    def eval_batch(self, be, cols) -> np.ndarray:
        """Vectorised evaluation on columns of batched elements (see ``tables``)."""
        a = self.exponents
        shape = np.shape(cols[0]) if isinstance(be, RingTables) else np.shape(cols[0])[:-1]
        val = be.pow(cols[-1], a[-1]) if a[-1] else be.const(self.ring.one, shape)
        for i in range(self.n - 1):
            val = be.mul(val, be.pow(be.sub(cols[i], cols[i + 1]), a[i]))
        return val

    def as_cochain(self) -> Cochain:
        return Cochain(self.ring, self.n, self.__call__, self.eval_batch)

    def certify(self, mode: str = "auto", samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
                limit: int = EXHAUSTIVE_LIMIT) -> CocycleCheck:
        return is_quandle_cocycle(self.as_cochain(), mode=mode, samples=samples, seed=seed, limit=limit)

    def spec(self) -> str:
        return "d:" + ",".join(map(str, self.exponents))

    def to_json(self) -> dict:
        return {"ring": self.ring.to_json(), "exponents": list(self.exponents)}

    def __str__(self):
        factors = []
        names = [f"x{i + 1}" for i in range(self.n)]
        for i, e in enumerate(self.exponents[:-1]):
            factors.append(f"({names[i]}-{names[i + 1]})" + (f"^{e}" if e != 1 else ""))
        if self.exponents[-1]:
            e = self.exponents[-1]
            factors.append(names[-1] + (f"^{e}" if e != 1 else ""))
        return "*".join(factors)


def check_params(ring: QuandleRing, exponents: Sequence[int]) -> None:
    """Raise InvalidParams naming the first violated hypothesis."""
    p = ring.p
    a = tuple(exponents)
    if len(a) < 1:
        raise InvalidParams("need at least one exponent")
    for i, e in enumerate(a[:-1]):
        if p_log(e, p) is None:
            raise InvalidParams(f"a{i + 1}={e} not a power of p={p}")
    if a[-1] == 0:
        return
    if p_log(a[-1], p) is None:
        raise InvalidParams(f"a{len(a)}={a[-1]} is neither 0 nor a power of p={p}")
    total = sum(a)
    one_minus = P.sub((1,), P.monomial(total, 1, p), p)
    if not P.divides(ring.g, one_minus, p):
        raise InvalidParams(f"g(t) does not divide 1-t^{total}")


def build(ring: QuandleRing, exponents: Sequence[int]) -> PolyCocycle:
    check_params(ring, exponents)
    return PolyCocycle(ring, tuple(int(e) for e in exponents))


def parse_cocycle(text: str, dim: int | None = None) -> tuple[int, ...]:
    """Parse ``d:4,1`` into an exponent vector of length ``dim``.

    With ``dim - 1`` exponents given, the last exponent ``a_n`` is 0.
    """
    m = re.fullmatch(r"\s*d:\s*(\d+(?:\s*,\s*\d+)*)\s*", text)
    if not m:
        raise SpecError(f"cannot parse cocycle spec {text!r} (expected e.g. d:4,1)")
    exps = tuple(int(x) for x in m.group(1).split(","))
    if dim is None:
        return exps
    if len(exps) == dim:
        return exps
    if len(exps) == dim - 1:
        return exps + (0,)
    raise SpecError(f"{len(exps)} exponents do not fit a {dim}-cocycle")
