"""Finite Alexander quandles ``X = Z_p[t, t^-1]/(g(t))``.

Elements are canonical residues of degree ``< deg g``. Because ``g(0)`` is
required to be nonzero, ``t`` is a unit and the Laurent ring coincides with
the ordinary quotient ``Z_p[t]/(g)``. The modulus may be reducible, so ``X``
is in general a ring with zero divisors.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from . import poly as P


class NotAUnit(ArithmeticError):
    """Raised when inverting an element that has no inverse in X."""


class RingMismatch(ValueError):
    """Raised when combining elements of different rings."""


class SpecError(ValueError):
    """A ring, polynomial, knot or cocycle spec string could not be parsed."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True, eq=False)
class QuandleRing:
    """The ring ``Z_p[t]/(g)`` with the Alexander quandle structure.

    ``g`` is stored monic (the ideal is unchanged by scaling with a unit).
    """

    p: int
    g: tuple[int, ...]
    _inv_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        g = P.trim(self.g, self.p)
        if len(g) < 2:
            raise ValueError("modulus must have degree >= 1")
        if g[0] == 0:
            raise ValueError("g(0) = 0 mod p: t would not be invertible")
        # leading coefficient is a nonzero residue mod a prime, hence a unit
        g = P.scale(g, pow(g[-1], -1, self.p), self.p)
        object.__setattr__(self, "g", g)

    # identity by (p, g) so that rings rebuilt from the same spec compare equal
    def __eq__(self, other):
        return isinstance(other, QuandleRing) and (self.p, self.g) == (other.p, other.g)

    def __hash__(self):
        return hash((self.p, self.g))

    @property
    def d(self) -> int:
        return len(self.g) - 1

    @property
    def order(self) -> int:
        return self.p ** self.d

    def __len__(self) -> int:
        return self.order

    def __repr__(self):
        return f"QuandleRing(p={self.p}, g={P.to_str(self.g)})"

    # -- construction of elements ------------------------------------------

    def elem(self, value) -> "RingElem":
        """Coerce an int, a coefficient sequence, a polynomial string or an element."""
        if isinstance(value, RingElem):
            self._check(value)
            return value
        if isinstance(value, (int, np.integer)):
            return self.from_poly((int(value),))
        if isinstance(value, str):
            return self.from_poly(parse_poly(value))
        return self.from_poly(tuple(int(c) for c in value))

    __call__ = elem

    def from_poly(self, coeffs: Sequence[int]) -> "RingElem":
        """Reduce an arbitrary integer polynomial into X."""
        r = P.mod(P.trim(coeffs, self.p), self.g, self.p)
        return RingElem(self, r + (0,) * (self.d - len(r)))

    def from_index(self, k: int) -> "RingElem":
        coeffs = []
        for _ in range(self.d):
            k, c = divmod(k, self.p)
            coeffs.append(c)
        return RingElem(self, tuple(coeffs))

    @property
    def zero(self) -> "RingElem":
        return RingElem(self, (0,) * self.d)

    @property
    def one(self) -> "RingElem":
        return self.from_poly((1,))

    @property
    def t(self) -> "RingElem":
        return self.from_poly((0, 1))

    def __iter__(self) -> Iterator["RingElem"]:
        for k in range(self.order):
            yield self.from_index(k)

    def random(self, rng: np.random.Generator) -> "RingElem":
        return RingElem(self, tuple(int(c) for c in rng.integers(0, self.p, self.d)))

    @cached_property
    def companion(self) -> np.ndarray:
        """Matrix of multiplication by t on coefficient vectors (column convention)."""
        d, p = self.d, self.p
        T = np.zeros((d, d), dtype=np.int64)
        for i in range(1, d):
            T[i, i - 1] = 1
        for i in range(d):
            T[i, d - 1] = (-self.g[i]) % p
        return T

    # -- ring-level helpers ---------------------------------------------------

    def _check(self, x: "RingElem"):
        if x.ring != self:
            raise RingMismatch(f"{x!r} does not belong to {self!r}")

    def xi(self, k: int) -> "RingElem":
        """``xi_k(t) = sum_{i=0}^{k-1} (-t)^i`` reduced in X (``xi_0 = 0``)."""
        return self.from_poly(P.xi(k, self.p))

    def xi_derivative(self, m: int) -> "RingElem":
        """Formal derivative of ``xi_m`` taken in Z_p[t], then reduced."""
        if m < 1:
            raise ValueError("m must be >= 1")
        return self.from_poly(P.derivative(P.xi(m, self.p), self.p))

    def is_unit(self, x: "RingElem") -> bool:
        try:
            self.inverse(x)
        except NotAUnit:
            return False
        return True

    def inverse(self, x: "RingElem") -> "RingElem":
        self._check(x)
        hit = self._inv_cache.get(x.coeffs)
        if hit is not None:
            return hit
        gcd, s, _ = P.gcdex(x.poly, self.g, self.p)
        if P.degree(gcd) != 0:
            raise NotAUnit(f"{x} is not a unit in {self!r}")
        inv = self.from_poly(s)
        self._inv_cache[x.coeffs] = inv
        return inv

    def quandle_op(self, a: "RingElem", b: "RingElem") -> "RingElem":
        """``a * b = t a + (1 - t) b``."""
        t = self.t
        return t * a + (self.one - t) * b

    def quandle_unop(self, c: "RingElem", b: "RingElem") -> "RingElem":
        """The unique ``a`` with ``a * b = c``."""
        t = self.t
        return self.inverse(t) * (c - (self.one - t) * b)

    def to_json(self) -> dict:
        return {"p": self.p, "g": list(self.g)}


@dataclass(frozen=True)
class RingElem:
    """An element of X as a length-d coefficient vector (coefficient of t^i at i)."""

    ring: QuandleRing
    coeffs: tuple[int, ...]

    @property
    def poly(self) -> P.Poly:
        return P.trim(self.coeffs, self.ring.p)

    @property
    def index(self) -> int:
        """Base-p integer code; ascending index is the canonical output order."""
        k = 0
        for c in reversed(self.coeffs):
            k = k * self.ring.p + c
        return k

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def _other(self, y) -> "RingElem":
        if isinstance(y, RingElem):
            self.ring._check(y)
            return y
        if isinstance(y, (int, np.integer)):
            return self.ring.elem(int(y))
        return NotImplemented

    def __add__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        p = self.ring.p
        return RingElem(self.ring, tuple((a + b) % p for a, b in zip(self.coeffs, y.coeffs)))

    __radd__ = __add__

    def __sub__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        p = self.ring.p
        return RingElem(self.ring, tuple((a - b) % p for a, b in zip(self.coeffs, y.coeffs)))

    def __rsub__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        return y - self

    def __neg__(self):
        p = self.ring.p
        return RingElem(self.ring, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        return self.ring.from_poly(P.mul(self.poly, y.poly, self.ring.p))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.ring.inverse(self) ** (-e)
        return self.ring.from_poly(P.power(self.poly, e, self.ring.p))

    def inverse(self) -> "RingElem":
        return self.ring.inverse(self)

    def __str__(self):
        return P.to_str(self.poly)

    def __repr__(self):
        return f"<{self} in Z_{self.ring.p}[t]/({P.to_str(self.ring.g)})>"


# -- text grammars ----------------------------------------------------------

_TERM = re.compile(r"^(?P<c>\d+)?\*?(?:(?P<t>t)(?:\^\{?(?P<k>\d+)\}?)?)?$")


def parse_poly(text: str) -> tuple[int, ...]:
    """Parse an integer polynomial in t.

    Terms are ``c``, ``t``, ``t^k``, ``c*t^k`` (the ``*`` is optional), joined
    by ``+``/``-``. ``xi:m`` gives ``xi_m(t)`` and ``twist:n`` gives
    ``t - n(1-t)^2``. Coefficients are returned over Z, lowest degree first.
    """
    s = text.replace(" ", "").strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    if not s:
        raise SpecError("empty polynomial")
    if s.startswith("xi:"):
        m = _int(s[3:], text)
        if m < 0:
            raise SpecError(f"xi index must be >= 0 in {text!r}")
        return tuple((-1) ** i for i in range(m))
    if s.startswith("twist:"):
        n = _int(s[6:], text)
        return (-n, 1 + 2 * n, -n)
    tokens = re.findall(r"[+-]?[^+-]+", s)
    if "".join(tokens) != s:
        raise SpecError(f"bad polynomial {text!r}")
    coeffs: dict[int, int] = {}
    for tok in tokens:
        sign, body = (tok[0], tok[1:]) if tok[0] in "+-" else ("+", tok)
        m = _TERM.match(body)
        if not m or (m.group("c") is None and m.group("t") is None):
            raise SpecError(f"bad term {body!r} in {text!r}")
        c = int(m.group("c")) if m.group("c") is not None else 1
        k = 0
        if m.group("t"):
            k = int(m.group("k")) if m.group("k") is not None else 1
        coeffs[k] = coeffs.get(k, 0) + (-c if sign == "-" else c)
    top = max(coeffs)
    return tuple(coeffs.get(i, 0) for i in range(top + 1))


def _int(s: str, ctx: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise SpecError(f"expected an integer in {ctx!r}") from None


def parse_ring(text: str) -> QuandleRing:
    """Parse ``{"p": 2, "g": [1,1,0,0,1]}``, ``{"p":2,"g":"xi:5"}`` or ``p=2,g=xi:5``."""
    text = text.strip()
    try:
        if text.startswith("{"):
            obj = json.loads(text)
            p, g = int(obj["p"]), obj["g"]
        else:
            fields = dict(part.split("=", 1) for part in text.split(",", 1))
            p, g = int(fields["p"]), fields["g"]
    except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        raise SpecError(f"cannot parse ring spec {text!r}: {exc}") from None
    coeffs = parse_poly(g) if isinstance(g, str) else tuple(int(c) for c in g)
    try:
        return QuandleRing(p, coeffs)
    except ValueError as exc:
        raise SpecError(str(exc)) from None


def xi_ring(p: int, m: int) -> QuandleRing:
    """``Z_p[t]/(xi_m)``."""
    return QuandleRing(p, P.xi(m, p))


def twist_ring(p: int, n: int) -> QuandleRing:
    """``Z_p[t]/(t - n(1-t)^2)``; needs ``p`` not dividing ``n``."""
    if n % p == 0:
        raise ValueError(f"p={p} divides n={n}: the twist modulus degenerates")
    return QuandleRing(p, P.twist_modulus(n, p))
