"""Rack and quandle chain complexes with coefficients in X.

Chains carry integer coefficients; reduction mod p only happens when a chain
is paired with an X-valued cochain.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np

from .ring import QuandleRing, RingElem
from .tables import can_tabulate, tables_for

EXHAUSTIVE_LIMIT = 1 << 20
DEFAULT_SAMPLES = 100_000
DEFAULT_SEED = 20080101

Tuple = tuple


class Chain:
    """A finite Z-linear combination of n-tuples of ring elements."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Optional[dict] = None):
        self.dim = dim
        self.terms: dict[Tuple, int] = {}
        if terms:
            for tup, c in terms.items():
                self._add_term(tuple(tup), c)

    @classmethod
    def single(cls, tup: Iterable[RingElem], coeff: int = 1) -> "Chain":
        tup = tuple(tup)
        return cls(len(tup), {tup: coeff})

    @classmethod
    def from_terms(cls, dim: int, pairs: Iterable[tuple[int, Tuple]]) -> "Chain":
        c = cls(dim)
        for coeff, tup in pairs:
            c._add_term(tuple(tup), coeff)
        return c

    def _add_term(self, tup: Tuple, coeff: int):
        if len(tup) != self.dim:
            raise ValueError(f"tuple of length {len(tup)} in a {self.dim}-chain")
        v = self.terms.get(tup, 0) + coeff
        if v:
            self.terms[tup] = v
        else:
            self.terms.pop(tup, None)

    def copy(self) -> "Chain":
        c = Chain(self.dim)
        c.terms = dict(self.terms)
        return c

    def __iadd__(self, other: "Chain"):
        self._same_dim(other)
        for tup, coeff in other.terms.items():
            self._add_term(tup, coeff)
        return self

    def __add__(self, other: "Chain") -> "Chain":
        out = self.copy()
        out += other
        return out

    def __neg__(self) -> "Chain":
        return Chain(self.dim, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __rmul__(self, k: int) -> "Chain":
        return Chain(self.dim, {tup: k * v for tup, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, Chain) and self.dim == other.dim and self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def is_zero(self) -> bool:
        return not self.terms

    def _same_dim(self, other: "Chain"):
        if self.dim != other.dim and self.terms and other.terms:
            raise ValueError(f"cannot combine a {self.dim}-chain with a {other.dim}-chain")
        if not self.terms:
            self.dim = other.dim

    def act(self, a: RingElem) -> "Chain":
        """Apply ``*_a`` to every entry of every tuple."""
        ring = a.ring
        return Chain(self.dim, {tuple(ring.quandle_op(x, a) for x in tup): c for tup, c in self.terms.items()})

    def boundary(self) -> "Chain":
        return boundary(self)

    def __repr__(self):
        body = " + ".join(f"{c}*({', '.join(map(str, tup))})" for tup, c in list(self.terms.items())[:6])
        more = " + ..." if len(self.terms) > 6 else ""
        return f"Chain(dim={self.dim}: {body or '0'}{more})"

    def to_json(self) -> list:
        return [{"coeff": c, "tuple": [str(x) for x in tup]} for tup, c in sorted_terms(self)]

    @classmethod
    def from_json(cls, ring: QuandleRing, data: list) -> "Chain":
        if not data:
            return cls(0)
        dim = len(data[0]["tuple"])
        return cls.from_terms(dim, ((d["coeff"], [ring.elem(s) for s in d["tuple"]]) for d in data))


def sorted_terms(c: Chain):
    return sorted(c.terms.items(), key=lambda kv: tuple(x.index for x in kv[0]))


def boundary(c: Chain) -> Chain:
    """Rack boundary: ``sum_{i=2}^n (-1)^i [(.. x_i omitted ..) - (x_1*x_i, .., x_{i-1}*x_i, x_{i+1}, ..)]``."""
    n = c.dim
    out = Chain(max(n - 1, 0))
    if n <= 1:
        return out
    for tup, coeff in c.terms.items():
        ring = tup[0].ring
        for i in range(1, n):  # 0-based position; the 1-based index is i+1
            sign = coeff if (i + 1) % 2 == 0 else -coeff
            xi = tup[i]
            out._add_term(tup[:i] + tup[i + 1:], sign)
            moved = tuple(ring.quandle_op(x, xi) for x in tup[:i]) + tup[i + 1:]
            out._add_term(moved, -sign)
    return out


def is_degenerate(tup: Tuple) -> bool:
    return any(tup[i] == tup[i + 1] for i in range(len(tup) - 1))


def quotient_reduce(c: Chain) -> Chain:
    """Image in the quandle complex: drop degenerate tuples."""
    return Chain(c.dim, {tup: v for tup, v in c.terms.items() if not is_degenerate(tup)})


def is_cycle(c: Chain, quandle: bool = True) -> bool:
    b = boundary(c)
    if quandle:
        b = quotient_reduce(b)
    return b.is_zero()


# -- cochains -----------------------------------------------------------------


@dataclass
class Cochain:
    """An X-valued cochain given by a closure on n-tuples.

    ``vec``, when present, evaluates the same function on columns of element
    indices through the ring tables; it is only an accelerator.
    """

    ring: QuandleRing
    dim: int
    func: Callable[..., RingElem]
    vec: Optional[Callable] = None

    def __call__(self, *xs: RingElem) -> RingElem:
        if len(xs) != self.dim:
            raise ValueError(f"{self.dim}-cochain evaluated on {len(xs)} entries")
        return self.func(*xs)

    def __add__(self, other: "Cochain") -> "Cochain":
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        vec = None
        if self.vec and other.vec:
            vec = lambda tab, cols: tab.add(self.vec(tab, cols), other.vec(tab, cols))
        return Cochain(self.ring, self.dim, lambda *xs: self.func(*xs) + other.func(*xs), vec)

    @classmethod
    def zero(cls, ring: QuandleRing, dim: int) -> "Cochain":
        z = ring.zero
        return cls(ring, dim, lambda *xs: z, lambda tab, cols: np.zeros(len(cols[0]), dtype=np.int64))

    @classmethod
    def from_table(cls, ring: QuandleRing, dim: int, values: np.ndarray) -> "Cochain":
        """Tabulated cochain; ``values`` has length ``|X|^dim`` indexed base ``|X|``."""
        N = ring.order
        values = np.asarray(values, dtype=np.int64)
        if values.shape != (N**dim,):
            raise ValueError("table has the wrong size")

        def flat(idxs):
            k = 0
            for x in idxs:
                k = k * N + x
            return k

        def func(*xs):
            return ring.from_index(int(values[flat(x.index for x in xs)]))

        def vec(tab, cols):
            k = np.zeros(len(cols[0]), dtype=np.int64)
            for col in cols:
                k = k * N + col
            return values[k]

        return cls(ring, dim, func, vec)

    @classmethod
    def random(cls, ring: QuandleRing, dim: int, rng: np.random.Generator) -> "Cochain":
        if ring.order**dim > 1 << 16:
            raise ValueError("random cochains are tabulated and limited to |X|^n <= 2^16")
        return cls.from_table(ring, dim, rng.integers(0, ring.order, ring.order**dim))


def coboundary_eval(f: Cochain, tup: Tuple) -> RingElem:
    """``(delta f)(x_1, ..., x_{n+1})`` evaluated in X."""
    n1 = len(tup)
    if n1 != f.dim + 1:
        raise ValueError(f"delta of a {f.dim}-cochain takes {f.dim + 1} entries")
    ring = f.ring
    total = ring.zero
    for i in range(1, n1):
        xi = tup[i]
        term = f(*(tup[:i] + tup[i + 1:])) - f(*(tuple(ring.quandle_op(x, xi) for x in tup[:i]) + tup[i + 1:]))
        total = total + term if (i + 1) % 2 == 0 else total - term
    return total


def coboundary(f: Cochain) -> Cochain:
    """The cochain ``delta f``."""
    vec = None
    if f.vec is not None:
        vec = lambda tab, cols: _coboundary_vec(f, tab, cols)
    return Cochain(f.ring, f.dim + 1, lambda *xs: coboundary_eval(f, xs), vec)


def _coboundary_vec(f: Cochain, tab, cols) -> np.ndarray:
    total = np.zeros(len(cols[0]), dtype=np.int64)
    for i in range(1, len(cols)):
        dropped = f.vec(tab, cols[:i] + cols[i + 1:])
        moved = f.vec(tab, [tab.op(c, cols[i]) for c in cols[:i]] + list(cols[i + 1:]))
        term = tab.sub(dropped, moved)
        total = tab.add(total, term) if (i + 1) % 2 == 0 else tab.sub(total, term)
    return total


def pair(f: Cochain, c: Chain) -> RingElem:
    """Evaluate ``f(c) = sum coeff * f(tuple)`` in X."""
    if not c.is_zero() and c.dim != f.dim:
        raise ValueError(f"cannot pair a {f.dim}-cochain with a {c.dim}-chain")
    ring = f.ring
    total = ring.zero
    p = ring.p
    for tup, coeff in c.terms.items():
        k = coeff % p
        if k:
            total = total + k * f(*tup)
    return total


# -- cocycle checks -------------------------------------------------------------


@dataclass
class CocycleCheck:
    ok: bool
    mode: str  # "exhaustive" or "sampled"
    checked: int
    witness: Optional[Tuple] = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def _index_columns(start: int, stop: int, N: int, k: int) -> list[np.ndarray]:
    r = np.arange(start, stop, dtype=np.int64)
    cols = []
    for _ in range(k):
        r, c = np.divmod(r, N)
        cols.append(c)
    return cols[::-1]


def is_quandle_cocycle(
    f: Cochain,
    mode: str = "auto",
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    limit: int = EXHAUSTIVE_LIMIT,
) -> CocycleCheck:
    """Check ``delta f = 0`` and vanishing on degenerate tuples.

    In sampled mode a True result means "not falsified on the sample".
    """
    ring, n = f.ring, f.dim
    N = ring.order
    if mode == "auto":
        mode = "exhaustive" if N ** (n + 1) <= limit else "sampled"
    if mode not in ("exhaustive", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    rng = np.random.default_rng(seed)
    df = coboundary(f)
    checked = 0

    use_vec = f.vec is not None and can_tabulate(ring)
    tab = tables_for(ring) if use_vec else None

    def batches(k: int):
        """Yield column batches covering X^k (exhaustive) or a random sample."""
        if mode == "exhaustive":
            total, step = N**k, 1 << 16
            for lo in range(0, total, step):
                yield _index_columns(lo, min(lo + step, total), N, k)
        else:
            left = samples
            while left > 0:
                m = min(left, 1 << 16)
                yield [rng.integers(0, N, m) for _ in range(k)]
                left -= m

    def degenerate_batches():
        # tuples of length n with x_j = x_{j+1}, built from X^{n-1}
        for cols in batches(n - 1):
            for j in range(n - 1):
                yield cols[: j + 1] + [cols[j]] + cols[j + 1:]

    def first_nonzero(g, cols):
        vals = g.vec(tab, cols) if use_vec else None
        if use_vec:
            bad = np.nonzero(vals)[0]
            if len(bad):
                i = bad[0]
                return tuple(ring.from_index(int(c[i])) for c in cols)
            return None
        for i in range(len(cols[0])):
            tup = tuple(ring.from_index(int(c[i])) for c in cols)
            if not g(*tup).is_zero():
                return tup
        return None

    if n >= 2:
        for cols in degenerate_batches():
            w = first_nonzero(f, cols)
            checked += len(cols[0])
            if w is not None:
                return CocycleCheck(False, mode, checked, w, "nonzero on a degenerate tuple")
    for cols in batches(n + 1):
        w = first_nonzero(df, cols)
        checked += len(cols[0])
        if w is not None:
            return CocycleCheck(False, mode, checked, w, "delta f is nonzero")
    return CocycleCheck(True, mode, checked)


def all_tuples(ring: QuandleRing, n: int):
    return itertools.product(list(ring), repeat=n)
