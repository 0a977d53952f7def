"""Batched ring arithmetic.

Two interchangeable backends evaluate ring operations on whole numpy arrays
of elements at once:

* :class:`RingTables` addresses elements by base-p index and does every
  operation as a gather from a precomputed ``|X| x |X|`` table. Used when
  ``|X| <= TABLE_LIMIT``.
* :class:`CoeffArith` keeps elements as coefficient arrays with a trailing
  axis of length d and multiplies through powers of the companion matrix.
  Slower per element but works for any ring.

Both expose ``add, sub, mul, neg, op, unop, pow, const, keys, to_elems``.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .ring import QuandleRing, RingElem

TABLE_LIMIT = 1024


class RingTables:
    """Operation tables of a ring with ``|X| <= TABLE_LIMIT``."""

    def __init__(self, ring: QuandleRing):
        N = ring.order
        if N > TABLE_LIMIT:
            raise ValueError(f"|X| = {N} is too large to tabulate (limit {TABLE_LIMIT})")
        self.ring = ring
        self.N = N
        p, d = ring.p, ring.d
        self.dtype = np.uint16 if N <= 1 << 16 else np.uint32
        idx = np.arange(N)
        E = np.stack([(idx // p**i) % p for i in range(d)], axis=1)  # N x d
        self.coeffs = E
        self.weights = p ** np.arange(d)

        # matrix of multiplication by x, for every x: sum_i c_i T^i
        T = ring.companion
        powers = [np.eye(d, dtype=np.int64)]
        for _ in range(d - 1):
            powers.append(T @ powers[-1] % p)
        M = np.einsum("xi,ijk->xjk", E, np.stack(powers)) % p  # N x d x d

        self.add_table = self._binary(lambda a, b: (a + b) % p)
        self.sub_table = self._binary(lambda a, b: (a - b) % p)
        mul = np.empty(N * N, dtype=self.dtype)
        step = max(1, (1 << 22) // (N * d * d))
        for lo in range(0, N, step):
            blk = np.einsum("xjk,yk->xyj", M[lo:lo + step], E) % p
            mul[lo * N:(lo + blk.shape[0]) * N] = (blk @ self.weights).ravel()
        self.mul_table = mul
        self.neg_table = ((-E) % p @ self.weights).astype(self.dtype)

        t = ring.t.index
        one_minus_t = (ring.one - ring.t).index
        t_inv = ring.inverse(ring.t).index
        times_t = self.mul_table[t * N + idx]
        times_1mt = self.mul_table[one_minus_t * N + idx]
        # a * b = t a + (1-t) b
        self.op_table = self.add_table[times_t[:, None].astype(np.int64) * N + times_1mt[None, :]].ravel()
        # a = t^-1 (c - (1-t) b)
        diff = self.sub_table[idx[:, None] * N + times_1mt[None, :]].astype(np.int64)
        self.unop_table = self.mul_table[t_inv * N + diff].ravel().astype(self.dtype)
        self._pow: dict[int, np.ndarray] = {}

    def _binary(self, fn) -> np.ndarray:
        E, N = self.coeffs, self.N
        out = np.empty(N * N, dtype=self.dtype)
        step = max(1, (1 << 22) // (N * self.ring.d))
        for lo in range(0, N, step):
            blk = fn(E[lo:lo + step, None, :], E[None, :, :])
            out[lo * N:(lo + blk.shape[0]) * N] = (blk @ self.weights).ravel()
        return out

    def power_table(self, e: int) -> np.ndarray:
        """Table of ``x -> x^e`` (``e >= 0``)."""
        if e not in self._pow:
            N = self.N
            res = np.full(N, self.ring.one.index, dtype=np.int64)
            base = np.arange(N, dtype=np.int64)
            k = e
            while k:
                if k & 1:
                    res = self.mul_table[res * N + base].astype(np.int64)
                base = self.mul_table[base * N + base].astype(np.int64)
                k >>= 1
            self._pow[e] = res.astype(self.dtype)
        return self._pow[e]

    def _gather(self, table, x, y):
        return table[np.asarray(x, dtype=np.int64) * self.N + y]

    def add(self, x, y):
        return self._gather(self.add_table, x, y)

    def sub(self, x, y):
        return self._gather(self.sub_table, x, y)

    def mul(self, x, y):
        return self._gather(self.mul_table, x, y)

    def op(self, x, y):
        return self._gather(self.op_table, x, y)

    def unop(self, x, y):
        return self._gather(self.unop_table, x, y)

    def neg(self, x):
        return self.neg_table[x]

    def pow(self, x, e: int):
        return self.power_table(e)[x]

    def const(self, x: RingElem, shape) -> np.ndarray:
        return np.full(shape, x.index, dtype=np.int64)

    def from_coeffs(self, V: np.ndarray) -> np.ndarray:
        return V @ self.weights

    def keys(self, x) -> np.ndarray:
        return np.asarray(x, dtype=np.int64)

    def to_elems(self, x) -> list[RingElem]:
        return [self.ring.from_index(int(k)) for k in np.ravel(x)]

    def is_zero(self, x) -> np.ndarray:
        return np.asarray(x) == 0


class CoeffArith:
    """Vectorised arithmetic on coefficient arrays of shape ``(..., d)``."""

    def __init__(self, ring: QuandleRing):
        self.ring = ring
        self.p, self.d = ring.p, ring.d
        p, d = self.p, self.d
        self.weights = p ** np.arange(d, dtype=np.int64) if p**d < 1 << 62 else None
        T = ring.companion
        powers = [np.eye(d, dtype=np.int64)]
        for _ in range(d - 1):
            powers.append(T @ powers[-1] % p)
        self.Tpow = np.stack(powers)  # T^i, i < d
        self._t = np.array(ring.t.coeffs, dtype=np.int64)
        self._1mt = np.array((ring.one - ring.t).coeffs, dtype=np.int64)
        self._tinv = np.array(ring.inverse(ring.t).coeffs, dtype=np.int64)

    def add(self, x, y):
        return (x + y) % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def neg(self, x):
        return (-x) % self.p

    def mul(self, x, y):
        x, y = np.broadcast_arrays(x, y)
        # (x*y) = sum_i x_i T^i y
        ty = np.einsum("ijk,...k->...ij", self.Tpow, y) % self.p
        return np.einsum("...i,...ij->...j", x, ty) % self.p

    def pow(self, x, e: int):
        res = np.zeros_like(x)
        res[..., 0] = 1
        base = x
        while e:
            if e & 1:
                res = self.mul(res, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return res

    def op(self, x, y):
        return self.add(self.mul(self._t, x), self.mul(self._1mt, y))

    def unop(self, x, y):
        return self.mul(self._tinv, self.sub(x, self.mul(self._1mt, y)))

    def const(self, x: RingElem, shape) -> np.ndarray:
        shape = (shape,) if isinstance(shape, (int, np.integer)) else tuple(shape)
        return np.broadcast_to(np.array(x.coeffs, dtype=np.int64), shape + (self.d,)).copy()

    def from_coeffs(self, V: np.ndarray) -> np.ndarray:
        return V % self.p

    def keys(self, x) -> np.ndarray:
        if self.weights is None:
            raise OverflowError("ring too large for integer keys")
        return x @ self.weights

    def to_elems(self, x) -> list[RingElem]:
        flat = np.asarray(x).reshape(-1, self.d)
        return [RingElem(self.ring, tuple(int(c) for c in row)) for row in flat]

    def is_zero(self, x) -> np.ndarray:
        return ~np.any(x, axis=-1)


@lru_cache(maxsize=16)
def tables_for(ring: QuandleRing) -> RingTables:
    return RingTables(ring)


def can_tabulate(ring: QuandleRing) -> bool:
    return ring.order <= TABLE_LIMIT


def backend_for(ring: QuandleRing):
    return tables_for(ring) if can_tabulate(ring) else CoeffArith(ring)
