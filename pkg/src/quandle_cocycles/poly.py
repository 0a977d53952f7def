"""Dense polynomials over Z_p.

A polynomial is a tuple of integers in ``[0, p)``, lowest degree first,
with no trailing zeros. The zero polynomial is ``()``.
"""

from __future__ import annotations

from typing import Sequence

Poly = tuple


def trim(a: Sequence[int], p: int) -> Poly:
    out = [c % p for c in a]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def degree(a: Poly) -> int:
    """Degree of ``a``; the zero polynomial has degree -1."""
    return len(a) - 1


def add(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)], p)


def sub(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)], p)


def scale(a: Poly, c: int, p: int) -> Poly:
    return trim([c * x for x in a], p)


def mul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out, p)


def divmod_(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly]:
    """Quotient and remainder of ``a`` by ``b`` in Z_p[t]."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    inv_lead = pow(b[-1], -1, p)
    r = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - len(b), -1, -1):
        c = r[k + len(b) - 1] * inv_lead % p
        if c:
            q[k] = c
            for j, y in enumerate(b):
                r[k + j] = (r[k + j] - c * y) % p
    return trim(q, p), trim(r[: len(b) - 1], p)


def mod(a: Poly, b: Poly, p: int) -> Poly:
    return divmod_(a, b, p)[1]


def divides(h: Poly, q: Poly, p: int) -> bool:
    """True iff ``h`` divides ``q`` in Z_p[t]."""
    if not trim(h, p):
        raise ZeroDivisionError("zero polynomial cannot be a divisor")
    return not mod(trim(q, p), trim(h, p), p)


def gcdex(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, s, u)`` with ``s*a + u*b = g`` and ``g`` monic (or zero)."""
    r0, r1 = a, b
    s0, s1 = (1,), ()
    u0, u1 = (), (1,)
    while r1:
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        u0, u1 = u1, sub(u0, mul(q, u1, p), p)
    if r0:
        c = pow(r0[-1], -1, p)
        r0, s0, u0 = scale(r0, c, p), scale(s0, c, p), scale(u0, c, p)
    return r0, s0, u0


def derivative(a: Poly, p: int) -> Poly:
    return trim([i * a[i] for i in range(1, len(a))], p)


def power(a: Poly, e: int, p: int) -> Poly:
    result: Poly = (1,) if p > 1 else ()
    base = a
    while e:
        if e & 1:
            result = mul(result, base, p)
        base = mul(base, base, p)
        e >>= 1
    return result


def monomial(k: int, c: int, p: int) -> Poly:
    return trim([0] * k + [c], p)


def xi(k: int, p: int) -> Poly:
    """The alternating sum ``sum_{i<k} (-t)^i`` in Z_p[t]; ``xi(0) = 0``."""
    if k < 0:
        raise ValueError("xi_k is defined for k >= 0")
    return trim([(-1) ** i for i in range(k)], p)


def twist_modulus(n: int, p: int) -> Poly:
    """``t - n (1 - t)^2`` over Z_p."""
    return trim([-n, 1 + 2 * n, -n], p)


def to_str(a: Poly, var: str = "t") -> str:
    """Render highest degree first, e.g. ``2t^3+t+1``."""
    if not a:
        return "0"
    terms = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if not c:
            continue
        if k == 0:
            terms.append(str(c))
            continue
        mono = var if k == 1 else f"{var}^{k}"
        terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms)
