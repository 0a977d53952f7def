"""Polynomial identities behind the closed forms, checked exactly.

Identities in Z_p[t] are checked as polynomial equalities; identities in
X = Z_p[t]/(xi_m) are checked by reducing both sides.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import poly as P
from .ring import xi_ring


@dataclass
class IdentityCheck:
    name: str
    p: int
    m: int
    ok: bool
    detail: str = ""

    def line(self) -> str:
        status = "OK" if self.ok else "FAILED"
        return f"{self.name} p={self.p} m={self.m}: {status}" + (f" ({self.detail})" if self.detail else "")


def _neg_t_power(k: int, p: int) -> P.Poly:
    return P.monomial(k, (-1) ** k, p)


def xi_product(m: int, p: int) -> IdentityCheck:
    """``sum_{k<m} (-t)^k xi_k = xi_m xi_{m+1} / (1-t)`` with exact division."""
    lhs = ()
    for k in range(m):
        lhs = P.add(lhs, P.mul(_neg_t_power(k, p), P.xi(k, p), p), p)
    num = P.mul(P.xi(m, p), P.xi(m + 1, p), p)
    q, r = P.divmod_(num, P.trim((1, -1), p), p)
    ok = r == () and q == lhs
    return IdentityCheck("xi-product", p, m, ok, f"quotient {P.to_str(q) or '0'}")


def xi_product_shifted(m: int, p: int) -> IdentityCheck:
    """``sum_{k<m} (-t)^k xi_{k+1} = xi_m xi_{m+1} / (1-t)``, the form that holds for every m."""
    lhs = ()
    for k in range(m):
        lhs = P.add(lhs, P.mul(_neg_t_power(k, p), P.xi(k + 1, p), p), p)
    num = P.mul(P.xi(m, p), P.xi(m + 1, p), p)
    q, r = P.divmod_(num, P.trim((1, -1), p), p)
    return IdentityCheck("xi-product-shifted", p, m, r == () and q == lhs)


def xi_sum_vanishes(m: int, p: int) -> IdentityCheck:
    """``sum_{k<m} (-t)^k xi_k = 0`` in Z_p[t]/(xi_m) for odd m."""
    X = xi_ring(p, m)
    mt = -X.t
    total = X.zero
    for k in range(m):
        total = total + mt ** k * X.xi(k)
    return IdentityCheck("xi-sum-vanishes", p, m, total.is_zero(), f"sum = {total}")


def xi_derivative(m: int, p: int) -> IdentityCheck:
    """``(1+t) xi'_m = -xi_m - m (-1)^m t^{m-1}`` in Z_p[t]."""
    lhs = P.mul((1, 1 % p), P.derivative(P.xi(m, p), p), p)
    rhs = P.sub(P.scale(P.xi(m, p), -1, p), P.monomial(m - 1, m * (-1) ** m, p), p)
    return IdentityCheck("xi-derivative", p, m, lhs == rhs)


def s_m(m: int, p: int) -> IdentityCheck:
    """``S_m = sum_{k=1}^m (-t)^{-k} xi_k``.

    Checks ``S_m = sum_{k<m} (k+1)(-t)^{k-m} = (-t)^{-m}(xi_m + t xi'_m)`` as
    Laurent polynomials (after multiplying by t^m), and
    ``S_m = (-t)^m (xi_m + t xi'_m)`` in Z_p[t]/(xi_m).
    """
    # t^m S_m = sum_k (-1)^k t^{m-k} xi_k
    lhs = ()
    for k in range(1, m + 1):
        lhs = P.add(lhs, P.mul(P.monomial(m - k, (-1) ** k, p), P.xi(k, p), p), p)
    # t^m sum (k+1)(-t)^{k-m} = (-1)^m sum (k+1)(-1)^k t^k
    mid = P.trim([(k + 1) * (-1) ** (k + m) for k in range(m)], p)
    xi_m = P.xi(m, p)
    inner = P.add(xi_m, P.mul((0, 1), P.derivative(xi_m, p), p), p)
    rhs = P.scale(inner, (-1) ** m, p)
    laurent_ok = lhs == mid == rhs
    quotient_ok = True
    if m >= 2:
        X = xi_ring(p, m)
        t = X.t
        S = X.zero
        for k in range(1, m + 1):
            S = S + (-t) ** (-k) * X.xi(k)
        quotient_ok = S == (-t) ** m * X.from_poly(inner)
    return IdentityCheck("S_m", p, m, laurent_ok and quotient_ok)


def neg_t_order(m: int, p: int) -> IdentityCheck:
    """``(-t)^m = 1`` in Z_p[t]/(xi_m), hence ``(-t)^{2-m} = t^2`` there."""
    X = xi_ring(p, m)
    mt = -X.t
    ok = mt ** m == X.one and mt ** (2 - m) == X.t ** 2
    return IdentityCheck("(-t)^m=1", p, m, ok)


def first_term_vanishes(m: int, p: int, a1: int = 1) -> IdentityCheck:
    """``(sum_{k=1}^m (-t)^k)^{a1} = (-t xi_m)^{a1} = 0`` in Z_p[t]/(xi_m)."""
    X = xi_ring(p, m)
    mt = -X.t
    total = X.zero
    for k in range(1, m + 1):
        total = total + mt ** k
    ok = total ** a1 == (mt * X.xi(m)) ** a1 == X.zero
    return IdentityCheck("first-term", p, m, ok)


def xi_recurrence(m: int, p: int) -> IdentityCheck:
    """``xi_{k+1} = xi_{k-1} * xi_k`` in the Alexander quandle, for 1 <= k <= m."""
    X = xi_ring(p, m)
    ok = all(X.xi(k + 1) == X.quandle_op(X.xi(k - 1), X.xi(k)) for k in range(1, m + 1))
    return IdentityCheck("xi-recurrence", p, m, ok)


IDENTITIES = {
    "xi-product": xi_product,
    "xi-product-shifted": xi_product_shifted,
    "xi-sum-vanishes": xi_sum_vanishes,
    "xi-derivative": xi_derivative,
    "s-m": s_m,
    "neg-t-order": neg_t_order,
    "first-term": first_term_vanishes,
    "xi-recurrence": xi_recurrence,
}


def check_all(m_max: int = 30, primes=(2, 3, 5, 7)) -> list[IdentityCheck]:
    """Every identity except the literal product form, which fails already at m = 1."""
    out = []
    for p in primes:
        for m in range(1, m_max + 1):
            out.append(xi_product_shifted(m, p))
            if m % 2 and m >= 3:
                out.append(xi_sum_vanishes(m, p))
            out.append(xi_derivative(m, p))
            out.append(s_m(m, p))
            if m >= 2:
                out.append(neg_t_order(m, p))
                out.append(first_term_vanishes(m, p))
    return out
