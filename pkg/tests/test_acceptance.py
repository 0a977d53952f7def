"""Acceptance criteria 1-12. Each test prints one PASS/FAIL line (also collected in the terminal summary)."""

import itertools
import subprocess
import sys
import time

import numpy as np
import pytest

from quandle_cocycles import (Chain, PolyCocycle, build, closed_form_torus2, closed_form_torus3, invariant_2,
                              invariant_3, parse_upoly, twist_ring, xi_ring)
from quandle_cocycles.chains import boundary, coboundary_eval, is_degenerate
from quandle_cocycles.cocycles import check_params, InvalidParams
from quandle_cocycles.golden import TABLES
from quandle_cocycles.identities import neg_t_order, s_m, xi_derivative, xi_product
from quandle_cocycles.invariants import sample_torus3, state_sum, torus3_from_contribution
from quandle_cocycles.knots import build_torus, build_twist
from quandle_cocycles.tables import RingTables
from quandle_cocycles.witness import CASE3_LISTS, check_h23_nontriviality, witness_H4, witness_odd


def report(n, failures):
    print(f"criterion {n}: {'PASS' if not failures else 'FAIL'}")
    for line in failures:
        print("  " + line)
    assert not failures, "; ".join(failures)


def torus_entry(p, m):
    return next(e for e in TABLES[f"torus-p{p}"] if e.modulus == ("xi", m))


# every ring of order <= 256 that the suites below touch
AXIOM_RINGS = ([xi_ring(2, m) for m in (3, 5, 9)] + [xi_ring(3, m) for m in (2, 3, 5)] + [xi_ring(5, 3)]
               + [twist_ring(3, n) for n in (1, 2)] + [twist_ring(5, n) for n in (1, 2, 3, 4)]
               + [twist_ring(7, n) for n in range(1, 7)] + [twist_ring(11, 3), twist_ring(13, 1)])


def test_criterion_01_quandle_axioms():
    start = time.perf_counter()
    failures = []
    for ring in AXIOM_RINGS:
        assert ring.order <= 256
        tab = RingTables(ring)
        N = ring.order
        x = np.arange(N)
        op = tab.op(x[:, None], x[None, :])  # op[a, b] = a * b
        if not np.array_equal(np.diagonal(op), x):
            failures.append(f"{ring!r}: idempotency")
        if any(len(set(op[:, b].tolist())) != N for b in range(N)):
            failures.append(f"{ring!r}: right multiplication not bijective")
        for a in range(N):
            lhs = op[op[a][:, None], x[None, :]]               # [b, c] -> (a*b)*c
            rhs = op[np.broadcast_to(op[a], (N, N)), op]       # [b, c] -> (a*c)*(b*c)
            if not np.array_equal(lhs, rhs):
                failures.append(f"{ring!r}: self-distributivity at a={a}")
                break
    elapsed = time.perf_counter() - start
    if elapsed >= 5:
        failures.append(f"took {elapsed:.1f} s")
    report(1, failures)


def random_chain(ring, n, rng, terms=3, degenerate=False):
    c = Chain(n)
    for _ in range(terms):
        tup = [ring.random(rng) for _ in range(n)]
        if degenerate:
            j = int(rng.integers(0, n - 1))
            tup[j + 1] = tup[j]
        c += Chain.single(tuple(tup), int(rng.integers(1, ring.p * 3)))
    return c


def test_criterion_02_boundary_squared():
    start = time.perf_counter()
    rng = np.random.default_rng(20080101)
    failures = []
    for ring in (xi_ring(2, 3), xi_ring(2, 5), xi_ring(3, 5), xi_ring(5, 3)):
        for k in range(1000):
            n = 2 + k % 4  # n = 2..5
            c = random_chain(ring, n, rng)
            if not boundary(boundary(c)).is_zero():
                failures.append(f"{ring!r}: dd != 0 on {c!r}")
                break
            d = boundary(random_chain(ring, n, rng, degenerate=True))
            if not all(is_degenerate(t) for t, _ in d):
                failures.append(f"{ring!r}: boundary leaves the degenerate subcomplex")
                break
    elapsed = time.perf_counter() - start
    if elapsed >= 30:
        failures.append(f"took {elapsed:.1f} s")
    report(2, failures)


PRODUCT_RINGS = [(2, 3), (2, 5), (3, 5), (5, 3)]


def product_grid(ring, n):
    """Exponent vectors with a_1..a_{n-1} in {1, p} and a_n in {0, 1, p, p^2} passing the hypotheses."""
    p = ring.p
    out = []
    for head in itertools.product((1, p), repeat=n - 1):
        for last in (0, 1, p, p * p):
            try:
                check_params(ring, head + (last,))
            except InvalidParams:
                continue
            out.append(head + (last,))
    return out


def test_criterion_03_product_cocycles():
    failures = []
    for p, m in PRODUCT_RINGS:
        ring = xi_ring(p, m)
        for n in (2, 3, 4):
            grid = product_grid(ring, n)
            if not grid:
                failures.append(f"p={p} xi_{m} n={n}: empty grid")
            for exps in grid:
                mode = "exhaustive" if ring.order ** (n + 1) <= 1 << 20 else "sampled"
                res = build(ring, exps).certify(mode=mode, samples=100_000, seed=20080101)
                if not res.ok:
                    failures.append(f"p={p} xi_{m} {exps}: {res.reason} at {res.witness}")
        # negative control: (x-y) y with t^2 != 1
        bad = PolyCocycle(ring, (1, 1))
        res = bad.certify()
        if res.ok or res.witness is None or coboundary_eval(bad.as_cochain(), res.witness).is_zero():
            failures.append(f"p={p} xi_{m}: negative control produced no delta f != 0 witness")
    report(3, failures)


def test_criterion_04_torus_2cocycle_golden():
    ring = xi_ring(2, 5)
    start = time.perf_counter()
    got = invariant_2(build_torus(5), build(ring, (4, 1)))
    elapsed = time.perf_counter() - start
    want = parse_upoly(ring, TABLES["torus5-2cocycle"][0].printed)
    failures = []
    if got != want:
        failures.append(f"got {got}, want {want}")
    if got.counts != {ring.zero: 16, ring("t+1"): 80, ring("t^3"): 80, ring("t^3+t+1"): 80}:
        failures.append("multiset differs from {16 x 0, 80 x (t+1), 80 x t^3, 80 x (t^3+t+1)}")
    if elapsed >= 1:
        failures.append(f"took {elapsed:.2f} s")
    report(4, failures)


BRUTE_POINTS = [(2, 3), (2, 5), (3, 3), (5, 3), (5, 5), (2, 9)]
CLOSED_POINTS = [(2, 11), (2, 13), (2, 15), (3, 5), (3, 7), (3, 9), (5, 7)]
_brute_cache = {}


def brute_torus3(p, m):
    if (p, m) not in _brute_cache:
        ring = xi_ring(p, m)
        _brute_cache[p, m] = state_sum(build_torus(m), build(ring, (1, p, 0)), force=True)
    return _brute_cache[p, m]


def test_criterion_05_torus_3cocycle_goldens():
    failures = []
    for p, m in BRUTE_POINTS:
        ring = xi_ring(p, m)
        start = time.perf_counter()
        got = brute_torus3(p, m)
        elapsed = time.perf_counter() - start
        want = parse_upoly(ring, torus_entry(p, m).printed)
        print(f"  (p,m)=({p},{m}) brute force {elapsed:.1f} s: {got}")
        if got != want:
            failures.append(f"(p,m)=({p},{m}): computed {got}, printed {want}")
        if (p, m) == (2, 9) and elapsed >= 120:
            failures.append(f"(2,9) took {elapsed:.0f} s")
    for p, m in CLOSED_POINTS:
        ring = xi_ring(p, m)
        f = build(ring, (1, p, 0))
        rep = sample_torus3(ring, m, f, samples=10_000)
        got = torus3_from_contribution(ring, m, (1, p))
        want = parse_upoly(ring, torus_entry(p, m).printed)
        if not rep.ok:
            failures.append(f"(p,m)=({p},{m}): {rep.samples - rep.agreed} sampled colorings disagree")
        if got != want:
            failures.append(f"(p,m)=({p},{m}): closed form {got}, printed {want}")
    report(5, failures)


def test_criterion_06_closed_form_equals_brute_force():
    failures = []
    for p, m in BRUTE_POINTS:
        ring = xi_ring(p, m)
        brute = brute_torus3(p, m)
        if torus3_from_contribution(ring, m, (1, p)) != brute:
            failures.append(f"(p,m)=({p},{m}): contribution form differs from brute force")
        try:
            cf = closed_form_torus3(ring, m, (1, p))
        except InvalidParams:
            cf = None  # divisibility hypothesis fails; covered by the contribution form above
        if cf is not None and cf != brute:
            failures.append(f"(p,m)=({p},{m}): closed_form_torus3 differs from brute force")
        pows = [p ** k for k in range(4)]
        exps = next((a, b) for a in pows for b in pows if ring.t ** (a + b) == ring.one)
        if closed_form_torus2(ring, m, exps) != invariant_2(build_torus(m), build(ring, exps)):
            failures.append(f"(p,m)=({p},{m}) exps {exps}: closed_form_torus2 differs from brute force")
    report(6, failures)


TWIST_ROWS = {3: (1, 2), 5: (1, 2, 3, 4), 7: (1, 2, 5, 6)}


def test_criterion_07_twist_goldens():
    failures, errata = [], []
    for p, ns in TWIST_ROWS.items():
        for e in TABLES[f"twist-p{p}"]:
            n = e.modulus[1]
            if n not in ns:
                continue
            ring = e.ring()
            got = invariant_3(build_twist(n), PolyCocycle(ring, e.exponents))
            want = parse_upoly(ring, e.printed)
            if got == want:
                continue
            if e.suspect:
                alt = invariant_3(build_twist(n), PolyCocycle(ring, e.alt_exponents)) if e.alt_exponents else None
                errata.append(f"expected erratum {e.label}: oracle {got}; alternative reading {alt}")
            else:
                failures.append(f"{e.label}: computed {got}, printed {want}")
    for line in errata:
        print("  " + line)
    report(7, failures)


def test_criterion_08_h23_nontriviality():
    failures = []
    for n in (1, 2, 3):
        for dim in (2, 3):
            rep = check_h23_nontriviality("1", n, dim=dim)
            if rep.verdict != "nontrivial":
                failures.append(f"case 1 n={n} dim {dim}: {rep.verdict}")
    for p, n in ((3, 2), (5, 1), (7, 1)):
        for dim in (2, 3):
            rep = check_h23_nontriviality("2", n, p=p, dim=dim)
            if rep.verdict != "nontrivial":
                failures.append(f"case 2 (p,n)=({p},{n}) dim {dim}: {rep.verdict}")
    for sub, (p, listed) in CASE3_LISTS.items():
        for n in listed:
            rep = check_h23_nontriviality("3" + sub, n)
            if rep.verdict != "nontrivial":
                failures.append(f"case 3{sub} n={n}: {rep.verdict}")
        excluded = [n for n in range(p) if n not in listed]
        hit = False
        for n in excluded:
            rep = check_h23_nontriviality("3" + sub, n)
            coef = rep.details.get("coefficient")
            if rep.verdict == "inconclusive" and (coef is None or coef.is_zero()):
                hit = True
                print(f"  case 3{sub}: excluded n={n} inconclusive ({coef if coef is not None else rep.details['reason']})")
                break
        if not hit:
            failures.append(f"case 3{sub}: no excluded residue came out inconclusive")
    report(8, failures)


def test_criterion_09_h4():
    failures = []
    for n in (1, 2, 3):
        start = time.perf_counter()
        rep = witness_H4(n)  # raises on a direct/closed-formula mismatch
        elapsed = time.perf_counter() - start
        print(f"  n={n}: f(C4') = {rep.pairing} ({elapsed:.1f} s)")
        if not rep.cycle_ok:
            failures.append(f"n={n}: C4' is not a cycle")
        if rep.pairing != rep.details["closed_formula"] or rep.pairing.is_zero():
            failures.append(f"n={n}: pairing {rep.pairing}")
        if n == 3 and elapsed >= 60:
            failures.append(f"n=3 took {elapsed:.0f} s")
    report(9, failures)


def test_criterion_10_odd_dimensions():
    failures = []
    for p, n in ((2, 1), (2, 2), (3, 2), (5, 1)):
        for r in (1, 2, 3):
            start = time.perf_counter()
            rep = witness_odd(r, p, n)  # checks every stage: cycle, recursion, unit
            elapsed = time.perf_counter() - start
            ring = rep.cocycle.ring
            first = rep.details["f3(C3)"]
            if rep.pairing != first ** r or not ring.is_unit(rep.pairing) or rep.verdict != "nontrivial":
                failures.append(f"(p,n)=({p},{n}) r={r}: pairing {rep.pairing}")
            if (p, n, r) == (2, 2, 3) and elapsed >= 120:
                failures.append(f"r=3 at (2,5) took {elapsed:.0f} s")
    report(10, failures)


def test_criterion_11_identities():
    checks = []
    for p in (2, 3, 5, 7):
        for m in range(1, 31):
            checks += [xi_product(m, p), xi_derivative(m, p), s_m(m, p)]
            if m >= 2:
                checks.append(neg_t_order(m, p))
    failures = []
    for name in dict.fromkeys(c.name for c in checks):
        group = [c for c in checks if c.name == name]
        bad = [c for c in group if not c.ok]
        print(f"  {name}: {len(group) - len(bad)}/{len(group)} exact")
        if bad:
            failures.append(f"{name} fails for {len(bad)}/{len(group)} (p, m), first: {bad[0].line()}")
    report(11, failures)


def test_criterion_12_determinism():
    cmd = [sys.executable, "-m", "quandle_cocycles", "table", "torus-p2", "--threads", "8"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    failures = []
    if a.stdout != b.stdout:
        failures.append("outputs differ")
    if not a.stdout:
        failures.append("empty output")
    report(12, failures)
