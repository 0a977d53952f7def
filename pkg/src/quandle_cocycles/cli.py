"""Command line: ``qcl invariant | verify | table | witness``.

Exit codes: 0 success, 1 a check or table comparison failed, 2 bad input
(spec error or unsupported mode), 3 cocycle hypotheses violated.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional

from .chains import DEFAULT_SAMPLES, DEFAULT_SEED
from .cocycles import InvalidParams, PolyCocycle, build, parse_cocycle
from .golden import TABLES
from .identities import IDENTITIES
from .invariants import (TooLarge, closed_form_torus2, closed_form_twist, default_threads, parse_upoly,
                         sample_torus3, state_sum, torus3_from_contribution)
from .knots import parse_knot_spec
from .ring import SpecError, parse_ring
from .witness import WitnessError, check_h23_nontriviality, witness_H4, witness_odd

EXIT_OK, EXIT_FAIL, EXIT_SPEC, EXIT_HYPOTHESIS = 0, 1, 2, 3
TABLE_SAMPLES = 10_000


@dataclass
class RunConfig:
    command: str
    ring: Optional[str] = None
    knot: Optional[str] = None
    cocycle: Optional[str] = None
    dim: int = 2
    sample: Optional[int] = None
    fmt: str = "upoly"
    threads: int = 1
    seed: int = DEFAULT_SEED
    force: bool = False

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        return cls(
            command=ns.command,
            ring=getattr(ns, "ring", None),
            knot=getattr(ns, "knot", None),
            cocycle=getattr(ns, "cocycle", None),
            dim=ns.dim if isinstance(getattr(ns, "dim", None), int) else 2,
            sample=getattr(ns, "sample", None),
            fmt=getattr(ns, "format", "upoly"),
            threads=getattr(ns, "threads", None) or default_threads(),
            seed=getattr(ns, "seed", DEFAULT_SEED),
            force=getattr(ns, "force", False),
        )


def _out(text: str = "") -> None:
    print(text)


# -- invariant ---------------------------------------------------------------------


def cmd_invariant(cfg: RunConfig) -> int:
    ring = parse_ring(cfg.ring)
    D = parse_knot_spec(cfg.knot)
    f = build(ring, parse_cocycle(cfg.cocycle, cfg.dim))
    if cfg.sample:
        if cfg.dim != 3 or not D.name.startswith("torus:"):
            raise SpecError("--sample is supported for 3-cocycles on torus:2,m knots")
        m = int(D.name.split(",")[1])
        rep = sample_torus3(ring, m, f, cfg.sample, cfg.seed)
        inv = torus3_from_contribution(ring, m, f.exponents[:2])
        _emit(inv, cfg.fmt, {"sampled": rep.samples, "agreed": rep.agreed, "mismatches": rep.mismatches})
        return EXIT_OK if rep.ok else EXIT_FAIL
    inv = state_sum(D, f, threads=cfg.threads, force=cfg.force)
    _emit(inv, cfg.fmt)
    return EXIT_OK


def _emit(inv, fmt: str, extra: Optional[dict] = None) -> None:
    if fmt == "json":
        data = inv.to_json()
        if extra:
            data.update(extra)
        _out(json.dumps(data))
    else:
        _out(inv.render_upoly())
        if extra:
            _out(f"# sampled {extra['sampled']} shadow colorings, {extra['agreed']} agree with the contribution formula")


# -- verify -------------------------------------------------------------------------


def cmd_verify(cfg: RunConfig, ns: argparse.Namespace) -> int:
    if ns.identity:
        fn = IDENTITIES.get(ns.identity)
        if fn is None:
            raise SpecError(f"unknown identity {ns.identity!r} (choose from {', '.join(IDENTITIES)})")
        if ns.m is None:
            raise SpecError("--identity needs --m")
        ok = True
        for p in ns.p or [2, 3, 5, 7]:
            res = fn(ns.m, p)
            ok &= res.ok
            _out(res.line())
        return EXIT_OK if ok else EXIT_FAIL
    if not (cfg.ring and cfg.cocycle):
        raise SpecError("verify needs --ring and --cocycle, or --identity")
    ring = parse_ring(cfg.ring)
    f = build(ring, parse_cocycle(cfg.cocycle, cfg.dim))
    res = f.certify(mode=ns.mode, samples=ns.samples, seed=cfg.seed)
    if res.mode == "exhaustive":
        how = f"exhaustive, {ring.order}^{f.n + 1} tuples"
    else:
        how = f"sampled, {res.checked} tuples, seed {cfg.seed}"
    if res.ok:
        _out(f"cocycle: VERIFIED ({how})")
        return EXIT_OK
    wit = ", ".join(map(str, res.witness)) if res.witness else ""
    _out(f"cocycle: FAILED ({how}): {res.reason} at ({wit})")
    return EXIT_FAIL


# -- table --------------------------------------------------------------------------------


def _compute_entry(e, threads: int, exponents=None):
    """(computed multiset, note, internal consistency) for a golden entry."""
    ring = e.ring()
    f = PolyCocycle(ring, exponents or e.exponents)
    if e.method == "closed+sample":
        m = e.modulus[1]
        rep = sample_torus3(ring, m, f, TABLE_SAMPLES)
        inv = torus3_from_contribution(ring, m, e.exponents[:2])
        note = f"closed form; {rep.agreed}/{rep.samples} sampled colorings agree"
        return inv, note, rep.ok
    D = parse_knot_spec(e.knot)
    inv = state_sum(D, f, threads=threads, force=True)
    note = "brute force"
    ok = True
    kind, arg = e.modulus
    try:
        if kind == "twist":
            ok = closed_form_twist(ring, arg, f.exponents[:2]) == inv
            note += "; closed form " + ("agrees" if ok else "DISAGREES")
        elif kind == "xi" and f.n == 3:
            ok = torus3_from_contribution(ring, arg, f.exponents[:2]) == inv
            note += "; contribution formula " + ("agrees" if ok else "DISAGREES")
        elif kind == "xi" and f.n == 2:
            ok = closed_form_torus2(ring, arg, f.exponents) == inv
            note += "; closed form " + ("agrees" if ok else "DISAGREES")
    except InvalidParams:
        pass
    return inv, note, ok


def cmd_table(cfg: RunConfig, name: str) -> int:
    if name not in TABLES:
        raise SpecError(f"unknown table {name!r} (choose from {', '.join(TABLES)})")
    failures = errata = 0
    for e in TABLES[name]:
        ring = e.ring()
        printed = parse_upoly(ring, e.printed)
        inv, note, consistent = _compute_entry(e, cfg.threads)
        if inv == printed and consistent:
            status = "MATCH"
        elif e.suspect:
            status = "ERRATUM CANDIDATE"
            errata += 1
        else:
            status = "MISMATCH"
            failures += 1
        _out(f"{e.label}: {status}")
        _out(f"  computed: {inv.render_upoly()}")
        if inv != printed:
            _out(f"  printed:  {printed.render_upoly()}")
        _out(f"  ({note})")
        if e.note:
            _out(f"  note: {e.note}")
        if status == "ERRATUM CANDIDATE" and e.alt_exponents:
            alt, _, _ = _compute_entry(e, cfg.threads, e.alt_exponents)
            verdict = "matches the printed value" if alt == printed else "does not match either"
            _out(f"  exponents {e.alt_exponents[:2]}: {alt.render_upoly()} ({verdict})")
    n = len(TABLES[name])
    _out(f"{name}: {n - failures - errata} match, {errata} erratum candidates, {failures} mismatches")
    return EXIT_FAIL if failures else EXIT_OK


# -- witness ------------------------------------------------------------------------------


def cmd_witness(ns: argparse.Namespace) -> int:
    if ns.dim == "4":
        rep = witness_H4(ns.n)
    elif ns.dim == "odd":
        if ns.p is None:
            raise SpecError("--dim odd needs --p")
        rep = witness_odd(ns.r, ns.p, ns.n)
    elif ns.dim in ("2", "3"):
        if not ns.case:
            raise SpecError("--dim 2|3 needs --case")
        rep = check_h23_nontriviality(ns.case, ns.n, p=ns.p, dim=int(ns.dim))
    else:
        raise SpecError(f"unsupported --dim {ns.dim!r}")
    _out(json.dumps(rep.to_json(), indent=2))
    for line in rep.transcript:
        _out("# " + line)
    _out(f"# verdict: {rep.verdict}")
    return EXIT_OK


# -- entry point --------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qcl", description="Quandle cocycle invariants with polynomial cocycles")
    sub = ap.add_subparsers(dest="command", required=True)

    inv = sub.add_parser("invariant", help="state-sum invariant of a knot")
    inv.add_argument("--ring", required=True, help='e.g. p=2,g=xi:5 or {"p":2,"g":"xi:5"}')
    inv.add_argument("--knot", required=True, help="torus:2,m | twist:n | braid:1,1,-2 | unknot | file:PATH")
    inv.add_argument("--cocycle", required=True, help="exponents, e.g. d:4,1")
    inv.add_argument("--dim", type=int, choices=(2, 3), default=2)
    inv.add_argument("--sample", type=int, help="sample N shadow colorings instead of enumerating")
    inv.add_argument("--seed", type=int, default=DEFAULT_SEED)
    inv.add_argument("--format", choices=("upoly", "json"), default="upoly")
    inv.add_argument("--threads", type=int)
    inv.add_argument("--force", action="store_true", help="enumerate even above the size limit")

    ver = sub.add_parser("verify", help="certify a cocycle or check a polynomial identity")
    ver.add_argument("--ring")
    ver.add_argument("--cocycle")
    ver.add_argument("--dim", type=int, default=2)
    ver.add_argument("--mode", choices=("auto", "exhaustive", "sampled"), default="auto")
    ver.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    ver.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ver.add_argument("--identity", help="identity name, e.g. xi-product")
    ver.add_argument("--m", type=int)
    ver.add_argument("--p", type=int, action="append")

    tab = sub.add_parser("table", help="recompute a stored reference table")
    tab.add_argument("name")
    tab.add_argument("--threads", type=int)

    wit = sub.add_parser("witness", help="certify nonzero cohomology with an explicit cycle")
    wit.add_argument("--dim", required=True, help="2, 3, 4 or odd")
    wit.add_argument("--n", type=int, default=1)
    wit.add_argument("--r", type=int, default=1)
    wit.add_argument("--p", type=int)
    wit.add_argument("--case", help="1, 2, 3a..3e or 3 (with --p)")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_SPEC if exc.code else EXIT_OK
    cfg = RunConfig.from_args(ns)
    try:
        if ns.command == "invariant":
            return cmd_invariant(cfg)
        if ns.command == "verify":
            return cmd_verify(cfg, ns)
        if ns.command == "table":
            return cmd_table(cfg, ns.name)
        return cmd_witness(ns)
    except InvalidParams as exc:
        _out(f"InvalidParams: {exc}")
        return EXIT_HYPOTHESIS
    except (SpecError, TooLarge, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        ap.print_usage(sys.stderr)
        return EXIT_SPEC
    except WitnessError as exc:
        print(f"witness failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
