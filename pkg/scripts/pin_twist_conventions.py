"""Try all four crossing conventions for the twist-knot diagram against the stored reference rows.

The convention in knots.TWIST_KIND / knots.CLASP_KIND is the one where every
row matches. Same-kind choices unwind the clasp (every coloring count is |X|).
"""

import itertools

from quandle_cocycles import PolyCocycle, parse_upoly
from quandle_cocycles.golden import TABLES
from quandle_cocycles.invariants import state_sum
from quandle_cocycles.knots import build_twist


def main():
    rows = [e for name in ("twist-p3", "twist-p5", "twist-p7") for e in TABLES[name]]
    for twist_kind, clasp_kind in itertools.product((1, -1), repeat=2):
        ok, bad = 0, []
        for e in rows:
            ring = e.ring()
            n = e.modulus[1]
            D = build_twist(n, twist_kind, clasp_kind)
            exps = e.exponents
            got = state_sum(D, PolyCocycle(ring, exps))
            want = parse_upoly(ring, e.printed)
            if got != want and e.alt_exponents:
                got = state_sum(D, PolyCocycle(ring, e.alt_exponents))
            if got == want:
                ok += 1
            else:
                bad.append(e.label)
        print(f"twist kind {twist_kind:+d}, clasp kind {clasp_kind:+d}: {ok}/{len(rows)} rows match")
        for label in bad:
            print(f"    mismatch: {label}")


if __name__ == "__main__":
    main()
