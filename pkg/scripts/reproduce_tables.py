"""Recompute every stored table through the CLI and print a one-line summary per table."""

import argparse
import contextlib
import io
import time

from quandle_cocycles.cli import main as qcl
from quandle_cocycles.golden import TABLE_NAMES


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("names", nargs="*", default=list(TABLE_NAMES))
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--verbose", action="store_true", help="print the full table output")
    args = ap.parse_args()
    for name in args.names:
        buf = io.StringIO()
        start = time.perf_counter()
        with contextlib.redirect_stdout(buf):
            code = qcl(["table", name, "--threads", str(args.threads)])
        out = buf.getvalue()
        if args.verbose:
            print(out, end="")
        print(f"{out.strip().splitlines()[-1]}  [exit {code}, {time.perf_counter() - start:.1f} s]")


if __name__ == "__main__":
    main()
