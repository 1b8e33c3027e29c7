#!/usr/bin/env python3
"""Survey orbit invariance of the classifier at configurable scale.

For every catalog class at the chosen dimensions, draw random invertible
local operators, push the canonical representative through them, and
check that every image classifies back to the same label.  This is the
scalable version of the acceptance orbit check: five images per class
make a quick regression sweep, two hundred reproduce the full gate.

Usage:
    python3 scripts/orbit_survey.py --n 5 --seed 7
    python3 scripts/orbit_survey.py --dims 2x6x8 --dims 2x6x10 --n 50
"""

from __future__ import annotations

import argparse
import sys
import time

sys.path.insert(0, "src")

from slocc2mn.acceptance import FAMILY_DIMS
from slocc2mn.catalog import ClassId, build, enumerate_classes
from slocc2mn.classify import classify
from slocc2mn.exact import parse_scalar
from slocc2mn.oracle import orbit_sample


def parse_dims(text: str) -> tuple[int, int, int]:
    parts = text.lower().split("x")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"bad dims {text!r}, expected AxBxC")
    return tuple(int(p) for p in parts)  # type: ignore[return-value]


def concrete(cid: ClassId, x: str) -> ClassId:
    if cid.parameterized and cid.param is None:
        return ClassId(cid.family, cid.index, cid.M, parse_scalar(x))
    return cid


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", action="append", type=parse_dims, default=None,
                    help="dimensions to survey, e.g. 2x4x5 (repeatable; "
                         "default: the full acceptance coverage)")
    ap.add_argument("--n", type=int, default=5, help="images per class")
    ap.add_argument("--seed", type=int, default=1009)
    ap.add_argument("--height", type=int, default=2,
                    help="entry bound for the random operators")
    ap.add_argument("--x", default="2", help="parameter for symbolic classes")
    args = ap.parse_args(argv)

    dims_list = args.dims if args.dims else list(FAMILY_DIMS)
    grand_total = 0
    grand_failures = 0
    print(f"# orbit survey: n={args.n} seed={args.seed} height={args.height}")
    print(f"{'dims':>8}  {'classes':>7}  {'images':>7}  {'fail':>4}  {'ms/classify':>11}")
    for dims in dims_list:
        classes = enumerate_classes(dims)
        failures = 0
        t0 = time.time()
        count = 0
        for k, cid in enumerate(classes):
            c = concrete(cid, args.x)
            home = classify(build(c)).label
            seed = args.seed + 101 * k
            for image in orbit_sample(c, args.n, seed=seed, height=args.height):
                count += 1
                got = classify(image).label
                if got != home:
                    failures += 1
                    print(f"  MISS {cid.text()} seed={seed}: {got} "
                          f"(home {home})", file=sys.stderr)
        ms = 1000.0 * (time.time() - t0) / max(count, 1)
        name = "x".join(str(d) for d in dims)
        print(f"{name:>8}  {len(classes):>7}  {count:>7}  {failures:>4}  {ms:>11.2f}")
        grand_total += count
        grand_failures += failures
    print(f"# total {grand_total} images, {grand_failures} failures")
    return 1 if grand_failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
