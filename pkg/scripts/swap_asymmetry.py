#!/usr/bin/env python3
"""How the catalog reacts to swapping the two large parties.

At rectangular dimensions the classifier normalizes orientation, so
exchanging parties B and C can never change a label.  At square
dimensions the swap is a genuine outer symmetry: it transposes the
pencil, exchanging minimal row and column indices, and therefore acts
on the catalog as an involution that may move between classes.  This
script verifies label stability at rectangular dims, reports the
induced involution at square dims, and tabulates how often the
signature [a1, a2, a3] is symmetric in its last two entries.

Usage:
    python3 scripts/swap_asymmetry.py
    python3 scripts/swap_asymmetry.py --dims 2x4x4 --dims 2x5x8
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter

sys.path.insert(0, "src")

from slocc2mn.acceptance import FAMILY_DIMS
from slocc2mn.catalog import ClassId, build, enumerate_classes
from slocc2mn.classify import classify
from slocc2mn.exact import parse_scalar
from slocc2mn.pencil import range_signature


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
                    help="dimensions to check (repeatable; default: the "
                         "full acceptance coverage)")
    ap.add_argument("--x", default="2", help="parameter for symbolic classes")
    args = ap.parse_args(argv)

    dims_list = args.dims if args.dims else list(FAMILY_DIMS)
    bad = 0
    moved: list[str] = []
    shapes: Counter[str] = Counter()
    print(f"{'dims':>8}  {'classes':>7}  {'sym':>4}  {'asym':>4}  under swap")
    for dims in dims_list:
        swap_map: dict[str, str] = {}
        sym = asym = 0
        square = dims[1] == dims[2]
        for cid in enumerate_classes(dims):
            state = build(concrete(cid, args.x))
            _, a2, a3 = range_signature(state)
            if a2 == a3:
                sym += 1
            else:
                asym += 1
            home = classify(state).label
            swapped = classify(state.permute_parties((0, 2, 1))).label
            swap_map[home] = swapped
            if swapped != home and not square:
                bad += 1
                print(f"  rectangular label changed: {cid.text()} -> "
                      f"{swapped}", file=sys.stderr)
        cycles = sorted({tuple(sorted((a, b))) for a, b in swap_map.items()
                         if a != b})
        for a, b in cycles:
            if swap_map.get(b) != a:  # the swap must square to the identity
                bad += 1
                print(f"  not an involution: {a} -> {b} -> "
                      f"{swap_map.get(b)}", file=sys.stderr)
            else:
                moved.append(f"{a} <-> {b}")
        shapes["sym"] += sym
        shapes["asym"] += asym
        name = "x".join(str(d) for d in dims)
        verdict = "fixed" if not cycles else "; ".join(f"{a} <-> {b}"
                                                       for a, b in cycles)
        print(f"{name:>8}  {sym + asym:>7}  {sym:>4}  {asym:>4}  {verdict}")
    total = shapes["sym"] + shapes["asym"]
    print(f"# {total} classes: {shapes['sym']} have a2 = a3, "
          f"{shapes['asym']} do not; swap 2-cycles: "
          f"{', '.join(moved) if moved else 'none'}")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
