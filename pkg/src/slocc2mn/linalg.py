"""Exact linear algebra kernels.

Rank and determinant questions are answered fraction-free over the Gaussian
integers (Bareiss elimination on (re, im) int pairs), which is dramatically
cheaper than Fraction arithmetic and is the workhorse behind every orbit
classification.  Reduced row echelon form and kernels run over Scalar for
the small matrices where exact rational output is needed.  The Smith form
routine over polynomial matrices feeds the determinantal divisor chain.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import ONE, Scalar, UniPoly, ZERO

GaussInt = tuple[int, int]
GIMatrix = list[list[GaussInt]]

GI_ZERO: GaussInt = (0, 0)
GI_ONE: GaussInt = (1, 0)


def _gi_mul(x: GaussInt, y: GaussInt) -> GaussInt:
    a, b = x
    c, d = y
    return (a * c - b * d, a * d + b * c)


def _gi_sub(x: GaussInt, y: GaussInt) -> GaussInt:
    return (x[0] - y[0], x[1] - y[1])


def _gi_div_exact(x: GaussInt, y: GaussInt) -> GaussInt:
    # Exact division in Z[i]; callers guarantee divisibility (Bareiss).
    a, b = x
    c, d = y
    n = c * c + d * d
    return ((a * c + b * d) // n, (b * c - a * d) // n)


def scalars_to_gauss(mat: Sequence[Sequence[Scalar]]) -> GIMatrix:
    """Clear denominators globally; the rank is unchanged."""
    denom = 1
    for row in mat:
        for s in row:
            denom = denom * s.re.denominator // _gcd(denom, s.re.denominator)
            denom = denom * s.im.denominator // _gcd(denom, s.im.denominator)
    out: GIMatrix = []
    for row in mat:
        out.append([(int(s.re * denom), int(s.im * denom)) for s in row])
    return out


def _gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def _int_rank(rows: list[list[int]]) -> int:
    # Bareiss on plain ints; mutates rows.  Same control flow as gi_rank
    # without the tuple arithmetic, which is most of that function's cost.
    nr, nc = len(rows), len(rows[0])
    prev = 1
    rank = 0
    row = 0
    for col in range(nc):
        pivot_row = -1
        for r in range(row, nr):
            if rows[r][col]:
                pivot_row = r
                break
        if pivot_row < 0:
            continue
        if pivot_row != row:
            rows[row], rows[pivot_row] = rows[pivot_row], rows[row]
        piv = rows[row][col]
        top = rows[row]
        for r in range(row + 1, nr):
            rr = rows[r]
            lead = rr[col]
            if lead:
                for c in range(col + 1, nc):
                    rr[c] = (piv * rr[c] - lead * top[c]) // prev
                rr[col] = 0
            elif piv != prev:
                for c in range(col + 1, nc):
                    if rr[c]:
                        rr[c] = piv * rr[c] // prev
        prev = piv
        row += 1
        rank += 1
        if row == nr:
            break
    return rank


def gi_rank(mat: GIMatrix) -> int:
    """Rank via fraction-free Bareiss elimination with column skipping."""
    if not mat or not mat[0]:
        return 0
    if all(not e[1] for row in mat for e in row):
        return _int_rank([[e[0] for e in row] for row in mat])
    rows = [list(r) for r in mat]
    nr, nc = len(rows), len(rows[0])
    prev: GaussInt = GI_ONE
    rank = 0
    row = 0
    for col in range(nc):
        pivot_row = -1
        for r in range(row, nr):
            if rows[r][col] != GI_ZERO:
                pivot_row = r
                break
        if pivot_row < 0:
            continue
        if pivot_row != row:
            rows[row], rows[pivot_row] = rows[pivot_row], rows[row]
        piv = rows[row][col]
        top = rows[row]
        for r in range(row + 1, nr):
            rr = rows[r]
            lead = rr[col]
            # Bareiss invariant: every entry stays a minor of the original
            # matrix, so the pivot rescaling applies even when lead is zero.
            if lead == GI_ZERO:
                for c in range(col + 1, nc):
                    if rr[c] != GI_ZERO:
                        val = _gi_mul(piv, rr[c])
                        rr[c] = _gi_div_exact(val, prev) if prev != GI_ONE else val
            else:
                for c in range(col + 1, nc):
                    val = _gi_sub(_gi_mul(piv, rr[c]), _gi_mul(lead, top[c]))
                    rr[c] = _gi_div_exact(val, prev) if prev != GI_ONE else val
                rr[col] = GI_ZERO
        prev = piv
        row += 1
        rank += 1
        if row == nr:
            break
    return rank


def gi_det(mat: GIMatrix) -> GaussInt:
    """Determinant of a square Gaussian-integer matrix (Bareiss)."""
    n = len(mat)
    if n == 0:
        return GI_ONE
    if any(len(r) != n for r in mat):
        raise ValueError("determinant requires a square matrix")
    rows = [list(r) for r in mat]
    prev: GaussInt = GI_ONE
    sign = 1
    for col in range(n):
        pivot_row = -1
        for r in range(col, n):
            if rows[r][col] != GI_ZERO:
                pivot_row = r
                break
        if pivot_row < 0:
            return GI_ZERO
        if pivot_row != col:
            rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
            sign = -sign
        piv = rows[col][col]
        for r in range(col + 1, n):
            lead = rows[r][col]
            rr = rows[r]
            for c in range(col + 1, n):
                val = _gi_sub(_gi_mul(piv, rr[c]), _gi_mul(lead, rows[col][c]))
                rr[c] = _gi_div_exact(val, prev) if prev != GI_ONE else val
            rr[col] = GI_ZERO
        prev = piv
    d = rows[n - 1][n - 1]
    return (sign * d[0], sign * d[1])


def scalar_rank(mat: Sequence[Sequence[Scalar]]) -> int:
    if not mat or not mat[0]:
        return 0
    return gi_rank(scalars_to_gauss(mat))


def scalar_det(mat: Sequence[Sequence[Scalar]]) -> Scalar:
    """Exact determinant over Scalar (row-wise denominator clearing)."""
    n = len(mat)
    if n == 0:
        return ONE
    scale = Fraction(1)
    cleared: GIMatrix = []
    for row in mat:
        if len(row) != n:
            raise ValueError("determinant requires a square matrix")
        denom = 1
        for s in row:
            denom = denom * s.re.denominator // _gcd(denom, s.re.denominator)
            denom = denom * s.im.denominator // _gcd(denom, s.im.denominator)
        scale *= denom
        cleared.append([(int(s.re * denom), int(s.im * denom)) for s in row])
    d = gi_det(cleared)
    return Scalar(Fraction(d[0]) / scale, Fraction(d[1]) / scale)


def rref(mat: Sequence[Sequence[Scalar]]) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row echelon form and the pivot column indices, in order."""
    rows = [list(r) for r in mat]
    if not rows:
        return [], []
    nr, nc = len(rows), len(rows[0])
    pivots: list[int] = []
    row = 0
    for col in range(nc):
        pivot_row = -1
        for r in range(row, nr):
            if not rows[r][col].is_zero():
                pivot_row = r
                break
        if pivot_row < 0:
            continue
        rows[row], rows[pivot_row] = rows[pivot_row], rows[row]
        inv = rows[row][col].inverse()
        rows[row] = [v * inv for v in rows[row]]
        for r in range(nr):
            if r != row and not rows[r][col].is_zero():
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[row])]
        pivots.append(col)
        row += 1
        if row == nr:
            break
    return rows, pivots


def kernel_basis(mat: Sequence[Sequence[Scalar]]) -> list[list[Scalar]]:
    """Basis of the right kernel, one vector per free column."""
    if not mat:
        return []
    nc = len(mat[0])
    reduced, pivots = rref(mat)
    pivot_set = set(pivots)
    basis: list[list[Scalar]] = []
    for free in range(nc):
        if free in pivot_set:
            continue
        vec = [ZERO] * nc
        vec[free] = ONE
        for row_idx, pcol in enumerate(pivots):
            vec[pcol] = -reduced[row_idx][free]
        basis.append(vec)
    return basis


def matmul(a: Sequence[Sequence[Scalar]],
           b: Sequence[Sequence[Scalar]]) -> list[list[Scalar]]:
    if a and b and len(a[0]) != len(b):
        raise ValueError("matmul dimension mismatch")
    out: list[list[Scalar]] = []
    for row in a:
        acc = [ZERO] * (len(b[0]) if b else 0)
        for k, f in enumerate(row):
            if f.is_zero():
                continue
            brow = b[k]
            for j, v in enumerate(brow):
                if not v.is_zero():
                    acc[j] = acc[j] + f * v
        out.append(acc)
    return out


def identity(n: int) -> list[list[Scalar]]:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


# Raw polynomial lane for the Smith reduction.  A polynomial is a list of
# (re, im) rational pairs, lowest degree first, trailing zeros stripped
# ([] is the zero polynomial).  Bypassing the Scalar/UniPoly wrappers here
# cuts the interpreter call count by an order of magnitude, which is what
# dominates orbit-scale classification.

_Q0 = ZERO.re
_Q1 = ONE.re

RawPoly = list  # list[tuple[rational, rational]]


def _rp_strip(p: RawPoly) -> RawPoly:
    while p and not p[-1][0] and not p[-1][1]:
        p.pop()
    return p


def _rp_mul(a: RawPoly, b: RawPoly) -> RawPoly:
    if not a or not b:
        return []
    out = [(_Q0, _Q0)] * (len(a) + len(b) - 1)
    for j, (ar, ai) in enumerate(a):
        if not ar and not ai:
            continue
        for k, (br, bi) in enumerate(b):
            if not br and not bi:
                continue
            rr, ri = out[j + k]
            out[j + k] = (rr + ar * br - ai * bi, ri + ar * bi + ai * br)
    return _rp_strip(out)


def _rp_sub(a: RawPoly, b: RawPoly) -> RawPoly:
    out = [(ar - br, ai - bi) for (ar, ai), (br, bi) in zip(a, b)]
    out.extend(a[len(b):])
    out.extend((-br, -bi) for br, bi in b[len(a):])
    return _rp_strip(out)


def _rp_add(a: RawPoly, b: RawPoly) -> RawPoly:
    if len(a) < len(b):
        a, b = b, a
    out = [(ar + br, ai + bi) for (ar, ai), (br, bi) in zip(a, b)]
    out.extend(a[len(b):])
    return _rp_strip(out)


def _rp_primitive(polys: Iterable[RawPoly]) -> None:
    """Scale a row or column of raw polynomials to primitive integer content.

    Scaling by a nonzero rational is a unimodular operation over Q(i)[x];
    doing it after every elimination step keeps the coefficients from
    snowballing, which is what makes the Smith reduction affordable.
    """
    num_gcd = 0
    den_lcm = 1
    flat = []
    for p in polys:
        for re, im in p:
            for part in (re, im):
                if part:
                    flat.append(part)
                    num_gcd = _gcd(num_gcd, int(part.numerator))
                    d = int(part.denominator)
                    den_lcm = den_lcm * d // _gcd(den_lcm, d)
    if not flat:
        return
    num_gcd = abs(num_gcd)
    if num_gcd == den_lcm == 1:
        return
    factor = _Q1 * den_lcm / num_gcd
    for p in polys:
        for k, (re, im) in enumerate(p):
            p[k] = (re * factor, im * factor)


def _rp_divmod(num: RawPoly, den: RawPoly) -> tuple[RawPoly, RawPoly]:
    dd = len(den) - 1
    if len(num) - 1 < dd:
        return [], list(num)
    rem = list(num)
    dr, di = den[-1]
    norm = dr * dr + di * di if di else None
    q: RawPoly = [(_Q0, _Q0)] * (len(rem) - dd)
    for top in range(len(rem) - 1, dd - 1, -1):
        cr, ci = rem[top]
        if not cr and not ci:
            continue
        if norm is None:
            f = (cr / dr, ci / dr)
        else:
            f = ((cr * dr + ci * di) / norm, (ci * dr - cr * di) / norm)
        q[top - dd] = f
        rem[top] = (_Q0, _Q0)
        fr, fi = f
        base = top - dd
        for k in range(dd):
            br, bi = den[k]
            if not br and not bi:
                continue
            rr, ri = rem[base + k]
            rem[base + k] = (rr - fr * br + fi * bi, ri - fr * bi - fi * br)
    return _rp_strip(q), _rp_strip(rem)


def poly_smith_diagonal(mat: Sequence[Sequence[UniPoly]]) -> list[UniPoly]:
    """Monic invariant factors of a polynomial matrix, divisibility ordered.

    Returns only the nonzero factors; their count is the normal rank.
    Unimodular row/column operations over Q(i)[x], with minimum-degree
    pivoting to limit degree growth.  Internally runs on the raw coefficient
    representation above.
    """
    rows: list[list[RawPoly]] = [
        [[(c.re, c.im) for c in p.coeffs] for p in r] for r in mat
    ]
    if not rows or not rows[0]:
        return []
    nr, nc = len(rows), len(rows[0])
    out: list[UniPoly] = []
    t = 0
    while t < nr and t < nc:
        # Minimum-degree nonzero entry in the trailing submatrix.
        best: tuple[int, int] | None = None
        best_deg = -1
        for i in range(t, nr):
            for j in range(t, nc):
                p = rows[i][j]
                if not p:
                    continue
                if best is None or len(p) - 1 < best_deg:
                    best = (i, j)
                    best_deg = len(p) - 1
        if best is None:
            break
        bi, bj = best
        if bi != t:
            rows[t], rows[bi] = rows[bi], rows[t]
        if bj != t:
            for r in rows:
                r[t], r[bj] = r[bj], r[t]
        while True:
            pivot = rows[t][t]
            # Reduce the pivot column.
            disturbed = False
            for i in range(t + 1, nr):
                if not rows[i][t]:
                    continue
                q, rem = _rp_divmod(rows[i][t], pivot)
                if q:
                    rows[i] = [_rp_sub(a, _rp_mul(q, b))
                               for a, b in zip(rows[i], rows[t])]
                    _rp_primitive(rows[i])
                if rem:
                    rows[t], rows[i] = rows[i], rows[t]
                    disturbed = True
                    break
            if disturbed:
                continue
            # Reduce the pivot row.
            for j in range(t + 1, nc):
                if not rows[t][j]:
                    continue
                q, rem = _rp_divmod(rows[t][j], pivot)
                if q:
                    for r in rows:
                        r[j] = _rp_sub(r[j], _rp_mul(q, r[t]))
                    _rp_primitive([r[j] for r in rows])
                if rem:
                    for r in rows:
                        r[t], r[j] = r[j], r[t]
                    disturbed = True
                    break
            if disturbed:
                continue
            # Pivot must divide every remaining entry.
            offender = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if _rp_divmod(rows[i][j], pivot)[1]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            rows[t] = [_rp_add(a, b)
                       for a, b in zip(rows[t], rows[offender])]
        out.append(UniPoly(Scalar(re, im) for re, im in rows[t][t]).monic())
        t += 1
    return out
