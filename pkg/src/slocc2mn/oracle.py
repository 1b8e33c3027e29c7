"""Cross-checks for the exact pencil engine.

Two independent recomputation routes.  A floating-point route redoes the
range-signature counts with numeric root isolation and SVD rank decisions:
candidate points come from minor-gcd polynomials, but whether a candidate
actually drops the rank, and what the normal rank is, are decided purely
from singular values.  A brute route rebuilds Kronecker structure data from
first principles: explicit minor enumeration for the determinantal divisor
chain, degree-by-degree polynomial kernels for the minimal indices, and a
fresh gcd-ladder refinement for the eigenvalue partition.  Both routes
share only the scalar, polynomial and elimination primitives with the
engine, so agreement is evidence against bugs in its Smith-reduction and
Toeplitz paths.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from random import Random
from typing import Callable, Sequence

import mpmath
from mpmath import mp

from .catalog import ClassId, build
from .exact import (
    ZERO,
    BinaryForm,
    Scalar,
    UniPoly,
    form_gcd,
    form_squarefree,
)
from .linalg import kernel_basis, scalar_rank
from .pencil import (
    INFINITE,
    Count,
    KroneckerData,
    RangeSignature,
    kronecker_data,
    range_signature,
)
from .states import Pencil, PureState, random_ilo

#: Working precisions tried in turn when a decision lands in the ambiguity
#: band; the last failure is reported to the caller.
PRECISION_LADDER = (30, 60, 120)

_INCONCLUSIVE = "oracle inconclusive, raise precision"


class OracleInconclusive(RuntimeError):
    """Numeric evidence too weak to call either way at this precision."""


@dataclass(frozen=True)
class OracleReport:
    """One cross-check outcome, self-describing for logs and reports."""

    quantity: str
    exact: str
    oracle: str
    agrees: bool
    precision: int
    samples: int = 1


# ----------------------------------------------------------- shared exact
#
# Both routes draw candidate polynomials from the pencil's minors.  The
# chart below matches the form convention used for determinantal divisors:
# the dehomogenized variable multiplies the first slice, so a k-minor is a
# binary form of total degree exactly k once rehomogenized.


def _chart_entries(pencil: Pencil) -> list[list[UniPoly]]:
    return [
        [UniPoly((b, a)) for a, b in zip(r0, r1)]
        for r0, r1 in zip(pencil.a0, pencil.a1)
    ]


def _subdet(
    entries: list[list[UniPoly]],
    rows: tuple[int, ...],
    cols: tuple[int, ...],
    memo: dict,
) -> UniPoly:
    """Determinant of the (rows, cols) submatrix by first-row expansion."""
    if not rows:
        return UniPoly((1,))
    key = (rows, cols)
    cached = memo.get(key)
    if cached is not None:
        return cached
    total = UniPoly(())
    rest = rows[1:]
    for pos, j in enumerate(cols):
        entry = entries[rows[0]][j]
        if entry.is_zero():
            continue
        sub = _subdet(entries, rest, cols[:pos] + cols[pos + 1 :], memo)
        if sub.is_zero():
            continue
        term = entry * sub
        total = total + term if pos % 2 == 0 else total - term
    memo[key] = total
    return total


def _minor_gcd(
    entries: list[list[UniPoly]], k: int, memo: dict
) -> BinaryForm | None:
    """Monic gcd of the k-minors as degree-k forms; None when all vanish.

    Zero minors never constrain a gcd and are skipped; column subsets that
    leave some chosen row without support cannot produce a nonzero minor,
    which prunes most of the search on sparse pencils.
    """
    nrows, ncols = len(entries), len(entries[0])
    if k > min(nrows, ncols):
        return None
    supports = [
        frozenset(j for j, e in enumerate(row) if not e.is_zero())
        for row in entries
    ]
    acc: BinaryForm | None = None
    for rows in itertools.combinations(range(nrows), k):
        pool = sorted(frozenset().union(*(supports[i] for i in rows)))
        if len(pool) < k:
            continue
        for cols in itertools.combinations(pool, k):
            det = _subdet(entries, rows, cols, memo)
            if det.is_zero():
                continue
            form = BinaryForm.from_poly(det, k)
            acc = form.monic() if acc is None else form_gcd(acc, form)
            if acc.degree == 0:
                return acc
    return acc


# ------------------------------------------------------------ float route


def _to_mpc(s: Scalar):
    re = mp.mpf(s.re.numerator) / s.re.denominator
    im = mp.mpf(s.im.numerator) / s.im.denominator
    return mp.mpc(re, im)


class _NumericPencil:
    """Floating image of a pencil with banded rank decisions.

    Singular-value ratios below ``tol`` count as zero and ratios above
    ``sqrt(tol)`` as nonzero; anything between the two is refused rather
    than guessed.
    """

    def __init__(self, pencil: Pencil, precision: int) -> None:
        self.tol = mp.mpf(10) ** -(precision // 2)
        self.band = mp.sqrt(self.tol)
        self.a0 = [[_to_mpc(x) for x in row] for row in pencil.a0]
        self.a1 = [[_to_mpc(x) for x in row] for row in pencil.a1]
        self.nrows = pencil.nrows
        self.ncols = pencil.ncols
        self.scale = mp.sqrt(
            sum(abs(x) ** 2 for rows in (self.a0, self.a1) for r in rows for x in r)
        )

    def rank_at(self, alpha, beta) -> int:
        mat = mp.matrix(
            [
                [alpha * x + beta * y for x, y in zip(r0, r1)]
                for r0, r1 in zip(self.a0, self.a1)
            ]
        )
        sigmas = list(mp.svd(mat, compute_uv=False))
        top = sigmas[0]
        if top < self.tol * self.scale:
            return 0
        if top < self.band * self.scale:
            raise OracleInconclusive(_INCONCLUSIVE)
        rank = 1
        for s in sigmas[1:]:
            ratio = s / top
            if ratio >= self.band:
                rank += 1
            elif ratio >= self.tol:
                raise OracleInconclusive(_INCONCLUSIVE)
            else:
                break
        return rank

    def normal_rank(self) -> int:
        # the rank falls below its generic value at no more than min(M, N)
        # projective points, so one extra sample always sees the true rank
        n = min(self.nrows, self.ncols) + 1
        best = 0
        root2 = mp.sqrt(2)
        for k in range(n):
            alpha = mp.expjpi(mp.mpf(2 * k + 1) / (4 * n))
            best = max(best, self.rank_at(alpha / root2, 1 / root2))
        return best


def _root_points(form: BinaryForm, precision: int) -> list[tuple]:
    """Numeric projective roots of the squarefree part, unit-normalized."""
    squarefree = form_squarefree(form)
    points: list[tuple] = []
    if squarefree.inf_mult > 0:
        points.append((mp.mpc(1), mp.mpc(0)))
    dehom = squarefree.dehom()
    if dehom.degree >= 1:
        coeffs = [_to_mpc(c) for c in reversed(dehom.coeffs)]
        try:
            roots = mpmath.polyroots(
                coeffs, maxsteps=200, extraprec=2 * precision
            )
        except mp.NoConvergence:
            raise OracleInconclusive(_INCONCLUSIVE) from None
        for t in roots:
            h = mp.sqrt(1 + abs(t) ** 2)
            points.append((t / h, 1 / h))
    return points


def _numeric_counts(
    pencil: Pencil, precision: int
) -> tuple[Count, Count, Count]:
    """(slice count, row-side count, column-side count), decided numerically."""
    numeric = _NumericPencil(pencil, precision)
    if numeric.scale == 0:
        raise ValueError("zero pencil has no signature")
    r = numeric.normal_rank()
    entries = _chart_entries(pencil)
    memo: dict = {}
    rank_lists: dict[int, list[int]] = {}

    def drop_ranks(k: int) -> list[int]:
        # verified ranks at the roots of the gcd of (k + 1)-minors
        if k not in rank_lists:
            form = _minor_gcd(entries, k + 1, memo)
            if form is None:
                raise RuntimeError(
                    "minor enumeration contradicts the sampled rank"
                )
            rank_lists[k] = [
                numeric.rank_at(alpha, beta)
                for alpha, beta in _root_points(form, precision)
            ]
        return rank_lists[k]

    if r <= 1:
        a_slice = INFINITE
    else:
        ranks = drop_ranks(1)
        n1 = sum(1 for rk in ranks if rk <= 1)
        n0 = sum(1 for rk in ranks if rk == 0)
        a_slice = Count(n1 - n0)

    def side_count(side: int) -> Count:
        if r < side:
            return INFINITE
        # here side equals the normal rank
        ranks = drop_ranks(side - 1)
        if any(rk <= side - 2 for rk in ranks):
            return INFINITE
        return Count(sum(1 for rk in ranks if rk == side - 1))

    return a_slice, side_count(numeric.nrows), side_count(numeric.ncols)


def _with_ladder(compute: Callable[[int], RangeSignature],
                 precision: int | None) -> tuple[RangeSignature, int]:
    if precision is not None:
        return compute(precision), precision
    failure: OracleInconclusive | None = None
    for dps in PRECISION_LADDER:
        try:
            return compute(dps), dps
        except OracleInconclusive as exc:
            failure = exc
    assert failure is not None
    raise failure


def _signature_core(
    state: PureState, precision: int | None
) -> tuple[RangeSignature, int, int]:
    """(signature, precision used, trimmed qubit party)."""
    if state.nparties != 3:
        raise ValueError("range signature requires exactly three parties")
    trimmed, _ = state.trim()
    try:
        qubit = next(p for p in range(3) if trimmed.dims[p] == 2)
    except StopIteration:
        raise ValueError(
            "range signature requires a qubit party after trimming"
        ) from None
    pencil = trimmed.pencil_of(qubit)
    others = [p for p in range(3) if p != qubit]

    def compute(dps: int) -> RangeSignature:
        with mp.workdps(dps):
            a_slice, a_row, a_col = _numeric_counts(pencil, dps)
        by_party = {qubit: a_slice, others[0]: a_row, others[1]: a_col}
        return RangeSignature(by_party[0], by_party[1], by_party[2])

    signature, used = _with_ladder(compute, precision)
    return signature, used, qubit


def float_signature_oracle(
    state: PureState, precision: int | None = None
) -> RangeSignature:
    """Range signature recomputed with floating-point decisions.

    With ``precision`` set, a single attempt is made at that many digits;
    otherwise the precision ladder is walked and the last inconclusive
    failure propagates if even the top rung cannot decide.
    """
    signature, _, _ = _signature_core(state, precision)
    return signature


def float_product_count_oracle(
    state: PureState, precision: int | None = None
) -> Count:
    """Product-ray count of the qubit-traced range, decided numerically.

    The count is the qubit party's entry of the range signature: the number
    of rank-one points of the slice pencil, infinite when the whole line is
    rank-deficient.
    """
    signature, _, qubit = _signature_core(state, precision)
    return tuple(signature)[qubit]


def signature_report(state: PureState) -> OracleReport:
    """Exact range signature against the float oracle, ladder policy."""
    exact = range_signature(state)
    signature, used, _ = _signature_core(state, None)
    return OracleReport(
        quantity="range-signature",
        exact=str(exact),
        oracle=str(signature),
        agrees=tuple(exact) == tuple(signature),
        precision=used,
    )


# ------------------------------------------------------------ brute route


def _sampled_rank(pencil: Pencil) -> int:
    # exact evaluation at min(M, N) + 1 distinct points; at most min(M, N)
    # of them can be rank-drop points
    best = 0
    for t in range(min(pencil.nrows, pencil.ncols) + 1):
        ts = Scalar(t, 0)
        mat = [
            [b + ts * a for a, b in zip(r0, r1)]
            for r0, r1 in zip(pencil.a0, pencil.a1)
        ]
        best = max(best, scalar_rank(mat))
    return best


def _coeff_system(pencil: Pencil, degree: int) -> list[list[Scalar]]:
    """Linear system for polynomial kernel vectors of the given degree.

    A column vector polynomial of degree ``degree`` lies in the kernel
    exactly when every bidegree component of the pencil product vanishes;
    block row k collects the component with k powers of the first slice's
    variable, receiving A0 from coefficient k - 1 and A1 from coefficient k.
    """
    nr, nc = pencil.nrows, pencil.ncols
    mat = [[ZERO] * ((degree + 1) * nc) for _ in range((degree + 2) * nr)]
    for j in range(degree + 1):
        for i in range(nr):
            for c in range(nc):
                mat[(j + 1) * nr + i][j * nc + c] = pencil.a0[i][c]
                mat[j * nr + i][j * nc + c] = pencil.a1[i][c]
    return mat


def _check_kernel_polys(
    pencil: Pencil, mat: list[list[Scalar]], degree: int
) -> None:
    """Re-verify every kernel basis vector as an exact polynomial identity."""
    for vec in kernel_basis(mat):
        parts = [
            vec[j * pencil.ncols : (j + 1) * pencil.ncols]
            for j in range(degree + 1)
        ]
        for k in range(degree + 2):
            lo = parts[k - 1] if k >= 1 else None
            hi = parts[k] if k <= degree else None
            for i in range(pencil.nrows):
                total = ZERO
                if lo is not None:
                    for c in range(pencil.ncols):
                        total = total + pencil.a0[i][c] * lo[c]
                if hi is not None:
                    for c in range(pencil.ncols):
                        total = total + pencil.a1[i][c] * hi[c]
                if not total.is_zero():
                    raise RuntimeError(
                        "kernel vector fails the exact pencil product"
                    )


def _brute_indices(
    pencil: Pencil, expected: int, max_degree: int
) -> tuple[int, ...]:
    """Column minimal indices from raw kernel dimensions, lowest first.

    A kernel vector of degree e contributes e + 1 coefficient-space
    dimensions at every later degree, so the first difference of kernel
    dimensions counts the indices not exceeding e.
    """
    if expected == 0:
        return ()
    found: list[int] = []
    prev_dim = 0
    prev_le = 0
    for degree in range(max_degree + 1):
        mat = _coeff_system(pencil, degree)
        dim = (degree + 1) * pencil.ncols - scalar_rank(mat)
        n_le = dim - prev_dim
        found.extend([degree] * (n_le - prev_le))
        if n_le == expected:
            _check_kernel_polys(pencil, mat, degree)
            return tuple(found)
        prev_dim, prev_le = dim, n_le
    raise RuntimeError("kernel search passed max_degree without completing")


def _mult_split(
    factor: BinaryForm, s: BinaryForm
) -> list[tuple[BinaryForm, int]]:
    """Group the roots of squarefree ``factor`` by multiplicity in ``s``."""
    h = form_gcd(factor, s)
    if h.degree == 0:
        return [(factor, 0)]
    out: list[tuple[BinaryForm, int]] = []
    if h.degree < factor.degree:
        out.append((factor.exact_div(h).monic(), 0))
    for g, mult in _mult_split(h, s.exact_div(h).monic()):
        out.append((g, mult + 1))
    return out


def _brute_partition(
    divisors: Sequence[BinaryForm],
) -> tuple[tuple[tuple[tuple[int, ...], int], ...], int]:
    eig = divisors[-1]
    if eig.is_constant():
        return (), 0
    radical = form_squarefree(eig)
    factors: list[BinaryForm] = []
    prev: BinaryForm | None = None
    for d in divisors:
        factors.append(d if prev is None else d.exact_div(prev).monic())
        prev = d
    clusters: list[tuple[BinaryForm, tuple[int, ...]]] = [(radical, ())]
    for s in factors:
        clusters = [
            (g, vec + (mult,))
            for q, vec in clusters
            for g, mult in _mult_split(q, s)
        ]
    merged: dict[tuple[int, ...], int] = {}
    for q, vec in clusters:
        key = vec
        while key and key[0] == 0:
            key = key[1:]
        merged[key] = merged.get(key, 0) + q.degree
    return tuple(sorted(merged.items())), radical.degree


def brute_kronecker_oracle(pencil: Pencil, max_degree: int) -> KroneckerData:
    """Kronecker structure data rebuilt by exhaustive elementary means.

    The determinantal divisor chain comes from enumerating every minor, the
    minimal indices from polynomial kernel dimensions computed degree by
    degree (each kernel vector re-verified symbolically), and the eigenvalue
    partition from a fresh multiplicity refinement of the divisor chain.
    ``max_degree`` must be at least the column count, which bounds every
    minimal index.
    """
    if max_degree < pencil.ncols:
        raise ValueError("max_degree must reach the column count")
    r = _sampled_rank(pencil)
    if r == 0:
        raise ValueError("zero pencil has no structure data")
    entries = _chart_entries(pencil)
    memo: dict = {}
    divisors: list[BinaryForm] = []
    for k in range(1, r + 1):
        form = _minor_gcd(entries, k, memo)
        if form is None:
            raise RuntimeError("minor enumeration contradicts the sampled rank")
        divisors.append(form)
    eig = divisors[-1]
    cols = _brute_indices(pencil, pencil.ncols - r, max_degree)
    rows = _brute_indices(pencil.transpose(), pencil.nrows - r, max_degree)
    if sum(cols) + sum(rows) + eig.degree != r:
        raise RuntimeError("singular blocks inconsistent with the divisor chain")
    partition, n_eigs = _brute_partition(divisors)
    return KroneckerData(cols, rows, eig.monic(), partition, n_eigs)


def _kronecker_text(data: KroneckerData) -> str:
    return (
        f"cols={list(data.col_indices)} rows={list(data.row_indices)} "
        f"eig-degree={data.eig_form.degree} partition={data.partition} "
        f"eigs={data.n_distinct_eigs}"
    )


def kronecker_report(pencil: Pencil, max_degree: int | None = None) -> OracleReport:
    """Engine structure data against the brute recomputation."""
    exact = kronecker_data(pencil)
    brute = brute_kronecker_oracle(
        pencil, pencil.ncols if max_degree is None else max_degree
    )
    return OracleReport(
        quantity="kronecker-structure",
        exact=_kronecker_text(exact),
        oracle=_kronecker_text(brute),
        agrees=exact == brute,
        precision=0,
    )


# ---------------------------------------------------------- orbit samples


def orbit_sample(
    cid: ClassId, n: int, seed: int, height: int = 2
) -> list[PureState]:
    """Deterministic sample of n states on the orbit of a catalog class.

    Each sample applies one fresh random invertible operator per party to
    the canonical representative; the whole sequence is a pure function of
    the seed and height.
    """
    base = build(cid)
    rng = Random(seed)
    out: list[PureState] = []
    for _ in range(n):
        ops = [random_ilo(d, rng, height) for d in base.dims]
        out.append(base.apply_ilo(ops))
    return out


def random_state(
    dims: Sequence[int], rng: Random, height: int = 3
) -> PureState:
    """Random integer-amplitude state with full local rank on every party."""
    shape = tuple(dims)
    while True:
        coeffs = tuple(
            Scalar(rng.randint(-height, height), rng.randint(-height, height))
            for _ in range(math.prod(shape))
        )
        if all(c.is_zero() for c in coeffs):
            continue
        state = PureState(shape, coeffs)
        trimmed, _ = state.trim()
        if trimmed.dims == shape:
            return state
