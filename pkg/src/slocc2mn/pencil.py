"""Pencil invariants: divisor chains, range signatures, Kronecker data.

Everything reduces to the chain of determinantal divisors d_0 | d_1 | ...
of the qubit-slice pencil, computed exactly on two affine charts and
reassembled into homogeneous binary forms.  The three product-ray counts
of the range signature, the attained-rank profile, the eigenvalue
multiplicity partition, and the minimal indices all read off this chain
(minimal indices additionally use integer block-Toeplitz ranks).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .exact import (
    BinaryForm,
    Scalar,
    UniPoly,
    distinct_projective_roots,
    form_gcd,
    form_squarefree,
)
from .linalg import (
    gi_rank,
    poly_smith_diagonal,
    rref,
    scalar_rank,
    scalars_to_gauss,
)
from .states import Matrix, Pencil, PureState


@dataclass(frozen=True)
class Count:
    """A product-ray count: a nonnegative integer or infinite (value None)."""

    value: int | None = None

    def __post_init__(self) -> None:
        if self.value is not None and self.value < 0:
            raise ValueError("counts cannot be negative")

    @staticmethod
    def finite(n: int) -> "Count":
        return Count(n)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def sort_key(self) -> tuple[int, int]:
        """Total order with infinity above every integer."""
        if self.value is None:
            return (1, 0)
        return (0, self.value)

    def __str__(self) -> str:
        return "inf" if self.value is None else str(self.value)


INFINITE = Count(None)


@dataclass(frozen=True)
class RangeSignature:
    """Product-ray counts of the three reduced-state ranges, party order.

    Component k counts the product rays in the range of the reduced state
    obtained by tracing out party k.
    """

    a1: Count
    a2: Count
    a3: Count

    def __iter__(self) -> Iterator[Count]:
        return iter((self.a1, self.a2, self.a3))

    def sort_key(self) -> tuple[tuple[int, int], ...]:
        return tuple(c.sort_key() for c in self)

    def __str__(self) -> str:
        return "[" + ", ".join(str(c) for c in self) + "]"


@dataclass(frozen=True)
class DeterminantalProfile:
    """Normal rank and the monic determinantal divisor chain d_0 .. d_{r-1}."""

    rank: int
    divisors: tuple[BinaryForm, ...]

    def __post_init__(self) -> None:
        if len(self.divisors) != self.rank:
            raise ValueError("chain length must equal the normal rank")

    def root_count(self, j: int) -> int:
        """Distinct projective roots of d_j; zero for j < 0."""
        if j < 0:
            return 0
        return distinct_projective_roots(self.divisors[j])

    def divisor_is_constant(self, j: int) -> bool:
        """True when d_j is a nonzero constant; j < 0 counts as constant."""
        if j < 0:
            return True
        return self.divisors[j].is_constant()

    def invariant_factors(self) -> tuple[BinaryForm, ...]:
        """Quotients s_k = d_k / d_{k-1}, monic, divisibility ordered."""
        out: list[BinaryForm] = []
        prev: BinaryForm | None = None
        for d in self.divisors:
            out.append(d if prev is None else d.exact_div(prev).monic())
            prev = d
        return tuple(out)


@dataclass(frozen=True)
class KroneckerData:
    """Structure data of a pencil under strict equivalence.

    ``partition`` groups the distinct eigenvalues by their multiplicity
    vector across the invariant factors (ascending, leading zeros removed);
    each entry pairs a vector with the number of eigenvalues carrying it.
    The eigenvalue form itself transforms covariantly and is carried for
    reporting, not for class lookup.
    """

    col_indices: tuple[int, ...]
    row_indices: tuple[int, ...]
    eig_form: BinaryForm
    partition: tuple[tuple[tuple[int, ...], int], ...]
    n_distinct_eigs: int

    def lookup_key(self) -> tuple[object, ...]:
        return (self.col_indices, self.row_indices, self.partition,
                self.n_distinct_eigs)


def _chart_polys(pencil: Pencil, reverse: bool) -> list[list[UniPoly]]:
    out: list[list[UniPoly]] = []
    for r0, r1 in zip(pencil.a0, pencil.a1):
        row = []
        for a, b in zip(r0, r1):
            row.append(UniPoly((a, b)) if reverse else UniPoly((b, a)))
        out.append(row)
    return out


def _clear_lead(lead: list[list], const: list[list]) -> None:
    """Row-reduce ``lead`` in place, mirroring every operation on ``const``.

    Rows are lists of (re, im) rational pairs.  Constant row operations are
    unimodular over the polynomial ring, so the chart's invariant factors
    are untouched; rows of ``lead`` beyond its row rank end up zero,
    dropping the matching chart rows to degree zero.
    """
    nr, nc = len(lead), len(lead[0])
    r = 0
    for col in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr)
                    if lead[i][col][0] or lead[i][col][1]), None)
        if piv is None:
            continue
        lead[r], lead[piv] = lead[piv], lead[r]
        const[r], const[piv] = const[piv], const[r]
        pr, pi = lead[r][col]
        norm = pr * pr + pi * pi if pi else None
        for i in range(r + 1, nr):
            cr, ci = lead[i][col]
            if not cr and not ci:
                continue
            if norm is None:
                fr, fi = cr / pr, ci / pr
            else:
                fr = (cr * pr + ci * pi) / norm
                fi = (ci * pr - cr * pi) / norm
            lead[i] = [(ar - fr * br + fi * bi, ai - fr * bi - fi * br)
                       for (ar, ai), (br, bi) in zip(lead[i], lead[r])]
            const[i] = [(ar - fr * br + fi * bi, ai - fr * bi - fi * br)
                        for (ar, ai), (br, bi) in zip(const[i], const[r])]
        r += 1


def _reduced_chart_polys(pencil: Pencil, reverse: bool) -> list[list[UniPoly]]:
    """Chart matrix with the variable's coefficient slice rank-exposed.

    Constant unimodular operations on both sides zero out the dependent
    rows and columns of the leading slice, so the Smith reduction meets
    degree-zero pivots early and spends its polynomial work on a core of
    roughly (rank deficiency)-reduced size.
    """
    lead_mat = pencil.a1 if reverse else pencil.a0
    const_mat = pencil.a0 if reverse else pencil.a1
    lead = [[(s.re, s.im) for s in row] for row in lead_mat]
    const = [[(s.re, s.im) for s in row] for row in const_mat]
    _clear_lead(lead, const)
    lead_t = [list(col) for col in zip(*lead)]
    const_t = [list(col) for col in zip(*const)]
    _clear_lead(lead_t, const_t)
    nr = len(lead)
    return [
        [UniPoly((Scalar(*const_t[j][i]), Scalar(*lead_t[j][i])))
         for j in range(len(lead_t))]
        for i in range(nr)
    ]


def determinantal_divisors(pencil: Pencil) -> DeterminantalProfile:
    """Monic gcds of the k-minors as binary forms, for k = 1 .. normal rank.

    Computed through Smith reduction on the two affine charts; the chart at
    infinity supplies the beta multiplicities.  The charts are cross-checked
    against each other coefficient by coefficient.
    """
    sx = poly_smith_diagonal(_reduced_chart_polys(pencil, reverse=False))
    sy = poly_smith_diagonal(_reduced_chart_polys(pencil, reverse=True))
    if len(sx) != len(sy):
        raise AssertionError("charts disagree on the normal rank")
    forms: list[BinaryForm] = []
    dx = UniPoly((1,))
    dy = UniPoly((1,))
    for fx, fy in zip(sx, sy):
        dx = (dx * fx).monic()
        dy = (dy * fy).monic()
        inf_mult = next(k for k, c in enumerate(dy.coeffs) if not c.is_zero())
        form = BinaryForm.from_poly(dx, dx.degree + inf_mult)
        if UniPoly(tuple(reversed(form.coeffs))).monic() != dy:
            raise AssertionError("charts disagree on a determinantal divisor")
        forms.append(form)
    return DeterminantalProfile(len(forms), tuple(forms))


def rank_profile_set(pencil: Pencil) -> frozenset[int]:
    """All ranks the pencil attains over the projective line."""
    profile = determinantal_divisors(pencil)
    return attained_ranks(profile)


def attained_ranks(profile: DeterminantalProfile) -> frozenset[int]:
    ranks = {profile.rank}
    prev = 0
    for j in range(profile.rank):
        cur = profile.root_count(j)
        if cur > prev:
            ranks.add(j)
        prev = cur
    return frozenset(ranks)


# ------------------------------------------------------------- signatures


def _slice_ray_count(profile: DeterminantalProfile) -> Count:
    """Rays of rank-one pencil points; infinite when the normal rank is 1."""
    r = profile.rank
    if r == 0:
        raise ValueError("zero pencil has no signature")
    if r == 1:
        return INFINITE
    return Count(profile.root_count(1) - profile.root_count(0))


def _kernel_ray_count(profile: DeterminantalProfile, side_dim: int) -> Count:
    """Product rays through one-sided kernels of pencil points.

    Every product vector in the corresponding reduced range lies in the
    kernel of the pencil at exactly one projective point; a point with
    kernel dimension two or more contributes a whole projective family.
    """
    r = profile.rank
    if r < side_dim:
        return INFINITE
    if not profile.divisor_is_constant(side_dim - 2):
        return INFINITE
    return Count(profile.root_count(side_dim - 1))


def signature_from_profile(profile: DeterminantalProfile, qubit: int,
                           dims: Sequence[int]) -> RangeSignature:
    """Range signature of a trimmed tripartite state with a qubit party.

    ``dims`` are the trimmed party dimensions; ``qubit`` indexes the party
    whose slices form the analyzed pencil.
    """
    others = [p for p in range(3) if p != qubit]
    counts: dict[int, Count] = {qubit: _slice_ray_count(profile)}
    for p in others:
        counts[p] = _kernel_ray_count(profile, dims[p])
    return RangeSignature(counts[0], counts[1], counts[2])


def range_signature(state: PureState) -> RangeSignature:
    """Range signature of a tripartite state, trimming first.

    The trimmed state must have a two-dimensional party; the first such
    party supplies the pencil.
    """
    if state.nparties != 3:
        raise ValueError("range signature requires exactly three parties")
    trimmed, _ = state.trim()
    try:
        qubit = next(p for p in range(3) if trimmed.dims[p] == 2)
    except StopIteration:
        raise ValueError(
            "range signature requires a qubit party after trimming"
        ) from None
    profile = determinantal_divisors(trimmed.pencil_of(qubit))
    return signature_from_profile(profile, qubit, trimmed.dims)


# ----------------------------------------------------- product-ray routes


def _span_basis(mats: Sequence[Matrix]) -> list[Matrix]:
    """Reduce spanning matrices to a basis of their span (row reduction)."""
    if not mats:
        return []
    nrows = len(mats[0])
    ncols = len(mats[0][0])
    flat = [[m[i][j] for i in range(nrows) for j in range(ncols)] for m in mats]
    reduced, pivots = rref(flat)
    basis: list[Matrix] = []
    for k in range(len(pivots)):
        vec = reduced[k]
        basis.append([[vec[i * ncols + j] for j in range(ncols)]
                      for i in range(nrows)])
    return basis


def product_count_qubit_side(mats: Sequence[Matrix]) -> Count:
    """Product rays in the span of 2 x K matrices.

    A span element is a product vector exactly when its two rows are
    dependent, which pins it to a one-sided kernel of the stacked-row
    pencil; the chain of that pencil then counts the rays.
    """
    basis = _span_basis(mats)
    if not basis:
        raise ValueError("empty span has no product rays")
    if len(basis[0]) != 2:
        raise ValueError("qubit-side route requires two-row matrices")
    d = len(basis)
    u0 = [m[0] for m in basis]
    u1 = [m[1] for m in basis]
    profile = determinantal_divisors(Pencil(u0, u1))
    if profile.rank < d:
        return INFINITE
    if not profile.divisor_is_constant(d - 2):
        return INFINITE
    return Count(profile.root_count(d - 1))


def product_count_bc(mats: Sequence[Matrix]) -> Count:
    """Product rays in the span of M x N matrices (rank-one locus route).

    Handles spans of dimension one or two; larger spans with both factors
    above dimension two have no pencil reduction here.
    """
    basis = _span_basis(mats)
    if not basis:
        raise ValueError("empty span has no product rays")
    if len(basis) == 1:
        rank = scalar_rank(basis[0])
        return Count(1 if rank == 1 else 0)
    if len(basis) == 2:
        profile = determinantal_divisors(Pencil(basis[0], basis[1]))
        return _slice_ray_count(profile)
    raise ValueError("unsupported geometry")


def _pair_adjoint_mats(state: PureState, i: int, j: int) -> list[Matrix]:
    """Spanning matrices of the reduced range on parties (i, j)."""
    dims = state.dims
    others = [p for p in range(state.nparties) if p not in (i, j)]
    mats: list[Matrix] = []
    for rest_flat in range(math.prod(dims[p] for p in others)):
        rest_idx = []
        rem = rest_flat
        for p in reversed(others):
            rem, q = divmod(rem, dims[p])
            rest_idx.append(q)
        rest_idx.reverse()
        mat: Matrix = []
        for a in range(dims[i]):
            row = []
            for b in range(dims[j]):
                idx = [0] * state.nparties
                idx[i] = a
                idx[j] = b
                for p, v in zip(others, rest_idx):
                    idx[p] = v
                row.append(state.amplitude(idx))
            mat.append(row)
        mats.append(mat)
    return mats


def multipartite_signature(state: PureState) -> tuple[Count, ...]:
    """Product-ray counts for every party pair, pairs in lexicographic order.

    Each count is taken in the range of the reduced state on that pair.
    Pairs where neither factor is at most two-dimensional and the span is
    not a pencil are rejected.
    """
    n = state.nparties
    if n < 3:
        raise ValueError("pair signature needs at least three parties")
    if any(d < 2 for d in state.dims):
        raise ValueError("trivial parties are not allowed; trim the state first")
    out: list[Count] = []
    for i in range(n):
        for j in range(i + 1, n):
            mats = _pair_adjoint_mats(state, i, j)
            di, dj = state.dims[i], state.dims[j]
            if di <= 2:
                out.append(product_count_qubit_side(mats))
            elif dj <= 2:
                flipped = [[list(col) for col in zip(*m)] for m in mats]
                out.append(product_count_qubit_side(flipped))
            else:
                out.append(product_count_bc(mats))
    return tuple(out)


# -------------------------------------------------------- minimal indices


def _block_toeplitz_rank(a0_int, a1_int, k: int, nrows: int, ncols: int) -> int:
    """Rank of the order-k kernel-coefficient matrix of the pencil."""
    rows = (k + 2) * nrows
    cols = (k + 1) * ncols
    mat = [[(0, 0)] * cols for _ in range(rows)]
    for block in range(k + 1):
        # A1 on block row `block`, A0 one block row lower, both in block
        # column `block`.
        for i in range(nrows):
            for j in range(ncols):
                mat[block * nrows + i][block * ncols + j] = a1_int[i][j]
                mat[(block + 1) * nrows + i][block * ncols + j] = a0_int[i][j]
    return gi_rank(mat)


def _minimal_indices(a0_int, a1_int, nrows: int, ncols: int,
                     expected: int) -> tuple[int, ...]:
    """Column minimal indices via kernel dimensions of Toeplitz blocks."""
    if expected == 0:
        return ()
    indices: list[int] = []
    prev_kernel = 0
    prev_found = 0
    k = 0
    while True:
        kernel = (k + 1) * ncols - _block_toeplitz_rank(
            a0_int, a1_int, k, nrows, ncols
        )
        found = kernel - prev_kernel
        indices.extend([k] * (found - prev_found))
        if found == expected:
            return tuple(indices)
        if k > ncols + nrows:
            raise AssertionError("minimal index scan failed to terminate")
        prev_kernel = kernel
        prev_found = found
        k += 1


def kronecker_data(pencil: Pencil,
                   profile: DeterminantalProfile | None = None) -> KroneckerData:
    """Full strict-equivalence structure data of a pencil.

    Accepts a precomputed divisor profile so callers that already hold one
    do not pay for the Smith reduction twice.
    """
    if profile is None:
        profile = determinantal_divisors(pencil)
    r = profile.rank
    if r == 0:
        raise ValueError("zero pencil has no structure data")
    eig = profile.divisors[r - 1]

    a0s = scalars_to_gauss([list(row) for row in pencil.a0] +
                           [list(row) for row in pencil.a1])
    a0_int = a0s[:pencil.nrows]
    a1_int = a0s[pencil.nrows:]
    cols = _minimal_indices(a0_int, a1_int, pencil.nrows, pencil.ncols,
                            pencil.ncols - r)
    a0_t = [list(col) for col in zip(*a0_int)]
    a1_t = [list(col) for col in zip(*a1_int)]
    rows = _minimal_indices(a0_t, a1_t, pencil.ncols, pencil.nrows,
                            pencil.nrows - r)

    # KCF bookkeeping: rank splits into the singular blocks and the
    # regular part, whose size is the degree of the eigenvalue form.
    if sum(cols) + sum(rows) + eig.degree != r:
        raise AssertionError("minimal indices inconsistent with the chain")

    if eig.is_constant():
        partition: tuple[tuple[tuple[int, ...], int], ...] = ()
        n_eigs = 0
    else:
        partition = _eigenvalue_partition(profile)
        n_eigs = distinct_projective_roots(eig)
    return KroneckerData(cols, rows, eig.monic(), partition, n_eigs)


def _split_by_multiplicity(
    q: BinaryForm, s: BinaryForm
) -> list[tuple[BinaryForm, int]]:
    """Partition the roots of squarefree ``q`` by multiplicity in ``s``."""
    out: list[tuple[BinaryForm, int]] = []
    mult = 0
    cur = q
    s_cur = s
    while cur.degree > 0:
        h = form_gcd(cur, s_cur)
        stays = cur.exact_div(h)
        if stays.degree > 0:
            out.append((stays, mult))
        s_cur = s_cur.exact_div(h)
        cur = h
        mult += 1
    return out


def _eigenvalue_partition(
    profile: DeterminantalProfile,
) -> tuple[tuple[tuple[int, ...], int], ...]:
    eig = profile.divisors[profile.rank - 1]
    clusters: list[tuple[BinaryForm, tuple[int, ...]]] = [
        (form_squarefree(eig), ())
    ]
    for s in profile.invariant_factors():
        refined: list[tuple[BinaryForm, tuple[int, ...]]] = []
        for q, vec in clusters:
            for part, mult in _split_by_multiplicity(q, s):
                refined.append((part, vec + (mult,)))
        clusters = refined
    merged: dict[tuple[int, ...], int] = {}
    for q, vec in clusters:
        trimmed_vec = vec
        while trimmed_vec and trimmed_vec[0] == 0:
            trimmed_vec = trimmed_vec[1:]
        if not trimmed_vec:
            raise AssertionError("eigenvalue cluster with empty multiplicity")
        if trimmed_vec in merged:
            raise AssertionError("refinement left duplicate multiplicity vectors")
        merged[trimmed_vec] = q.degree
    return tuple(sorted(merged.items()))


# ------------------------------------------------------------- anharmonic


def anharmonic_invariant(form: BinaryForm) -> Scalar:
    """The j-invariant of an unordered quadruple of projective points.

    The input is a binary quartic whose four roots are the quadruple; a
    repeated root (the point at infinity included) makes the cross ratio
    degenerate.  Two quadruples are projectively equivalent exactly when
    their invariants agree.
    """
    if form.degree != 4:
        raise ValueError("anharmonic invariant undefined for degenerate quadruple")
    c = form.coeffs
    a0, a1, a2, a3, a4 = c[0], c[1], c[2], c[3], c[4]
    i_inv = 12 * (a4 * a0) - 3 * (a3 * a1) + a2 * a2
    j_inv = (
        72 * (a4 * a2 * a0)
        + 9 * (a3 * a2 * a1)
        - 27 * (a4 * (a1 * a1))
        - 27 * (a0 * (a3 * a3))
        - 2 * (a2 * a2 * a2)
    )
    disc = 4 * (i_inv * i_inv * i_inv) - j_inv * j_inv
    if disc.is_zero():
        raise ValueError("anharmonic invariant undefined for degenerate quadruple")
    return 6912 * (i_inv * i_inv * i_inv) / disc
