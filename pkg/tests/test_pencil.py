"""Tests for the pencil invariant engine.

The divisor chain is checked against a literal minor-gcd oracle, the rank
profile against pointwise evaluation, and the signature shortcut against
the independent product-ray counting routes.
"""

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from slocc2mn.exact import (
    BinaryForm,
    ONE_POLY,
    Scalar,
    UniPoly,
    form_gcd,
)
from slocc2mn.linalg import scalar_rank
from slocc2mn.pencil import (
    Count,
    INFINITE,
    RangeSignature,
    anharmonic_invariant,
    attained_ranks,
    determinantal_divisors,
    kronecker_data,
    multipartite_signature,
    product_count_bc,
    product_count_qubit_side,
    range_signature,
    rank_profile_set,
)
from slocc2mn.states import Pencil, PureState


def S(x):
    return Scalar(x)


def pencil_from_ints(a0, a1):
    return Pencil(
        [[S(v) for v in row] for row in a0],
        [[S(v) for v in row] for row in a1],
    )


def ghz():
    return PureState.from_kets((2, 2, 2), [(0, 0, 0), (1, 1, 1)])


def w_state():
    return PureState.from_kets((2, 2, 2), [(0, 0, 1), (0, 1, 0), (1, 0, 0)])


# ---------------------------------------------------------------- divisors


def poly_laplace_det(mat):
    n = len(mat)
    if n == 1:
        return mat[0][0]
    total = UniPoly(())
    for j in range(n):
        if mat[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = mat[0][j] * poly_laplace_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def brute_divisor_chain(pencil):
    """Form gcds of literal k-minors; homogeneity fixes the beta power."""
    xchart = [
        [UniPoly((b, a)) for a, b in zip(r0, r1)]
        for r0, r1 in zip(pencil.a0, pencil.a1)
    ]
    chain = []
    for size in range(1, min(pencil.nrows, pencil.ncols) + 1):
        gcd_form = None
        for rows_idx in combinations(range(pencil.nrows), size):
            for cols_idx in combinations(range(pencil.ncols), size):
                sub = [[xchart[i][j] for j in cols_idx] for i in rows_idx]
                det = poly_laplace_det(sub)
                if det.is_zero():
                    continue
                minor_form = BinaryForm.from_poly(det, size)
                gcd_form = (
                    minor_form.monic()
                    if gcd_form is None
                    else form_gcd(gcd_form, minor_form)
                )
        if gcd_form is None:
            break
        chain.append(gcd_form)
    return chain


int_entries = st.integers(min_value=-2, max_value=2)


def pencil_strategy(max_dim=3):
    return st.tuples(
        st.integers(min_value=1, max_value=max_dim),
        st.integers(min_value=1, max_value=max_dim),
    ).flatmap(
        lambda mn: st.tuples(
            st.lists(
                st.lists(int_entries, min_size=mn[1], max_size=mn[1]),
                min_size=mn[0],
                max_size=mn[0],
            ),
            st.lists(
                st.lists(int_entries, min_size=mn[1], max_size=mn[1]),
                min_size=mn[0],
                max_size=mn[0],
            ),
        )
    ).filter(lambda ab: any(any(v for v in row) for row in ab[0] + ab[1]))


@given(pencil_strategy())
@settings(max_examples=60, deadline=None)
def test_divisor_chain_matches_literal_minors(ab):
    pencil = pencil_from_ints(*ab)
    profile = determinantal_divisors(pencil)
    chain = brute_divisor_chain(pencil)
    assert profile.rank == len(chain)
    assert list(profile.divisors) == chain
    # Divisibility along the chain.
    for a, b in zip(profile.divisors, profile.divisors[1:]):
        assert form_gcd(a, b) == a


def test_divisor_chain_ghz_w():
    ghz_profile = determinantal_divisors(ghz().pencil_of(0))
    assert ghz_profile.rank == 2
    assert ghz_profile.divisors[0] == BinaryForm(0, (1,))
    assert ghz_profile.divisors[1] == BinaryForm(2, (0, 1, 0))  # alpha*beta
    w_profile = determinantal_divisors(w_state().pencil_of(0))
    assert w_profile.divisors[1] == BinaryForm(2, (0, 0, 1))  # alpha^2


def test_invariant_factors():
    p = pencil_from_ints([[1, 0], [0, 1]], [[0, 0], [0, 0]])
    # alpha * Identity: d0 = alpha, d1 = alpha^2, s = (alpha, alpha).
    prof = determinantal_divisors(p)
    alpha = BinaryForm(1, (0, 1))
    assert prof.invariant_factors() == (alpha, alpha)


# ------------------------------------------------------------ rank profile


SAMPLE_POINTS = [
    (1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2), (3, 1), (1, 3),
    (-2, 3), (5, 7),
]


def sampled_ranks(pencil):
    out = set()
    for a, b in SAMPLE_POINTS:
        mat = [
            [S(a) * x + S(b) * y for x, y in zip(r0, r1)]
            for r0, r1 in zip(pencil.a0, pencil.a1)
        ]
        out.add(scalar_rank(mat))
    return out


def test_rank_profile_known_pencils():
    # diag(alpha, beta, alpha+beta): singular points each drop rank by one.
    p = pencil_from_ints(
        [[1, 0, 0], [0, 0, 0], [0, 0, 1]],
        [[0, 0, 0], [0, 1, 0], [0, 0, 1]],
    )
    assert rank_profile_set(p) == frozenset({2, 3})
    # Shifted block [[alpha, beta], [0, alpha]]: rank 1 at alpha = 0.
    j = pencil_from_ints([[1, 0], [0, 1]], [[0, 1], [0, 0]])
    assert rank_profile_set(j) == frozenset({1, 2})
    # alpha * I2 vanishes at a point.
    z = pencil_from_ints([[1, 0], [0, 1]], [[0, 0], [0, 0]])
    assert rank_profile_set(z) == frozenset({0, 2})


@given(pencil_strategy())
@settings(max_examples=60, deadline=None)
def test_rank_profile_contains_sampled_ranks(ab):
    pencil = pencil_from_ints(*ab)
    profile = rank_profile_set(pencil)
    sampled = sampled_ranks(pencil)
    assert sampled <= profile
    assert max(profile) in sampled  # enough samples to hit the normal rank


# --------------------------------------------------------------- signature


def test_signature_ghz_w():
    assert range_signature(ghz()) == RangeSignature(Count(2), Count(2), Count(2))
    assert range_signature(w_state()) == RangeSignature(Count(1), Count(1), Count(1))


def test_signature_bell_with_trivial_party():
    bell = PureState.from_kets((2, 2, 1), [(0, 0, 0), (1, 1, 0)])
    assert range_signature(bell) == RangeSignature(INFINITE, INFINITE, Count(0))


def test_signature_follows_party_permutation():
    s = PureState.from_kets((2, 2, 3), [(0, 0, 0), (0, 1, 1), (1, 0, 2)])
    assert range_signature(s) == RangeSignature(Count(1), Count(1), INFINITE)
    t = s.permute_parties((2, 1, 0))
    assert range_signature(t) == RangeSignature(INFINITE, Count(1), Count(1))


def test_signature_requires_qubit():
    s = PureState.from_kets((3, 3, 3), [(0, 0, 0), (1, 1, 1), (2, 2, 2)])
    with pytest.raises(ValueError, match="qubit party"):
        range_signature(s)


# ------------------------------------------------------ product-ray routes


def test_qubit_side_route_examples():
    # span{|00>, |01> + |12>} in C2 x C3: exactly one product ray.
    m1 = [[S(1), S(0), S(0)], [S(0), S(0), S(0)]]
    m2 = [[S(0), S(1), S(0)], [S(0), S(0), S(1)]]
    assert product_count_qubit_side([m1, m2]) == Count(1)
    # span{|00>, |01>, |11>} in C2 x C2: a whole family of product rays.
    e00 = [[S(1), S(0)], [S(0), S(0)]]
    e01 = [[S(0), S(1)], [S(0), S(0)]]
    e11 = [[S(0), S(0)], [S(0), S(1)]]
    assert product_count_qubit_side([e00, e01, e11]) == INFINITE


def test_bc_route_dimensions():
    one = [[S(1), S(0), S(0)], [S(0), S(1), S(0)], [S(0), S(0), S(1)]]
    rank1 = [[S(1), S(0), S(0)], [S(0), S(0), S(0)], [S(0), S(0), S(0)]]
    assert product_count_bc([rank1]) == Count(1)
    assert product_count_bc([one]) == Count(0)
    with pytest.raises(ValueError, match="unsupported geometry"):
        product_count_bc([one, rank1,
                          [[S(0), S(1), S(0)], [S(0), S(0), S(1)],
                           [S(0), S(0), S(0)]]])


def test_multipartite_rejects_trivial_party():
    s = PureState.from_kets((2, 1, 2), [(0, 0, 0), (1, 0, 1)])
    with pytest.raises(ValueError, match="trivial parties"):
        multipartite_signature(s)


def test_multipartite_unsupported_geometry():
    s = PureState.from_kets((3, 3, 3), [(0, 0, 0), (1, 1, 1), (2, 2, 2)])
    with pytest.raises(ValueError, match="unsupported geometry"):
        multipartite_signature(s)


def test_multipartite_four_qubit_family():
    # |00>(|00> + |11>) + |11>(|00> + x|11>) at x = 2.
    s = PureState.from_terms(
        (2, 2, 2, 2),
        {
            (0, 0, 0, 0): S(1),
            (0, 0, 1, 1): S(1),
            (1, 1, 0, 0): S(1),
            (1, 1, 1, 1): S(2),
        },
    )
    assert multipartite_signature(s) == (
        Count(2), INFINITE, INFINITE, INFINITE, INFINITE, Count(2)
    )


rationals = st.builds(
    Fraction,
    st.integers(min_value=-2, max_value=2),
    st.integers(min_value=1, max_value=2),
)
scalar_entries = st.builds(Scalar, rationals, rationals)


@given(
    st.sampled_from([(2, 2, 2), (2, 2, 3), (2, 3, 3)]).flatmap(
        lambda dims: st.lists(
            scalar_entries,
            min_size=dims[0] * dims[1] * dims[2],
            max_size=dims[0] * dims[1] * dims[2],
        ).map(lambda cs: (dims, cs))
    )
)
@settings(max_examples=50, deadline=None)
def test_signature_shortcut_matches_product_routes(dims_coeffs):
    """Chain shortcut vs direct product-ray counting, independent paths."""
    dims, coeffs = dims_coeffs
    assume(any(not c.is_zero() for c in coeffs))
    state = PureState(dims, coeffs)
    trimmed, _ = state.trim()
    assume(any(d == 2 for d in trimmed.dims))
    sig = range_signature(state)
    pairwise = multipartite_signature(state)
    assert (sig.a3, sig.a2, sig.a1) == pairwise


# ---------------------------------------------------------- kronecker data


def test_kronecker_ghz_w():
    kg = kronecker_data(ghz().pencil_of(0))
    assert kg.col_indices == () and kg.row_indices == ()
    assert kg.eig_form == BinaryForm(2, (0, 1, 0))
    assert kg.partition == (((1,), 2),)
    assert kg.n_distinct_eigs == 2
    kw = kronecker_data(w_state().pencil_of(0))
    assert kw.partition == (((2,), 1),)
    assert kw.n_distinct_eigs == 1


def test_kronecker_singular_blocks():
    # [alpha, beta]: one column family of degree one, no eigenvalues.
    p = pencil_from_ints([[1, 0]], [[0, 1]])
    k = kronecker_data(p)
    assert k.col_indices == (1,) and k.row_indices == ()
    assert k.n_distinct_eigs == 0 and k.partition == ()
    # [alpha, 0]: constant kernel direction plus one eigenvalue.
    p0 = pencil_from_ints([[1, 0]], [[0, 0]])
    k0 = kronecker_data(p0)
    assert k0.col_indices == (0,)
    assert k0.eig_form == BinaryForm(1, (0, 1))
    assert k0.partition == (((1,), 1),)
    # Mixed block diag of the two shapes above, transposed flavors.
    pm = pencil_from_ints([[1, 0, 0], [0, 0, 1]], [[0, 1, 0], [0, 0, 0]])
    km = kronecker_data(pm)
    assert km.col_indices == (1,) and km.row_indices == ()
    assert km.partition == (((1,), 1),)


def test_kronecker_repeated_eigenvalue_partition():
    # diag(alpha, alpha): one eigenvalue with multiplicity vector (1, 1).
    p = pencil_from_ints([[1, 0], [0, 1]], [[0, 0], [0, 0]])
    assert kronecker_data(p).partition == (((1, 1), 1),)
    # Shifted block: multiplicity vector (2) instead.
    j = pencil_from_ints([[1, 0], [0, 1]], [[0, 1], [0, 0]])
    assert kronecker_data(j).partition == (((2,), 1),)


@given(pencil_strategy())
@settings(max_examples=60, deadline=None)
def test_kronecker_size_bookkeeping(ab):
    pencil = pencil_from_ints(*ab)
    k = kronecker_data(pencil)
    rho = k.eig_form.degree
    assert pencil.ncols == sum(e + 1 for e in k.col_indices) + sum(k.row_indices) + rho
    assert pencil.nrows == sum(k.col_indices) + sum(e + 1 for e in k.row_indices) + rho
    assert k.n_distinct_eigs == sum(count for _, count in k.partition)
    assert rho == sum(count * sum(vec) for vec, count in k.partition)


# --------------------------------------------------------------- anharmonic


def quadruple_form(*points):
    """Binary form with the given projective roots (a : b)."""
    f = BinaryForm.constant_one()
    for a, b in points:
        f = f * BinaryForm(1, (S(-b), S(a)))  # root at (a : b)
    return f


def lam_form(lam):
    """Roots {0, infinity, 1, lam}."""
    return quadruple_form((0, 1), (1, 0), (1, 1), (Fraction(lam), 1))


def test_anharmonic_harmonic_values():
    for lam in (2, -1, Fraction(1, 2)):
        assert anharmonic_invariant(lam_form(lam)) == Scalar(1728)


def test_anharmonic_exact_value():
    # lambda = 3: j = 256 * (lambda^2-lambda+1)^3 / (lambda^2 (lambda-1)^2).
    assert anharmonic_invariant(lam_form(3)) == Scalar(Fraction(21952, 9))


def test_anharmonic_cross_ratio_symmetry():
    lam = Fraction(3)
    expected = anharmonic_invariant(lam_form(lam))
    for other in (1 / lam, 1 - lam, 1 / (1 - lam), lam / (lam - 1),
                  (lam - 1) / lam):
        assert anharmonic_invariant(lam_form(other)) == expected


def test_anharmonic_degenerate_errors():
    msg = "anharmonic invariant undefined for degenerate quadruple"
    with pytest.raises(ValueError, match=msg):
        anharmonic_invariant(quadruple_form((0, 1), (0, 1), (1, 0), (1, 1)))
    with pytest.raises(ValueError, match=msg):
        anharmonic_invariant(quadruple_form((0, 1), (1, 0), (1, 1)))


distinct_points = st.lists(
    st.tuples(st.integers(min_value=-4, max_value=4),
              st.integers(min_value=-4, max_value=4)).filter(
        lambda p: p != (0, 0)
    ),
    min_size=4,
    max_size=4,
    unique_by=lambda p: (
        (Fraction(p[0], p[1]) if p[1] else None)
    ),
)
gl2 = st.tuples(*(st.integers(min_value=-3, max_value=3) for _ in range(4))).filter(
    lambda m: m[0] * m[3] - m[1] * m[2] != 0
)


@given(distinct_points, gl2)
@settings(max_examples=60, deadline=None)
def test_anharmonic_is_projective_invariant(points, m):
    f = quadruple_form(*points)
    a, b, c, d = (S(v) for v in m)
    g = f.substitute(a, b, c, d)
    assert anharmonic_invariant(g) == anharmonic_invariant(f)


@given(distinct_points, st.integers(min_value=1, max_value=5))
def test_anharmonic_scale_invariant(points, k):
    f = quadruple_form(*points)
    assert anharmonic_invariant(f.scale(S(k))) == anharmonic_invariant(f)
