"""Tests for states, local operations, trimming, and the state text format."""

import math
from fractions import Fraction
from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slocc2mn.exact import ONE, Scalar, ZERO
from slocc2mn.linalg import matmul
from slocc2mn.states import (
    LocalOperator,
    PureState,
    StateParseError,
    emit_state,
    parse_state,
    random_ilo,
    scale_to_integer,
)


def ghz():
    return PureState.from_kets((2, 2, 2), [(0, 0, 0), (1, 1, 1)])


def w_state():
    return PureState.from_kets((2, 2, 2), [(0, 0, 1), (0, 1, 0), (1, 0, 0)])


# ------------------------------------------------------------- validation


def test_state_needs_two_parties():
    with pytest.raises(ValueError, match="two parties"):
        PureState((4,), [ONE, ZERO, ZERO, ZERO])


def test_state_rejects_zero_vector():
    with pytest.raises(ValueError, match="zero vector"):
        PureState((2, 2), [ZERO] * 4)


def test_state_rejects_wrong_length():
    with pytest.raises(ValueError, match="expected 4 coefficients"):
        PureState((2, 2), [ONE])


def test_local_operator_must_be_square_and_invertible():
    with pytest.raises(ValueError, match="square"):
        LocalOperator([[ONE, ZERO]])
    with pytest.raises(ValueError, match="invertible"):
        LocalOperator([[ONE, ONE], [ONE, ONE]])


# ------------------------------------------------------------- structure


def test_amplitude_row_major():
    s = PureState.from_terms((2, 2, 2), {(1, 0, 1): Scalar(7)})
    assert s.coeffs[5] == Scalar(7)
    assert s.amplitude((1, 0, 1)) == Scalar(7)


def test_local_ranks_ghz_and_product():
    assert ghz().local_ranks() == (2, 2, 2)
    assert w_state().local_ranks() == (2, 2, 2)
    product = PureState.from_kets((2, 2), [(0, 0)])
    assert product.local_ranks() == (1, 1)


def test_permute_parties_moves_amplitudes():
    s = PureState.from_terms((2, 3, 2), {(1, 2, 0): Scalar(5)})
    t = s.permute_parties((1, 2, 0))  # new order: B, C, A
    assert t.dims == (3, 2, 2)
    assert t.amplitude((2, 0, 1)) == Scalar(5)


def test_group_parties_adjacent_is_reshape():
    s = PureState.from_kets((2, 2, 2, 2), [(0, 1, 1, 0), (1, 1, 0, 1)])
    g = s.group_parties([(0, 1), (2, 3)])
    assert g.dims == (4, 4)
    assert g.coeffs == s.coeffs
    assert g.amplitude((1, 2)) == ONE  # |01>|10> -> |1>|2>
    assert g.amplitude((3, 1)) == ONE


def test_pencil_of_requires_qubit():
    s = PureState.from_kets((3, 2, 2), [(0, 0, 0), (2, 1, 1)])
    with pytest.raises(ValueError, match="pencil view requires a qubit party"):
        s.pencil_of(0)


def test_pencil_of_ghz_slices():
    p = ghz().pencil_of(0)
    assert p.a0 == ((ONE, ZERO), (ZERO, ZERO))
    assert p.a1 == ((ZERO, ZERO), (ZERO, ONE))
    t = p.transpose()
    assert t.nrows == p.ncols and t.a0[0][0] == ONE


# ---------------------------------------------------------------- actions


def test_apply_ilo_identity_fixes_state():
    ops = [LocalOperator.identity(d) for d in (2, 2, 2)]
    assert ghz().apply_ilo(ops) == ghz()


def test_apply_on_party_matches_matrix_action():
    s = ghz()
    m = [[Scalar(1), Scalar(2)], [Scalar(0), Scalar(1)]]
    t = s.apply_on_party(2, m)
    # Slice along party 2 transforms like column action on the unfolding.
    assert t.unfolding(2) == matmul(m, s.unfolding(2))


@given(st.integers(min_value=0, max_value=10**6))
@settings(max_examples=25, deadline=None)
def test_local_ranks_are_ilo_invariant(seed):
    rng = Random(seed)
    s = w_state() if seed % 2 else ghz()
    ops = [random_ilo(d, rng) for d in s.dims]
    assert s.apply_ilo(ops).local_ranks() == s.local_ranks()


def test_random_ilo_is_deterministic():
    a = random_ilo(3, Random(11), height=2)
    b = random_ilo(3, Random(11), height=2)
    assert a.matrix == b.matrix


# ---------------------------------------------------------------- trimming


def test_trim_full_rank_state_untouched():
    trimmed, maps = ghz().trim()
    assert trimmed == ghz()
    for d, m in zip((2, 2, 2), maps):
        assert m == [[ONE if i == j else ZERO for j in range(d)] for i in range(d)]


def test_trim_cuts_to_local_support():
    # A 2x3x3 state embedded in 2x4x5 with scrambled support.
    base = PureState.from_kets(
        (2, 4, 5), [(0, 0, 0), (0, 1, 1), (1, 2, 1), (1, 1, 4), (0, 2, 4)]
    )
    trimmed, maps = base.trim()
    assert trimmed.dims == (2, 3, 3)
    assert trimmed.local_ranks() == (2, 3, 3)
    # Applying the returned maps to the original reproduces the trim.
    replay = base
    for p, m in enumerate(maps):
        replay = replay.apply_on_party(p, m)
    assert replay == trimmed


def test_trim_map_shapes():
    base = PureState.from_kets((3, 2, 2), [(0, 0, 0), (1, 1, 1)])
    trimmed, maps = base.trim()
    assert trimmed.dims == (2, 2, 2)
    assert len(maps[0]) == 2 and len(maps[0][0]) == 3


# ------------------------------------------------------------- proportional


def test_proportional_up_to_global_scale():
    s = w_state()
    assert s.proportional_to(s.scaled(Scalar(Fraction(-3, 7), 1)))
    assert not s.proportional_to(ghz())


# ---------------------------------------------------------------- text io


def test_emit_parse_roundtrip_fixed():
    s = PureState.from_terms(
        (2, 2), {(0, 0): Scalar(1), (1, 1): Scalar(Fraction(1, 2), -1)}
    )
    text = emit_state(s)
    assert text == "dims: [2, 2]\ncoeffs: [1, 0, 0, 1/2-i]\n"
    assert parse_state(text) == s


rationals = st.builds(
    Fraction,
    st.integers(min_value=-3, max_value=3),
    st.integers(min_value=1, max_value=2),
)
scalars = st.builds(Scalar, rationals, rationals)


@given(
    st.lists(st.integers(min_value=1, max_value=3), min_size=2, max_size=3)
    .flatmap(
        lambda dims: st.lists(
            scalars, min_size=math.prod(dims), max_size=math.prod(dims)
        ).map(lambda cs: (tuple(dims), cs))
    )
    .filter(lambda dc: any(not c.is_zero() for c in dc[1]))
)
@settings(max_examples=40, deadline=None)
def test_emit_parse_roundtrip(dims_coeffs):
    dims, coeffs = dims_coeffs
    s = PureState(dims, coeffs)
    assert parse_state(emit_state(s)) == s


def test_parse_state_multiline_coeffs():
    text = "dims: [2, 2]\ncoeffs: [1, 0,\n  0, 1]\n"
    assert parse_state(text) == PureState.from_kets((2, 2), [(0, 0), (1, 1)])


def test_parse_error_position_bad_scalar():
    text = "dims: [2, 2]\ncoeffs: [1, 0, 0, xx]"
    with pytest.raises(StateParseError) as exc:
        parse_state(text)
    assert exc.value.line == 2 and exc.value.col == 19


def test_parse_error_position_bad_dim():
    with pytest.raises(StateParseError) as exc:
        parse_state("dims: [2, x]\ncoeffs: [1, 0]")
    assert exc.value.line == 1 and exc.value.col == 11


def test_parse_error_trailing_content():
    with pytest.raises(StateParseError, match="trailing"):
        parse_state("dims: [2, 2]\ncoeffs: [1, 0, 0, 1]\njunk")


def test_parse_error_wrong_count():
    with pytest.raises(StateParseError, match="expected 4 coefficients"):
        parse_state("dims: [2, 2]\ncoeffs: [1, 0]")


# ------------------------------------------------------------ normalization


def test_scale_to_integer():
    s = PureState.from_terms(
        (2, 2),
        {(0, 0): Scalar(Fraction(1, 2)), (1, 1): Scalar(0, Fraction(2, 3))},
    )
    t = scale_to_integer(s)
    assert t.proportional_to(s)
    for c in t.coeffs:
        assert c.re.denominator == 1 and c.im.denominator == 1
