"""Cross-check harness: float signature oracle, brute Kronecker rebuild,
orbit sampling."""

from __future__ import annotations

from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slocc2mn.catalog import ClassId, build, enumerate_classes, parse_class_id
from slocc2mn.classify import classify
from slocc2mn.exact import parse_scalar
from slocc2mn.oracle import (
    PRECISION_LADDER,
    OracleReport,
    brute_kronecker_oracle,
    float_product_count_oracle,
    float_signature_oracle,
    kronecker_report,
    orbit_sample,
    random_state,
    signature_report,
)
from slocc2mn.pencil import Count, kronecker_data, range_signature
from slocc2mn.states import PureState


def _qubit_pencil(state: PureState):
    trimmed, _ = state.trim()
    qubit = next(p for p in range(3) if trimmed.dims[p] == 2)
    return trimmed.pencil_of(qubit)


def _member(cid: ClassId) -> ClassId:
    if cid.parameterized and cid.param is None:
        return ClassId(cid.family, cid.index, cid.M, parse_scalar("2"))
    return cid


# ------------------------------------------------------------ float route


def test_product_count_on_the_smallest_parameterized_class() -> None:
    state = build(parse_class_id("phi0"))
    assert float_product_count_oracle(state) == Count(1)


def test_seeded_random_state_agrees_with_exact() -> None:
    state = random_state((2, 3, 4), Random(11))
    assert tuple(float_signature_oracle(state)) == tuple(range_signature(state))


def test_anharmonic_family_side_counts() -> None:
    # four distinct eigenvalues, so both four-dimensional parties see four
    # product rays
    signature = float_signature_oracle(build(parse_class_id("Phi3[x=2]")))
    assert signature.a2 == Count(4)
    assert signature.a3 == Count(4)


def test_fixed_precision_matches_ladder_default() -> None:
    state = build(parse_class_id("varphi3"))
    assert tuple(float_signature_oracle(state, 30)) == tuple(
        float_signature_oracle(state)
    )


def test_precision_ladder_policy() -> None:
    assert PRECISION_LADDER == (30, 60, 120)


def test_float_agrees_on_small_catalog_dims() -> None:
    for dims in ((2, 2, 2), (2, 2, 3), (2, 3, 3), (2, 3, 4), (2, 4, 4)):
        for cid in enumerate_classes(dims):
            state = build(_member(cid))
            assert tuple(float_signature_oracle(state)) == tuple(
                range_signature(state)
            ), str(cid)


def test_signature_report_fields() -> None:
    report = signature_report(build(parse_class_id("t233-3")))
    assert isinstance(report, OracleReport)
    assert report.quantity == "range-signature"
    assert report.agrees
    assert report.precision == 30
    assert report.exact == report.oracle


@settings(max_examples=25, deadline=None)
@given(
    dims=st.sampled_from([(2, 2, 2), (2, 2, 3), (2, 3, 3), (2, 3, 4)]),
    seed=st.integers(min_value=0, max_value=10**6),
)
def test_float_matches_exact_on_random_states(dims, seed) -> None:
    state = random_state(dims, Random(seed))
    assert tuple(float_signature_oracle(state)) == tuple(range_signature(state))


# ------------------------------------------------------------ brute route


def test_ghz_brute_structure() -> None:
    pencil = _qubit_pencil(build(parse_class_id("t222-0")))
    data = brute_kronecker_oracle(pencil, pencil.ncols)
    assert data.col_indices == ()
    assert data.row_indices == ()
    assert data.n_distinct_eigs == 2
    assert data.partition == (((1,), 2),)
    assert data == kronecker_data(pencil)


def test_upsilon0_m2_column_indices() -> None:
    pencil = _qubit_pencil(build(parse_class_id("Upsilon0[M=2]")))
    data = brute_kronecker_oracle(pencil, pencil.ncols)
    assert data.col_indices == (1, 1)
    assert data == kronecker_data(pencil)


def test_brute_max_degree_guard() -> None:
    pencil = _qubit_pencil(build(parse_class_id("t222-0")))
    with pytest.raises(ValueError):
        brute_kronecker_oracle(pencil, pencil.ncols - 1)


def test_brute_agrees_on_representative_pencils() -> None:
    # one dims per family shape; the deep sweeps run in the acceptance suite
    for dims in ((2, 3, 3), (2, 3, 4), (2, 4, 4), (2, 4, 5), (2, 5, 6)):
        for cid in enumerate_classes(dims):
            state = build(_member(cid))
            pencil = _qubit_pencil(state)
            assert brute_kronecker_oracle(pencil, pencil.ncols) == kronecker_data(
                pencil
            ), str(cid)


def test_kronecker_report_agrees() -> None:
    report = kronecker_report(_qubit_pencil(build(parse_class_id("varphi4"))))
    assert report.quantity == "kronecker-structure"
    assert report.agrees


# ---------------------------------------------------------- orbit samples


def test_orbit_sample_empty() -> None:
    assert orbit_sample(parse_class_id("varphi5"), 0, 123) == []


def test_orbit_sample_deterministic() -> None:
    first = orbit_sample(parse_class_id("varphi5"), 3, 99)
    second = orbit_sample(parse_class_id("varphi5"), 3, 99)
    assert [s.coeffs for s in first] == [s.coeffs for s in second]
    other = orbit_sample(parse_class_id("varphi5"), 3, 100)
    assert [s.coeffs for s in first] != [s.coeffs for s in other]


def test_orbit_images_classify_home() -> None:
    for image in orbit_sample(parse_class_id("varphi5"), 50, 2024, height=3):
        assert classify(image).label == "varphi5"
