"""Command-line behavior: exit codes, output formats, emit round-trips."""

from __future__ import annotations

from pathlib import Path

import pytest

from slocc2mn.catalog import ClassId, enumerate_classes, parse_class_id
from slocc2mn.classify import DEGENERATE_LABEL, duplicate_listings
from slocc2mn.cli import main
from slocc2mn.exact import Scalar, parse_scalar
from slocc2mn.states import PureState, emit_state


def _run(capsys, *argv: str) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


def _write(tmp_path: Path, name: str, text: str) -> str:
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def _diag_2x5x5() -> PureState:
    # five simple eigenvalues: equal invariants never settle equivalence
    # this far outside the catalog
    coeffs = [Scalar(0, 0)] * 50
    for i in range(5):
        coeffs[i * 5 + i] = Scalar(1, 0)
        coeffs[25 + i * 5 + i] = Scalar(i, 0)
    return PureState((2, 5, 5), tuple(coeffs))


# ---------------------------------------------------------------- catalog


def test_catalog_row_counts(capsys) -> None:
    code, out = _run(capsys, "catalog", "2x3x3")
    assert code == 0
    assert len(out.strip().splitlines()) == 6
    code, out = _run(capsys, "catalog", "2x4x5")
    assert code == 0
    assert len(out.strip().splitlines()) == 12


def test_catalog_machine_document(capsys) -> None:
    code, out = _run(capsys, "catalog", "2x2x2", "--format", "machine")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "command: catalog"
    assert lines[-1] == "exit: 0"
    assert "classes: 2" in lines


def test_catalog_uncovered_dims(capsys) -> None:
    code, out = _run(capsys, "catalog", "2x5x5")
    assert code == 3
    assert "uncataloged dims" in out


def test_catalog_emit_needs_concrete_member(capsys) -> None:
    code, out = _run(capsys, "catalog", "Phi3", "--emit")
    assert code == 1


def test_catalog_single_class_row(capsys) -> None:
    code, out = _run(capsys, "catalog", "Phi12")
    assert code == 0
    assert "Phi12" in out and "[0, 1, 1]" in out


# ----------------------------------------------------- classify round trip


def _expected_label(cid: ClassId, primaries: dict[str, str]) -> str:
    if cid.family == "T22N" and cid.M == 1:
        # the lone (2, B, 1) class has a trivial third party and lands on
        # the degenerate path by design
        return DEGENERATE_LABEL
    return primaries.get(cid.text(), cid.text())


def test_emit_round_trip_subset(capsys, tmp_path) -> None:
    dims_list = [(2, 2, 2), (2, 3, 3), (2, 4, 4), (2, 4, 5), (2, 5, 6)]
    primaries = {
        dup.text(): primary.text()
        for dup, primary in duplicate_listings(dims_list)
    }
    for dims in dims_list:
        for cid in enumerate_classes(dims):
            if cid.parameterized:
                cid = ClassId(cid.family, cid.index, cid.M, parse_scalar("2"))
            code, emitted = _run(capsys, "catalog", cid.text(), "--emit")
            assert code == 0
            path = _write(tmp_path, "state.st", emitted)
            code, out = _run(capsys, "classify", path)
            assert code == 0, cid.text()
            want = _expected_label(
                ClassId(cid.family, cid.index, cid.M), primaries
            )
            assert out.splitlines()[0].split(" [")[0] == want, cid.text()


def test_classify_first_line_format(capsys, tmp_path) -> None:
    _, emitted = _run(capsys, "catalog", "Phi12", "--emit")
    path = _write(tmp_path, "phi12.st", emitted)
    code, out = _run(capsys, "classify", path)
    assert code == 0
    assert out.splitlines()[0] == "Phi12 [0, 1, 1]"


def test_classify_parameterized_prints_j_invariant(capsys, tmp_path) -> None:
    _, emitted = _run(capsys, "catalog", "Phi3[x=5]", "--emit")
    path = _write(tmp_path, "phi3.st", emitted)
    code, out = _run(capsys, "classify", path)
    assert code == 0
    assert out.splitlines()[0].startswith("Phi3 ")
    assert any(line.startswith("j-invariant = ") for line in out.splitlines())


def test_classify_machine_stable(capsys, tmp_path) -> None:
    _, emitted = _run(capsys, "catalog", "t233-2", "--emit")
    path = _write(tmp_path, "t.st", emitted)
    code1, out1 = _run(capsys, "classify", path, "--format", "machine")
    code2, out2 = _run(capsys, "classify", path, "--format", "machine")
    assert (code1, out1) == (code2, out2)
    assert out1.startswith("command: classify\n")
    assert out1.rstrip().endswith("exit: 0")


def test_classify_parse_error_names_position(capsys, tmp_path) -> None:
    path = _write(tmp_path, "bad.st", "dims: [2, 2]\ncoeffs: [1, 0\n")
    code, out = _run(capsys, "classify", path)
    assert code == 1
    assert "line" in out and "column" in out


def test_classify_missing_file(capsys, tmp_path) -> None:
    code, out = _run(capsys, "classify", str(tmp_path / "absent.st"))
    assert code == 1


def test_classify_uncataloged_dims(capsys, tmp_path) -> None:
    path = _write(tmp_path, "wide.st", emit_state(_diag_2x5x5()))
    code, out = _run(capsys, "classify", path)
    assert code == 3
    assert "uncataloged" in out


def test_classify_degenerate(capsys, tmp_path) -> None:
    _, emitted = _run(capsys, "catalog", "t221-0", "--emit")
    path = _write(tmp_path, "pair.st", emitted)
    code, out = _run(capsys, "classify", path)
    assert code == 0
    assert DEGENERATE_LABEL in out


# -------------------------------------------------------------- invariants


def test_invariants_work_outside_catalog(capsys, tmp_path) -> None:
    path = _write(tmp_path, "wide.st", emit_state(_diag_2x5x5()))
    code, out = _run(capsys, "invariants", path)
    assert code == 0
    assert "range signature:" in out
    assert "distinct eigenvalues: 5" in out


# ------------------------------------------------------------------- equiv


def test_equiv_exit_codes(capsys, tmp_path) -> None:
    _, phi3 = _run(capsys, "catalog", "Phi3[x=2]", "--emit")
    _, phi12 = _run(capsys, "catalog", "Phi12", "--emit")
    a = _write(tmp_path, "a.st", phi3)
    b = _write(tmp_path, "b.st", phi12)
    code, out = _run(capsys, "equiv", a, a)
    assert code == 0 and "EQUIVALENT" in out
    code, out = _run(capsys, "equiv", a, b)
    assert code == 4
    assert "INEQUIVALENT" in out and "differs" in out
    wide = _write(tmp_path, "w.st", emit_state(_diag_2x5x5()))
    code, out = _run(capsys, "equiv", wide, wide)
    assert code == 5
    assert "EQUAL-INVARIANTS" in out


# ------------------------------------------------------------- orbit-check


def test_orbit_check_reports_seed_and_height(capsys) -> None:
    code, out = _run(
        capsys, "orbit-check", "varphi5", "--n", "5", "--seed", "11",
        "--height", "3", "--format", "machine",
    )
    assert code == 0
    assert "seed: 11" in out
    assert "height: 3" in out
    assert "passes: 5" in out
    assert "failures: 0" in out


def test_orbit_check_bad_id(capsys) -> None:
    code, out = _run(capsys, "orbit-check", "Phi99")
    assert code == 1
