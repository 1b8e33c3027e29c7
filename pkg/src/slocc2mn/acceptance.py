"""End-to-end acceptance checks over the whole toolkit.

Each check returns a :class:`CriterionResult` instead of asserting, so
the CLI ``selftest`` and the test suite share one implementation.  Two
checks fail by design: the exact engine contradicts three declared
brackets, and five listed classes turn out to be one orbit listed
twice.  Both outcomes are reported rather than patched over; the test
suite pins them so a regression in either direction is caught.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random

from .catalog import (
    ClassId,
    build,
    build_exceptional,
    enumerate_classes,
    expected,
    parse_class_id,
)
from .classify import build_lookup, classify, duplicate_listings
from .exact import ONE, Scalar, parse_scalar
from .oracle import kronecker_report, orbit_sample, random_state, signature_report
from .pencil import INFINITE, Count, multipartite_signature, range_signature, rank_profile_set

ORBIT_IMAGES = 200
ORBIT_SEED = 1009
ORBIT_HEIGHT = 2
PARAM_TRIALS = 20
RANDOM_STATES = 100
RANDOM_SEED = 2027

# Base catalogs plus the leading sizes of each infinite family; every
# check below draws its classes from these dimensions.
FAMILY_DIMS: tuple[tuple[int, int, int], ...] = (
    (2, 2, 2), (2, 2, 3), (2, 3, 3), (2, 4, 4),
    (2, 2, 4), (2, 3, 6), (2, 4, 8),                # Upsilon0, M = 2..4
    (2, 3, 5), (2, 4, 7), (2, 5, 9),                # Upsilon1/2, M = 2..4
    (2, 3, 4), (2, 4, 6), (2, 5, 8), (2, 6, 10),    # Theta, M = 1..4
    (2, 4, 5), (2, 5, 7), (2, 6, 9), (2, 7, 11),    # Gamma, M = 1..4
    (2, 5, 6), (2, 6, 8),                           # Lambda, M = 1..2
)

RANDOM_DIMS: tuple[tuple[int, int, int], ...] = (
    (2, 2, 3), (2, 3, 3), (2, 3, 4), (2, 4, 4), (2, 4, 5),
)


@dataclass(frozen=True)
class CriterionResult:
    """Outcome of one acceptance criterion."""

    name: str
    passed: bool
    detail: str
    failures: tuple[str, ...] = ()


def _member(cid: ClassId, x: str = "2") -> ClassId:
    """Concrete member of a possibly parameterized class."""
    if cid.parameterized and cid.param is None:
        return ClassId(cid.family, cid.index, cid.M, parse_scalar(x))
    return cid


def _fmt(entries: tuple[Count, ...]) -> str:
    return "[" + ", ".join(str(c) for c in entries) + "]"


# ---------------------------------------------------------- criterion 1


def _bracket_checks() -> list[ClassId]:
    """Every class carrying a declared bracket, at its declared sizes."""
    out = [ClassId("phi", 0), ClassId("phi", 1)]
    out += [ClassId("varphi", i) for i in range(6)]
    out += [ClassId("Phi", i) for i in range(16) if i != 3]
    out += [ClassId("Phi", 3, None, parse_scalar(s))
            for s in ("2", "3", "-1", "5/7")]
    for m in (2, 3, 4):
        out += [ClassId("Upsilon", i, m) for i in range(3)]
        out += [ClassId("Theta", i, m) for i in range(6)]
    for m in (1, 2, 3):
        out += enumerate_classes((2, m + 3, 2 * m + 3))
    for m in (1, 2):
        out += [c for c in enumerate_classes((2, m + 4, 2 * m + 4))
                if c.family == "Lambda"]
    return out


def run_criterion_1() -> CriterionResult:
    """Engine range signatures match the declared brackets exactly."""
    bad: list[str] = []
    notes: list[str] = []
    n = 0
    for cid in _bracket_checks():
        want = expected(cid).entries
        got = tuple(range_signature(build(_member(cid))))
        n += 1
        if got != want:
            bad.append(cid.text())
            notes.append(f"{cid.text()} engine {_fmt(got)} vs declared {_fmt(want)}")
    detail = f"{n} brackets checked, {len(bad)} deviations"
    if notes:
        detail += ": " + "; ".join(notes)
    return CriterionResult("signature reproduction", not bad, detail, tuple(bad))


# ---------------------------------------------------------- criterion 2

# Attained pencil ranks declared for the non-generic 2x4x4 classes.
_DECLARED_PROFILES: dict[int, frozenset[int]] = {
    0: frozenset({2, 4}), 1: frozenset({1, 3, 4}), 2: frozenset({2, 3, 4}),
    4: frozenset({2, 3}), 5: frozenset({2, 4}), 6: frozenset({3, 4}),
    7: frozenset({2, 3, 4}), 8: frozenset({1, 4}), 9: frozenset({2, 3, 4}),
    11: frozenset({3}), 13: frozenset({2, 4}), 14: frozenset({3, 4}),
    15: frozenset({3}),
}


def run_criterion_2() -> CriterionResult:
    """Rank-profile sets of the 2x4x4 classes match their declarations."""
    bad: list[str] = []
    for index in sorted(_DECLARED_PROFILES):
        want = _DECLARED_PROFILES[index]
        state = build(_member(ClassId("Phi", index)))
        got = rank_profile_set(state.pencil_of(0))  # party 0 is the qubit
        if got != want:
            bad.append(f"Phi{index}: {sorted(got)} vs {sorted(want)}")
    detail = f"{len(_DECLARED_PROFILES)} profiles checked"
    if bad:
        detail += "; deviations: " + "; ".join(bad)
    return CriterionResult("rank profiles", not bad, detail, tuple(bad))


# ---------------------------------------------------------- criterion 3


def run_criterion_3() -> CriterionResult:
    """Enumeration sizes reproduce the declared class counts."""
    checks: list[tuple[str, object, object]] = [
        ("(2,3,N) ladder",
         [len(enumerate_classes((2, 3, n))) for n in range(1, 7)],
         [1, 2, 6, 5, 2, 1]),
        ("(2,4,5)", len(enumerate_classes((2, 4, 5))), 12),
        ("Gamma at M=2", len(enumerate_classes((2, 5, 7))), 15),
        ("Lambda at M=2", len(enumerate_classes((2, 6, 8))), 37),
    ]
    bad = [f"{name}: {got} vs {want}" for name, got, want in checks
           if got != want]
    detail = "; ".join(f"{name} = {got}" for name, got, _ in checks)
    return CriterionResult("class counts", not bad, detail, tuple(bad))


# ---------------------------------------------------------- criterion 4


def run_criterion_4() -> CriterionResult:
    """Distinct listed classes carry distinct invariant tuples."""
    try:
        build_lookup(FAMILY_DIMS)
    except RuntimeError as exc:
        # a collision the equivalence argument cannot absorb
        return CriterionResult("lookup injectivity", False, str(exc))
    pairs = tuple(f"{dup.text()} = {primary.text()}"
                  for dup, primary in duplicate_listings(FAMILY_DIMS))
    if not pairs:
        return CriterionResult(
            "lookup injectivity", True,
            f"no collisions across {len(FAMILY_DIMS)} dims")
    detail = (f"lookup builds across {len(FAMILY_DIMS)} dims and no collision "
              f"separates inequivalent classes, but {len(pairs)} listed pairs "
              "share one orbit: " + "; ".join(pairs))
    return CriterionResult("lookup injectivity", False, detail, pairs)


# ---------------------------------------------------------- criterion 5


def _c_orbit(x: Scalar) -> tuple[Scalar, ...]:
    """The six anharmonic companions of a cross-ratio value."""
    return (x, ONE / x, ONE - x, ONE / (ONE - x),
            (x - ONE) / x, x / (x - ONE))


def _j_formula(x: Scalar) -> Scalar:
    q = x * x - x + ONE
    return Scalar(256, 0) * q * q * q / (x * x * (x - ONE) * (x - ONE))


def _random_param(rng: Random) -> Scalar:
    while True:
        x = parse_scalar(f"{rng.randint(-9, 9)}/{rng.randint(1, 9)}")
        if not (x.is_zero() or x.is_one()):
            return x


def _phi3_param(x: Scalar) -> Scalar | None:
    return classify(build(ClassId("Phi", 3, None, x))).param_invariant


def run_criterion_5() -> CriterionResult:
    """Random orbit images classify home; the anharmonic orbit collapses."""
    failures: list[str] = []
    total = 0
    nclasses = 0
    for dims in FAMILY_DIMS:
        for cid in enumerate_classes(dims):
            concrete = _member(cid)
            home = classify(build(concrete)).label
            seed = ORBIT_SEED + 101 * nclasses
            nclasses += 1
            images = orbit_sample(concrete, ORBIT_IMAGES, seed=seed,
                                  height=ORBIT_HEIGHT)
            for k, image in enumerate(images):
                total += 1
                got = classify(image).label
                if got != home:
                    failures.append(f"{cid.text()} image {k} -> {got}")

    rng = Random(ORBIT_SEED)
    for _ in range(PARAM_TRIALS):
        x = _random_param(rng)
        seen = {(_phi3_param(y), _j_formula(y)) for y in _c_orbit(x)}
        if len(seen) != 1 or seen.pop() != (_j_formula(x), _j_formula(x)):
            failures.append(f"anharmonic orbit of x={x.emit()} does not collapse")
    for _ in range(PARAM_TRIALS):
        x = _random_param(rng)
        y = _random_param(rng)
        while y in _c_orbit(x):
            y = _random_param(rng)
        if _phi3_param(x) == _phi3_param(y):
            failures.append(f"non-orbit pair x={x.emit()} y={y.emit()} not separated")

    j1728 = Scalar(1728, 0)
    for text in ("2", "1/2", "-1"):
        x = parse_scalar(text)
        if _j_formula(x) != j1728 or _phi3_param(x) != j1728:
            failures.append(f"j({text}) != 1728")

    detail = (f"{total} orbit images over {nclasses} classes classified home; "
              f"{PARAM_TRIALS} anharmonic orbits collapse and {PARAM_TRIALS} "
              f"non-orbit pairs separate; j(2) = j(1/2) = j(-1) = 1728 "
              f"(seed {ORBIT_SEED}, height {ORBIT_HEIGHT})")
    if failures:
        detail = f"{len(failures)} failures: " + "; ".join(failures[:10])
    return CriterionResult("orbit invariance", not failures, detail,
                           tuple(failures))


# ---------------------------------------------------------- criterion 6


def run_criterion_6() -> CriterionResult:
    """The four-qubit family reports pair counts [2, inf, inf, inf, inf, 2]."""
    want = (Count(2), INFINITE, INFINITE, INFINITE, INFINITE, Count(2))
    bad: list[str] = []
    for text in ("2", "3"):
        state = build(parse_class_id(f"FourQubitPhi[x={text}]"))
        got = multipartite_signature(state)
        if got != want:
            bad.append(f"x={text}: {_fmt(got)}")
    detail = f"pair signature {_fmt(want)} at x in {{2, 3}}"
    if bad:
        detail = "; ".join(bad)
    return CriterionResult("four-qubit signature", not bad, detail, tuple(bad))


# ---------------------------------------------------------- criterion 7


def run_criterion_7() -> CriterionResult:
    """Exact invariants agree with the numeric and brute-force oracles."""
    bad: list[str] = []
    nsig = 0
    for dims in FAMILY_DIMS:
        for cid in enumerate_classes(dims):
            state = build(_member(cid))
            if not signature_report(state).agrees:
                bad.append(f"signature oracle: {cid.text()}")
            nsig += 1
    rng = Random(RANDOM_SEED)
    for dims in RANDOM_DIMS:
        for k in range(RANDOM_STATES):
            if not signature_report(random_state(dims, rng)).agrees:
                bad.append(f"signature oracle: random {dims} #{k}")
            nsig += 1
    nkron = 0
    for dims in FAMILY_DIMS:
        for cid in enumerate_classes(dims):
            trimmed, _ = build(_member(cid)).trim()
            qubit = next(p for p in range(3) if trimmed.dims[p] == 2)
            if not kronecker_report(trimmed.pencil_of(qubit)).agrees:
                bad.append(f"pencil oracle: {cid.text()}")
            nkron += 1
    detail = (f"{nsig} signature and {nkron} pencil cross-checks agree "
              f"(seed {RANDOM_SEED})")
    if bad:
        detail = f"{len(bad)} disagreements: " + "; ".join(bad[:10])
    return CriterionResult("oracle agreement", not bad, detail, tuple(bad))


# ---------------------------------------------------------- criterion 8

# Staircase states with a trivial tail land in the Upsilon1 family;
# GHZ and W tails land in Theta0 and Theta3; the 2x4x5 construction
# with a varphi2 tail lands in Gamma14 at M = 1.
_EXCEPTIONAL_CASES: tuple[tuple[int, int, str | None, str], ...] = (
    (3, 5, None, "Upsilon1[M=2]"),
    (4, 7, None, "Upsilon1[M=3]"),
    (3, 4, "GHZ", "Theta0[M=1]"),
    (3, 4, "W", "Theta3[M=1]"),
    (4, 6, "GHZ", "Theta0[M=2]"),
    (4, 6, "W", "Theta3[M=2]"),
    (4, 5, "varphi2", "Gamma14[M=1]"),
)


def run_criterion_8() -> CriterionResult:
    """Exceptional constructions classify into their parent families."""
    bad: list[str] = []
    for m, n, tail, want in _EXCEPTIONAL_CASES:
        cid = None if tail is None else parse_class_id(tail)
        result = classify(build_exceptional(m, n, cid))
        if result.status != "class" or result.label != want:
            bad.append(f"({m}, {n}, {tail}): {result.status} {result.label} "
                       f"vs {want}")
    detail = f"{len(_EXCEPTIONAL_CASES)} constructions land on their classes"
    if bad:
        detail = "; ".join(bad)
    return CriterionResult("exceptional reductions", not bad, detail,
                           tuple(bad))


# ------------------------------------------------------------------ all

ALL_CRITERIA = (
    run_criterion_1, run_criterion_2, run_criterion_3, run_criterion_4,
    run_criterion_5, run_criterion_6, run_criterion_7, run_criterion_8,
)


def run_all() -> list[CriterionResult]:
    """Run the eight acceptance criteria in order."""
    return [check() for check in ALL_CRITERIA]
