"""Mapping states to catalog classes through a complete invariant tuple.

The classifier trims the input, moves the two-dimensional party first,
orients the remaining parties so the pencil is at most as tall as wide,
and computes every pencil invariant.  A lookup table built from the
catalog representatives themselves turns the tuple into a class label.

Orientation bookkeeping: exchanging the last two parties transposes the
pencil, which keeps the divisor chain, eigenvalue data, and minimal-index
multiset while swapping the two kernel-side counts and the column/row
index tuples.  The canonical tuple is therefore the lexicographic minimum
of the two orientations at square shape, with a flag recording which
orientation realized it; mirror-image classes share the minimum and
differ in the flag.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Sequence

from .catalog import ClassId, build, covers, enumerate_classes
from .exact import Scalar, form_squarefree, parse_scalar
from .pencil import (
    Count,
    RangeSignature,
    anharmonic_invariant,
    attained_ranks,
    determinantal_divisors,
    kronecker_data,
    signature_from_profile,
)
from .states import LocalOperator, PureState

SCOPE_ERROR = "outside 2×M×N scope"
DEGENERATE_LABEL = "bipartite/product degenerate"
UNRECOGNIZED_LABEL = "unrecognized at covered dims"
UNCOVERED_LABEL = "uncataloged dims"


class DegenerateStateError(ValueError):
    """Some party has local rank one; no pencil analysis applies."""


@dataclass(frozen=True)
class InvariantTuple:
    """Every exact invariant the classifier extracts from one state.

    ``dims`` are the trimmed dimensions in analysis order (qubit first,
    middle at most last).  ``anharmonic`` is defined exactly when the
    pencil has four distinct eigenvalues.
    """

    dims: tuple[int, int, int]
    signature: RangeSignature
    rank: int
    rank_profile: tuple[int, ...]
    col_indices: tuple[int, ...]
    row_indices: tuple[int, ...]
    partition: tuple[tuple[tuple[int, ...], int], ...]
    n_distinct_eigs: int
    anharmonic: Scalar | None

    def sort_key(self) -> tuple:
        j = self.anharmonic
        return (
            self.dims,
            self.signature.sort_key(),
            self.rank,
            self.rank_profile,
            self.col_indices,
            self.row_indices,
            self.partition,
            self.n_distinct_eigs,
            j.sort_key() if j is not None else (),
        )

    def swapped(self) -> "InvariantTuple":
        """The same state analyzed with the last two parties exchanged."""
        sig = self.signature
        return replace(
            self,
            signature=RangeSignature(sig.a1, sig.a3, sig.a2),
            col_indices=self.row_indices,
            row_indices=self.col_indices,
        )

    def lookup_key(self) -> tuple:
        """Class identity key: the anharmonic value abstracts to presence."""
        return (
            self.dims,
            self.signature.sort_key(),
            self.rank,
            self.rank_profile,
            self.col_indices,
            self.row_indices,
            self.partition,
            self.n_distinct_eigs,
            self.anharmonic is not None,
        )

    def components(self) -> tuple[tuple[str, str], ...]:
        return (
            ("dims", str(list(self.dims))),
            ("range signature", str(self.signature)),
            ("pencil rank", str(self.rank)),
            ("rank profile", str(set(self.rank_profile))),
            ("column minimal indices", str(list(self.col_indices))),
            ("row minimal indices", str(list(self.row_indices))),
            ("eigenvalue partition", str(self.partition)),
            ("distinct eigenvalues", str(self.n_distinct_eigs)),
            ("anharmonic invariant",
             self.anharmonic.emit() if self.anharmonic is not None else "-"),
        )


def _analyze(state: PureState) -> InvariantTuple:
    # state is trimmed, qubit first, dims[1] <= dims[2]
    pencil = state.pencil_of(0)
    profile = determinantal_divisors(pencil)
    kron = kronecker_data(pencil, profile)
    j: Scalar | None = None
    if kron.n_distinct_eigs == 4:
        j = anharmonic_invariant(form_squarefree(kron.eig_form))
    return InvariantTuple(
        dims=state.dims,
        signature=signature_from_profile(profile, 0, state.dims),
        rank=profile.rank,
        rank_profile=tuple(sorted(attained_ranks(profile))),
        col_indices=kron.col_indices,
        row_indices=kron.row_indices,
        partition=kron.partition,
        n_distinct_eigs=kron.n_distinct_eigs,
        anharmonic=j,
    )


def invariant_tuple(state: PureState) -> tuple[InvariantTuple, str]:
    """Canonical invariants plus the orientation flag ("given"/"swapped").

    Raises DegenerateStateError when trimming leaves a trivial party and
    ValueError when no party can serve as the qubit.
    """
    if state.nparties != 3:
        raise ValueError(SCOPE_ERROR)
    trimmed, _ = state.trim()
    dims = trimmed.dims
    if min(dims) < 2:
        raise DegenerateStateError(DEGENERATE_LABEL)
    if 2 not in dims:
        raise ValueError(SCOPE_ERROR)
    qubit = dims.index(2)
    if qubit != 0:
        order = (qubit, *(p for p in range(3) if p != qubit))
        trimmed = trimmed.permute_parties(order)
    swapped_input = trimmed.dims[1] > trimmed.dims[2]
    if swapped_input:
        trimmed = trimmed.permute_parties((0, 2, 1))
    given = _analyze(trimmed)
    if trimmed.dims[1] == trimmed.dims[2]:
        mirrored = given.swapped()
        if mirrored.sort_key() < given.sort_key():
            return mirrored, "swapped"
        return given, "given"
    return given, "swapped" if swapped_input else "given"


# -- lookup ----------------------------------------------------------------

def _marker(cid: ClassId) -> ClassId:
    if cid.parameterized and cid.param is not None:
        return ClassId(cid.family, cid.index, cid.M, None)
    return cid


def _concrete(cid: ClassId) -> ClassId:
    if cid.parameterized and cid.param is None:
        return ClassId(cid.family, cid.index, cid.M, parse_scalar("2"))
    return cid


def _table_key(tup: InvariantTuple, flag: str) -> tuple:
    # the flag separates mirror-image classes, which exist only at square
    # shape; at rectangular shape it merely records the input arrangement
    if tup.dims[1] == tup.dims[2]:
        return tup.lookup_key() + (flag,)
    return tup.lookup_key()


@dataclass(frozen=True)
class LookupTable:
    """Invariant-to-class table plus any proven duplicate listings."""

    table: dict[tuple, ClassId]
    aliases: tuple[tuple[ClassId, ClassId], ...]


@lru_cache(maxsize=None)
def _lookup_at(dims: tuple[int, int, int]) -> LookupTable:
    if dims[1] < 2:
        raise ValueError(
            "lookup needs every party nontrivial; (2, B, 1) states classify "
            "through the degenerate path")
    table: dict[tuple, ClassId] = {}
    aliases: list[tuple[ClassId, ClassId]] = []
    for cid in enumerate_classes(dims):
        tup, flag = invariant_tuple(build(_concrete(cid)))
        key = _table_key(tup, flag)
        if key in table:
            # inside the decided regime equal tuples imply equivalence, so
            # the later entry is a duplicate listing, not a tuple failure
            if _decidable(tup):
                aliases.append((_marker(cid), table[key]))
                continue
            raise RuntimeError(
                f"invariant collision between {table[key]} and {cid}: {key}")
        table[key] = _marker(cid)
    return LookupTable(table, tuple(aliases))


def build_lookup(dims_list: Sequence[Sequence[int]]) -> dict[tuple, ClassId]:
    """Merged invariant-to-class table over several covered dims.

    A collision outside the decided eigenvalue regime would falsify the
    completeness of the tuple and raises instead of being papered over.
    Colliding entries inside that regime are proven equivalent, so the
    later one is dropped here and reported by ``duplicate_listings``.
    """
    merged: dict[tuple, ClassId] = {}
    for dims in dims_list:
        d = tuple(int(v) for v in dims)
        d = (d[0], min(d[1:]), max(d[1:]))
        merged.update(_lookup_at(d).table)
    return merged


def duplicate_listings(
        dims_list: Sequence[Sequence[int]]) -> tuple[tuple[ClassId, ClassId], ...]:
    """(duplicate, primary) pairs found while building the given tables."""
    pairs: list[tuple[ClassId, ClassId]] = []
    for dims in dims_list:
        d = tuple(int(v) for v in dims)
        d = (d[0], min(d[1:]), max(d[1:]))
        pairs.extend(_lookup_at(d).aliases)
    return tuple(pairs)


# -- classification ----------------------------------------------------------

@dataclass(frozen=True)
class Classification:
    """Outcome of classify: a status plus whatever data the status carries."""

    status: str  # "class" | "degenerate" | "unrecognized" | "uncovered"
    label: str
    invariants: InvariantTuple | None = None
    orientation: str | None = None
    class_id: ClassId | None = None
    param_invariant: Scalar | None = None


def classify(state: PureState) -> Classification:
    """Label ``state`` against the catalog.

    Unknown tuples at covered dims are reported explicitly rather than
    mapped to a nearest class; uncovered dims keep the raw tuple attached.
    """
    try:
        tup, flag = invariant_tuple(state)
    except DegenerateStateError:
        return Classification("degenerate", DEGENERATE_LABEL)
    if not covers(tup.dims):
        return Classification("uncovered", UNCOVERED_LABEL, tup, flag)
    table = _lookup_at((tup.dims[0], min(tup.dims[1:]), max(tup.dims[1:]))).table
    cid = table.get(_table_key(tup, flag))
    if cid is None:
        return Classification("unrecognized", UNRECOGNIZED_LABEL, tup, flag)
    param = tup.anharmonic if cid.parameterized else None
    return Classification("class", cid.text(), tup, flag, cid, param)


# -- equivalence --------------------------------------------------------------

EQUIVALENT = "EQUIVALENT"
INEQUIVALENT = "INEQUIVALENT"
EQUAL_INVARIANTS = "EQUAL-INVARIANTS"


@dataclass(frozen=True)
class EquivalenceVerdict:
    verdict: str
    detail: str


def _decidable(tup: InvariantTuple) -> bool:
    # Moebius canonicalization is complete up to three distinct
    # eigenvalues; at four it reduces to the anharmonic invariant provided
    # every eigenvalue carries the same multiplicity vector.
    if tup.n_distinct_eigs <= 3:
        return True
    return tup.n_distinct_eigs == 4 and len(tup.partition) == 1


def are_equivalent(s1: PureState, s2: PureState) -> EquivalenceVerdict:
    """Three-way SLOCC verdict; INEQUIVALENT names the differing invariant."""
    results = []
    for s in (s1, s2):
        try:
            results.append(invariant_tuple(s))
        except DegenerateStateError:
            results.append((None, s.trim()[0].dims))
    (t1, o1), (t2, o2) = results
    if t1 is None or t2 is None:
        if t1 is not None or t2 is not None:
            return EquivalenceVerdict(
                INEQUIVALENT, "only one state is degenerate")
        if o1 == o2:
            return EquivalenceVerdict(
                EQUIVALENT, f"both degenerate with local ranks {list(o1)}")
        return EquivalenceVerdict(
            INEQUIVALENT, f"local ranks differ: {list(o1)} vs {list(o2)}")
    for (name, v1), (_, v2) in zip(t1.components(), t2.components()):
        if v1 != v2:
            return EquivalenceVerdict(
                INEQUIVALENT, f"{name} differs: {v1} vs {v2}")
    if o1 != o2:
        return EquivalenceVerdict(
            INEQUIVALENT, f"orientation differs: {o1} vs {o2}")
    if covers(t1.dims) and _decidable(t1):
        return EquivalenceVerdict(
            EQUIVALENT, "matching invariants within the decided regime")
    return EquivalenceVerdict(
        EQUAL_INVARIANTS,
        "invariants match but the eigenvalue configuration is outside the "
        "decided regime")


def verify_witness(s1: PureState, s2: PureState,
                   ops: Sequence[LocalOperator]) -> bool:
    """True when the operators carry s1 onto s2 up to a global scalar."""
    return s1.apply_ilo(ops).proportional_to(s2)
