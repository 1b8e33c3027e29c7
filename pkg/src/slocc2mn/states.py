"""Pure multipartite states with exact amplitudes, and local operations.

States are dense row-major coefficient tensors over Gaussian rationals.
The party count is arbitrary here; the 2 x M x N machinery sits on top.
"""

from __future__ import annotations

import math
from random import Random
from typing import Iterable, Mapping, Sequence

from .exact import ONE, Scalar, ZERO, parse_scalar
from .linalg import identity, scalar_det, scalar_rank

Matrix = list[list[Scalar]]


class StateParseError(ValueError):
    """State text rejected; carries 1-based line and column."""

    def __init__(self, message: str, line: int, col: int) -> None:
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


class LocalOperator:
    """Invertible square matrix acting on one party."""

    __slots__ = ("matrix", "dim")

    matrix: tuple[tuple[Scalar, ...], ...]
    dim: int

    def __init__(self, matrix: Sequence[Sequence[Scalar]]) -> None:
        rows = tuple(tuple(row) for row in matrix)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("local operator must be square")
        if scalar_det([list(r) for r in rows]).is_zero():
            raise ValueError("local operator must be invertible")
        object.__setattr__(self, "matrix", rows)
        object.__setattr__(self, "dim", n)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("LocalOperator is immutable")

    @staticmethod
    def identity(dim: int) -> "LocalOperator":
        return LocalOperator(identity(dim))

    def __repr__(self) -> str:
        rows = "; ".join(
            " ".join(s.emit() for s in row) for row in self.matrix
        )
        return f"LocalOperator({rows})"


def random_ilo(dim: int, rng: Random, height: int = 2) -> LocalOperator:
    """Random invertible operator with Gaussian-integer entries.

    Entry parts are drawn uniformly from [-height, height].  Retries until
    the determinant is nonzero; gives up after 1000 attempts.
    """
    for _ in range(1000):
        rows = [
            [
                Scalar(rng.randint(-height, height), rng.randint(-height, height))
                for _ in range(dim)
            ]
            for _ in range(dim)
        ]
        if not scalar_det(rows).is_zero():
            return LocalOperator(rows)
    raise RuntimeError("failed to sample an invertible operator in 1000 tries")


class Pencil:
    """Linear matrix pencil alpha*A0 + beta*A1 from the two qubit slices."""

    __slots__ = ("a0", "a1", "nrows", "ncols")

    a0: tuple[tuple[Scalar, ...], ...]
    a1: tuple[tuple[Scalar, ...], ...]
    nrows: int
    ncols: int

    def __init__(self, a0: Sequence[Sequence[Scalar]],
                 a1: Sequence[Sequence[Scalar]]) -> None:
        r0 = tuple(tuple(row) for row in a0)
        r1 = tuple(tuple(row) for row in a1)
        if len(r0) != len(r1) or not r0:
            raise ValueError("pencil slices must share a nonempty shape")
        ncols = len(r0[0])
        if any(len(r) != ncols for r in r0 + r1) or ncols == 0:
            raise ValueError("pencil slices must share a nonempty shape")
        object.__setattr__(self, "a0", r0)
        object.__setattr__(self, "a1", r1)
        object.__setattr__(self, "nrows", len(r0))
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Pencil is immutable")

    def transpose(self) -> "Pencil":
        a0t = tuple(zip(*self.a0))
        a1t = tuple(zip(*self.a1))
        return Pencil(a0t, a1t)

    def __repr__(self) -> str:
        return f"Pencil({self.nrows}x{self.ncols})"


class PureState:
    """Dense pure state: party dimensions plus flat row-major amplitudes."""

    __slots__ = ("dims", "coeffs")

    dims: tuple[int, ...]
    coeffs: tuple[Scalar, ...]

    def __init__(self, dims: Sequence[int],
                 coeffs: Iterable[Scalar]) -> None:
        d = tuple(int(x) for x in dims)
        if len(d) < 2:
            raise ValueError("a state needs at least two parties")
        if any(x < 1 for x in d):
            raise ValueError("party dimensions must be positive")
        cs = tuple(coeffs)
        if len(cs) != math.prod(d):
            raise ValueError(
                f"expected {math.prod(d)} coefficients for dims {d}, got {len(cs)}"
            )
        if all(c.is_zero() for c in cs):
            raise ValueError("the zero vector is not a state")
        object.__setattr__(self, "dims", d)
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("PureState is immutable")

    # -- construction ----------------------------------------------------

    @staticmethod
    def from_terms(dims: Sequence[int],
                   terms: Mapping[tuple[int, ...], Scalar]) -> "PureState":
        d = tuple(dims)
        coeffs = [ZERO] * math.prod(d)
        strides = _strides(d)
        for idx, value in terms.items():
            if len(idx) != len(d) or any(not 0 <= i < n for i, n in zip(idx, d)):
                raise ValueError(f"index {idx} out of range for dims {d}")
            flat = sum(i * s for i, s in zip(idx, strides))
            coeffs[flat] = coeffs[flat] + value
        return PureState(d, coeffs)

    @staticmethod
    def from_kets(dims: Sequence[int],
                  kets: Iterable[tuple[int, ...]]) -> "PureState":
        """Unit-amplitude superposition of computational basis kets."""
        acc: dict[tuple[int, ...], Scalar] = {}
        for ket in kets:
            key = tuple(ket)
            acc[key] = acc.get(key, ZERO) + ONE
        return PureState.from_terms(dims, acc)

    # -- access ----------------------------------------------------------

    @property
    def nparties(self) -> int:
        return len(self.dims)

    def amplitude(self, idx: Sequence[int]) -> Scalar:
        if len(idx) != len(self.dims):
            raise ValueError("index arity mismatch")
        strides = _strides(self.dims)
        return self.coeffs[sum(i * s for i, s in zip(idx, strides))]

    def unfolding(self, party: int) -> Matrix:
        """dims[party] x (everything else) matrix, row-major columns."""
        d = self.dims
        p = party
        before = math.prod(d[:p])
        mid = d[p]
        after = math.prod(d[p + 1:])
        mat: Matrix = [[ZERO] * (before * after) for _ in range(mid)]
        pos = 0
        for b in range(before):
            for i in range(mid):
                row = mat[i]
                base = b * after
                for a in range(after):
                    row[base + a] = self.coeffs[pos]
                    pos += 1
        return mat

    def local_rank(self, party: int) -> int:
        return scalar_rank(self.unfolding(party))

    def local_ranks(self) -> tuple[int, ...]:
        return tuple(self.local_rank(p) for p in range(self.nparties))

    # -- transformations --------------------------------------------------

    def apply_on_party(self, party: int,
                       matrix: Sequence[Sequence[Scalar]]) -> "PureState":
        """Contract ``matrix`` (out_dim x dims[party]) into one tensor leg."""
        d = self.dims
        p = party
        out_dim = len(matrix)
        in_dim = d[p]
        if any(len(row) != in_dim for row in matrix):
            raise ValueError("operator shape does not match the party")
        before = math.prod(d[:p])
        after = math.prod(d[p + 1:])
        new = [ZERO] * (before * out_dim * after)
        old = self.coeffs
        for b in range(before):
            ob = b * in_dim * after
            nb = b * out_dim * after
            for i, mrow in enumerate(matrix):
                dst = nb + i * after
                for j, m in enumerate(mrow):
                    if m.is_zero():
                        continue
                    src = ob + j * after
                    for a in range(after):
                        v = old[src + a]
                        if not v.is_zero():
                            new[dst + a] = new[dst + a] + m * v
        dims = d[:p] + (out_dim,) + d[p + 1:]
        return PureState(dims, new)

    def apply_ilo(self, ops: Sequence[LocalOperator]) -> "PureState":
        if len(ops) != self.nparties:
            raise ValueError("one operator per party required")
        state = self
        for p, op in enumerate(ops):
            if op.dim != self.dims[p]:
                raise ValueError("operator dimension mismatch on party "
                                 f"{p}: {op.dim} vs {self.dims[p]}")
            state = state.apply_on_party(p, op.matrix)
        return state

    def permute_parties(self, perm: Sequence[int]) -> "PureState":
        """Reorder parties; ``perm[k]`` is the old position of new party k."""
        if sorted(perm) != list(range(self.nparties)):
            raise ValueError("not a permutation of the parties")
        d = self.dims
        new_dims = tuple(d[p] for p in perm)
        old_strides = _strides(d)
        new_strides = _strides(new_dims)
        new_coeffs = [ZERO] * len(self.coeffs)
        idx = [0] * len(d)
        for flat, value in enumerate(self.coeffs):
            rem = flat
            for k, s in enumerate(old_strides):
                idx[k], rem = divmod(rem, s)
            pos = sum(idx[perm[k]] * new_strides[k] for k in range(len(d)))
            new_coeffs[pos] = value
        return PureState(new_dims, new_coeffs)

    def group_parties(self, blocks: Sequence[Sequence[int]]) -> "PureState":
        """Merge party blocks into composite parties.

        Block members index the current parties; flattened block order must
        be a permutation.  Indices inside each merged party run row-major.
        """
        flat = [p for block in blocks for p in block]
        state = self.permute_parties(flat)
        new_dims = []
        pos = 0
        for block in blocks:
            size = math.prod(state.dims[pos:pos + len(block)])
            new_dims.append(size)
            pos += len(block)
        if len(new_dims) < 2:
            raise ValueError("a state needs at least two parties")
        return PureState(tuple(new_dims), state.coeffs)

    def scaled(self, s: Scalar) -> "PureState":
        if s.is_zero():
            raise ValueError("the zero vector is not a state")
        return PureState(self.dims, tuple(c * s for c in self.coeffs))

    def pencil_of(self, party: int) -> Pencil:
        """Matrix pencil of the two slices along a two-dimensional party."""
        if self.dims[party] != 2:
            raise ValueError("pencil view requires a qubit party")
        if self.nparties != 3:
            raise ValueError("pencil view requires exactly three parties")
        others = [p for p in range(3) if p != party]
        slices: list[Matrix] = []
        for v in (0, 1):
            rows: Matrix = []
            for i in range(self.dims[others[0]]):
                row = []
                for j in range(self.dims[others[1]]):
                    idx = [0, 0, 0]
                    idx[party] = v
                    idx[others[0]] = i
                    idx[others[1]] = j
                    row.append(self.amplitude(idx))
                rows.append(row)
            slices.append(rows)
        return Pencil(slices[0], slices[1])

    # -- trimming ----------------------------------------------------------

    def trim(self) -> tuple["PureState", list[Matrix]]:
        """Cut every party down to its local support.

        Returns the trimmed state and one restriction map per party; the map
        for a full-rank party is the identity and the corresponding tensor
        leg is left untouched.  Applying all maps to the original state
        reproduces the trimmed state exactly.
        """
        state = self
        maps: list[Matrix] = []
        for p in range(self.nparties):
            unf = state.unfolding(p)
            dim = state.dims[p]
            if scalar_rank(unf) == dim:  # full support, leg untouched
                maps.append(identity(dim))
                continue
            _, transform, npivots = _row_reduce_transform(unf)
            top = [transform[r] for r in range(npivots)]
            maps.append(top)
            state = state.apply_on_party(p, top)
        return state, maps

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PureState):
            return NotImplemented
        return self.dims == other.dims and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.dims, self.coeffs))

    def proportional_to(self, other: "PureState") -> bool:
        """Equality up to one global nonzero scalar."""
        if self.dims != other.dims:
            return False
        ratio: Scalar | None = None
        for a, b in zip(self.coeffs, other.coeffs):
            if a.is_zero() != b.is_zero():
                return False
            if a.is_zero():
                continue
            r = a / b
            if ratio is None:
                ratio = r
            elif r != ratio:
                return False
        return ratio is not None

    def __repr__(self) -> str:
        terms = []
        strides = _strides(self.dims)
        for flat, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            idx = []
            rem = flat
            for s in strides:
                q, rem = divmod(rem, s)
                idx.append(q)
            label = ",".join(str(i) for i in idx)
            terms.append(f"({c})|{label}>")
        dims = "x".join(str(d) for d in self.dims)
        return f"PureState({dims}: " + " + ".join(terms) + ")"


def _strides(dims: Sequence[int]) -> tuple[int, ...]:
    out = [1] * len(dims)
    for k in range(len(dims) - 2, -1, -1):
        out[k] = out[k + 1] * dims[k + 1]
    return tuple(out)


def _row_reduce_transform(mat: Matrix) -> tuple[Matrix, Matrix, int]:
    """Gauss-Jordan with a running transform T, so T @ mat = reduced."""
    rows = [list(r) for r in mat]
    n = len(rows)
    ncols = len(rows[0]) if rows else 0
    transform = identity(n)
    rank = 0
    for col in range(ncols):
        pivot = -1
        for r in range(rank, n):
            if not rows[r][col].is_zero():
                pivot = r
                break
        if pivot < 0:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        transform[rank], transform[pivot] = transform[pivot], transform[rank]
        inv = rows[rank][col].inverse()
        rows[rank] = [v * inv for v in rows[rank]]
        transform[rank] = [v * inv for v in transform[rank]]
        for r in range(n):
            if r != rank and not rows[r][col].is_zero():
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
                transform[r] = [a - f * b
                                for a, b in zip(transform[r], transform[rank])]
        rank += 1
        if rank == n:
            break
    return rows, transform, rank


def scale_to_integer(state: PureState) -> PureState:
    """Clear all denominators with one global factor (SLOCC-neutral)."""
    denom = 1
    for c in state.coeffs:
        for part in (c.re, c.im):
            g = math.gcd(denom, part.denominator)
            denom = denom // g * part.denominator
    if denom == 1:
        return state
    return state.scaled(Scalar(denom))


# ------------------------------------------------------------- state text


def emit_state(state: PureState) -> str:
    dims = ", ".join(str(d) for d in state.dims)
    coeffs = ", ".join(c.emit() for c in state.coeffs)
    return f"dims: [{dims}]\ncoeffs: [{coeffs}]\n"


class _Cursor:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0
        self.line_starts = [0]
        for k, ch in enumerate(text):
            if ch == "\n":
                self.line_starts.append(k + 1)

    def location(self, pos: int | None = None) -> tuple[int, int]:
        p = self.pos if pos is None else pos
        line = 0
        for k, start in enumerate(self.line_starts):
            if start <= p:
                line = k
            else:
                break
        return line + 1, p - self.line_starts[line] + 1

    def error(self, message: str, pos: int | None = None) -> StateParseError:
        line, col = self.location(pos)
        return StateParseError(message, line, col)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, literal: str) -> None:
        self.skip_ws()
        if not self.text.startswith(literal, self.pos):
            raise self.error(f"expected {literal!r}")
        self.pos += len(literal)

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def bracket_items(self) -> list[tuple[str, int]]:
        """Comma-separated raw items of a [...] list with start offsets."""
        self.expect("[")
        items: list[tuple[str, int]] = []
        start = self.pos
        while True:
            if self.pos >= len(self.text):
                raise self.error("unterminated list", start)
            ch = self.text[self.pos]
            if ch in ",]":
                raw = self.text[start:self.pos]
                lead = len(raw) - len(raw.lstrip())
                items.append((raw.strip(), start + lead))
                self.pos += 1
                if ch == "]":
                    break
                start = self.pos
            else:
                self.pos += 1
        return items


def parse_state(text: str) -> PureState:
    """Parse the two-line state format.

    ::

        dims: [2, 3, 3]
        coeffs: [1, 0, 1/2, -i, ...]

    Coefficients are flat row-major scalar literals.  Errors carry the
    1-based line and column of the offending token.
    """
    cur = _Cursor(text)
    cur.expect("dims")
    cur.expect(":")
    cur.skip_ws()
    dims: list[int] = []
    for raw, pos in cur.bracket_items():
        if not raw or not raw.lstrip("+-").isdigit():
            raise cur.error(f"invalid dimension {raw!r}", pos)
        dims.append(int(raw))
    cur.expect("coeffs")
    cur.expect(":")
    cur.skip_ws()
    coeffs: list[Scalar] = []
    for raw, pos in cur.bracket_items():
        try:
            coeffs.append(parse_scalar(raw))
        except ValueError as exc:
            raise cur.error(str(exc), pos) from None
    if not cur.at_end():
        raise cur.error("unexpected trailing content")
    try:
        return PureState(dims, coeffs)
    except ValueError as exc:
        raise cur.error(str(exc), 0) from None
