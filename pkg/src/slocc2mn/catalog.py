"""Canonical catalog of 2 x M x N entanglement classes.

Every class the library recognizes is named by a :class:`ClassId`.  The
text grammar, round-tripped by :func:`parse_class_id` and
:meth:`ClassId.text`:

    phi0            varphi3         Phi12           Phi3[x=2]
    Upsilon0[M=2]   Theta5[M=3]     Gamma7[M=3]     Lambda3[M=2,x=3]
    t233-4          t221-0          GHZ  (alias of t222-0)
    LambdaExtra     FourQubitPhi[x=3]

Indexed families live at fixed or M-scaled dimensions:

    phi      (2,3,2)            varphi   (2,3,3)
    Phi      (2,4,4)            Upsilon0 (2,M,2M), M >= 2
    Upsilon1/2 (2,M+1,2M+1), M >= 1
    Theta    (2,M+2,2M+2)       Gamma    (2,M+3,2M+3)
    Lambda   (2,M+4,2M+4)       LambdaExtra (2,5,6)

``t2BN-i`` ids name the printed small-dimension table rows verbatim
(``B`` and ``N`` are the second and third dimension).  ``Phi3``,
``Lambda3`` and ``FourQubitPhi`` are parameterized: a concrete member
carries an exact scalar ``x`` (never 0 or 1); the id without ``x`` is a
symbolic family marker that can be enumerated and queried but not built.

Small-M exclusions follow the source catalog: ``Theta4`` needs M >= 2,
``Gamma7/11/13`` need M >= 2, and at M = 1 nine ``Lambda`` indices
disappear while ``LambdaExtra`` appears.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .exact import ONE, Scalar, parse_scalar
from .pencil import Count, INFINITE
from .states import PureState

Ket = tuple[int, int, int]

_INDEX_BOUND = {
    "phi": 2, "varphi": 6, "Phi": 16, "Upsilon": 3, "Theta": 6,
    "Gamma": 15, "Lambda": 37, "LambdaExtra": 1, "FourQubitPhi": 1,
    "T22N": 0, "T23N": 0,  # bounded per table block below
}
# printed table blocks, keyed by (B, N): row count
_TABLE_ROWS = {
    ("T22N", 1): 1, ("T22N", 2): 2, ("T22N", 3): 2, ("T22N", 4): 1,
    ("T23N", 2): 2, ("T23N", 3): 6, ("T23N", 4): 5, ("T23N", 5): 2,
    ("T23N", 6): 1,
}
_GAMMA_M1_GONE = frozenset({7, 11, 13})
_LAMBDA_M1_GONE = frozenset({12, 13, 20, 22, 25, 28, 29, 31, 32})

UNCOVERED = "dims outside catalog coverage"


def _is_forbidden_param(x: Scalar) -> bool:
    return x.is_zero() or x.is_one()


@dataclass(frozen=True)
class ClassId:
    """Name of one catalog class (or of a parameterized family).

    ``M`` is the family size parameter; for table ids it holds the
    printed third dimension.  ``param`` is the exact scalar of a
    parameterized member; ``None`` on a parameterized family means the
    symbolic marker.
    """

    family: str
    index: int
    M: int | None = None
    param: Scalar | None = None

    def __post_init__(self) -> None:
        f = self.family
        if f not in _INDEX_BOUND:
            raise ValueError(f"unknown class family {f!r}")
        if f in ("T22N", "T23N"):
            if self.M is None:
                raise ValueError(f"table family {f} needs its printed dims")
            rows = _TABLE_ROWS.get((f, self.M))
            if rows is None:
                raise ValueError(f"no printed table block for {f} at N={self.M}")
            if not 0 <= self.index < rows:
                raise ValueError(f"table row {self.index} out of range for {f} N={self.M}")
        else:
            if not 0 <= self.index < _INDEX_BOUND[f]:
                raise ValueError(f"index {self.index} out of range for family {f}")
        if f == "LambdaExtra" and self.M is None:
            object.__setattr__(self, "M", 1)
        self._check_m()
        self._check_param()

    def _check_m(self) -> None:
        f, i, m = self.family, self.index, self.M
        if f in ("phi", "varphi", "Phi", "FourQubitPhi"):
            if m is not None:
                raise ValueError(f"family {f} takes no M parameter")
            return
        if f in ("Upsilon", "Theta", "Gamma", "Lambda", "LambdaExtra"):
            if m is None:
                raise ValueError(f"family {f} needs M")
            floor = 2 if (f == "Upsilon" and i == 0) else 1
            if m < floor:
                raise ValueError(f"{f}{i} requires M >= {floor}")
            if f == "LambdaExtra" and m != 1:
                raise ValueError("LambdaExtra exists only at M = 1")
            if m == 1:
                if f == "Theta" and i == 4:
                    raise ValueError("Theta4 requires M >= 2")
                if f == "Gamma" and i in _GAMMA_M1_GONE:
                    raise ValueError(f"Gamma{i} requires M >= 2")
                if f == "Lambda" and i in _LAMBDA_M1_GONE:
                    raise ValueError(f"Lambda{i} requires M >= 2")

    def _check_param(self) -> None:
        if not self.parameterized:
            if self.param is not None:
                raise ValueError(f"{self.family}{self.index} takes no parameter")
            return
        x = self.param
        if x is not None and _is_forbidden_param(x):
            raise ValueError("parameter x must avoid 0 and 1")

    @property
    def parameterized(self) -> bool:
        return (self.family, self.index) in (("Phi", 3), ("Lambda", 3)) \
            or self.family == "FourQubitPhi"

    def text(self) -> str:
        """Canonical id text; inverse of parse_class_id."""
        f = self.family
        if f in ("T22N", "T23N"):
            b = 2 if f == "T22N" else 3
            return f"t2{b}{self.M}-{self.index}"
        args: list[str] = []
        if f in ("Upsilon", "Theta", "Gamma", "Lambda"):
            args.append(f"M={self.M}")
        if self.parameterized and self.param is not None:
            args.append(f"x={self.param.emit()}")
        name = f if f in ("LambdaExtra", "FourQubitPhi") else f"{f}{self.index}"
        return name + (f"[{','.join(args)}]" if args else "")

    def __str__(self) -> str:
        return self.text()

    def sort_key(self) -> tuple:
        fam = list(_INDEX_BOUND)
        p = self.param
        return (fam.index(self.family), self.M or 0, self.index,
                p.sort_key() if p is not None else ())


_TABLE_RE = re.compile(r"t2([23])([1-9])-([0-9]+)\Z")
_INDEXED_RE = re.compile(r"(phi|varphi|Phi|Upsilon|Theta|Gamma|Lambda)([0-9]+)(?:\[([^]]*)\])?\Z")
_SPECIAL_RE = re.compile(r"(FourQubitPhi|LambdaExtra)(?:\[([^]]*)\])?\Z")
_ALIASES = {"GHZ": ("T22N", 0, 2), "W": ("T22N", 1, 2)}


def _parse_args(blob: str | None, ident: str) -> tuple[int | None, Scalar | None]:
    m: int | None = None
    x: Scalar | None = None
    if blob is None:
        return m, x
    for piece in blob.split(","):
        key, eq, value = piece.partition("=")
        key, value = key.strip(), value.strip()
        if not eq or not value:
            raise ValueError(f"malformed argument {piece!r} in {ident!r}")
        if key == "M":
            if not value.isdigit():
                raise ValueError(f"M must be a positive integer in {ident!r}")
            m = int(value)
        elif key == "x":
            x = parse_scalar(value)
        else:
            raise ValueError(f"unknown argument {key!r} in {ident!r}")
    return m, x


def parse_class_id(text: str) -> ClassId:
    """Parse canonical id text (aliases GHZ and W are accepted)."""
    ident = text.strip()
    if ident in _ALIASES:
        family, index, n = _ALIASES[ident]
        return ClassId(family, index, M=n)
    if (m := _TABLE_RE.fullmatch(ident)) is not None:
        family = "T22N" if m.group(1) == "2" else "T23N"
        return ClassId(family, int(m.group(3)), M=int(m.group(2)))
    if (m := _INDEXED_RE.fullmatch(ident)) is not None:
        mm, x = _parse_args(m.group(3), ident)
        return ClassId(m.group(1), int(m.group(2)), M=mm, param=x)
    if (m := _SPECIAL_RE.fullmatch(ident)) is not None:
        mm, x = _parse_args(m.group(2), ident)
        return ClassId(m.group(1), 0, M=mm, param=x)
    raise ValueError(f"unknown class id {text!r}")


# -- representative kets -------------------------------------------------

Terms = dict[Ket, Scalar]


def _kets(*kets: Ket) -> Terms:
    return {k: ONE for k in kets}


def _upsilon_terms(index: int, m: int) -> tuple[tuple[int, int, int], Terms]:
    base = _kets(*[(0, i, i) for i in range(m)],
                 *[(1, i, i + m) for i in range(m)])
    if index == 0:
        return (2, m, 2 * m), base
    base[(0, m, 2 * m)] = ONE
    if index == 2:
        base[(1, m, m - 1)] = ONE
    return (2, m + 1, 2 * m + 1), base


def _theta_terms(index: int, m: int) -> tuple[tuple[int, int, int], Terms]:
    _, terms = _upsilon_terms(2 if index in (2, 4, 5) else 1, m)
    b, top = m + 1, 2 * m + 1
    adds: dict[int, list[Ket]] = {
        0: [(1, b, top)],
        1: [(0, b, top)],
        2: [(1, b, top)],
        3: [(0, b, top), (1, b, top - 1)],
        4: [(0, b, top), (1, b, 0)],
        5: [(0, b, top), (1, b, top - 1)],
    }
    terms.update(_kets(*adds[index]))
    return (2, m + 2, 2 * m + 2), terms


def _varphi_terms(index: int) -> Terms:
    tails: dict[int, list[Ket]] = {
        0: [(0, 0, 0), (1, 1, 1), (0, 2, 2)],
        1: [(0, 0, 0), (1, 1, 1), (0, 2, 2), (1, 2, 2)],
        2: [(0, 1, 0), (0, 0, 1), (1, 1, 2), (1, 2, 1)],
        3: [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 2), (1, 2, 1)],
        4: [(1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 2, 2)],
        5: [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 2, 2)],
    }
    return _kets(*tails[index])


def _gamma_terms(index: int, m: int) -> tuple[tuple[int, int, int], Terms]:
    dims = (2, m + 3, 2 * m + 3)
    b, top = m + 2, 2 * m + 2
    if index == 14:
        terms = _varphi_terms(2)
        for i in range(m):
            terms[(0, b - i, top - 2 * i)] = ONE
            terms[(1, b - i, top - 1 - 2 * i)] = ONE
        return dims, terms
    theta_of = {0: 0, 1: 0, 2: 1, 3: 2, 4: 2, 5: 3, 6: 3, 7: 4, 8: 5,
                9: 2, 10: 3, 11: 4, 12: 5, 13: 5}
    _, terms = _theta_terms(theta_of[index], m)
    adds: dict[int, list[Ket]] = {
        0: [(1, b, top)],
        1: [(0, b, top), (1, b, top)],
        2: [(0, b, top)],
        3: [(1, b, top)],
        4: [(0, b, top)],
        5: [(1, b, top)],
        6: [(0, b, top)],
        7: [(1, b, top)],
        8: [(1, b, top)],
        9: [(1, b, top), (0, b, top - 1)],
        10: [(0, b, top), (1, b, top - 1)],
        11: [(1, b, top), (0, b, m + 1)],
        12: [(1, b, top), (0, b, m)],
        13: [(0, b, top), (1, b, top - 1)],
    }
    terms.update(_kets(*adds[index]))
    return dims, terms


def _phi232_terms(index: int) -> Terms:
    kets: list[Ket] = [(0, 0, 0), (0, 1, 1), (1, 2, 1)]
    if index == 1:
        kets.append((1, 1, 0))
    return _kets(*kets)


def _phi244_terms(index: int, x: Scalar | None) -> Terms:
    tail_of = {0: 0, 1: 0, 2: 1, 3: 1, 4: 2, 5: 3, 6: 3, 7: 4, 8: 4,
               9: 5, 10: 5, 11: 2, 12: 3, 13: 4, 14: 5}
    terms = _phi232_terms(1) if index == 15 else _varphi_terms(tail_of[index])
    if index in (0, 2, 4, 5, 7, 9):
        terms[(1, 3, 3)] = ONE
    elif index in (1, 6, 8):
        terms[(0, 3, 3)] = ONE
    elif index == 3:
        assert x is not None
        terms[(0, 3, 3)] = ONE
        terms[(1, 3, 3)] = x
    elif index == 10:
        terms[(0, 3, 3)] = ONE
        terms[(1, 3, 3)] = ONE
    elif index in (11, 12, 14):
        terms[(1, 3, 3)] = ONE
        terms[(0, 3, 2)] = ONE
    else:  # 13, 15
        terms[(0, 3, 3)] = ONE
        terms[(1, 3, 2)] = ONE
    return terms


def _lambda_terms(index: int, m: int,
                  x: Scalar | None) -> tuple[tuple[int, int, int], Terms]:
    dims = (2, m + 4, 2 * m + 4)
    b, top = m + 3, 2 * m + 3
    if index == 36:
        terms = _phi244_terms(15, None)
        for i in range(m):
            terms[(0, b - i, top - 2 * i)] = ONE
            terms[(1, b - i, top - 1 - 2 * i)] = ONE
        return dims, terms
    gamma_of = {0: 0, 1: 0, 2: 0, 3: 1, 4: 2, 5: 3, 6: 3, 7: 4, 8: 5,
                9: 5, 10: 5, 11: 6, 12: 7, 13: 7, 14: 8, 15: 8, 16: 9,
                17: 9, 18: 10, 19: 10, 20: 11, 21: 12, 22: 13, 23: 14,
                24: 5, 25: 7, 26: 8, 27: 9, 28: 11, 29: 11, 30: 12,
                31: 13, 32: 13, 33: 14, 34: 6, 35: 10}
    _, terms = _gamma_terms(gamma_of[index], m)
    if index == 3:
        assert x is not None
        terms[(0, b, top)] = ONE
        terms[(1, b, top)] = x
        return dims, terms
    ones = {0: [(1, b, top)], 1: [(0, b, top)],
            2: [(0, b, top), (1, b, top)],
            4: [(0, b, top)], 5: [(1, b, top)], 6: [(0, b, top)],
            7: [(0, b, top), (1, b, top)],
            8: [(1, b, top)], 9: [(0, b, top)],
            10: [(0, b, top), (1, b, top)],
            11: [(0, b, top)], 12: [(1, b, top)], 13: [(0, b, top)],
            14: [(1, b, top)], 15: [(0, b, top)], 16: [(1, b, top)],
            17: [(0, b, top)], 18: [(1, b, top)], 19: [(0, b, top)],
            20: [(1, b, top)], 21: [(1, b, top)], 22: [(1, b, top)],
            23: [(1, b, top)],
            24: [(1, b, top), (0, b, top - 1)],
            25: [(1, b, top), (0, b, top - 1)],
            26: [(1, b, top), (0, b, top - 1)],
            27: [(1, b, top), (0, b, top - 1)],
            28: [(1, b, top), (0, b, m + 2)],
            29: [(1, b, top), (0, b, top - 1)],
            30: [(1, b, top), (0, b, top - 1)],
            31: [(0, b, top), (1, b, 0)],
            32: [(0, b, top), (1, b, top - 1)],
            33: [(1, b, top), (0, b, top - 2)],
            34: [(0, b, top), (1, b, top - 1)],
            35: [(0, b, top), (1, b, top - 1)]}
    terms.update(_kets(*ones[index]))
    return dims, terms


_T22_ROWS: dict[tuple[int, int], list[Ket]] = {
    (1, 0): [(0, 0, 0), (1, 1, 0)],
    (2, 0): [(0, 0, 0), (1, 1, 1)],
    (2, 1): [(0, 0, 1), (0, 1, 0), (1, 0, 0)],
    (3, 0): [(0, 0, 0), (0, 1, 1), (1, 1, 2)],
    (3, 1): [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 2)],
    (4, 0): [(0, 0, 0), (0, 1, 1), (1, 0, 2), (1, 1, 3)],
}
_T23_ROWS: dict[tuple[int, int], list[Ket]] = {
    (2, 0): [(0, 0, 0), (0, 1, 1), (1, 2, 1)],
    (2, 1): [(0, 0, 0), (0, 1, 1), (1, 1, 0), (1, 2, 1)],
    (4, 0): [(1, 2, 3), (0, 1, 2), (0, 0, 0), (1, 0, 1)],
    (4, 1): [(0, 2, 3), (0, 1, 2), (0, 0, 0), (1, 0, 1)],
    (4, 2): [(1, 2, 3), (0, 1, 2), (1, 1, 0), (0, 0, 0), (1, 0, 1)],
    (4, 3): [(0, 2, 3), (1, 2, 2), (0, 1, 2), (0, 0, 0), (1, 0, 1)],
    (4, 4): [(0, 2, 3), (1, 2, 2), (0, 1, 2), (1, 1, 0), (0, 0, 0),
             (1, 0, 1)],
    (5, 0): [(0, 2, 4), (0, 0, 0), (0, 1, 1), (1, 0, 2), (1, 1, 3)],
    (5, 1): [(0, 2, 4), (1, 2, 1), (0, 0, 0), (0, 1, 1), (1, 0, 2),
             (1, 1, 3)],
    (6, 0): [(0, 0, 0), (0, 1, 1), (0, 2, 2), (1, 0, 3), (1, 1, 4),
             (1, 2, 5)],
}
for _i in range(6):
    _T23_ROWS[(3, _i)] = sorted(_varphi_terms(_i))


def build(cid: ClassId) -> PureState:
    """Representative state of ``cid`` at its natural dimensions."""
    f, i, m, x = cid.family, cid.index, cid.M, cid.param
    if cid.parameterized and x is None:
        raise ValueError(f"{cid} is a parameterized family; building a "
                         "member needs a concrete x")
    if f == "phi":
        return PureState.from_terms((2, 3, 2), _phi232_terms(i))
    if f == "varphi":
        return PureState.from_terms((2, 3, 3), _varphi_terms(i))
    if f == "Phi":
        return PureState.from_terms((2, 4, 4), _phi244_terms(i, x))
    if f == "Upsilon":
        dims, terms = _upsilon_terms(i, m)
        return PureState.from_terms(dims, terms)
    if f == "Theta":
        dims, terms = _theta_terms(i, m)
        return PureState.from_terms(dims, terms)
    if f == "Gamma":
        dims, terms = _gamma_terms(i, m)
        return PureState.from_terms(dims, terms)
    if f == "Lambda":
        dims, terms = _lambda_terms(i, m, x)
        return PureState.from_terms(dims, terms)
    if f == "LambdaExtra":
        _, terms = _gamma_terms(9, 1)
        terms[(0, 4, 5)] = ONE
        terms[(1, 4, 2)] = ONE
        return PureState.from_terms((2, 5, 6), terms)
    if f == "T22N":
        return PureState.from_terms((2, 2, m), _kets(*_T22_ROWS[(m, i)]))
    if f == "T23N":
        return PureState.from_terms((2, 3, m), _kets(*_T23_ROWS[(m, i)]))
    # four-qubit family
    return PureState.from_terms(
        (2, 2, 2, 2),
        {(0, 0, 0, 0): ONE, (0, 0, 1, 1): ONE, (1, 1, 0, 0): ONE,
         (1, 1, 1, 1): x})


def build_exceptional(m: int, n: int,
                      tail: ClassId | PureState | None) -> PureState:
    """Staircase extension of a 2x(2M-N)x(2M-N) tail up to dims (2, M, N).

    The tail fills the low corner; ``None`` stands for the one-term
    (2,1,1) block, the only choice when 2M - N = 1.
    """
    if not m < n < 2 * m:
        raise ValueError("exceptional construction needs M < N < 2M")
    k = 2 * m - n
    if tail is None:
        tail_state = PureState.from_terms((2, 1, 1), {(0, 0, 0): ONE})
    elif isinstance(tail, ClassId):
        tail_state = build(tail)
    else:
        tail_state = tail
    if tail_state.dims != (2, k, k):
        raise ValueError(
            f"tail dims {tail_state.dims} do not match the residual block (2, {k}, {k})")
    terms: Terms = {}
    for i in range(n - m):
        terms[(0, m - 1 - i, n - 1 - 2 * i)] = ONE
        terms[(1, m - 1 - i, n - 2 - 2 * i)] = ONE
    for a in range(2):
        for bb in range(k):
            for cc in range(k):
                amp = tail_state.amplitude((a, bb, cc))
                if not amp.is_zero():
                    terms[(a, bb, cc)] = amp
    return PureState.from_terms((2, m, n), terms)


# -- enumeration ----------------------------------------------------------

def enumerate_classes(dims: Sequence[int]) -> list[ClassId]:
    """All catalog ids whose classes have true rank exactly ``dims``.

    Dimensions are orientation-normalized (second party at most the
    third); parameterized families appear once as symbolic markers.
    The unique entangled class of any (2, B, 1) space is the pair class
    t221-0.
    """
    d = tuple(int(v) for v in dims)
    if len(d) != 3 or d[0] != 2:
        raise ValueError(UNCOVERED)
    b, c = min(d[1], d[2]), max(d[1], d[2])
    if b < 1 or c < 1:
        raise ValueError(UNCOVERED)
    if c == 1:
        raise ValueError(UNCOVERED)
    if b == 1:
        if d[1] == 1:  # no entangled class needs a one-dimensional middle party
            raise ValueError(UNCOVERED)
        return [ClassId("T22N", 0, M=1)]
    k = 2 * b - c
    if k == 0:
        return [ClassId("Upsilon", 0, M=b)]
    if k == 1:
        return [ClassId("Upsilon", 1, M=b - 1), ClassId("Upsilon", 2, M=b - 1)]
    if k == 2:
        if b == 2:
            return [ClassId("T22N", 0, M=2), ClassId("T22N", 1, M=2)]
        return [ClassId("Theta", i, M=b - 2) for i in range(6)
                if not (b == 3 and i == 4)]
    if k == 3:
        if b == 3:
            return [ClassId("varphi", i) for i in range(6)]
        return [ClassId("Gamma", i, M=b - 3) for i in range(15)
                if not (b == 4 and i in _GAMMA_M1_GONE)]
    if k == 4:
        if b == 4:
            return [ClassId("Phi", i) for i in range(16)]
        out = [ClassId("Lambda", i, M=b - 4) for i in range(37)
               if not (b == 5 and i in _LAMBDA_M1_GONE)]
        if b == 5:
            out.append(ClassId("LambdaExtra", 0))
        return out
    raise ValueError(UNCOVERED)


def covers(dims: Sequence[int]) -> bool:
    """True when enumerate_classes accepts ``dims``."""
    try:
        enumerate_classes(dims)
    except ValueError:
        return False
    return True


# -- declared signatures ---------------------------------------------------

@dataclass(frozen=True)
class ExpectedSignature:
    """Bracket annotation of a class: product-ray counts, maybe a profile.

    ``entries`` has three counts for tripartite classes and six (pair
    order AB, AC, AD, BC, BD, CD) for the four-qubit family.
    """

    entries: tuple[Count, ...]
    rank_profile: frozenset[int] | None = None


def _sig(*vals: int | None) -> tuple[Count, ...]:
    return tuple(INFINITE if v is None else Count(v) for v in vals)


_X = None  # infinite marker in the tables below
_BRACKETS: dict[str, tuple[tuple[int | None, ...], ...]] = {
    "phi": ((1, _X, 1), (0, _X, 0)),
    "varphi": ((1, _X, _X), (0, 3, 3), (0, _X, _X), (0, 1, 1), (1, _X, _X),
               (0, 2, 2)),
    "Phi": ((0, _X, _X), (1, _X, _X), (0, _X, _X), (0, 4, 4), (0, _X, _X),
            (0, _X, _X), (0, 2, 2), (0, _X, _X), (1, _X, _X), (0, _X, _X),
            (0, 3, 3), (0, _X, _X), (0, 1, 1), (0, _X, _X), (0, 2, 2),
            (0, _X, _X)),
    "Upsilon": ((0, 0, _X), (0, 1, _X), (0, 0, _X)),
    "Theta": ((0, 2, _X), (0, _X, _X), (0, 1, _X), (0, 1, _X), (0, 0, _X),
              (0, 0, _X)),
    "Gamma": ((0, _X, _X), (0, 3, _X), (0, _X, _X), (0, _X, _X), (0, 2, _X),
              (0, 2, _X), (0, _X, _X), (0, 1, _X), (0, 1, _X), (0, 1, _X),
              (0, 1, _X), (0, 0, _X), (0, 0, _X), (0, 0, _X), (0, _X, _X)),
    "Lambda": ((0, _X, _X), (0, _X, _X), (0, _X, _X), (0, 4, _X),
               (0, _X, _X), (0, _X, _X), (0, _X, _X), (0, 3, _X),
               (0, _X, _X), (0, _X, _X), (0, 3, _X), (0, _X, _X),
               (0, _X, _X), (0, 2, _X), (0, _X, _X), (0, 2, _X),
               (0, _X, _X), (0, 2, _X), (0, 2, _X), (0, _X, _X),
               (0, 1, _X), (0, 1, _X), (0, 1, _X), (0, _X, _X),
               (0, 2, _X), (0, 1, _X), (0, 1, _X), (0, 1, _X),
               (0, 0, _X), (0, 0, _X), (0, 0, _X), (0, 0, _X),
               (0, 0, _X), (0, _X, _X), (0, _X, _X), (0, 1, _X),
               (0, _X, _X)),
}
# attained pencil ranks, declared for part of the 2x4x4 catalog
_PHI_PROFILES: dict[int, frozenset[int]] = {
    0: frozenset({2, 4}), 1: frozenset({1, 3, 4}), 2: frozenset({2, 3, 4}),
    4: frozenset({2, 3}), 5: frozenset({2, 4}), 6: frozenset({3, 4}),
    7: frozenset({2, 3, 4}), 8: frozenset({1, 4}), 9: frozenset({2, 3, 4}),
    11: frozenset({3}), 13: frozenset({2, 4}), 14: frozenset({3, 4}),
    15: frozenset({3}),
}


def expected(cid: ClassId) -> ExpectedSignature:
    """Declared bracket of ``cid``; table rows carry none."""
    f = cid.family
    if f == "FourQubitPhi":
        return ExpectedSignature(_sig(2, _X, _X, _X, _X, 2))
    rows = _BRACKETS.get(f)
    if rows is None:
        raise ValueError(f"{cid} has no declared signature")
    profile = _PHI_PROFILES.get(cid.index) if f == "Phi" else None
    return ExpectedSignature(_sig(*rows[cid.index]), profile)
