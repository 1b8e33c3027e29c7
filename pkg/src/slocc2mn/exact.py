"""Exact arithmetic: Gaussian rationals, univariate polynomials, binary forms.

Everything downstream (pencil reductions, invariant extraction, catalog
construction) runs on these types.  No floating point enters any decision:
floats exist only in the cross-check oracle module.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

try:  # gmpy2's mpq is a drop-in rational, roughly an order of magnitude faster
    from gmpy2 import mpq as _rat
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _rat = Fraction

_RAT_TYPES = (int, Fraction, type(_rat(1)))

RatLike = Union[int, Fraction]
ScalarLike = Union["Scalar", int, Fraction]


class Scalar:
    """Immutable Gaussian rational a + b*i with exact rational parts.

    Parts are gmpy2 ``mpq`` values when gmpy2 is importable, ``Fraction``
    otherwise; both expose numerator/denominator and hash identically.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: RatLike = 0, im: RatLike = 0) -> None:
        object.__setattr__(self, "re", _rat(re))
        object.__setattr__(self, "im", _rat(im))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Scalar is immutable")

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_one(self) -> bool:
        return self.re == 1 and not self.im

    def is_real(self) -> bool:
        return not self.im

    # -- arithmetic ------------------------------------------------------

    @staticmethod
    def _coerce(value: ScalarLike) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, _RAT_TYPES):
            return Scalar(value)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: ScalarLike) -> "Scalar":
        o = Scalar._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: ScalarLike) -> "Scalar":
        o = Scalar._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: ScalarLike) -> "Scalar":
        o = Scalar._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(o.re - self.re, o.im - self.im)

    def __mul__(self, other: ScalarLike) -> "Scalar":
        o = Scalar._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.re * o.re - self.im * o.im,
                      self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other: ScalarLike) -> "Scalar":
        o = Scalar._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if not n:
            raise ZeroDivisionError("division by zero Scalar")
        return Scalar((self.re * o.re + self.im * o.im) / n,
                      (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other: ScalarLike) -> "Scalar":
        o = Scalar._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __neg__(self) -> "Scalar":
        return Scalar(-self.re, -self.im)

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def inverse(self) -> "Scalar":
        return ONE / self

    # -- identity --------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, _RAT_TYPES):
            return self.re == other and not self.im
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def sort_key(self):
        """Arbitrary but fixed total order, used only for canonical output."""
        return (self.re, self.im)

    # -- text ------------------------------------------------------------

    def __repr__(self) -> str:
        return f"Scalar({self.emit()!r})"

    def __str__(self) -> str:
        return self.emit()

    def emit(self) -> str:
        """Canonical whitespace-free literal, e.g. ``2/3+1/2i``."""
        if not self.im:
            return str(self.re)
        imag = _imag_literal(self.im)
        if not self.re:
            return imag
        sep = "" if imag.startswith("-") else "+"
        return f"{self.re}{sep}{imag}"


def _imag_literal(im) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return f"{im}i"


# Whitespace is tolerated at token boundaries, never inside a numeral.
_MAG = r"\d+(?:\s*/\s*\d+)?"
_RAT = rf"[+-]?\s*{_MAG}"
_REAL_RE = _re.compile(rf"({_RAT})\Z")
_IMAG_RE = _re.compile(rf"(?:([+-])\s*)?({_MAG})?\s*i\Z")
_BOTH_RE = _re.compile(rf"({_RAT})\s*([+-])\s*({_MAG})?\s*i\Z")


def _frac(text: str) -> Fraction:
    compact = "".join(text.split())
    try:
        return Fraction(compact)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in scalar literal: {text!r}") from None


def parse_scalar(text: str) -> Scalar:
    """Parse a scalar literal.

    Accepts the canonical grammar plus boundary whitespace: ``0``, ``-3``,
    ``2/3``, ``i``, ``-i``, ``5i``, ``1/2i``, ``2/3+1/2i``, ``1-i``.
    """
    body = text.strip()
    if not body:
        raise ValueError(f"empty scalar literal: {text!r}")
    m = _REAL_RE.fullmatch(body)
    if m:
        return Scalar(_frac(m.group(1)))
    m = _IMAG_RE.fullmatch(body)
    if m:
        sign = -1 if m.group(1) == "-" else 1
        mag = Fraction(1) if m.group(2) is None else _frac(m.group(2))
        return Scalar(0, sign * mag)
    m = _BOTH_RE.fullmatch(body)
    if m:
        sign = -1 if m.group(2) == "-" else 1
        mag = Fraction(1) if m.group(3) is None else _frac(m.group(3))
        return Scalar(_frac(m.group(1)), sign * mag)
    raise ValueError(f"invalid scalar literal: {text!r}")


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


def _as_scalar(value: ScalarLike) -> Scalar:
    if isinstance(value, Scalar):
        return value
    return Scalar(value)


class UniPoly:
    """Univariate polynomial over Scalar, coefficients lowest degree first.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    coeffs: tuple[Scalar, ...]

    def __init__(self, coeffs: Iterable[ScalarLike] = ()) -> None:
        cs = [_as_scalar(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("UniPoly is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self) -> Scalar:
        if not self.coeffs:
            return ZERO
        return self.coeffs[-1]

    def coeff(self, k: int) -> Scalar:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return ZERO

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return UniPoly(out)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if not self.coeffs or not other.coeffs:
            return ZERO_POLY
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for j, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for k, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[j + k] = out[j + k] + a * b
        return UniPoly(out)

    def scale(self, s: ScalarLike) -> "UniPoly":
        sc = _as_scalar(s)
        if sc.is_zero():
            return ZERO_POLY
        return UniPoly(tuple(c * sc for c in self.coeffs))

    def shift(self, k: int) -> "UniPoly":
        """Multiply by x**k."""
        if not self.coeffs:
            return ZERO_POLY
        return UniPoly((ZERO,) * k + self.coeffs)

    def __divmod__(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.degree < other.degree:
            return ZERO_POLY, self
        rem = list(self.coeffs)
        dlead = other.leading()
        dd = other.degree
        q = [ZERO] * (len(rem) - dd)
        for top in range(len(rem) - 1, dd - 1, -1):
            c = rem[top]
            if c.is_zero():
                continue
            f = c / dlead
            q[top - dd] = f
            rem[top] = ZERO
            for k in range(dd):
                rem[top - dd + k] = rem[top - dd + k] - f * other.coeffs[k]
        return UniPoly(q), UniPoly(rem)

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("polynomial division is not exact")
        return q

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        lead = self.leading()
        if lead.is_one():
            return self
        return self.scale(lead.inverse())

    def derivative(self) -> "UniPoly":
        return UniPoly(tuple(c * k for k, c in enumerate(self.coeffs) if k))

    def __call__(self, point: ScalarLike) -> Scalar:
        p = _as_scalar(point)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * p + c
        return acc

    # -- identity --------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if self.is_zero():
            return "UniPoly(0)"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if k == 0:
                parts.append(f"({c})")
            elif k == 1:
                parts.append(f"({c})*x")
            else:
                parts.append(f"({c})*x^{k}")
        return "UniPoly(" + " + ".join(parts) + ")"


ZERO_POLY = UniPoly()
ONE_POLY = UniPoly((1,))
X_POLY = UniPoly((0, 1))


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd; poly_gcd(0, 0) is the zero polynomial."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    # Monic reduction each round keeps coefficient growth in check.
    a = a.monic()
    b = b.monic()
    while not b.is_zero():
        a, b = b, (a % b)
        if not b.is_zero():
            b = b.monic()
    return a.monic()


def squarefree_part(p: UniPoly) -> UniPoly:
    """Monic product of the distinct irreducible factors of ``p``."""
    if p.is_zero():
        raise ValueError("zero polynomial has no squarefree part")
    if p.is_constant():
        return ONE_POLY
    g = poly_gcd(p, p.derivative())
    return p.exact_div(g).monic()


class BinaryForm:
    """Homogeneous binary form in (alpha, beta).

    ``coeffs[k]`` is the coefficient of alpha^k * beta^(degree-k), so the
    coefficient tuple doubles as the lowest-first coefficient list of the
    dehomogenization f(x, 1).  Vanishing top coefficients encode a root at
    the point at infinity (1 : 0).
    """

    __slots__ = ("degree", "coeffs")

    degree: int
    coeffs: tuple[Scalar, ...]

    def __init__(self, degree: int, coeffs: Iterable[ScalarLike]) -> None:
        cs = tuple(_as_scalar(c) for c in coeffs)
        if degree < 0 or len(cs) != degree + 1:
            raise ValueError("coefficient count must equal degree + 1")
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("BinaryForm is immutable")

    @staticmethod
    def from_poly(p: UniPoly, degree: int) -> "BinaryForm":
        """Homogenize ``p`` to the given total degree (beta picks up the slack)."""
        if p.degree > degree:
            raise ValueError("degree too small to homogenize polynomial")
        coeffs = list(p.coeffs) + [ZERO] * (degree + 1 - len(p.coeffs))
        return BinaryForm(degree, coeffs)

    @staticmethod
    def constant_one() -> "BinaryForm":
        return BinaryForm(0, (ONE,))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def is_constant(self) -> bool:
        return self.degree == 0

    def dehom(self) -> UniPoly:
        """f(x, 1) as a univariate polynomial."""
        return UniPoly(self.coeffs)

    @property
    def inf_mult(self) -> int:
        """Multiplicity of the root at (1 : 0); degree + 1 for the zero form."""
        p = self.dehom()
        return self.degree - p.degree

    # -- arithmetic ------------------------------------------------------

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        prod = self.dehom() * other.dehom()
        deg = self.degree + other.degree
        if self.is_zero() or other.is_zero():
            return BinaryForm(deg, (ZERO,) * (deg + 1))
        return BinaryForm.from_poly(prod, deg)

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degree")
        return BinaryForm(self.degree,
                          tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, s: ScalarLike) -> "BinaryForm":
        sc = _as_scalar(s)
        return BinaryForm(self.degree, tuple(c * sc for c in self.coeffs))

    def monic(self) -> "BinaryForm":
        """Scale so the lowest projective factor ordering is canonical.

        Convention: leading coefficient of the dehomogenization becomes 1;
        a pure power of beta is left with coefficient 1 as well.
        """
        if self.is_zero():
            return self
        lead = self.dehom().leading()
        if lead.is_one():
            return self
        return self.scale(lead.inverse())

    def exact_div(self, other: "BinaryForm") -> "BinaryForm":
        if other.is_zero():
            raise ZeroDivisionError("form division by zero form")
        if self.is_zero():
            deg = self.degree - other.degree
            if deg < 0:
                raise ValueError("form division is not exact")
            return BinaryForm(deg, (ZERO,) * (deg + 1))
        m_self, m_other = self.inf_mult, other.inf_mult
        if m_other > m_self:
            raise ValueError("form division is not exact")
        q = self.dehom().exact_div(other.dehom())
        return BinaryForm.from_poly(q, self.degree - other.degree)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.degree, self.coeffs))

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            terms.append(f"({c})*a^{k}b^{self.degree - k}")
        body = " + ".join(terms) if terms else "0"
        return f"BinaryForm(deg={self.degree}: {body})"

    def substitute(self, a: ScalarLike, b: ScalarLike,
                   c: ScalarLike, d: ScalarLike) -> "BinaryForm":
        """f(a*alpha + b*beta, c*alpha + d*beta), same degree."""
        a, b, c, d = (_as_scalar(v) for v in (a, b, c, d))
        first = UniPoly((b, a))   # dehom of a*alpha + b*beta at beta=1
        second = UniPoly((d, c))
        deg = self.degree
        acc = UniPoly(())
        for k, coef in enumerate(self.coeffs):
            if coef.is_zero():
                continue
            term = ONE_POLY
            for _ in range(k):
                term = term * first
            for _ in range(deg - k):
                term = term * second
            acc = acc + term.scale(coef)
        if acc.degree > deg:
            raise AssertionError("substitution raised the degree")
        return BinaryForm.from_poly(acc, deg)


def form_gcd(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Monic gcd of two binary forms, beta factors included."""
    if f.is_zero() and g.is_zero():
        return BinaryForm(0, (ZERO,))
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    beta_mult = min(f.inf_mult, g.inf_mult)
    core = poly_gcd(f.dehom(), g.dehom())
    return BinaryForm.from_poly(core, core.degree + beta_mult)


def form_squarefree(f: BinaryForm) -> BinaryForm:
    """Monic radical of a nonzero form: each projective root once."""
    if f.is_zero():
        raise ValueError("zero polynomial has no squarefree part")
    core = squarefree_part(f.dehom()) if not f.dehom().is_zero() else ONE_POLY
    beta = 1 if f.inf_mult >= 1 else 0
    return BinaryForm.from_poly(core, core.degree + beta)


def distinct_projective_roots(f: BinaryForm) -> int:
    """Number of distinct roots of ``f`` on the projective line.

    Counts over the algebraic closure; the point at infinity contributes
    one root whenever the top coefficient vanishes.
    """
    if f.is_zero():
        raise ValueError("form vanishes identically")
    if f.degree == 0:
        return 0
    return form_squarefree(f).degree


def form_divides(f: BinaryForm, g: BinaryForm) -> bool:
    """True when ``f`` divides ``g`` as forms; the zero form divides only zero."""
    if f.is_zero():
        return g.is_zero()
    if g.is_zero():
        return True
    if f.inf_mult > g.inf_mult:
        return False
    return (g.dehom() % f.dehom()).is_zero()
