"""Exact arithmetic over the Gaussian integers Z[i] and the field Q(i).

Vectors are plain 3-tuples of :class:`GaussianInt` (column vectors ``(n, p, q)``)
and matrices are 3-tuples of row 3-tuples.  Everything here is immutable.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

__all__ = [
    "GaussianInt",
    "GaussianRat",
    "UNITS",
    "I",
    "ONE",
    "ZERO",
    "GVec3",
    "GMat3",
    "gi",
    "vec",
    "mat",
    "identity3",
    "matvec",
    "matmul",
    "conj_transpose",
    "det3",
    "scale_vec",
    "J",
    "q_form",
    "norm_q",
    "is_isotropic",
    "gcd",
    "gcd_vec",
    "is_reduced",
    "unit_normalize",
    "span_dimension",
    "vec_to_json",
    "vec_from_json",
    "mat_to_json",
    "mat_from_json",
]


class GaussianInt:
    """An element ``re + im*i`` of Z[i] with arbitrary-precision parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: int = 0, im: int = 0):
        object.__setattr__(self, "re", int(re))
        object.__setattr__(self, "im", int(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianInt is immutable")

    @classmethod
    def coerce(cls, x) -> "GaussianInt":
        if isinstance(x, GaussianInt):
            return x
        if isinstance(x, bool):
            raise TypeError("refusing to coerce bool")
        if isinstance(x, int):
            return cls(x, 0)
        if isinstance(x, complex):
            if x.real != int(x.real) or x.imag != int(x.imag):
                raise ValueError(f"{x!r} is not a Gaussian integer")
            return cls(int(x.real), int(x.imag))
        if isinstance(x, (tuple, list)) and len(x) == 2:
            return cls(x[0], x[1])
        raise TypeError(f"cannot interpret {x!r} as a Gaussian integer")

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        try:
            o = GaussianInt.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianInt(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = GaussianInt.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianInt(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        try:
            o = GaussianInt.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        try:
            o = GaussianInt.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianInt(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianInt(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_unit():
                raise ValueError("negative power of a non-unit")
            return self.conj() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def is_unit(self) -> bool:
        return self.norm() == 1

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def divround(self, other) -> "GaussianInt":
        """Quotient of ``self / other`` rounded to the nearest Gaussian integer."""
        o = GaussianInt.coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Z[i]")
        num = self * o.conj()
        return GaussianInt((2 * num.re + n) // (2 * n), (2 * num.im + n) // (2 * n))

    def __divmod__(self, other):
        q = self.divround(other)
        return q, self - q * GaussianInt.coerce(other)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other) -> bool:
        o = GaussianInt.coerce(other)
        if self.is_zero():
            return o.is_zero()
        return (o % self).is_zero()

    def exact_div(self, other) -> "GaussianInt":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def __truediv__(self, other) -> "GaussianRat":
        return GaussianRat.coerce(self) / other

    # comparison / hashing -------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, GaussianInt):
            return self.re == other.re and self.im == other.im
        if isinstance(other, int) and not isinstance(other, bool):
            return self.im == 0 and self.re == other
        if isinstance(other, complex):
            return self.re == other.real and self.im == other.imag
        if isinstance(other, GaussianRat):
            return other == self
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im)) if self.im else hash(self.re)

    def __complex__(self):
        return complex(self.re, self.im)

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        if self.im == 0:
            return f"{self.re}"
        if self.re == 0:
            return f"{self.im}i" if self.im not in (1, -1) else ("i" if self.im == 1 else "-i")
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        return f"({self.re}{sign}{'' if mag == 1 else mag}i)"


class GaussianRat:
    """An element of Q(i); both parts are :class:`fractions.Fraction` in lowest terms."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRat is immutable")

    @classmethod
    def coerce(cls, x) -> "GaussianRat":
        if isinstance(x, GaussianRat):
            return x
        if isinstance(x, GaussianInt):
            return cls(x.re, x.im)
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return cls(x, 0)
        if isinstance(x, (tuple, list)) and len(x) == 2:
            return cls(x[0], x[1])
        raise TypeError(f"cannot interpret {x!r} as an element of Q(i)")

    def __add__(self, other):
        try:
            o = GaussianRat.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = GaussianRat.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussianRat.coerce(other) - self

    def __mul__(self, other):
        try:
            o = GaussianRat.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRat(-self.re, -self.im)

    def conj(self) -> "GaussianRat":
        return GaussianRat(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRat":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRat(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussianRat.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRat.coerce(other) * self.inverse()

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_integral(self) -> bool:
        return self.re.denominator == 1 and self.im.denominator == 1

    def to_int(self) -> GaussianInt:
        if not self.is_integral():
            raise ArithmeticError(f"{self} is not a Gaussian integer")
        return GaussianInt(self.re.numerator, self.im.numerator)

    def __eq__(self, other):
        try:
            o = GaussianRat.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.is_integral():
            return hash(self.to_int())
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRat({self.re}, {self.im})"


ZERO = GaussianInt(0, 0)
ONE = GaussianInt(1, 0)
I = GaussianInt(0, 1)
UNITS: Tuple[GaussianInt, ...] = (ONE, I, -ONE, -I)

GVec3 = Tuple[GaussianInt, GaussianInt, GaussianInt]
GMat3 = Tuple[GVec3, GVec3, GVec3]
_Scalar = Union[int, complex, GaussianInt, Tuple[int, int]]


def gi(x: _Scalar) -> GaussianInt:
    return GaussianInt.coerce(x)


def vec(*entries: _Scalar) -> GVec3:
    """``vec(1, 0, 1j)`` -> the column vector (1, 0, i)."""
    if len(entries) == 1 and isinstance(entries[0], (tuple, list)) and len(entries[0]) == 3:
        entries = tuple(entries[0])
    if len(entries) != 3:
        raise ValueError("a GVec3 has exactly three entries")
    return tuple(gi(x) for x in entries)  # type: ignore[return-value]


def mat(rows: Sequence[Sequence[_Scalar]]) -> GMat3:
    if len(rows) != 3 or any(len(r) != 3 for r in rows):
        raise ValueError("a GMat3 is 3x3")
    return tuple(tuple(gi(x) for x in r) for r in rows)  # type: ignore[return-value]


def identity3() -> GMat3:
    return mat([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def matvec(m: GMat3, v: Sequence[GaussianInt]) -> GVec3:
    return tuple(m[r][0] * v[0] + m[r][1] * v[1] + m[r][2] * v[2] for r in range(3))  # type: ignore


def matmul(a: GMat3, b: GMat3) -> GMat3:
    return tuple(
        tuple(a[r][0] * b[0][c] + a[r][1] * b[1][c] + a[r][2] * b[2][c] for c in range(3))
        for r in range(3)
    )  # type: ignore[return-value]


def conj_transpose(m: GMat3) -> GMat3:
    return tuple(tuple(m[c][r].conj() for c in range(3)) for r in range(3))  # type: ignore


def det3(m) -> GaussianInt:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def scale_vec(u: _Scalar, v: Sequence[GaussianInt]) -> GVec3:
    s = gi(u)
    return tuple(s * x for x in v)  # type: ignore[return-value]


# the (2,1) Hermitian form --------------------------------------------------
J: GMat3 = mat([[0, 0, 1j], [0, -1, 0], [-1j, 0, 0]])


def q_form(u: Sequence[GaussianInt], v: Sequence[GaussianInt]) -> GaussianInt:
    """Q(u, v) = u^* J v, conjugate-linear in ``u``."""
    return u[0].conj() * I * v[2] - u[1].conj() * v[1] - u[2].conj() * I * v[0]


def norm_q(u, v) -> int:
    """|Q(u, v)|^2 as an exact integer."""
    return q_form(u, v).norm()


def is_isotropic(v: Sequence[GaussianInt]) -> bool:
    return q_form(v, v).is_zero()


def gcd(a: GaussianInt, b: GaussianInt) -> GaussianInt:
    """Euclidean gcd in Z[i]; defined up to a unit."""
    a, b = gi(a), gi(b)
    while not b.is_zero():
        a, b = b, a % b
    return a


def gcd_vec(v: Iterable[GaussianInt]) -> GaussianInt:
    g = ZERO
    for x in v:
        g = gcd(g, x)
    return g


def _require_nonzero(v):
    if all(x.is_zero() for x in v):
        raise ValueError("zero vector is not allowed here")


def is_reduced(v: Sequence[GaussianInt]) -> bool:
    """True iff the entries of ``v`` generate Z[i] as an ideal."""
    _require_nonzero(v)
    return gcd_vec(v).is_unit()


def _first_nonzero(v):
    for x in v:
        if not x.is_zero():
            return x
    raise ValueError("zero vector is not allowed here")


def unit_normalize(v: Sequence[GaussianInt]) -> GVec3:
    """The unit multiple of ``v`` whose first nonzero entry has re > 0 and im >= 0."""
    lead = _first_nonzero(v)
    for u in UNITS:
        x = u * lead
        if x.re > 0 and x.im >= 0:
            return tuple(u * e for e in v)  # type: ignore[return-value]
    raise AssertionError("unreachable: some rotation lands in the first quadrant")


def span_dimension(vectors: Sequence[Sequence[GaussianInt]]) -> int:
    """Dimension over Q(i) of the span of the given 3-vectors."""
    rows = [[GaussianRat.coerce(x) for x in v] for v in vectors]
    rank = 0
    ncols = 3
    for c in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if not rows[r][c].is_zero()), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][c].inverse()
        for r in range(len(rows)):
            if r != rank and not rows[r][c].is_zero():
                f = rows[r][c] * inv
                rows[r] = [rows[r][k] - f * rows[rank][k] for k in range(ncols)]
        rank += 1
    return rank


# JSON helpers: Gaussian integers travel as [re, im] pairs ------------------
def vec_to_json(v: Sequence[GaussianInt]) -> list:
    return [[x.re, x.im] for x in v]


def vec_from_json(data) -> GVec3:
    if not isinstance(data, list) or len(data) != 3:
        raise ValueError(f"expected a list of three [re, im] pairs, got {data!r}")
    out = []
    for x in data:
        if not (isinstance(x, list) and len(x) == 2 and all(isinstance(t, int) for t in x)):
            raise ValueError(f"bad Gaussian integer {x!r}")
        out.append(GaussianInt(x[0], x[1]))
    return tuple(out)  # type: ignore[return-value]


def mat_to_json(m) -> list:
    return [vec_to_json(r) for r in m]


def mat_from_json(data) -> GMat3:
    if not isinstance(data, list) or len(data) != 3:
        raise ValueError("expected three rows")
    return tuple(vec_from_json(r) for r in data)  # type: ignore[return-value]
