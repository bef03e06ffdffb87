"""Exact ground-field scalars.

The default ground field is the rationals, represented by
``fractions.Fraction``.  Where square roots are unavoidable (norm-one lifts
of orthogonal torus elements) we work in a real quadratic extension
Q(sqrt(d)) with squarefree d > 1, represented by :class:`QuadExt`.

All scalars are immutable and hashable.  Mixed arithmetic between ints,
Fractions and QuadExt elements over one fixed d is supported; mixing two
different extensions raises.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Union

Rational = Fraction
Scalar = Union[Fraction, "QuadExt"]

ZERO = Fraction(0)
ONE = Fraction(1)


class FieldExtensionError(ValueError):
    """A value does not live in the requested ground field."""


def as_scalar(x) -> Scalar:
    """Coerce an int/Fraction/QuadExt into a Scalar."""
    if isinstance(x, QuadExt):
        return x
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def parse_rational(s: str) -> Fraction:
    """Parse "p/q" (q omitted when 1).  Whitespace tolerated."""
    return Fraction(s.strip())


def format_rational(r: Fraction) -> str:
    """Render as "p/q", omitting "/q" when the denominator is 1."""
    r = Fraction(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def format_scalar(x: Scalar) -> str:
    if isinstance(x, QuadExt):
        return str(x)
    return format_rational(x)


def rational_sqrt(r: Fraction) -> Fraction | None:
    """The nonnegative rational square root of r, or None if r is not a
    square in Q.  Negative input returns None."""
    r = Fraction(r)
    if r < 0:
        return None
    sn = isqrt(r.numerator)
    sd = isqrt(r.denominator)
    if sn * sn == r.numerator and sd * sd == r.denominator:
        return Fraction(sn, sd)
    return None


def squarefree_decomposition(m: int) -> tuple[int, int]:
    """Write m = s**2 * d with d squarefree (sign goes into d).

    Returns (s, d) with s > 0.
    """
    if m == 0:
        return 1, 0
    from sympy import factorint

    sign = -1 if m < 0 else 1
    s, d = 1, sign
    for p, e in factorint(abs(m)).items():
        s *= p ** (e // 2)
        if e % 2:
            d *= p
    return s, d


def sqrt_exact(r: Fraction) -> Scalar:
    """Exact square root of a positive rational, in Q when possible and in
    Q(sqrt(d)) otherwise.  Raises FieldExtensionError for r <= 0 (the
    extensions here are kept real)."""
    r = Fraction(r)
    if r <= 0:
        raise FieldExtensionError(f"no real square root of {format_rational(r)}")
    root = rational_sqrt(r)
    if root is not None:
        return root
    # sqrt(p/q) = sqrt(p*q)/q
    s, d = squarefree_decomposition(r.numerator * r.denominator)
    return quadext(d, 0, Fraction(s, r.denominator))


def quadext(d: int, a, b) -> Scalar:
    """Element a + b*sqrt(d) of Q(sqrt(d)); demotes to Fraction when b = 0."""
    a, b = Fraction(a), Fraction(b)
    if b == 0:
        return a
    return QuadExt(d, a, b)


class QuadExt:
    """a + b*sqrt(d) with a, b rational and d squarefree, d not a square.

    Instances always have b != 0; rational values are plain Fractions
    (see :func:`quadext`).
    """

    __slots__ = ("d", "a", "b")

    def __init__(self, d: int, a, b):
        if d in (0, 1) or rational_sqrt(Fraction(abs(d))) is not None and d > 0:
            raise ValueError(f"d={d} is a perfect square; not a proper extension")
        a, b = Fraction(a), Fraction(b)
        if b == 0:
            raise ValueError("rational value; use quadext() for demotion")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, *args):
        raise AttributeError("QuadExt is immutable")

    def _coerce(self, other) -> "QuadExt | None":
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise FieldExtensionError(
                    f"cannot mix Q(sqrt({self.d})) and Q(sqrt({other.d}))"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return None  # rational; handled componentwise
        return NotImplemented  # pragma: no cover

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return quadext(self.d, self.a + other, self.b)
        return quadext(self.d, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(self.d, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-other if isinstance(other, QuadExt) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return quadext(self.d, self.a * other, self.b * other)
        return quadext(
            self.d, self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.d, self.a, -self.b)

    def norm(self) -> Fraction:
        """Field norm a^2 - d*b^2 (product with the conjugate)."""
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero divisor in quadratic extension")
        return QuadExt(self.d, self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return quadext(self.d, self.a / other, self.b / other)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result: Scalar = ONE
        base: Scalar = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return False  # b != 0 by invariant
        return NotImplemented

    def __hash__(self):
        return hash((self.d, self.a, self.b))

    def __bool__(self):
        return True

    def __repr__(self):
        sgn = "+" if self.b >= 0 else "-"
        return (
            f"{format_rational(self.a)} {sgn} "
            f"{format_rational(abs(self.b))}*sqrt({self.d})"
        )

    def embeddings(self) -> tuple[float, float]:
        """The two real embeddings (requires d > 0)."""
        if self.d < 0:
            raise FieldExtensionError("imaginary quadratic field has no real embedding")
        root = self.d ** 0.5
        return (float(self.a) + float(self.b) * root, float(self.a) - float(self.b) * root)


def scalar_inv(x: Scalar) -> Scalar:
    if isinstance(x, QuadExt):
        return x.inverse()
    return ONE / x


def scalar_key(x: Scalar) -> tuple:
    """Deterministic total-order key; Fractions sort before extension elements."""
    if isinstance(x, QuadExt):
        return (1, x.d, x.a.numerator, x.a.denominator, x.b.numerator, x.b.denominator)
    x = Fraction(x)
    return (0, 0, x.numerator, x.denominator, 0, 1)


def abs_bound(x: Scalar) -> float:
    """An upper bound for |x| over every real embedding (used only by
    convergence guards, never by exact arithmetic)."""
    if isinstance(x, QuadExt):
        if x.d < 0:
            return (float(x.a) ** 2 + abs(x.d) * float(x.b) ** 2) ** 0.5
        return max(abs(e) for e in x.embeddings())
    return abs(float(x))
