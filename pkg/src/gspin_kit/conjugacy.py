"""Semisimple conjugacy classes of the general spin group via the torus
chart (c; a_1, ..., a_n).

Closed forms (validated against the Clifford oracle):

* spin eigenvalues   { c * prod_{i in S} a_i^(-1) : S subset of {1..n} }
* std eigenvalues    { a_1, ..., a_n, 1, a_1^(-1), ..., a_n^(-1) }
* spinor norm        c^2 / (a_1 ... a_n)

Conjugacy of two chart points is Weyl-orbit membership; the
characteristic-polynomial criteria (spin + norm, std + similitude) are the
finite-data analogues of conjugacy tests for the associated
representations.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import clifford, rootdata
from .algebra_core import UniPoly, charpoly_to_power_sums, newton_to_charpoly, poly_from_roots
from .scalars import (
    ONE,
    Scalar,
    ZERO,
    as_scalar,
    format_scalar,
    parse_rational,
    scalar_inv,
    scalar_key,
    sqrt_exact,
)


class SemisimplicityError(ValueError):
    """Conjugacy criteria are only defined for semisimple elements."""


@dataclass(frozen=True)
class GSpinTorusPoint:
    """Chart (c; a_1, ..., a_n) of a semisimple class in GSpin_{2n+1}."""

    n: int
    c: Scalar
    a: tuple

    def __post_init__(self):
        object.__setattr__(self, "c", as_scalar(self.c))
        object.__setattr__(self, "a", tuple(as_scalar(x) for x in self.a))
        if self.n < 1 or len(self.a) != self.n:
            raise ValueError(f"need {self.n} torus coordinates")
        if self.c == 0 or any(x == 0 for x in self.a):
            raise ValueError("all chart coordinates must be nonzero")

    def as_pair(self) -> tuple:
        return (self.c, self.a)

    def serialize(self) -> dict:
        return {
            "n": self.n,
            "c": format_scalar(self.c),
            "a": [format_scalar(x) for x in self.a],
        }

    @classmethod
    def deserialize(cls, data) -> "GSpinTorusPoint":
        return cls(
            int(data["n"]),
            parse_rational(str(data["c"])),
            tuple(parse_rational(str(x)) for x in data["a"]),
        )


def spin_eigenvalues(t: GSpinTorusPoint) -> list:
    """Multiset of 2^n spin eigenvalues, sorted by the scalar order."""
    inv = [scalar_inv(x) for x in t.a]
    out = []
    for mask in range(1 << t.n):
        v = t.c
        for i in range(t.n):
            if mask >> i & 1:
                v = v * inv[i]
        out.append(v)
    out.sort(key=scalar_key)
    return out


def std_eigenvalues(t: GSpinTorusPoint) -> list:
    """Multiset {a_i, 1, a_i^(-1)}, sorted; closed under inversion."""
    out = list(t.a) + [ONE] + [scalar_inv(x) for x in t.a]
    out.sort(key=scalar_key)
    return out


def spinor_norm_chart(t: GSpinTorusPoint) -> Scalar:
    """c^2 / (a_1 ... a_n); Weyl-invariant, matches the Clifford spinor norm."""
    norm = t.c * t.c
    for x in t.a:
        norm = norm * scalar_inv(x)
    return norm


def spin_charpoly(t: GSpinTorusPoint) -> UniPoly:
    return poly_from_roots(spin_eigenvalues(t))


def std_charpoly(t: GSpinTorusPoint) -> UniPoly:
    return poly_from_roots(std_eigenvalues(t))


def to_multivector(t: GSpinTorusPoint) -> clifford.Multivector:
    """The Clifford-algebra torus element realizing this chart point."""
    return clifford.torus_element(clifford.get_context(t.n), t.c, t.a)


def go_chart(t: GSpinTorusPoint) -> tuple[Scalar, tuple]:
    """Chart-change helper: the general orthogonal image of the point in
    the chart (c_GO; b_1, ..., b_n) -> diag(b, c_GO, c_GO^2 / b).

    Conjugation v -> x v x* by the torus element scales e_i by N a_i^(-1)
    and the middle vector by N, so c_GO is the spinor norm and
    b_i = N / a_i.
    """
    norm = spinor_norm_chart(t)
    return norm, tuple(norm * scalar_inv(x) for x in t.a)


# ---------------------------------------------------------------------------
# Weyl orbits and conjugacy criteria


def weyl_orbit(t: GSpinTorusPoint) -> set[GSpinTorusPoint]:
    pts = rootdata.weyl_orbit(t.as_pair())
    return {GSpinTorusPoint(t.n, c, a) for c, a in pts}


def weyl_translate(w: rootdata.WeylElement, t: GSpinTorusPoint) -> GSpinTorusPoint:
    c, a = rootdata.weyl_act(w, t.as_pair())
    return GSpinTorusPoint(t.n, c, a)


def canonicalize(t: GSpinTorusPoint) -> GSpinTorusPoint:
    """Lexicographically minimal orbit representative under the fixed total
    order on field elements; deterministic class representative."""
    best = min(
        rootdata.weyl_orbit(t.as_pair()),
        key=lambda pt: (scalar_key(pt[0]), tuple(scalar_key(x) for x in pt[1])),
    )
    return GSpinTorusPoint(t.n, best[0], best[1])


def gspin_conjugate(t1: GSpinTorusPoint, t2: GSpinTorusPoint) -> bool:
    """Conjugacy in the general spin group: same Weyl orbit."""
    if t1.n != t2.n:
        raise ValueError("rank mismatch")
    return canonicalize(t1) == canonicalize(t2)


def steinberg_conjugate(t1: GSpinTorusPoint, t2: GSpinTorusPoint) -> bool:
    """Spin characteristic polynomials equal and spinor norms equal.

    Conjugate classes always satisfy this.  The converse holds at rank 2
    but can fail at rank 3 and above for classes with repeated spin
    eigenvalues: the standard images may still differ, e.g.
    (-1; 2, -1, 1) vs (1; -1, -1, -2).
    """
    if t1.n != t2.n:
        raise ValueError("rank mismatch")
    return (
        spinor_norm_chart(t1) == spinor_norm_chart(t2)
        and spin_charpoly(t1) == spin_charpoly(t2)
    )


def std_conjugate(t1: GSpinTorusPoint, t2: GSpinTorusPoint) -> bool:
    """Standard characteristic polynomials equal and similitude characters
    (spinor norms) equal: conjugacy of the orthogonal images together with
    the similitude datum.  Coarser than gspin_conjugate: it cannot separate
    the quadratic twist (c; a) vs (-c; a)."""
    if t1.n != t2.n:
        raise ValueError("rank mismatch")
    return (
        spinor_norm_chart(t1) == spinor_norm_chart(t2)
        and std_charpoly(t1) == std_charpoly(t2)
    )


def in_bad_position(t: GSpinTorusPoint) -> bool:
    """True iff the standard image has eigenvalue -1."""
    minus_one = -ONE
    return any(v == minus_one for v in std_eigenvalues(t))


def sign_twist_conjugate(t: GSpinTorusPoint) -> bool:
    """True iff (-c; a) lies in the Weyl orbit of (c; a); equivalent to
    in_bad_position."""
    return gspin_conjugate(t, GSpinTorusPoint(t.n, -t.c, t.a))


def norm_one_lift(n: int, a: Sequence) -> tuple[GSpinTorusPoint, int | None]:
    """Spinor-norm-one chart point above the special orthogonal class with
    eigenvalues {a_i, 1, a_i^(-1)}: c = sqrt(a_1 ... a_n), extending the
    ground field by sqrt(d) when the product is not a square.

    Returns the point and the extension discriminant (None when the lift
    is rational).
    """
    avals = [as_scalar(x) for x in a]
    prod: Scalar = ONE
    for x in avals:
        prod = prod * x
    if not isinstance(prod, Fraction):
        # already in an extension: c^2 = prod must be solved there; only the
        # square case is supported
        raise NotImplementedError("norm-one lifts over an extension field")
    c = sqrt_exact(prod)
    disc = c.d if not isinstance(c, Fraction) else None
    return GSpinTorusPoint(n, c, tuple(avals)), disc


# ---------------------------------------------------------------------------
# general (non-torus) semisimple inputs


def _charpoly_of_matrix(m: tuple) -> UniPoly:
    """Characteristic polynomial from trace power sums."""
    dim = len(m)
    powers = []
    cur = m
    traces = []

    def matmul(x, y):
        return tuple(
            tuple(sum((x[i][k] * y[k][j] for k in range(dim)), ZERO) for j in range(dim))
            for i in range(dim)
        )

    for _ in range(dim):
        traces.append(sum((cur[i][i] for i in range(dim)), ZERO))
        cur = matmul(cur, m)
    return newton_to_charpoly(traces, dim)


def _rational_roots(p: UniPoly) -> list[tuple[Fraction, int]]:
    """Rational roots with multiplicities, via the rational root theorem."""
    if any(not isinstance(c, Fraction) for c in p.coeffs):
        raise SemisimplicityError("rational-root search needs rational coefficients")
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    cands = set()
    stripped = list(ints)
    while stripped and stripped[0] == 0:
        cands.add(Fraction(0))
        stripped = stripped[1:]
    if stripped:
        lead, const = stripped[-1], stripped[0]
        for pp in _divisors(abs(const)):
            for qq in _divisors(abs(lead)):
                cands.add(Fraction(pp, qq))
                cands.add(Fraction(-pp, qq))
    out = []
    for r in sorted(cands):
        mult = 0
        q = p
        while not q.is_zero() and q(r) == 0:
            q = _deflate(q, r)
            mult += 1
        if mult:
            out.append((r, mult))
    return out


def _deflate(p: UniPoly, r: Fraction) -> UniPoly:
    """p / (X - r) for a known root r (synthetic division)."""
    out = []
    acc = ZERO
    for c in reversed(p.coeffs):
        acc = c + acc * r
        out.append(acc)
    out.reverse()
    return UniPoly(out[1:])


def _divisors(m: int) -> list[int]:
    if m == 0:
        return [1]
    out = []
    i = 1
    while i * i <= m:
        if m % i == 0:
            out.append(i)
            out.append(m // i)
        i += 1
    return sorted(set(out))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a if a > 0 else -a


def multivector_semisimple(x: clifford.Multivector) -> bool:
    """The spin matrix is diagonalizable over the rational field: the
    characteristic polynomial splits into rational roots and the product
    of (M - r) over distinct roots vanishes."""
    m = clifford.spin_matrix(x)
    dim = len(m)
    p = _charpoly_of_matrix(m)
    roots = _rational_roots(p)
    if sum(mult for _, mult in roots) != dim:
        return False
    prod = tuple(tuple(ONE if i == j else ZERO for j in range(dim)) for i in range(dim))

    def matmul(xm, ym):
        return tuple(
            tuple(sum((xm[i][k] * ym[k][j] for k in range(dim)), ZERO) for j in range(dim))
            for i in range(dim)
        )

    for r, _ in roots:
        shifted = tuple(
            tuple(m[i][j] - (r if i == j else 0) for j in range(dim)) for i in range(dim)
        )
        prod = matmul(prod, shifted)
    return all(c == 0 for row in prod for c in row)


def steinberg_conjugate_multivectors(
    x1: clifford.Multivector, x2: clifford.Multivector
) -> bool:
    """Conjugacy test for general semisimple GSpin elements: spin
    characteristic polynomials and spinor norms.  Non-semisimple inputs are
    rejected rather than Jordan-decomposed."""
    for x in (x1, x2):
        if not clifford.is_gspin(x):
            raise clifford.NotInGSpinError("input is not in the general spin group")
        if not multivector_semisimple(x):
            raise SemisimplicityError("input is not semisimple over the ground field")
    p1 = _charpoly_of_matrix(clifford.spin_matrix(x1))
    p2 = _charpoly_of_matrix(clifford.spin_matrix(x2))
    return p1 == p2 and clifford.spinor_norm(x1) == clifford.spinor_norm(x2)
