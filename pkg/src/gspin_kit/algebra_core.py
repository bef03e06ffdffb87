"""Exact scalar and polynomial arithmetic underlying every other module.

Univariate polynomials are dense, lowest degree first (Euler factors are
low-degree dense); Laurent polynomials are sparse maps from integer exponent
vectors to coefficients (torus characters have 2^n monomials in n+1
variables).  Everything is immutable and exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Mapping, Sequence

from .scalars import (
    Fraction as Rational,
    ONE,
    Scalar,
    ZERO,
    as_scalar,
    format_scalar,
    scalar_inv,
)


class TwistNotRepresentable(ValueError):
    """The two polynomials are related by a root scaling, but the scaling
    factor does not lie in the ground field."""


# ---------------------------------------------------------------------------
# univariate polynomials


@dataclass(frozen=True)
class UniPoly:
    """Dense univariate polynomial; coeffs[i] is the X^i coefficient.

    The zero polynomial has an empty coefficient tuple; otherwise the
    leading coefficient is nonzero.
    """

    coeffs: tuple

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_scalar(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __getitem__(self, i: int) -> Scalar:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else ZERO

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[i] + other[i] for i in range(n)])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[i] - other[i] for i in range(n)])

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def scale(self, s) -> "UniPoly":
        s = as_scalar(s)
        return UniPoly([c * s for c in self.coeffs])

    def __call__(self, x):
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def reversed(self) -> "UniPoly":
        """X^deg * p(1/X): swaps root multiset for its inverse, up to scale."""
        return UniPoly(tuple(reversed(self.coeffs)))

    def serialize(self) -> list[str]:
        return [format_scalar(c) for c in self.coeffs]

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            cs = format_scalar(c)
            if i == 0:
                parts.append(cs)
            else:
                xs = "X" if i == 1 else f"X^{i}"
                parts.append(xs if cs == "1" else f"-{xs}" if cs == "-1" else f"{cs}*{xs}")
        return " + ".join(parts).replace("+ -", "- ")


def poly_one() -> UniPoly:
    return UniPoly((ONE,))


def poly_x() -> UniPoly:
    return UniPoly((ZERO, ONE))


def poly_mul(p: UniPoly, q: UniPoly) -> UniPoly:
    if p.is_zero() or q.is_zero():
        return UniPoly()
    out = [ZERO] * (p.degree + q.degree + 1)
    for i, a in enumerate(p.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(q.coeffs):
            out[i + j] = out[i + j] + a * b
    return UniPoly(out)


def poly_from_roots(roots: Sequence) -> UniPoly:
    """Monic polynomial with the given root multiset: prod (X - r)."""
    p = poly_one()
    for r in roots:
        p = poly_mul(p, UniPoly((-as_scalar(r), ONE)))
    return p


def poly_from_inverse_roots(roots: Sequence) -> UniPoly:
    """prod (1 - r*T): constant term 1, degree = number of roots."""
    p = poly_one()
    for r in roots:
        p = poly_mul(p, UniPoly((ONE, -as_scalar(r))))
    return p


# ---------------------------------------------------------------------------
# Newton identities and companion matrices


def newton_to_charpoly(power_sums: Sequence, m: int) -> UniPoly:
    """Monic degree-m polynomial whose root multiset has the given first m
    power sums.

    Newton's identities: k*e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i.
    """
    if m < 0:
        raise ValueError("degree must be nonnegative")
    if len(power_sums) < m:
        raise ValueError(f"need at least {m} power sums, got {len(power_sums)}")
    ps = [as_scalar(p) for p in power_sums]
    e = [ONE] + [ZERO] * m
    for k in range(1, m + 1):
        acc = ZERO
        for i in range(1, k + 1):
            term = e[k - i] * ps[i - 1]
            acc = acc + (term if i % 2 == 1 else -term)
        e[k] = acc / k
    # charpoly = sum (-1)^k e_k X^(m-k)
    coeffs = [ZERO] * (m + 1)
    for k in range(m + 1):
        coeffs[m - k] = e[k] if k % 2 == 0 else -e[k]
    return UniPoly(coeffs)


def charpoly_to_power_sums(p: UniPoly, k: int) -> list:
    """First k power sums of the root multiset of a monic polynomial.

    Inverse of newton_to_charpoly: p_k = e_1 p_{k-1} - e_2 p_{k-2} + ...
    + (-1)^k k e_k, with e_i = 0 for i > deg p.
    """
    if not p.is_monic():
        raise ValueError("polynomial must be monic")
    m = p.degree
    e = [ZERO] * (k + 1)
    for i in range(1, min(k, m) + 1):
        c = p[m - i]
        e[i] = c if i % 2 == 0 else -c
    sums = []
    prev: list[Scalar] = []
    for j in range(1, k + 1):
        acc = ZERO
        for i in range(1, j):
            term = e[i] * prev[j - i - 1]
            acc = acc + (term if i % 2 == 1 else -term)
        ej = e[j] if j <= k else ZERO
        tail = ej * j
        acc = acc + (tail if j % 2 == 1 else -tail)
        prev.append(acc)
        sums.append(acc)
    return sums


def companion_matrix(p: UniPoly) -> tuple[tuple, ...]:
    """Companion matrix of a monic polynomial: subdiagonal ones, last
    column -s_i where p = X^m + s_{m-1} X^{m-1} + ... + s_0."""
    if not p.is_monic():
        raise ValueError("polynomial must be monic")
    m = p.degree
    if m < 1:
        raise ValueError("degree must be at least 1")
    rows = []
    for i in range(m):
        row = [ONE if j == i - 1 else ZERO for j in range(m - 1)]
        row.append(-p[i])
        rows.append(tuple(row))
    return tuple(rows)


# ---------------------------------------------------------------------------
# twist scalars


def _rational_nth_roots(r: Fraction, n: int) -> list[Fraction]:
    """All rational x with x^n = r."""
    if n == 0:
        raise ValueError("n must be positive")
    if r == 0:
        return [Fraction(0)]
    neg = r < 0
    if neg and n % 2 == 0:
        return []
    num, den = abs(r.numerator), r.denominator

    def iroot(m: int) -> int | None:
        if m == 0:
            return 0
        lo, hi = 0, 1
        while hi**n < m:
            hi *= 2
        while lo < hi:
            mid = (lo + hi) // 2
            if mid**n < m:
                lo = mid + 1
            else:
                hi = mid
        return lo if lo**n == m else None

    rn, rd = iroot(num), iroot(den)
    if rn is None or rd is None:
        return []
    root = Fraction(rn, rd)
    if neg:
        return [-root]
    return [root, -root] if n % 2 == 0 else [root]


def find_twist_scalars(p: UniPoly, q: UniPoly, m: int) -> set:
    """All ground-field lambda with p(X) = lambda^m q(X/lambda), i.e. the
    roots of p are the roots of q scaled by lambda.

    Coefficientwise the relation reads p_k = lambda^(m-k) q_k for all k, so
    any solution satisfies a system lambda^d = p_k/q_k over the exponents
    d = m - k with q_k != 0.  The system is reduced by the gcd of the
    exponents; when it is consistent but has no rational solution the twist
    exists only in an extension and TwistNotRepresentable is raised.
    """
    if not (p.is_monic() and q.is_monic()):
        raise ValueError("both polynomials must be monic")
    if p.degree != m or q.degree != m:
        raise ValueError(f"both polynomials must have degree {m}")
    if p[0] == 0 or q[0] == 0:
        raise ValueError("constant terms must be nonzero")
    psupp = {k for k in range(m) if p[k] != 0}
    qsupp = {k for k in range(m) if q[k] != 0}
    if psupp != qsupp:
        return set()
    # constraints lambda^(m-k) = p_k/q_k, exponents reduced via Bezout
    constraints = {m - k: Fraction(p[k]) / Fraction(q[k]) for k in sorted(qsupp)}
    exps = sorted(constraints)
    g = 0
    for d in exps:
        g = _gcd(g, d)
    value_g = _bezout_value(constraints, g)
    for d, v in constraints.items():
        if value_g ** (d // g) != v:
            return set()  # inconsistent: no twist over any field
    candidates = _rational_nth_roots(value_g, g)
    if not candidates:
        raise TwistNotRepresentable(
            f"twist satisfies lambda^{g} = {value_g} with no root in the ground field"
        )
    verified = set()
    for lam in candidates:
        if all(p[k] == lam ** (m - k) * q[k] for k in range(m + 1)):
            verified.add(lam)
    return verified


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _bezout_value(constraints: Mapping[int, Fraction], g: int) -> Fraction:
    """Given lambda^d = r_d for d in constraints, produce the forced value of
    lambda^g for g = gcd of the exponents, via a Bezout combination."""
    exps = sorted(constraints)
    # extended gcd over the exponent list
    coeff = {exps[0]: 1}
    cur = exps[0]
    for d in exps[1:]:
        x, y, new = _ext_gcd(cur, d)
        coeff = {k: v * x for k, v in coeff.items()}
        coeff[d] = coeff.get(d, 0) + y
        cur = new
    assert cur == g
    value = Fraction(1)
    for d, c in coeff.items():
        value *= constraints[d] ** c
    return value


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """x, y, g with a*x + b*y = g = gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        qt = old_r // r
        old_r, r = r, old_r - qt * r
        old_s, s = s, old_s - qt * s
        old_t, t = t, old_t - qt * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_s, old_t, old_r


# ---------------------------------------------------------------------------
# sparse Laurent polynomials


class LaurentPoly:
    """Sparse Laurent polynomial: map from integer exponent vectors (all of
    one length) to nonzero coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, Scalar] | None = None):
        self.nvars = nvars
        clean = {}
        for exp, c in (terms or {}).items():
            if len(exp) != nvars:
                raise ValueError("exponent vector of wrong length")
            c = as_scalar(c)
            if c != 0:
                clean[tuple(int(e) for e in exp)] = c
        self.terms = clean

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff=1) -> "LaurentPoly":
        return cls(len(exp), {tuple(exp): as_scalar(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, LaurentPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for exp, c in other.terms.items():
            out[exp] = out.get(exp, ZERO) + c
        return LaurentPoly(self.nvars, out)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for exp, c in other.terms.items():
            out[exp] = out.get(exp, ZERO) - c
        return LaurentPoly(self.nvars, out)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[tuple, Scalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, ZERO) + c1 * c2
        return LaurentPoly(self.nvars, out)

    def scale(self, s) -> "LaurentPoly":
        s = as_scalar(s)
        return LaurentPoly(self.nvars, {e: c * s for e, c in self.terms.items()})

    def _leading(self) -> tuple[tuple, Scalar]:
        exp = max(self.terms)
        return exp, self.terms[exp]

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division (raises if the division leaves a remainder)."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        lead_exp, lead_c = other._leading()
        rem = self
        qterms: dict[tuple, Scalar] = {}
        while not rem.is_zero():
            rexp, rc = rem._leading()
            qexp = tuple(a - b for a, b in zip(rexp, lead_exp))
            qc = rc / lead_c
            qterms[qexp] = qterms.get(qexp, ZERO) + qc
            rem = rem - LaurentPoly.monomial(qexp, qc) * other
        return LaurentPoly(self.nvars, qterms)

    def evaluate(self, point: Sequence) -> Scalar:
        """Evaluate at a tuple of nonzero field elements."""
        if len(point) != self.nvars:
            raise ValueError("point of wrong length")
        vals = [as_scalar(x) for x in point]
        inv = [scalar_inv(x) for x in vals]
        acc = ZERO
        for exp, c in self.terms.items():
            term = c
            for x, xi, e in zip(vals, inv, exp):
                if e > 0:
                    term = term * x**e
                elif e < 0:
                    term = term * xi ** (-e)
            acc = acc + term
        return acc

    def coefficient_sum(self) -> Scalar:
        acc = ZERO
        for c in self.terms.values():
            acc = acc + c
        return acc

    def halve_exponents(self) -> "LaurentPoly":
        """Divide every exponent by 2 (they must all be even)."""
        out = {}
        for exp, c in self.terms.items():
            if any(e % 2 for e in exp):
                raise ValueError("odd exponent; cannot halve")
            out[tuple(e // 2 for e in exp)] = c
        return LaurentPoly(self.nvars, out)

    def __repr__(self):
        if not self.terms:
            return "LaurentPoly(0)"
        parts = [
            f"{format_scalar(c)}*x^{list(e)}" for e, c in sorted(self.terms.items())
        ]
        return "LaurentPoly(" + " + ".join(parts) + ")"
