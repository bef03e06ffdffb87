"""The exceptional torus inside the rank-3 spin group.

The cocharacter lattice of the exceptional subgroup's maximal torus sits
inside the rank-3 orthogonal lattice as {(a, b, a+b)}; multiplicatively a
torus point is (x, y, xy).  Its spinor-norm-one lift has c^2 = x * y * xy =
(xy)^2, so c = x*y works over any ground field, and the eight spin
eigenvalues are the seven standard ones together with 1: the restriction
of the eight-dimensional representation splits off a trivial line.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import conjugacy, weights
from .conjugacy import GSpinTorusPoint
from .scalars import ONE, Scalar, ZERO, as_scalar, scalar_inv, scalar_key

import itertools


@dataclass(frozen=True)
class G2TorusPoint:
    """Chart (x, y) of a semisimple class in the exceptional subgroup."""

    x: Scalar
    y: Scalar

    def __post_init__(self):
        object.__setattr__(self, "x", as_scalar(self.x))
        object.__setattr__(self, "y", as_scalar(self.y))
        if self.x == 0 or self.y == 0:
            raise ValueError("torus coordinates must be nonzero")


def embed_so7(g: G2TorusPoint) -> GSpinTorusPoint:
    """The spinor-norm-one chart point above the orthogonal class
    (x, y, xy); c = x*y satisfies c^2 = x * y * (xy)."""
    a = (g.x, g.y, g.x * g.y)
    return GSpinTorusPoint(3, g.x * g.y, a)


def spin_restriction_check(g: G2TorusPoint) -> tuple[Scalar, Scalar, bool]:
    """(trace_spin, trace_std, ok): ok iff the eight-dimensional trace is
    1 + the seven-dimensional trace and the spin eigenvalue multiset is the
    standard multiset with 1 adjoined."""
    t = embed_so7(g)
    spin = conjugacy.spin_eigenvalues(t)
    std = conjugacy.std_eigenvalues(t)
    trace_spin = ZERO
    for v in spin:
        trace_spin = trace_spin + v
    trace_std = ZERO
    for v in std:
        trace_std = trace_std + v
    expected = sorted(std + [ONE], key=scalar_key)
    ok = (trace_spin == ONE + trace_std) and (spin == expected)
    return trace_spin, trace_std, ok


def is_g2_class(a: Sequence) -> bool:
    """True iff some signed permutation of the rank-3 class (a_1, a_2, a_3)
    satisfies the multiplicative relation a_3 = a_1 * a_2 (signs act by
    inversion)."""
    vals = [as_scalar(v) for v in a]
    if len(vals) != 3:
        raise ValueError("expects a rank-3 class")
    if any(v == 0 for v in vals):
        raise ValueError("class coordinates must be nonzero")
    for perm in itertools.permutations(vals):
        for signs in itertools.product((1, -1), repeat=3):
            w = [p if s == 1 else scalar_inv(p) for p, s in zip(perm, signs)]
            if w[2] == w[0] * w[1]:
                return True
    return False


def ht2_matches_g2(mu: Sequence) -> bool:
    """The additive exclusion pattern detects exactly the Weyl-saturated
    exceptional cocharacter lattice: returns not check_HT2(mu)."""
    return not weights.check_HT2(mu)


def _prime_exponent_vectors(vals: Sequence[Fraction], primes: Sequence[int]):
    """Exponent vectors of rational numbers over a fixed prime list; raises
    if a value has a prime factor outside the list or a sign."""
    out = []
    for v in vals:
        v = Fraction(v)
        if v <= 0:
            raise ValueError("positive rationals only")
        vec = []
        num, den = v.numerator, v.denominator
        for p in primes:
            e = 0
            while num % p == 0:
                num //= p
                e += 1
            while den % p == 0:
                den //= p
                e -= 1
            vec.append(e)
        if num != 1 or den != 1:
            raise ValueError(f"prime factor outside {primes}")
        out.append(vec)
    return out


def is_principal_sl2_class(a: Sequence, primes: Sequence[int]) -> bool:
    """Multiplicative analogue of the principal-SL2 exclusion for rank-3
    classes with positive rational coordinates supported on the given
    primes: some signed permutation is (u^6, u^4, u^2) for a common u."""
    vals = [Fraction(v) for v in a]
    vecs = _prime_exponent_vectors(vals, primes)
    n = len(vals)
    pattern = [2 * (n - i) for i in range(n)]
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            vv = [[signs[i] * c for c in vecs[perm[i]]] for i in range(n)]
            # need vv[i] = pattern[i] * w for one integer vector w
            candidate = None
            ok = True
            for row, m in zip(vv, pattern):
                if any(c % m for c in row):
                    ok = False
                    break
                w = [c // m for c in row]
                if candidate is None:
                    candidate = w
                elif w != candidate:
                    ok = False
                    break
            if ok:
                return True
    return False
