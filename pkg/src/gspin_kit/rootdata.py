"""Root data, Weyl groups, and characters for the symplectic/orthogonal/spin
families.

Coordinate conventions (fixed once, used everywhere):

* GSp_{2n} weights are written (c; k_1, ..., k_n) in the basis e_0, e_1,
  ..., e_n, where e_i reads off the i-th diagonal entry of
  diag(a_1, ..., a_n, c a_n^{-1}, ..., c a_1^{-1}) and e_0 reads off the
  similitude.  Simple roots: e_1 - e_2, ..., e_{n-1} - e_n, 2 e_n - e_0.
* Sp_{2n} and SO_{2n+1} weights drop the 0-th coordinate.
* GSpin_{2n+1} weights are written (s; m_1, ..., m_n) in the coordinates of
  the torus chart (c, a_1, ..., a_n): the weight's value at a chart point
  is c^s * prod a_i^{m_i}.  Simple roots: m_i - m_{i+1} and m_n; the short
  coroot is (1; 0, ..., 0, 2).  Under the duality identifying the GSpin
  weight lattice with the GSp cocharacter lattice, the 0-th coordinate
  changes sign (see gsp_cochar_to_gspin_weight).
* Cocharacters of GSpin are exponent vectors (g_0; g_1, ..., g_n) against
  the same chart.

The Weyl group of every family is the group of signed permutations of the
n "a" slots; an element is stored as (perm, signs) where perm gives the
images (new slot i holds old slot perm[i]) and signs the inversions.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .algebra_core import LaurentPoly
from .scalars import ONE, Scalar, ZERO, as_scalar, scalar_inv, scalar_key

SUPPORTED_FAMILIES = ("GSp", "Sp", "SO", "GSpin", "GO", "GL", "G2Torus")
ROOT_FAMILIES = ("GSp", "Sp", "SO", "GSpin")

ORBIT_RANK_LIMIT = 6


class UnsupportedTagError(ValueError):
    pass


class OrbitSizeError(ValueError):
    """Weyl orbit enumeration refused for n beyond the size guard."""


@dataclass(frozen=True)
class GroupTag:
    family: str
    n: int

    def __post_init__(self):
        if self.family not in SUPPORTED_FAMILIES:
            raise UnsupportedTagError(f"unknown family {self.family!r}")
        if self.n < 1:
            raise ValueError("rank must be positive")

    @property
    def coord_len(self) -> int:
        return self.n + 1 if self.family in ("GSp", "GSpin") else self.n

    def __str__(self):
        return f"{self.family}(n={self.n})"


@dataclass(frozen=True)
class WeightVector:
    """Weight or coweight, tagged by group; coords are exact rationals."""

    tag: GroupTag
    coords: tuple
    side: str = "weight"  # "weight" or "coweight"

    def __post_init__(self):
        object.__setattr__(
            self, "coords", tuple(Fraction(c) for c in self.coords)
        )
        if len(self.coords) != self.tag.coord_len:
            raise ValueError(
                f"{self.tag} expects {self.tag.coord_len} coordinates, got {len(self.coords)}"
            )
        if self.side not in ("weight", "coweight"):
            raise ValueError("side must be 'weight' or 'coweight'")

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def serialize(self) -> dict:
        coords = [
            int(c) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
            for c in self.coords
        ]
        return {"tag": self.tag.family, "n": self.tag.n, "coords": coords}

    @classmethod
    def deserialize(cls, data, side="weight") -> "WeightVector":
        return cls(
            GroupTag(data["tag"], int(data["n"])),
            tuple(Fraction(str(c)) for c in data["coords"]),
            side,
        )


def _require_root_family(tag: GroupTag):
    if tag.family not in ROOT_FAMILIES:
        raise UnsupportedTagError(f"no fixed root datum for {tag}")


def pairing(chi: WeightVector, mu: WeightVector) -> Fraction:
    """Perfect pairing between a weight and a coweight of the same group.

    Both sides are stored against mutually dual bases, so the pairing is the
    plain dot product.
    """
    if chi.tag != mu.tag:
        raise ValueError(f"tag mismatch: {chi.tag} vs {mu.tag}")
    if chi.side == mu.side:
        raise ValueError("pairing needs one weight and one coweight")
    return sum((a * b for a, b in zip(chi.coords, mu.coords)), Fraction(0))


# ---------------------------------------------------------------------------
# simple roots, coroots, rho


def simple_roots(tag: GroupTag) -> list[WeightVector]:
    _require_root_family(tag)
    n = tag.n
    out = []
    if tag.family == "GSp":
        for i in range(n - 1):
            v = [0] * (n + 1)
            v[1 + i], v[2 + i] = 1, -1
            out.append(WeightVector(tag, v))
        v = [0] * (n + 1)
        v[0], v[n] = -1, 2
        out.append(WeightVector(tag, v))
    elif tag.family in ("Sp", "SO"):
        for i in range(n - 1):
            v = [0] * n
            v[i], v[i + 1] = 1, -1
            out.append(WeightVector(tag, v))
        v = [0] * n
        v[n - 1] = 2 if tag.family == "Sp" else 1
        out.append(WeightVector(tag, v))
    else:  # GSpin: type B_n in the chart coordinates, roots miss the c slot
        for i in range(n - 1):
            v = [0] * (n + 1)
            v[1 + i], v[2 + i] = 1, -1
            out.append(WeightVector(tag, v))
        v = [0] * (n + 1)
        v[n] = 1
        out.append(WeightVector(tag, v))
    return out


def simple_coroots(tag: GroupTag) -> list[WeightVector]:
    _require_root_family(tag)
    n = tag.n
    out = []
    if tag.family == "GSp":
        for i in range(n - 1):
            v = [0] * (n + 1)
            v[1 + i], v[2 + i] = 1, -1
            out.append(WeightVector(tag, v, "coweight"))
        v = [0] * (n + 1)
        v[n] = 1
        out.append(WeightVector(tag, v, "coweight"))
    elif tag.family in ("Sp", "SO"):
        for i in range(n - 1):
            v = [0] * n
            v[i], v[i + 1] = 1, -1
            out.append(WeightVector(tag, v, "coweight"))
        v = [0] * n
        v[n - 1] = 1 if tag.family == "Sp" else 2
        out.append(WeightVector(tag, v, "coweight"))
    else:  # GSpin: short coroot picks up the chart's c direction
        for i in range(n - 1):
            v = [0] * (n + 1)
            v[1 + i], v[2 + i] = 1, -1
            out.append(WeightVector(tag, v, "coweight"))
        v = [0] * (n + 1)
        v[0], v[n] = 1, 2
        out.append(WeightVector(tag, v, "coweight"))
    return out


def positive_coroots(tag: GroupTag) -> list[WeightVector]:
    """All positive coroots (used by regularity tests)."""
    _require_root_family(tag)
    n = tag.n
    out = []

    def vec(pairs):
        v = [Fraction(0)] * tag.coord_len
        for idx, val in pairs:
            v[idx] = Fraction(val)
        return WeightVector(tag, v, "coweight")

    off = 1 if tag.family in ("GSp", "GSpin") else 0
    for i in range(n):
        for j in range(i + 1, n):
            out.append(vec([(off + i, 1), (off + j, -1)]))
            if tag.family == "GSpin":
                out.append(vec([(0, 1), (off + i, 1), (off + j, 1)]))
            else:
                out.append(vec([(off + i, 1), (off + j, 1)]))
    for i in range(n):
        if tag.family == "GSpin":
            out.append(vec([(0, 1), (off + i, 2)]))
        elif tag.family == "SO":
            out.append(vec([(off + i, 2)]))
        else:
            out.append(vec([(off + i, 1)]))
    return out


def rho(tag: GroupTag) -> WeightVector:
    """Half-sum of the positive roots, in X* tensor (1/2)Z."""
    _require_root_family(tag)
    n = tag.n
    if tag.family == "GSp":
        coords = [-Fraction(n * (n + 1), 4)] + [Fraction(n - i) for i in range(n)]
    elif tag.family == "Sp":
        coords = [Fraction(n - i) for i in range(n)]
    elif tag.family == "SO":
        coords = [Fraction(2 * (n - i) - 1, 2) for i in range(n)]
    else:  # GSpin: type B_n rho, no c component
        coords = [Fraction(0)] + [Fraction(2 * (n - i) - 1, 2) for i in range(n)]
    return WeightVector(tag, coords)


def is_dominant(nu: WeightVector) -> bool:
    """Nonnegative pairing against every simple coroot (simple root for a
    coweight)."""
    duals = simple_coroots(nu.tag) if nu.side == "weight" else simple_roots(nu.tag)
    return all(pairing(nu, d) >= 0 if nu.side == "weight" else pairing(d, nu) >= 0 for d in duals)


def is_regular(nu: WeightVector) -> bool:
    """Nonzero pairing against every coroot (root for a coweight)."""
    if nu.side == "weight":
        return all(pairing(nu, d) != 0 for d in positive_coroots(nu.tag))
    return all(pairing(r, nu) != 0 for r in _positive_roots(nu.tag))


def _positive_roots(tag: GroupTag) -> list[WeightVector]:
    _require_root_family(tag)
    n = tag.n
    out = []

    def vec(pairs):
        v = [Fraction(0)] * tag.coord_len
        for idx, val in pairs:
            v[idx] = Fraction(val)
        return WeightVector(tag, v)

    off = 1 if tag.family in ("GSp", "GSpin") else 0
    for i in range(n):
        for j in range(i + 1, n):
            out.append(vec([(off + i, 1), (off + j, -1)]))
            if tag.family == "GSp":
                out.append(vec([(0, -1), (off + i, 1), (off + j, 1)]))
            else:
                out.append(vec([(off + i, 1), (off + j, 1)]))
    for i in range(n):
        if tag.family == "GSp":
            out.append(vec([(0, -1), (off + i, 2)]))
        elif tag.family == "Sp":
            out.append(vec([(off + i, 2)]))
        else:
            out.append(vec([(off + i, 1)]))
    return out


# ---------------------------------------------------------------------------
# Weyl group


@dataclass(frozen=True)
class WeylElement:
    """Signed permutation (perm, signs); new slot i holds old slot perm[i],
    then slots with sign -1 are inverted."""

    perm: tuple
    signs: tuple

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(1, n + 1)):
            raise ValueError("perm must be a bijection of 1..n")
        if len(self.signs) != n or any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be a vector over {+1, -1}")

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> "WeylElement":
        return cls(tuple(range(1, n + 1)), (1,) * n)

    def sign(self) -> int:
        """Determinant of the signed permutation."""
        perm = [p - 1 for p in self.perm]
        seen = [False] * len(perm)
        sgn = 1
        for i in range(len(perm)):
            if seen[i]:
                continue
            ln = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                ln += 1
            if ln % 2 == 0:
                sgn = -sgn
        for s in self.signs:
            sgn *= s
        return sgn


def enumerate_weyl(n: int) -> Iterable[WeylElement]:
    for perm in itertools.permutations(range(1, n + 1)):
        for signs in itertools.product((1, -1), repeat=n):
            yield WeylElement(perm, signs)


def weyl_act(w: WeylElement, point: tuple) -> tuple:
    """Action on a torus chart point (c, (a_1, ..., a_n)): the permutation
    reindexes the a-slots fixing c, then each sign flip inverts a slot and
    divides c by the old value there."""
    c, a = point
    a = tuple(a)
    if len(a) != w.n:
        raise ValueError("rank mismatch")
    b = [a[p - 1] for p in w.perm]
    newc = as_scalar(c)
    newa = []
    for bi, s in zip(b, w.signs):
        if s == -1:
            newc = newc * scalar_inv(bi)
            newa.append(scalar_inv(bi))
        else:
            newa.append(bi)
    return (newc, tuple(newa))


def weyl_act_weight(w: WeylElement, mu: WeightVector) -> WeightVector:
    """The transform of a weight/coweight induced by the point action:
    (weyl_act_weight(w, mu))(t) = mu(weyl_act(w, t)).

    The point action permutes then flips, so the weight transform composes
    the other way: flip the coordinates first, then reindex by the inverse
    permutation.
    """
    fam = mu.tag.family
    n = mu.tag.n
    iperm = [0] * n  # iperm[j-1] = i with perm[i-1] = j
    for i, p in enumerate(w.perm):
        iperm[p - 1] = i
    if fam in ("Sp", "SO"):
        flipped = [mi if s == 1 else -mi for mi, s in zip(mu.coords, w.signs)]
        return WeightVector(mu.tag, [flipped[iperm[j]] for j in range(n)], mu.side)
    if fam == "GSp":
        if mu.side == "coweight":
            raise UnsupportedTagError(
                "GSp coweight action unimplemented; convert to a GSpin weight"
            )
        c, k = mu.coords[0], mu.coords[1:]
        newc = c
        flipped = []
        for ki, s in zip(k, w.signs):
            if s == -1:
                newc += ki
                flipped.append(-ki)
            else:
                flipped.append(ki)
        return WeightVector(
            mu.tag, [newc] + [flipped[iperm[j]] for j in range(n)], mu.side
        )
    if fam == "GSpin":
        s0, m = mu.coords[0], mu.coords[1:]
        if mu.side == "weight":
            flipped = [
                (-mi - s0) if s == -1 else mi for mi, s in zip(m, w.signs)
            ]
            return WeightVector(
                mu.tag, [s0] + [flipped[iperm[j]] for j in range(n)], mu.side
            )
        g0 = s0
        flipped = []
        for gi, s in zip(m, w.signs):
            if s == -1:
                g0 -= gi
                flipped.append(-gi)
            else:
                flipped.append(gi)
        return WeightVector(
            mu.tag, [g0] + [flipped[iperm[j]] for j in range(n)], mu.side
        )
    raise UnsupportedTagError(f"no Weyl action for {mu.tag}")


def weyl_orbit(obj, n: int | None = None) -> set:
    """Full Weyl orbit of a chart point (c, a-tuple) or a WeightVector."""
    if isinstance(obj, WeightVector):
        n = obj.tag.n
        act = weyl_act_weight
    else:
        c, a = obj
        obj = (as_scalar(c), tuple(as_scalar(x) for x in a))
        n = len(obj[1])
        act = weyl_act
    if n > ORBIT_RANK_LIMIT:
        raise OrbitSizeError(f"orbit enumeration capped at rank {ORBIT_RANK_LIMIT}")
    return {act(w, obj) for w in enumerate_weyl(n)}


# ---------------------------------------------------------------------------
# Weyl character formula


def _doubled_exponent(mu: WeightVector) -> tuple:
    return tuple(int(2 * c) for c in mu.coords)


@lru_cache(maxsize=None)
def _weyl_character_cached(family: str, n: int, coords: tuple) -> LaurentPoly:
    tag = GroupTag(family, n)
    sigma = WeightVector(tag, coords)
    rho_v = rho(tag)
    shifted = WeightVector(tag, tuple(a + b for a, b in zip(sigma.coords, rho_v.coords)))
    nvars = tag.coord_len
    num = LaurentPoly(nvars)
    den = LaurentPoly(nvars)
    for w in enumerate_weyl(n):
        sgn = w.sign()
        num = num + LaurentPoly.monomial(
            _doubled_exponent(weyl_act_weight(w, shifted)), sgn
        )
        den = den + LaurentPoly.monomial(
            _doubled_exponent(weyl_act_weight(w, rho_v)), sgn
        )
    return num.exact_div(den).halve_exponents()


def weyl_character(sigma: WeightVector) -> LaurentPoly:
    """Character of the irreducible highest-weight representation, as a
    Weyl-invariant Laurent polynomial in the torus chart coordinates."""
    if sigma.side != "weight":
        raise ValueError("highest weight must be a weight, not a coweight")
    if not is_dominant(sigma):
        raise ValueError(f"weight {sigma.coords} is not dominant for {sigma.tag}")
    if not all(c.denominator == 1 for c in sigma.coords):
        raise ValueError("highest weight must be integral")
    return _weyl_character_cached(sigma.tag.family, sigma.tag.n, sigma.coords)


def weyl_dim(sigma: WeightVector) -> int:
    """Dimension of the irreducible representation: the character evaluated
    at the identity chart point."""
    total = weyl_character(sigma).coefficient_sum()
    assert Fraction(total).denominator == 1
    return int(total)


def spin_highest_weight(n: int) -> WeightVector:
    """Highest weight of the spin representation in chart coordinates."""
    return WeightVector(GroupTag("GSpin", n), (1,) + (0,) * n)


def std_highest_weight(n: int) -> WeightVector:
    """Highest weight of the standard (vector) representation."""
    return WeightVector(GroupTag("GSpin", n), (0, 1) + (0,) * (n - 1))


# ---------------------------------------------------------------------------
# chart/duality converters


def gsp_weight_to_gspin_cochar(mu: WeightVector) -> WeightVector:
    """Identify the GSp weight lattice with the GSpin cocharacter lattice.

    The similitude direction changes sign: the chart coordinate c of
    T_GSpin pairs with the GSp similitude weight e_0 by -1.
    """
    if mu.tag.family != "GSp" or mu.side != "weight":
        raise ValueError("expects a GSp weight")
    return WeightVector(
        GroupTag("GSpin", mu.tag.n), (-mu.coords[0],) + mu.coords[1:], "coweight"
    )


def gsp_cochar_to_gspin_weight(mu: WeightVector) -> WeightVector:
    """Identify the GSp cocharacter lattice with the GSpin weight lattice."""
    if mu.tag.family != "GSp" or mu.side != "coweight":
        raise ValueError("expects a GSp coweight")
    return WeightVector(
        GroupTag("GSpin", mu.tag.n), (-mu.coords[0],) + mu.coords[1:], "weight"
    )


# ---------------------------------------------------------------------------
# adjoint traces on so_{2n+1}


def adjoint_trace_so(n: int, a: int, b: int) -> int:
    """Trace of Ad(t) on so_{2n+1} for t = diag(1_a, -1_b, 1, -1_b, 1_a):
    2(a-b)^2 + 2(a-b) - n."""
    if a < 0 or b < 0 or a + b != n:
        raise ValueError("need a, b >= 0 with a + b = n")
    d = a - b
    return 2 * d * d + 2 * d - n


def is_odd(n: int, a: int, b: int) -> bool:
    """Oddness: the adjoint trace equals minus the rank."""
    return adjoint_trace_so(n, a, b) == -n
