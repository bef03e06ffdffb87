"""Hodge-side bookkeeping: cocharacter pairings against the spin and
standard weights, the regularity predicates that control strong
irreducibility, the quarter-integer similitude shift between the two
normalizations, eigenvariety slope bounds, and admissibility of affine
cones decided by exact Fourier-Motzkin elimination.

Cocharacters of GSpin_{2n+1} are exponent vectors (g_0; g_1, ..., g_n)
against the torus chart (c, a_1, ..., a_n); rank-n vectors are read as
special orthogonal cocharacters (g_0 = 0).  The spin weights pair with
such a vector as g_0 - sum_{i in S} g_i over subsets S, the standard
weights as {0, +-g_i}.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import rootdata
from .rootdata import GroupTag, WeightVector
from .scalars import ZERO


@dataclass(frozen=True)
class HTCocharacter:
    """Cocharacter with rational coordinates; GSpin ones may carry
    quarter-integer similitude components after the normalization shift."""

    tag: GroupTag
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))
        if self.tag.family not in ("GSpin", "SO"):
            raise rootdata.UnsupportedTagError("HT cocharacters are GSpin- or SO-tagged")
        if len(self.coords) != self.tag.coord_len:
            raise ValueError(f"{self.tag} expects {self.tag.coord_len} coordinates")

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def chart_exponents(self) -> tuple:
        """(g_0; g_1, ..., g_n) with g_0 = 0 for an SO cocharacter."""
        if self.tag.family == "GSpin":
            return self.coords
        return (Fraction(0),) + self.coords


@dataclass(frozen=True)
class ArchParamRestriction:
    """Restriction data of an archimedean parameter: a pair of rational
    cocharacter vectors with integral difference."""

    mu1: tuple
    mu2: tuple

    def __post_init__(self):
        object.__setattr__(self, "mu1", tuple(Fraction(c) for c in self.mu1))
        object.__setattr__(self, "mu2", tuple(Fraction(c) for c in self.mu2))
        if len(self.mu1) != len(self.mu2):
            raise ValueError("mu1 and mu2 must have the same length")
        if any((x - y).denominator != 1 for x, y in zip(self.mu1, self.mu2)):
            raise ValueError("mu1 - mu2 must be integral")


def _split_exponents(mu) -> tuple[Fraction, tuple]:
    """(g_0, (g_1, ..., g_n)).  HTCocharacters know their tag; raw
    sequences are read as special orthogonal vectors (g_0 = 0);
    ArchParamRestriction vectors are full chart exponent vectors.  The g_0
    slot shifts every spin pairing uniformly, so the regularity predicates
    do not depend on this choice."""
    if isinstance(mu, HTCocharacter):
        exps = mu.chart_exponents()
        return exps[0], exps[1:]
    if isinstance(mu, ArchParamRestriction):
        return mu.mu1[0], mu.mu1[1:]
    vec = tuple(Fraction(c) for c in mu)
    return Fraction(0), vec


def spin_pairings(mu) -> list[Fraction]:
    """Pairings of the cocharacter against the 2^n spin weights, in subset
    order: g_0 - sum_{i in S} g_i."""
    g0, g = _split_exponents(mu)
    n = len(g)
    out = []
    for mask in range(1 << n):
        v = g0
        for i in range(n):
            if mask >> i & 1:
                v -= g[i]
        out.append(v)
    return out


def spin_ht_numbers(mu: HTCocharacter) -> list[Fraction]:
    """Multiset of 2^n spin Hodge-Tate numbers (sorted)."""
    if mu.tag.family != "GSpin":
        raise ValueError("expects a GSpin cocharacter")
    return sorted(spin_pairings(mu))


def std_pairings(mu) -> list[Fraction]:
    """Pairings against the 2n+1 standard weights {0, +-g_i}."""
    _, g = _split_exponents(mu)
    out = [Fraction(0)]
    for gi in g:
        out.extend((gi, -gi))
    return sorted(out)


def is_spin_regular(mu) -> bool:
    """All 2^n spin pairings pairwise distinct."""
    vals = spin_pairings(mu)
    return len(set(vals)) == len(vals)


def is_std_regular(mu) -> bool:
    """All 2n+1 standard pairings pairwise distinct."""
    vals = std_pairings(mu)
    return len(set(vals)) == len(vals)


# ---------------------------------------------------------------------------
# Hodge-Tate exclusion patterns


def principal_sl2_cochar(n: int) -> tuple[int, ...]:
    """The cocharacter (2n, 2n-2, ..., 2) of the principal SL_2."""
    if n < 1:
        raise ValueError("n must be positive")
    return tuple(2 * (n - i) for i in range(n))


def ht1_witness(mu: Sequence) -> int | None:
    """An integer x with mu a signed permutation of (2n x, ..., 2x), or
    None.  Signed-permutation orbits are classified by the multiset of
    absolute values."""
    vec = [Fraction(c) for c in mu]
    n = len(vec)
    if any(c.denominator != 1 for c in vec):
        return None
    mags = sorted((abs(int(c)) for c in vec), reverse=True)
    if all(m == 0 for m in mags):
        return 0
    if mags[0] % (2 * n):
        return None
    x = mags[0] // (2 * n)
    if mags == [2 * (n - i) * x for i in range(n)]:
        return x
    return None


def check_HT1(mu: Sequence) -> bool:
    """Passes (True) iff mu is not a Weyl translate of an integer multiple
    of the principal SL_2 cocharacter."""
    return ht1_witness(mu) is None


def check_HT1_raw(mu: Sequence) -> bool:
    """Raw-coordinate variant: no signed permutations, literal pattern."""
    vec = [Fraction(c) for c in mu]
    n = len(vec)
    if any(c.denominator != 1 for c in vec):
        return True
    if all(c == 0 for c in vec):
        return False
    lead = vec[0]
    if lead % (2 * n):
        return True
    x = lead / (2 * n)
    return vec != [2 * (n - i) * x for i in range(n)]


def ht2_witness(mu: Sequence) -> tuple[int, int] | None:
    """(a, b) such that some signed permutation of mu equals (a, b, a+b),
    or None.  Only defined for rank 3."""
    vec = [Fraction(c) for c in mu]
    if len(vec) != 3:
        raise ValueError("the rank-3 exclusion pattern needs 3 coordinates")
    if any(c.denominator != 1 for c in vec):
        return None
    ints = [int(c) for c in vec]
    for perm in itertools.permutations(ints):
        for signs in itertools.product((1, -1), repeat=3):
            w = [p * s for p, s in zip(perm, signs)]
            if w[2] == w[0] + w[1]:
                return (w[0], w[1])
    return None


def check_HT2(mu: Sequence) -> bool:
    """Passes (True) iff no signed permutation of mu has third coordinate
    equal to the sum of the first two."""
    return ht2_witness(mu) is None


# ---------------------------------------------------------------------------
# normalization shift and Hodge cocharacters


def c_shift(mu: HTCocharacter, inverse: bool = False) -> HTCocharacter:
    """Add n(n+1)/4 times the similitude direction (the chart's c exponent);
    the inverse flag subtracts it."""
    if mu.tag.family != "GSpin":
        raise ValueError("expects a GSpin cocharacter")
    n = mu.tag.n
    delta = Fraction(n * (n + 1), 4)
    if inverse:
        delta = -delta
    return HTCocharacter(mu.tag, (mu.coords[0] + delta,) + mu.coords[1:])


def hodge_cocharacter(lam: WeightVector) -> HTCocharacter:
    """Infinitesimal-character cocharacter of a dominant symplectic weight:
    the shift by the half-sum of positive roots, transported to the dual
    side (the similitude coordinate changes sign under the transport)."""
    if lam.tag.family != "GSp" or lam.side != "weight":
        raise ValueError("expects a GSp weight")
    if not rootdata.is_dominant(lam):
        raise ValueError("weight must be dominant")
    shifted = WeightVector(
        lam.tag,
        tuple(a + b for a, b in zip(lam.coords, rootdata.rho(lam.tag).coords)),
    )
    cochar = rootdata.gsp_weight_to_gspin_cochar(shifted)
    return HTCocharacter(cochar.tag, cochar.coords)


# ---------------------------------------------------------------------------
# classicality slopes


def default_eta(n: int) -> WeightVector:
    """The compact-operator cocharacter diag(w^1, ..., w^n, w^-n, ..., w^-1)
    in GSp chart exponents: similitude exponent 0, a-exponents (1, ..., n)."""
    return WeightVector(
        GroupTag("GSp", n), (0,) + tuple(range(1, n + 1)), "coweight"
    )


def _eta_pairings(eta: WeightVector) -> list[Fraction]:
    """<alpha, eta> for the simple symplectic roots: the valuations of the
    root values at the uniformizer element."""
    return [rootdata.pairing(alpha, eta) for alpha in rootdata.simple_roots(eta.tag)]


def classicality_bound(w: WeightVector, eta: WeightVector | None = None) -> Fraction:
    """Small-slope bound: inf over the simple roots of
    -(1 + <w, alpha_coroot>) * <alpha, eta>."""
    if w.tag.family != "GSp" or w.side != "weight":
        raise ValueError("expects a GSp weight")
    if eta is None:
        eta = default_eta(w.tag.n)
    vals = _eta_pairings(eta)
    coroots = rootdata.simple_coroots(w.tag)
    return min(
        -(1 + rootdata.pairing(w, cr)) * v for cr, v in zip(coroots, vals)
    )


def in_cone_CM(x: Sequence, M, eta: WeightVector | None = None) -> bool:
    """Membership in the slope cone: -(1 + <x, alpha_coroot>) * v_alpha > M
    for every simple root.  x lives in the similitude-free weight space
    (length-n rational vector)."""
    x = [Fraction(c) for c in x]
    n = len(x)
    if eta is None:
        eta = default_eta(n)
    w = WeightVector(GroupTag("GSp", n), (0,) + tuple(x))
    vals = _eta_pairings(eta)
    coroots = rootdata.simple_coroots(w.tag)
    M = Fraction(M)
    return all(
        -(1 + rootdata.pairing(w, cr)) * v > M for cr, v in zip(coroots, vals)
    )


# ---------------------------------------------------------------------------
# affine cones and admissibility


@dataclass(frozen=True)
class AffineCone:
    """Open affine cone { x : functionals[i] . x > thresholds[i] }."""

    functionals: tuple
    thresholds: tuple

    def __post_init__(self):
        fs = tuple(tuple(Fraction(c) for c in f) for f in self.functionals)
        ts = tuple(Fraction(t) for t in self.thresholds)
        if not fs:
            raise ValueError("a cone needs at least one functional")
        if len(fs) != len(ts):
            raise ValueError("functionals and thresholds must align")
        if len({len(f) for f in fs}) != 1:
            raise ValueError("functionals of mixed dimension")
        object.__setattr__(self, "functionals", fs)
        object.__setattr__(self, "thresholds", ts)

    @property
    def dim(self) -> int:
        return len(self.functionals[0])

    def contains(self, x: Sequence) -> bool:
        xs = [Fraction(c) for c in x]
        return all(
            sum((a * b for a, b in zip(f, xs)), Fraction(0)) > t
            for f, t in zip(self.functionals, self.thresholds)
        )

    def serialize(self) -> dict:
        return {
            "functionals": [[str(c) for c in f] for f in self.functionals],
            "thresholds": [str(t) for t in self.thresholds],
        }

    @classmethod
    def deserialize(cls, data) -> "AffineCone":
        return cls(
            tuple(tuple(Fraction(c) for c in f) for f in data["functionals"]),
            tuple(Fraction(t) for t in data["thresholds"]),
        )


def fourier_motzkin_feasible(constraints: list[tuple[tuple, str, Fraction]]) -> bool:
    """Exact feasibility of a system of rational linear constraints
    (coeffs, rel, rhs) with rel in {'>', '>='} meaning coeffs . x rel rhs."""
    rows = [
        ([Fraction(c) for c in coeffs], rel, Fraction(rhs))
        for coeffs, rel, rhs in constraints
    ]
    if not rows:
        return True
    dim = len(rows[0][0])
    for j in range(dim):
        pos, neg, zero = [], [], []
        for coeffs, rel, rhs in rows:
            cj = coeffs[j]
            if cj > 0:
                pos.append((coeffs, rel, rhs))
            elif cj < 0:
                neg.append((coeffs, rel, rhs))
            else:
                zero.append((coeffs, rel, rhs))
        new_rows = zero
        for pc, prel, prhs in pos:
            for nc, nrel, nrhs in neg:
                # combine to eliminate x_j: scale to cancel
                a, b = pc[j], -nc[j]
                coeffs = [b * pcoef + a * ncoef for pcoef, ncoef in zip(pc, nc)]
                rhs = b * prhs + a * nrhs
                rel = ">" if (prel == ">" or nrel == ">") else ">="
                new_rows.append((coeffs, rel, rhs))
        rows = new_rows
    for coeffs, rel, rhs in rows:
        if rel == ">" and not (0 > rhs):
            return False
        if rel == ">=" and not (0 >= rhs):
            return False
    return True


def is_admissible(cone: AffineCone, eta: WeightVector | None = None) -> bool:
    """The cone meets every sufficiently deep slope cone: it is nonempty and
    its recession cone contains a direction on which every slope functional
    -v_alpha * <., alpha_coroot> is strictly positive."""
    n = cone.dim
    if eta is None:
        eta = default_eta(n)
    if eta.tag.n != n:
        raise ValueError("cone dimension and eta rank disagree")
    nonempty = fourier_motzkin_feasible(
        [(f, ">", t) for f, t in zip(cone.functionals, cone.thresholds)]
    )
    if not nonempty:
        return False
    vals = _eta_pairings(eta)
    coroots = rootdata.simple_coroots(eta.tag)
    direction_constraints: list[tuple[tuple, str, Fraction]] = [
        (f, ">=", Fraction(0)) for f in cone.functionals
    ]
    for cr, v in zip(coroots, vals):
        # slope functional on the similitude-free coordinates
        coeffs = tuple(-v * c for c in cr.coords[1:])
        direction_constraints.append((coeffs, ">", Fraction(0)))
    return fourier_motzkin_feasible(direction_constraints)
