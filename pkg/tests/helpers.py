"""Shared test oracles, independent of the library paths they check."""
from __future__ import annotations

import random
from fractions import Fraction

from gspin_kit.algebra_core import UniPoly, poly_mul


def rand_fraction(rng: random.Random, num=6, den=3, nonzero=False) -> Fraction:
    while True:
        f = Fraction(rng.randint(-num, num), rng.randint(1, den))
        if not nonzero or f != 0:
            return f


def rand_nonzero(rng: random.Random, pool=None) -> Fraction:
    if pool is not None:
        return Fraction(rng.choice(pool))
    return rand_fraction(rng, nonzero=True)


# ---------------------------------------------------------------------------
# matrix helpers over exact scalars


def mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n))
        for i in range(n)
    )


def mat_identity(n):
    return tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n))


def charpoly_by_cofactor(m) -> UniPoly:
    """det(X I - m) by direct cofactor expansion over polynomial entries;
    independent oracle for companion/Newton code paths."""
    n = len(m)
    entries = [
        [
            UniPoly((-m[i][j], 1)) if i == j else UniPoly((-m[i][j],))
            for j in range(n)
        ]
        for i in range(n)
    ]
    return _poly_det(entries)


def _poly_det(rows) -> UniPoly:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = UniPoly()
    for j in range(n):
        minor = [[rows[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = poly_mul(rows[0][j], _poly_det(minor))
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


# ---------------------------------------------------------------------------
# brute-force adjoint trace on the antidiagonal orthogonal Lie algebra


def adjoint_trace_bruteforce(n: int, a: int, b: int) -> Fraction:
    """Trace of Ad(t) on {A : A + J A^t J^(-1) = 0} inside gl_{2n+1} for
    t = diag(1_a, -1_b, 1, -1_b, 1_a), computed entirely with matrices."""
    size = 2 * n + 1
    diag = [1] * a + [-1] * b + [1] + [-1] * b + [1] * a
    assert len(diag) == size

    def antitranspose_pair(i, j):
        return (size - 1 - j, size - 1 - i)

    basis = []
    seen = set()
    for i in range(size):
        for j in range(size):
            if (i, j) in seen:
                continue
            pi, pj = antitranspose_pair(i, j)
            if (pi, pj) == (i, j):
                continue  # forced zero by the defining relation
            seen.add((i, j))
            seen.add((pi, pj))
            mat = [[Fraction(0)] * size for _ in range(size)]
            mat[i][j] = Fraction(1)
            mat[pi][pj] = Fraction(-1)
            basis.append(((i, j), mat))
    assert len(basis) == n * (2 * n + 1)

    t_mat = tuple(
        tuple(Fraction(diag[i] if i == j else 0) for j in range(size)) for i in range(size)
    )
    t_inv = t_mat  # entries are +-1
    trace = Fraction(0)
    for (i, j), mat in basis:
        conj = mat_mul(mat_mul(t_mat, tuple(map(tuple, mat))), t_inv)
        trace += conj[i][j]  # basis element has entry 1 at its defining slot
    return trace
