import random
from fractions import Fraction

import pytest

from gspin_kit.algebra_core import (
    LaurentPoly,
    TwistNotRepresentable,
    UniPoly,
    charpoly_to_power_sums,
    companion_matrix,
    find_twist_scalars,
    newton_to_charpoly,
    poly_from_roots,
    poly_mul,
    poly_one,
)

from helpers import charpoly_by_cofactor


def test_poly_mul_difference_of_squares():
    one_minus = UniPoly((1, -1))
    one_plus = UniPoly((1, 1))
    assert poly_mul(one_minus, one_plus) == UniPoly((1, 0, -1))


def test_poly_mul_identity():
    p = UniPoly((3, Fraction(1, 2), -2))
    assert poly_mul(p, poly_one()) == p


def test_poly_mul_expansion():
    assert poly_mul(UniPoly((1, -2)), UniPoly((1, -3))) == UniPoly((1, -5, 6))


def test_poly_mul_degree_additive():
    rng = random.Random(0)
    for _ in range(30):
        p = poly_from_roots([Fraction(rng.randint(-3, 3)) for _ in range(rng.randint(1, 4))])
        q = poly_from_roots([Fraction(rng.randint(-3, 3)) for _ in range(rng.randint(1, 4))])
        assert poly_mul(p, q).degree == p.degree + q.degree


def test_newton_simple_roots():
    assert newton_to_charpoly([3, 5], 2) == UniPoly((2, -3, 1))


def test_newton_identity_spectrum():
    for m in (1, 2, 3, 5):
        p = newton_to_charpoly([m] * m, m)
        assert p == poly_from_roots([1] * m)


def test_newton_derived_quartics():
    # oracle: expand the product over the chosen rational roots directly
    roots = [2, -2, 1, -1]
    sums = [sum(Fraction(r) ** k for r in roots) for k in range(1, 5)]
    assert sums == [0, 10, 0, 34]
    assert newton_to_charpoly(sums, 4) == poly_from_roots(roots)
    assert newton_to_charpoly(sums, 4) == UniPoly((4, 0, -5, 0, 1))

    roots = [2, -2, 0, 0]
    sums = [sum(Fraction(r) ** k for r in roots) for k in range(1, 5)]
    assert sums == [0, 8, 0, 32]
    assert newton_to_charpoly(sums, 4) == UniPoly((0, 0, -4, 0, 1))


def test_newton_length_guard():
    with pytest.raises(ValueError):
        newton_to_charpoly([1], 2)


def test_power_sums_examples():
    assert charpoly_to_power_sums(UniPoly((2, -3, 1)), 2) == [3, 5]
    assert charpoly_to_power_sums(poly_from_roots([1, 1, 1]), 3) == [3, 3, 3]
    # X^2 + 1: roots +-i, power sums continue past the degree
    assert charpoly_to_power_sums(UniPoly((1, 0, 1)), 4) == [0, -2, 0, 2]


def test_power_sums_monic_guard():
    with pytest.raises(ValueError):
        charpoly_to_power_sums(UniPoly((1, 2)), 1)


def test_newton_roundtrip_exhaustive_degree_8():
    # root pool fixed; every multiset up to degree 8 round-trips exactly
    pool = [Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2)]
    rng = random.Random(1)
    for deg in range(1, 9):
        for _ in range(12):
            roots = [rng.choice(pool) for _ in range(deg)]
            p = poly_from_roots(roots)
            sums = charpoly_to_power_sums(p, deg)
            assert newton_to_charpoly(sums, deg) == p


def test_companion_examples():
    assert companion_matrix(UniPoly((-5, 1))) == ((Fraction(5),),)
    m = companion_matrix(UniPoly((2, -3, 1)))
    assert m == ((Fraction(0), Fraction(-2)), (Fraction(1), Fraction(3)))
    m3 = companion_matrix(UniPoly((0, 0, 0, 1)))
    assert m3 == (
        (0, 0, 0),
        (1, 0, 0),
        (0, 1, 0),
    )


def test_companion_degree_guard():
    with pytest.raises(ValueError):
        companion_matrix(UniPoly((1,)))
    with pytest.raises(ValueError):
        companion_matrix(UniPoly((1, 2)))


def test_companion_charpoly_roundtrip():
    # independent determinant-expansion oracle
    rng = random.Random(2)
    for _ in range(20):
        deg = rng.randint(1, 6)
        coeffs = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(deg)]
        p = UniPoly(coeffs + [1])
        assert charpoly_by_cofactor(companion_matrix(p)) == p


def test_find_twist_identity():
    p = UniPoly((2, -3, 1))
    assert Fraction(1) in find_twist_scalars(p, p, 2)


def test_find_twist_examples():
    p = UniPoly((-4, 0, 1))
    q = UniPoly((-1, 0, 1))
    assert find_twist_scalars(p, q, 2) == {2, -2}
    assert find_twist_scalars(q, p, 2) == {Fraction(1, 2), Fraction(-1, 2)}


def test_find_twist_symbolic_verification():
    rng = random.Random(3)
    pool = [Fraction(1), Fraction(-2), Fraction(3), Fraction(1, 2), Fraction(-1, 3)]
    for _ in range(40):
        m = rng.randint(1, 5)
        roots = [rng.choice(pool) for _ in range(m)]
        lam = rng.choice([x for x in pool if x != 0])
        q = poly_from_roots(roots)
        p = poly_from_roots([lam * r for r in roots])
        found = find_twist_scalars(p, q, m)
        assert lam in found
        for lv in found:
            # p(X) - lam^m q(X/lam) == 0, checked coefficientwise
            assert all(p[k] == lv ** (m - k) * q[k] for k in range(m + 1))


def test_find_twist_irrational_reported():
    # roots of q scaled by sqrt(2): constant-ratio constraint has no
    # rational square root
    q = poly_from_roots([1, -1])
    p = poly_from_roots([2, -2])  # lambda^2 = 4: fine
    assert find_twist_scalars(p, q, 2) == {2, -2}
    p_bad = UniPoly((-2, 0, 1))  # X^2 - 2 = (X - sqrt2)(X + sqrt2)
    with pytest.raises(TwistNotRepresentable):
        find_twist_scalars(p_bad, q, 2)


def test_find_twist_no_twist():
    p = poly_from_roots([1, 2])
    q = poly_from_roots([1, 3])
    assert find_twist_scalars(p, q, 2) == set()


def test_find_twist_guards():
    with pytest.raises(ValueError):
        find_twist_scalars(UniPoly((1, 1)), UniPoly((1, 0, 1)), 2)
    with pytest.raises(ValueError):
        find_twist_scalars(UniPoly((0, 0, 1)), UniPoly((1, 0, 1)), 2)


def test_laurent_mul_commutative_associative():
    rng = random.Random(4)

    def rand_lp():
        terms = {}
        for _ in range(rng.randint(1, 5)):
            exp = tuple(rng.randint(-3, 3) for _ in range(3))
            terms[exp] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        return LaurentPoly(3, terms)

    for _ in range(25):
        a, b, c = rand_lp(), rand_lp(), rand_lp()
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)


def test_laurent_exact_division():
    a = LaurentPoly(2, {(1, 0): 1, (0, 1): -1})
    b = LaurentPoly(2, {(2, 0): 1, (0, 2): -1})
    q = b.exact_div(a)
    assert q * a == b


def test_laurent_evaluate_negative_exponents():
    lp = LaurentPoly(1, {(-2,): Fraction(3), (1,): 1})
    assert lp.evaluate((Fraction(2),)) == Fraction(3, 4) + 2
