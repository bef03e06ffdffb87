import random
from fractions import Fraction

import pytest

from gspin_kit import clifford
from gspin_kit.conjugacy import (
    GSpinTorusPoint,
    SemisimplicityError,
    canonicalize,
    go_chart,
    gspin_conjugate,
    in_bad_position,
    norm_one_lift,
    sign_twist_conjugate,
    spin_charpoly,
    spin_eigenvalues,
    spinor_norm_chart,
    std_charpoly,
    std_conjugate,
    std_eigenvalues,
    steinberg_conjugate,
    steinberg_conjugate_multivectors,
    to_multivector,
    weyl_orbit,
    weyl_translate,
)
from gspin_kit import rootdata
from gspin_kit.scalars import scalar_key


POOL = [Fraction(1), Fraction(-1), Fraction(2), Fraction(-2), Fraction(3), Fraction(1, 2)]


def rand_point(n, rng, pool=None):
    pool = pool or POOL
    return GSpinTorusPoint(
        n, rng.choice(pool), tuple(rng.choice(pool) for _ in range(n))
    )


def test_spin_eigenvalue_examples():
    t = GSpinTorusPoint(2, 1, (1, 1))
    assert spin_eigenvalues(t) == [1, 1, 1, 1]
    t = GSpinTorusPoint(2, 6, (2, 3))
    assert sorted(spin_eigenvalues(t)) == [1, 2, 3, 6]
    t = GSpinTorusPoint(2, 1, (2, 3))
    assert sorted(spin_eigenvalues(t)) == [Fraction(1, 6), Fraction(1, 3), Fraction(1, 2), 1]


def test_spin_eigenvalues_self_dual():
    rng = random.Random(30)
    for n in (2, 3):
        for _ in range(40):
            t = rand_point(n, rng)
            norm = spinor_norm_chart(t)
            eigs = spin_eigenvalues(t)
            dual = sorted((norm / v for v in eigs), key=scalar_key)
            assert dual == eigs


def test_std_eigenvalue_examples():
    t = GSpinTorusPoint(2, 5, (1, 1))
    assert std_eigenvalues(t) == [1, 1, 1, 1, 1]
    t = GSpinTorusPoint(2, 6, (2, 3))
    assert sorted(std_eigenvalues(t)) == [Fraction(1, 3), Fraction(1, 2), 1, 2, 3]
    t = GSpinTorusPoint(2, 5, (-1, 2))
    assert Fraction(-1) in std_eigenvalues(t)


def test_spinor_norm_examples():
    assert spinor_norm_chart(GSpinTorusPoint(2, 1, (1, 1))) == 1
    assert spinor_norm_chart(GSpinTorusPoint(2, 6, (2, 3))) == 6
    assert spinor_norm_chart(GSpinTorusPoint(3, 2, (1, 1, 4))) == 1


def test_chart_oracle_agreement():
    # closed forms vs the Clifford brute force
    rng = random.Random(31)
    for n in (2, 3):
        for _ in range(25):
            t = rand_point(n, rng)
            x = to_multivector(t)
            assert clifford.spinor_norm(x) == spinor_norm_chart(t)
            sm = clifford.spin_matrix(x)
            dim = 1 << n
            assert all(sm[i][j] == 0 for i in range(dim) for j in range(dim) if i != j)
            assert sorted((sm[i][i] for i in range(dim)), key=scalar_key) == spin_eigenvalues(t)
            m, sim = clifford.gspin_to_go(x)
            assert sorted((m[i][i] / sim for i in range(2 * n + 1)), key=scalar_key) == std_eigenvalues(t)


def test_go_chart_consistency():
    # the chart-change helper reproduces the diagonal of the conjugation image
    rng = random.Random(32)
    for _ in range(10):
        t = rand_point(2, rng)
        c_go, b = go_chart(t)
        m, sim = clifford.gspin_to_go(to_multivector(t))
        diag = [m[i][i] for i in range(5)]
        assert diag[2] == c_go
        assert sorted(diag[:2] + diag[3:], key=scalar_key) == sorted(
            list(b) + [c_go * c_go / bi for bi in b], key=scalar_key
        )


def test_gspin_conjugate_examples():
    t = GSpinTorusPoint(2, 6, (2, 3))
    for w in rootdata.enumerate_weyl(2):
        assert gspin_conjugate(t, weyl_translate(w, t))
    assert gspin_conjugate(t, GSpinTorusPoint(2, 3, (Fraction(1, 2), 3)))
    assert not gspin_conjugate(t, GSpinTorusPoint(2, 1, (2, 3)))


def test_steinberg_examples():
    t = GSpinTorusPoint(2, 6, (2, 3))
    assert steinberg_conjugate(t, t)
    assert steinberg_conjugate(t, GSpinTorusPoint(2, 3, (Fraction(1, 2), 3)))
    assert steinberg_conjugate(t, GSpinTorusPoint(2, 6, (3, 2)))


def test_steinberg_equivalence_exhaustive_rank2():
    pts = [
        GSpinTorusPoint(2, c, (a1, a2))
        for c in POOL
        for a1 in POOL
        for a2 in POOL
    ]
    invariants = [
        (tuple(map(str, spin_charpoly(t).coeffs)), str(spinor_norm_chart(t)))
        for t in pts
    ]
    canon = [(str(c.c), tuple(map(str, c.a))) for c in map(canonicalize, pts)]
    for i in range(len(pts)):
        for j in range(i, len(pts)):
            assert (invariants[i] == invariants[j]) == (canon[i] == canon[j])


def test_gspin_implies_steinberg_rank3():
    # the sound direction: conjugate classes share all invariants
    rng = random.Random(33)
    for _ in range(200):
        t = rand_point(3, rng)
        w = random.Random(rng.randint(0, 10**6)).choice(list(rootdata.enumerate_weyl(3)))
        assert steinberg_conjugate(t, weyl_translate(w, t))


def test_steinberg_criterion_rank3_counterexample():
    # Regression pin: equal spin characteristic polynomials and equal
    # spinor norms do NOT force conjugacy at rank 3.  The standard images
    # of this pair have different eigenvalue multisets, so the classes are
    # genuinely distinct; every such collision over the test pool has
    # repeated spin eigenvalues.  See the project decision log.
    t1 = GSpinTorusPoint(3, -1, (2, -1, 1))
    t2 = GSpinTorusPoint(3, 1, (-1, -1, -2))
    assert steinberg_conjugate(t1, t2)
    assert not gspin_conjugate(t1, t2)
    assert sorted(map(str, std_eigenvalues(t1))) != sorted(map(str, std_eigenvalues(t2)))
    eigs = spin_eigenvalues(t1)
    assert len(set(eigs)) < len(eigs)  # the collision is non-regular


def test_larsen_equivalence():
    rng = random.Random(34)
    pts = [GSpinTorusPoint(2, c, (a1, a2)) for c in POOL for a1 in POOL for a2 in POOL]
    for t in pts:
        assert sign_twist_conjugate(t) == in_bad_position(t)
    for _ in range(300):
        t = rand_point(3, rng)
        assert sign_twist_conjugate(t) == in_bad_position(t)


def test_bad_position_examples():
    assert not in_bad_position(GSpinTorusPoint(2, 7, (1, 1)))
    assert in_bad_position(GSpinTorusPoint(2, 5, (-1, 2)))
    assert not in_bad_position(GSpinTorusPoint(2, 5, (-4, 2)))
    assert sign_twist_conjugate(GSpinTorusPoint(2, 5, (-1, 2)))
    assert not sign_twist_conjugate(GSpinTorusPoint(2, 7, (1, 1)))
    assert sign_twist_conjugate(GSpinTorusPoint(3, 2, (-1, -1, 3)))


def test_std_conjugate():
    t = GSpinTorusPoint(2, 6, (2, 3))
    assert std_conjugate(t, t)
    # the quadratic twist is invisible to the standard criterion
    assert std_conjugate(t, GSpinTorusPoint(2, -6, (2, 3)))
    assert not gspin_conjugate(t, GSpinTorusPoint(2, -6, (2, 3)))
    # honest Weyl image: std multiset invariant under inverting a slot
    assert std_conjugate(t, GSpinTorusPoint(2, 3, (Fraction(1, 2), 3)))
    assert not std_conjugate(t, GSpinTorusPoint(2, 6, (2, 5)))


def test_std_conjugate_norm_one_matches_orbit_of_so_part():
    # on spinor-norm-one points the standard criterion sees exactly the
    # signed-permutation orbit of the a-part
    rng = random.Random(35)
    pool = [Fraction(2), Fraction(-2), Fraction(3), Fraction(1, 2), Fraction(-3)]

    def so_orbit(a):
        import itertools

        out = set()
        for perm in itertools.permutations(range(len(a))):
            for signs in itertools.product((1, -1), repeat=len(a)):
                out.add(
                    tuple(
                        a[p] if s == 1 else 1 / a[p] for p, s in zip(perm, signs)
                    )
                )
        return out

    count = 0
    while count < 60:
        a1 = tuple(rng.choice(pool) for _ in range(2))
        a2 = tuple(rng.choice(pool) for _ in range(2))
        prod1 = a1[0] * a1[1]
        prod2 = a2[0] * a2[1]
        from gspin_kit.scalars import rational_sqrt

        c1, c2 = rational_sqrt(prod1), rational_sqrt(prod2)
        if c1 is None or c2 is None:
            continue
        count += 1
        t1 = GSpinTorusPoint(2, c1, a1)
        t2 = GSpinTorusPoint(2, c2, a2)
        assert spinor_norm_chart(t1) == 1 and spinor_norm_chart(t2) == 1
        assert std_conjugate(t1, t2) == (a2 in so_orbit(a1))


def test_canonicalize_deterministic():
    rng = random.Random(36)
    for _ in range(30):
        t = rand_point(2, rng)
        c = canonicalize(t)
        for w in rootdata.enumerate_weyl(2):
            assert canonicalize(weyl_translate(w, t)) == c


def test_orbit_members_are_points():
    t = GSpinTorusPoint(2, 6, (2, 3))
    orb = weyl_orbit(t)
    assert len(orb) == 8
    assert all(isinstance(p, GSpinTorusPoint) for p in orb)


def test_multivector_criterion():
    ctx = clifford.get_context(2)
    x1 = clifford.torus_element(ctx, 6, [2, 3])
    w = clifford.weyl_representative(ctx, (2, 1), (1, -1))
    x2 = clifford.cliff_mul(clifford.cliff_mul(w, x1), clifford.cliff_inverse(w))
    assert steinberg_conjugate_multivectors(x1, x2)
    x3 = clifford.torus_element(ctx, 5, [2, 3])
    assert not steinberg_conjugate_multivectors(x1, x3)


def test_multivector_criterion_rejects_nonsemisimple():
    # torus element plus a nilpotent raising part: invertible, in GSpin,
    # but not diagonalizable
    ctx = clifford.get_context(2)
    t = clifford.torus_element(ctx, 1, [4, 9])
    e1 = clifford.Multivector.generator(ctx, 1)
    e4 = clifford.Multivector.generator(ctx, 4)
    u = clifford.Multivector.scalar(ctx, 1) + clifford.cliff_mul(e1, e4)
    x = clifford.cliff_mul(u, t)
    if clifford.is_gspin(x) and spin_unipotent_part_nontrivial(x):
        with pytest.raises(SemisimplicityError):
            steinberg_conjugate_multivectors(x, x)


def spin_unipotent_part_nontrivial(x):
    from gspin_kit.conjugacy import multivector_semisimple

    return not multivector_semisimple(x)


def test_norm_one_lift():
    pt, disc = norm_one_lift(2, (4, 1))
    assert disc is None and pt.c == 2 and spinor_norm_chart(pt) == 1
    pt, disc = norm_one_lift(3, (2, 1, 1))
    assert disc == 2
    assert spinor_norm_chart(pt) == 1


def test_serialization_roundtrip():
    t = GSpinTorusPoint(2, Fraction(-5, 3), (Fraction(2), Fraction(1, 7)))
    data = t.serialize()
    assert data == {"n": 2, "c": "-5/3", "a": ["2", "1/7"]}
    assert GSpinTorusPoint.deserialize(data) == t


def test_point_validation():
    with pytest.raises(ValueError):
        GSpinTorusPoint(2, 0, (1, 1))
    with pytest.raises(ValueError):
        GSpinTorusPoint(2, 1, (1, 0))
    with pytest.raises(ValueError):
        GSpinTorusPoint(2, 1, (1,))
