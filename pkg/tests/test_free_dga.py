import random

import pytest

from dglift import (BaseRing, CycleViolation, ForwardReference, FreeDGAlgebra,
                    GradingViolation, QQ, Variable, parse_ring)
from dglift.randomgen import random_algebra, random_algebra_element, standard_rings


@pytest.fixture
def ring():
    return parse_ring("QQ[x:1,y:1]/(x*y)")


@pytest.fixture
def B(ring):
    x, y = ring.gen("x"), ring.gen("y")
    return FreeDGAlgebra(ring, [Variable("X", 1, 1), Variable("Y", 2, 2)],
                         {"X": {(0, 0): x}, "Y": {(1, 0): y}})


def test_example_algebra_accepted(B):
    assert [v.name for v in B.vars] == ["X", "Y"]
    assert B.diffs[0] == B.from_ring(B.ring.gen("x"))
    assert B.diffs[1] == B.gen("X") * B.ring.gen("y")


def test_cycle_violation_without_the_relation():
    ring = parse_ring("QQ[x:1,y:1]")
    x, y = ring.gen("x"), ring.gen("y")
    with pytest.raises(CycleViolation):
        FreeDGAlgebra(ring, [Variable("X", 1, 1), Variable("Y", 2, 2)],
                      {"X": {(0, 0): x}, "Y": {(1, 0): y}})


def test_empty_extension_is_the_ring(ring):
    B = FreeDGAlgebra(ring, [])
    assert B.one().diff() == B.zero()
    assert [B.render_mono(m) for m in B.monomial_basis(0)] == ["1"]
    assert B.monomial_basis(1) == []


def test_forward_reference_rejected(ring):
    with pytest.raises(ForwardReference):
        FreeDGAlgebra(ring, [Variable("X", 2, 1), Variable("Y", 3, 1)],
                      {"X": {(0, 1): ring.one()}})


def test_grading_violation_rejected(ring):
    x = ring.gen("x")
    with pytest.raises(GradingViolation):
        # dX has homological degree 0 but X claims degree 3
        FreeDGAlgebra(ring, [Variable("X", 3, 1)], {"X": {(0,): x}})
    with pytest.raises(GradingViolation):
        # internal degree of dX is 1, the variable claims 2
        FreeDGAlgebra(ring, [Variable("X", 1, 2)], {"X": {(0,): x}})


def test_product_examples(B):
    X, Y = B.gen("X"), B.gen("Y")
    assert not X * X
    assert Y * Y == 2 * B.divided_power("Y", 2)
    assert Y * X == X * Y
    assert not (X * Y) * X


def test_divided_power_ladder(B):
    Y = B.gen("Y")
    Y2, Y3 = B.divided_power("Y", 2), B.divided_power("Y", 3)
    assert Y2 * Y == 3 * Y3
    assert Y2 * Y2 == 6 * B.divided_power("Y", 4)


def test_differential_examples(B):
    X, Y = B.gen("X"), B.gen("Y")
    y = B.ring.gen("y")
    assert B.divided_power("Y", 2).diff() == X * Y * y
    assert (X * Y).diff() == Y * B.ring.gen("x")
    assert B.from_ring(B.ring.gen("x")).diff() == B.zero()


def test_basis_examples(B):
    assert [B.render_mono(m) for m in B.monomial_basis(3)] == ["X*Y"]
    assert [B.render_mono(m) for m in B.monomial_basis(0)] == ["1"]
    labelled = [(B.render_mono(m), B.ring.render_mono(r))
                for m, r in B.bidegree_basis(3, 4)]
    assert labelled == [("X*Y", "x"), ("X*Y", "y")]


def _pool(rng):
    algebras = []
    for ring in standard_rings():
        algebras.append(random_algebra(rng, ring))
    return algebras


def test_d_squared_zero_on_random_elements(B):
    rng = random.Random(11)
    pool = _pool(rng) + [B]
    checked = 0
    while checked < 200:
        A = pool[rng.randrange(len(pool))]
        a = random_algebra_element(rng, A, rng.randint(0, 6), rng.randint(0, 6))
        assert a.diff().diff() == A.zero()
        checked += 1


def test_leibniz_rule_on_random_homogeneous_pairs(B):
    rng = random.Random(12)
    pool = _pool(rng) + [B]
    checked = 0
    while checked < 150:
        A = pool[rng.randrange(len(pool))]
        a = random_algebra_element(rng, A, rng.randint(0, 5), rng.randint(0, 5))
        b = random_algebra_element(rng, A, rng.randint(0, 5), rng.randint(0, 5))
        if not a or not b:
            continue
        sign = -1 if a.bidegree()[0] % 2 else 1
        assert (a * b).diff() == a.diff() * b + sign * (a * b.diff())
        checked += 1


def test_graded_commutativity_on_random_pairs(B):
    rng = random.Random(13)
    pool = _pool(rng) + [B]
    checked = 0
    while checked < 150:
        A = pool[rng.randrange(len(pool))]
        a = random_algebra_element(rng, A, rng.randint(0, 5), rng.randint(0, 5))
        b = random_algebra_element(rng, A, rng.randint(0, 5), rng.randint(0, 5))
        if not a or not b:
            continue
        sign = -1 if (a.bidegree()[0] * b.bidegree()[0]) % 2 else 1
        assert a * b == sign * (b * a)
        checked += 1


def test_internal_degree_preserved_and_additive(B):
    rng = random.Random(14)
    pool = _pool(rng) + [B]
    checked = 0
    while checked < 120:
        A = pool[rng.randrange(len(pool))]
        n, w = rng.randint(0, 5), rng.randint(0, 5)
        a = random_algebra_element(rng, A, n, w)
        if not a:
            continue
        assert a.bidegree() == (n, w)
        da = a.diff()
        if da:
            assert da.bidegree() == (n - 1, w)
        b = random_algebra_element(rng, A, rng.randint(0, 4), rng.randint(0, 4))
        if b and a * b:
            nb, wb = b.bidegree()
            assert (a * b).bidegree() == (n + nb, w + wb)
        checked += 1


def test_odd_odd_anticommute():
    ring = BaseRing(QQ)
    A = FreeDGAlgebra(ring, [Variable("X", 1, 1), Variable("Z", 1, 1)])
    X, Z = A.gen("X"), A.gen("Z")
    assert Z * X == -(X * Z)
    assert not (X * Z) * X


def test_char_p_divided_powers():
    ring = parse_ring("FF(2)")
    A = FreeDGAlgebra(ring, [Variable("Y", 2, 2)])
    Y = A.gen("Y")
    # binomial(2,1) = 2 = 0 mod 2: the square of Y vanishes but Y^(2) persists
    assert not Y * Y
    assert A.divided_power("Y", 2) * Y == A.divided_power("Y", 3)
