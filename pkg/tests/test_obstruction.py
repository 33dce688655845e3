import random

import pytest

from dglift import (Connection, SemifreeModule, TensorJElement,
                    canonical_connection, check_lift, criterion_rhs, delta,
                    obstruction_apply, obstruction_values, psi_apply,
                    psi_values, verify_certificate, verify_witness)
from dglift.obstruction import (LIFTABLE, METHOD_GLOBAL, METHOD_RANK2,
                                METHOD_TRIVIAL, NOT_LIFTABLE)
from dglift.randomgen import (example_algebras, random_algebra, random_gamma,
                              random_module, random_module_element,
                              random_partial_solution, standard_rings)
from dglift.selfcheck import (suite_connections, suite_decision, suite_homotopy,
                              suite_obstruction)


def test_obstruction_of_the_liftable_example(module_n):
    N = module_n
    B = N.algebra
    y = B.ring.gen("y")
    values = obstruction_values(N)
    assert not values["e"]
    assert values["ep"] == TensorJElement(
        N, {"e": delta(B.gen("X") * B.gen("Y") * y)})


def test_obstruction_vanishes_for_zero_differential(example_algebra):
    N = SemifreeModule(example_algebra, ("a", "b"), (0, 3), (0, 3), {})
    values = obstruction_values(N)
    assert not values["a"] and not values["b"]


def test_obstruction_modes_agree_on_examples(module_n, module_m):
    for N in (module_n, module_m):
        assert obstruction_values(N, "formula") == obstruction_values(N, "splitting")


def test_connection_examples(module_n):
    N = module_n
    B = N.algebra
    y = B.ring.gen("y")
    can = canonical_connection(N)
    for lab in N.labels:
        assert not can(N.gen(lab))
    v = N.gen("e") * (B.gen("X") * B.gen("Y") * y)
    assert can(v) == TensorJElement(N, {"e": delta(B.gen("X") * B.gen("Y") * y)})
    gamma = {"ep": TensorJElement(N, {"e": delta(B.divided_power("Y", 2))})}
    D = Connection(N, gamma)
    assert D(N.gen("ep")) == gamma["ep"]


def test_psi_examples(module_n):
    N = module_n
    B = N.algebra
    y = B.ring.gen("y")
    can = canonical_connection(N)
    values = psi_values(can)
    assert values["ep"] == -TensorJElement(
        N, {"e": delta(B.gen("X") * B.gen("Y") * y)})
    assert not values["e"]
    witness = Connection(N, {"ep": TensorJElement(
        N, {"e": delta(B.divided_power("Y", 2))})})
    assert not psi_apply(witness, N.gen("ep"))


def test_connection_bidegree_validation(module_n):
    N = module_n
    bad = TensorJElement(N, {"e": delta(N.algebra.gen("X") * N.algebra.gen("Y"))})
    with pytest.raises(Exception):
        Connection(N, {"ep": bad})


def test_liftable_example_decision(module_n):
    N = module_n
    report = check_lift(N)
    assert report.decision == LIFTABLE
    assert report.method == METHOD_RANK2
    assert verify_witness(N, report.witness)
    expected = TensorJElement(N, {"e": delta(N.algebra.divided_power("Y", 2))})
    assert report.witness["ep"] == expected


def test_nonliftable_example_decision(module_m):
    M = module_m
    report = check_lift(M)
    assert report.decision == NOT_LIFTABLE
    assert report.method == METHOD_RANK2
    assert report.certificate["source_dim"] == 4
    assert report.certificate["target_dim"] == 6
    assert report.certificate["rank"] == 4
    assert verify_certificate(M, report)
    report_global = check_lift(M, method="global")
    assert report_global.decision == NOT_LIFTABLE
    assert report_global.method == METHOD_GLOBAL
    assert verify_certificate(M, report_global)


def test_both_methods_agree_on_the_liftable_example(module_n):
    rank2 = check_lift(module_n, method="rank2")
    globally = check_lift(module_n, method="global")
    assert rank2.decision == globally.decision == LIFTABLE
    assert verify_witness(module_n, globally.witness)
    assert globally.witness["ep"] == rank2.witness["ep"]


def test_trivial_cases(example_algebra):
    one = SemifreeModule(example_algebra, ("e",), (0,), (0,), {})
    report = check_lift(one)
    assert report.decision == LIFTABLE and report.method == METHOD_TRIVIAL
    for rank in range(2, 6):
        labels = tuple("e%d" % i for i in range(rank))
        N = SemifreeModule(example_algebra, labels, tuple(range(rank)),
                           tuple(range(rank)), {})
        report = check_lift(N)
        assert report.decision == LIFTABLE and report.method == METHOD_TRIVIAL
        assert all(not v for v in report.obstruction.values())
        assert verify_witness(N, report.witness)


def test_verify_witness_examples(module_n):
    N = module_n
    good = {"ep": TensorJElement(N, {"e": delta(N.algebra.divided_power("Y", 2))})}
    assert verify_witness(N, good)
    assert not verify_witness(N, {})
    zero_diff = SemifreeModule(N.algebra, ("a",), (2,), (2,), {})
    assert verify_witness(zero_diff, {})


def _pool(rng):
    pool = list(example_algebras())
    rings = standard_rings()
    pool.append(random_algebra(rng, rings[rng.randrange(len(rings))]))
    return pool


def test_obstruction_mode_agreement_on_random_modules():
    rng = random.Random(41)
    pool = _pool(rng)
    for _ in range(100):
        B = pool[rng.randrange(len(pool))]
        N = random_module(rng, B)
        assert obstruction_values(N, "formula") == obstruction_values(N, "splitting")


def test_obstruction_is_right_linear_via_both_routes():
    rng = random.Random(42)
    pool = _pool(rng)
    checked = 0
    while checked < 60:
        B = pool[rng.randrange(len(pool))]
        N = random_module(rng, B)
        v = random_module_element(rng, N, rng.randint(0, 6), rng.randint(0, 6))
        assert obstruction_apply(N, v) == obstruction_apply(N, v, "splitting")
        checked += 1


def test_psi_of_canonical_connection_is_negative_obstruction():
    rng = random.Random(43)
    pool = _pool(rng)
    for _ in range(60):
        B = pool[rng.randrange(len(pool))]
        N = random_module(rng, B)
        can = canonical_connection(N)
        values = obstruction_values(N)
        for lab in N.labels:
            assert psi_apply(can, N.gen(lab)) == -values[lab]


def test_psi_is_right_linear():
    rng = random.Random(44)
    pool = _pool(rng)
    checked = 0
    while checked < 40:
        B = pool[rng.randrange(len(pool))]
        N = random_module(rng, B)
        D = Connection(N, random_gamma(rng, N))
        v = random_module_element(rng, N, rng.randint(0, 5), rng.randint(0, 5))
        from dglift.randomgen import random_algebra_element
        b = random_algebra_element(rng, B, rng.randint(0, 3), rng.randint(0, 3))
        assert psi_apply(D, v * b) == psi_apply(D, v) * b
        checked += 1


def test_partial_sum_cycles_along_partial_solutions():
    rng = random.Random(45)
    pool = _pool(rng)
    for _ in range(50):
        B = pool[rng.randrange(len(pool))]
        N = random_module(rng, B)
        gamma, blocked = random_partial_solution(rng, N)
        for lab in N.labels:
            assert not criterion_rhs(N, gamma, lab).diff()
            if lab == blocked:
                break
        if blocked is None:
            assert verify_witness(N, gamma)
            assert check_lift(N).decision == LIFTABLE


def test_rank2_and_global_decisions_agree():
    rng = random.Random(46)
    pool = _pool(rng)
    seen = {LIFTABLE: 0, NOT_LIFTABLE: 0}
    for _ in range(60):
        B = pool[rng.randrange(len(pool))]
        N = random_module(rng, B, max_rank=2)
        if N.rank != 2 or not N.structure:
            continue
        a = check_lift(N, method="rank2")
        b = check_lift(N, method="global")
        assert a.decision == b.decision
        seen[a.decision] += 1
        if a.decision == LIFTABLE:
            assert verify_witness(N, a.witness)
            assert verify_witness(N, b.witness)
    assert seen[LIFTABLE] > 0


def test_witness_and_certificate_suites():
    assert suite_obstruction(seed=201, trials=40) == 40
    assert suite_connections(seed=202, trials=40) == 40
    assert suite_homotopy(seed=203, trials=30) == 30
    assert suite_decision(seed=204, trials=25) == 25


def test_nonliftable_example_not_greedily_solvable(module_m):
    rng = random.Random(47)
    for _ in range(5):
        gamma, blocked = random_partial_solution(rng, module_m)
        assert blocked == "up"


def test_global_solve_succeeds_where_greedy_blocks():
    """Regression: the decision must solve one simultaneous system.

    Here the e2-equation has many solutions, but only gamma_e2 = e1 (x)
    delta(Y*y) also closes the e3-equation; a label-by-label solve that
    picks any other solution gets stuck at e3 even though the module lifts.
    """
    from dglift import parse_problem
    problem = parse_problem(
        "ring R = QQ[x:1,y:1]/(x^2, x*y)\n"
        "algebra B = R<X:1, Y:2 | dX = x, dY = X*y>\n"
        "module G over B = <e1:0:2, e2:2, e3:3 |"
        " de1 = 0, de2 = e1*X*y^2, de3 = -e1*Y*y + e2>\n")
    G = problem.modules["G"]
    report = check_lift(G)
    assert report.decision == LIFTABLE and report.method == METHOD_GLOBAL
    assert verify_witness(G, report.witness)
    B = G.algebra
    expected = TensorJElement(G, {"e1": delta(B.gen("Y") * B.ring.gen("y"))})
    assert report.witness["e2"] == expected
    blocked_count = 0
    for seed in range(6):
        gamma, blocked = random_partial_solution(random.Random(seed), G)
        if blocked is not None:
            assert blocked == "e3"
            blocked_count += 1
        else:
            assert verify_witness(G, gamma)
    assert blocked_count >= 4  # greedy gets stuck almost always
