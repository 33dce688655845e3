import pytest

from dglift import (CycleViolation, DifferentialSquareNonzero, ParseError,
                    UndeclaredName, parse_algebra_element, parse_problem,
                    parse_ring, print_problem)
from dglift.dsl import default_module_weights

LIFTABLE = """ring R = QQ[x:1,y:1]/(x*y)
algebra B = R<X:1, Y:2 | dX = x, dY = X*y>
module N over B = <e:0, ep:4 | de = 0, dep = e*X*Y*y>
"""

NONLIFTABLE = """ring R = QQ[x:1,y:1]/(x^2, x*y)
algebra B = R<X:1, Y:2 | dX = x, dY = X*y>
module M over B = <u:0, up:4 | du = 0, dup = u*X*Y*x>
"""


def test_parse_liftable_example():
    p = parse_problem(LIFTABLE)
    assert p.ring_name == "R" and p.algebra_name == "B"
    N = p.modules["N"]
    assert N.degrees == (0, 4) and N.weights == (0, 4)
    B = p.algebra
    assert N.entry("e", "ep") == B.gen("X") * B.gen("Y") * B.ring.gen("y")


def test_parse_nonliftable_example():
    p = parse_problem(NONLIFTABLE)
    M = p.modules["M"]
    assert M.entry("u", "up").bidegree() == (3, 4)


def test_comments_and_blank_lines():
    text = "# heading\n\n" + LIFTABLE.replace("ring", "  ring", 1) \
        + "# trailing comment\n"
    assert parse_problem(text) == parse_problem(LIFTABLE)


def test_undeclared_name_carries_the_line():
    with pytest.raises(UndeclaredName) as info:
        parse_problem("ring R = QQ\nalgebra B = R<X:1, Z:3 | dX = 0, dZ = W>\n")
    assert info.value.line == 2


def test_construction_errors_carry_the_line():
    bad = "ring R = QQ[x:1,y:1]\nalgebra B = R<X:1, Y:2 | dX = x, dY = X*y>\n"
    with pytest.raises(CycleViolation) as info:
        parse_problem(bad)
    assert info.value.line == 2
    with pytest.raises(DifferentialSquareNonzero) as info:
        parse_problem(LIFTABLE + "module P over B = <a:0, b:2 | db = a*X>\n")
    assert info.value.line == 4


def test_round_trip_is_identity():
    for text in (LIFTABLE, NONLIFTABLE):
        p = parse_problem(text)
        printed = print_problem(p)
        assert parse_problem(printed) == p
        assert print_problem(parse_problem(printed)) == printed


def test_round_trip_with_annotations_and_scalars():
    text = """ring R = FF(5)[x:1,y:2]/(x^3)
algebra B = R<X:1:2 | dX = 0>
module T over B = <a:0:2, b:2 | da = 0, db = 2*a*X>
module S over B = <c:1 | dc = 0>
"""
    p = parse_problem(text)
    assert [v.weight for v in p.algebra.vars] == [2]
    assert p.modules["T"].weights == (2, 4)
    printed = print_problem(p)
    assert parse_problem(printed) == p


def test_rational_scalars_round_trip():
    text = LIFTABLE + "module Q over B = <a:0, b:4 | da = 0, db = 1/2*a*X*Y*y>\n"
    p = parse_problem(text)
    printed = print_problem(p)
    assert "1/2*a*X*Y*y" in printed
    assert parse_problem(printed) == p


def test_weight_annotation_conflict_rejected():
    with pytest.raises(ParseError):
        parse_problem("ring R = QQ[x:1,y:1]/(x*y)\n"
                      "algebra B = R<X:1:2 | dX = x>\n")
    with pytest.raises(ParseError):
        parse_problem(LIFTABLE.replace("ep:4", "ep:4:7"))


def test_default_weights_inference(module_n):
    assert default_module_weights(module_n) == [0, 4]


def test_single_declaration_constraints():
    with pytest.raises(ParseError):
        parse_problem(LIFTABLE + "ring S = QQ\n")
    with pytest.raises(ParseError):
        parse_problem(LIFTABLE + "algebra C = R<Z:1 | dZ = 0>\n")
    with pytest.raises(ParseError):
        parse_problem("algebra B = R<X:1 | dX = 0>\n")
    with pytest.raises(UndeclaredName):
        parse_problem("ring R = QQ\nalgebra B = S<X:1 | dX = 0>\n")
    with pytest.raises(UndeclaredName):
        parse_problem(LIFTABLE + "module P over C = <a:0 | da = 0>\n")


def test_duplicate_names_rejected():
    with pytest.raises(ParseError):
        parse_problem(LIFTABLE + "module N over B = <a:0 | da = 0>\n")


def test_positioned_syntax_errors():
    with pytest.raises(ParseError) as info:
        parse_problem("ring R = QQ[\n")
    assert info.value.line == 1
    with pytest.raises(ParseError) as info:
        parse_problem("ring R = QQ\nalgebra B = R<X:1 | dX = 0> trailing\n")
    assert info.value.line == 2
    with pytest.raises(ParseError):
        parse_problem("ring R = QQ\nwhatever Z = 1\n")


def test_ring_sub_grammar():
    assert parse_ring("QQ").is_field
    assert parse_ring("FF(7)").field.char == 7
    R = parse_ring("QQ[x:1,y:1]/(x*y, x^2)")
    assert R.relations == ((2, 0), (1, 1))
    with pytest.raises(ParseError):
        parse_ring("ZZ")
    with pytest.raises(ParseError):
        parse_ring("QQ[x:1]/(x + 1)")
    with pytest.raises(ParseError):
        parse_ring("FF(4)")


def test_algebra_element_expressions():
    p = parse_problem(LIFTABLE)
    B = p.algebra
    X, Y = B.gen("X"), B.gen("Y")
    y = B.ring.gen("y")
    assert parse_algebra_element(p, "X*Y*y + 2*Y^(2)") \
        == X * Y * y + 2 * B.divided_power("Y", 2)
    assert parse_algebra_element(p, "Y^2") == 2 * B.divided_power("Y", 2)
    assert not parse_algebra_element(p, "X^2")
    assert parse_algebra_element(p, "3 - 3") == B.zero()
    with pytest.raises(UndeclaredName):
        parse_algebra_element(p, "X*Q")
    with pytest.raises(ParseError):
        parse_algebra_element(p, "X*")


def test_label_must_lead_its_term():
    with pytest.raises(ParseError):
        parse_problem(LIFTABLE.replace("dep = e*X*Y*y", "dep = X*e*Y*y"))


def test_divided_power_of_odd_variable_rejected():
    p = parse_problem(LIFTABLE)
    with pytest.raises(ParseError):
        parse_algebra_element(p, "X^(2)")


def test_round_trip_on_random_problems():
    """print/parse is the identity across randomly generated problems,
    including prime-field scalars, fractions, and weight annotations."""
    import random

    from dglift.dsl import ProblemDescription
    from dglift.randomgen import random_algebra, random_module, standard_rings

    rng = random.Random(61)
    rings = standard_rings()
    for trial in range(40):
        ring = rings[rng.randrange(len(rings))]
        B = random_algebra(rng, ring)
        modules = {"M%d" % k: random_module(rng, B, max_rank=3)
                   for k in range(rng.randint(0, 2))}
        problem = ProblemDescription("R", ring, "B", B, modules)
        printed = print_problem(problem)
        reparsed = parse_problem(printed)
        assert reparsed == problem, printed
        assert print_problem(reparsed) == printed
