from fractions import Fraction

import pytest
from sympy.polys.domains import QQ

from src.ratfun import (
    Axis,
    SubstitutionCollapse,
    VarIndex,
    budget_of,
    canonical_string,
    compile_evaluator,
    generic_word,
    normal_form,
    parse_ratfun,
    ratfun_arith,
    ratfun_eval,
    ratfun_field,
    substitute_linear,
    variable_names,
)
from src.scalar import MERSENNE_61, ContextMismatch, DivisionByZero, PrimeField


@pytest.fixture
def K2():
    return ratfun_field(2)


def test_variables_and_offsets():
    assert variable_names(2) == ["u1", "v1", "u2", "v2"]
    assert VarIndex(Axis.U, 1).offset == 0
    assert VarIndex(Axis.V, 2).offset == 3
    assert VarIndex(Axis.V, 2).name == "v2"
    assert budget_of(ratfun_field(3).one) == 3
    assert ratfun_field(2) is ratfun_field(2)


def test_canonical_string(K2):
    u1, v1, u2, v2 = K2.gens
    assert canonical_string(K2.zero) == "0"
    assert canonical_string(1 / u1) == "1 / (u1)"
    assert canonical_string((u1 + u2) / (2 * u1)) == "(u1 + u2) / (2*u1)"
    assert canonical_string((u1 / 2) / (v1 / 3)) == "3*u1 / (2*v1)"
    assert canonical_string(1 / (u1 * (u1 + u2))) == "1 / (u1^2 + u1*u2)"
    assert canonical_string(-1 / u1) == "-1 / (u1)"


def test_factored_string(K2):
    u1, _, u2, _ = K2.gens
    text = canonical_string(1 / (u1 * (u1 + u2)), factored=True)
    assert "(u1 + u2)" in text
    assert "u1" in text.split("/")[1]


def test_parse_round_trip(K2):
    u1, v1, u2, v2 = K2.gens
    f = (u1 - 3 * v2) / (u1 ** 2 + u1 * u2)
    assert parse_ratfun(canonical_string(f), 2) == f
    assert parse_ratfun("1/u1", 1) == 1 / ratfun_field(1).gens[0]
    with pytest.raises(ValueError):
        parse_ratfun("x + 1", 1)
    with pytest.raises(ValueError):
        parse_ratfun("u1 +* ", 1)


def test_substitute_linear(K2):
    u1, v1, u2, v2 = K2.gens
    ring_u1, ring_v1, ring_u2, ring_v2 = K2.ring.gens
    f = v1 / u1
    assert substitute_linear(f, [ring_u1 + ring_u2, ring_v1 - ring_v2]) == (v1 - v2) / (u1 + u2)
    # simultaneous replacement
    g = u1 / u2
    assert substitute_linear(g, [ring_u2, ring_v1, ring_u1, ring_v2]) == u2 / u1
    with pytest.raises(SubstitutionCollapse):
        substitute_linear(1 / (u1 - u2), [ring_u1, ring_v1, ring_u1, ring_v2])


def test_unreduced_substitution(K2):
    u1, v1, u2, v2 = K2.gens
    ring_u1, ring_v1, ring_u2, ring_v2 = K2.ring.gens
    f = (u1 + u2) / (u1 + v2)
    merged = [ring_u1, ring_v1, ring_u1, ring_u1]
    raw = substitute_linear(f, merged, reduce=False)
    assert raw.numer == raw.denom == 2 * ring_u1
    assert raw != K2.one
    assert normal_form(raw) == substitute_linear(f, merged) == K2.one
    assert ratfun_arith(raw, K2.one, "eq")
    assert canonical_string(raw) == "1 / (1)"


def test_generic_word(K2):
    (a, b), (c, d) = generic_word(K2, 2)
    assert [a, b, c, d] == list(K2.ring.gens)


def test_arith_checks_context(K2):
    u1 = K2.gens[0]
    other = ratfun_field(1).gens[0]
    assert ratfun_arith(u1, u1, "sub") == K2.zero
    with pytest.raises(ContextMismatch):
        ratfun_arith(u1, other, "add")
    with pytest.raises(DivisionByZero):
        ratfun_arith(u1, K2.zero, "div")


def test_exact_and_prime_evaluation(K2):
    u1, v1, _, _ = K2.gens
    f = (u1 + 2) / v1
    point = {VarIndex(Axis.U, 1): Fraction(1, 2), VarIndex(Axis.V, 1): 3}
    assert ratfun_eval(f, point) == QQ(5, 6)

    F = PrimeField(MERSENNE_61)
    evaluate = compile_evaluator(f, F)
    assert evaluate([F(7), F(3), F(0), F(0)]) == F(3)
    with pytest.raises(DivisionByZero):
        evaluate([F(7), F(0), F(0), F(0)])
    with pytest.raises(DivisionByZero):
        ratfun_eval(1 / u1, {VarIndex(Axis.U, 1): 0})
    with pytest.raises(ValueError):
        ratfun_eval(f, {VarIndex(Axis.U, 1): 1})
