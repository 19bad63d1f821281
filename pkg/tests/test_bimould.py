import pytest

from src.bimould import (
    ClassError,
    DualBackend,
    EvalBackend,
    ExactBackend,
    MuClass,
    Side,
    TruncationError,
    anti,
    der,
    flexion_mark,
    from_function,
    from_ratfun,
    gantar,
    invmu,
    leng,
    lower_left,
    lower_right,
    make_backend,
    mantar,
    mu,
    mu_power,
    neg,
    one,
    pari,
    pus,
    push,
    push_orbit_sum,
    random_bimould,
    restrict_min_length,
    swap,
    unary,
    upper_left,
    upper_right,
    zero,
)
from src.ratfun import canonical_string, compile_evaluator, ratfun_field
from src.scalar import ContextMismatch, DualNumber
from tests.helpers import assert_same, sample_words


def test_markers_on_generic_letters(exact3):
    w1, w2, w3 = exact3.generic(3)
    (u1, v1), (u2, v2), (u3, v3) = w1, w2, w3
    assert upper_left((w1,), (w2, w3)) == ((u1 + u2, v2), w3)
    assert upper_right((w1, w2), (w3,)) == (w1, (u2 + u3, v2))
    assert lower_left((w1,), (w2, w3)) == ((u2, v2 - v1), (u3, v3 - v1))
    assert lower_right((w1, w2), (w3,)) == ((u1, v1 - v3), (u2, v2 - v3))
    assert flexion_mark(Side.UPPER_LEFT, (w1,), (w2,)) == upper_left((w1,), (w2,))


def test_markers_ignore_empty_words(exact3):
    w1, w2, _ = exact3.generic(3)
    assert upper_left((), (w1,)) == (w1,)
    assert lower_right((w1,), ()) == (w1,)
    assert lower_right((), (w1,)) == ()
    assert lower_left((), (w1, w2)) == (w1, w2)


def test_truncation_and_classes(exact3):
    A = random_bimould(exact3, 1)
    with pytest.raises(TruncationError):
        A(exact3.generic(3) + exact3.generic(1))
    with pytest.raises(TruncationError):
        exact3.generic(4)
    assert one(exact3).mu_class is MuClass.GROUP_LIKE
    assert zero(exact3).mu_class is MuClass.LIE_LIKE
    assert random_bimould(exact3, 1, MuClass.LIE_LIKE).mu_class is MuClass.LIE_LIKE
    with pytest.raises(ClassError):
        invmu(random_bimould(exact3, 1, MuClass.LIE_LIKE))
    with pytest.raises(ClassError):
        gantar(zero(exact3))


def test_backends_do_not_mix():
    with pytest.raises(ContextMismatch):
        mu(one(ExactBackend(2)), one(ExactBackend(2)))
    with pytest.raises(ValueError):
        make_backend("float", 2)


def test_random_components_do_not_depend_on_truncation():
    small = random_bimould(ExactBackend(2), 11)
    big = random_bimould(ExactBackend(3), 11)
    for r in range(3):
        assert canonical_string(small.component(r)) == canonical_string(big.component(r))


def test_eval_values_match_exact_components():
    exact, evaluation = ExactBackend(3), EvalBackend(3)
    A, B = random_bimould(exact, 5), random_bimould(exact, 6)
    P, Q = random_bimould(evaluation, 5), random_bimould(evaluation, 6)
    product = mu(A, anti(B))
    for w in sample_words(evaluation, 3, 4):
        evaluate = compile_evaluator(product.component(3), evaluation.prime_field)
        assert evaluate([x for letter in w for x in letter]) == mu(P, anti(Q))(w)


def test_involutions(exact3):
    A = random_bimould(exact3, 2)
    for op in ("neg", "anti", "pari", "mantar", "swap"):
        twice = unary(unary(A, op), op)
        assert_same(twice, A)
    with pytest.raises(ValueError):
        unary(A, "flip")


def test_push_and_pus_cycles(exact3):
    A = random_bimould(exact3, 3)
    for r in range(1, 4):
        X, Y = A, A
        for _ in range(r + 1):
            X = push(X)
        for _ in range(r):
            Y = pus(Y)
        assert X.component(r) == A.component(r)
        assert Y.component(r) == A.component(r)


def test_negpush(eval4):
    A = random_bimould(eval4, 4)
    assert_same(neg(push(A)), anti(swap(anti(swap(A)))))


def test_mantar_reverses_mu(exact3):
    A, B = random_bimould(exact3, 7), random_bimould(exact3, 8)
    assert_same(mantar(mu(A, B)), -mu(mantar(B), mantar(A)))


def test_mu_group(eval4):
    G = random_bimould(eval4, 9, MuClass.GROUP_LIKE)
    A, B, C = (random_bimould(eval4, s) for s in (10, 11, 12))
    assert_same(mu(G, invmu(G)), one(eval4))
    assert_same(mu(invmu(G), G), one(eval4))
    assert_same(mu(mu(A, B), C), mu(A, mu(B, C)))
    assert_same(der(mu(A, B)), mu(der(A), B) + mu(A, der(B)))
    assert_same(mu_power(G, 3), mu(G, G, G))


def test_gantar_is_an_involution(eval4):
    G = random_bimould(eval4, 13, MuClass.GROUP_LIKE)
    assert_same(gantar(gantar(G)), G)


def test_length_restrictions(exact3):
    A = random_bimould(exact3, 14)
    assert not leng(A, 2).component(1)
    assert leng(A, 2).component(2) == A.component(2)
    F = restrict_min_length(A, 2)
    assert F.mu_class is MuClass.LIE_LIKE
    assert not F.component(1)
    assert F.component(3) == A.component(3)


def test_filtration(eval4):
    A = restrict_min_length(random_bimould(eval4, 15), 1)
    B = restrict_min_length(random_bimould(eval4, 16), 2)
    product = mu(A, B)
    for r in range(3):
        for w in sample_words(eval4, r):
            assert not product(w)


def test_push_orbit_of_a_unit_vanishes(exact3):
    u1, _ = ratfun_field(1).gens
    E = from_ratfun(1 / u1, 1, exact3)
    for n in range(1, 4):
        assert not push_orbit_sum(mu_power(E, n)).component(n)


def test_scaling_and_arithmetic(exact3):
    A = random_bimould(exact3, 17)
    assert_same(A * 2, A + A)
    assert_same(A - A, zero(exact3))
    assert_same(pari(pari(A)), A)


def test_dual_backend(eval4):
    dual = DualBackend(eval4)
    A, S = random_bimould(eval4, 18), random_bimould(eval4, 19, MuClass.LIE_LIKE)
    D = dual.dual_pair(A, S)
    assert D(()) == DualNumber(A(()), S(()))
    assert_same(dual.real_part(D), A)
    assert_same(dual.eps_part(D), S)
    assert_same(dual.eps_part(dual.lift(A)), zero(eval4))
    assert dual.one == eval4.one


def test_exact_components_are_in_normal_form(exact2):
    u1, v1, u2, v2 = exact2.field.gens
    A = from_ratfun(u2 / (u1 - u2), 2, exact2)
    X = from_function(lambda w: A(w[::-1]) if len(w) == 2 else exact2.zero, exact2, "reversed")
    assert X.component(2) == u1 / (u2 - u1)
    assert canonical_string(X.component(2)) == "-u1 / (u1 - u2)"
