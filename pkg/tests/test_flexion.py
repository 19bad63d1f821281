import pytest

from src.bimould import ClassError, DualBackend, MuClass, der, mu, one, random_bimould
from src.flexion import (
    OpPair,
    amit,
    anit,
    ari,
    arit,
    axit,
    block_decompositions,
    center_decompositions,
    dilator_flow,
    expari,
    gami,
    gamit,
    gani,
    ganit,
    gari,
    garit,
    gaxi,
    gaxit,
    get_gaxit_form,
    girat,
    invgami,
    invgani,
    invgari,
    irat,
    preari,
    random_alternal,
    set_gaxit_form,
)
from src.verify import is_alternal, is_symmetral
from tests.helpers import assert_same


def lie(backend, seed, lengths=None):
    return random_bimould(backend, seed, MuClass.LIE_LIKE, lengths=lengths)


def group(backend, seed):
    return random_bimould(backend, seed, MuClass.GROUP_LIKE)


def test_derivation_family(exact3):
    P, P2 = lie(exact3, 1), lie(exact3, 2)
    A, B = random_bimould(exact3, 3), random_bimould(exact3, 4)
    for X in (axit(P, P2), arit(P), amit(P), anit(P2)):
        assert_same(X(mu(A, B)), mu(X(A), B) + mu(A, X(B)))


def test_amit_length_two_example(exact2):
    (u1, v1), (u2, v2) = exact2.generic(2)
    P, B = lie(exact2, 5, (1,)), lie(exact2, 6, (1,))
    value = amit(P)(B)(exact2.generic(2))
    assert value == B(((u1 + u2, v2),)) * P(((u1, v1 - v2),))


def test_parameters_must_be_lie_like(exact2):
    with pytest.raises(ClassError):
        arit(one(exact2))
    with pytest.raises(ClassError):
        ari(random_bimould(exact2, 1), lie(exact2, 2))
    with pytest.raises(ClassError):
        gari(lie(exact2, 1), lie(exact2, 2))


def test_ari_lie_algebra(exact3):
    P, Q, R = lie(exact3, 7), lie(exact3, 8), lie(exact3, 9)
    assert_same(ari(P, Q), -ari(Q, P))
    jacobi = ari(P, ari(Q, R)) + ari(Q, ari(R, P)) + ari(R, ari(P, Q))
    for r in range(4):
        assert not jacobi.component(r)


def test_ari_of_letters_is_alternal(exact3):
    P, Q = lie(exact3, 10, (1,)), lie(exact3, 11, (1,))
    assert is_alternal(ari(P, Q))
    assert not is_alternal(lie(exact3, 12))


def test_random_alternal_and_expari(exact3):
    P = random_alternal(exact3, 13)
    assert is_alternal(P)
    assert is_symmetral(expari(P))


def test_decomposition_counts():
    assert center_decompositions(0) == ()
    assert center_decompositions(1) == (((0, 0, 1, 1),),)
    assert len(center_decompositions(2)) == 3
    assert block_decompositions(1) == (((0, 0, 1, 1),),)


def test_gaxit_forms_agree(eval4):
    G1, G2, B = group(eval4, 14), group(eval4, 15), random_bimould(eval4, 16)
    assert_same(gaxit(G1, G2, "sigma")(B), gaxit(G1, G2, "blocks")(B))


def test_gaxit_form_setting():
    previous = get_gaxit_form()
    set_gaxit_form("blocks")
    try:
        assert get_gaxit_form() == "blocks"
    finally:
        set_gaxit_form(previous)
    with pytest.raises(ValueError):
        set_gaxit_form("ribbons")


def test_gaxit_is_an_anti_action(eval4):
    pA = (group(eval4, 17), group(eval4, 18))
    pB = (group(eval4, 19), group(eval4, 20))
    M = random_bimould(eval4, 21)
    assert_same(gaxit(*pB)(gaxit(*pA)(M)), gaxit(*gaxi(pA, pB))(M), points=3)


def test_gaxi_accepts_plain_pairs(eval4):
    pA = (group(eval4, 26), group(eval4, 27))
    unit = one(eval4)
    neutral = gaxi(pA, (unit, unit))
    assert isinstance(neutral, OpPair)
    assert_same(neutral.left, pA[0], points=3)
    assert_same(neutral.right, pA[1], points=3)
    from_pairs = gaxi(OpPair(*pA), OpPair(unit, unit))
    assert_same(from_pairs.left, neutral.left, points=3)


def test_gaxit_is_multiplicative(eval4):
    X = gaxit(group(eval4, 22), group(eval4, 23))
    A, B = random_bimould(eval4, 24), random_bimould(eval4, 25)
    assert_same(X(mu(A, B)), mu(X(A), X(B)), points=3)


@pytest.mark.parametrize("law,inverse", [(gari, invgari), (gami, invgami), (gani, invgani)])
def test_group_inverses(eval4, law, inverse):
    G = group(eval4, 26)
    unit = one(eval4)
    assert_same(law(inverse(G), G), unit, points=3)
    assert_same(law(G, inverse(G)), unit, points=3)
    assert_same(law(G, unit), G, points=3)


def test_gari_is_associative(exact3):
    G, H, K = group(exact3, 27), group(exact3, 28), group(exact3, 29)
    assert_same(gari(gari(G, H), K), gari(G, gari(H, K)))


def test_linearization_by_dual_numbers(exact3):
    dual = DualBackend(exact3)
    A, S, M = random_bimould(exact3, 30), lie(exact3, 31), random_bimould(exact3, 32)
    shifted = dual.dual_pair(one(exact3), S)
    lifted = dual.lift(M)
    assert_same(dual.eps_part(gari(dual.lift(A), shifted)), preari(A, S))
    assert_same(dual.eps_part(garit(shifted)(lifted)), arit(S)(M))
    assert_same(dual.eps_part(gamit(shifted)(lifted)), amit(S)(M))
    assert_same(dual.eps_part(ganit(shifted)(lifted)), anit(S)(M))
    assert_same(dual.eps_part(girat(shifted)(lifted)), irat(S)(M))
    assert_same(dual.real_part(garit(shifted)(lifted)), M)


def test_dilator_flow(eval4):
    D = lie(eval4, 33)
    S = dilator_flow(D)
    assert S.mu_class is MuClass.GROUP_LIKE
    assert_same(der(S), preari(S, D), points=3)



def test_separation_of_gaxit(eval4):
    G1, G2, M = group(eval4, 36), group(eval4, 37), random_bimould(eval4, 38)
    Y = gamit(invgami(G1))(G2)
    assert_same(gaxit(G1, G2)(M), gamit(G1)(ganit(Y)(M)), lengths=range(4), points=2)
