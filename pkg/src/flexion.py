"""Inflected operations: the axit derivation family, the gaxit group family and
the combinators built from them.

Operators are returned as plain callables ``B -> Bimould``; ``arit(A)(B)`` reads
as in the notation. Convention for the derivation family: the argument ``B`` is
evaluated on the contracted word, the parameter ``A`` on the absorbed factor,

    amit(A)(B)(w) = sum over w = abc, b, c nonempty of B(a ⌈b c) A(b⌋ c)
    anit(A)(B)(w) = sum over w = abc, a, b nonempty of B(a⌉b c) A(⌊a b)
"""
import logging
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import NamedTuple

from .bimould import (
    Bimould,
    MuClass,
    _same_backend,
    _sum,
    anti,
    invmu,
    lower_left,
    lower_right,
    mu,
    neg,
    one,
    push,
    random_bimould,
    require_class,
    swap,
    upper_left,
    upper_right,
)

logger = logging.getLogger(__name__)

GAXIT_FORMS = ("sigma", "blocks")
_gaxit_form = "sigma"


def set_gaxit_form(form):
    """Select the default gaxit enumeration: ``sigma`` (single-letter centers) or ``blocks``."""
    global _gaxit_form
    if form not in GAXIT_FORMS:
        raise ValueError(f"unknown gaxit form {form!r}; expected one of {GAXIT_FORMS}")
    _gaxit_form = form
    logger.debug(f"gaxit form set to {form}")


def get_gaxit_form():
    return _gaxit_form


class OpPair(NamedTuple):
    left: Bimould
    right: Bimould


# ---------------------------------------------------------------------------
# derivation family

def _axit_value(A, A2, B, w, zero):
    r = len(w)
    total = zero
    if A is not None:
        for i in range(r):
            for j in range(i + 1, r):
                b, c = w[i:j], w[j:]
                total = total + B(w[:i] + upper_left(b, c)) * A(lower_right(b, c))
    if A2 is not None:
        for i in range(1, r):
            for j in range(i + 1, r + 1):
                a, b = w[:i], w[i:j]
                total = total + B(upper_right(a, b) + w[j:]) * A2(lower_left(a, b))
    return total


def _axit_operator(A, A2, name):
    def operator(B):
        backend = _same_backend(*[X for X in (A, A2, B) if X is not None])
        return Bimould(lambda w: _axit_value(A, A2, B, w, backend.zero), backend, name)

    return operator


def amit(A):
    require_class(A, MuClass.LIE_LIKE, "amit")
    return _axit_operator(A, None, "amit")


def anit(A):
    require_class(A, MuClass.LIE_LIKE, "anit")
    return _axit_operator(None, A, "anit")


def axit(A, A2):
    require_class(A, MuClass.LIE_LIKE, "axit")
    require_class(A2, MuClass.LIE_LIKE, "axit")
    return _axit_operator(A, A2, "axit")


def arit(A):
    return axit(A, -A)


def irat(A):
    return axit(A, -push(A))


def iwat(A):
    return axit(A, anti(A))


def preari(A, B):
    return arit(B)(A) + mu(A, B)


def ari(A, B):
    require_class(A, MuClass.LIE_LIKE, "ari")
    return preari(A, B) - preari(B, A)


# ---------------------------------------------------------------------------
# gaxit: decompositions are tuples of blocks (a_start, b_start, c_start, c_end)

@lru_cache(maxsize=None)
def center_decompositions(r):
    """Decompositions with single-letter centers: blocks (A_j; w_i; C_j) covering the word."""
    found = []

    def extend(blocks, a_start):
        for center in range(a_start, r):
            found.append(tuple(blocks + [(a_start, center, center + 1, r)]))
            for cut in range(center + 1, r):
                extend(blocks + [(a_start, center, center + 1, cut)], cut)

    if r:
        extend([], 0)
    return tuple(found)


@lru_cache(maxsize=None)
def block_decompositions(r):
    """Decompositions (a_i; b_i; c_i) with b_i nonempty and c_i a_{i+1} nonempty between blocks."""
    found = []

    def extend(blocks, a_start, need_a):
        first_b = a_start + 1 if need_a else a_start
        for b_start in range(first_b, r):
            for c_start in range(b_start + 1, r + 1):
                for c_end in range(c_start, r + 1):
                    block = (a_start, b_start, c_start, c_end)
                    if c_end == r:
                        found.append(tuple(blocks + [block]))
                    else:
                        extend(blocks + [block], c_end, c_end == c_start)

    if r:
        extend([], 0, False)
    return tuple(found)


_DECOMPOSITIONS = {"sigma": center_decompositions, "blocks": block_decompositions}


def _gaxit_term(w, blocks, A1, A2, B):
    contracted = ()
    weight = None
    for a_start, b_start, c_start, c_end in blocks:
        a, b, c = w[a_start:b_start], w[b_start:c_start], w[c_start:c_end]
        contracted += upper_right(upper_left(a, b), c)
        factor = A1(lower_right(a, b)) * A2(lower_left(b, c))
        weight = factor if weight is None else weight * factor
    return B(contracted) * weight


def gaxit(A1, A2, form=None):
    """The anti-action of the pair ``(A1, A2)`` on bimoulds."""
    require_class(A1, MuClass.GROUP_LIKE, "gaxit")
    require_class(A2, MuClass.GROUP_LIKE, "gaxit")
    decompositions = _DECOMPOSITIONS[form or _gaxit_form]

    def operator(B):
        backend = _same_backend(A1, A2, B)

        def fn(w):
            if not w:
                return B(w)
            return _sum((_gaxit_term(w, blocks, A1, A2, B) for blocks in decompositions(len(w))), backend.zero)

        return Bimould(fn, backend, "gaxit")

    return operator


def gamit(A):
    return gaxit(A, one(A.backend))


def ganit(A):
    return gaxit(one(A.backend), A)


def garit(A):
    return gaxit(A, invmu(A))


def girat(A):
    return gaxit(A, push(swap(invmu(swap(A)))))


def giwat(A):
    return gaxit(A, anti(A))


def gaxi(pA, pB):
    """Group law on pairs: ``(mu(gaxit(pB)(A1), B1), mu(B2, gaxit(pB)(A2)))``."""
    A1, A2 = pA
    B1, B2 = pB
    act = gaxit(B1, B2)
    return OpPair(mu(act(A1), B1), mu(B2, act(A2)))


# ---------------------------------------------------------------------------
# group laws

def gari(A, B):
    require_class(B, MuClass.GROUP_LIKE, "gari")
    return mu(garit(B)(A), B)


def gami(A, B):
    require_class(B, MuClass.GROUP_LIKE, "gami")
    return mu(gamit(B)(A), B)


def gani(A, B):
    require_class(B, MuClass.GROUP_LIKE, "gani")
    return mu(B, ganit(B)(A))


def solve_by_length(backend, make_stage, finish, name):
    """GroupLike ``X`` with ``X(w) = finish(stage_r(w), r)`` at each length r >= 1.

    ``make_stage(P)`` receives the proxy ``P`` equal to ``X`` below length r and 0
    from r on; the stage must only depend on ``X`` at lengths below r.
    """
    stages = {}

    def proxy(r):
        return Bimould(lambda w: solution(w) if len(w) < r else backend.zero, backend, f"{name}<{r}")

    def fn(w):
        r = len(w)
        if r == 0:
            return backend.one
        stage = stages.get(r)
        if stage is None:
            stage = stages[r] = make_stage(proxy(r))
        return finish(stage(w), r)

    solution = Bimould(fn, backend, name)
    return solution


def _group_inverse(A, product, name):
    require_class(A, MuClass.GROUP_LIKE, name)
    return solve_by_length(A.backend, lambda P: product(P, A), lambda value, r: -value, name)


def invgari(A):
    return _group_inverse(A, gari, "invgari")


def invgami(A):
    return _group_inverse(A, gami, "invgami")


def invgani(A):
    return _group_inverse(A, gani, "invgani")


def expari(A):
    """Lie exponential ``1 + sum_n preari(A, ..., A) / n!`` (left-nested)."""
    require_class(A, MuClass.LIE_LIKE, "expari")
    backend = A.backend
    powers = [A]
    for _ in range(1, backend.max_length):
        powers.append(preari(powers[-1], A))
    weights = [backend.const(Fraction(1, factorial(n))) for n in range(1, backend.max_length + 1)]

    def fn(w):
        if not w:
            return backend.one
        return _sum((weights[n] * powers[n](w) for n in range(len(w))), backend.zero)

    return Bimould(fn, backend, "expari")


def dilator_flow(D):
    """The GroupLike ``S`` with ``der(S) = preari(S, D)``."""
    require_class(D, MuClass.LIE_LIKE, "dilator_flow")
    backend = D.backend
    inverses = {}

    def finish(value, r):
        inv = inverses.get(r)
        if inv is None:
            inv = inverses[r] = backend.const(Fraction(1, r))
        return inv * value

    return solve_by_length(backend, lambda P: preari(P, D), finish, "dilator_flow")


# ---------------------------------------------------------------------------
# fraction, crash and slash combinators

def fragari(A, B):
    return gari(A, invgari(B))


def gira(A, B):
    return swap(gari(swap(A), swap(B)))


def invgira(A):
    return swap(invgari(swap(A)))


def fragira(A, B):
    return swap(fragari(swap(A), swap(B)))


def ras(B):
    return invgari(swap(invgari(swap(B))))


def rash(B):
    return mu(push(swap(invmu(swap(B)))), B)


def crash(B):
    inv = invgari(swap(B))
    return mu(push(swap(invmu(inv))), swap(inv))


def slash(A):
    return gari(neg(A), invgari(A))


# ---------------------------------------------------------------------------
# random inputs with a prescribed symmetry

def random_alternal(backend, seed, degree_bound=2):
    """``P + ari(P, Q) + ari(P, ari(P, Q))`` for random length-1 ``P`` and ``Q``."""
    P = random_bimould(backend, seed, MuClass.LIE_LIKE, degree_bound, lengths=(1,))
    Q = random_bimould(backend, seed + 1, MuClass.LIE_LIKE, degree_bound, lengths=(1,))
    PQ = ari(P, Q)
    return P + PQ + ari(P, PQ)
