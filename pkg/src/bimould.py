"""Bimoulds, flexion markers, the unary operator family and the uninflected product.

A word is a tuple of letters ``(u, v)``. A :class:`Bimould` is a memoized map from
words to values; which values depends on the backend it was built on:

* ``ExactBackend``: rational functions in ``u1, v1, ..., uL, vL``. Each component is
  materialized once at the generic word, in normal form, and every other word is
  reached by substituting linear forms into it without cancelling.
* ``EvalBackend``: residues modulo a large prime, letters are random field points.
* ``DualBackend``: ``DualNumber`` values over either of the two above.

Every operator below is written once against words and works on all three.
"""
import logging
from enum import Enum
from fractions import Fraction

from numpy.random import PCG64, Generator, SeedSequence
from sympy.polys.fields import FracElement

from .ratfun import compile_evaluator, generic_word, normal_form, ratfun_field, substitute_linear
from .scalar import ContextMismatch, DualNumber, default_prime_field, rational

logger = logging.getLogger(__name__)


class ClassError(ValueError):
    """An operation received a bimould of the wrong mu-class."""


class TruncationError(IndexError):
    """A word longer than the truncation length was requested."""


class MuClass(Enum):
    GROUP_LIKE = "GroupLike"
    LIE_LIKE = "LieLike"
    GENERAL = "General"


class Side(Enum):
    UPPER_LEFT = "upper_left"
    UPPER_RIGHT = "upper_right"
    LOWER_LEFT = "lower_left"
    LOWER_RIGHT = "lower_right"


# ---------------------------------------------------------------------------
# flexion markers

def _u_total(word):
    total = word[0][0]
    for u, _ in word[1:]:
        total = total + u
    return total


def upper_left(context, target):
    """``⌈context target``: the first u of ``target`` absorbs the u-sum of ``context``."""
    if not context or not target:
        return target
    u, v = target[0]
    return ((u + _u_total(context), v),) + target[1:]


def upper_right(target, context):
    """``target⌉context``: the last u of ``target`` absorbs the u-sum of ``context``."""
    if not context or not target:
        return target
    u, v = target[-1]
    return target[:-1] + ((u + _u_total(context), v),)


def lower_left(context, target):
    """``⌊context target``: every v of ``target`` minus the last v of ``context``."""
    if not context or not target:
        return target
    pivot = context[-1][1]
    return tuple((u, v - pivot) for u, v in target)


def lower_right(target, context):
    """``target⌋context``: every v of ``target`` minus the first v of ``context``."""
    if not context or not target:
        return target
    pivot = context[0][1]
    return tuple((u, v - pivot) for u, v in target)


def flexion_mark(side, context, target):
    if side is Side.UPPER_LEFT:
        return upper_left(context, target)
    if side is Side.UPPER_RIGHT:
        return upper_right(target, context)
    if side is Side.LOWER_LEFT:
        return lower_left(context, target)
    if side is Side.LOWER_RIGHT:
        return lower_right(target, context)
    raise ValueError(f"unknown flexion marker {side!r}")


# ---------------------------------------------------------------------------
# backends

class ExactBackend:
    name = "exact"

    def __init__(self, max_length):
        self.max_length = max_length
        self.field = ratfun_field(max_length)
        self.one = self.field.one
        self.zero = self.field.zero
        self._generic = [generic_word(self.field, r) for r in range(max_length + 1)]
        self._lifted = {}

    def __repr__(self):
        return f"ExactBackend(max_length={self.max_length})"

    def const(self, q):
        q = Fraction(q)
        return self.field.ground_new(rational(q.numerator, q.denominator))

    def generic(self, r):
        if r > self.max_length:
            raise TruncationError(f"length {r} exceeds truncation {self.max_length}")
        return self._generic[r]

    def substitute(self, value, word, reduce=True):
        if isinstance(value, DualNumber):
            return DualNumber(self.substitute(value.real, word, reduce), self.substitute(value.eps, word, reduce))
        return substitute_linear(value, [x for letter in word for x in letter], reduce)

    def normalize(self, value):
        if isinstance(value, DualNumber):
            return DualNumber(self.normalize(value.real), self.normalize(value.eps))
        return normal_form(value) if isinstance(value, FracElement) else value

    def from_ratfun(self, f, word):
        lifted = self._lifted.get(f)
        if lifted is None:
            lifted = self._lifted[f] = f.set_field(self.field)
        return self.substitute(lifted, word)

    def make_evaluator(self, fn):
        comps = {}
        memo = {}
        generic = self._generic

        def evaluate(word):
            r = len(word)
            comp = comps.get(r)
            if comp is None:
                comp = comps[r] = self.normalize(fn(generic[r]))
            if word == generic[r]:
                return comp
            value = memo.get(word)
            if value is None:
                # left unreduced; the next arithmetic step or normalize() cancels
                value = memo[word] = self.substitute(comp, word, reduce=False)
            return value

        return evaluate


class EvalBackend:
    name = "eval"

    def __init__(self, max_length, prime_field=None):
        self.max_length = max_length
        self.prime_field = prime_field or default_prime_field()
        self.one = self.prime_field.one
        self.zero = self.prime_field.zero
        self._compiled = {}

    def __repr__(self):
        return f"EvalBackend(max_length={self.max_length}, p={self.prime_field.modulus})"

    def const(self, q):
        q = Fraction(q)
        return self.prime_field.from_rational(q.numerator, q.denominator)

    def sample_word(self, r, rng):
        draw = self.prime_field.random_element
        return tuple((draw(rng), draw(rng)) for _ in range(r))

    def from_ratfun(self, f, word):
        evaluate = self._compiled.get(f)
        if evaluate is None:
            evaluate = self._compiled[f] = compile_evaluator(f, self.prime_field)
        return evaluate([x for letter in word for x in letter])

    def make_evaluator(self, fn):
        memo = {}

        def evaluate(word):
            try:
                return memo[word]
            except KeyError:
                value = memo[word] = fn(word)
                return value

        return evaluate


class DualBackend:
    """Values ``real + eps·ε`` (ε² = 0) over a base backend; letters stay base letters."""

    name = "dual"

    def __init__(self, base):
        self.base = base
        self.max_length = base.max_length
        self.one = DualNumber(base.one, base.zero)
        self.zero = DualNumber(base.zero, base.zero)

    def __repr__(self):
        return f"DualBackend({self.base!r})"

    def const(self, q):
        return DualNumber(self.base.const(q), self.base.zero)

    def generic(self, r):
        return self.base.generic(r)

    def sample_word(self, r, rng):
        return self.base.sample_word(r, rng)

    def from_ratfun(self, f, word):
        return DualNumber(self.base.from_ratfun(f, word), self.base.zero)

    def make_evaluator(self, fn):
        return self.base.make_evaluator(fn)

    def lift(self, A):
        _require_backend(A, self.base)
        zero = self.base.zero
        return Bimould(lambda w: DualNumber(A(w), zero), self, f"lift({A.name})")

    def dual_pair(self, real, eps):
        """The bimould ``real + ε·eps`` from two base bimoulds."""
        _require_backend(real, self.base)
        _require_backend(eps, self.base)
        return Bimould(lambda w: DualNumber(real(w), eps(w)), self, "dual")

    def real_part(self, D):
        _require_backend(D, self)
        return Bimould(lambda w: _real(D(w)), self.base, f"re({D.name})")

    def eps_part(self, D):
        _require_backend(D, self)
        zero = self.base.zero
        return Bimould(lambda w: _eps(D(w), zero), self.base, f"eps({D.name})")


def _real(value):
    return value.real if isinstance(value, DualNumber) else value


def _eps(value, zero):
    return value.eps if isinstance(value, DualNumber) else zero


def make_backend(kind, max_length, prime_field=None):
    if kind == "exact":
        return ExactBackend(max_length)
    if kind == "eval":
        return EvalBackend(max_length, prime_field)
    raise ValueError(f"unknown backend {kind!r}; expected 'exact' or 'eval'")


# ---------------------------------------------------------------------------
# the bimould type

def _require_backend(A, backend):
    if A.backend is not backend:
        raise ContextMismatch(f"bimould {A.name} lives on {A.backend!r}, expected {backend!r}")


def _same_backend(*bimoulds):
    backend = bimoulds[0].backend
    for other in bimoulds[1:]:
        _require_backend(other, backend)
    return backend


class Bimould:
    """A truncated bimould: ``A(word)`` for every word of length at most ``max_length``."""

    def __init__(self, fn, backend, name="bimould"):
        self.backend = backend
        self.name = name
        self._evaluate = backend.make_evaluator(fn)

    def __repr__(self):
        return f"Bimould({self.name}, {self.backend!r})"

    @property
    def max_length(self):
        return self.backend.max_length

    def __call__(self, word):
        if len(word) > self.backend.max_length:
            raise TruncationError(f"{self.name}: word of length {len(word)} beyond truncation {self.max_length}")
        return self._evaluate(word)

    def component(self, r):
        """The length-r component as a rational function (exact backends)."""
        return self(self.backend.generic(r))

    @property
    def mu_class(self):
        c = self(())
        if c == self.backend.one:
            return MuClass.GROUP_LIKE
        if not c:
            return MuClass.LIE_LIKE
        return MuClass.GENERAL

    def __add__(self, other):
        if not isinstance(other, Bimould):
            return NotImplemented
        _same_backend(self, other)
        return Bimould(lambda w: self(w) + other(w), self.backend, "add")

    def __sub__(self, other):
        if not isinstance(other, Bimould):
            return NotImplemented
        _same_backend(self, other)
        return Bimould(lambda w: self(w) - other(w), self.backend, "sub")

    def __neg__(self):
        return Bimould(lambda w: -self(w), self.backend, "minus")

    def scale(self, c):
        c = self.backend.const(c)
        return Bimould(lambda w: c * self(w), self.backend, "scale")

    def __mul__(self, c):
        if isinstance(c, Bimould):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__


def require_class(A, mu_class, op):
    if A.mu_class is not mu_class:
        raise ClassError(f"{op} needs a {mu_class.value} bimould, {A.name} is {A.mu_class.value}")


def one(backend):
    """The unit bimould ``1 = (1, 0, 0, ...)``."""
    return Bimould(lambda w: backend.zero if w else backend.one, backend, "1")


def zero(backend):
    return Bimould(lambda w: backend.zero, backend, "0")


def from_ratfun(f, length, backend, name="ratfun"):
    """Bimould concentrated at ``length`` whose component is ``f`` in u1, v1, ..."""
    return Bimould(
        lambda w: backend.from_ratfun(f, w) if len(w) == length else backend.zero,
        backend, name,
    )


def from_function(fn, backend, name="formula"):
    return Bimould(fn, backend, name)


def leng(A, r):
    """The length-r part of ``A``."""
    zero_value = A.backend.zero
    return Bimould(lambda w: A(w) if len(w) == r else zero_value, A.backend, f"leng{r}")


def restrict_min_length(A, m):
    """``A`` with every component of length below ``m`` removed (a Fil^{>=m} element)."""
    zero_value = A.backend.zero
    return Bimould(lambda w: A(w) if len(w) >= m else zero_value, A.backend, f"fil{m}")


# ---------------------------------------------------------------------------
# unary operators

def _neg_word(w):
    return tuple((-u, -v) for u, v in w)


def _push_word(w):
    if not w:
        return w
    r = len(w)
    last_v = w[-1][1]
    head = (-_u_total(w), -last_v)
    return (head,) + tuple((w[i][0], w[i][1] - last_v) for i in range(r - 1))


def _swap_word(w):
    r = len(w)
    prefix = []
    total = None
    for u, _ in w:
        total = u if total is None else total + u
        prefix.append(total)
    letters = []
    for j in range(r):
        k = r - 1 - j
        u = w[k][1] if k + 1 == r else w[k][1] - w[k + 1][1]
        letters.append((u, prefix[k]))
    return tuple(letters)


def neg(A):
    return Bimould(lambda w: A(_neg_word(w)), A.backend, "neg")


def anti(A):
    return Bimould(lambda w: A(w[::-1]), A.backend, "anti")


def pari(A):
    return Bimould(lambda w: -A(w) if len(w) % 2 else A(w), A.backend, "pari")


def pus(A):
    return Bimould(lambda w: A(w[-1:] + w[:-1]), A.backend, "pus")


def push(A):
    return Bimould(lambda w: A(_push_word(w)), A.backend, "push")


def mantar(A):
    """``mantar(A)(w) = -(-1)^r A(reversed w)``."""
    return Bimould(lambda w: A(w[::-1]) if len(w) % 2 else -A(w[::-1]), A.backend, "mantar")


def swap(A):
    return Bimould(lambda w: A(_swap_word(w)), A.backend, "swap")


def gantar(A):
    require_class(A, MuClass.GROUP_LIKE, "gantar")
    return invmu(pari(anti(A)))


UNARY = {
    "neg": neg,
    "anti": anti,
    "pari": pari,
    "pus": pus,
    "push": push,
    "mantar": mantar,
    "swap": swap,
    "gantar": gantar,
}


def unary(A, op):
    if op not in UNARY:
        raise ValueError(f"unknown unary operator {op!r}")
    return UNARY[op](A)


def push_orbit_sum(A):
    """``(id + push + ... + push^r)(A)`` at each length r."""
    def fn(w):
        total = A(w)
        for _ in range(len(w)):
            w = _push_word(w)
            total = total + A(w)
        return total

    return Bimould(fn, A.backend, "pushsum")


# ---------------------------------------------------------------------------
# products

def _sum(values, start):
    total = start
    for value in values:
        total = total + value
    return total


def mu(*factors):
    """The uninflected product, left-folded over two or more factors."""
    if len(factors) < 2:
        raise ValueError("mu needs at least two factors")
    backend = _same_backend(*factors)
    result = factors[0]
    for B in factors[1:]:
        result = _mu2(result, B, backend)
    return result


def _mu2(A, B, backend):
    zero_value = backend.zero
    return Bimould(
        lambda w: _sum((A(w[:i]) * B(w[i:]) for i in range(len(w) + 1)), zero_value),
        backend, "mu",
    )


def lu(A, B):
    return mu(A, B) - mu(B, A)


def mu_power(A, n):
    if n == 0:
        return one(A.backend)
    if n == 1:
        return A
    return mu(*([A] * n))


def invmu(A):
    """Inverse for mu, solved length by length."""
    require_class(A, MuClass.GROUP_LIKE, "invmu")
    backend = A.backend

    def fn(w):
        if not w:
            return backend.one
        return -_sum((A(w[:k]) * inverse(w[k:]) for k in range(1, len(w) + 1)), backend.zero)

    inverse = Bimould(fn, backend, "invmu")
    return inverse


def der(A):
    return Bimould(lambda w: len(w) * A(w), A.backend, "der")


def gepar(A):
    sA = swap(A)
    return mu(anti(sA), sA)


# ---------------------------------------------------------------------------
# random inputs

def _rng(*tags):
    return Generator(PCG64(SeedSequence([int(t) for t in tags])))


def random_polynomial_terms(seed, r, degree_bound, n_terms=4):
    """Sparse integer polynomial in 2r variables as ``[(coeff, ((index, exponent), ...)), ...]``."""
    rng = _rng(seed, r)
    terms = []
    for _ in range(n_terms):
        degree = int(rng.integers(0, degree_bound + 1))
        exponents = [0] * (2 * r)
        for index in rng.integers(0, 2 * r, size=degree):
            exponents[int(index)] += 1
        magnitude = int(rng.integers(1, 10))
        sign = -1 if rng.integers(0, 2) else 1
        powers = tuple((i, e) for i, e in enumerate(exponents) if e)
        terms.append((sign * magnitude, powers))
    return terms


def random_bimould(backend, seed, mu_class=MuClass.GENERAL, degree_bound=2, lengths=None):
    """Seeded bimould with random sparse polynomial components.

    Component r only depends on ``(seed, r)``, so two backends or two truncation
    lengths given the same seed agree wherever both are defined.
    """
    if mu_class is MuClass.GROUP_LIKE:
        head = backend.one
    elif mu_class is MuClass.LIE_LIKE:
        head = backend.zero
    else:
        head = backend.const(int(_rng(seed, 0).integers(1, 10)))
    wanted = None if lengths is None else frozenset(lengths)
    tables = {}

    def fn(w):
        r = len(w)
        if r == 0:
            return head
        if wanted is not None and r not in wanted:
            return backend.zero
        terms = tables.get(r)
        if terms is None:
            terms = tables[r] = [(backend.const(c), powers) for c, powers in random_polynomial_terms(seed, r, degree_bound)]
        xs = [x for letter in w for x in letter]
        total = backend.zero
        for coeff, powers in terms:
            term = coeff
            for i, e in powers:
                term = term * xs[i] ** e
            total = total + term
        return total

    return Bimould(fn, backend, f"random[{seed}]")
