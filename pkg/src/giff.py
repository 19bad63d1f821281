"""Formal diffeomorphisms x + O(x^2), their derivations, and the bridge into bimoulds.

Series coefficients are exact ``fractions.Fraction`` values. A ``PowerSeries`` of
order N stores a_0 = 1, a_1, ..., a_{N-1} for x + sum a_r x^(r+1); a ``Derivation``
stores eps_1, ..., eps_N for sum eps_r x^(r+1) d/dx.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import NamedTuple

from numpy.random import PCG64, Generator, SeedSequence

from .bimould import Bimould, lower_left, lower_right, lu, mu, push, swap, upper_left, upper_right
from .flexion import anit, ari, arit, expari
from .units import Primary, primary

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PowerSeries:
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if not coeffs or coeffs[0] != 1:
            raise ValueError("a power series in GIFF needs a_0 = 1")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_tail(cls, tail, order):
        """Series of the given order from a_1, a_2, ... (padded with zeros or cut)."""
        tail = [Fraction(c) for c in tail][:order - 1]
        return cls((Fraction(1),) + tuple(tail) + (Fraction(0),) * (order - 1 - len(tail)))

    @classmethod
    def from_dense(cls, dense, order):
        return cls(tuple(dense[1:order + 1]))

    @property
    def order(self):
        return len(self.coeffs)

    def a(self, r):
        return self.coeffs[r] if r < self.order else Fraction(0)

    def dense(self):
        """Coefficients of x^0 .. x^N."""
        return [Fraction(0)] + list(self.coeffs)


@dataclass(frozen=True)
class Derivation:
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def order(self):
        return len(self.coeffs)

    def eps(self, r):
        return self.coeffs[r - 1] if 1 <= r <= self.order else Fraction(0)

    def dense(self):
        """The vector field sum eps_r x^(r+1) as coefficients of x^0 .. x^(N+1)."""
        return [Fraction(0), Fraction(0)] + list(self.coeffs)


class CoproductTerm(NamedTuple):
    r: int
    parts: tuple


# ---------------------------------------------------------------------------
# dense truncated arithmetic, index = power of x, degrees 0..n

def _pad(a, n):
    return (list(a) + [Fraction(0)] * (n + 1))[:n + 1]


def _mul(a, b, n):
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a[:n + 1]):
        if x:
            for j, y in enumerate(b[:n + 1 - i]):
                if y:
                    out[i + j] += x * y
    return out


def _derivative(a):
    return [k * a[k] for k in range(1, len(a))] or [Fraction(0)]


def _divide(a, b, n):
    a, b = _pad(a, n), _pad(b, n)
    if not b[0]:
        raise ZeroDivisionError("series division needs an invertible constant term")
    out = [Fraction(0)] * (n + 1)
    for k in range(n + 1):
        acc = a[k] - sum(out[j] * b[k - j] for j in range(k))
        out[k] = acc / b[0]
    return out


def _compose(f, g, n):
    f = _pad(f, n)
    out = [Fraction(0)] * (n + 1)
    for coeff in reversed(f):
        out = _mul(out, g, n)
        out[0] += coeff
    return out


def _check_orders(*series):
    orders = {s.order for s in series}
    if len(orders) != 1:
        raise ValueError(f"series of different orders {sorted(orders)}")
    return orders.pop()


def ps_compose(f, g):
    """Truncated ``f∘g``."""
    n = _check_orders(f, g)
    return PowerSeries.from_dense(_compose(f.dense(), g.dense(), n), n)


def ps_inverse(f):
    """Compositional inverse, solved one coefficient at a time."""
    n = f.order
    g = identity_series(n).dense()
    for k in range(2, n + 1):
        excess = _compose(f.dense(), g, n)[k]
        g[k] -= excess
    return PowerSeries.from_dense(g, n)


def diff_bracket(a, b):
    """``[a, b]`` with ``[x^(r+1) d/dx, x^(s+1) d/dx] = (r - s) x^(r+s+1) d/dx``."""
    n = min(a.order, b.order)
    out = [Fraction(0)] * n
    for r in range(1, n + 1):
        for s in range(1, n + 1 - r):
            out[r + s - 1] += (r - s) * a.eps(r) * b.eps(s)
    return Derivation(tuple(out))


def apply_derivation(D, phi, n):
    """``D(phi) = (sum eps_r x^(r+1)) phi'`` truncated at degree n."""
    return _mul(D.dense(), _derivative(_pad(phi, n)), n)


def giff_exp(D):
    """``exp(D)(x) = sum_n D^n(x) / n!``, a series of order ``D.order + 1``."""
    n = D.order + 1
    term = _pad([0, 1], n)
    total = list(term)
    for m in range(1, n + 1):
        term = [c / m for c in apply_derivation(D, term, n)]
        if not any(term):
            break
        total = [x + y for x, y in zip(total, term)]
    return PowerSeries.from_dense(total, n)


def giff_log(f):
    """Infinitesimal generator ``f_*``: triangular solve of ``exp(f_*)(x) = f``."""
    eps = [Fraction(0)] * (f.order - 1)
    for r in range(1, f.order):
        guess = giff_exp(Derivation(tuple(eps)))
        eps[r - 1] = f.a(r) - guess.a(r)
    return Derivation(tuple(eps))


def dilator(f):
    """``f_#(x) = x - f(x)/f'(x)`` as a derivation of order ``f.order - 1``."""
    n = f.order
    dense = f.dense()
    quotient = _divide(dense, _derivative(dense), n)
    sharp = [-c for c in quotient]
    sharp[1] += 1
    return Derivation(tuple(sharp[2:n + 1]))


def compositions(total):
    """Ordered tuples of positive integers summing to ``total``."""
    if total == 0:
        return [()]
    return [(first,) + rest for first in range(1, total + 1) for rest in compositions(total - first)]


def giff_coproduct(N):
    """Index set of ``Δ(u_N) = sum_r sum_{m_1+...+m_r=N} u_r ⊗ u_{m_1}...u_{m_r}``."""
    if N < 2:
        raise ValueError("the coproduct is defined here for N >= 2")
    return [CoproductTerm(len(parts), parts) for parts in compositions(N)]


def coproduct_pairing(terms, f, g):
    """Pair the coproduct against ``f ⊗ g`` with ``u_k`` read as the x^k coefficient."""
    fd, gd = f.dense(), g.dense()
    total = Fraction(0)
    for term in terms:
        value = fd[term.r]
        for m in term.parts:
            value *= gd[m]
        total += value
    return total


# ---------------------------------------------------------------------------
# standard series

def identity_series(order):
    return PowerSeries.from_tail([], order)


def re_series(order):
    """``1 - exp(-x)``: a_r = (-1)^r / (r+1)!."""
    return PowerSeries.from_tail([Fraction((-1) ** r, factorial(r + 1)) for r in range(1, order)], order)


def re_inverse_series(order):
    """``-log(1 - x)``: a_r = 1/(r+1)."""
    return PowerSeries.from_tail([Fraction(1, r + 1) for r in range(1, order)], order)


def geometric_series(order):
    """``x/(1 - x)``: a_r = 1."""
    return PowerSeries.from_tail([1] * (order - 1), order)


def random_series(order, seed):
    rng = Generator(PCG64(SeedSequence([int(seed), order])))
    tail = [Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 5))) for _ in range(order - 1)]
    return PowerSeries.from_tail(tail, order)


def random_derivation(order, seed):
    rng = Generator(PCG64(SeedSequence([int(seed), order, 1])))
    return Derivation(tuple(Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 5))) for _ in range(order)))


def darapal_coefficients(m, n, order, shifted=False):
    """Both sides of the coefficient identity behind the darapal lemma for ``-log(1 - x)``.

    ``shifted=True`` uses binom(n, s-k+1) in place of binom(n, s-k).
    """
    gamma = dilator(re_inverse_series(order))
    lhs = Fraction(0)
    for s in range(1, m + n + 2):
        inner = 0
        for k in range(1, s + 1):
            inner += (s - k + 1) * comb(m, k - 1) * comb(n, s - k + 1 if shifted else s - k)
        lhs += (-1) ** s * gamma.eps(s) * inner
    rhs = -gamma.eps(m + n + 1) * (m + 1)
    return lhs, rhs


# ---------------------------------------------------------------------------
# the re family and the maps He, Se, Te

class ReFamily:
    """Memoized ``re_r`` and ``dro_r`` for one unit on one backend."""

    def __init__(self, unit, backend):
        self.unit = unit
        self.backend = backend
        self.E = unit.bimould(backend)
        self.O = unit.conjugate_bimould(backend)
        self.oz = primary(unit, Primary.OZ, backend)
        self._re = {}
        self._dro = {}
        self._re_explicit = {}
        self._dro_recursive = {}

    def conjugate(self):
        return ReFamily(self.unit.conjugate_unit(), self.backend)

    def _concentrated(self, r, fn, name):
        zero_value = self.backend.zero
        return Bimould(lambda w: fn(w) if len(w) == r else zero_value, self.backend, name)

    def re(self, r):
        if r not in self._re:
            self._re[r] = self.E if r == 1 else arit(self.re(r - 1))(self.E)
        return self._re[r]

    def re_explicit(self, r):
        """``E(⌈a w_r) re_{r-1}(a⌋w_r) - E(w_1⌉b) re_{r-1}(⌊w_1 b)`` with a, b the word minus its last, first letter."""
        if r == 1:
            return self.E
        if r not in self._re_explicit:
            E, prev = self.E, self.re_explicit(r - 1)

            def fn(w):
                head, last = w[:-1], w[-1:]
                first, tail = w[:1], w[1:]
                return (E(upper_left(head, last)) * prev(lower_right(head, last))
                        - E(upper_right(first, tail)) * prev(lower_left(first, tail)))

            self._re_explicit[r] = self._concentrated(r, fn, f"re_explicit{r}")
        return self._re_explicit[r]

    def dro(self, r):
        """Closed formula ``sum_i (r+1-i) oz(a⌋w_i) O(⌈a w_i⌉b) oz(⌊w_i b)``."""
        if r not in self._dro:
            O, oz, zero_value = self.O, self.oz, self.backend.zero

            def fn(w):
                total = zero_value
                for k, letter in enumerate(w):
                    a, center, b = w[:k], (letter,), w[k + 1:]
                    total = total + (r - k) * (
                        oz(lower_right(a, center))
                        * O(upper_right(upper_left(a, center), b))
                        * oz(lower_left(center, b))
                    )
                return total

            self._dro[r] = self._concentrated(r, fn, f"dro{r}")
        return self._dro[r]

    def dro_recursive(self, r):
        """``dro_r = mu(O, dro_{r-1}) - anit(push dro_{r-1})(O)``."""
        if r == 1:
            return self.O
        if r not in self._dro_recursive:
            prev = self.dro_recursive(r - 1)
            self._dro_recursive[r] = mu(self.O, prev) - anit(push(prev))(self.O)
        return self._dro_recursive[r]

    def aux_a(self, p, q):
        return ari(self.re(p), self.re(q)) - self.re(p + q).scale(p - q)

    def aux_d(self, p, q):
        """Defined for p >= 2."""
        re = self.re
        return arit(re(p - 1))(re(q + 1)) - arit(re(p))(re(q)) - re(p + q) + lu(re(p), re(q))

    def aux_e(self, p, q):
        re = self.re
        total = arit(re(p))(re(q)) - re(p + q).scale(q)
        for i in range(1, q):
            total = total - lu(re(i), re(p + q - i))
        return total


def he_map(family, D):
    """``sum eps_r re_r``, LieLike."""
    backend = family.backend
    top = min(D.order, backend.max_length)
    weights = {r: backend.const(D.eps(r)) for r in range(1, top + 1)}

    def fn(w):
        r = len(w)
        if r not in weights:
            return backend.zero
        return weights[r] * family.re(r)(w)

    return Bimould(fn, backend, "He")


def _series_for(family, f):
    if f.order <= family.backend.max_length:
        raise ValueError(f"series of order {f.order} is too short for truncation {family.backend.max_length}")
    return f


def se_map(family, f):
    return expari(he_map(family, giff_log(_series_for(family, f))))


def te_map(family, f):
    return he_map(family, dilator(_series_for(family, f)))


def dto(family, f):
    return swap(te_map(family, f))


def dso(family, f):
    return swap(se_map(family, f))


def o_star(family, f):
    """``1 + sum (r+1) a_r leng_r(oz)``."""
    backend = family.backend
    f = _series_for(family, f)
    weights = [backend.const((r + 1) * f.a(r)) for r in range(backend.max_length + 1)]

    def fn(w):
        if not w:
            return backend.one
        return weights[len(w)] * family.oz(w)

    return Bimould(fn, backend, "O*")


def secondary(family, which, order=None):
    """ess, oss, dess or doss."""
    order = order or family.backend.max_length + 1
    re = re_series(order)
    if which == "ess":
        return se_map(family, re)
    if which == "oss":
        return se_map(family.conjugate(), re)
    if which == "doss":
        return swap(se_map(family, re))
    if which == "dess":
        return swap(se_map(family.conjugate(), re))
    raise ValueError(f"unknown secondary bimould {which!r}")
