"""Rational functions in the variables u1, v1, u2, v2, ... over the rationals.

Components are elements of sympy's sparse fraction field ``QQ(u1, v1, ..., uR, vR)``
with graded-lex order. Arithmetic keeps every value as a reduced numerator/denominator
pair. The only substitution flexion calculus needs is "replace each variable by an
integer linear form", handled by :func:`substitute_linear`; it can skip the
reduction and leave it to :func:`normal_form`.
"""
import logging
from enum import Enum
from functools import lru_cache
from math import gcd
from typing import NamedTuple

from sympy import Symbol, SympifyError, sympify
from sympy.polys.domains import QQ
from sympy.polys.fields import field as make_field
from sympy.polys.orderings import grlex

from .scalar import ContextMismatch, DivisionByZero, PrimeFieldElem, rational

logger = logging.getLogger(__name__)


class SubstitutionCollapse(ArithmeticError):
    """A substitution sent a denominator to the zero polynomial."""


class Axis(Enum):
    U = "u"
    V = "v"


class VarIndex(NamedTuple):
    axis: Axis
    position: int

    @property
    def name(self):
        return f"{self.axis.value}{self.position}"

    @property
    def offset(self):
        """Generator index in the order u1, v1, u2, v2, ..."""
        return 2 * (self.position - 1) + (0 if self.axis is Axis.U else 1)


def variable_names(budget):
    return [f"{axis}{i}" for i in range(1, budget + 1) for axis in ("u", "v")]


@lru_cache(maxsize=None)
def ratfun_field(budget):
    """The field ``QQ(u1, v1, ..., uR, vR)`` for a variable budget ``R``."""
    K, *_ = make_field(",".join(variable_names(max(budget, 1))), QQ, grlex)
    return K


def budget_of(f):
    return f.field.ring.ngens // 2


def letter(field, position):
    """The letter ``(u_i; v_i)`` as a pair of linear forms."""
    gens = field.ring.gens
    return gens[2 * position - 2], gens[2 * position - 1]


def generic_word(field, r):
    return tuple(letter(field, i) for i in range(1, r + 1))


def normal_form(f):
    """``f`` with common factors cancelled and the denominator's leading coefficient made canonical."""
    return f.field.new(f.numer, f.denom)


def ratfun_arith(a, b=None, op="add"):
    """Apply ``op`` in {add, sub, mul, div, neg, eq} to rational functions."""
    if op == "neg":
        return -a
    if a.field != b.field:
        raise ContextMismatch("rational functions over different variable budgets")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise DivisionByZero("division by the zero rational function")
        return a / b
    if op == "eq":
        return normal_form(a) == normal_form(b)
    raise ValueError(f"unknown rational-function operation {op!r}")


def substitute_linear(f, args, reduce=True):
    """Replace u1, v1, u2, v2, ... in ``f`` by the linear forms ``args`` simultaneously.

    With ``reduce=False`` the numerator and denominator are composed but not cancelled
    against each other; pass the result through :func:`normal_form` before comparing it.
    Linearly independent forms keep a reduced fraction reduced, so only the
    denominator's sign and content are left to fix in that case.
    """
    if len(args) % 2:
        raise ValueError("substitution needs one (u, v) pair per letter")
    if f.numer.is_ground and f.denom.is_ground:
        return f
    ring = f.field.ring
    replacements = list(zip(ring.gens[:len(args)], args))
    numer = f.numer.compose(replacements)
    denom = f.denom.compose(replacements)
    if not denom:
        raise SubstitutionCollapse(f"denominator of {canonical_string(f)} vanishes under substitution")
    if not reduce:
        return f.field.raw_new(numer, denom)
    return f.field.new(numer, denom)


def _compile_terms(poly, coerce):
    return [
        (coerce(coeff), tuple((i, e) for i, e in enumerate(monom) if e))
        for monom, coeff in poly.terms()
    ]


def _eval_terms(terms, xs, zero):
    total = zero
    for coeff, powers in terms:
        term = coeff
        for i, e in powers:
            term = term * xs[i] ** e
        total = total + term
    return total


def compile_evaluator(f, prime_field):
    """Return ``xs -> f(xs)`` over ``prime_field``, ``xs`` flat in the order u1, v1, ..."""
    def coerce(c):
        return prime_field.from_rational(int(QQ.numer(c)), int(QQ.denom(c)))

    numer = _compile_terms(f.numer, coerce)
    denom = _compile_terms(f.denom, coerce)
    zero = prime_field.zero

    def evaluate(xs):
        den = _eval_terms(denom, xs, zero)
        if not den:
            raise DivisionByZero("evaluation point lies on the pole locus")
        return _eval_terms(numer, xs, zero) / den

    return evaluate


def ratfun_eval(f, point):
    """Evaluate ``f`` at ``point`` (a ``{VarIndex: scalar}`` table)."""
    xs = [None] * f.field.ring.ngens
    for index, value in point.items():
        xs[index.offset] = value
    used = {i for poly in (f.numer, f.denom) for monom in poly.monoms() for i, e in enumerate(monom) if e}
    missing = [i for i in used if xs[i] is None]
    if missing:
        raise ValueError(f"point does not assign {[f.field.symbols[i] for i in missing]}")
    sample = next((x for x in xs if x is not None), None)
    if isinstance(sample, PrimeFieldElem):
        return compile_evaluator(f, sample.field)(xs)
    xs = [x if x is None else rational(*_parts(x)) for x in xs]
    den = _eval_terms(_compile_terms(f.denom, lambda c: c), xs, QQ.zero)
    if not den:
        raise DivisionByZero("evaluation point lies on the pole locus")
    return _eval_terms(_compile_terms(f.numer, lambda c: c), xs, QQ.zero) / den


def _parts(x):
    return int(x.numerator), int(x.denominator)


def _integer_normal_form(f):
    """Numerator and denominator with coprime integer coefficients, denominator LC > 0."""
    cn, numer = f.numer.clear_denoms()
    cd, denom = f.denom.clear_denoms()
    numer, denom = numer * cd, denom * cn
    content = 0
    for coeff in list(numer.coeffs()) + list(denom.coeffs()):
        content = gcd(content, int(QQ.numer(coeff)))
    if content > 1:
        numer = numer.quo_ground(QQ(content))
        denom = denom.quo_ground(QQ(content))
    if denom.LC < 0:
        numer, denom = -numer, -denom
    return numer, denom


def _monomial_string(symbols, monom):
    return "*".join(
        str(symbol) if e == 1 else f"{symbol}^{e}"
        for symbol, e in zip(symbols, monom) if e
    )


def _poly_string(poly):
    symbols = poly.ring.symbols
    pieces = []
    for monom, coeff in poly.terms():
        coeff = int(QQ.numer(coeff))
        mono = _monomial_string(symbols, monom)
        magnitude = abs(coeff)
        if not mono:
            body = str(magnitude)
        elif magnitude == 1:
            body = mono
        else:
            body = f"{magnitude}*{mono}"
        if not pieces:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f" + {body}" if coeff > 0 else f" - {body}")
    return "".join(pieces) or "0"


def _factored_string(poly):
    content, factors = poly.factor_list()
    parts = []
    for factor, mult in factors:
        text = _poly_string(factor)
        if len(factor.terms()) > 1:
            text = f"({text})"
        parts.append(text if mult == 1 else f"{text}^{mult}")
    content = QQ.to_sympy(content) if content != 1 else None
    if content is not None:
        parts.insert(0, str(content))
    return "*".join(parts) or "1"


def canonical_string(f, factored=False):
    """Deterministic text ``numerator / (denominator)``; ``0`` for the zero function."""
    if not f:
        return "0"
    numer, denom = _integer_normal_form(normal_form(f))
    if factored:
        return f"{_factored_string(numer)} / ({_factored_string(denom)})"
    text = _poly_string(numer)
    if len(numer.terms()) > 1:
        text = f"({text})"
    return f"{text} / ({_poly_string(denom)})"


def parse_ratfun(text, budget):
    """Read a rational function in u1, v1, ... (``^`` or ``**`` for powers)."""
    field = ratfun_field(budget)
    names = variable_names(max(budget, 1))
    try:
        expr = sympify(text.replace("^", "**"), locals={name: Symbol(name) for name in names})
    except (SympifyError, SyntaxError, TypeError) as e:
        raise ValueError(f"cannot parse rational function {text!r}: {e}") from e
    foreign = {str(s) for s in expr.free_symbols} - set(names)
    if foreign:
        raise ValueError(f"rational function uses unknown variables {sorted(foreign)}")
    return field.from_expr(expr)
