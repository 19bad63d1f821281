"""Scalar arithmetic shared by every higher module.

Two contexts exist: exact rationals (sympy's ``QQ`` ground domain, always in
lowest terms) and a large prime field used by the probabilistic evaluation
backend. ``DualNumber`` extends either of them by an ``eps`` with ``eps**2 = 0``.
"""
import logging
import operator
import os
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from sympy import isprime
from sympy.polys.domains import QQ

logger = logging.getLogger(__name__)

MERSENNE_61 = (1 << 61) - 1  # 2305843009213693951
MIN_MODULUS_BITS = 61


class DivisionByZero(ZeroDivisionError):
    """Division by a zero scalar; in the evaluation backend this is a pole hit."""


class ContextMismatch(ValueError):
    """Scalars from two different field contexts were combined."""


class FieldKind(Enum):
    EXACT = "exact"
    PRIME = "prime"


@dataclass(frozen=True)
class FieldContext:
    kind: FieldKind
    modulus: Optional[int] = None

    def __str__(self):
        if self.kind is FieldKind.PRIME:
            return f"GF({self.modulus})"
        return "QQ"


EXACT = FieldContext(FieldKind.EXACT)


def rational(numerator, denominator=1):
    """Normalized exact rational ``numerator/denominator``."""
    if denominator == 0:
        raise DivisionByZero(f"rational {numerator}/0")
    return QQ(int(numerator), int(denominator))


def _as_fraction_parts(value):
    # ints, fractions.Fraction, gmpy2.mpq and sympy's PythonMPQ all expose these
    try:
        return int(value.numerator), int(value.denominator)
    except AttributeError:
        return None


class PrimeField:
    """The field of residues modulo a prime ``p >= 2**60``.

    Instances are cached per modulus so a context is validated only once.
    """

    _instances = {}

    def __new__(cls, modulus=MERSENNE_61):
        modulus = int(modulus)
        field = cls._instances.get(modulus)
        if field is None:
            if modulus.bit_length() < MIN_MODULUS_BITS:
                raise ValueError(f"prime modulus must be at least 2^60, got {modulus}")
            if not isprime(modulus):
                raise ValueError(f"modulus {modulus} is not prime")
            field = super().__new__(cls)
            field.modulus = modulus
            field.context = FieldContext(FieldKind.PRIME, modulus)
            cls._instances[modulus] = field
            logger.debug(f"Validated prime field context {field.context}")
        return field

    def __getnewargs__(self):
        return (self.modulus,)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("PrimeField", self.modulus))

    def __repr__(self):
        return f"PrimeField({self.modulus})"

    def __call__(self, value):
        if isinstance(value, PrimeFieldElem):
            if value.field.modulus != self.modulus:
                raise ContextMismatch(f"{value.field} vs {self}")
            return value
        parts = _as_fraction_parts(value)
        if parts is None:
            raise TypeError(f"cannot coerce {value!r} into {self}")
        return self.from_rational(*parts)

    @property
    def zero(self):
        return PrimeFieldElem(0, self)

    @property
    def one(self):
        return PrimeFieldElem(1, self)

    def from_rational(self, numerator, denominator=1):
        p = self.modulus
        denominator %= p
        if denominator == 0:
            raise DivisionByZero(f"denominator vanishes modulo {p}")
        return PrimeFieldElem(numerator * pow(denominator, -1, p), self)

    def random_element(self, rng):
        """Uniform residue drawn from a numpy ``Generator``."""
        return PrimeFieldElem(int.from_bytes(rng.bytes(16), "big"), self)


def default_prime_field(modulus=None):
    """Prime field from an explicit modulus, else ``FLEXION_PRIME``, else 2^61 - 1."""
    if modulus is None:
        modulus = os.getenv("FLEXION_PRIME") or MERSENNE_61
    return PrimeField(int(modulus))


class PrimeFieldElem:
    __slots__ = ("residue", "field")

    def __init__(self, residue, field):
        self.residue = residue % field.modulus
        self.field = field

    def _coerce(self, other):
        if isinstance(other, PrimeFieldElem):
            if other.field.modulus != self.field.modulus:
                raise ContextMismatch(f"{other.field} vs {self.field}")
            return other.residue
        if isinstance(other, int):
            return other % self.field.modulus
        parts = _as_fraction_parts(other)
        if parts is None:
            return None
        return self.field.from_rational(*parts).residue

    def _new(self, residue):
        return PrimeFieldElem(residue, self.field)

    def __add__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self._new(self.residue + b)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self._new(self.residue - b)

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self._new(b - self.residue)

    def __mul__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self._new(self.residue * b)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.residue)

    def __pos__(self):
        return self

    def inverse(self):
        if self.residue == 0:
            raise DivisionByZero(f"inverse of zero in {self.field}")
        return self._new(pow(self.residue, -1, self.field.modulus))

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        if b == 0:
            raise DivisionByZero(f"division by zero in {self.field}")
        return self._new(self.residue * pow(b, -1, self.field.modulus))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self.inverse() * b

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return self._new(pow(self.residue, exponent, self.field.modulus))

    def __eq__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self.residue == b

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash((self.residue, self.field.modulus))

    def __bool__(self):
        return self.residue != 0

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"{self.residue} (mod {self.field.modulus})"

    def __str__(self):
        return str(self.residue)


class DualNumber:
    """``real + eps * ε`` with ``ε**2 = 0`` over any scalar or rational-function field."""

    __slots__ = ("real", "eps")

    def __init__(self, real, eps):
        self.real = real
        self.eps = eps

    @staticmethod
    def _parts(other):
        if isinstance(other, DualNumber):
            return other.real, other.eps
        return other, None

    def __add__(self, other):
        r, e = self._parts(other)
        return DualNumber(self.real + r, self.eps if e is None else self.eps + e)

    __radd__ = __add__

    def __sub__(self, other):
        r, e = self._parts(other)
        return DualNumber(self.real - r, self.eps if e is None else self.eps - e)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        r, e = self._parts(other)
        if e is None:
            return DualNumber(self.real * r, self.eps * r)
        return DualNumber(self.real * r, self.real * e + self.eps * r)

    __rmul__ = __mul__

    def __neg__(self):
        return DualNumber(-self.real, -self.eps)

    def __truediv__(self, other):
        r, e = self._parts(other)
        if e is None:
            return DualNumber(self.real / r, self.eps / r)
        return DualNumber(self.real / r, (self.eps * r - self.real * e) / (r * r))

    def __rtruediv__(self, other):
        return DualNumber(other / self.real, -(other * self.eps) / (self.real * self.real))

    def __eq__(self, other):
        r, e = self._parts(other)
        if e is None:
            return self.real == r and not self.eps
        return self.real == r and self.eps == e

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.real, self.eps))

    def __bool__(self):
        return bool(self.real) or bool(self.eps)

    def __repr__(self):
        return f"DualNumber({self.real!r}, {self.eps!r})"


def context_of(value):
    if isinstance(value, PrimeFieldElem):
        return value.field.context
    if isinstance(value, DualNumber):
        return context_of(value.real)
    return EXACT


_BINARY = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
    "eq": operator.eq,
}


def field_arith(a, b=None, op="add"):
    """Apply ``op`` in {add, sub, mul, div, neg, inv, eq} to scalars of one context."""
    if op == "neg":
        return -a
    if op == "inv":
        if not a:
            raise DivisionByZero("inverse of zero")
        return a.inverse() if isinstance(a, PrimeFieldElem) else QQ.one / a
    if op not in _BINARY:
        raise ValueError(f"unknown scalar operation {op!r}")
    if context_of(a) != context_of(b):
        raise ContextMismatch(f"{context_of(a)} vs {context_of(b)}")
    if op == "div" and not b:
        raise DivisionByZero("division by zero")
    return _BINARY[op](a, b)
