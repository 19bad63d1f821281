"""Flexion units, their validation and the primary bimoulds ez, es, oz, os."""
import logging
import os
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import NamedTuple, Optional

from .bimould import (
    ExactBackend,
    from_function,
    from_ratfun,
    invmu,
    lower_left,
    lower_right,
    mu_power,
    neg,
    one,
    pari,
    push_orbit_sum,
    upper_left,
    upper_right,
)
from .flexion import expari
from .ratfun import canonical_string, parse_ratfun, ratfun_field, substitute_linear

logger = logging.getLogger(__name__)


class UnitError(ValueError):
    """Unknown unit name, unreadable unit file, or a unit that fails validation."""


class UnitStatus(Enum):
    IS_UNIT = "IsUnit"
    FAILS_PARITY = "FailsParity"
    FAILS_TRIPARTITE = "FailsTripartite"


class UnitVerdict(NamedTuple):
    status: UnitStatus
    witness: Optional[object] = None


class Primary(Enum):
    EZ = "ez"
    ES = "es"
    OZ = "oz"
    OS = "os"


@dataclass(frozen=True)
class FlexionUnit:
    name: str
    component: object

    @property
    def conjugate(self):
        """``O(u1, v1) = E(v1, u1)``."""
        u1, v1 = ratfun_field(1).ring.gens
        return substitute_linear(self.component, [v1, u1])

    def conjugate_unit(self):
        return FlexionUnit(f"{self.name}~", self.conjugate)

    def bimould(self, backend):
        return from_ratfun(self.component, 1, backend, self.name)

    def conjugate_bimould(self, backend):
        return from_ratfun(self.conjugate, 1, backend, f"{self.name}~")

    def __str__(self):
        return f"{self.name}: {canonical_string(self.component)}"


def polar_u():
    u1, _ = ratfun_field(1).gens
    return FlexionUnit("polar-u", 1 / u1)


def polar_v():
    _, v1 = ratfun_field(1).gens
    return FlexionUnit("polar-v", 1 / v1)


BUILTIN_UNITS = {"polar-u": polar_u, "polar-v": polar_v}


def load_custom_unit(path):
    """Read ``numerator`` and ``denominator`` lines (or one ``num / (den)`` line)."""
    try:
        with open(path, "r") as f:
            lines = [line.strip() for line in f if line.strip() and not line.startswith("#")]
    except OSError as e:
        raise UnitError(f"cannot read unit file {path}: {e}") from e
    if not lines or len(lines) > 2:
        raise UnitError(f"unit file {path} must hold one expression or a numerator/denominator pair")
    try:
        component = parse_ratfun(lines[0], 1)
        if len(lines) == 2:
            component = component / parse_ratfun(lines[1], 1)
    except (ValueError, ZeroDivisionError) as e:
        raise UnitError(f"unit file {path}: {e}") from e
    return FlexionUnit(f"custom:{os.path.basename(path)}", component)


def get_unit(name, validate=True):
    if name in BUILTIN_UNITS:
        unit = BUILTIN_UNITS[name]()
    elif name.startswith("custom:"):
        unit = load_custom_unit(name[len("custom:"):])
    else:
        raise UnitError(f"unknown unit {name!r}; expected one of {sorted(BUILTIN_UNITS)} or custom:PATH")
    if validate:
        verdict = verify_unit(unit)
        if verdict.status is not UnitStatus.IS_UNIT:
            raise UnitError(f"{unit.name} is not a flexion unit ({verdict.status.value})")
    return unit


@lru_cache(maxsize=None)
def verify_unit(unit):
    """Exact parity and tripartite check of a length-1 candidate."""
    backend = ExactBackend(2)
    E = unit.bimould(backend)
    w1, w2 = backend.generic(2)

    # 1) Parity: E(-w) = -E(w)
    parity = E(((-w1[0], -w1[1]),)) + E((w1,))
    if parity:
        logger.info(f"{unit.name} fails parity, residual {canonical_string(parity)}")
        return UnitVerdict(UnitStatus.FAILS_PARITY, parity)

    # 2) Tripartite: E(w1)E(w2) = E(w1⌋w2)E(⌈w1 w2) + E(w1⌉w2)E(⌊w1 w2)
    a, b = (w1,), (w2,)
    lhs = E(a) * E(b)
    rhs = E(lower_right(a, b)) * E(upper_left(a, b)) + E(upper_right(a, b)) * E(lower_left(a, b))
    residual = lhs - rhs
    if residual:
        logger.info(f"{unit.name} fails the tripartite identity, residual {canonical_string(residual)}")
        return UnitVerdict(UnitStatus.FAILS_TRIPARTITE, residual)
    return UnitVerdict(UnitStatus.IS_UNIT)


def push_neutrality_check(unit, n_max, backend=None, points=None):
    """True iff ``mu^n(E)`` is push-neutral for every ``n <= n_max``.

    On an exact backend the orbit sum is compared to 0 at the generic word; on an
    evaluation backend at the words of ``points(n)``.
    """
    backend = backend or ExactBackend(n_max)
    E = unit.bimould(backend)
    for n in range(1, n_max + 1):
        orbit = push_orbit_sum(mu_power(E, n))
        words = [backend.generic(n)] if points is None else points(n)
        if any(orbit(w) for w in words):
            logger.info(f"{unit.name}: mu^{n}(E) is not push-neutral")
            return False
    return True


def _ez_value(E, w, backend):
    value = backend.one
    for letter in w:
        value = value * E((letter,))
    return value


def _es_value(E, w, backend):
    # factor i is E(u_1 + ... + u_i; v_i - v_{i+1}), with v_{r+1} = 0
    value = backend.one
    r = len(w)
    total = None
    for i, (u, v) in enumerate(w):
        total = u if total is None else total + u
        v_next = v - w[i + 1][1] if i + 1 < r else v
        value = value * E(((total, v_next),))
    return value


def _closed(E, formula, name):
    backend = E.backend
    return from_function(lambda w: formula(E, w, backend), backend, name)


def primary(unit, which, backend, construction="closed"):
    """ez, es, oz or os over ``backend``.

    ``construction="closed"`` uses the product formulas, ``"operator"`` builds
    ``invmu(1 - E)`` and ``expari(E)`` (or their O twins).
    """
    which = Primary(which)
    verdict = verify_unit(unit)
    if verdict.status is not UnitStatus.IS_UNIT:
        raise UnitError(f"{unit.name} is not a flexion unit ({verdict.status.value})")
    E = unit.conjugate_bimould(backend) if which in (Primary.OZ, Primary.OS) else unit.bimould(backend)
    if construction == "closed":
        if which in (Primary.EZ, Primary.OZ):
            return _closed(E, _ez_value, which.value)
        return _closed(E, _es_value, which.value)
    if construction == "operator":
        if which in (Primary.EZ, Primary.OZ):
            return invmu(one(backend) - E)
        return expari(E)
    raise ValueError(f"unknown construction {construction!r}")


def es_split_defect(es, w, i):
    """``es(w) - es(a⌋b) es(⌈a b)`` for the split ``w = ab`` at position ``i``."""
    a, b = w[:i], w[i:]
    return es(w) - es(lower_right(a, b)) * es(upper_left(a, b))


def neg_pari(A):
    return neg(pari(A))
