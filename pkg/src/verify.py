"""Identity testing, shuffle-symmetry predicates and the named check runner.

A check is a function ``fn(ctx)`` registered with :func:`check`. It states
identities through the :class:`CheckContext`, which compares both sides either
exactly at the generic word or at seeded random prime-field points.
"""
import json
import logging
import time
import traceback
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from multiprocessing import Pool
from typing import Callable, Optional

import multiprocessing_logging
from numpy.random import PCG64, Generator, SeedSequence
from sympy.polys.fields import FracElement
from tqdm import tqdm

from . import __version__
from .bimould import make_backend, push_orbit_sum, random_bimould
from .flexion import random_alternal, set_gaxit_form
from .giff import ReFamily, random_series
from .ratfun import canonical_string, normal_form
from .scalar import DualNumber, PrimeFieldElem, default_prime_field
from .units import get_unit

logger = logging.getLogger(__name__)


class ResampleExhausted(RuntimeError):
    """Every resampled point of some length hit a pole."""


class UnknownCheck(KeyError):
    """No check is registered under the requested name."""


class Status(Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


class Strategy(Enum):
    EXACT_COMPARE = "exact"
    SCHWARTZ_ZIPPEL = "eval"


TIER_LENGTHS = {"cheap": 6, "series": 5, "heavy": 4}


# ---------------------------------------------------------------------------
# shuffle algebra

@lru_cache(maxsize=None)
def _index_shuffle(p, q):
    return shuffle(tuple(range(p)), tuple(range(p, p + q)))


def shuffle(a, b):
    """``a ⧢ b`` as a Counter of words."""
    if not a:
        return Counter({tuple(b): 1})
    if not b:
        return Counter({tuple(a): 1})
    result = Counter()
    for word, count in shuffle(a[:-1], b).items():
        result[word + tuple(a[-1:])] += count
    for word, count in shuffle(a, b[:-1]).items():
        result[word + tuple(b[-1:])] += count
    return result


def shuffle_pairs(A, w, symmetral):
    """``(A(α ⧢ β), A(α)A(β))`` (or ``0``) for every split ``w = αβ`` into nonempty parts."""
    n = len(w)
    zero = A.backend.zero
    pairs = []
    for p in range(1, n):
        lhs = zero
        for word, count in _index_shuffle(p, n - p).items():
            lhs = lhs + count * A(tuple(w[i] for i in word))
        rhs = A(w[:p]) * A(w[p:]) if symmetral else zero
        pairs.append((lhs, rhs))
    return pairs


def _generic_words(A, lengths):
    backend = A.backend
    lengths = range(2, backend.max_length + 1) if lengths is None else lengths
    return [backend.generic(r) for r in lengths]


def is_alternal(A, words=None):
    words = _generic_words(A, None) if words is None else words
    return not A(()) and all(values_equal(lhs, rhs) for w in words for lhs, rhs in shuffle_pairs(A, w, False))


def is_symmetral(A, words=None):
    words = _generic_words(A, None) if words is None else words
    return A(()) == A.backend.one and all(values_equal(lhs, rhs) for w in words for lhs, rhs in shuffle_pairs(A, w, True))


def is_push_neutral(A, words=None):
    words = _generic_words(A, range(1, A.max_length + 1)) if words is None else words
    orbit = push_orbit_sum(A)
    return all(not orbit(w) for w in words)


def shuffle_antipode(r):
    """``sum_i (-1)^i (w_1..w_i) ⧢ (w_r..w_{i+1})`` in the free shuffle algebra on r letters."""
    total = Counter()
    letters = tuple(range(1, r + 1))
    for i in range(r + 1):
        sign = -1 if i % 2 else 1
        for word, count in shuffle(letters[:i], letters[i:][::-1]).items():
            total[word] += sign * count
    return Counter({word: count for word, count in total.items() if count})


# ---------------------------------------------------------------------------
# check specs, reports and the context checks talk to

@dataclass(frozen=True)
class CheckSpec:
    check: str
    unit: str = "polar-u"
    backend: str = "eval"
    max_length: Optional[int] = None
    points: int = 16
    seed: int = 7
    max_resamples: int = 64
    degree_bound: int = 2
    gaxit_form: str = "sigma"
    series_order: int = 12
    prime: Optional[int] = None
    tier_lengths: tuple = tuple(TIER_LENGTHS.items())
    timings: bool = True


@dataclass
class CheckReport:
    check: str
    unit: str
    backend: str
    max_length: int
    points: int
    seed: int
    status: Status
    per_length: list
    wall_ms: Optional[float]
    version: str = __version__
    witness: Optional[dict] = None
    reason: Optional[str] = None
    notes: list = field(default_factory=list)

    @property
    def passed(self):
        return self.status is Status.PASS

    def to_dict(self):
        out = {
            "check": self.check,
            "unit": self.unit,
            "backend": self.backend,
            "max_length": self.max_length,
            "points": self.points,
            "seed": self.seed,
            "status": self.status.value,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.reason is not None:
            out["reason"] = self.reason
        out["per_length"] = self.per_length
        out["wall_ms"] = self.wall_ms
        out["version"] = self.version
        if self.notes:
            out["notes"] = self.notes
        return out


def reports_to_json(reports):
    return json.dumps([r.to_dict() for r in reports], indent=2)


def _normalized(value):
    if isinstance(value, DualNumber):
        return DualNumber(_normalized(value.real), _normalized(value.eps))
    if isinstance(value, FracElement):
        return normal_form(value)
    return value


def values_equal(a, b):
    """Equality of normal forms that tolerates a plain value on either side of a dual one."""
    a, b = _normalized(a), _normalized(b)
    if isinstance(b, DualNumber) and not isinstance(a, DualNumber):
        return b == a
    return a == b


def format_value(value):
    if isinstance(value, DualNumber):
        return f"{format_value(value.real)} + eps*({format_value(value.eps)})"
    if isinstance(value, PrimeFieldElem):
        return str(value.residue)
    if hasattr(value, "numer") and hasattr(value, "denom"):
        return canonical_string(value)
    return str(value)


def _format_point(word):
    if word is None:
        return None
    return [[format_value(u), format_value(v)] for u, v in word]


def derive_seed(seed, *tags):
    """A 63-bit seed for a tagged sub-stream of ``seed``."""
    return int(SeedSequence([int(seed)] + [int(t) for t in tags]).generate_state(1, dtype="uint64")[0]) >> 1


class CheckContext:
    """Collects per-length comparison counts and the first mismatch for one check run."""

    def __init__(self, spec, max_length, unit):
        self.spec = spec
        self.max_length = max_length
        self.unit = unit
        self.strategy = Strategy(spec.backend)
        self.prime_field = default_prime_field(spec.prime)
        self.backend = make_backend(spec.backend, max_length, self.prime_field)
        self.series_order = max(spec.series_order, max_length + 1)
        self.notes = []
        self.witness = None
        self._counts = {}
        self._family = None
        set_gaxit_form(spec.gaxit_form)

    @property
    def exact(self):
        return self.strategy is Strategy.EXACT_COMPARE

    @property
    def lengths(self):
        return range(0, self.max_length + 1)

    # 1) bookkeeping

    def _record(self, label, r, ok, word=None, lhs=None, rhs=None):
        counts = self._counts.setdefault(r, [0, 0])
        counts[0] += 1
        if not ok:
            counts[1] += 1
            if self.witness is None:
                self.witness = {
                    "label": label,
                    "r": r,
                    "point": _format_point(word),
                    "lhs": format_value(lhs),
                    "rhs": format_value(rhs),
                }
                logger.info(f"{self.spec.check}: mismatch in '{label}' at length {r}")

    @property
    def mismatches(self):
        return sum(m for _, m in self._counts.values())

    def per_length(self):
        return [{"r": r, "evaluated": e, "mismatches": m} for r, (e, m) in sorted(self._counts.items())]

    # 2) points

    def words(self, r, backend=None):
        """Generic word (exact) or ``points`` seeded random words of length r."""
        backend = backend or self.backend
        if self.exact:
            return [backend.generic(r)]
        return [self._sample(backend, r, k, 0) for k in range(self.spec.points)]

    def _sample(self, backend, r, k, attempt):
        rng = Generator(PCG64(SeedSequence([self.spec.seed, r, k, attempt])))
        return backend.sample_word(r, rng)

    def _with_resampling(self, backend, r, k, evaluate):
        if self.exact:
            word = backend.generic(r)
            return word, evaluate(word)
        for attempt in range(self.spec.max_resamples + 1):
            word = self._sample(backend, r, k, attempt)
            try:
                return word, evaluate(word)
            except ZeroDivisionError:
                logger.debug(f"pole hit at length {r}, point {k}, attempt {attempt}; resampling")
        raise ResampleExhausted(f"{self.spec.max_resamples} resamples at length {r} all hit a pole")

    # 3) identities

    def expect_pairs(self, label, r, evaluate, backend=None):
        """``evaluate(word)`` returns a list of ``(lhs, rhs)`` values that must agree."""
        backend = backend or self.backend
        n_points = 1 if self.exact else self.spec.points
        for k in range(n_points):
            word, pairs = self._with_resampling(backend, r, k, evaluate)
            for lhs, rhs in pairs:
                self._record(label, r, values_equal(lhs, rhs), None if self.exact else word, lhs, rhs)

    def expect(self, label, lhs, rhs, lengths=None):
        """Bimoulds ``lhs`` and ``rhs`` agree at every length in ``lengths``."""
        for r in self.lengths if lengths is None else lengths:
            self.expect_pairs(label, r, lambda w: [(lhs(w), rhs(w))], lhs.backend)

    def expect_zero(self, label, A, lengths=None):
        zero = A.backend.zero
        for r in self.lengths if lengths is None else lengths:
            self.expect_pairs(label, r, lambda w: [(A(w), zero)], A.backend)

    def expect_differs(self, label, lhs, rhs, r):
        """At least one sampled point of length r separates ``lhs`` from ``rhs``."""
        found = []
        for k in range(1 if self.exact else self.spec.points):
            word, (a, b) = self._with_resampling(lhs.backend, r, k, lambda w: (lhs(w), rhs(w)))
            if not values_equal(a, b):
                found.append(word)
                break
        self._record(label, r, bool(found), None, "equal", "expected a difference")

    def expect_true(self, label, condition, r=0, lhs=None, rhs=None):
        self._record(label, r, bool(condition), None, lhs if lhs is not None else condition, rhs if rhs is not None else True)

    def note(self, text):
        self.notes.append(text)

    # 4) inputs

    def random(self, tag, mu_class, lengths=None):
        return random_bimould(self.backend, derive_seed(self.spec.seed, tag), mu_class, self.spec.degree_bound, lengths)

    def random_alternal(self, tag):
        return random_alternal(self.backend, derive_seed(self.spec.seed, tag), self.spec.degree_bound)

    def random_series(self, tag):
        return random_series(self.series_order, derive_seed(self.spec.seed, tag))

    @property
    def family(self):
        if self._family is None:
            self._family = ReFamily(self.unit, self.backend)
        return self._family


# ---------------------------------------------------------------------------
# registry and runner

@dataclass(frozen=True)
class CheckEntry:
    name: str
    group: str
    tier: str
    min_length: int
    fn: Callable


REGISTRY = {}

CHECK_ORDER = (
    # units
    "tripartite", "push-neutrality", "primary-closed-forms", "es-split", "ez-es-relations", "es-symmetral",
    # bimould
    "negpush", "involutions", "mantar-mu", "filtration", "truncation-consistency", "shuffle-antipode",
    "mu-algebra",
    # flexion
    "axit-derivation", "arit-antihomomorphism", "axit-conjugation", "mantar-gantar-homomorphism", "ari-jacobi",
    "group-laws", "gaxit-two-forms", "gaxit-assoc", "gaxit-separation", "gaxit-multiplicative",
    "dual-number-linearization", "symmetry-closure", "expari-symmetral", "fundamental-identity",
    "ras-rash-identity",
    # giff
    "re-family-symmetries", "re-explicit", "ari-re-family", "re-recursion", "dro-formula", "swap-conjugation",
    "se-morphism", "se-dilator", "separation-lemma", "lemma-1195", "lemma-1197", "prop-244", "dilator-mantar",
    "darapal", "girat-anti", "gantar-ess", "gantar-doss", "gantar-dess", "crash-ess", "crash-dess", "slash-ess",
    "slash-dess", "giff-explog", "giff-coproduct", "giff-dilator", "diff-bracket",
)


def check(name, group, tier="cheap", min_length=1):
    """Register ``fn(ctx)`` as the named check."""
    def decorator(fn):
        if name in REGISTRY:
            raise ValueError(f"check {name!r} registered twice")
        REGISTRY[name] = CheckEntry(name, group, tier, min_length, fn)
        return fn
    return decorator


def resolve_names(name):
    if name == "all":
        return list(CHECK_ORDER)
    if name not in REGISTRY:
        raise UnknownCheck(name)
    return [name]


def default_length(spec, entry):
    if spec.max_length is not None:
        return spec.max_length
    return dict(spec.tier_lengths)[entry.tier]


def run_check(spec):
    """Run one named check and return its report."""
    entry = REGISTRY.get(spec.check)
    if entry is None:
        raise UnknownCheck(spec.check)
    unit = get_unit(spec.unit)
    max_length = default_length(spec, entry)
    points = 1 if spec.backend == "exact" else spec.points
    start = time.perf_counter()

    def report(status, **kwargs):
        wall_ms = round((time.perf_counter() - start) * 1000.0, 1) if spec.timings else None
        return CheckReport(spec.check, spec.unit, spec.backend, max_length, points, spec.seed, status,
                           kwargs.pop("per_length", []), wall_ms, **kwargs)

    if max_length < entry.min_length:
        return report(Status.SKIPPED, reason=f"needs max_length >= {entry.min_length}")

    logger.info(f"Running {spec.check} ({spec.backend}, L={max_length}, unit {spec.unit})")
    ctx = CheckContext(spec, max_length, unit)
    try:
        entry.fn(ctx)
    except ResampleExhausted as e:
        logger.error(f"{spec.check}: {e}")
        return report(Status.FAIL, per_length=ctx.per_length(), reason=str(e), notes=ctx.notes)
    except Exception as e:
        logger.error(f"{spec.check} raised {type(e).__name__}: {e}")
        logger.error(traceback.format_exc())
        return report(Status.FAIL, per_length=ctx.per_length(), reason=f"{type(e).__name__}: {e}", notes=ctx.notes)

    status = Status.FAIL if ctx.mismatches else Status.PASS
    logger.info(f"{spec.check}: {status.value} ({ctx.mismatches} mismatches)")
    return report(status, per_length=ctx.per_length(), witness=ctx.witness, notes=ctx.notes)


def run_suite(specs, jobs=1, progress=True):
    """Reports for ``specs`` in the given order, optionally across worker processes."""
    specs = list(specs)
    if jobs > 1 and len(specs) > 1:
        multiprocessing_logging.install_mp_handler()
        with Pool(jobs) as pool:
            return list(tqdm(pool.imap(run_check, specs), total=len(specs), disable=not progress, desc="checks"))
    return [run_check(spec) for spec in tqdm(specs, disable=not progress, desc="checks")]


from . import checks  # noqa: E402,F401  (registers the check table)
