"""Complexity classification for extension problems over described p-groups.

Given per-prime pairs of group descriptions, these procedures decide the
potential Borel-complexity class of the coset equivalence relation attached
to the extension group, and place that class on the benchmark ladder
(smooth, reducible to E0, reducible to E0^omega). Everything is computed
from Ulm-layer invariants of the descriptions: per-prime indices mu_p,
their supremum mu, and cardinality weights of the critical Ulm subgroups.

Two independent routes to the ladder exist on purpose: e0_conditions
evaluates per-prime predicates directly on the descriptions, while
benchmark_from_class reads the ladder off the computed class. They must
agree on every valid input.
"""

from dataclasses import dataclass, field

from .ordinals import (
    INFINITE,
    ONE,
    ZERO_COUNT,
    ExtendedCount,
    Ordinal,
    decompose_one_lambda_n,
    ord_add,
    ord_compare,
    ord_max,
    ord_pred,
    ord_to_text,
)
from .profiles import (
    PGroupDesc,
    cardinality,
    is_bounded,
    ulm_length,
    ulm_subgroup,
    validate,
)
from .profiles import is_zero as desc_is_zero

TWO = Ordinal.from_int(2)

PI = "Pi"
SIGMA = "Sigma"
DPI = "DPi"
_SHAPES = (PI, SIGMA, DPI)


@dataclass(frozen=True)
class ComplexityClass:
    """A named pointclass: Pi^0_level, Sigma^0_level, or a difference D(Pi^0_level)."""

    shape: str
    level: Ordinal

    def __post_init__(self):
        if self.shape not in _SHAPES:
            raise ValueError(f"unknown shape {self.shape!r}")
        if isinstance(self.level, int):
            object.__setattr__(self, "level", Ordinal.from_int(self.level))
        if self.level.is_zero():
            raise ValueError("levels start at 1")

    @classmethod
    def pi(cls, level) -> "ComplexityClass":
        return cls(PI, level)

    @classmethod
    def sigma(cls, level) -> "ComplexityClass":
        return cls(SIGMA, level)

    @classmethod
    def dpi(cls, level) -> "ComplexityClass":
        return cls(DPI, level)

    def level_text(self) -> str:
        text = ord_to_text(self.level)
        return f"({text})" if " " in text else text

    def __str__(self) -> str:
        if self.shape == DPI:
            return f"D(Pi^0_{self.level_text()})"
        return f"{self.shape}^0_{self.level_text()}"


# Pairs whose containment is strict in the level: Pi and Sigma are
# incomparable at equal levels, and a difference of two Pi^0_a sets only
# drops into Pi or Sigma one level up. Everything else allows equality.
_STRICT = {(PI, SIGMA), (SIGMA, PI), (DPI, PI), (DPI, SIGMA)}


def class_leq(a: ComplexityClass, b: ComplexityClass) -> bool:
    """Containment of the named pointclasses."""
    c = ord_compare(a.level, b.level)
    if (a.shape, b.shape) in _STRICT:
        return c < 0
    return c <= 0


def is_legal_class(cls: ComplexityClass) -> bool:
    """Whether the class is one the classifier may emit.

    Writing the level as 1 + lam + n with lam zero or limit: Pi needs
    n = 0 or n >= 2 (level 2 is excluded along with every D at a
    first-successor level), Sigma needs n = 1, differences need n >= 2.
    """
    _, n = decompose_one_lambda_n(cls.level)
    if cls.shape == SIGMA:
        return n == 1
    if cls.shape == DPI:
        return n >= 2
    return n != 1


SMOOTH = "Smooth"
BIREDUCIBLE_E0 = "BireducibleE0"
REDUCIBLE_E0_OMEGA = "ReducibleE0OmegaNotE0"
ABOVE_E0_OMEGA = "AboveE0Omega"

_LADDER = {
    SMOOTH: (True, True),
    BIREDUCIBLE_E0: (True, True),
    REDUCIBLE_E0_OMEGA: (False, True),
    ABOVE_E0_OMEGA: (False, False),
}


@dataclass(frozen=True)
class BenchmarkLevel:
    """Position on the reducibility ladder, with the two cumulative flags."""

    kind: str
    reducible_to_e0: bool
    reducible_to_e0_omega: bool

    def __post_init__(self):
        if self.kind not in _LADDER:
            raise ValueError(f"unknown benchmark kind {self.kind!r}")
        if (self.reducible_to_e0, self.reducible_to_e0_omega) != _LADDER[self.kind]:
            raise ValueError(f"flags contradict kind {self.kind}")

    @classmethod
    def from_kind(cls, kind: str) -> "BenchmarkLevel":
        return cls(kind, *_LADDER[kind])

    def is_smooth(self) -> bool:
        return self.kind == SMOOTH

    def __str__(self) -> str:
        return self.kind


@dataclass(frozen=True, eq=True)
class ClassificationResult:
    cls: ComplexityClass
    benchmark: BenchmarkLevel
    trace: dict = field(compare=False)

    def __str__(self) -> str:
        return f"{self.cls} [{self.trace.get('tag')}] {self.benchmark}"


# Which class each fired case emits, as a function of mu.
_CASE_TABLE = {
    "E0-smooth": (PI, "one"),
    "per-prime-polish": (PI, "one"),
    "main-1a": (PI, "mu"),
    "main-1b": (PI, "mu"),
    "main-2": (SIGMA, "mu"),
    "main-3": (DPI, "mu"),
    "main-4a": (PI, "mu+1"),
    "main-4b": (PI, "mu+1"),
    "per-prime-limit": (PI, "mu"),
    "per-prime-sigma": (SIGMA, "mu"),
    "per-prime-pi": (PI, "mu"),
    "per-prime-dpi": (DPI, "mu"),
    "per-prime-pi-plus": (PI, "mu+1"),
}

CASE_TAGS = tuple(_CASE_TABLE)


def class_for_case(tag: str, mu: Ordinal = None) -> ComplexityClass:
    """The class a fired case emits; mu is required except for the Polish tags."""
    shape, rule = _CASE_TABLE[tag]
    if rule == "one":
        return ComplexityClass(shape, ONE)
    level = mu if rule == "mu" else ord_add(mu, ONE)
    return ComplexityClass(shape, level)


def _check_desc(desc: PGroupDesc, role: str):
    report = validate(desc)
    if not report.ok:
        raise ValueError(f"invalid {role} description: " + "; ".join(report.violations))


def _check_pair(c_desc: PGroupDesc, a_desc: PGroupDesc):
    _check_desc(c_desc, "quotient-side")
    _check_desc(a_desc, "coefficient-side")
    if c_desc.prime != a_desc.prime:
        raise ValueError("paired descriptions must share a prime")
    if not a_desc.divisible_rank.is_zero():
        raise ValueError("coefficient-side description must be reduced")


def _is_prime(n) -> bool:
    if not isinstance(n, int) or n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class ProblemSpec:
    """A finite bundle of per-prime description pairs, plus infinite families.

    explicit holds (prime, quotient-side, coefficient-side) triples with
    concrete distinct primes; families holds (marker, quotient-side,
    coefficient-side) triples whose descriptions carry a symbolic prime and
    stand for one pair per prime in an infinite set. Family markers are
    labels; the sets they denote are pairwise disjoint and avoid the
    explicit primes.
    """

    explicit: tuple = ()
    families: tuple = ()

    @classmethod
    def make(cls, explicit=(), families=()) -> "ProblemSpec":
        if isinstance(explicit, dict):
            triples = [(p, c, a) for p, (c, a) in explicit.items()]
        else:
            triples = [tuple(entry) for entry in explicit]
        seen = set()
        for p, c_desc, a_desc in triples:
            if not _is_prime(p):
                raise ValueError(f"{p} is not a prime")
            if p in seen:
                raise ValueError(f"prime {p} listed twice")
            seen.add(p)
            _check_pair(c_desc, a_desc)
            if c_desc.prime != p:
                raise ValueError(f"descriptions at prime {p} carry prime {c_desc.prime}")
        markers = set()
        fams = [tuple(entry) for entry in families]
        for marker, c_desc, a_desc in fams:
            if not isinstance(marker, str) or not marker:
                raise ValueError("family markers are nonempty strings")
            if marker in markers:
                raise ValueError(f"family marker {marker!r} listed twice")
            markers.add(marker)
            _check_pair(c_desc, a_desc)
            if c_desc.prime is not None:
                raise ValueError("family templates need a symbolic prime")
        triples.sort(key=lambda entry: entry[0])
        return cls(tuple(triples), tuple(fams))

    def pairs(self):
        """All (label, quotient-side, coefficient-side, is_family) entries."""
        out = [(p, c, a, False) for p, c, a in self.explicit]
        out.extend((m, c, a, True) for m, c, a in self.families)
        return out


def _active(c_desc: PGroupDesc, a_desc: PGroupDesc) -> bool:
    """The pair can contribute complexity: u_1 nonzero on one side, unbounded other."""
    return (not desc_is_zero(ulm_subgroup(c_desc, ONE))
            and not is_bounded(a_desc))


def _finite_desc(desc: PGroupDesc) -> bool:
    """Whether the described group is finite; prime may be symbolic."""
    if not is_bounded(desc):
        return False
    layer = desc.reduced.layer_at(Ordinal())
    return all(count.is_finite() for _, count in layer.explicit)


def _weight(desc: PGroupDesc, from_family: bool) -> ExtendedCount:
    """Contribution of one Ulm subgroup to a cardinality sum.

    The zero group contributes nothing. A nonzero family template is
    repeated over infinitely many primes, so its total is infinite
    outright, which also sidesteps exact counting at a symbolic prime.
    """
    if desc_is_zero(desc):
        return ZERO_COUNT
    if from_family:
        return INFINITE
    return cardinality(desc)


def mu_p(c_desc: PGroupDesc, a_desc: PGroupDesc) -> Ordinal:
    """Least level at which one side dies: min(L_C, L_A + 1).

    L_C is the least alpha with the alpha-th Ulm subgroup of the
    quotient side zero (never attained when it has divisible summands),
    L_A the same for the coefficient side, which must be reduced. The
    +1 offset reflects that the coefficient side enters through its
    predecessor level.
    """
    _check_pair(c_desc, a_desc)
    above = ord_add(ulm_length(a_desc), ONE)
    if not c_desc.divisible_rank.is_zero():
        return above
    own = ulm_length(c_desc)
    return own if ord_compare(own, above) <= 0 else above


def _result(tag: str, mu: Ordinal, trace: dict) -> ClassificationResult:
    cls = class_for_case(tag, mu)
    trace["tag"] = tag
    return ClassificationResult(cls, benchmark_from_class(cls), trace)


def per_prime_class(c_desc: PGroupDesc, a_desc: PGroupDesc) -> ClassificationResult:
    """Classification of a single-prime pair.

    Polish (Pi^0_1) when the quotient side has trivial first Ulm subgroup
    or the coefficient side is bounded. Otherwise the class sits at
    mu = mu_p or one step above, with the shape decided by finiteness of
    the quotient side's top Ulm subgroup and boundedness of the
    coefficient side's second-from-top one.
    """
    _check_pair(c_desc, a_desc)
    if not _active(c_desc, a_desc):
        return _result("per-prime-polish", None, {})
    mu = mu_p(c_desc, a_desc)
    lam, n = decompose_one_lambda_n(mu)
    trace = {"mu": mu, "lambda": lam, "n": n}
    base = ord_add(ONE, lam)
    if n == 0:
        return _result("per-prime-limit", mu, trace)
    if n == 1:
        if _finite_desc(ulm_subgroup(c_desc, base)):
            return _result("per-prime-sigma", mu, trace)
        return _result("per-prime-pi-plus", mu, trace)
    a_level = ord_add(base, Ordinal.from_int(n - 2))
    c_level = ord_add(base, Ordinal.from_int(n - 1))
    if is_bounded(ulm_subgroup(a_desc, a_level)):
        return _result("per-prime-pi", mu, trace)
    if _finite_desc(ulm_subgroup(c_desc, c_level)):
        return _result("per-prime-dpi", mu, trace)
    return _result("per-prime-pi-plus", mu, trace)


def classify(spec: ProblemSpec) -> ClassificationResult:
    """Global classification of a per-prime bundle.

    Inactive pairs are Polish factors and never raise the class; with no
    active pair at all the relation is smooth. Otherwise mu is the
    supremum of mu_p over active pairs, and when mu is a successor the
    case is decided by the cardinality sum W of the quotient sides' Ulm
    subgroups at mu - 1 over the pairs attaining mu, refined (when
    mu - 1 is again a successor) by the subsum w over pairs whose
    coefficient side is still unbounded at mu - 2.
    """
    active = [entry for entry in spec.pairs() if _active(entry[1], entry[2])]
    if not active:
        return _result("E0-smooth", None, {})
    mus = {label: mu_p(c, a) for label, c, a, _ in active}
    mu = ord_max(mus.values())
    lam, n = decompose_one_lambda_n(mu)
    trace = {"mu_p": mus, "mu": mu, "lambda": lam, "n": n}
    if n == 0:
        return _result("main-1a", mu, trace)
    members = [entry for entry in active
               if ord_compare(mus[entry[0]], mu) == 0]
    trace["P_mu"] = tuple(entry[0] for entry in members)
    pred = ord_pred(mu)
    weights = {entry[0]: _weight(ulm_subgroup(entry[1], pred), entry[3])
               for entry in members}
    total = ZERO_COUNT
    for value in weights.values():
        total = total + value
    trace["W"] = total
    if n == 1:
        if total.is_finite():
            return _result("main-2", mu, trace)
        return _result("main-4a", mu, trace)
    a_level = ord_pred(pred)
    small = ZERO_COUNT
    for entry in members:
        if not is_bounded(ulm_subgroup(entry[2], a_level)):
            small = small + weights[entry[0]]
    trace["w"] = small
    if small.is_zero():
        return _result("main-1b", mu, trace)
    if small.is_finite():
        return _result("main-3", mu, trace)
    return _result("main-4b", mu, trace)


def e0_conditions(spec: ProblemSpec) -> BenchmarkLevel:
    """The benchmark ladder evaluated directly from per-pair predicates.

    Smooth: every pair has trivial first Ulm subgroup on the quotient
    side or a bounded coefficient side. Reducible to E0: every pair has
    trivial second Ulm subgroup on the quotient side or trivial first on
    the coefficient side, and the cardinality sum of first Ulm subgroups
    over pairs with unbounded coefficient side is finite. Reducible to
    E0^omega: every pair has trivial second Ulm subgroup on the quotient
    side or a bounded first Ulm subgroup on the coefficient side.
    """
    pairs = spec.pairs()
    smooth = all(desc_is_zero(ulm_subgroup(c, ONE)) or is_bounded(a)
                 for _, c, a, _ in pairs)
    local = all(desc_is_zero(ulm_subgroup(c, TWO)) or desc_is_zero(ulm_subgroup(a, ONE))
                for _, c, a, _ in pairs)
    total = ZERO_COUNT
    for _, c, a, fam in pairs:
        if is_bounded(a):
            continue
        total = total + _weight(ulm_subgroup(c, ONE), fam)
    hyperfinite = local and total.is_finite()
    omega = all(desc_is_zero(ulm_subgroup(c, TWO))
                or is_bounded(ulm_subgroup(a, ONE))
                for _, c, a, _ in pairs)
    if smooth:
        return BenchmarkLevel.from_kind(SMOOTH)
    if hyperfinite:
        return BenchmarkLevel.from_kind(BIREDUCIBLE_E0)
    if omega:
        return BenchmarkLevel.from_kind(REDUCIBLE_E0_OMEGA)
    return BenchmarkLevel.from_kind(ABOVE_E0_OMEGA)


def benchmark_from_class(cls: ComplexityClass) -> BenchmarkLevel:
    """The benchmark ladder read off a legal class by containment."""
    if not is_legal_class(cls):
        raise ValueError(f"not a class the classifier emits: {cls}")
    if class_leq(cls, ComplexityClass.pi(TWO)):
        return BenchmarkLevel.from_kind(SMOOTH)
    if class_leq(cls, ComplexityClass.sigma(TWO)):
        return BenchmarkLevel.from_kind(BIREDUCIBLE_E0)
    if class_leq(cls, ComplexityClass.pi(Ordinal.from_int(3))):
        return BenchmarkLevel.from_kind(REDUCIBLE_E0_OMEGA)
    return BenchmarkLevel.from_kind(ABOVE_E0_OMEGA)


DEFERRED = "deferred"


def _max_class(classes):
    best = None
    for cls in classes:
        if best is None or class_leq(best, cls):
            best = cls
        elif not class_leq(cls, best):
            return None
    return best


def _least_pi_level(cls: ComplexityClass) -> Ordinal:
    return cls.level if cls.shape == PI else ord_add(cls.level, ONE)


def product_class(factors):
    """Class of a product from per-factor classes and multiplicities.

    factors is an iterable of (class-or-result, multiplicity) pairs,
    multiplicities finite ints or ExtendedCount (infinite allowed).
    Covers the proven combination patterns: no non-Polish factors,
    finitely many non-Polish factors (their maximum), or an infinite
    supply whose least enclosing Pi level bounds every factor. Anything
    else returns DEFERRED; the full classifier handles those.
    """
    weighted = []
    for cls, mult in factors:
        if isinstance(cls, ClassificationResult):
            cls = cls.cls
        if not isinstance(mult, ExtendedCount):
            mult = ExtendedCount(mult)
        if not is_legal_class(cls):
            raise ValueError(f"not a legal factor class: {cls}")
        if not mult.is_zero():
            weighted.append((cls, mult))
    polish = ComplexityClass.pi(ONE)
    hard = [(cls, mult) for cls, mult in weighted if cls != polish]
    if not hard:
        return polish
    if all(mult.is_finite() for _, mult in hard):
        best = _max_class(cls for cls, _ in hard)
        return best if best is not None else DEFERRED
    star = _max_class(cls for cls, mult in hard if not mult.is_finite())
    if star is None:
        return DEFERRED
    bound = ComplexityClass.pi(_least_pi_level(star))
    if all(class_leq(cls, bound) for cls, _ in weighted):
        return bound
    return DEFERRED
