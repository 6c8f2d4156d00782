"""Finite descriptions of countable abelian p-groups.

A group is described by its divisible rank (number of quasicyclic summands)
plus a reduced part given layer by layer: the layer at ordinal index a is the
quotient of the a-th iterated first-Ulm-subgroup by the next one, a direct sum
of cyclic p-groups recorded as exponent -> summand count. Layers are grouped
into half-open ordinal runs that share one layer description, so profiles of
limit length stay finitely described and shift exactly under the Ulm-subgroup
operation.
"""

from dataclasses import dataclass

from .ordinals import (
    INFINITE,
    LIMIT_KIND,
    SUCCESSOR_KIND,
    ZERO,
    ZERO_COUNT,
    ZERO_KIND,
    ExtendedCount,
    Ordinal,
    count_add,
    count_mul,
    count_sum,
    ord_compare,
    ord_kind,
    ord_left_subtract,
    ord_pred,
)


@dataclass(frozen=True)
class CyclicLayer:
    """One layer: a direct sum of cyclic p-groups.

    explicit: tuple of (exponent, count) pairs, exponents >= 1 strictly
    increasing, counts nonzero, all exponents below the tail start.
    tail: optional (start_exponent, per_exponent_count) meaning "that many
    summands of order p^n for every n >= start_exponent"; its presence is
    exactly unboundedness of the layer.
    """

    explicit: tuple = ()
    tail: tuple | None = None

    @classmethod
    def make(cls, explicit=None, tail=None) -> "CyclicLayer":
        """Build in canonical form; merges overlaps and minimizes the tail start."""
        counts = {}
        for exponent, count in dict(explicit or {}).items():
            if exponent < 1:
                raise ValueError("cyclic exponents start at 1")
            count = _as_count(count)
            if not count.is_zero():
                counts[exponent] = count
        if tail is not None:
            start, per = tail
            per = _as_count(per)
            if per.is_zero():
                tail = None
            else:
                if start < 1:
                    raise ValueError("tail start must be >= 1")
                top = max(counts, default=0)
                while start <= top:
                    counts[start] = count_add(counts.get(start, ZERO_COUNT), per)
                    start += 1
                while start > 1 and counts.get(start - 1) == per:
                    del counts[start - 1]
                    start -= 1
                tail = (start, per)
        return cls(tuple(sorted(counts.items())), tail)

    @classmethod
    def zero(cls) -> "CyclicLayer":
        return cls()

    def is_zero(self) -> bool:
        return not self.explicit and self.tail is None

    def is_unbounded(self) -> bool:
        return self.tail is not None

    def count_at(self, exponent: int) -> ExtendedCount:
        if self.tail is not None and exponent >= self.tail[0]:
            return self.tail[1]
        for e, c in self.explicit:
            if e == exponent:
                return c
        return ZERO_COUNT

    def summand_count(self) -> ExtendedCount:
        """Total number of cyclic summands (infinite iff unbounded or a count is)."""
        if self.tail is not None:
            return INFINITE
        return count_sum([c for _, c in self.explicit])

    def min_exponent(self) -> int | None:
        candidates = []
        if self.explicit:
            candidates.append(self.explicit[0][0])
        if self.tail is not None:
            candidates.append(self.tail[0])
        return min(candidates) if candidates else None

    def element_count(self, p: int | None) -> ExtendedCount:
        if self.is_zero():
            return ExtendedCount(1)
        if self.summand_count() == INFINITE:
            return INFINITE
        exponent_sum = sum(e * c.value for e, c in self.explicit)
        if p is None:
            raise ValueError("element count of a nonzero finite layer needs a concrete prime")
        return ExtendedCount(p ** exponent_sum)

    def add(self, other: "CyclicLayer") -> "CyclicLayer":
        counts = {e: c for e, c in self.explicit}
        for e, c in other.explicit:
            counts[e] = count_add(counts.get(e, ZERO_COUNT), c)
        tails = [t for t in (self.tail, other.tail) if t is not None]
        if not tails:
            return CyclicLayer.make(counts, None)
        if len(tails) == 1:
            return CyclicLayer.make(counts, tails[0])
        (s1, c1), (s2, c2) = tails
        start = max(s1, s2)
        for s, c in tails:
            for e in range(s, start):
                counts[e] = count_add(counts.get(e, ZERO_COUNT), c)
        return CyclicLayer.make(counts, (start, count_add(c1, c2)))

    def describe(self) -> str:
        parts = []
        for e, c in self.explicit:
            parts.append(f"p^{e}:{c}")
        if self.tail is not None:
            parts.append(f"tail(>= {self.tail[0]}, {self.tail[1]} each)")
        return "{" + ", ".join(parts) + "}" if parts else "0"


def _as_count(value) -> ExtendedCount:
    if isinstance(value, ExtendedCount):
        return value
    return ExtendedCount(value)


def _as_ordinal(value) -> Ordinal:
    if isinstance(value, Ordinal):
        return value
    return Ordinal.from_int(value)


ZERO_LAYER = CyclicLayer.zero()


@dataclass(frozen=True)
class UlmProfile:
    """Ordinal-indexed layers, as contiguous runs [start, end) sharing a layer."""

    segments: tuple = ()

    @classmethod
    def make(cls, segments) -> "UlmProfile":
        """Normalize: drop empty runs, merge equal neighbors, demand contiguity from 0."""
        cleaned = []
        for start, end, layer in segments:
            start = _as_ordinal(start)
            end = _as_ordinal(end)
            c = ord_compare(start, end)
            if c > 0:
                raise ValueError("segment start beyond its end")
            if c == 0:
                continue
            if cleaned and cleaned[-1][2] == layer and cleaned[-1][1] == start:
                prev = cleaned.pop()
                cleaned.append((prev[0], end, layer))
            else:
                cleaned.append((start, end, layer))
        cursor = ZERO
        for start, end, layer in cleaned:
            if ord_compare(start, cursor) != 0:
                raise ValueError(f"segments must be contiguous from 0, gap at {cursor}")
            cursor = end
        return cls(tuple(cleaned))

    def length(self) -> Ordinal:
        return self.segments[-1][1] if self.segments else ZERO

    def is_empty(self) -> bool:
        return not self.segments

    def layer_at(self, alpha) -> CyclicLayer:
        alpha = _as_ordinal(alpha)
        for start, end, layer in self.segments:
            if ord_compare(start, alpha) <= 0 and ord_compare(alpha, end) < 0:
                return layer
        return ZERO_LAYER

    def shift(self, alpha) -> "UlmProfile":
        """Drop indices below alpha and reindex the rest to start at 0."""
        alpha = _as_ordinal(alpha)
        out = []
        for start, end, layer in self.segments:
            if ord_compare(end, alpha) <= 0:
                continue
            lo = start if ord_compare(start, alpha) >= 0 else alpha
            out.append((ord_left_subtract(alpha, lo), ord_left_subtract(alpha, end), layer))
        return UlmProfile.make(out)

    def boundaries(self) -> list:
        points = []
        for start, end, _ in self.segments:
            points.append(start)
            points.append(end)
        return points


@dataclass(frozen=True)
class PGroupDesc:
    """A countable abelian p-group: divisible rank plus reduced profile.

    prime None marks a symbolic prime (family templates); all structural
    predicates work symbolically, exact element counts do not.
    """

    prime: int | None
    divisible_rank: ExtendedCount
    reduced: UlmProfile

    @classmethod
    def make(cls, prime, divisible_rank=0, segments=()) -> "PGroupDesc":
        return cls(prime, _as_count(divisible_rank), UlmProfile.make(list(segments)))

    @classmethod
    def zero(cls, prime=None) -> "PGroupDesc":
        return cls(prime, ZERO_COUNT, UlmProfile())


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple = ()


def validate(desc: PGroupDesc) -> ValidationReport:
    """Check the layer invariants; each violation names its segment index."""
    problems = []
    profile = desc.reduced
    length = profile.length()
    for i, (start, end, layer) in enumerate(profile.segments):
        for e, c in layer.explicit:
            if c.is_zero():
                problems.append(f"segment {i}: explicit count of p^{e} is zero")
            if layer.tail is not None and e >= layer.tail[0]:
                problems.append(f"segment {i}: explicit exponent {e} overlaps the tail")
        if layer.tail is not None and layer.tail[1].is_zero():
            problems.append(f"segment {i}: tail count is zero")
        top_of_run = end == length
        if layer.is_zero():
            problems.append(f"segment {i}: zero layer inside the profile")
            continue
        if not layer.is_unbounded():
            # Bounded layers are only allowed at the single top index.
            run_is_single_top = (
                top_of_run
                and ord_kind(length) == SUCCESSOR_KIND
                and ord_compare(start, ord_pred(length)) == 0
            )
            if not run_is_single_top:
                problems.append(
                    f"segment {i}: bounded layer at a non-top index "
                    f"(every index a with a+1 < length must be unbounded)")
    if ord_kind(length) == SUCCESSOR_KIND:
        if profile.layer_at(ord_pred(length)).is_zero():
            problems.append("top layer is zero")
    return ValidationReport(not problems, tuple(problems))


def ulm_subgroup(desc: PGroupDesc, alpha) -> PGroupDesc:
    """The alpha-th iterated first Ulm subgroup: shift the profile, keep the divisible part."""
    return PGroupDesc(desc.prime, desc.divisible_rank, desc.reduced.shift(alpha))


def ulm_length(desc: PGroupDesc) -> Ordinal:
    """Least a with trivial reduced part after shifting by a (the profile length)."""
    return desc.reduced.length()


def is_zero(desc: PGroupDesc) -> bool:
    return desc.divisible_rank.is_zero() and desc.reduced.is_empty()


def is_bounded(desc: PGroupDesc) -> bool:
    """Some multiple kills the group: reduced of length <= 1 with a bounded layer."""
    if not desc.divisible_rank.is_zero():
        return False
    length = ulm_length(desc)
    if ord_compare(length, Ordinal.from_int(1)) > 0:
        return False
    return not desc.reduced.layer_at(ZERO).is_unbounded()


def cardinality(desc: PGroupDesc) -> ExtendedCount:
    """Exact element count when finite, else the countable-infinite marker."""
    if is_zero(desc):
        return ExtendedCount(1)
    if not desc.divisible_rank.is_zero():
        return INFINITE
    length = ulm_length(desc)
    if not length.is_finite():
        return INFINITE
    total = ExtendedCount(1)
    for _, end, layer in desc.reduced.segments:
        if layer.summand_count() == INFINITE:
            return INFINITE
    n = length.as_int()
    for i in range(n):
        layer = desc.reduced.layer_at(Ordinal.from_int(i))
        total = count_mul(total, layer.element_count(desc.prime))
    return total


def direct_sum(a: PGroupDesc, b: PGroupDesc) -> PGroupDesc:
    """Layerwise sum; divisible ranks add, lengths combine to the maximum."""
    if a.prime != b.prime:
        raise ValueError(f"prime mismatch: {a.prime} vs {b.prime}")
    boundaries = {}
    for point in a.reduced.boundaries() + b.reduced.boundaries():
        boundaries[point] = None
    points = sorted(boundaries, key=_OrdinalKey)
    segments = []
    for lo, hi in zip(points, points[1:]):
        layer = a.reduced.layer_at(lo).add(b.reduced.layer_at(lo))
        if not layer.is_zero():
            segments.append((lo, hi, layer))
    return PGroupDesc(a.prime,
                      count_add(a.divisible_rank, b.divisible_rank),
                      UlmProfile.make(segments))


class _OrdinalKey:
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value

    def __lt__(self, other):
        return ord_compare(self.value, other.value) < 0

    def __eq__(self, other):
        return ord_compare(self.value, other.value) == 0


@dataclass(frozen=True)
class SplitFamily:
    """An omega-indexed direct-sum family: distinct templates with multiplicities.

    Multiplicities sum to omega (at least one is infinite). Member layers sum
    back to the input at summand-count granularity.
    """

    members: tuple  # of (PGroupDesc, ExtendedCount multiplicity)

    def layer_summand_sum(self, alpha: Ordinal) -> ExtendedCount:
        finite_parts = []
        repeated = []
        for member, multiplicity in self.members:
            count = member.reduced.layer_at(alpha).summand_count()
            if multiplicity.is_finite():
                finite_parts.append(count_mul(count, multiplicity))
            else:
                repeated.append(count)
        return count_sum(finite_parts, repeated)


def split_omega(desc: PGroupDesc) -> SplitFamily | None:
    """Split into omega-many summands of the same Ulm length, when possible.

    Succeeds exactly when the length is a limit, or a successor whose top
    layer is infinite; in the successor case every member gets a finite
    nonzero top layer (a single cyclic summand at the least top exponent).
    """
    if not desc.divisible_rank.is_zero():
        raise ValueError("splitting needs a reduced description")
    length = ulm_length(desc)
    kind = ord_kind(length)
    if kind == ZERO_KIND:
        return None
    if kind == LIMIT_KIND:
        return SplitFamily(((desc, INFINITE),))
    top_index = ord_pred(length)
    top = desc.reduced.layer_at(top_index)
    if top.summand_count().is_finite():
        return None
    least = top.min_exponent()
    template_segments = []
    for start, end, layer in desc.reduced.segments:
        if ord_compare(end, top_index) <= 0:
            template_segments.append((start, end, layer))
        elif ord_compare(start, top_index) < 0:
            template_segments.append((start, top_index, layer))
    template_segments.append(
        (top_index, length, CyclicLayer.make({least: ExtendedCount(1)})))
    member = PGroupDesc(desc.prime, ZERO_COUNT, UlmProfile.make(template_segments))
    return SplitFamily(((member, INFINITE),))
