"""Exact arithmetic for countable ordinals in Cantor normal form, plus extended counts.

Ordinals are kept in hereditary CNF below epsilon_0: a sum w^e1*c1 + ... + w^ek*ck
with exponents themselves ordinals, strictly decreasing, and positive integer
coefficients. Extended counts are either a finite natural or countably infinite;
they carry the cardinal bookkeeping (absorbing addition) used by the classifier.
"""

from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Iterator

ZERO_KIND = "zero"
SUCCESSOR_KIND = "successor"
LIMIT_KIND = "limit"


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    """An ordinal below epsilon_0 in Cantor normal form.

    terms: tuple of (exponent, coefficient) with exponents strictly decreasing
    and coefficients >= 1. The empty tuple is 0. Finite n is ((0, n),).
    """

    terms: tuple = ()

    def __post_init__(self):
        last = None
        for exp, coeff in self.terms:
            if not isinstance(exp, Ordinal):
                raise TypeError("exponent must be an Ordinal")
            if not isinstance(coeff, int) or coeff < 1:
                raise ValueError("coefficient must be a positive integer")
            if last is not None and not exp < last:
                raise ValueError("exponents must be strictly decreasing")
            last = exp

    @classmethod
    def from_int(cls, n: int) -> "Ordinal":
        if n < 0:
            raise ValueError("ordinals are not negative")
        if n == 0:
            return cls()
        return cls(((ZERO, n),))

    @classmethod
    def omega(cls) -> "Ordinal":
        return cls(((ONE, 1),))

    @classmethod
    def omega_power(cls, exponent: "Ordinal", coefficient: int = 1) -> "Ordinal":
        if coefficient == 0:
            return cls()
        return cls(((exponent, coefficient),))

    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero())

    def as_int(self) -> int:
        if not self.is_finite():
            raise ValueError(f"{self} is not finite")
        return self.terms[0][1] if self.terms else 0

    def __lt__(self, other: "Ordinal") -> bool:
        return ord_compare(self, other) < 0

    def __add__(self, other: "Ordinal") -> "Ordinal":
        return ord_add(self, other)

    def __str__(self) -> str:
        return ord_to_text(self)

    def __repr__(self) -> str:
        return f"Ordinal[{ord_to_text(self)}]"


ZERO = Ordinal()
ONE = Ordinal.from_int(1)
OMEGA = Ordinal.omega()


def ord_compare(a: Ordinal, b: Ordinal) -> int:
    """Total order on ordinals: -1, 0, or 1."""
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = ord_compare(ea, eb)
        if c != 0:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    if len(a.terms) == len(b.terms):
        return 0
    return -1 if len(a.terms) < len(b.terms) else 1


def ord_add(a: Ordinal, b: Ordinal) -> Ordinal:
    """CNF addition: terms of a dominated by b's leading exponent are absorbed."""
    if b.is_zero():
        return a
    lead = b.terms[0][0]
    kept = []
    for exp, coeff in a.terms:
        c = ord_compare(exp, lead)
        if c > 0:
            kept.append((exp, coeff))
        elif c == 0:
            kept.append((exp, coeff + b.terms[0][1]))
            return Ordinal(tuple(kept) + b.terms[1:])
        else:
            break
    return Ordinal(tuple(kept) + b.terms)


def ord_left_subtract(a: Ordinal, b: Ordinal) -> Ordinal:
    """The unique g with a + g = b. Requires a <= b."""
    c = ord_compare(a, b)
    if c > 0:
        raise ValueError(f"left subtraction needs {a} <= {b}")
    if c == 0:
        return ZERO
    # Walk common leading terms; the first difference decides the remainder.
    for i, (exp, coeff) in enumerate(a.terms):
        eb, cb = b.terms[i]
        if ord_compare(exp, eb) != 0:
            # b's term is larger here, so b's tail from i is the answer.
            return Ordinal(b.terms[i:])
        if coeff != cb:
            # Same exponent, smaller coefficient in a (since a < b).
            rest = b.terms[i + 1:]
            if i + 1 == len(a.terms):
                return Ordinal(((exp, cb - coeff),) + rest)
            # a continues with strictly smaller exponents; they are absorbed.
            return Ordinal(((exp, cb - coeff),) + rest)
    return Ordinal(b.terms[len(a.terms):])


def ord_kind(a: Ordinal) -> str:
    """'zero', 'successor', or 'limit' (successor iff the last exponent is 0)."""
    if not a.terms:
        return ZERO_KIND
    if a.terms[-1][0].is_zero():
        return SUCCESSOR_KIND
    return LIMIT_KIND


def ord_pred(a: Ordinal) -> Ordinal:
    """Predecessor of a successor ordinal (the b with b + 1 = a)."""
    if ord_kind(a) != SUCCESSOR_KIND:
        raise ValueError(f"{a} is not a successor")
    exp, coeff = a.terms[-1]
    if coeff > 1:
        return Ordinal(a.terms[:-1] + ((exp, coeff - 1),))
    return Ordinal(a.terms[:-1])


def ord_max(ordinals: Iterable[Ordinal]) -> Ordinal:
    best = None
    for a in ordinals:
        if best is None or ord_compare(a, best) > 0:
            best = a
    if best is None:
        raise ValueError("max of empty collection")
    return best


def decompose_one_lambda_n(mu: Ordinal) -> tuple[Ordinal, int]:
    """Write mu >= 1 as 1 + lam + n with lam zero or limit and n finite.

    Finite mu = m gives (0, m - 1). Infinite mu splits into its limit part and
    its finite tail, since 1 + lam = lam for lam infinite.
    """
    if mu.is_zero():
        raise ValueError("decomposition needs mu >= 1")
    if mu.is_finite():
        return ZERO, mu.as_int() - 1
    if ord_kind(mu) == LIMIT_KIND:
        return mu, 0
    # Infinite successor: strip the finite tail; 1 + lam = lam for infinite lam.
    coeff = mu.terms[-1][1]
    return Ordinal(mu.terms[:-1]), coeff


def ord_to_text(a: Ordinal) -> str:
    """Canonical text: `w^2 + w*3 + 5` style, `w` for omega, `0` for zero."""
    if not a.terms:
        return "0"
    parts = []
    for exp, coeff in a.terms:
        if exp.is_zero():
            parts.append(str(coeff))
            continue
        if exp == ONE:
            base = "w"
        else:
            inner = ord_to_text(exp)
            base = f"w^{inner}" if _atomic(inner) else f"w^({inner})"
        parts.append(base if coeff == 1 else f"{base}*{coeff}")
    return " + ".join(parts)


def _atomic(text: str) -> bool:
    return "+" not in text and "*" not in text


class OrdinalParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


def ord_parse(text: str) -> Ordinal:
    """Parse the canonical ordinal syntax. Inverse of ord_to_text on valid input."""
    parser = _OrdParser(text)
    value = parser.parse_sum()
    parser.skip_ws()
    if parser.pos != len(parser.text):
        raise OrdinalParseError("trailing input after ordinal", parser.pos)
    return value


class _OrdParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def parse_sum(self) -> Ordinal:
        total = self.parse_term()
        while True:
            self.skip_ws()
            if self.pos < len(self.text) and self.text[self.pos] == "+":
                self.pos += 1
                total = ord_add(total, self.parse_term())
            else:
                return total

    def parse_term(self) -> Ordinal:
        self.skip_ws()
        if self.pos >= len(self.text):
            raise OrdinalParseError("expected an ordinal term", self.pos)
        ch = self.text[self.pos]
        if ch.isdigit():
            return Ordinal.from_int(self.parse_int())
        if ch != "w":
            raise OrdinalParseError(f"expected 'w' or a number, found {ch!r}", self.pos)
        self.pos += 1
        exponent = ONE
        if self.pos < len(self.text) and self.text[self.pos] == "^":
            self.pos += 1
            exponent = self.parse_exponent_atom()
        coefficient = 1
        self.skip_ws()
        if self.pos < len(self.text) and self.text[self.pos] == "*":
            self.pos += 1
            self.skip_ws()
            if self.pos >= len(self.text) or not self.text[self.pos].isdigit():
                raise OrdinalParseError("expected a coefficient after '*'", self.pos)
            coefficient = self.parse_int()
            if coefficient < 1:
                raise OrdinalParseError("coefficient must be >= 1", self.pos)
        return Ordinal.omega_power(exponent, coefficient)

    def parse_exponent_atom(self) -> Ordinal:
        # An exponent binds tightly: a number, a bare w (with its own ^ chain),
        # or a parenthesized sum. `w^w*3` therefore means (w^w)*3.
        self.skip_ws()
        if self.pos >= len(self.text):
            raise OrdinalParseError("expected an exponent after '^'", self.pos)
        ch = self.text[self.pos]
        if ch == "(":
            self.pos += 1
            value = self.parse_sum()
            self.skip_ws()
            if self.pos >= len(self.text) or self.text[self.pos] != ")":
                raise OrdinalParseError("unclosed '(' in exponent", self.pos)
            self.pos += 1
            return value
        if ch.isdigit():
            return Ordinal.from_int(self.parse_int())
        if ch == "w":
            self.pos += 1
            if self.pos < len(self.text) and self.text[self.pos] == "^":
                self.pos += 1
                return Ordinal.omega_power(self.parse_exponent_atom())
            return OMEGA
        raise OrdinalParseError(f"expected an exponent, found {ch!r}", self.pos)

    def parse_int(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise OrdinalParseError("expected a number", self.pos)
        return int(self.text[start:self.pos])


@total_ordering
@dataclass(frozen=True)
class ExtendedCount:
    """A finite natural number or the countably infinite cardinal.

    value None means countably infinite. Addition absorbs into infinity.
    """

    value: int | None = 0

    def __post_init__(self):
        if self.value is not None and (not isinstance(self.value, int) or self.value < 0):
            raise ValueError("finite count must be a natural number")

    @classmethod
    def finite(cls, n: int) -> "ExtendedCount":
        return cls(n)

    @classmethod
    def infinite(cls) -> "ExtendedCount":
        return cls(None)

    def is_finite(self) -> bool:
        return self.value is not None

    def is_zero(self) -> bool:
        return self.value == 0

    def __add__(self, other: "ExtendedCount") -> "ExtendedCount":
        return count_add(self, other)

    def __lt__(self, other: "ExtendedCount") -> bool:
        if self.value is None:
            return False
        if other.value is None:
            return True
        return self.value < other.value

    def __str__(self) -> str:
        return "inf" if self.value is None else str(self.value)

    def __repr__(self) -> str:
        return f"ExtendedCount({self})"


INFINITE = ExtendedCount.infinite()
ZERO_COUNT = ExtendedCount.finite(0)


def count_add(a: ExtendedCount, b: ExtendedCount) -> ExtendedCount:
    if a.value is None or b.value is None:
        return INFINITE
    return ExtendedCount(a.value + b.value)


def count_mul(a: ExtendedCount, b: ExtendedCount) -> ExtendedCount:
    """Cardinal product with absorption; 0 * inf = 0."""
    if a.is_zero() or b.is_zero():
        return ZERO_COUNT
    if a.value is None or b.value is None:
        return INFINITE
    return ExtendedCount(a.value * b.value)


def count_sum(items: Iterable[ExtendedCount],
              repeated: Iterable[ExtendedCount] = ()) -> ExtendedCount:
    """Cardinal sum of a finite list plus templates repeated over infinite index sets.

    The result is infinite iff some summand is infinite or infinitely many summands
    are nonzero, i.e. iff some item is infinite or some repeated template is nonzero.
    """
    total = ZERO_COUNT
    for item in items:
        total = count_add(total, item)
    for template in repeated:
        if not template.is_zero():
            return INFINITE
    return total


def counts_iter(items: Iterable[ExtendedCount]) -> Iterator[ExtendedCount]:
    return iter(items)
