"""Surface syntaxes for classification problems: a small DSL and a JSON form.

Both surfaces describe the same thing, a ProblemSpec: finitely many
per-prime blocks plus optional infinite families, each block giving the
quotient-side group C and the coefficient-side group A as p-group
descriptions.

DSL grammar (whitespace-insensitive, `#` starts a line comment):

    spec        ::= block*
    block       ::= "prime" INT body | "family" "primes" ">" INT body
    body        ::= "{" assignment assignment "}"
    assignment  ::= ("C" | "A") "=" group-expr ";"
    group-expr  ::= atom ("+" atom)*
    atom        ::= "0"
                  | "Z/p^" INT mult? | "Z/p" mult?
                  | "Z(p^inf)" mult?
                  | "sum_{n>=" INT "}" "Z/p^n" mult?
                  | "layers" "{" entry (";" entry)* ";"? "}"
    mult        ::= "*" (INT | "inf")
    entry       ::= range ":" layer-sum
    range       ::= ordinal | ordinal ".." ordinal
    layer-sum   ::= layer-atom ("+" layer-atom)*
    layer-atom  ::= ("Z/p^" INT | "Z/p" | "tail" "(" INT ")") mult?

The letter `p` always denotes the enclosing block's prime (symbolic in
family blocks).  `sum_{n>=k} Z/p^n` is one cyclic summand of each order
p^n for n >= k; with a multiplicity it is that many of each.  A `layers`
block lists Ulm layers by position; a bare ordinal names the single
position [a, a+1) and `a .. b` the half-open run [a, b).  Ordinals use
the `w^2 + w*3 + 5` syntax.

The JSON surface is an object {"schema_version": 1, "problem": {...},
"options": {...}} with descriptions spelled structurally; see
spec_to_json for the exact shape.  parse_spec accepts either surface,
telling them apart by a leading "{".

Errors carry a line and column.  JSON-side semantic errors point at the
document start and name the offending path in the message.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .classifier import ProblemSpec
from .ordinals import (
    INFINITE,
    ONE,
    Ordinal,
    OrdinalParseError,
    ord_add,
    ord_compare,
    ord_parse,
    ord_to_text,
)
from .profiles import CyclicLayer, PGroupDesc, direct_sum

SCHEMA_VERSION = 1

_OPTION_KEYS = ("max_order", "seed", "suites", "trials")


class SpecParseError(ValueError):
    """A located diagnostic for a malformed or invalid problem spec."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class SpecDocument:
    """A parsed input document: version, the problem, and run options."""

    version: int
    problem: ProblemSpec
    options: dict = field(default_factory=dict)


def parse_spec(text: str) -> ProblemSpec:
    """Parse DSL or JSON text (autodetected) into a validated ProblemSpec."""
    return parse_document(text).problem


def parse_document(text: str) -> SpecDocument:
    """Like parse_spec but keeping the version tag and options alongside."""
    if text.lstrip()[:1] == "{":
        return _document_from_json_text(text)
    spec = _DslParser(text).parse()
    return SpecDocument(SCHEMA_VERSION, spec, {})


# --- DSL scanner -----------------------------------------------------------

_PUNCT_TWO = ("..", ">=")
_PUNCT_ONE = "{}()=;:+*/^_>"


@dataclass(frozen=True)
class _Token:
    kind: str  # "int" | "name" | "punct" | "end"
    text: str
    offset: int
    line: int
    column: int


def _scan(text: str) -> list:
    tokens = []
    pos, line, col = 0, 1, 1

    def advance(n):
        nonlocal pos, line, col
        for _ in range(n):
            if text[pos] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            pos += 1

    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            advance(1)
            continue
        if ch == "#":
            while pos < len(text) and text[pos] != "\n":
                advance(1)
            continue
        start = pos, line, col
        if ch.isdigit():
            while pos < len(text) and text[pos].isdigit():
                advance(1)
            tokens.append(_Token("int", text[start[0]:pos], *start))
            continue
        if ch.isalpha():
            while pos < len(text) and text[pos].isalnum():
                advance(1)
            tokens.append(_Token("name", text[start[0]:pos], *start))
            continue
        if text[pos:pos + 2] in _PUNCT_TWO:
            advance(2)
            tokens.append(_Token("punct", text[start[0]:pos], *start))
            continue
        if ch in _PUNCT_ONE:
            advance(1)
            tokens.append(_Token("punct", ch, *start))
            continue
        raise SpecParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("end", "", pos, line, col))
    return tokens


# --- DSL parser ------------------------------------------------------------


class _DslParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _scan(text)
        self.index = 0

    def parse(self) -> ProblemSpec:
        explicit = []
        families = []
        primes_seen = set()
        markers_seen = set()
        while self.peek().kind != "end":
            tok = self.peek()
            if tok.kind == "name" and tok.text == "prime":
                entry = self.parse_prime_block()
                if entry[0] in primes_seen:
                    self.fail(f"prime {entry[0]} listed twice", tok)
                primes_seen.add(entry[0])
                explicit.append(entry)
            elif tok.kind == "name" and tok.text == "family":
                entry = self.parse_family_block()
                if entry[0] in markers_seen:
                    self.fail(f"family {entry[0]!r} listed twice", tok)
                markers_seen.add(entry[0])
                families.append(entry)
            else:
                self.fail("expected a 'prime' or 'family' block", tok)
        try:
            return ProblemSpec.make(explicit, families)
        except ValueError as err:
            raise SpecParseError(str(err), 1, 1) from err

    # -- tokens --

    def peek(self) -> _Token:
        return self.tokens[self.index]

    def take(self) -> _Token:
        tok = self.tokens[self.index]
        if tok.kind != "end":
            self.index += 1
        return tok

    def at_punct(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind == "punct" and tok.text == text

    def expect_punct(self, text: str) -> _Token:
        if not self.at_punct(text):
            self.fail(f"expected {text!r}", self.peek())
        return self.take()

    def expect_name(self, word: str) -> _Token:
        tok = self.peek()
        if tok.kind != "name" or tok.text != word:
            self.fail(f"expected {word!r}", tok)
        return self.take()

    def expect_int(self, what: str) -> int:
        tok = self.peek()
        if tok.kind != "int":
            self.fail(f"expected {what}", tok)
        return int(self.take().text)

    def fail(self, message: str, tok: _Token):
        raise SpecParseError(message, tok.line, tok.column)

    def locate(self, offset: int):
        head = self.text[:offset]
        line = head.count("\n") + 1
        column = offset - (head.rfind("\n") + 1) + 1
        return line, column

    # -- blocks --

    def parse_prime_block(self):
        head = self.expect_name("prime")
        p = self.expect_int("a prime after 'prime'")
        c_desc, a_desc = self.parse_block_body(p)
        try:
            ProblemSpec.make([(p, c_desc, a_desc)])
        except ValueError as err:
            self.fail(str(err), head)
        return (p, c_desc, a_desc)

    def parse_family_block(self):
        head = self.expect_name("family")
        self.expect_name("primes")
        self.expect_punct(">")
        bound = self.expect_int("a bound after 'primes >'")
        marker = f"primes>{bound}"
        c_desc, a_desc = self.parse_block_body(None)
        try:
            ProblemSpec.make((), [(marker, c_desc, a_desc)])
        except ValueError as err:
            self.fail(str(err), head)
        return (marker, c_desc, a_desc)

    def parse_block_body(self, prime):
        self.expect_punct("{")
        sides = {}
        while not self.at_punct("}"):
            tok = self.peek()
            if tok.kind != "name" or tok.text not in ("C", "A"):
                self.fail("expected 'C = ...' or 'A = ...'", tok)
            if tok.text in sides:
                self.fail(f"{tok.text} assigned twice", tok)
            self.take()
            self.expect_punct("=")
            sides[tok.text] = self.parse_group_expr(prime)
            self.expect_punct(";")
        closing = self.take()
        for side in ("C", "A"):
            if side not in sides:
                self.fail(f"block is missing an assignment for {side}", closing)
        return sides["C"], sides["A"]

    # -- group expressions --

    def parse_group_expr(self, prime) -> PGroupDesc:
        total = self.parse_group_atom(prime)
        while self.at_punct("+"):
            self.take()
            total = direct_sum(total, self.parse_group_atom(prime))
        return total

    def parse_group_atom(self, prime) -> PGroupDesc:
        tok = self.peek()
        if tok.kind == "int" and tok.text == "0":
            self.take()
            return PGroupDesc.zero(prime)
        if tok.kind == "name" and tok.text == "Z":
            return self.parse_z_atom(prime)
        if tok.kind == "name" and tok.text == "sum":
            return self.parse_sum_atom(prime)
        if tok.kind == "name" and tok.text == "layers":
            return self.parse_layers_atom(prime)
        self.fail("expected a group expression: 0, Z/p^n, Z(p^inf), "
                  "sum_{n>=k} Z/p^n, or layers {...}", tok)

    def parse_z_atom(self, prime) -> PGroupDesc:
        self.expect_name("Z")
        if self.at_punct("("):
            self.take()
            self.expect_name("p")
            self.expect_punct("^")
            self.expect_name("inf")
            self.expect_punct(")")
            rank = self.parse_mult()
            return PGroupDesc.make(prime, divisible_rank=rank)
        exponent, count = self.parse_cyclic_tail()
        layer = CyclicLayer.make({exponent: count})
        if layer.is_zero():
            return PGroupDesc.zero(prime)
        return PGroupDesc.make(prime, segments=[(0, 1, layer)])

    def parse_cyclic_tail(self):
        # After `Z`: the `/p`, an optional `^n` exponent, an optional count.
        self.expect_punct("/")
        self.expect_name("p")
        exponent = 1
        if self.at_punct("^"):
            self.take()
            tok = self.peek()
            exponent = self.expect_int("an exponent after '^'")
            if exponent < 1:
                self.fail("cyclic exponents start at 1", tok)
        return exponent, self.parse_mult()

    def parse_sum_atom(self, prime) -> PGroupDesc:
        self.expect_name("sum")
        self.expect_punct("_")
        self.expect_punct("{")
        self.expect_name("n")
        self.expect_punct(">=")
        tok = self.peek()
        start = self.expect_int("a starting exponent")
        if start < 1:
            self.fail("the starting exponent must be >= 1", tok)
        self.expect_punct("}")
        self.expect_name("Z")
        self.expect_punct("/")
        self.expect_name("p")
        self.expect_punct("^")
        self.expect_name("n")
        per = self.parse_mult()
        layer = CyclicLayer.make({}, tail=(start, per))
        if layer.is_zero():
            return PGroupDesc.zero(prime)
        return PGroupDesc.make(prime, segments=[(0, 1, layer)])

    def parse_layers_atom(self, prime) -> PGroupDesc:
        head = self.expect_name("layers")
        self.expect_punct("{")
        entries = []
        while not self.at_punct("}"):
            entries.append(self.parse_layer_entry())
            if self.at_punct(";"):
                self.take()
            elif not self.at_punct("}"):
                self.fail("expected ';' or '}' after a layer entry", self.peek())
        self.take()
        entries.sort(key=_SegmentKey)
        try:
            return PGroupDesc.make(prime, segments=entries)
        except ValueError as err:
            self.fail(str(err), head)

    def parse_layer_entry(self):
        start = self.parse_range_ordinal((":", ".."))
        if self.at_punct(".."):
            self.take()
            end = self.parse_range_ordinal((":",))
        else:
            end = ord_add(start, ONE)
        self.expect_punct(":")
        layer = self.parse_layer_atom()
        while self.at_punct("+"):
            self.take()
            layer = layer.add(self.parse_layer_atom())
        return (start, end, layer)

    def parse_range_ordinal(self, stops) -> Ordinal:
        start_tok = self.peek()
        scan = self.index
        while self.tokens[scan].kind != "end" and not (
                self.tokens[scan].kind == "punct"
                and self.tokens[scan].text in stops):
            scan += 1
        if self.tokens[scan].kind == "end":
            self.fail("expected ':' after a layer range", self.tokens[scan])
        snippet = self.text[start_tok.offset:self.tokens[scan].offset]
        try:
            value = ord_parse(snippet)
        except OrdinalParseError as err:
            line, column = self.locate(start_tok.offset + err.position)
            message = err.args[0].rsplit(" (at offset", 1)[0]
            raise SpecParseError(message, line, column) from err
        self.index = scan
        return value

    def parse_layer_atom(self) -> CyclicLayer:
        tok = self.peek()
        if tok.kind == "name" and tok.text == "Z":
            self.take()
            exponent, count = self.parse_cyclic_tail()
            return CyclicLayer.make({exponent: count})
        if tok.kind == "name" and tok.text == "tail":
            self.take()
            self.expect_punct("(")
            start_tok = self.peek()
            start = self.expect_int("a starting exponent in tail(...)")
            if start < 1:
                self.fail("tail starts at exponent 1 or higher", start_tok)
            self.expect_punct(")")
            return CyclicLayer.make({}, tail=(start, self.parse_mult()))
        self.fail("expected a layer summand: Z/p^n or tail(k)", tok)

    def parse_mult(self):
        if not self.at_punct("*"):
            return 1
        self.take()
        tok = self.peek()
        if tok.kind == "int":
            return int(self.take().text)
        if tok.kind == "name" and tok.text == "inf":
            self.take()
            return INFINITE
        self.fail("expected a count (a number or 'inf') after '*'", tok)


class _SegmentKey:
    __slots__ = ("start",)

    def __init__(self, entry):
        self.start = entry[0]

    def __lt__(self, other):
        return ord_compare(self.start, other.start) < 0


# --- canonical DSL output --------------------------------------------------


def serialize_spec(spec: ProblemSpec) -> str:
    """Render the canonical DSL text; parse(serialize(s)) == s."""
    chunks = []
    for p, c_desc, a_desc in spec.explicit:
        chunks.append(_block_text(f"prime {p}", c_desc, a_desc))
    for marker, c_desc, a_desc in spec.families:
        chunks.append(_block_text(f"family primes > {_marker_bound(marker)}",
                                  c_desc, a_desc))
    return "\n".join(chunks)


def _marker_bound(marker: str) -> int:
    prefix, _, bound = marker.partition(">")
    if prefix != "primes" or not bound.isdigit():
        raise ValueError(f"family marker {marker!r} has no surface form; "
                         f"use 'primes>k'")
    return int(bound)


def _block_text(head: str, c_desc, a_desc) -> str:
    return (f"{head} {{\n"
            f"  C = {_group_text(c_desc)};\n"
            f"  A = {_group_text(a_desc)};\n"
            f"}}\n")


def _group_text(desc: PGroupDesc) -> str:
    parts = []
    if not desc.divisible_rank.is_zero():
        parts.append("Z(p^inf)" + _mult_text(desc.divisible_rank))
    segments = desc.reduced.segments
    if len(segments) == 1 and _is_unit_range(*segments[0][:2]):
        parts.extend(_layer_atoms(segments[0][2], inline=True))
    elif segments:
        entries = "; ".join(
            f"{_range_text(start, end)}: "
            f"{' + '.join(_layer_atoms(layer, inline=False))}"
            for start, end, layer in segments)
        parts.append(f"layers {{ {entries} }}")
    return " + ".join(parts) if parts else "0"


def _layer_atoms(layer: CyclicLayer, inline: bool) -> list:
    # A tail is spelled sum_{n>=k} Z/p^n at expression level but tail(k)
    # inside a layers block.
    atoms = []
    for exponent, count in layer.explicit:
        base = "Z/p" if exponent == 1 else f"Z/p^{exponent}"
        atoms.append(base + _mult_text(count))
    if layer.tail is not None:
        start, per = layer.tail
        shape = f"sum_{{n>={start}}} Z/p^n" if inline else f"tail({start})"
        atoms.append(shape + _mult_text(per))
    return atoms


def _mult_text(count) -> str:
    if count.is_finite() and count.value == 1:
        return ""
    return f" * {count.value if count.is_finite() else 'inf'}"


def _is_unit_range(start, end) -> bool:
    return start.is_zero() and ord_compare(end, ONE) == 0


def _range_text(start, end) -> str:
    if ord_compare(end, ord_add(start, ONE)) == 0:
        return ord_to_text(start)
    return f"{ord_to_text(start)} .. {ord_to_text(end)}"


# --- JSON surface ----------------------------------------------------------


def spec_to_json(spec: ProblemSpec, options=None, version=SCHEMA_VERSION) -> dict:
    """The JSON-ready document for a spec; inverse of parsing, as plain data."""
    problem = {
        "explicit": [
            {"prime": p, "C": _desc_to_json(c), "A": _desc_to_json(a)}
            for p, c, a in spec.explicit
        ],
        "families": [
            {"marker": marker, "C": _desc_to_json(c), "A": _desc_to_json(a)}
            for marker, c, a in spec.families
        ],
    }
    document = {"schema_version": version, "problem": problem}
    if options:
        document["options"] = dict(options)
    return document


def document_to_json(doc: SpecDocument) -> dict:
    return spec_to_json(doc.problem, doc.options, doc.version)


def _desc_to_json(desc: PGroupDesc) -> dict:
    layers = []
    for start, end, layer in desc.reduced.segments:
        layers.append({
            "start": ord_to_text(start),
            "end": ord_to_text(end),
            "summands": {str(e): _count_to_json(c) for e, c in layer.explicit},
            "tail": (list((layer.tail[0], _count_to_json(layer.tail[1])))
                     if layer.tail is not None else None),
        })
    return {"divisible_rank": _count_to_json(desc.divisible_rank),
            "layers": layers}


def _count_to_json(count):
    return count.value if count.is_finite() else "inf"


def _document_from_json_text(text: str) -> SpecDocument:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as err:
        raise SpecParseError(err.msg, err.lineno, err.colno) from err
    return document_from_json(payload)


def document_from_json(payload) -> SpecDocument:
    """Validate a decoded JSON document; errors name the offending path."""
    _need(isinstance(payload, dict), "document", "must be a JSON object")
    _known_keys(payload, ("options", "problem", "schema_version"), "document")
    version = payload.get("schema_version", SCHEMA_VERSION)
    _need(version == SCHEMA_VERSION, "schema_version",
          f"unsupported value {version!r}, expected {SCHEMA_VERSION}")
    problem = payload.get("problem", {})
    _need(isinstance(problem, dict), "problem", "must be an object")
    _known_keys(problem, ("explicit", "families"), "problem")
    explicit = []
    for i, entry in enumerate(_json_list(problem, "explicit")):
        path = f"problem.explicit[{i}]"
        _need(isinstance(entry, dict), path, "must be an object")
        _known_keys(entry, ("A", "C", "prime"), path)
        prime = entry.get("prime")
        _need(isinstance(prime, int) and not isinstance(prime, bool),
              f"{path}.prime", "must be an integer")
        explicit.append((prime,
                         _desc_from_json(entry.get("C"), prime, f"{path}.C"),
                         _desc_from_json(entry.get("A"), prime, f"{path}.A")))
    families = []
    for i, entry in enumerate(_json_list(problem, "families")):
        path = f"problem.families[{i}]"
        _need(isinstance(entry, dict), path, "must be an object")
        _known_keys(entry, ("A", "C", "marker"), path)
        marker = entry.get("marker")
        _need(isinstance(marker, str) and marker, f"{path}.marker",
              "must be a nonempty string")
        families.append((marker,
                         _desc_from_json(entry.get("C"), None, f"{path}.C"),
                         _desc_from_json(entry.get("A"), None, f"{path}.A")))
    try:
        spec = ProblemSpec.make(explicit, families)
    except ValueError as err:
        raise SpecParseError(f"problem: {err}", 1, 1) from err
    return SpecDocument(version, spec, _options_from_json(payload))


def _options_from_json(payload) -> dict:
    options = payload.get("options", {})
    _need(isinstance(options, dict), "options", "must be an object")
    _known_keys(options, _OPTION_KEYS, "options")
    for key in ("max_order", "seed", "trials"):
        if key in options:
            value = options[key]
            _need(isinstance(value, int) and not isinstance(value, bool),
                  f"options.{key}", "must be an integer")
    if "suites" in options:
        suites = options["suites"]
        _need(isinstance(suites, list)
              and all(isinstance(name, str) for name in suites),
              "options.suites", "must be a list of suite names")
    return dict(options)


def _desc_from_json(payload, prime, path) -> PGroupDesc:
    _need(isinstance(payload, dict), path, "must be an object")
    _known_keys(payload, ("divisible_rank", "layers"), path)
    rank = _count_from_json(payload.get("divisible_rank", 0),
                            f"{path}.divisible_rank")
    segments = []
    for i, entry in enumerate(_json_list(payload, "layers", path)):
        lpath = f"{path}.layers[{i}]"
        _need(isinstance(entry, dict), lpath, "must be an object")
        _known_keys(entry, ("end", "start", "summands", "tail"), lpath)
        start = _ordinal_from_json(entry.get("start"), f"{lpath}.start")
        end = _ordinal_from_json(entry.get("end"), f"{lpath}.end")
        summands = entry.get("summands", {})
        _need(isinstance(summands, dict), f"{lpath}.summands",
              "must be an object")
        explicit = {}
        for key, value in summands.items():
            _need(key.isdigit() and int(key) >= 1, f"{lpath}.summands",
                  f"exponent key {key!r} must be a positive integer")
            explicit[int(key)] = _count_from_json(
                value, f"{lpath}.summands[{key!r}]")
        tail = entry.get("tail")
        if tail is not None:
            _need(isinstance(tail, list) and len(tail) == 2
                  and isinstance(tail[0], int) and not isinstance(tail[0], bool),
                  f"{lpath}.tail", "must be a [start, count] pair")
            tail = (tail[0], _count_from_json(tail[1], f"{lpath}.tail[1]"))
        try:
            layer = CyclicLayer.make(explicit, tail)
        except ValueError as err:
            raise SpecParseError(f"{lpath}: {err}", 1, 1) from err
        segments.append((start, end, layer))
    try:
        return PGroupDesc.make(prime, rank, segments)
    except ValueError as err:
        raise SpecParseError(f"{path}: {err}", 1, 1) from err


def _ordinal_from_json(value, path) -> Ordinal:
    _need(isinstance(value, str), path, "must be an ordinal string")
    try:
        return ord_parse(value)
    except OrdinalParseError as err:
        raise SpecParseError(f"{path}: {err}", 1, 1) from err


def _count_from_json(value, path):
    if value == "inf":
        return INFINITE
    _need(isinstance(value, int) and not isinstance(value, bool)
          and value >= 0, path, "must be a nonnegative integer or \"inf\"")
    return value


def _json_list(payload, key, prefix="problem"):
    value = payload.get(key, [])
    _need(isinstance(value, list), f"{prefix}.{key}" if prefix else key,
          "must be an array")
    return value


def _need(condition, path, message):
    if not condition:
        raise SpecParseError(f"{path}: {message}", 1, 1)


def _known_keys(payload, allowed, path):
    for key in payload:
        if key not in allowed:
            raise SpecParseError(
                f"{path}: unknown key {key!r} "
                f"(allowed: {', '.join(allowed)})", 1, 1)
