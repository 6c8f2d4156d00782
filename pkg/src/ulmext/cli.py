"""Command line front end: classify problem specs and run the oracle suites.

Verbs:
  classify   parse a spec, print its complexity class and benchmark level
  explain    classify plus the full decision trace
  benchmark  compare the class-derived ladder against the direct conditions
  validate   parse a spec and echo its canonical form
  oracle     run randomized cross-check suites over the finite-scale oracle

Specs are read from a file path or from stdin via `-`, in either surface
syntax (DSL or JSON).  Exit codes: 0 success, 1 a consistency or oracle
check failed, 2 malformed input or options.  JSON reports (`--json`) are
byte-stable for a fixed spec, seed, and version: they carry no timing.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
import random

from .classifier import ClassificationResult, classify, e0_conditions
from .dsl import SCHEMA_VERSION, SpecParseError, document_to_json, parse_document
from .ordinals import ord_to_text
from .profiles import CyclicLayer, PGroupDesc
from .oracle.intlinalg import (
    identity,
    mat_eq,
    matmul,
    smith_normal_form,
    unimodular_inverse,
)
from .oracle.fg import FgGroup, abelian_groups_up_to, ext_via_presentation, fg_ext
from .oracle.cocycles import class_representatives, ext_via_cocycles
from .oracle.extensions import (
    baer_sum,
    extension_from_cocycle,
    extensions_equivalent,
    split_extension,
)
from .oracle.finite import abelian_type
from .oracle.gadget import GadgetConfig, gadget_build, gadget_equiv_check, tower_law_holds
from .oracle.realize import realization_matches
from .oracle.sixterm import random_short_exact_sequence, six_term_check

_KIND_TEXT = {
    "Smooth": "smooth (countably many invariants suffice)",
    "BireducibleE0": "bireducible with eventual equality E0",
    "ReducibleE0OmegaNotE0": "reducible to E0^omega but not to E0",
    "AboveE0Omega": "not reducible to E0^omega",
}

_CASE_TEXT = {
    "E0-smooth": "no pair is active: at every prime the quotient side's "
                 "first layer is trivial or the coefficient side is bounded",
    "main-1a": "the level mu is a limit ordinal: membership is an "
               "intersection of lower-level tests with nothing left to count",
    "main-1b": "mu sits two or more successor steps above its limit part "
               "and the count w is zero, so the top steps stay a plain "
               "conjunction",
    "main-2": "mu is one successor step above its limit part and the count "
              "W is finite: one eventual condition over a conjunction",
    "main-3": "mu sits two or more successor steps above its limit part "
              "and the count w is finite but nonzero: a difference of two "
              "top-level conditions",
    "main-4a": "mu is one successor step above its limit part and the "
               "count W is infinite, pushing the class one level higher",
    "main-4b": "mu sits two or more successor steps above its limit part "
               "and the count w is infinite, pushing the class one level "
               "higher",
}

SUITE_NAMES = ("snf", "ext3way", "sixterm", "equivclasses", "gadget",
               "profile-realization")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except SpecParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ulmext",
        description="Classify extension problems over described p-groups "
                    "and cross-check the finite-scale oracle.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def spec_verb(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("spec", help="spec file, or - for stdin")
        p.add_argument("--json", action="store_true", dest="as_json",
                       help="emit a machine-readable report")
        return p

    p = spec_verb("classify", "compute the complexity class of a spec")
    p.add_argument("--explain", action="store_true",
                   help="include the decision trace")
    p.set_defaults(handler=cmd_classify)

    p = spec_verb("explain", "classify with the full decision trace")
    p.set_defaults(handler=cmd_classify, explain=True)

    p = spec_verb("benchmark", "derive the benchmark level two ways and compare")
    p.set_defaults(handler=cmd_benchmark)

    p = spec_verb("validate", "parse a spec and echo its canonical form")
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("oracle", help="run randomized oracle suites")
    p.add_argument("spec", nargs="?",
                   help="optional spec document supplying default options")
    p.add_argument("--json", action="store_true", dest="as_json",
                   help="emit a machine-readable report")
    p.add_argument("--suite", action="append", metavar="NAME[,NAME...]",
                   help=f"suites to run (default: all of {', '.join(SUITE_NAMES)})")
    p.add_argument("--seed", type=int, help="random seed (default: "
                   "document option, then $ULMEXT_SEED, then 0)")
    p.add_argument("--trials", type=int, help="trial count override")
    p.add_argument("--max-order", type=int, dest="max_order",
                   help="group-order bound override")
    p.add_argument("-p", type=int, dest="prime", help="gadget prime")
    p.add_argument("-I", type=int, dest="depth", help="gadget row count")
    p.add_argument("-K", type=int, dest="width", help="gadget column count")
    p.set_defaults(handler=cmd_oracle)
    return parser


def _read_spec(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _emit(report: dict):
    print(json.dumps(report, indent=2, sort_keys=True))


# --- classify / explain / benchmark / validate ------------------------------


def _count_json(count):
    return count.value if count.is_finite() else "inf"


def _trace_json(trace: dict) -> dict:
    out = {}
    for key, value in trace.items():
        if key == "mu_p":
            out[key] = {str(label): ord_to_text(mu) for label, mu in value.items()}
        elif key in ("mu", "lambda"):
            out[key] = ord_to_text(value)
        elif key in ("W", "w"):
            out[key] = _count_json(value)
        elif key == "P_mu":
            out[key] = [str(label) for label in value]
        else:
            out[key] = value
    return out


def _benchmark_json(benchmark) -> dict:
    return {
        "kind": benchmark.kind,
        "reducible_to_e0": benchmark.reducible_to_e0,
        "reducible_to_e0_omega": benchmark.reducible_to_e0_omega,
    }


def _class_line(result: ClassificationResult) -> str:
    suffix = " (smooth)" if result.benchmark.is_smooth() else ""
    return f"class: {result.cls}{suffix}"


def _print_trace(result: ClassificationResult):
    trace = result.trace
    tag = trace.get("tag")
    print(f"case: {tag}")
    if tag in _CASE_TEXT:
        print(f"  {_CASE_TEXT[tag]}")
    mus = trace.get("mu_p", {})
    if mus:
        print("mu_p per active pair:")
        for label, mu in mus.items():
            print(f"  {label}: {ord_to_text(mu)}")
    if "mu" in trace:
        print(f"mu: {ord_to_text(trace['mu'])} "
              f"(1 + lambda + n with lambda = {ord_to_text(trace['lambda'])},"
              f" n = {trace['n']})")
    if "P_mu" in trace:
        print("P_mu: " + (", ".join(str(l) for l in trace["P_mu"]) or "(none)"))
    legends = {
        "W": "top-layer quotient summands over the pairs attaining mu",
        "w": "those whose coefficient side is still unbounded below the top",
    }
    for key in ("W", "w"):
        if key in trace:
            print(f"{key}: {_count_json(trace[key])} ({legends[key]})")


def cmd_classify(args) -> int:
    doc = parse_document(_read_spec(args.spec))
    result = classify(doc.problem)
    if args.as_json:
        report = {
            "schema_version": SCHEMA_VERSION,
            "verb": "classify",
            "class": str(result.cls),
            "shape": result.cls.shape,
            "level": ord_to_text(result.cls.level),
            "benchmark": _benchmark_json(result.benchmark),
            "case": result.trace.get("tag"),
        }
        if args.explain:
            report["trace"] = _trace_json(result.trace)
            report["note"] = _CASE_TEXT.get(result.trace.get("tag"), "")
        _emit(report)
        return 0
    print(_class_line(result))
    print(f"benchmark: {_KIND_TEXT[result.benchmark.kind]}")
    if args.explain:
        _print_trace(result)
    return 0


def cmd_benchmark(args) -> int:
    doc = parse_document(_read_spec(args.spec))
    result = classify(doc.problem)
    direct = e0_conditions(doc.problem)
    agree = result.benchmark == direct
    if args.as_json:
        _emit({
            "schema_version": SCHEMA_VERSION,
            "verb": "benchmark",
            "class": str(result.cls),
            "from_class": _benchmark_json(result.benchmark),
            "from_conditions": _benchmark_json(direct),
            "agree": agree,
        })
    else:
        print(_class_line(result))
        print(f"from class:      {result.benchmark.kind}")
        print(f"from conditions: {direct.kind}")
        print(f"agree: {'yes' if agree else 'NO'}")
    return 0 if agree else 1


def cmd_validate(args) -> int:
    doc = parse_document(_read_spec(args.spec))
    if args.as_json:
        _emit(document_to_json(doc))
        return 0
    spec = doc.problem
    print(f"ok (prime blocks: {len(spec.explicit)}, "
          f"family blocks: {len(spec.families)})")
    return 0


# --- oracle suites -----------------------------------------------------------


def _suite_snf(rng, params):
    trials = params.get("trials") or 1000
    failures = []
    for _ in range(trials):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        mat = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
        u, d, v = smith_normal_form(mat)
        problems = []
        if not mat_eq(matmul(matmul(u, mat), v), d):
            problems.append("product mismatch")
        for factor, n in ((u, rows), (v, cols)):
            try:
                if not mat_eq(matmul(factor, unimodular_inverse(factor)),
                              identity(n)):
                    problems.append("inverse mismatch")
            except ValueError:
                problems.append("transform not unimodular")
        diag = [d[i][i] for i in range(min(rows, cols))]
        if any(d[i][j] for i in range(rows) for j in range(cols) if i != j):
            problems.append("not diagonal")
        if any(x < 0 for x in diag):
            problems.append("negative diagonal")
        for a, b in zip(diag, diag[1:]):
            if (b % a if a else b) != 0:
                problems.append("divisor chain broken")
        if problems:
            failures.append(f"{mat}: {', '.join(problems)}")
    return {"name": "snf", "pass": not failures, "trials": trials,
            "failures": failures[:3]}


def _presentation(group: FgGroup):
    n = len(group.torsion)
    return n, [[group.torsion[i] if j == i else 0 for j in range(n)]
               for i in range(n)]


def _suite_ext3way(rng, params):
    bound = params.get("max_order") or 12
    groups = abelian_groups_up_to(bound)
    failures = []
    pairs = 0
    for c_grp in groups:
        gens, relators = _presentation(c_grp)
        for a_grp in groups:
            pairs += 1
            closed = fg_ext(c_grp, a_grp)
            via_pres = ext_via_presentation(gens, relators, a_grp)
            via_coc = ext_via_cocycles(c_grp, a_grp)
            if not (closed == via_pres == via_coc):
                failures.append(
                    f"Ext({c_grp}, {a_grp}): closed {closed}, "
                    f"presentation {via_pres}, cocycles {via_coc}")
    return {"name": "ext3way", "pass": not failures, "max_order": bound,
            "pairs": pairs, "failures": failures[:3]}


def _suite_sixterm(rng, params):
    trials = params.get("trials") or 200
    bound = params.get("max_order") or 16
    coefficient_pool = abelian_groups_up_to(9)
    failures = []
    for _ in range(trials):
        ses = random_short_exact_sequence(rng, bound)
        g = rng.choice(coefficient_pool)
        report = six_term_check(ses, g)
        if not report.all_exact:
            bad = [label for label, ok in report.nodes if not ok]
            failures.append(f"G = {g}: failed at {', '.join(bad)}")
    return {"name": "sixterm", "pass": not failures, "trials": trials,
            "max_order": bound, "failures": failures[:3]}


def _suite_equivclasses(rng, params):
    bound = params.get("max_order") or 6
    groups = abelian_groups_up_to(bound)
    failures = []
    pairs = 0
    classes = 0
    for c_grp in groups:
        for a_grp in groups:
            pairs += 1
            expected = fg_ext(c_grp, a_grp)
            exts = [extension_from_cocycle(rep)
                    for rep in class_representatives(c_grp, a_grp)]
            classes += len(exts)
            if len(exts) != expected.order():
                failures.append(f"({c_grp}, {a_grp}): {len(exts)} classes, "
                                f"|Ext| = {expected.order()}")
                continue
            distinct = all(
                not extensions_equivalent(exts[i], exts[j])
                for i in range(len(exts)) for j in range(i + 1, len(exts)))
            if not distinct:
                failures.append(f"({c_grp}, {a_grp}): equivalent representatives")
                continue

            def class_index(ext):
                for i, known in enumerate(exts):
                    if extensions_equivalent(known, ext):
                        return i
                return None

            zero_index = class_index(
                split_extension(c_grp.moduli(), a_grp.moduli()))
            table = {}
            closed = True
            for i in range(len(exts)):
                for j in range(i, len(exts)):
                    k = class_index(baer_sum(exts[i], exts[j]))
                    if k is None:
                        closed = False
                    table[(i, j)] = table[(j, i)] = k
            if not closed or zero_index is None:
                failures.append(f"({c_grp}, {a_grp}): sums leave the class list")
                continue
            got = abelian_type(range(len(exts)),
                               lambda x, y: table[(x, y)], zero_index)
            if FgGroup.from_factors(got) != expected:
                failures.append(f"({c_grp}, {a_grp}): sum table has type "
                                f"{got}, |Ext| type {expected}")
    return {"name": "equivclasses", "pass": not failures, "max_order": bound,
            "pairs": pairs, "classes": classes, "failures": failures[:3]}


def _random_pattern(rng, cfg: GadgetConfig):
    return tuple(tuple(rng.randrange(cfg.prime) for _ in range(cfg.width))
                 for _ in range(cfg.depth))


def _mutate(rng, pattern, cells, prime):
    i, k = rng.choice(cells)
    rows = [list(row) for row in pattern]
    rows[i][k] = (rows[i][k] + rng.randint(1, prime - 1)) % prime
    return tuple(tuple(row) for row in rows)


def _suite_gadget(rng, params):
    prime = params.get("prime") or 2
    depth = params.get("depth") or 4
    width = params.get("width") or 4
    trials = params.get("trials") or 500
    base = GadgetConfig(prime, depth, width)
    failures = []
    for _ in range(trials):
        cfg = GadgetConfig(prime, depth, width,
                           pattern=_random_pattern(rng, base))
        if not tower_law_holds(cfg, gadget_build(cfg)):
            failures.append(f"tower law broken for pattern {cfg.pattern}")
    agree = disagree = 0
    for trial in range(trials):
        eps = _random_pattern(rng, base)
        thresholds = tuple(sorted(rng.randint(0, width)
                                  for _ in range(depth)))
        # Live cells sit at column >= row; below that the table is zero.
        invisible = [(i, k) for i in range(depth)
                     for k in range(min(max(thresholds[i], i), width))]
        visible = [(i, k) for i in range(depth)
                   for k in range(max(thresholds[i], i), width)]
        mode = trial % 3
        if mode == 0 and invisible:
            other = _mutate(rng, eps, invisible, prime)
        elif mode == 1 and visible:
            other = _mutate(rng, eps, visible, prime)
        else:
            other = _random_pattern(rng, base)
        pattern_agree, table_agree = gadget_equiv_check(
            base, eps, other, thresholds)
        if pattern_agree != table_agree:
            failures.append(
                f"pattern agreement {pattern_agree} but table agreement "
                f"{table_agree} at thresholds {thresholds}")
        if pattern_agree:
            agree += 1
        else:
            disagree += 1
    return {"name": "gadget", "pass": not failures, "prime": prime,
            "depth": depth, "width": width, "trials": trials,
            "agreements": agree, "disagreements": disagree,
            "failures": failures[:3]}


def _suite_profile_realization(rng, params):
    trials = params.get("trials") or 200
    failures = []
    for _ in range(trials):
        prime = rng.choice((2, 3, 5))
        counts = {}
        for exponent in rng.sample(range(1, 6), rng.randint(1, 3)):
            counts[exponent] = rng.randint(1, 3)
        desc = PGroupDesc.make(
            prime, segments=[(0, 1, CyclicLayer.make(counts))])
        if not realization_matches(desc):
            failures.append(f"p = {prime}, layer {counts}")
    return {"name": "profile-realization", "pass": not failures,
            "trials": trials, "failures": failures[:3]}


_SUITES = {
    "snf": _suite_snf,
    "ext3way": _suite_ext3way,
    "sixterm": _suite_sixterm,
    "equivclasses": _suite_equivclasses,
    "gadget": _suite_gadget,
    "profile-realization": _suite_profile_realization,
}


def _resolve_seed(args, options) -> int:
    if args.seed is not None:
        return args.seed
    if "seed" in options:
        return options["seed"]
    raw = os.environ.get("ULMEXT_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"ULMEXT_SEED must be an integer, got {raw!r}")


def _resolve_suites(args, options):
    chosen = []
    if args.suite:
        for chunk in args.suite:
            chosen.extend(name.strip() for name in chunk.split(",") if name.strip())
    elif options.get("suites"):
        chosen = list(options["suites"])
    else:
        chosen = list(SUITE_NAMES)
    for name in chosen:
        if name not in _SUITES:
            raise ValueError(f"unknown suite {name!r} "
                             f"(available: {', '.join(SUITE_NAMES)})")
    deduped = []
    for name in chosen:
        if name not in deduped:
            deduped.append(name)
    return deduped


def cmd_oracle(args) -> int:
    options = {}
    if args.spec:
        options = parse_document(_read_spec(args.spec)).options
    seed = _resolve_seed(args, options)
    suites = _resolve_suites(args, options)
    params = {
        "trials": args.trials if args.trials is not None
        else options.get("trials"),
        "max_order": args.max_order if args.max_order is not None
        else options.get("max_order"),
        "prime": args.prime,
        "depth": args.depth,
        "width": args.width,
    }
    for key, value in params.items():
        if value is not None and value < (2 if key == "prime" else 0):
            raise ValueError(f"{key} must be at least "
                             f"{2 if key == 'prime' else 0}, got {value}")
    reports = []
    timings = []
    for name in suites:
        started = time.monotonic()
        # Seed per suite, so one suite's draws never shift another's.
        reports.append(_SUITES[name](random.Random(f"{seed}:{name}"), params))
        timings.append(time.monotonic() - started)
    all_pass = all(report["pass"] for report in reports)
    if args.as_json:
        _emit({
            "schema_version": SCHEMA_VERSION,
            "verb": "oracle",
            "seed": seed,
            "pass": all_pass,
            "suites": reports,
        })
        return 0 if all_pass else 1
    print(f"seed: {seed}")
    for report, elapsed in zip(reports, timings):
        name = report["name"]
        verdict = "pass" if report["pass"] else "FAIL"
        detail = ", ".join(f"{key}: {value}" for key, value in report.items()
                           if key not in ("name", "pass", "failures"))
        print(f"{name}: {verdict} ({detail}) [{elapsed:.2f}s]")
        for witness in report["failures"]:
            print(f"    {witness}")
    print(f"result: {'pass' if all_pass else 'FAIL'}")
    return 0 if all_pass else 1


if __name__ == "__main__":
    sys.exit(main())
