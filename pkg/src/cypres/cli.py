"""Command-line interface.

Every command prints one object ``{command, params, results, provenance, timing}``
as sorted-key JSON (default) or as plain ``key: value`` lines. ``--no-timing``
drops the timing field so identical inputs give byte-identical output.

Exit codes: 0 success, 1 verification disagreement, 2 invalid input,
3 unsupported hypothesis.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .cosets import STRATEGIES, default_max_cosets, enumerate_cosets
from .errors import InvalidInput, Unsupported
from .invariants import AbelianGroup, abelianization
from .jfamily import (
    FAMILIES,
    StructureReport,
    a_closed_form,
    a_resultant,
    canonical_form,
    classify,
    fibonacci_subgroup,
    is_aspherical,
    is_isomorphic,
    prime_families,
)
from .params import JParams
from .presentations import (
    build_derived_presentation,
    build_refined_derived_presentation,
    build_u_presentation,
    parse_presentation,
    parse_word,
    print_presentation,
)

EXIT_OK, EXIT_DISAGREE, EXIT_INVALID, EXIT_UNSUPPORTED = 0, 1, 2, 3
INT64_MAX = (1 << 63) - 1


@dataclass
class Outcome:
    params: dict
    results: dict
    provenance: list[str] = field(default_factory=list)
    plain: str | None = None
    disagreement: bool = False


def jsonable(x):
    """Ints outside the signed 64-bit range become decimal strings."""
    if isinstance(x, bool) or x is None or isinstance(x, (str, float)):
        return x
    if isinstance(x, int):
        return x if -INT64_MAX - 1 <= x <= INT64_MAX else str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, JParams):
        return list(x.as_tuple())
    return str(x)


def _order_value(order):
    return order.value if order.is_finite else "infinite"


def _factors(group: AbelianGroup | None):
    if group is None:
        return None
    return list(group.invariant_factors) + [0] * group.free_rank


def report_dict(rep: StructureReport) -> dict:
    return {
        "params": rep.params,
        "order": _order_value(rep.order),
        "a": rep.a_value,
        "structure": rep.structure.value,
        "derived": _factors(rep.derived_invariants),
        "d": rep.d,
        "j2_free_rank": rep.j2_free_rank,
        "free_factor_order": rep.free_factor_order,
    }


def _jparams(args) -> JParams:
    return JParams(args.n, args.m, args.k)


# ---------------------------------------------------------------------------
# Commands


def cmd_structure(args) -> Outcome:
    p = _jparams(args)
    rep = classify(p)
    results = report_dict(rep)
    provenance = ["structure-classification", "resultant"]
    checks: dict[str, object] = {}
    q = rep.params
    if q.m > 0 and q.coprime:
        provenance.append("closed-form")
        checks["closed-form"] = a_closed_form(q)
        checks["resultant"] = a_resultant(q).value
    if args.snf and q.m > 0:
        provenance.append("smith-normal-form")
        ab = abelianization(build_derived_presentation(q))
        checks["smith-normal-form"] = ab.order.value if ab.is_finite else "infinite"
    if args.tc and rep.order.is_finite:
        from .verify import tc_index

        provenance.append("todd-coxeter")
        tc, _ = tc_index(q, (), args.max_cosets or default_max_cosets())
        results["todd_coxeter"] = "exceeded" if tc.exceeded else tc.index
        if not tc.exceeded and tc.index != rep.order.value:
            results["disagreements"] = [f"todd-coxeter order {tc.index} != {rep.order.value}"]
    bad = [f"{path} a = {v} != {rep.a_value}" for path, v in checks.items() if v != rep.a_value]
    if q.m > 0 and q.coprime and bad:
        results.setdefault("disagreements", []).extend(bad)
    return Outcome({"n": p.n, "m": p.m, "k": p.k}, results, provenance, disagreement="disagreements" in results)


def cmd_iso(args) -> Outcome:
    p1, p2 = JParams(args.n, args.m1, args.k1), JParams(args.n, args.m2, args.k2)
    verdict, reason = is_isomorphic(p1, p2)
    return Outcome(
        {"n": args.n, "m1": args.m1, "k1": args.k1, "m2": args.m2, "k2": args.k2},
        {"isomorphic": verdict, "reason": reason},
        ["congruence-test"],
        plain=f"{str(verdict).lower()} ({reason})",
    )


def cmd_canonical(args) -> Outcome:
    p = _jparams(args)
    c = canonical_form(p)
    return Outcome(
        {"n": p.n, "m": p.m, "k": p.k}, {"canonical": c}, ["congruence-test"], plain=" ".join(map(str, c.as_tuple()))
    )


def cmd_aspherical(args) -> Outcome:
    p = _jparams(args)
    verdict = is_aspherical(p)
    return Outcome({"n": p.n, "m": p.m, "k": p.k}, {"aspherical": verdict}, ["congruence-test"], plain=str(verdict).lower())


def cmd_derived(args) -> Outcome:
    p = _jparams(args)
    if args.refined:
        pres, kind = build_refined_derived_presentation(p), "refined"
    elif args.u:
        pres, kind = build_u_presentation(p), "u"
    else:
        pres, kind = build_derived_presentation(p), "bicyclic"
    gp = pres.to_presentation()
    text = print_presentation(pres)
    return Outcome(
        {"n": p.n, "m": p.m, "k": p.k, "form": kind},
        {"presentation": text, "generators": len(gp.generators), "relators": len(gp.relators)},
        [f"{kind}-builder"],
        plain=text,
    )


def _read_presentation(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from exc
    return parse_presentation(text)


def cmd_abelianization(args) -> Outcome:
    ab = abelianization(_read_presentation(args.file))
    return Outcome(
        {"file": args.file},
        {"factors": list(ab.invariant_factors), "free_rank": ab.free_rank, "order": _order_value(ab.order)},
        ["smith-normal-form"],
        plain=str(ab),
    )


def cmd_enumerate(args) -> Outcome:
    pres = _read_presentation(args.file)
    words = []
    for text in args.subgroup:
        words.extend(parse_word(part, pres.generators) for part in text.split(",") if part.strip())
    max_cosets = args.max_cosets or default_max_cosets()
    result = enumerate_cosets(pres, words, max_cosets, strategy=args.strategy)
    index = "exceeded" if result.exceeded else result.index
    return Outcome(
        {"file": args.file, "subgroup": [str(w) for w in words], "max_cosets": max_cosets, "strategy": args.strategy},
        {"index": index, "total_defined": result.total_defined, "max_live": result.max_live},
        [f"todd-coxeter:{args.strategy}"],
        plain=str(index),
    )


def cmd_verify(args) -> Outcome:
    from .verify import SWEEP_MAX_COSETS, run_sweep

    ns = tuple(sorted(set(args.n or (4, 6))))
    for n in ns:
        JParams(n, 1, 0)
    report = run_sweep(ns, args.m_max, args.max_order, args.max_cosets or SWEEP_MAX_COSETS)
    failures = [
        {"check": f.check, "params": f.params, "expected": str(f.expected), "got": str(f.got)} for f in report.failures
    ]
    label = "/".join(str(n) for n in ns)
    if report.ok:
        plain = f"all {label}-family checks passed: {report.cases} cases"
    else:
        plain = "\n".join(f"FAIL {f}" for f in report.failures)
    return Outcome(
        {"n": list(ns), "m_max": args.m_max, "max_order": args.max_order},
        {
            "ok": report.ok,
            "cases": report.cases,
            "checks": report.checks,
            "failures": failures,
            "unconfirmed": [list(u) for u in report.unconfirmed],
        },
        sorted(report.checks),
        plain=plain,
        disagreement=not report.ok,
    )


def cmd_primes(args) -> Outcome:
    rows = []
    lines = []
    for e in prime_families(args.family, args.max_index, args.min_index):
        rows.append(
            {
                "family": e.family,
                "index": e.index,
                "value": e.value,
                "is_prime": e.is_prime,
                "probabilistic": e.probabilistic,
                "witness": e.witness,
                "witness_a": e.witness_a,
                "squared": e.squared,
            }
        )
        mark = "prime" if e.is_prime else "composite"
        if e.probabilistic:
            mark = "probable prime"
        witness = "-" if e.witness is None else str(e.witness)
        lines.append(f"{e.index}\t{e.value}\t{mark}\t{witness}")
    return Outcome(
        {"family": args.family, "min_index": args.min_index, "max_index": args.max_index},
        {"rows": rows},
        ["closed-formula", "miller-rabin", "resultant-witness"],
        plain="\n".join(lines),
    )


def cmd_fibonacci(args) -> Outcome:
    p = _jparams(args)
    fib = fibonacci_subgroup(p)
    results = {"label": fib.label, "r": fib.r, "n": fib.n, "l": fib.l, "s": fib.s, "order": fib.order}
    provenance = ["canonical-form", "resultant"]
    disagreement = False
    if args.tc:
        from .presentations import Word, build_E_presentation
        from .verify import e_subgroup_words

        provenance.append("todd-coxeter")
        E = build_E_presentation(fib.r, fib.n, fib.l, fib.s)
        max_cosets = args.max_cosets or default_max_cosets()
        over_t = enumerate_cosets(E, (Word.of("t"),), max_cosets)
        over_n = enumerate_cosets(E, e_subgroup_words(fib.n), max_cosets)
        results["index_of_t"] = "exceeded" if over_t.exceeded else over_t.index
        results["index_of_normal_subgroup"] = "exceeded" if over_n.exceeded else over_n.index
        disagreement = (not over_t.exceeded and over_t.index != fib.order) or (
            not over_n.exceeded and over_n.index != fib.n
        )
    return Outcome({"n": p.n, "m": p.m, "k": p.k}, results, provenance, disagreement=disagreement)


# ---------------------------------------------------------------------------
# Parser and driver


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from exc
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="plain", action="store_false", default=False, help="JSON output (default)")
    fmt.add_argument("--plain", dest="plain", action="store_true", help="human-readable output")
    common.add_argument("--no-timing", action="store_true", help="omit the timing field")

    parser = argparse.ArgumentParser(prog="cypres", description="Orders, invariants and isomorphism tests for J_n(m,k).")
    sub = parser.add_subparsers(dest="command", required=True)

    def nmk(p):
        p.add_argument("n", type=int)
        p.add_argument("m", type=int)
        p.add_argument("k", type=int)

    for name, helptext in (("order", "group order"), ("classify", "structure classification")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        nmk(p)
        p.add_argument("--snf", action="store_true", help="also compute a from the SNF of the derived presentation")
        p.add_argument("--tc", action="store_true", help="also confirm the order by coset enumeration")
        p.add_argument("--max-cosets", type=_positive_int)
        p.set_defaults(func=cmd_structure)

    p = sub.add_parser("iso", parents=[common], help="isomorphism test")
    p.add_argument("n", type=int)
    for name in ("m1", "k1", "m2", "k2"):
        p.add_argument(name, type=int)
    p.set_defaults(func=cmd_iso)

    for name, func in (("canonical", cmd_canonical), ("aspherical", cmd_aspherical)):
        p = sub.add_parser(name, parents=[common])
        nmk(p)
        p.set_defaults(func=func)

    p = sub.add_parser("derived", parents=[common], help="presentation of the derived subgroup")
    nmk(p)
    form = p.add_mutually_exclusive_group()
    form.add_argument("--refined", action="store_true", help="explicit commutation relations (gcd(m,k) = 1)")
    form.add_argument("--u", action="store_true", help="second word x_0 x_(nm/2)")
    p.set_defaults(func=cmd_derived)

    p = sub.add_parser("abelianization", parents=[common], help="abelian invariants of a presentation file")
    p.add_argument("file")
    p.set_defaults(func=cmd_abelianization)

    p = sub.add_parser("enumerate", parents=[common], help="coset enumeration on a presentation file")
    p.add_argument("file")
    p.add_argument("--subgroup", action="append", default=[], help="subgroup generator word(s), comma separated")
    p.add_argument("--max-cosets", type=_positive_int)
    p.add_argument("--strategy", choices=STRATEGIES, default="hlt")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", parents=[common], help="cross-path verification sweep")
    p.add_argument("--n", type=int, action="append", help="4 or 6; repeatable (default both)")
    p.add_argument("--m-max", type=_positive_int, default=7)
    p.add_argument("--max-order", type=int, default=50_000, help="confirm orders up to this by coset enumeration")
    p.add_argument("--max-cosets", type=_positive_int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("primes", parents=[common], help="prime family rows")
    p.add_argument("--family", choices=FAMILIES, default="gm")
    p.add_argument("--max-index", type=_positive_int, default=31)
    p.add_argument("--min-index", type=_positive_int, default=1)
    p.set_defaults(func=cmd_primes)

    p = sub.add_parser("fibonacci", parents=[common], help="the index-n Fibonacci subgroup")
    nmk(p)
    p.add_argument("--tc", action="store_true", help="confirm indices by coset enumeration")
    p.add_argument("--max-cosets", type=_positive_int)
    p.set_defaults(func=cmd_fibonacci)
    return parser


def _plain_lines(results: dict) -> str:
    lines = []
    for key in sorted(results):
        value = jsonable(results[key])
        if value is None:
            value = "-"
        elif isinstance(value, list):
            value = "[" + ", ".join(str(v) for v in value) + "]"
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def render(command: str, outcome: Outcome, plain: bool, seconds: float | None) -> str:
    if plain:
        return outcome.plain if outcome.plain is not None else _plain_lines(outcome.results)
    doc = {
        "command": command,
        "params": outcome.params,
        "results": outcome.results,
        "provenance": outcome.provenance,
    }
    if seconds is not None:
        doc["timing"] = {"seconds": round(seconds, 6)}
    return json.dumps(jsonable(doc), sort_keys=True, indent=2, ensure_ascii=False)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        outcome = args.func(args)
    except Unsupported as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except InvalidInput as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    seconds = None if args.no_timing else time.perf_counter() - start
    print(render(args.command, outcome, args.plain, seconds))
    return EXIT_DISAGREE if outcome.disagreement else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
