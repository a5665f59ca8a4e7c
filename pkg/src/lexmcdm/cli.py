"""Command-line front end.

Exit codes: 0 success, 1 unusable input, 2 the computation found something
(a failed check, axiom violations, intransitive verdicts).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import convolution, crisp, fuzzy, relational
from .model import InputError, MatrixError, Verdict, load_matrix, negate_criteria, parse_matrix, validate

EXIT_OK, EXIT_INPUT, EXIT_FINDING = 0, 1, 2


class Finding(Exception):
    """Raised by a command that produced a report which should exit with code 2."""

    def __init__(self, report: dict, text: list[str]):
        self.report = report
        self.text = text


def _fmt(value) -> str:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Verdict):
        return value.value
    return str(value)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (Fraction, Verdict)):
        return _fmt(obj)
    return obj


def _format_for(path: str, explicit: str | None, default: str = "csv") -> str:
    if explicit:
        return explicit
    suffix = Path(path).suffix.lower().lstrip(".")
    return suffix if suffix in ("csv", "json") else default


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read file: {exc.strerror}") from None


def _matrix(args):
    m = load_matrix(_read(args.file), _format_for(args.file, args.format))
    if args.negate:
        m = negate_criteria(m, args.negate)
    if getattr(args, "normalize", None):
        m = convolution.normalize(m, args.normalize)
    return m


def _ranking_report(r: crisp.Ranking) -> list[dict]:
    out = []
    for p, tier in enumerate(r.tiers, start=1):
        entry = {"tier": p, "members": list(tier)}
        if r.levels and p <= len(r.levels):
            entry["level_to_next"] = r.levels[p - 1]
        out.append(entry)
    return out


def _ranking_text(r: crisp.Ranking) -> list[str]:
    lines = []
    for p, tier in enumerate(r.tiers, start=1):
        line = f"  {p:>3}  {', '.join(tier)}"
        if r.levels and p <= len(r.levels):
            line += f"    (decided at level {r.levels[p - 1]} over next tier)"
        lines.append(line)
    return lines


def _weights_dict(w: convolution.WeightVector) -> dict:
    return {"scheme": w.scheme, "weights": list(w.weights), "diapasons": list(w.diapasons),
            "gaps": list(w.gaps), "dominance_holds": w.dominance_holds()}


def _weights_warnings(w: convolution.WeightVector) -> list[str]:
    if w.scheme == "paper_literal":
        return ["paper_literal weights d_j^(j-1) favour less important criteria; "
                "the convolution order need not match the cascade"]
    if not w.dominance_holds():
        return ["weights do not satisfy the dominance bound"]
    return []


# -- matrix commands -------------------------------------------------------------

def cmd_validate(args):
    m = parse_matrix(_read(args.file), _format_for(args.file, args.format))
    problems = validate(m)
    report = {"command": "validate", "valid": not problems,
              "violations": [{"code": v.code, "message": v.message, "location": list(v.location)}
                             for v in problems]}
    text = ["valid" if not problems else f"{len(problems)} violation(s):"]
    text += [f"  {v.code}: {v.message}" for v in problems]
    if problems:
        raise Finding(report, text)
    return report, text


def cmd_rank(args):
    m = _matrix(args)
    report = {"command": "rank", "method": args.method, "alternatives": list(m.alternatives)}
    if args.method == "cascade":
        r = crisp.lex_rank(m)
        report["ranking"] = _ranking_report(r)
        text = [f"cascade ranking over {m.m} criteria ({', '.join(c.name for c in m.criteria)}):"]
        text += _ranking_text(r)
        return report, text
    w = convolution.lex_weights(m, args.scheme, args.mode, args.gaps)
    r = convolution.convolution_rank(m, w)
    scores = convolution.convolution_scores(m, w)
    agrees = r.tiers == crisp.lex_rank(m).tiers
    warnings = _weights_warnings(w)
    if not agrees:
        warnings.append("convolution ranking differs from the cascade ranking")
    report.update({"weights": _weights_dict(w), "scores": {a: scores[a] for a in m.alternatives},
                   "ranking": _ranking_report(r), "agrees_with_cascade": agrees, "warnings": warnings})
    text = [f"convolution ranking, {w.scheme} weights ({', '.join(map(_fmt, w.weights))}):"]
    text += [f"  {p:>3}  {', '.join(tier)}    L = {_fmt(scores[tier[0]])}" for p, tier in enumerate(r.tiers, 1)]
    text.append(f"agrees with cascade: {'yes' if agrees else 'no'}")
    text += [f"warning: {x}" for x in warnings]
    return report, text


def cmd_compare(args):
    m = _matrix(args)
    try:
        o = crisp.lex_compare(m, args.first, args.second)
    except KeyError as exc:
        raise InputError(exc.args[0]) from None
    report = {"command": "compare", "first": args.first, "second": args.second,
              "verdict": o.verdict, "level": o.level}
    if o.verdict is Verdict.EQUIVALENT:
        text = [f"{args.first} ~ {args.second}: equivalent on all {m.m} criteria"]
    else:
        winner, loser = ((args.first, args.second) if o.verdict is Verdict.FIRST_PREFERRED
                         else (args.second, args.first))
        text = [f"{winner} > {loser}: decided at level {o.level} ({m.criteria[o.level - 1].name})"]
    return report, text


def cmd_weights(args):
    m = _matrix(args)
    w = convolution.lex_weights(m, args.scheme, args.mode, args.gaps)
    report = {"command": "weights", "criteria": [c.name for c in m.criteria], **_weights_dict(w),
              "warnings": _weights_warnings(w)}
    text = [f"{w.scheme} weights ({args.mode} diapasons):"]
    text += [f"  {c.name:<16} d = {_fmt(d):<8} lambda = {_fmt(x)}"
             for c, d, x in zip(m.criteria, w.diapasons, w.weights)]
    text.append(f"dominance bound holds: {'yes' if w.dominance_holds() else 'no'}")
    text += [f"warning: {x}" for x in report["warnings"]]
    return report, text


def cmd_check_lex(args):
    m = _matrix(args)
    r = convolution.check_lex_condition(m, args.mode)
    report = {"command": "check-lex", "mode": args.mode, "holds": r.holds}
    if r.holds:
        return report, ["every scale lies strictly above the next one: criteria are lexicographically ordered"]
    j, low, high = r.first_violation
    report["first_violation"] = {"level": j, "min": low, "next_max": high}
    raise Finding(report, [f"fails at level {j}: min {_fmt(low)} of {m.criteria[j - 1].name} "
                           f"does not exceed max {_fmt(high)} of {m.criteria[j].name}"])


# -- relational commands ---------------------------------------------------------

def _outcome_label(labels, i, l, o) -> str:
    if o.verdict is Verdict.FIRST_PREFERRED:
        return f"{labels[i]} > {labels[l]} @ {o.level}"
    if o.verdict is Verdict.SECOND_PREFERRED:
        return f"{labels[l]} > {labels[i]} @ {o.level}"
    if o.verdict is Verdict.EQUIVALENT:
        return f"{labels[i]} ~ {labels[l]}"
    return f"{labels[i]} ? {labels[l]}"


def cmd_relcompose(args):
    labels, rels = relational.load_relations(_read(args.file), _format_for(args.file, args.format, "json"))
    table = relational.compose_table(rels)
    n = len(labels)
    pairs = [{"first": labels[i], "second": labels[l], "verdict": table[i][l].verdict,
              "level": table[i][l].level} for i in range(n) for l in range(i + 1, n)]
    report = {"command": "relcompose", "alternatives": list(labels), "levels": len(rels), "pairs": pairs}
    text = [f"lexicographic composition of {len(rels)} relations:"]
    text += [f"  {_outcome_label(labels, i, l, table[i][l])}" for i in range(n) for l in range(i + 1, n)]
    return report, text


def cmd_check_axioms(args):
    labels, rels = relational.load_relations(_read(args.file), _format_for(args.file, args.format, "json"))
    aff = relational.verify_affirmation2(rels)
    ax = aff.axioms

    def named(v):
        i, q, l, j = v
        return {"equivalent": [labels[i], labels[q]], "other": labels[l], "level": j}

    report = {"command": "check-axioms",
              "a1_violations": [named(v) for v in ax.a1_violations],
              "a2_violations": [named(v) for v in ax.a2_violations],
              "intransitive_levels": aff.intransitive_relations,
              "premises_hold": aff.premises_hold, "composed_transitive": aff.composed_transitive,
              "composed_linked": aff.composed_linked}
    if aff.counterexample:
        report["transitivity_counterexample"] = [labels[k] for k in aff.counterexample]
    text = [f"A1 violations: {len(ax.a1_violations)}", f"A2 violations: {len(ax.a2_violations)}"]
    for tag, vs in (("A1", ax.a1_violations), ("A2", ax.a2_violations)):
        for i, q, l, j in vs:
            text.append(f"  {tag} level {j}: {labels[i]} ~ {labels[q]}, other {labels[l]}")
    text += [f"intransitive levels: {aff.intransitive_relations or 'none'}",
             f"premises hold: {'yes' if aff.premises_hold else 'no'}",
             f"composed strict part transitive: {'yes' if aff.composed_transitive else 'no'}",
             f"composed relation linked: {'yes' if aff.composed_linked else 'no'}"]
    if not aff.premises_hold or not aff.composed_transitive:
        raise Finding(report, text)
    return report, text


# -- fuzzy commands --------------------------------------------------------------

def _fuzzy(args):
    return fuzzy.load_fuzzy(_read(args.file), _format_for(args.file, args.format, "json"))


def cmd_fuzzy_rank(args):
    labels, rels = _fuzzy(args)
    utilities = [dict(zip(labels, fuzzy.utility_projection(r))) for r in rels]
    scores = fuzzy.fuzzy_lex_convolve(rels, args.base)
    report = {"command": "fuzzy-rank", "alternatives": list(labels), "base": args.base,
              "convolution_weights": list(fuzzy.fuzzy_lex_weights(len(rels), args.base)),
              "utilities": utilities}
    try:
        r = fuzzy.fuzzy_lex_rank(rels, labels)
    except fuzzy.IntransitivityError as exc:
        report["intransitive_triple"] = list(exc.names)
        raise Finding(report, [str(exc)]) from None
    table = fuzzy.fuzzy_table(rels)
    n = len(labels)
    disagreements = []
    for i in range(n):
        for l in range(i + 1, n):
            diff = scores[i][l] - scores[l][i]
            sign = Verdict.FIRST_PREFERRED if diff > 0 else Verdict.SECOND_PREFERRED if diff < 0 else Verdict.EQUIVALENT
            if sign is not table[i][l].verdict:
                disagreements.append([labels[i], labels[l]])
    report["ranking"] = _ranking_report(r)
    report["convolution_disagreements"] = disagreements
    text = ["fuzzy lexicographic ranking:", *_ranking_text(r)]
    text.append(f"base-{args.base} convolution disagrees with the cascade on {len(disagreements)} pair(s)")
    return report, text


def _label_index(labels, name):
    try:
        return labels.index(name)
    except ValueError:
        raise InputError(f"unknown alternative {name!r}") from None


def cmd_fuzzy_compare(args):
    labels, rels = _fuzzy(args)
    i, l = _label_index(labels, args.first), _label_index(labels, args.second)
    o = fuzzy.fuzzy_lex_compare(rels, i, l)
    report = {"command": "fuzzy-compare", "first": args.first, "second": args.second,
              "verdict": o.verdict, "level": o.level, "degree": o.degree,
              "equivalence_degree": o.equivalence_degree}
    if o.verdict is Verdict.EQUIVALENT:
        text = [f"{args.first} ~ {args.second}: equivalent, degree {_fmt(o.equivalence_degree)}"]
    else:
        text = [f"{_outcome_label(labels, i, l, o)}, degree {_fmt(o.degree)}"]
    return report, text


def cmd_check_theorem(args):
    labels, rels = _fuzzy(args)
    r = fuzzy.check_scale_theorem(rels, fuzzy.TRANSFORMS[args.transform])
    report = {"command": "check-theorem", "transform": args.transform, "holds": r.holds,
              "mismatches": [{"first": labels[i], "second": labels[l],
                              "before": [b.verdict, b.level], "after": [a.verdict, a.level]}
                             for i, l, b, a in r.mismatches]}
    text = [f"verdict/level table under '{args.transform}': "
            + ("unchanged" if r.holds else f"{len(r.mismatches)} mismatch(es)")]
    if not r.holds:
        raise Finding(report, text)
    return report, text


# -- wiring ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lexmcdm", description="Lexicographic multicriteria decision procedures")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the report as JSON")
    common.add_argument("--format", choices=["csv", "json"], help="input format (default: by file extension)")

    matrix = argparse.ArgumentParser(add_help=False, parents=[common])
    matrix.add_argument("file", help="decision matrix (CSV or JSON), '-' for stdin")
    matrix.add_argument("--negate", action="append", default=[], metavar="CRITERION",
                        help="treat CRITERION as loss-type by negating it (repeatable)")

    weighted = argparse.ArgumentParser(add_help=False)
    weighted.add_argument("--scheme", choices=convolution.SCHEMES, default="mixed_radix")
    weighted.add_argument("--mode", choices=convolution.MODES, default="declared",
                          help="diapason from declared scales or observed scores")
    weighted.add_argument("--gaps", choices=["observed"], default=None,
                          help="use observed minimum score gaps instead of unit gaps")

    stack = argparse.ArgumentParser(add_help=False, parents=[common])
    stack.add_argument("file", help="relation stack (JSON or CSV blocks)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="list invariant violations of a matrix")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate, negate=[])

    p = sub.add_parser("rank", parents=[matrix, weighted], help="rank alternatives")
    p.add_argument("--method", choices=["cascade", "convolution"], default="cascade")
    p.add_argument("--normalize", type=Fraction, metavar="A", help="rescale every column to max A first")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("compare", parents=[matrix], help="compare two alternatives")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("weights", parents=[matrix, weighted], help="lexicographic importance coefficients")
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("check-lex", parents=[matrix], help="check that criterion scales nest lexicographically")
    p.add_argument("--mode", choices=convolution.MODES, default="declared")
    p.set_defaults(func=cmd_check_lex)

    p = sub.add_parser("relcompose", parents=[stack], help="compose crisp relations lexicographically")
    p.set_defaults(func=cmd_relcompose)

    p = sub.add_parser("check-axioms", parents=[stack], help="check A1/A2 and transitivity of the composition")
    p.set_defaults(func=cmd_check_axioms)

    p = sub.add_parser("fuzzy-rank", parents=[stack], help="rank by the fuzzy lexicographic cascade")
    p.add_argument("--base", type=int, default=10, help="place-value base of the fuzzy convolution")
    p.set_defaults(func=cmd_fuzzy_rank)

    p = sub.add_parser("fuzzy-compare", parents=[stack], help="compare two alternatives under fuzzy relations")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_fuzzy_compare)

    p = sub.add_parser("check-theorem", parents=[stack], help="check verdict invariance under a scale transform")
    p.add_argument("--transform", choices=sorted(fuzzy.TRANSFORMS), default="square")
    p.set_defaults(func=cmd_check_theorem)
    return parser


def _emit(report: dict, text: list[str], as_json: bool, stream) -> None:
    if as_json:
        stream.write(json.dumps(_jsonable(report), indent=2) + "\n")
    else:
        stream.write("\n".join(text) + "\n")


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        report, text = args.func(args)
    except Finding as f:
        _emit(f.report, f.text, args.json, stdout)
        return EXIT_FINDING
    except MatrixError as exc:
        stderr.write(f"{args.file}: invalid matrix\n")
        for v in exc.violations:
            stderr.write(f"  {v.message}\n")
        return EXIT_INPUT
    except (InputError, ValueError, IndexError) as exc:
        stderr.write(f"{args.file}: {exc}\n")
        return EXIT_INPUT
    _emit(report, text, args.json, stdout)
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
