"""Command-line interface: one job per invocation, structured reports.

Every subcommand parses documented text or JSON inputs, calls the
corresponding library operation and emits either a human-readable
summary or a structured JSON report (``--format structured``) with a
stable ``schema`` field.  Reports are deterministic: identical inputs
produce byte-identical structured output.

Exit codes: 0 success/valid verdict, 1 invalid (a checked property is
false), 2 malformed input, 3 not checkable from word data (required
geometric assertions missing).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds as bounds_mod
from .certify import (
    CERTIFIERS,
    KINDS,
    CertificateError,
    GuardViolation,
    TranslationError,
    certificate_from_dict,
    certificate_to_dict,
    translate_certificate,
    spine_link_pipeline,
)
from .decomp import decompose
from .magnus import (
    LongitudeSystem,
    expand,
    fox_coefficient,
    lcs_degree,
    milnor_invariant,
    milnor_vanish_upto,
)
from .schreier import NotInNormalClosure, normal_closure_lcs_degree
from .seifert import (
    LaurentPolynomial,
    SeifertMatrix,
    alexander,
    alternating_sum,
    classify_form,
    mmr_series,
    symmetrize,
)
from .trivializer import LetterSetFamily, build_letter_sets, verify_family
from .words import (
    TaggedWord,
    WordSyntaxError,
    format_word,
    kill_generators,
    parse_letters,
    parse_word,
    simple_commutator,
)

SCHEMA = 1


class InputError(ValueError):
    """Malformed command input (exit code 2)."""


def _read_text(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    try:
        return Path(source).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc}") from exc


def _raw_arg(value: str) -> str:
    if value.startswith("@"):
        return _read_text(value[1:])
    if value == "-":
        return _read_text("-")
    return value


def _word_arg(value: str) -> tuple[int, ...]:
    """A word given inline, or @path / - to read it from a file or stdin."""
    return parse_word(_raw_arg(value))


def _entries_arg(value: str) -> tuple[int, ...]:
    """An entry sequence: letters are kept as written, never reduced."""
    return parse_letters(_raw_arg(value))


def _subset_arg(value: str) -> frozenset[int]:
    try:
        out = frozenset(int(tok) for tok in value.split())
    except ValueError as exc:
        raise InputError(f"bad generator subset {value!r}") from exc
    if any(g < 1 for g in out):
        raise InputError("generator subsets need positive indices")
    return out


def _indices_arg(value: str) -> tuple[int, ...]:
    try:
        out = tuple(int(tok) for tok in value.split())
    except ValueError as exc:
        raise InputError(f"bad index sequence {value!r}") from exc
    if any(i < 1 for i in out):
        raise InputError("indices must be positive")
    return out


def _tokenized_lines(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if body:
            out.append((lineno, body.split()))
    return out


def read_matrix_file(source: str) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Matrix format: first value g, then 2g rows of 2g integers."""
    lines = _tokenized_lines(_read_text(source))
    if not lines:
        raise InputError("line 1, col 1: empty matrix file")
    lineno, toks = lines[0]
    try:
        genus = int(toks[0])
    except ValueError:
        raise InputError(f"line {lineno}, col 1: genus must be an integer") from None
    rest = [(lineno, toks[1:])] if toks[1:] else []
    rest.extend(lines[1:])
    values: list[tuple[int, int]] = []
    for lineno, toks in rest:
        for col, tok in enumerate(toks, start=1):
            try:
                values.append((lineno, int(tok)))
            except ValueError:
                raise InputError(
                    f"line {lineno}, col {col}: bad matrix entry {tok!r}"
                ) from None
    need = (2 * genus) ** 2
    if len(values) != need:
        raise InputError(f"expected {need} entries for genus {genus}, got {len(values)}")
    flat = [v for _, v in values]
    size = 2 * genus
    rows = tuple(tuple(flat[i * size: (i + 1) * size]) for i in range(size))
    return genus, rows


def read_laurent_file(source: str) -> LaurentPolynomial:
    """Laurent format: min exponent on one line, coefficient run on the next."""
    lines = _tokenized_lines(_read_text(source))
    if len(lines) < 2:
        raise InputError("laurent file needs a min-exponent line and a coefficient line")
    try:
        min_exp = int(lines[0][1][0])
        coeffs = [int(tok) for tok in lines[1][1]]
    except (ValueError, IndexError):
        raise InputError(f"line {lines[0][0]}: bad laurent polynomial data") from None
    return LaurentPolynomial.from_coefficient_list(min_exp, coeffs)


def read_longitudes_file(source: str) -> LongitudeSystem:
    """Longitude format: component count, then one word per line.

    Lines starting with ``#`` are comments; a blank line is the empty
    longitude.  Missing trailing lines count as empty longitudes.
    """
    text = _read_text(source)
    lines = [
        (i + 1, line.split("#", 1)[0])
        for i, line in enumerate(text.splitlines())
        if not line.lstrip().startswith("#")
    ]
    if not lines:
        raise InputError("line 1, col 1: empty longitude file")
    first_no, first = lines[0]
    try:
        count = int(first.strip())
    except ValueError:
        raise InputError(f"line {first_no}, col 1: component count must be an integer") from None
    words = []
    for i in range(1, count + 1):
        lineno, body = lines[i] if i < len(lines) else (first_no, "")
        try:
            words.append(parse_word(body))
        except WordSyntaxError as exc:
            raise InputError(f"line {lineno}: {exc}") from exc
    return LongitudeSystem(count, tuple(words))


def read_certificate_file(source: str):
    text = _read_text(source)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno}, col {exc.colno}: {exc.msg}") from exc
    return certificate_from_dict(data)


def _poly_payload(poly) -> list:
    return [[list(mon), coeff] for mon, coeff in poly.terms()]


def _laurent_payload(poly: LaurentPolynomial) -> dict:
    min_exp, coeffs = poly.coefficient_list()
    return {"min_exp": min_exp, "coeffs": list(coeffs), "pretty": poly.pretty()}


def _fraction_str(value: Fraction) -> str:
    return str(value)


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (exit_code, payload, human lines)


def _cmd_word_reduce(args):
    word = _word_arg(args.word)
    return 0, {"word": format_word(word), "length": len(word)}, [format_word(word) or "(empty)"]


def _cmd_word_commutator(args):
    entries = _entries_arg(args.entries)
    if len(entries) < 2:
        raise InputError("need at least two entries")
    tagged = simple_commutator(entries)
    payload = {
        "entries": format_word(entries),
        "expansion": format_word(tagged.letters),
        "tags": list(tagged.tags),
        "reduced": format_word(tagged.word()),
    }
    return 0, payload, [payload["reduced"] or "(empty)"]


def _cmd_word_kill(args):
    word = _word_arg(args.word)
    out = kill_generators(word, _subset_arg(args.subset))
    return 0, {"word": format_word(out)}, [format_word(out) or "(empty)"]


def _cmd_magnus_expand(args):
    poly = expand(_word_arg(args.word), args.degree)
    payload = {"degree": args.degree, "terms": _poly_payload(poly)}
    lines = [f"{coeff} * {''.join(f'X{i}' for i in mon) or '1'}"
             for mon, coeff in poly.terms()]
    return 0, payload, lines or ["0"]


def _cmd_magnus_degree(args):
    d = lcs_degree(_word_arg(args.word), args.degree)
    payload = {"degree_bound": args.degree, "lcs_degree": d}
    return 0, payload, [f"exceeds {args.degree}" if d is None else str(d)]


def _cmd_magnus_fox(args):
    value = fox_coefficient(_word_arg(args.word), _indices_arg(args.index))
    return 0, {"index": list(_indices_arg(args.index)), "coefficient": value}, [str(value)]


def _cmd_decompose(args):
    comb = decompose(_word_arg(args.word), args.m, args.degree)
    payload = {
        "valid_mod_degree": comb.valid_mod_degree,
        "factors": [[format_word(e), x] for e, x in comb.factors],
        "residual": format_word(comb.residual),
    }
    lines = [f"{len(comb.factors)} factor(s), residual length {len(comb.residual)}"]
    lines += [f"  [{format_word(e)}]^{x:+d}" for e, x in comb.factors]
    return 0, payload, lines


def _cmd_schreier_degree(args):
    try:
        d = normal_closure_lcs_degree(_word_arg(args.word), _subset_arg(args.subset), args.degree)
    except NotInNormalClosure as exc:
        raise InputError(str(exc)) from exc
    payload = {"degree_bound": args.degree, "closure_lcs_degree": d}
    return 0, payload, [f"exceeds {args.degree}" if d is None else str(d)]


def _cmd_trivialize_build(args):
    factors = [_entries_arg(f) for f in args.factor]
    insertions = []
    for ins in args.insert:
        try:
            pos_str, letter_str = ins.split(":", 1)
            letter_word = parse_word(letter_str)
            if len(letter_word) != 1:
                raise ValueError
            insertions.append((int(pos_str), letter_word[0]))
        except (ValueError, WordSyntaxError):
            raise InputError(f"bad insertion {ins!r}; expected POSITION:LETTER") from None
    tagged, family = build_letter_sets(factors, insertions)
    payload = {
        "word": format_word(tagged.letters),
        "tags": [t if t is not None else 0 for t in tagged.tags],
        "sets": [sorted(s) for s in family.sets],
    }
    return 0, payload, [f"word length {len(tagged)}, {len(family)} letter sets"]


def _cmd_trivialize_verify(args):
    text = _read_text(args.report)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno}, col {exc.colno}: {exc.msg}") from exc
    try:
        letters = parse_letters(data["word"])
        tags = tuple(t if t else None for t in data["tags"])
        sets = tuple(frozenset(s) for s in data["sets"])
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad trivializer report: {exc}") from exc
    if len(letters) != len(tags):
        raise InputError("word/tags length mismatch")
    result = verify_family(TaggedWord(letters, tags), LetterSetFamily(sets))
    payload = {
        "ok": result.ok,
        "checked_subfamilies": result.checked,
        "failing_subfamily": list(result.failing_subfamily) if result.failing_subfamily else None,
    }
    line = "all deletions trivialize" if result.ok else (
        f"subfamily {list(result.failing_subfamily)} fails")
    return (0 if result.ok else 1), payload, [line]


def _cmd_milnor_invariant(args):
    system = read_longitudes_file(args.longitudes)
    value = milnor_invariant(system, _indices_arg(args.index), reduced=args.mode == "gcd")
    return 0, {"index": list(_indices_arg(args.index)), "mode": args.mode, "value": value}, [str(value)]


def _cmd_milnor_vanish(args):
    system = read_longitudes_file(args.longitudes)
    ok = milnor_vanish_upto(system, args.n)
    return (0 if ok else 1), {"n": args.n, "vanish_up_to": args.n + 1, "vanish": ok}, [str(ok)]


def _cmd_alexander(args):
    genus, rows = read_matrix_file(args.matrix)
    delta = alexander(SeifertMatrix(genus, rows))
    return 0, {"genus": genus, "alexander": _laurent_payload(delta)}, [delta.pretty()]


def _cmd_classify(args):
    genus, rows = read_matrix_file(args.matrix)
    matrix = symmetrize(rows) if args.symmetrize else rows
    form = classify_form(matrix, genus)
    return 0, {"genus": genus, "form": form, "symmetrized": args.symmetrize}, [form]


def _cmd_mmr(args):
    delta = read_laurent_file(args.laurent)
    series = mmr_series(delta, args.order)
    payload = {
        "order": args.order,
        "coefficients": [_fraction_str(c) for c in series.coefficients],
    }
    lines = [f"h^{i}: {c}" for i, c in enumerate(series.coefficients)]
    return 0, payload, lines


def _cmd_altsum(args):
    text = _read_text(args.values)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno}, col {exc.colno}: {exc.msg}") from exc
    try:
        values = {
            tuple(entry["subset"]): Fraction(str(entry["value"]))
            for entry in data
        }
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad alternating-sum data: {exc}") from exc
    total = alternating_sum(values)
    return 0, {"sum": _fraction_str(total)}, [str(total)]


_BOUND_ARITY = {
    "q": 1,
    "t": 1,
    "q-param": 2,
    "conflict-max": 1,
    "ratio-check": 2,
    "good-arc-bound": 3,
    "product-bound-check": 4,
    "check-inequalities": 1,
}


def _cmd_bounds(args):
    fn = args.fn
    need = _BOUND_ARITY.get(fn)
    if need is not None and len(args.ints) != need:
        raise InputError(f"bounds {fn} takes {need} integer argument(s), got {len(args.ints)}")
    if fn == "l-n-s" and not args.ints:
        raise InputError("bounds l-n-s needs at least one q-value")
    if fn == "q":
        value = bounds_mod.q(args.ints[0])
    elif fn == "t":
        value = bounds_mod.t(args.ints[0])
    elif fn == "q-param":
        value = bounds_mod.q_param(args.ints[0], args.ints[1])
    elif fn == "l-n-s":
        value = bounds_mod.l_n_S(args.ints)
    elif fn == "conflict-max":
        value = bounds_mod.conflict_max(args.ints[0])
    elif fn == "ratio-check":
        value = bounds_mod.ratio_check(args.ints[0], args.ints[1])
    elif fn == "good-arc-bound":
        value = bounds_mod.good_arc_bound(args.ints[0], args.ints[1], args.ints[2], args.embedded)
    elif fn == "product-bound-check":
        value = bounds_mod.product_bound_check(*args.ints[:4])
    elif fn == "check-inequalities":
        report = bounds_mod.check_inequalities(args.ints[0])
        payload = {
            "n": report.n,
            "q_bound_holds": report.q_bound_holds,
            "q_param_bounds_hold": report.q_param_bounds_hold,
            "violations": list(report.violations),
            "l_bound_argument": _fraction_str(report.l_bound_argument),
            "all_hold": report.all_hold,
        }
        line = "all inequalities hold" if report.all_hold else "; ".join(report.violations)
        return (0 if report.all_hold else 1), payload, [line]
    elif fn == "partition-k":
        if args.factors is None:
            raise InputError("partition-k needs --factors")
        gensets = [
            frozenset(int(tok) for tok in part.split())
            for part in args.factors.split("|")
            if part.strip()
        ]
        partition, k = bounds_mod.partition_k(gensets)
        payload = {
            "k": k,
            "blocks": [list(b) for b in partition.blocks],
            "block_generator_counts": list(partition.block_generator_counts()),
        }
        return 0, payload, [f"k = {k}; blocks {payload['blocks']}"]
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(f"unknown bounds function {fn}")
    return 0, {"fn": fn, "value": value}, [str(value)]


_KIND_EXITS = {"valid": 0, "invalid": 1, "not-checkable-from-words": 3}


def _cmd_certify(args):
    cert = read_certificate_file(args.certificate)
    if cert.kind != args.kind:
        raise InputError(f"certificate is of kind {cert.kind!r}, not {args.kind!r}")
    kwargs = {}
    if args.n is not None:
        kwargs["n"] = args.n
    if args.kind == "parabolic" and args.simplicity is not None:
        kwargs["s"] = args.simplicity
    report = CERTIFIERS[args.kind](cert, **kwargs)
    payload = report.to_dict()
    lines = [f"verdict: {report.verdict}"]
    lines += [
        f"  {c.name}{'[' + c.curve + ']' if c.curve else ''}: {c.status}"
        + (f" ({c.detail})" if c.detail else "")
        for c in report.conditions
    ]
    return _KIND_EXITS[report.verdict], payload, lines


def _cmd_translate(args):
    cert = read_certificate_file(args.certificate)
    try:
        result = translate_certificate(cert, args.kind, args.n)
    except GuardViolation as exc:
        raise InputError(f"guard violated: {exc}") from exc
    except TranslationError as exc:
        raise InputError(str(exc)) from exc
    payload = {
        "source_verdict": result.source_report.verdict,
        "target": certificate_to_dict(result.certificate),
        "target_report": result.report.to_dict(),
    }
    lines = [
        f"source: {result.source_report.verdict}",
        f"target kind {result.certificate.kind} at n = {result.certificate.n}: "
        f"{result.report.verdict}",
    ]
    return _KIND_EXITS[result.report.verdict], payload, lines


def _cmd_pipeline(args):
    cert = read_certificate_file(args.certificate)
    report = spine_link_pipeline(
        cert, list(args.signs), n=args.n, slice_depth=args.slice_depth
    )
    payload = report.to_dict()
    lines = [f"verdict: {report.verdict}", report.conclusion]
    if report.slice_conclusion:
        lines.append(report.slice_conclusion)
    return _KIND_EXITS[report.verdict], payload, lines


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("human", "structured"),
        default="human",
        help="output format (structured = JSON with schema field)",
    )
    parser = argparse.ArgumentParser(
        prog="knotcert",
        description="Free-group commutator calculus and knot certificate checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def leaf(group, name, handler, **kwargs):
        p = group.add_parser(name, parents=[common], **kwargs)
        p.set_defaults(handler=handler)
        return p

    word = sub.add_parser("word", help="free-group word operations").add_subparsers(
        dest="subcommand", required=True
    )
    p = leaf(word, "reduce", _cmd_word_reduce)
    p.add_argument("word")
    p = leaf(word, "commutator", _cmd_word_commutator)
    p.add_argument("entries", help="entry letters in word syntax")
    p = leaf(word, "kill", _cmd_word_kill)
    p.add_argument("word")
    p.add_argument("--subset", required=True, help="generator indices, e.g. '1 2'")

    magnus = sub.add_parser("magnus", help="Magnus expansion operations").add_subparsers(
        dest="subcommand", required=True
    )
    p = leaf(magnus, "expand", _cmd_magnus_expand)
    p.add_argument("word")
    p.add_argument("-D", "--degree", type=int, required=True)
    p = leaf(magnus, "degree", _cmd_magnus_degree)
    p.add_argument("word")
    p.add_argument("-D", "--degree", type=int, required=True)
    p = leaf(magnus, "fox", _cmd_magnus_fox)
    p.add_argument("word")
    p.add_argument("--index", required=True, help="monomial indices, e.g. '1 2 1'")

    p = leaf(sub, "decompose", _cmd_decompose, help="write a word as simple commutators")
    p.add_argument("word")
    p.add_argument("-m", type=int, required=True, help="the word lies in F^(m+1)")
    p.add_argument("-D", "--degree", type=int, required=True)

    schreier = sub.add_parser("schreier", help="normal closure operations").add_subparsers(
        dest="subcommand", required=True
    )
    p = leaf(schreier, "degree", _cmd_schreier_degree)
    p.add_argument("word")
    p.add_argument("--subset", required=True)
    p.add_argument("-D", "--degree", type=int, required=True)

    trivialize = sub.add_parser("trivialize", help="letter-set trivializer").add_subparsers(
        dest="subcommand", required=True
    )
    p = leaf(trivialize, "build", _cmd_trivialize_build)
    p.add_argument("--factor", action="append", required=True, help="entry sequence (repeatable)")
    p.add_argument(
        "--insert",
        action="append",
        default=[],
        help="canceling pair POSITION:LETTER (repeatable)",
    )
    p = leaf(trivialize, "verify", _cmd_trivialize_verify)
    p.add_argument("report", help="JSON report from 'trivialize build' (path or -)")

    milnor = sub.add_parser("milnor", help="Milnor invariants of longitude systems").add_subparsers(
        dest="subcommand", required=True
    )
    p = leaf(milnor, "invariant", _cmd_milnor_invariant)
    p.add_argument("longitudes", help="longitude file (path or -)")
    p.add_argument("--index", required=True)
    p.add_argument("--mode", choices=("raw", "gcd"), default="raw")
    p = leaf(milnor, "vanish", _cmd_milnor_vanish)
    p.add_argument("longitudes")
    p.add_argument("-n", type=int, required=True)

    p = leaf(sub, "alexander", _cmd_alexander, help="Alexander polynomial of a Seifert matrix")
    p.add_argument("matrix", help="matrix file (path or -)")

    p = leaf(sub, "classify", _cmd_classify, help="form shape of a symmetric matrix")
    p.add_argument("matrix")
    p.add_argument(
        "--symmetrize",
        action="store_true",
        help="treat the file as a Seifert matrix and classify V + V^T",
    )

    p = leaf(sub, "mmr", _cmd_mmr, help="canonical invariant series p(h)/Delta(e^h)")
    p.add_argument("laurent", help="laurent polynomial file (path or -)")
    p.add_argument("-N", "--order", type=int, required=True)

    p = leaf(sub, "bounds", _cmd_bounds, help="arithmetic bound functions")
    p.add_argument(
        "fn",
        choices=(
            "q", "t", "q-param", "l-n-s", "conflict-max", "ratio-check",
            "good-arc-bound", "product-bound-check", "check-inequalities",
            "partition-k",
        ),
    )
    p.add_argument("ints", type=int, nargs="*")
    p.add_argument("--embedded", action="store_true")
    p.add_argument("--factors", help="generator sets split by '|', e.g. '1 2|2 3|4'")

    p = leaf(sub, "certify", _cmd_certify, help="verify a surface certificate")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("certificate", help="certificate JSON (path or -)")
    p.add_argument("--n", type=int)
    p.add_argument("--simplicity", type=int)

    p = leaf(sub, "translate", _cmd_translate,
             help="apply a certificate index shift and re-verify")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("certificate")
    p.add_argument("--n", type=int, required=True, help="the level parameter of the shift")

    pipeline = sub.add_parser("pipeline", help="derived-link pipelines").add_subparsers(
        dest="subcommand", required=True
    )
    p = leaf(pipeline, "spine-link", _cmd_pipeline)
    p.add_argument("certificate")
    p.add_argument("--signs", required=True, help="one +/- per curve, e.g. '++-+'")
    p.add_argument("--n", type=int)
    p.add_argument("--slice-depth", type=int)

    p = leaf(sub, "altsum", _cmd_altsum, help="alternating sum over a subset family")
    p.add_argument("values", help="JSON list of {subset, value} records (path or -)")

    return parser


def _emit(args, code: int, payload: dict, lines: list[str]) -> int:
    if args.format == "structured":
        doc = {"schema": SCHEMA, "command": args.command, "exit_code": code}
        doc.update(payload)
        print(json.dumps(doc, sort_keys=True, separators=(",", ":")))
    else:
        for line in lines:
            print(line)
    return code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, payload, lines = args.handler(args)
    except (InputError, WordSyntaxError, CertificateError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, NotInNormalClosure) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return _emit(args, code, payload, lines)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
