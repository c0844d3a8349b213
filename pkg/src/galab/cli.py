"""Command-line surface: classification, class groups, duality and experiments.

Exit codes: 0 success, 1 usage error, 2 domain error (bad discriminant,
excluded field, malformed file, ...), 3 unresolvable split data, 4 search
bound exceeded.  With --json every subcommand prints one canonical JSON
document (sorted keys, fixed separators), so identical invocations produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Sequence

from .classifier import (
    SplitTable,
    classify_batch,
    classify_field,
    FunctionFieldInput,
    function_field_isomorphic,
    function_field_type,
    types_isomorphic,
)
from .descriptors import (
    ProfiniteDescriptor,
    descriptor_from_text,
    descriptor_to_document,
    dual_discrete,
    dual_profinite,
    truncate,
)
from .errors import FormatError, GalabError, exit_code_for
from .extensions import verify_uniqueness
from .finabelian import FiniteAbelianGroup, group_literal, parse_group_literal
from .quadfields import class_group


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _parse_group(text: str) -> FiniteAbelianGroup:
    try:
        return parse_group_literal(text)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def _read_lines(path: str) -> list[tuple[int, str]]:
    try:
        raw = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    out = []
    for lineno, line in enumerate(raw.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        out.append((lineno, stripped))
    return out


def load_split_table(path: str) -> SplitTable:
    """Parse a split-table file: one "discriminant: group literal" per line.

    Braces and trailing commas are tolerated so a single-entry "{-35: 2}"
    document parses too.  Errors report the offending line number.
    """
    user: dict[int, FiniteAbelianGroup] = {}
    for lineno, line in _read_lines(path):
        entry = line.strip().lstrip("{").rstrip("}").strip().rstrip(",").strip()
        if not entry:
            continue
        if ":" not in entry:
            raise FormatError(f"{path} line {lineno}: expected 'discriminant: group'")
        disc_text, _, group_text = entry.partition(":")
        try:
            disc = int(disc_text.strip())
        except ValueError:
            raise FormatError(
                f"{path} line {lineno}: bad discriminant {disc_text.strip()!r}"
            ) from None
        try:
            user[disc] = parse_group_literal(group_text.strip())
        except ValueError as exc:
            raise FormatError(f"{path} line {lineno}: {exc}") from None
    return SplitTable(user=user)


def _read_discriminants(path: str) -> list[int]:
    out = []
    for lineno, line in _read_lines(path):
        try:
            out.append(int(line))
        except ValueError:
            raise FormatError(f"{path} line {lineno}: bad discriminant {line!r}") from None
    return out


def _split_table_from_args(args: argparse.Namespace) -> SplitTable:
    table = load_split_table(args.split_table) if getattr(args, "split_table", None) else SplitTable()
    inline = getattr(args, "split", None)
    if inline is not None:
        discs = args.disc if isinstance(args.disc, list) else [args.disc]
        user = dict(table.user)
        for d in discs:
            user[d] = _parse_group(inline)
        table = SplitTable(user=user)
    return table


def _load_descriptor(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    return descriptor_from_text(text)


# ---------------------------------------------------------------------------
# Subcommand handlers: each returns (payload, human lines, exit code)


def _cmd_classgroup(args) -> tuple[dict, list[str], int]:
    cg = class_group(args.disc)
    payload = {
        "command": "classgroup",
        "discriminant": cg.discriminant,
        "class_number": cg.order,
        "structure": group_literal(cg.structure),
        "forms": [str(f) for f in cg.representatives],
    }
    human = [
        f"discriminant   {cg.discriminant}",
        f"class number   {cg.order}",
        f"structure      {group_literal(cg.structure)}",
        "forms          " + " ".join(str(f) for f in cg.representatives),
    ]
    return payload, human, 0


def _cmd_classify(args) -> tuple[dict, list[str], int]:
    table = _split_table_from_args(args)
    fc = classify_field(args.disc, table)
    payload = {"command": "classify", **fc.to_document()}
    t = fc.abelian_type.to_document()
    human = [
        f"discriminant     {fc.discriminant}",
        f"class number     {fc.class_number}",
        f"split group      {t['split']}  (source: {fc.split.source.value})",
        f"type             free_rank={t['free_rank']} torsion_closure={t['torsion_closure']} split={t['split']}",
    ]
    return payload, human, 0


def _cmd_compare(args) -> tuple[dict, list[str], int]:
    if len(args.disc) < 2:
        raise UsageError("compare needs at least two --disc values")
    table = _split_table_from_args(args)
    classified = [classify_field(d, table) for d in args.disc]
    first = classified[0].abelian_type
    verdict = all(types_isomorphic(first, fc.abelian_type) for fc in classified[1:])
    payload = {
        "command": "compare",
        "discriminants": list(args.disc),
        "types": {str(fc.discriminant): fc.abelian_type.to_document() for fc in classified},
        "isomorphic": verdict,
    }
    human = [
        "fields      " + " ".join(str(d) for d in args.disc),
        "splits      " + " ".join(group_literal(fc.abelian_type.split_group) for fc in classified),
        f"isomorphic  {'yes' if verdict else 'no'}",
    ]
    return payload, human, 0


def _cmd_batch(args) -> tuple[dict, list[str], int]:
    discs = _read_discriminants(args.input)
    table = _split_table_from_args(args)
    part = classify_batch(discs, table)
    payload = {"command": "batch", **part.to_document()}
    human = [f"{len(part.cells)} isomorphism class(es) over {len(discs)} field(s)"]
    for i, cell in enumerate(part.cells, start=1):
        human.append(
            f"  class {i}: split={group_literal(cell.split_group)}  "
            + " ".join(str(d) for d in cell.discriminants)
        )
    for err in part.errors:
        human.append(f"  error: {err.discriminant}: {err.message}")
    code = part.errors[0].exit_code if part.errors else 0
    return payload, human, code


def _cmd_verify_uniqueness(args) -> tuple[dict, list[str], int]:
    sub = _parse_group(args.sub)
    exponent_lists = []
    for text in args.exponents:
        try:
            exps = tuple(int(x) for x in text.split(",") if x.strip())
        except ValueError:
            raise UsageError(f"bad exponent list {text!r}")
        exponent_lists.append(exps)
    try:
        report = verify_uniqueness(args.prime, sub, exponent_lists, bound=args.bound)
    except ValueError as exc:
        raise UsageError(str(exc))
    payload = {"command": "verify-uniqueness", **report.to_document()}
    human = [f"prime {args.prime}, sub {group_literal(sub)}"]
    for case in report.cases:
        counts = " ".join(f"m={m}:{c}" for m, c in case.level_counts)
        human.append(
            f"  exponents {list(case.exponents)}: saturation {case.saturation_level}, "
            f"counts [{counts}], canonical {group_literal(case.canonical)}, "
            f"{'PASS' if case.passed else 'FAIL'}"
        )
    human.append(f"all passed: {'yes' if report.all_passed else 'no'}")
    return payload, human, 0


def _cmd_dual(args) -> tuple[dict, list[str], int]:
    d = _load_descriptor(args.input)
    if isinstance(d, ProfiniteDescriptor):
        out = dual_profinite(d)
    else:
        out = dual_discrete(d)
    doc = descriptor_to_document(out)
    payload = {"command": "dual", "input_kind": d.kind, "dual": doc}
    human = [f"{d.kind} -> {out.kind}", json.dumps(doc, sort_keys=True)]
    return payload, human, 0


def _cmd_truncate(args) -> tuple[dict, list[str], int]:
    d = _load_descriptor(args.input)
    try:
        grp = truncate(d, args.prime, args.max_exp, args.cap, args.free_level)
    except ValueError as exc:
        raise UsageError(str(exc))
    payload = {
        "command": "truncate",
        "prime": args.prime,
        "max_exp": args.max_exp,
        "mult_cap": args.cap,
        "free_level": args.free_level,
        "group": group_literal(grp),
    }
    return payload, [f"group  {group_literal(grp)}"], 0


def _cmd_fftype(args) -> tuple[dict, list[str], int]:
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    inp = FunctionFieldInput(args.prime, args.n, _parse_group(args.class0))
    t = function_field_type(inp)
    payload = {"command": "fftype", **t.to_document()}
    human = [
        f"characteristic  {t.characteristic}",
        f"d_K             {t.prime_to_p_exponent}",
        f"non-p class     {group_literal(t.nonp_class)}",
    ]
    return payload, human, 0


def _parse_field_triple(text: str) -> FunctionFieldInput:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"bad --field {text!r}: expected p:n:class0, e.g. 2:12:4,3")
    try:
        p, n = int(parts[0]), int(parts[1])
    except ValueError:
        raise UsageError(f"bad --field {text!r}: p and n must be integers") from None
    if n < 1:
        raise UsageError("constant field exponent must be >= 1")
    return FunctionFieldInput(p, n, _parse_group(parts[2]))


def _cmd_ffcompare(args) -> tuple[dict, list[str], int]:
    if len(args.field) < 2:
        raise UsageError("ffcompare needs at least two --field values")
    types = [function_field_type(_parse_field_triple(t)) for t in args.field]
    verdict = all(function_field_isomorphic(types[0], t) for t in types[1:])
    payload = {
        "command": "ffcompare",
        "fields": [t.to_document() for t in types],
        "isomorphic": verdict,
    }
    human = [f"isomorphic  {'yes' if verdict else 'no'}"]
    return payload, human, 0


# ---------------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="galab", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND")

    def add(name: str, handler: Callable, help_: str) -> _Parser:
        p = sub.add_parser(name, help=help_)
        p.set_defaults(handler=handler)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    p = add("classgroup", _cmd_classgroup, "class number and structure of a discriminant")
    p.add_argument("--disc", type=int, required=True)

    p = add("classify", _cmd_classify, "Galois abelian type of one field")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--split", help="inline split group literal for this discriminant")
    p.add_argument("--split-table", help="path to a split-table file")

    p = add("compare", _cmd_compare, "compare the types of two or more fields")
    p.add_argument("--disc", type=int, action="append", default=[], required=True)
    p.add_argument("--split-table", help="path to a split-table file")

    p = add("batch", _cmd_batch, "partition a file of discriminants by type")
    p.add_argument("--input", required=True, help="file with one discriminant per line")
    p.add_argument("--split-table", help="path to a split-table file")

    p = add("verify-uniqueness", _cmd_verify_uniqueness, "extension uniqueness sweep")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--sub", default="1", help="sub group literal (default trivial)")
    p.add_argument(
        "--exponents", action="append", required=True,
        help="comma-separated quotient exponents; repeatable",
    )
    p.add_argument("--bound", type=int, default=1024)

    p = add("dual", _cmd_dual, "Pontryagin dual of a descriptor document")
    p.add_argument("--input", required=True, help="descriptor JSON file")

    p = add("truncate", _cmd_truncate, "finite model of a descriptor at one prime")
    p.add_argument("--input", required=True, help="descriptor JSON file")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--max-exp", type=int, required=True)
    p.add_argument("--cap", type=int, required=True)
    p.add_argument("--free-level", type=int, required=True)

    p = add("fftype", _cmd_fftype, "invariant triple of a global function field")
    p.add_argument("--prime", type=int, required=True, help="characteristic p")
    p.add_argument("--n", type=int, required=True, help="constant field exponent, q = p^n")
    p.add_argument("--class0", default="1", help="degree-zero class group literal")

    p = add("ffcompare", _cmd_ffcompare, "compare function fields given as p:n:class0")
    p.add_argument("--field", action="append", default=[], required=True)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "subcommand", None):
            raise UsageError("a subcommand is required")
        payload, human, code = args.handler(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except GalabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exit_code_for(exc)
    if args.json:
        sys.stdout.write(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")
    else:
        for line in human:
            print(line)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
