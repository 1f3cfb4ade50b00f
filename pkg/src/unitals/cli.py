"""Command-line entry points.

Every subcommand writes exactly one JSON document to standard output (or to
--out where supported) and exits 0 when all checks pass, 1 when a
mathematical check fails (the document is the witness), or 2 on a usage or
input-format problem.  Output is deterministic: keys sorted, two-space
indent, trailing newline.

Group files are either a bare {"degree", "generators"} document or a
wrapper holding several named groups (as construct-ree3 emits); pass
--group-key to pick one when the wrapper is ambiguous.  A file argument of
"-" reads standard input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .designs import (
    NonUniformSpace,
    build_hermitian_unital,
    build_ree_unital_3,
    cnp_check,
    flag_action,
    is_linear_space,
    line_action,
    significant_primes,
    space_params,
    structure_from_json,
    structure_to_json,
)
from .permgroup import DEFAULT_CAP, CapExceeded, group_from_json, group_to_json
from .weyl import (
    lemma_report_to_json,
    parabolic_index_poly,
    poly_eval,
    root_system,
    verify_lemma,
)


class UsageError(Exception):
    """Bad arguments or unreadable input; reported as exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        raise UsageError(message)


def _emit(doc: dict, out_path: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out_path and out_path != "-":
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str) -> dict:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _is_group_doc(doc) -> bool:
    return isinstance(doc, dict) and "degree" in doc and "generators" in doc


def _load_space(path: str):
    doc = _load_json(path)
    if isinstance(doc, dict) and "design" in doc and "lines" not in doc:
        doc = doc["design"]
    return structure_from_json(doc)


def _load_group(path: str, key: str | None, cap: int):
    doc = _load_json(path)
    if _is_group_doc(doc):
        if key is not None:
            raise UsageError(
                f"--group-key given but {path} holds a single group document"
            )
        return group_from_json(doc, cap=cap)
    if not isinstance(doc, dict):
        raise UsageError(f"{path} does not hold a group document")
    named = {k: v for k, v in doc.items() if _is_group_doc(v)}
    if key is not None:
        if key not in named:
            raise UsageError(
                f"--group-key {key!r} not in {path}; available: {sorted(named)}"
            )
        return group_from_json(named[key], cap=cap)
    if len(named) == 1:
        return group_from_json(next(iter(named.values())), cap=cap)
    if not named:
        raise UsageError(f"no group document found in {path}")
    raise UsageError(
        f"{path} holds several groups; pass --group-key, one of {sorted(named)}"
    )


def _cmd_construct_hermitian(args) -> tuple[dict, int]:
    design, group = build_hermitian_unital(args.q, cap=args.cap)
    doc = {"design": structure_to_json(design), "group": group_to_json(group)}
    return doc, 0


def _cmd_construct_ree3(args) -> tuple[dict, int]:
    design, socle, extended = build_ree_unital_3(cap=args.cap)
    doc = {
        "design": structure_to_json(design),
        "socle": group_to_json(socle),
        "extended": group_to_json(extended),
    }
    return doc, 0


def _cmd_check_space(args) -> tuple[dict, int]:
    structure = _load_space(args.file)
    report = is_linear_space(structure)
    if report.status == "malformed":
        return {"status": "malformed", "problem": report.problem}, 1
    if report.status == "fail":
        return {
            "status": "fail",
            "problem": report.problem,
            "witness_pair": list(report.witness_pair),
            "covering_lines": list(report.covering_lines),
        }, 1
    try:
        params = space_params(structure)
    except NonUniformSpace as exc:
        return {
            "status": "pass",
            "params": None,
            "significant_primes": None,
            "note": str(exc),
            "witness": list(exc.witness),
        }, 0
    return {
        "status": "pass",
        "params": {"b": params.b, "v": params.v, "k": params.k, "r": params.r},
        "significant_primes": significant_primes(structure),
    }, 0


def _cmd_check_transitivity(args) -> tuple[dict, int]:
    structure = _load_space(args.space)
    group = _load_group(args.group, args.group_key, args.cap)
    lines_act = line_action(structure, group)
    line_orbits = len(lines_act.orbits())
    doc: dict = {
        "line_orbits": line_orbits,
        "line_transitive": line_orbits == 1,
    }
    passed = doc["line_transitive"]
    if args.flags:
        flag_orbits = len(flag_action(structure, group).orbits())
        doc["flag_orbits"] = flag_orbits
        doc["flag_transitive"] = flag_orbits == 1
        passed = passed and doc["flag_transitive"]
    doc["status"] = "pass" if passed else "fail"
    return doc, 0 if passed else 1


def _cmd_cnp_check(args) -> tuple[dict, int]:
    structure = _load_space(args.space)
    group = _load_group(args.group, args.group_key, args.cap)
    report = cnp_check(structure, group, args.p)
    doc = {
        "status": "pass" if report.holds else "fail",
        "p": report.p,
        "holds": report.holds,
        "sylow_order": report.sylow_order,
        "normalizer_order": report.normalizer_order,
        "witness": report.witness,
    }
    return doc, 0 if report.holds else 1


def _cmd_group_order(args) -> tuple[dict, int]:
    group = _load_group(args.file, args.group_key, args.cap)
    return {"status": "pass", "degree": group.degree, "order": group.order()}, 0


def _cmd_subdegrees(args) -> tuple[dict, int]:
    group = _load_group(args.group, args.group_key, args.cap)
    if not 0 <= args.point < group.degree:
        raise UsageError(
            f"--point {args.point} out of range for degree {group.degree}"
        )
    subs = group.subdegrees(args.point)
    return {"status": "pass", "point": args.point, "subdegrees": list(subs)}, 0


def _parse_omit(text: str, rank: int) -> tuple[int, ...]:
    if not text.strip():
        return ()
    out = set()
    for token in text.split(","):
        try:
            i = int(token)
        except ValueError:
            raise UsageError(
                f"--omit must be comma-separated integers, got {token!r}"
            ) from None
        if not 1 <= i <= rank:
            raise UsageError(f"--omit index {i} out of range 1..{rank}")
        out.add(i)
    return tuple(sorted(out))


def _cmd_weyl_index(args) -> tuple[dict, int]:
    rs = root_system(args.type, args.rank)
    omit = _parse_omit(args.omit, args.rank)
    keep = tuple(i for i in range(rs.rank) if (i + 1) not in omit)
    poly = parabolic_index_poly(rs, keep, cap=args.cap)
    doc: dict = {
        "status": "pass",
        "type": args.type,
        "rank": args.rank,
        "omit": list(omit),
        "index_poly": list(poly),
    }
    if args.eval_q is not None:
        doc["eval"] = {"q": args.eval_q, "value": poly_eval(poly, args.eval_q)}
    return doc, 0


def _cmd_verify_lemma(args) -> tuple[dict, int]:
    report = verify_lemma(args.case, args.qmax, cap=args.cap)
    return lemma_report_to_json(report), 0 if report.ok else 1


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument(
        "--cap",
        type=int,
        default=DEFAULT_CAP,
        help="override the enumeration size cap",
    )
    parser = _Parser(prog="unitals", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "construct-hermitian",
        parents=[common],
        help="build the Hermitian unital and its unitary group action",
    )
    p.add_argument("--q", type=int, required=True, choices=(2, 3, 4))
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_construct_hermitian)

    p = sub.add_parser(
        "construct-ree3",
        parents=[common],
        help="build the (63,28,4,9) space with its socle and extension",
    )
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_construct_ree3)

    p = sub.add_parser(
        "check-space",
        parents=[common],
        help="check the linear-space axioms, parameters, significant primes",
    )
    p.add_argument("file")
    p.set_defaults(handler=_cmd_check_space)

    p = sub.add_parser(
        "check-transitivity",
        parents=[common],
        help="count line (and optionally flag) orbits of a group on a space",
    )
    p.add_argument("--space", required=True)
    p.add_argument("--group", required=True)
    p.add_argument("--group-key", default=None)
    p.add_argument("--flags", action="store_true")
    p.set_defaults(handler=_cmd_check_transitivity)

    p = sub.add_parser(
        "cnp-check",
        parents=[common],
        help="check that the normalizer of a Sylow p-subgroup fixes a point",
    )
    p.add_argument("--space", required=True)
    p.add_argument("--group", required=True)
    p.add_argument("--group-key", default=None)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(handler=_cmd_cnp_check)

    p = sub.add_parser(
        "group-order", parents=[common], help="order of a permutation group"
    )
    p.add_argument("file")
    p.add_argument("--group-key", default=None)
    p.set_defaults(handler=_cmd_group_order)

    p = sub.add_parser(
        "subdegrees",
        parents=[common],
        help="orbit lengths of a point stabilizer",
    )
    p.add_argument("--group", required=True)
    p.add_argument("--group-key", default=None)
    p.add_argument("--point", type=int, required=True)
    p.set_defaults(handler=_cmd_subdegrees)

    p = sub.add_parser(
        "weyl-index",
        parents=[common],
        help="index polynomial of a parabolic subgroup of a Weyl group",
    )
    p.add_argument("--type", required=True, choices=("A", "D", "E"))
    p.add_argument("--rank", type=int, required=True)
    p.add_argument(
        "--omit",
        required=True,
        help="comma-separated 1-based simple roots to omit, e.g. '1,3'",
    )
    p.add_argument("--eval", dest="eval_q", type=int, default=None)
    p.set_defaults(handler=_cmd_weyl_index)

    p = sub.add_parser(
        "verify-lemma",
        parents=[common],
        help="run one polynomial-identity and gcd scan case",
    )
    p.add_argument(
        "--case",
        required=True,
        choices=("psl5-p2", "psl5-p13", "dm-p5", "dm-p7", "e6-p1", "e6-p3"),
    )
    p.add_argument("--qmax", type=int, required=True)
    p.set_defaults(handler=_cmd_verify_lemma)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        _emit({"status": "usage-error", "message": str(exc)}, None)
        return 2
    try:
        doc, code = args.handler(args)
    except UsageError as exc:
        _emit({"status": "usage-error", "message": str(exc)}, None)
        return 2
    except CapExceeded as exc:
        _emit({"status": "cap-exceeded", "message": str(exc)}, None)
        return 2
    except ValueError as exc:
        _emit({"status": "usage-error", "message": str(exc)}, None)
        return 2
    except RuntimeError as exc:
        _emit({"status": "fail", "message": str(exc)}, None)
        return 1
    _emit(doc, getattr(args, "out", None))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
