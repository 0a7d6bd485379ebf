"""Command-line interface.

Exit codes: 0 when the command succeeds and every check passes, 1 when a
verification check finds a violation or a witness request exhausts its
bounds, 2 for malformed input or usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .approx import RoughType, approximate, upper_approximation
from .classify import (
    TheoremReport,
    approximate_family,
    family_law_report,
    measure_law_report,
    validate_classification,
)
from .formats import (
    RelationDocument,
    build_approx_report,
    build_classify_report,
    build_neighbors_report,
    build_tables_report,
    build_verify_report,
    build_witness_report,
    emit_report,
    parse_classification_file,
    parse_relation_file,
    parse_tables_json,
    render_relation_file,
)
from .lab import (
    GeneratorConfig,
    SubsetBudget,
    check_relation_against_tables,
    find_type_witness,
    generate_relations,
    merge_property_reports,
    random_campaign,
    random_relation,
    reconstruct_relation,
    verify_algebraic_properties,
    verify_serial_iff,
    witness_inventory,
)
from .relation import BinaryRelation, BiroughError, Subset

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


def _load_relation(path: str) -> tuple[RelationDocument, BinaryRelation]:
    doc = parse_relation_file(Path(path).read_text(encoding="utf-8"), source=path)
    return doc, doc.relation()


def _parse_set_arg(rel: BinaryRelation, arg: str) -> Subset:
    labels = [token.strip() for token in arg.split(",") if token.strip()]
    return rel.universes.v_subset(labels)


def _rough_type_arg(text: str) -> RoughType:
    try:
        return RoughType.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _print(report, fmt: str) -> None:
    sys.stdout.write(emit_report(report, fmt))


def _cmd_approx(args: argparse.Namespace) -> int:
    _, rel = _load_relation(args.relation)
    query = _parse_set_arg(rel, args.set)
    result = approximate(rel, query)
    _print(build_approx_report(rel, args.relation, query, result), args.format)
    return EXIT_OK


def _cmd_neighbors(args: argparse.Namespace) -> int:
    _, rel = _load_relation(args.relation)
    report = build_neighbors_report(rel, args.relation)
    _print(report, args.format)
    return EXIT_OK if report.body["saturation_identity"] else EXIT_VIOLATION


def _cmd_classify(args: argparse.Namespace) -> int:
    _, rel = _load_relation(args.relation)
    named = parse_classification_file(
        Path(args.classes).read_text(encoding="utf-8"), rel.universes, source=args.classes
    )
    classification = validate_classification(named)
    fa = approximate_family(rel, classification)
    laws = TheoremReport(
        family_law_report(fa).entries + measure_law_report(fa).entries
    )
    _print(build_classify_report(rel, args.relation, fa, laws), args.format)
    return EXIT_OK if laws.ok else EXIT_VIOLATION


def _verify_one(rel: BinaryRelation, budget: SubsetBudget):
    properties = verify_algebraic_properties(rel, budget)
    serial_ok = verify_serial_iff(rel)
    saturation_ok = rel.saturation_identity_holds()
    rebuilt = reconstruct_relation(lambda s: upper_approximation(rel, s), rel.universes)
    return properties, serial_ok, saturation_ok, rebuilt == rel


def _cmd_verify(args: argparse.Namespace) -> int:
    reports = []
    serial = [0, 0]
    saturation = [0, 0]
    roundtrip = [0, 0]

    if args.relation is not None:
        _, rel = _load_relation(args.relation)
        if args.samples:
            budget = SubsetBudget.sampled(args.samples, args.seed)
            description = (
                f"relation {args.relation} with {args.samples} sampled subset "
                f"pairs (seed {args.seed})"
            )
        else:
            budget = SubsetBudget.exhaustive()
            description = f"relation {args.relation} with exhaustive subsets"
        relations = [rel]
        budgets = [budget]
        scope = {"description": description, "source": args.relation}
    elif args.exhaustive:
        if args.u is None or args.v is None:
            raise BiroughError("--exhaustive without a relation file needs --u and --v")
        relations = list(generate_relations(GeneratorConfig(args.u, args.v, "exhaustive")))
        budgets = [SubsetBudget.exhaustive()] * len(relations)
        description = f"all {args.u}x{args.v} relations with exhaustive subsets"
        scope = {"description": description, "u": args.u, "v": args.v}
    elif args.samples:
        relations = list(
            random_campaign(
                args.samples,
                max_u=args.max_u,
                max_v=args.max_v,
                density=args.density,
                seed=args.seed,
            )
        )
        budgets = [
            SubsetBudget.sampled(args.pairs, args.seed + i)
            for i in range(len(relations))
        ]
        description = (
            f"{args.samples} random relations up to {args.max_u}x{args.max_v} "
            f"(density {args.density}, seed {args.seed}), {args.pairs} subset pairs each"
        )
        scope = {
            "description": description,
            "samples": args.samples,
            "max_u": args.max_u,
            "max_v": args.max_v,
            "seed": args.seed,
        }
    else:
        raise BiroughError(
            "nothing to verify: give a relation file, or --exhaustive with --u/--v, "
            "or --samples N"
        )

    for rel, budget in zip(relations, budgets):
        properties, serial_ok, saturation_ok, roundtrip_ok = _verify_one(rel, budget)
        reports.append(properties)
        serial[0] += 1
        serial[1] += 0 if serial_ok else 1
        saturation[0] += 1
        saturation[1] += 0 if saturation_ok else 1
        roundtrip[0] += 1
        roundtrip[1] += 0 if roundtrip_ok else 1

    merged = merge_property_reports(reports)
    checks = {
        "seriality_biconditional": tuple(serial),
        "saturation_identity": tuple(saturation),
        "reconstruction_roundtrip": tuple(roundtrip),
    }
    report = build_verify_report(scope, merged, checks)
    _print(report, args.format)
    return EXIT_OK if report.body["pass"] else EXIT_VIOLATION


def _cmd_tables(args: argparse.Namespace) -> int:
    table = None
    if args.tables_file:
        transcriptions = parse_tables_json(
            Path(args.tables_file).read_text(encoding="utf-8"), source=args.tables_file
        )
        if args.op not in transcriptions:
            raise BiroughError(
                f"tables file {args.tables_file} has no {args.op!r} grid"
            )
        table = transcriptions[args.op]

    if args.relation is not None:
        _, rel = _load_relation(args.relation)
        findings = check_relation_against_tables(rel, args.op, tables=table)
        scope = {
            "description": f"relation {args.relation}, exhaustive subset pairs",
            "source": args.relation,
        }
    else:
        findings = witness_inventory(args.op, args.max_u, args.max_v, tables=table)
        scope = {
            "description": f"exhaustive sweep up to u<={args.max_u}, v<={args.max_v}",
            "max_u": args.max_u,
            "max_v": args.max_v,
        }
    report = build_tables_report(args.op, scope, findings)
    _print(report, args.format)
    return EXIT_OK if report.body["conformant"] else EXIT_VIOLATION


def _cmd_witness(args: argparse.Namespace) -> int:
    witness = find_type_witness(
        args.op,
        args.left,
        args.right,
        args.result,
        max_u=args.max_u,
        max_v=args.max_v,
    )
    report = build_witness_report(
        args.op, args.left, args.right, args.result, args.max_u, args.max_v, witness
    )
    _print(report, args.format)
    return EXIT_OK if witness is not None else EXIT_VIOLATION


def _cmd_gen(args: argparse.Namespace) -> int:
    rel = random_relation(args.u, args.v, args.density, args.seed, args.index)
    doc = RelationDocument(rel.universes, rel.rows, source="<generated>")
    sys.stdout.write(render_relation_file(doc))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="birough",
        description=(
            "Rough-set approximation over two universes linked by a binary "
            "relation: neighborhoods, lower/upper approximations, rough types, "
            "classification measures, and verification campaigns."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("approx", help="lower/upper/boundary/type of a V-subset")
    p.add_argument("relation", help="relation file")
    p.add_argument(
        "--set",
        required=True,
        help="comma-separated V labels; an empty string selects the empty set",
    )
    add_format(p)
    p.set_defaults(func=_cmd_approx)

    p = sub.add_parser(
        "neighbors", help="neighborhoods, solitary set, quotients, seriality"
    )
    p.add_argument("relation", help="relation file")
    add_format(p)
    p.set_defaults(func=_cmd_neighbors)

    p = sub.add_parser(
        "classify", help="family approximation, measures, and family laws"
    )
    p.add_argument("relation", help="relation file")
    p.add_argument("--classes", required=True, help="classification file")
    add_format(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("verify", help="algebraic law campaign")
    p.add_argument("relation", nargs="?", help="relation file (omit for a campaign)")
    p.add_argument("--exhaustive", action="store_true", help="exhaustive enumeration")
    p.add_argument(
        "--samples",
        type=int,
        default=0,
        help="random relations in a campaign, or sampled subset pairs when a "
        "relation file is given",
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pairs", type=int, default=50, help="subset pairs per relation")
    p.add_argument("--u", type=int, help="U size for an exhaustive campaign")
    p.add_argument("--v", type=int, help="V size for an exhaustive campaign")
    p.add_argument("--max-u", type=int, default=8)
    p.add_argument("--max-v", type=int, default=8)
    p.add_argument("--density", type=float, default=0.5)
    add_format(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser(
        "tables", help="type-table conformance sweep and witness inventory"
    )
    p.add_argument("--op", required=True, choices=("union", "intersection"))
    p.add_argument("--relation", help="check one relation instead of a sweep")
    p.add_argument("--max-u", type=int, default=3)
    p.add_argument("--max-v", type=int, default=3)
    p.add_argument(
        "--tables-file",
        help="JSON transcription to check against instead of the built-in tables",
    )
    add_format(p)
    p.set_defaults(func=_cmd_tables)

    p = sub.add_parser("witness", help="search for a (relation, X, Y) table witness")
    p.add_argument("--op", required=True, choices=("union", "intersection"))
    p.add_argument("--left", required=True, type=_rough_type_arg)
    p.add_argument("--right", required=True, type=_rough_type_arg)
    p.add_argument("--result", required=True, type=_rough_type_arg)
    p.add_argument("--max-u", type=int, default=3)
    p.add_argument("--max-v", type=int, default=3)
    add_format(p)
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("gen", help="emit a seeded random relation file")
    p.add_argument("--u", required=True, type=int)
    p.add_argument("--v", required=True, type=int)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--index", type=int, default=0, help="position in the seeded stream")
    p.set_defaults(func=_cmd_gen)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (BiroughError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
