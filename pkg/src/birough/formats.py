"""Text formats, report assembly, and deterministic serialization.

Relation files mirror a Boolean matrix: a ``V:`` header listing the column
labels, then one ``<label>: b1 b2 ...`` line per row, '#' starting a comment
line.  Classification files hold one ``<name>: <labels...>`` block per line.

Reports are small JSON-able trees with a schema version; ``emit_report``
renders them either as stable JSON (sorted keys) or as a human-oriented text
layout.  Identical inputs always serialize to identical bytes.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .approx import ApproxResult, RoughType
from .classify import (
    FamilyApprox,
    TheoremReport,
    UndefinedMeasureError,
    HOLDS,
    VACUOUS,
    VIOLATED,
)
from .lab import (
    OPERATIONS,
    PropertyReport,
    TableCellFinding,
    Witness,
)
from .relation import (
    BinaryRelation,
    BiroughError,
    Side,
    Subset,
    UniversePair,
    valid_label,
)

__all__ = [
    "SCHEMA_VERSION",
    "ParseError",
    "RelationDocument",
    "parse_relation_file",
    "render_relation_file",
    "parse_classification_file",
    "parse_tables_json",
    "ratio_decimal",
    "ratio_obj",
    "ratio_text",
    "AnalysisReport",
    "emit_report",
    "relation_summary",
    "build_approx_report",
    "build_neighbors_report",
    "build_classify_report",
    "build_verify_report",
    "build_tables_report",
    "build_witness_report",
]

SCHEMA_VERSION = 1

_TOKEN_RE = re.compile(r"\S+")


class ParseError(BiroughError, ValueError):
    """A text input failed to parse; carries source, line, and column."""

    def __init__(self, message: str, source: str = "<string>", line: int = 0, col: int = 0):
        self.message = message
        self.source = source
        self.line = line
        self.col = col
        super().__init__(f"{source}:{line}:{col}: {message}")


@dataclass(frozen=True)
class RelationDocument:
    """A parsed relation file; ``source`` is informational only."""

    universes: UniversePair
    rows: tuple[int, ...]
    source: str = field(default="<string>", compare=False)

    def relation(self) -> BinaryRelation:
        return BinaryRelation(self.universes, self.rows)


def parse_relation_file(text: str, source: str = "<string>") -> RelationDocument:
    """Parse the relation matrix format with line/column diagnostics."""
    v_labels: list[str] | None = None
    u_labels: list[str] = []
    masks: list[int] = []
    u_seen: set[str] = set()
    last_line = 0

    for line_no, line in enumerate(text.splitlines(), 1):
        last_line = line_no
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = list(_TOKEN_RE.finditer(line))
        if v_labels is None:
            head = tokens[0]
            if head.group() != "V:":
                raise ParseError(
                    "expected a 'V:' header line listing the V labels",
                    source,
                    line_no,
                    head.start() + 1,
                )
            v_labels = []
            seen: set[str] = set()
            for match in tokens[1:]:
                token = match.group()
                if not valid_label(token):
                    raise ParseError(
                        f"bad V label {token!r}", source, line_no, match.start() + 1
                    )
                if token in seen:
                    raise ParseError(
                        f"duplicate V label {token!r}", source, line_no, match.start() + 1
                    )
                seen.add(token)
                v_labels.append(token)
            if not v_labels:
                raise ParseError(
                    "the V header must list at least one label",
                    source,
                    line_no,
                    head.end() + 1,
                )
            continue

        head = tokens[0]
        if not head.group().endswith(":") or len(head.group()) < 2:
            raise ParseError(
                "expected '<label>: <0/1 cells>'", source, line_no, head.start() + 1
            )
        label = head.group()[:-1]
        if not valid_label(label):
            raise ParseError(f"bad U label {label!r}", source, line_no, head.start() + 1)
        if label in u_seen:
            raise ParseError(
                f"duplicate U label {label!r}", source, line_no, head.start() + 1
            )
        cells = tokens[1:]
        if len(cells) != len(v_labels):
            col = cells[-1].start() + 1 if cells else head.end() + 1
            raise ParseError(
                f"row for {label!r} has {len(cells)} cells, expected {len(v_labels)}",
                source,
                line_no,
                col,
            )
        mask = 0
        for j, match in enumerate(cells):
            token = match.group()
            if token == "1":
                mask |= 1 << j
            elif token != "0":
                raise ParseError(
                    f"cell must be 0 or 1, got {token!r}",
                    source,
                    line_no,
                    match.start() + 1,
                )
        u_seen.add(label)
        u_labels.append(label)
        masks.append(mask)

    if v_labels is None:
        raise ParseError(
            "expected a 'V:' header line listing the V labels", source, max(last_line, 1), 1
        )
    if not u_labels:
        raise ParseError("no relation rows found", source, max(last_line, 1), 1)
    universes = UniversePair(tuple(u_labels), tuple(v_labels))
    return RelationDocument(universes, tuple(masks), source)


def render_relation_file(doc: RelationDocument) -> str:
    """Render a document back to text; parsing the result reproduces it."""
    v_size = doc.universes.v_size
    lines = ["V: " + " ".join(doc.universes.v_labels)]
    for label, row in zip(doc.universes.u_labels, doc.rows):
        cells = " ".join(str(row >> j & 1) for j in range(v_size))
        lines.append(f"{label}: {cells}")
    return "\n".join(lines) + "\n"


def parse_classification_file(
    text: str, universes: UniversePair, source: str = "<string>"
) -> list[tuple[str, Subset]]:
    """Parse named V-blocks; partition validation happens separately."""
    blocks: list[tuple[str, Subset]] = []
    names: set[str] = set()
    for line_no, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = list(_TOKEN_RE.finditer(line))
        head = tokens[0]
        if not head.group().endswith(":") or len(head.group()) < 2:
            raise ParseError(
                "expected '<name>: <V labels...>'", source, line_no, head.start() + 1
            )
        name = head.group()[:-1]
        if name in names:
            raise ParseError(
                f"duplicate block name {name!r}", source, line_no, head.start() + 1
            )
        bits = 0
        for match in tokens[1:]:
            token = match.group()
            try:
                j = universes.index(Side.V, token)
            except BiroughError:
                raise ParseError(
                    f"unknown V label {token!r}", source, line_no, match.start() + 1
                ) from None
            bits |= 1 << j
        names.add(name)
        blocks.append((name, Subset(universes, Side.V, bits)))
    return blocks


def parse_tables_json(text: str, source: str = "<string>") -> dict[str, dict]:
    """Parse a user-supplied type-table transcription.

    Format: an object mapping 'union' / 'intersection' to a 4x4 grid (rows =
    left type 1..4, columns = right type) of lists of allowed result codes.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", source, exc.lineno, exc.colno) from None
    if not isinstance(data, dict) or not data:
        raise ParseError("expected an object with 'union'/'intersection' grids", source)
    out: dict[str, dict] = {}
    for op, grid in data.items():
        if op not in OPERATIONS:
            raise ParseError(f"unknown operation {op!r}", source)
        if not isinstance(grid, list) or len(grid) != 4 or any(
            not isinstance(row, list) or len(row) != 4 for row in grid
        ):
            raise ParseError(f"{op}: expected a 4x4 grid of allowed-code lists", source)
        table = {}
        for i, row in enumerate(grid):
            for j, cell in enumerate(row):
                if not isinstance(cell, list) or not cell or any(
                    c not in (1, 2, 3, 4) for c in cell
                ):
                    raise ParseError(
                        f"{op}: cell ({i + 1}, {j + 1}) must be a non-empty list of codes 1..4",
                        source,
                    )
                table[(RoughType(i + 1), RoughType(j + 1))] = frozenset(
                    RoughType(c) for c in cell
                )
        out[op] = table
    return out


# --- ratios ------------------------------------------------------------------


def ratio_decimal(value: Fraction, places: int = 6) -> str:
    """Exact fixed-point rendering; no floating point involved."""
    scale = 10**places
    scaled = round(value * scale)
    whole, frac = divmod(scaled, scale)
    return f"{whole}.{frac:0{places}d}"


def ratio_obj(value: Fraction) -> dict[str, Any]:
    return {
        "num": value.numerator,
        "den": value.denominator,
        "decimal": ratio_decimal(value),
    }


def ratio_text(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator} ({ratio_decimal(value)})"


# --- reports -----------------------------------------------------------------


@dataclass(frozen=True)
class AnalysisReport:
    """A serializable result tree for one CLI command."""

    command: str
    body: Mapping[str, Any]
    schema_version: int = SCHEMA_VERSION

    def to_obj(self) -> dict[str, Any]:
        return {"schema_version": self.schema_version, "command": self.command, **self.body}


def emit_report(report: AnalysisReport, format: str = "text") -> str:
    """Serialize a report; identical reports yield identical bytes."""
    if format == "json":
        return json.dumps(report.to_obj(), sort_keys=True, indent=2) + "\n"
    if format == "text":
        return "\n".join(_TEXT_RENDERERS[report.command](dict(report.body))) + "\n"
    raise ValueError(f"unknown report format {format!r}")


def relation_summary(rel: BinaryRelation, source: str) -> dict[str, Any]:
    return {"source": source, "u_size": rel.u_size, "v_size": rel.v_size}


def build_approx_report(
    rel: BinaryRelation, source: str, query: Subset, result: ApproxResult
) -> AnalysisReport:
    body = {
        "relation": relation_summary(rel, source),
        "set": list(query.labels()),
        "lower": list(result.lower.labels()),
        "upper": list(result.upper.labels()),
        "boundary": list(result.boundary.labels()),
        "type": {"code": int(result.rough_type), "label": result.rough_type.label},
    }
    return AnalysisReport("approx", body)


def build_neighbors_report(rel: BinaryRelation, source: str) -> AnalysisReport:
    u_part, v_part = rel.quotient_partitions()
    body = {
        "relation": relation_summary(rel, source),
        "serial": rel.is_serial(),
        "solitary": list(rel.solitary_set().labels()),
        "right_neighborhoods": {
            x: list(rel.right_neighborhood(x).labels()) for x in rel.universes.u_labels
        },
        "left_neighborhoods": {
            y: list(rel.left_neighborhood(y).labels()) for y in rel.universes.v_labels
        },
        "u_partition": [list(block.labels()) for block in u_part],
        "v_partition": [list(block.labels()) for block in v_part],
        "saturation_identity": rel.saturation_identity_holds(),
    }
    return AnalysisReport("neighbors", body)


def build_classify_report(
    rel: BinaryRelation, source: str, fa: FamilyApprox, laws: TheoremReport
) -> AnalysisReport:
    blocks = []
    for name, block, lo, up in zip(
        fa.classification.names, fa.classification.blocks, fa.lowers, fa.uppers
    ):
        blocks.append(
            {
                "name": name,
                "members": list(block.labels()),
                "lower": list(lo.labels()),
                "upper": list(up.labels()),
            }
        )
    try:
        accuracy: dict[str, Any] | None = ratio_obj(fa.accuracy())
    except UndefinedMeasureError:
        accuracy = None
    quality = fa.quality()
    measures: dict[str, Any] = {
        "accuracy": accuracy,
        "quality_v": ratio_obj(quality.v_normalized),
        "quality_u": ratio_obj(quality.u_normalized),
        "definable": fa.is_definable(),
        "serial": rel.is_serial(),
    }
    tally = laws.tally()
    body = {
        "relation": relation_summary(rel, source),
        "blocks": blocks,
        "measures": measures,
        "laws": {
            "holds": tally[HOLDS],
            "vacuous": tally[VACUOUS],
            "violated": tally[VIOLATED],
            "entries": [
                {
                    "law": e.law,
                    "blocks": list(e.blocks),
                    "hypothesis": e.hypothesis,
                    "conclusion": e.conclusion,
                    "verdict": e.verdict,
                }
                for e in laws.entries
            ],
        },
    }
    return AnalysisReport("classify", body)


def build_verify_report(
    scope: Mapping[str, Any],
    properties: PropertyReport,
    checks: Mapping[str, tuple[int, int]],
) -> AnalysisReport:
    """Assemble a law-campaign report; ``checks`` maps name -> (checked, failures)."""
    details = []
    for record in properties.records:
        for violation in record.violations:
            details.append(
                {
                    "law": violation.law,
                    "relation": violation.relation,
                    "subsets": list(violation.subsets),
                    "expected": violation.expected,
                    "got": violation.got,
                }
            )
    extra = {
        name: {"checked": checked, "failures": failures}
        for name, (checked, failures) in checks.items()
    }
    ok = properties.ok and all(f == 0 for _, f in checks.values())
    body = {
        "scope": dict(scope),
        "laws": [
            {
                "law": record.law,
                "instances": record.instances,
                "violations": len(record.violations),
            }
            for record in properties.records
        ],
        "violation_details": details,
        "checks": extra,
        "pass": ok,
    }
    return AnalysisReport("verify", body)


def _witness_obj(witness: Witness) -> dict[str, Any]:
    return {
        "u": witness.relation.u_size,
        "v": witness.relation.v_size,
        "rows": list(witness.relation.bit_rows()),
        "left_set": list(witness.left_set.labels()),
        "right_set": list(witness.right_set.labels()),
    }


def build_tables_report(
    operation: str, scope: Mapping[str, Any], findings: Sequence[TableCellFinding]
) -> AnalysisReport:
    cells = []
    for finding in findings:
        cells.append(
            {
                "left": finding.left.short,
                "right": finding.right.short,
                "allowed": [t.short for t in sorted(finding.allowed)],
                "observed": [t.short for t in sorted(finding.observed)],
                "unrealized": [t.short for t in finding.unrealized],
                "conformant": finding.conformant,
                "witnesses": [
                    {"result": t.short, **_witness_obj(w)}
                    for t, w in sorted(finding.witnesses.items())
                ],
            }
        )
    body = {
        "operation": operation,
        "scope": dict(scope),
        "cells": cells,
        "conformant": all(finding.conformant for finding in findings),
    }
    return AnalysisReport("tables", body)


def build_witness_report(
    operation: str,
    left: RoughType,
    right: RoughType,
    result: RoughType,
    max_u: int,
    max_v: int,
    witness: Witness | None,
) -> AnalysisReport:
    body = {
        "operation": operation,
        "left": left.short,
        "right": right.short,
        "result": result.short,
        "bounds": {"max_u": max_u, "max_v": max_v},
        "found": witness is not None,
        "witness": _witness_obj(witness) if witness is not None else None,
    }
    return AnalysisReport("witness", body)


# --- text rendering ----------------------------------------------------------


def _set_text(labels: Sequence[str]) -> str:
    return "{" + ", ".join(labels) + "}"


def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


def _ratio_line(obj: Mapping[str, Any] | None) -> str:
    if obj is None:
        return "undefined (every block's upper approximation is empty)"
    return f"{obj['num']}/{obj['den']} ({obj['decimal']})"


def _relation_line(meta: Mapping[str, Any]) -> str:
    return f"relation: {meta['source']} (|U|={meta['u_size']}, |V|={meta['v_size']})"


def _render_approx(body: dict) -> list[str]:
    t = body["type"]
    return [
        _relation_line(body["relation"]),
        f"set: {_set_text(body['set'])}",
        f"lower: {_set_text(body['lower'])}",
        f"upper: {_set_text(body['upper'])}",
        f"boundary: {_set_text(body['boundary'])}",
        f"type: Type {t['code']} ({t['label']})",
    ]


def _render_neighbors(body: dict) -> list[str]:
    lines = [
        _relation_line(body["relation"]),
        f"serial: {_yesno(body['serial'])}",
        f"solitary: {_set_text(body['solitary'])}",
        "right neighborhoods:",
    ]
    for x, members in body["right_neighborhoods"].items():
        lines.append(f"  {x}: {_set_text(members)}")
    lines.append("left neighborhoods:")
    for y, members in body["left_neighborhoods"].items():
        lines.append(f"  {y}: {_set_text(members)}")
    lines.append("U quotient: " + " | ".join(_set_text(b) for b in body["u_partition"]))
    lines.append("V quotient: " + " | ".join(_set_text(b) for b in body["v_partition"]))
    lines.append(
        "saturation identity: "
        + ("holds" if body["saturation_identity"] else "VIOLATED")
    )
    return lines


def _render_classify(body: dict) -> list[str]:
    lines = [_relation_line(body["relation"]), "blocks:"]
    for block in body["blocks"]:
        lines.append(f"  {block['name']} = {_set_text(block['members'])}")
        lines.append(f"    lower: {_set_text(block['lower'])}")
        lines.append(f"    upper: {_set_text(block['upper'])}")
    measures = body["measures"]
    lines.append(f"accuracy: {_ratio_line(measures['accuracy'])}")
    lines.append(f"quality (per |V|): {_ratio_line(measures['quality_v'])}")
    lines.append(f"quality (per |U|): {_ratio_line(measures['quality_u'])}")
    lines.append(f"definable: {_yesno(measures['definable'])}")
    lines.append(f"serial: {_yesno(measures['serial'])}")
    laws = body["laws"]
    lines.append(
        f"laws: {laws['holds']} holds, {laws['vacuous']} vacuous, "
        f"{laws['violated']} violated"
    )
    for entry in laws["entries"]:
        scope = f" ({', '.join(entry['blocks'])})" if entry["blocks"] else " (all)"
        lines.append(f"  {entry['verdict']:<9}{entry['law']}{scope}")
    return lines


def _render_verify(body: dict) -> list[str]:
    lines = [f"campaign: {body['scope']['description']}"]
    lines.append(f"{'law':<44}{'instances':>10}{'violations':>12}")
    for record in body["laws"]:
        lines.append(
            f"{record['law']:<44}{record['instances']:>10}{record['violations']:>12}"
        )
    for violation in body["violation_details"]:
        lines.append(
            f"VIOLATION {violation['law']} on {violation['relation']} "
            f"{' '.join(violation['subsets'])}: expected {violation['expected']}, "
            f"got {violation['got']}"
        )
    names = {
        "seriality_biconditional": "seriality biconditional",
        "saturation_identity": "saturation identity",
        "reconstruction_roundtrip": "reconstruction round-trip",
    }
    for key, check in body["checks"].items():
        label = names.get(key, key)
        lines.append(
            f"{label}: {check['checked']} checked, {check['failures']} failures"
        )
    lines.append("result: " + ("PASS" if body["pass"] else "FAIL"))
    return lines


def _render_tables(body: dict) -> list[str]:
    lines = [f"{body['operation']} table conformance: {body['scope']['description']}"]
    for cell in body["cells"]:
        status = "ok" if cell["conformant"] else "VIOLATION"
        lines.append(
            f"{cell['left']} + {cell['right']}: allowed {_set_text(cell['allowed'])}; "
            f"observed {_set_text(cell['observed'])}; {status}"
        )
        for witness in cell["witnesses"]:
            lines.append(
                f"  {witness['result']} via u={witness['u']} v={witness['v']} "
                f"rows={'|'.join(witness['rows'])} X={_set_text(witness['left_set'])} "
                f"Y={_set_text(witness['right_set'])}"
            )
        if cell["unrealized"]:
            lines.append(f"  unrealized: {', '.join(cell['unrealized'])}")
    lines.append(
        "result: " + ("CONFORMANT" if body["conformant"] else "VIOLATIONS FOUND")
    )
    return lines


def _render_witness(body: dict) -> list[str]:
    bounds = body["bounds"]
    lines = [
        f"witness search: {body['operation']} {body['left']} + {body['right']} "
        f"-> {body['result']} within u<={bounds['max_u']}, v<={bounds['max_v']}"
    ]
    if body["found"]:
        witness = body["witness"]
        lines.append(
            f"found: u={witness['u']} v={witness['v']} rows={'|'.join(witness['rows'])} "
            f"X={_set_text(witness['left_set'])} Y={_set_text(witness['right_set'])}"
        )
    else:
        lines.append("not found within the search bounds")
    return lines


_TEXT_RENDERERS = {
    "approx": _render_approx,
    "neighbors": _render_neighbors,
    "classify": _render_classify,
    "verify": _render_verify,
    "tables": _render_tables,
    "witness": _render_witness,
}
