"""Verification engine: law campaigns, small-model sweeps, and witness search.

Campaigns run over exhaustively enumerated relations (small dimensions) or
seeded random streams.  Randomness is derived per item from string-keyed
seeds, so a stream is reproducible regardless of consumption order, and the
relation, subset, and dimension streams never share state.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Mapping, Sequence

from .approx import RoughType, lower_bits, type_code, upper_bits
from .relation import (
    BinaryRelation,
    BiroughError,
    Side,
    SideMismatchError,
    Subset,
    UniversePair,
    iter_bits,
)

__all__ = [
    "EXHAUSTIVE_CELL_CAP",
    "EXHAUSTIVE_SUBSET_CAP",
    "SERIAL_ENUM_CAP",
    "ConfigError",
    "BudgetError",
    "GeneratorConfig",
    "SubsetBudget",
    "canonical_universes",
    "generate_relations",
    "random_relation",
    "random_subset_bits",
    "random_campaign",
    "ALGEBRAIC_LAWS",
    "Violation",
    "LawRecord",
    "PropertyReport",
    "verify_algebraic_properties",
    "merge_property_reports",
    "verify_serial_iff",
    "reconstruct_relation",
    "OPERATIONS",
    "UNION_TABLE",
    "INTERSECTION_TABLE",
    "table_for",
    "allowed_result_types",
    "ambiguous_cells",
    "Witness",
    "TableCellFinding",
    "check_type_tables",
    "witness_inventory",
    "find_type_witness",
]

# 2**20 relations is the largest exhaustive relation sweep we will attempt.
EXHAUSTIVE_CELL_CAP = 20
# Exhaustive subset enumeration doubles per V element; cap at 4096 subsets.
EXHAUSTIVE_SUBSET_CAP = 12
# Full power-set scan used by the seriality biconditional check.
SERIAL_ENUM_CAP = 20


class ConfigError(BiroughError, ValueError):
    """A generator or budget configuration is malformed."""


class BudgetError(BiroughError, ValueError):
    """A requested enumeration exceeds the exhaustive-size caps."""


@lru_cache(maxsize=None)
def canonical_universes(u_size: int, v_size: int) -> UniversePair:
    """The x1..xn / y1..ym universe pair used for generated relations."""
    return UniversePair(
        tuple(f"x{i + 1}" for i in range(u_size)),
        tuple(f"y{j + 1}" for j in range(v_size)),
    )


def _stream_rng(seed: int, kind: str, index: int) -> random.Random:
    # String seeding keeps the derivation stable across runs and keeps the
    # relation/subset/dims streams independent of each other.
    return random.Random(f"{seed}:{kind}:{index}")


@dataclass(frozen=True)
class GeneratorConfig:
    """How to produce a stream of relations.

    Exhaustive mode enumerates all relations of the given dimensions in
    row-major bit order (relation k sets cell (i, j) when bit i*v+j of k is
    set).  Random mode yields ``count`` relations with independent per-cell
    density; item k depends only on (seed, k).
    """

    u_size: int
    v_size: int
    mode: str = "exhaustive"
    density: float = 0.5
    seed: int = 0
    count: int = 1

    def __post_init__(self) -> None:
        if self.u_size < 1 or self.v_size < 1:
            raise ConfigError("universe sizes must be at least 1")
        if self.mode not in ("exhaustive", "random"):
            raise ConfigError(f"unknown generator mode {self.mode!r}")
        if self.mode == "exhaustive" and self.u_size * self.v_size > EXHAUSTIVE_CELL_CAP:
            raise BudgetError(
                f"exhaustive generation needs u*v <= {EXHAUSTIVE_CELL_CAP}, "
                f"got {self.u_size}x{self.v_size}"
            )
        if not 0 <= self.density <= 1:
            raise ConfigError("density must lie in [0, 1]")
        if self.mode == "random" and self.count < 1:
            raise ConfigError("random mode needs count >= 1")


def random_relation(
    u_size: int, v_size: int, density: float, seed: int, index: int
) -> BinaryRelation:
    """The index-th relation of the (seed, density) stream at fixed dimensions."""
    rng = _stream_rng(seed, "relation", index)
    rows = []
    for _ in range(u_size):
        mask = 0
        for j in range(v_size):
            if rng.random() < density:
                mask |= 1 << j
        rows.append(mask)
    return BinaryRelation(canonical_universes(u_size, v_size), tuple(rows))


def generate_relations(cfg: GeneratorConfig) -> Iterator[BinaryRelation]:
    """Stream relations according to the configuration."""
    universes = canonical_universes(cfg.u_size, cfg.v_size)
    if cfg.mode == "exhaustive":
        v = cfg.v_size
        vmask = (1 << v) - 1
        for code in range(1 << (cfg.u_size * v)):
            rows = tuple((code >> (i * v)) & vmask for i in range(cfg.u_size))
            yield BinaryRelation(universes, rows)
    else:
        for k in range(cfg.count):
            yield random_relation(cfg.u_size, cfg.v_size, cfg.density, cfg.seed, k)


def random_subset_bits(v_size: int, seed: int, index: int) -> int:
    """The index-th V-subset of the seeded subset stream."""
    return _stream_rng(seed, "subset", index).randrange(1 << v_size)


def random_campaign(
    count: int,
    *,
    max_u: int,
    max_v: int,
    density: float = 0.5,
    seed: int = 0,
    min_u: int = 1,
    min_v: int = 1,
) -> Iterator[BinaryRelation]:
    """Seeded random relations with dimensions drawn up to the given bounds."""
    for k in range(count):
        dims = _stream_rng(seed, "dims", k)
        u = dims.randint(min_u, max_u)
        v = dims.randint(min_v, max_v)
        yield random_relation(u, v, density, seed, k)


# --- algebraic law campaign --------------------------------------------------

ALGEBRAIC_LAWS = (
    "upper-is-union-of-left-neighborhoods",
    "empty-and-full-values",
    "solitary-bounds",
    "lower-minus-solitary-within-upper",
    "full-lower-and-empty-upper-criteria",
    "solitary-forces-strict-gap",
    "meet-lower-join-upper-distributivity",
    "monotonicity",
    "join-lower-meet-upper-bounds",
    "complement-duality",
)


@dataclass(frozen=True)
class SubsetBudget:
    """Which V-subsets a law campaign examines for one relation."""

    mode: str = "exhaustive"
    pairs: int = 0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.mode not in ("exhaustive", "sampled"):
            raise ConfigError(f"unknown subset budget mode {self.mode!r}")
        if self.mode == "sampled" and self.pairs < 1:
            raise ConfigError("sampled budgets need pairs >= 1")

    @classmethod
    def exhaustive(cls) -> "SubsetBudget":
        return cls("exhaustive")

    @classmethod
    def sampled(cls, pairs: int, seed: int = 0) -> "SubsetBudget":
        return cls("sampled", pairs, seed)


@dataclass(frozen=True)
class Violation:
    law: str
    relation: str
    subsets: tuple[str, ...]
    expected: str
    got: str


@dataclass(frozen=True)
class LawRecord:
    law: str
    instances: int
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class PropertyReport:
    records: tuple[LawRecord, ...]

    @property
    def ok(self) -> bool:
        return all(record.ok for record in self.records)

    def record(self, law: str) -> LawRecord:
        for record in self.records:
            if record.law == law:
                return record
        raise KeyError(law)

    def total_instances(self) -> int:
        return sum(record.instances for record in self.records)

    def total_violations(self) -> int:
        return sum(len(record.violations) for record in self.records)


def merge_property_reports(reports: Sequence[PropertyReport]) -> PropertyReport:
    instances = {law: 0 for law in ALGEBRAIC_LAWS}
    violations: dict[str, list[Violation]] = {law: [] for law in ALGEBRAIC_LAWS}
    for report in reports:
        for record in report.records:
            instances[record.law] += record.instances
            violations[record.law].extend(record.violations)
    return PropertyReport(
        tuple(
            LawRecord(law, instances[law], tuple(violations[law]))
            for law in ALGEBRAIC_LAWS
        )
    )


def _window_families(singles: Sequence[int]) -> list[tuple[int, ...]]:
    # Cyclic windows of sizes 3 and 4 over the subset enumeration give
    # deterministic mixed families without another exponential sweep.
    n = len(singles)
    families: list[tuple[int, ...]] = []
    if n >= 3:
        for k in range(n):
            families.append(tuple(singles[(k + d) % n] for d in range(3)))
    if n >= 4:
        for k in range(n):
            families.append(tuple(singles[(k + d) % n] for d in range(4)))
    return families


def verify_algebraic_properties(
    rel: BinaryRelation, budget: SubsetBudget = SubsetBudget.exhaustive()
) -> PropertyReport:
    """Check the ten algebraic laws of the approximation operators on one relation.

    A violation is reported with a witness, never raised; every law of this
    batch is a theorem, so any violation indicates an implementation bug.
    """
    rows = rel.rows
    v_size = rel.v_size
    vmask = rel.vmask
    umask = rel.umask

    if budget.mode == "exhaustive":
        if v_size > EXHAUSTIVE_SUBSET_CAP:
            raise BudgetError(
                f"exhaustive subset budget needs |V| <= {EXHAUSTIVE_SUBSET_CAP}, got {v_size}"
            )
        singles = list(range(1 << v_size))
        pairs = [(a, b) for a in singles for b in singles]
    else:
        draws = [
            random_subset_bits(v_size, budget.seed, k) for k in range(2 * budget.pairs)
        ]
        pairs = list(zip(draws[0::2], draws[1::2]))
        singles = sorted(set(draws) | {0, vmask})
    families = _window_families(singles)

    memo_lo: dict[int, int] = {}
    memo_up: dict[int, int] = {}

    def lo(s: int) -> int:
        r = memo_lo.get(s)
        if r is None:
            r = lower_bits(rows, s)
            memo_lo[s] = r
        return r

    def up(s: int) -> int:
        r = memo_up.get(s)
        if r is None:
            r = upper_bits(rows, s)
            memo_up[s] = r
        return r

    solitary = rel.solitary_set().bits
    sprime = umask ^ solitary
    columns = rel.columns()
    range_union = 0
    for row in rows:
        range_union |= row

    relation_repr = "|".join(rel.bit_rows())
    instances = {law: 0 for law in ALGEBRAIC_LAWS}
    violations: dict[str, list[Violation]] = {law: [] for law in ALGEBRAIC_LAWS}

    def u_str(bits: int) -> str:
        return str(Subset(rel.universes, Side.U, bits))

    def v_str(bits: int) -> str:
        return str(Subset(rel.universes, Side.V, bits))

    def record(law: str, subsets: tuple[int, ...], expected: str, got: str) -> None:
        violations[law].append(
            Violation(law, relation_repr, tuple(v_str(s) for s in subsets), expected, got)
        )

    law = "empty-and-full-values"
    instances[law] += 1
    if lo(0) != solitary:
        record(law, (0,), f"lower(empty) = {u_str(solitary)}", u_str(lo(0)))
    if up(0) != 0:
        record(law, (0,), "upper(empty) = {}", u_str(up(0)))
    if lo(vmask) != umask:
        record(law, (vmask,), f"lower(V) = {u_str(umask)}", u_str(lo(vmask)))
    if up(vmask) != sprime:
        record(law, (vmask,), f"upper(V) = {u_str(sprime)}", u_str(up(vmask)))

    for s in singles:
        law = "upper-is-union-of-left-neighborhoods"
        instances[law] += 1
        col_union = 0
        for j in iter_bits(s):
            col_union |= columns[j]
        if up(s) != col_union:
            record(law, (s,), u_str(col_union), u_str(up(s)))

        law = "solitary-bounds"
        instances[law] += 1
        if solitary & ~lo(s) or up(s) & solitary:
            record(
                law,
                (s,),
                "solitary within lower and disjoint from upper",
                f"lower={u_str(lo(s))} upper={u_str(up(s))}",
            )

        law = "lower-minus-solitary-within-upper"
        instances[law] += 1
        if lo(s) & ~solitary & ~up(s):
            record(law, (s,), "lower minus solitary within upper", u_str(lo(s) & ~solitary))

        law = "full-lower-and-empty-upper-criteria"
        instances[law] += 1
        if (lo(s) == umask) != (range_union & ~s == 0):
            record(law, (s,), "lower full iff union of rows within the set", u_str(lo(s)))
        if (up(s) == 0) != (s & range_union == 0):
            record(law, (s,), "upper empty iff the set avoids every row", u_str(up(s)))

        if solitary:
            law = "solitary-forces-strict-gap"
            instances[law] += 1
            if lo(s) == up(s):
                record(law, (s,), "lower differs from upper", u_str(lo(s)))

        law = "complement-duality"
        instances[law] += 1
        if (lo(s) ^ umask) != up(s ^ vmask) or (up(s) ^ umask) != lo(s ^ vmask):
            record(
                law,
                (s,),
                "complement of lower is upper of complement (and dually)",
                f"lower={u_str(lo(s))} upper={u_str(up(s))}",
            )

    for a, b in pairs:
        law = "meet-lower-join-upper-distributivity"
        instances[law] += 1
        if lo(a & b) != lo(a) & lo(b):
            record(law, (a, b), u_str(lo(a) & lo(b)), u_str(lo(a & b)))
        if up(a | b) != up(a) | up(b):
            record(law, (a, b), u_str(up(a) | up(b)), u_str(up(a | b)))

        law = "monotonicity"
        instances[law] += 1
        meet, join = a & b, a | b
        if (
            lo(meet) & ~lo(a)
            or lo(a) & ~lo(join)
            or up(meet) & ~up(a)
            or up(a) & ~up(join)
        ):
            record(law, (a, b), "operators monotone along meet <= a <= join", "")

        law = "join-lower-meet-upper-bounds"
        instances[law] += 1
        if (lo(a) | lo(b)) & ~lo(a | b):
            record(law, (a, b), u_str(lo(a | b)), u_str(lo(a) | lo(b)))
        if up(a & b) & ~(up(a) & up(b)):
            record(law, (a, b), u_str(up(a) & up(b)), u_str(up(a & b)))

    law = "meet-lower-join-upper-distributivity"
    for family in families:
        instances[law] += 1
        meet = vmask
        join = 0
        lo_meet = umask
        up_join = 0
        for s in family:
            meet &= s
            join |= s
            lo_meet &= lo(s)
            up_join |= up(s)
        if lo(meet) != lo_meet:
            record(law, family, u_str(lo_meet), u_str(lo(meet)))
        if up(join) != up_join:
            record(law, family, u_str(up_join), u_str(up(join)))

    return PropertyReport(
        tuple(
            LawRecord(law, instances[law], tuple(violations[law]))
            for law in ALGEBRAIC_LAWS
        )
    )


def verify_serial_iff(rel: BinaryRelation) -> bool:
    """Full power-set check of: some subset has equal approximations iff serial."""
    if rel.v_size > SERIAL_ENUM_CAP:
        raise BudgetError(
            f"seriality check enumerates the power set and needs |V| <= {SERIAL_ENUM_CAP}"
        )
    rows = rel.rows
    exists = any(
        lower_bits(rows, s) == upper_bits(rows, s) for s in range(1 << rel.v_size)
    )
    return exists == rel.is_serial()


def reconstruct_relation(
    upper_of_singleton: Callable[[Subset], Subset], universes: UniversePair
) -> BinaryRelation:
    """Rebuild the unique relation whose singleton uppers match the oracle.

    Feeding back a relation's own singleton upper approximations reproduces
    it exactly, which is the uniqueness content of the approximation
    operators determining the relation.
    """
    rows = [0] * universes.u_size
    for j, label in enumerate(universes.v_labels):
        image = upper_of_singleton(universes.v_subset([label]))
        if (
            not isinstance(image, Subset)
            or image.side is not Side.U
            or image.universes != universes
        ):
            raise SideMismatchError(
                "the oracle must return U-side subsets over the same universes"
            )
        for i in iter_bits(image.bits):
            rows[i] |= 1 << j
    return BinaryRelation(universes, tuple(rows))


# --- type tables -------------------------------------------------------------

OPERATIONS = ("union", "intersection")


def _cells(
    spec: dict[tuple[int, int], tuple[int, ...]]
) -> dict[tuple[RoughType, RoughType], frozenset[RoughType]]:
    return {
        (RoughType(a), RoughType(b)): frozenset(RoughType(c) for c in allowed)
        for (a, b), allowed in spec.items()
    }


UNION_TABLE = _cells(
    {
        (1, 1): (1, 3),
        (1, 2): (1, 3),
        (1, 3): (3,),
        (1, 4): (3,),
        (2, 1): (1, 3),
        (2, 2): (1, 2, 3, 4),
        (2, 3): (3,),
        (2, 4): (3, 4),
        (3, 1): (3,),
        (3, 2): (3,),
        (3, 3): (3,),
        (3, 4): (3,),
        (4, 1): (3,),
        (4, 2): (3, 4),
        (4, 3): (3,),
        (4, 4): (3, 4),
    }
)

INTERSECTION_TABLE = _cells(
    {
        (1, 1): (1, 2),
        (1, 2): (2,),
        (1, 3): (1, 2),
        (1, 4): (2,),
        (2, 1): (2,),
        (2, 2): (2,),
        (2, 3): (2,),
        (2, 4): (2,),
        (3, 1): (1, 2),
        (3, 2): (2,),
        (3, 3): (1, 2, 3, 4),
        (3, 4): (2, 4),
        (4, 1): (2,),
        (4, 2): (2,),
        (4, 3): (2, 4),
        (4, 4): (2, 4),
    }
)


def table_for(operation: str) -> Mapping[tuple[RoughType, RoughType], frozenset[RoughType]]:
    if operation == "union":
        return UNION_TABLE
    if operation == "intersection":
        return INTERSECTION_TABLE
    raise ConfigError(f"unknown set operation {operation!r}")


def allowed_result_types(
    operation: str, left: RoughType, right: RoughType
) -> frozenset[RoughType]:
    return table_for(operation)[(left, right)]


def ambiguous_cells(operation: str) -> tuple[tuple[RoughType, RoughType], ...]:
    table = table_for(operation)
    return tuple(sorted(cell for cell, allowed in table.items() if len(allowed) > 1))


@dataclass(frozen=True)
class Witness:
    """A relation and subset pair realizing one table-cell outcome."""

    relation: BinaryRelation
    left_set: Subset
    right_set: Subset


@dataclass(frozen=True)
class TableCellFinding:
    """Observed versus allowed result types for one (left, right) cell."""

    operation: str
    left: RoughType
    right: RoughType
    allowed: frozenset[RoughType]
    observed: frozenset[RoughType]
    witnesses: Mapping[RoughType, Witness]

    @property
    def conformant(self) -> bool:
        return self.observed <= self.allowed

    @property
    def unrealized(self) -> tuple[RoughType, ...]:
        return tuple(sorted(self.allowed - self.observed))


class _CellAccumulator:
    """Shared bookkeeping for the table sweeps; first witness per outcome wins."""

    def __init__(self, operation: str):
        self.operation = operation
        self.seen: set[int] = set()
        self.witnesses: dict[int, Witness] = {}

    def record(
        self, key: int, rel: BinaryRelation, a_bits: int, b_bits: int
    ) -> None:
        if key in self.seen:
            return
        self.seen.add(key)
        universes = rel.universes
        self.witnesses[key] = Witness(
            rel,
            Subset(universes, Side.V, a_bits),
            Subset(universes, Side.V, b_bits),
        )

    def findings(
        self, table: Mapping[tuple[RoughType, RoughType], frozenset[RoughType]]
    ) -> list[TableCellFinding]:
        out = []
        for ta in RoughType:
            for tb in RoughType:
                observed = set()
                witnesses = {}
                for tr in RoughType:
                    key = (int(ta) * 10 + int(tb)) * 10 + int(tr)
                    if key in self.seen:
                        observed.add(tr)
                        witnesses[tr] = self.witnesses[key]
                out.append(
                    TableCellFinding(
                        self.operation,
                        ta,
                        tb,
                        table[(ta, tb)],
                        frozenset(observed),
                        witnesses,
                    )
                )
        return out


def _sweep_relation(
    acc: _CellAccumulator, rel: BinaryRelation, union: bool
) -> None:
    rows = rel.rows
    umask = rel.umask
    count = 1 << rel.v_size
    codes = [type_code(rows, umask, s) for s in range(count)]
    seen = acc.seen
    for a in range(count):
        ta10 = codes[a] * 10
        for b in range(count):
            key = (ta10 + codes[b]) * 10 + codes[a | b if union else a & b]
            if key not in seen:
                acc.record(key, rel, a, b)


def check_type_tables(
    cfg: GeneratorConfig,
    operation: str,
    *,
    tables: Mapping[tuple[RoughType, RoughType], frozenset[RoughType]] | None = None,
    pairs_per_relation: int = 50,
) -> list[TableCellFinding]:
    """Sweep generated relations and report observed result types per cell.

    Exhaustive configurations examine every subset pair; random ones draw
    ``pairs_per_relation`` seeded pairs per relation.
    """
    table = tables if tables is not None else table_for(operation)
    if operation not in OPERATIONS:
        raise ConfigError(f"unknown set operation {operation!r}")
    union = operation == "union"
    acc = _CellAccumulator(operation)
    for index, rel in enumerate(generate_relations(cfg)):
        if cfg.mode == "exhaustive":
            if cfg.v_size > EXHAUSTIVE_SUBSET_CAP:
                raise BudgetError(
                    f"exhaustive pair sweep needs |V| <= {EXHAUSTIVE_SUBSET_CAP}"
                )
            _sweep_relation(acc, rel, union)
        else:
            rows = rel.rows
            umask = rel.umask
            rng = _stream_rng(cfg.seed, "subset-pairs", index)
            space = 1 << cfg.v_size
            for _ in range(pairs_per_relation):
                a = rng.randrange(space)
                b = rng.randrange(space)
                ta = type_code(rows, umask, a)
                tb = type_code(rows, umask, b)
                tr = type_code(rows, umask, a | b if union else a & b)
                acc.record((ta * 10 + tb) * 10 + tr, rel, a, b)
    return acc.findings(table)


def check_relation_against_tables(
    rel: BinaryRelation,
    operation: str,
    *,
    tables: Mapping[tuple[RoughType, RoughType], frozenset[RoughType]] | None = None,
) -> list[TableCellFinding]:
    """Exhaustive subset-pair conformance check for a single relation."""
    if operation not in OPERATIONS:
        raise ConfigError(f"unknown set operation {operation!r}")
    if rel.v_size > EXHAUSTIVE_SUBSET_CAP:
        raise BudgetError(f"exhaustive pair sweep needs |V| <= {EXHAUSTIVE_SUBSET_CAP}")
    table = tables if tables is not None else table_for(operation)
    acc = _CellAccumulator(operation)
    _sweep_relation(acc, rel, operation == "union")
    return acc.findings(table)


def _dims_in_order(max_u: int, max_v: int) -> Iterator[tuple[int, int]]:
    for u in range(1, max_u + 1):
        for v in range(1, max_v + 1):
            yield u, v


def witness_inventory(
    operation: str,
    max_u: int,
    max_v: int,
    *,
    tables: Mapping[tuple[RoughType, RoughType], frozenset[RoughType]] | None = None,
) -> list[TableCellFinding]:
    """One exhaustive sweep over all dimensions up to the bounds.

    Reports, per cell, which allowed alternatives were realized and keeps the
    first witness per realized outcome under the canonical generation order
    (dimensions row-major, relations in bit order, subset pairs in numeric
    order).  An unrealized alternative at the bound is a finding, not a
    failure.
    """
    table = tables if tables is not None else table_for(operation)
    if operation not in OPERATIONS:
        raise ConfigError(f"unknown set operation {operation!r}")
    union = operation == "union"
    acc = _CellAccumulator(operation)
    for u, v in _dims_in_order(max_u, max_v):
        for rel in generate_relations(GeneratorConfig(u, v, "exhaustive")):
            _sweep_relation(acc, rel, union)
    return acc.findings(table)


def find_type_witness(
    operation: str,
    left: RoughType,
    right: RoughType,
    result: RoughType,
    *,
    max_u: int,
    max_v: int,
) -> Witness | None:
    """First (relation, X, Y) realizing the requested cell outcome, or None.

    The search may be asked for outcomes outside the transcribed tables; it
    then simply exhausts the bound and reports not-found.
    """
    if operation not in OPERATIONS:
        raise ConfigError(f"unknown set operation {operation!r}")
    union = operation == "union"
    want_left, want_right, want_result = int(left), int(right), int(result)
    for u, v in _dims_in_order(max_u, max_v):
        for rel in generate_relations(GeneratorConfig(u, v, "exhaustive")):
            rows = rel.rows
            umask = rel.umask
            count = 1 << v
            codes = [type_code(rows, umask, s) for s in range(count)]
            for a in range(count):
                if codes[a] != want_left:
                    continue
                for b in range(count):
                    if codes[b] != want_right:
                        continue
                    if codes[a | b if union else a & b] == want_result:
                        universes = rel.universes
                        return Witness(
                            rel,
                            Subset(universes, Side.V, a),
                            Subset(universes, Side.V, b),
                        )
    return None
