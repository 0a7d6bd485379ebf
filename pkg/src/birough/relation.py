"""Labeled universes, bitset subsets, partitions, and binary relations.

A relation links two finite universes U and V.  Rows are stored as machine
integers (bit j of row i says whether the i-th U element is related to the
j-th V element), so every set operation is a handful of word operations.

All values are immutable after construction and every operation is a pure
function; instances can be shared freely between threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence

__all__ = [
    "BiroughError",
    "UniverseError",
    "DimensionError",
    "UnknownLabelError",
    "SideMismatchError",
    "PartitionError",
    "Side",
    "UniversePair",
    "Subset",
    "Partition",
    "BinaryRelation",
    "iter_bits",
    "valid_label",
]


class BiroughError(Exception):
    """Base class for every error this package raises deliberately."""


class UniverseError(BiroughError, ValueError):
    """Universe labels are empty, duplicated, or malformed."""


class DimensionError(BiroughError, ValueError):
    """Rows or bit widths do not match the declared universe sizes."""


class UnknownLabelError(BiroughError, LookupError):
    """Lookup of a label that does not belong to the universe."""


class SideMismatchError(BiroughError, TypeError):
    """Operands live on different sides or over different universes."""


class PartitionError(BiroughError, ValueError):
    """Blocks are empty, overlapping, or do not cover the universe."""


_LABEL_RE = re.compile(r"^[^\s:]+\Z")


def valid_label(label: object) -> bool:
    """True for a non-empty token without whitespace or ':'."""
    return isinstance(label, str) and bool(_LABEL_RE.match(label))


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask``, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Side(Enum):
    """Which universe a value lives over."""

    U = "U"
    V = "V"

    def __str__(self) -> str:
        return self.value


def _checked_labels(labels: Iterable[str], side_name: str) -> tuple[str, ...]:
    out = tuple(labels)
    if not out:
        raise UniverseError(f"universe {side_name} must not be empty")
    seen: set[str] = set()
    for label in out:
        if not valid_label(label):
            raise UniverseError(
                f"bad {side_name} label {label!r}: labels are non-empty tokens "
                "without whitespace or ':'"
            )
        if label in seen:
            raise UniverseError(f"duplicate {side_name} label {label!r}")
        seen.add(label)
    return out


@dataclass(frozen=True)
class UniversePair:
    """Two ordered, labeled finite universes U and V."""

    u_labels: tuple[str, ...]
    v_labels: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "u_labels", _checked_labels(self.u_labels, "U"))
        object.__setattr__(self, "v_labels", _checked_labels(self.v_labels, "V"))
        object.__setattr__(
            self,
            "_index",
            {
                Side.U: {label: i for i, label in enumerate(self.u_labels)},
                Side.V: {label: i for i, label in enumerate(self.v_labels)},
            },
        )

    @property
    def u_size(self) -> int:
        return len(self.u_labels)

    @property
    def v_size(self) -> int:
        return len(self.v_labels)

    def labels(self, side: Side) -> tuple[str, ...]:
        return self.u_labels if side is Side.U else self.v_labels

    def size(self, side: Side) -> int:
        return len(self.labels(side))

    def full_mask(self, side: Side) -> int:
        return (1 << self.size(side)) - 1

    def index(self, side: Side, key: str | int) -> int:
        """Resolve a label (or an already-dense index) to its index."""
        if isinstance(key, int):
            if 0 <= key < self.size(side):
                return key
            raise UnknownLabelError(f"index {key} out of range for universe {side}")
        try:
            return self._index[side][key]  # type: ignore[attr-defined]
        except KeyError:
            raise UnknownLabelError(f"no {side} element named {key!r}") from None

    def subset(self, side: Side, members: Iterable[str | int] = ()) -> "Subset":
        bits = 0
        for member in members:
            bits |= 1 << self.index(side, member)
        return Subset(self, side, bits)

    def u_subset(self, members: Iterable[str | int] = ()) -> "Subset":
        return self.subset(Side.U, members)

    def v_subset(self, members: Iterable[str | int] = ()) -> "Subset":
        return self.subset(Side.V, members)

    def empty(self, side: Side) -> "Subset":
        return Subset(self, side, 0)

    def full(self, side: Side) -> "Subset":
        return Subset(self, side, self.full_mask(side))


@dataclass(frozen=True)
class Subset:
    """A subset of one side of a universe pair, stored as a bitset."""

    universes: UniversePair
    side: Side
    bits: int

    def __post_init__(self) -> None:
        full = self.universes.full_mask(self.side)
        if not 0 <= self.bits <= full:
            raise DimensionError(
                f"subset bits {self.bits:#x} exceed the {self.side} universe "
                f"width {self.universes.size(self.side)}"
            )

    def _joint(self, other: "Subset") -> None:
        if not isinstance(other, Subset):
            raise SideMismatchError(f"expected a Subset, got {type(other).__name__}")
        if other.side is not self.side or other.universes != self.universes:
            raise SideMismatchError(
                "set operations need both operands on the same side of the "
                "same universes"
            )

    def __or__(self, other: "Subset") -> "Subset":
        self._joint(other)
        return Subset(self.universes, self.side, self.bits | other.bits)

    def __and__(self, other: "Subset") -> "Subset":
        self._joint(other)
        return Subset(self.universes, self.side, self.bits & other.bits)

    def __sub__(self, other: "Subset") -> "Subset":
        self._joint(other)
        return Subset(self.universes, self.side, self.bits & ~other.bits)

    def __xor__(self, other: "Subset") -> "Subset":
        self._joint(other)
        return Subset(self.universes, self.side, self.bits ^ other.bits)

    def complement(self) -> "Subset":
        full = self.universes.full_mask(self.side)
        return Subset(self.universes, self.side, self.bits ^ full)

    def __le__(self, other: "Subset") -> bool:
        self._joint(other)
        return self.bits & ~other.bits == 0

    def __lt__(self, other: "Subset") -> bool:
        return self <= other and self.bits != other.bits

    def __contains__(self, member: str | int) -> bool:
        try:
            i = self.universes.index(self.side, member)
        except UnknownLabelError:
            return False
        return bool(self.bits >> i & 1)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels())

    def labels(self) -> tuple[str, ...]:
        """Member labels in universe order."""
        names = self.universes.labels(self.side)
        return tuple(names[i] for i in iter_bits(self.bits))

    def indices(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.bits))

    @property
    def is_full(self) -> bool:
        return self.bits == self.universes.full_mask(self.side)

    def __str__(self) -> str:
        return "{" + ", ".join(self.labels()) + "}"

    def __repr__(self) -> str:
        return f"Subset({self.side}: {self})"


@dataclass(frozen=True)
class Partition:
    """Pairwise-disjoint non-empty blocks covering one side of a universe pair.

    Blocks are kept in canonical order: sorted by their smallest member index.
    """

    universes: UniversePair
    side: Side
    blocks: tuple[Subset, ...]

    def __post_init__(self) -> None:
        blocks = tuple(self.blocks)
        if not blocks:
            raise PartitionError("a partition needs at least one block")
        union = 0
        for block in blocks:
            if (
                not isinstance(block, Subset)
                or block.side is not self.side
                or block.universes != self.universes
            ):
                raise SideMismatchError("partition blocks must match the partition's side and universes")
            if block.bits == 0:
                raise PartitionError("partition blocks must be non-empty")
            if union & block.bits:
                raise PartitionError("partition blocks must be pairwise disjoint")
            union |= block.bits
        if union != self.universes.full_mask(self.side):
            raise PartitionError("partition blocks must cover the whole universe")
        ordered = tuple(sorted(blocks, key=lambda b: b.bits & -b.bits))
        object.__setattr__(self, "blocks", ordered)

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self) -> Iterator[Subset]:
        return iter(self.blocks)

    def as_label_sets(self) -> tuple[tuple[str, ...], ...]:
        return tuple(block.labels() for block in self.blocks)

    def __str__(self) -> str:
        return " | ".join(str(block) for block in self.blocks)


@dataclass(frozen=True)
class BinaryRelation:
    """An immutable Boolean incidence structure between U and V.

    ``rows[i]`` is the bitset of V elements related to the i-th U element,
    i.e. its right neighborhood.
    """

    universes: UniversePair
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        rows = tuple(self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.universes.u_size:
            raise DimensionError(
                f"expected {self.universes.u_size} rows (one per U element), got {len(rows)}"
            )
        vmask = self.universes.full_mask(Side.V)
        for i, row in enumerate(rows):
            if not isinstance(row, int) or not 0 <= row <= vmask:
                raise DimensionError(
                    f"row for {self.universes.u_labels[i]!r} does not fit the "
                    f"V universe width {self.universes.v_size}"
                )

    @classmethod
    def from_rows(
        cls, universes: UniversePair, rows: Iterable[Sequence[int]]
    ) -> "BinaryRelation":
        """Build a relation from 0/1 cell rows, one per U element."""
        rows = list(rows)
        if len(rows) != universes.u_size:
            raise DimensionError(
                f"expected {universes.u_size} rows (one per U element), got {len(rows)}"
            )
        v_size = universes.v_size
        masks = []
        for i, cells in enumerate(rows):
            cells = list(cells)
            label = universes.u_labels[i]
            if len(cells) != v_size:
                raise DimensionError(
                    f"row for {label!r} has {len(cells)} cells, expected {v_size}"
                )
            mask = 0
            for j, cell in enumerate(cells):
                if cell not in (0, 1):
                    raise DimensionError(
                        f"row for {label!r}: cell {j + 1} is {cell!r}, expected 0 or 1"
                    )
                mask |= cell << j
            masks.append(mask)
        return cls(universes, tuple(masks))

    @classmethod
    def from_pairs(
        cls, universes: UniversePair, pairs: Iterable[tuple[str | int, str | int]]
    ) -> "BinaryRelation":
        rows = [0] * universes.u_size
        for x, y in pairs:
            rows[universes.index(Side.U, x)] |= 1 << universes.index(Side.V, y)
        return cls(universes, tuple(rows))

    @property
    def u_size(self) -> int:
        return self.universes.u_size

    @property
    def v_size(self) -> int:
        return self.universes.v_size

    @property
    def umask(self) -> int:
        return self.universes.full_mask(Side.U)

    @property
    def vmask(self) -> int:
        return self.universes.full_mask(Side.V)

    def related(self, x: str | int, y: str | int) -> bool:
        i = self.universes.index(Side.U, x)
        j = self.universes.index(Side.V, y)
        return bool(self.rows[i] >> j & 1)

    def right_neighborhood(self, x: str | int) -> Subset:
        """The V elements related to ``x``."""
        i = self.universes.index(Side.U, x)
        return Subset(self.universes, Side.V, self.rows[i])

    def left_neighborhood(self, y: str | int) -> Subset:
        """The U elements related to ``y``."""
        j = self.universes.index(Side.V, y)
        return Subset(self.universes, Side.U, self.column_bits(j))

    def column_bits(self, j: int) -> int:
        bits = 0
        for i, row in enumerate(self.rows):
            bits |= (row >> j & 1) << i
        return bits

    def columns(self) -> tuple[int, ...]:
        return tuple(self.column_bits(j) for j in range(self.v_size))

    def solitary_set(self) -> Subset:
        """The U elements whose right neighborhood is empty."""
        bits = 0
        for i, row in enumerate(self.rows):
            if row == 0:
                bits |= 1 << i
        return Subset(self.universes, Side.U, bits)

    def is_serial(self) -> bool:
        """True when every U element is related to something."""
        return all(row != 0 for row in self.rows)

    def quotient_partitions(self) -> tuple[Partition, Partition]:
        """Partitions of U and V grouping elements with equal neighborhoods."""
        row_groups: dict[int, int] = {}
        for i, row in enumerate(self.rows):
            row_groups[row] = row_groups.get(row, 0) | (1 << i)
        col_groups: dict[int, int] = {}
        for j, col in enumerate(self.columns()):
            col_groups[col] = col_groups.get(col, 0) | (1 << j)
        u_part = Partition(
            self.universes,
            Side.U,
            tuple(Subset(self.universes, Side.U, bits) for bits in row_groups.values()),
        )
        v_part = Partition(
            self.universes,
            Side.V,
            tuple(Subset(self.universes, Side.V, bits) for bits in col_groups.values()),
        )
        return u_part, v_part

    def saturation_identity_holds(self) -> bool:
        """Check that composing with either quotient equivalence leaves R fixed.

        Conventions: composing on the U side relates (x, y) when some x' with
        r(x') = r(x) has (x', y) in R; composing on the V side relates (x, y)
        when some y' in r(x) has l(y') = l(y).  Both compositions are computed
        explicitly; a False return would indicate an implementation bug.
        """
        members: dict[int, list[int]] = {}
        for i, row in enumerate(self.rows):
            members.setdefault(row, []).append(i)
        composed_u = []
        for row in self.rows:
            acc = 0
            for k in members[row]:
                acc |= self.rows[k]
            composed_u.append(acc)

        cols = self.columns()
        col_classes: dict[int, int] = {}
        for j, col in enumerate(cols):
            col_classes[col] = col_classes.get(col, 0) | (1 << j)
        class_of = [col_classes[cols[j]] for j in range(self.v_size)]
        composed_v = []
        for row in self.rows:
            acc = 0
            for j in iter_bits(row):
                acc |= class_of[j]
            composed_v.append(acc)

        return tuple(composed_u) == self.rows and tuple(composed_v) == self.rows

    def bit_rows(self) -> tuple[str, ...]:
        """Rows as '0'/'1' strings; character j of row i is R(x_i, y_j)."""
        return tuple(
            "".join(str(row >> j & 1) for j in range(self.v_size)) for row in self.rows
        )

    def __repr__(self) -> str:
        return f"BinaryRelation({self.u_size}x{self.v_size}, rows={'|'.join(self.bit_rows())})"
