"""Lower/upper approximation operators and the four-type rough classifier.

A V-side subset Y is approximated from the U side:

    lower(Y) = {x : r(x) is a subset of Y}
    upper(Y) = {x : r(x) meets Y}

Each operator ships in two forms.  The set form tests row bitsets directly.
The matrix form evaluates the equivalent min/max expression over the 0/1
incidence matrix, with the fold over {0,1} realized as word operations
(min = AND, max = OR).  The two forms, plus the column-union strategy for
the upper operator, must agree bit for bit; the verification lab and the
test suite cross-check them.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Sequence

from .relation import BinaryRelation, Side, SideMismatchError, Subset, iter_bits

__all__ = [
    "RoughType",
    "ApproxResult",
    "lower_approximation",
    "lower_approximation_matrix",
    "upper_approximation",
    "upper_approximation_matrix",
    "upper_approximation_from_columns",
    "boundary",
    "rough_type",
    "approximate",
    "lower_bits",
    "upper_bits",
    "type_code",
]


class RoughType(IntEnum):
    """The four-way taxonomy of a V-subset under a relation.

    The tag is decided by two independent bits: whether the lower
    approximation is empty, and whether the upper approximation covers U.
    """

    ROUGHLY_DEFINABLE = 1
    INTERNALLY_UNDEFINABLE = 2
    EXTERNALLY_UNDEFINABLE = 3
    TOTALLY_UNDEFINABLE = 4

    @property
    def label(self) -> str:
        return _TYPE_LABELS[self]

    @property
    def short(self) -> str:
        return f"Type {int(self)}"

    def describe(self) -> str:
        return f"{self.short} ({self.label})"

    @classmethod
    def from_flags(cls, lower_empty: bool, upper_full: bool) -> "RoughType":
        return cls(1 + int(lower_empty) + 2 * int(upper_full))

    @classmethod
    def parse(cls, text: str | int) -> "RoughType":
        """Accept 1..4, 'type3', 'Type 3', or an enum name."""
        if isinstance(text, int):
            return cls(text)
        t = text.strip().lower().replace(" ", "").replace("-", "").replace("_", "")
        if t.startswith("type"):
            t = t[4:]
        if t.isdigit():
            return cls(int(t))
        for member in cls:
            if member.name.lower().replace("_", "") == t:
                return member
        raise ValueError(f"not a rough type: {text!r}")


_TYPE_LABELS = {
    RoughType.ROUGHLY_DEFINABLE: "roughly definable",
    RoughType.INTERNALLY_UNDEFINABLE: "internally undefinable",
    RoughType.EXTERNALLY_UNDEFINABLE: "externally undefinable",
    RoughType.TOTALLY_UNDEFINABLE: "totally undefinable",
}


def lower_bits(rows: Sequence[int], y_bits: int) -> int:
    """U-mask of the lower approximation, by row containment."""
    out = 0
    bit = 1
    for row in rows:
        if row & y_bits == row:
            out |= bit
        bit <<= 1
    return out


def upper_bits(rows: Sequence[int], y_bits: int) -> int:
    """U-mask of the upper approximation, by row intersection."""
    out = 0
    bit = 1
    for row in rows:
        if row & y_bits:
            out |= bit
        bit <<= 1
    return out


def _lower_bits_matrix(rows: Sequence[int], vmask: int, y_bits: int) -> int:
    # min over columns of max(1 - R(x, y), Y(y)); the AND-fold over a 0/1
    # word is "all bits set".
    out = 0
    bit = 1
    for row in rows:
        if ((row ^ vmask) | y_bits) == vmask:
            out |= bit
        bit <<= 1
    return out


def _upper_bits_matrix(rows: Sequence[int], y_bits: int) -> int:
    # max over columns of min(R(x, y), Y(y)); the OR-fold over a 0/1 word
    # is "some bit set".
    out = 0
    bit = 1
    for row in rows:
        if (row & y_bits) != 0:
            out |= bit
        bit <<= 1
    return out


def type_code(rows: Sequence[int], umask: int, y_bits: int) -> int:
    """Rough type as a bare 1..4 code; the hot path used by sweep campaigns."""
    lo = 0
    up = 0
    bit = 1
    for row in rows:
        if row & y_bits == row:
            lo |= bit
        if row & y_bits:
            up |= bit
        bit <<= 1
    return (1 if lo else 2) + (2 if up == umask else 0)


def _require_v_subset(rel: BinaryRelation, y: Subset) -> None:
    if not isinstance(y, Subset):
        raise SideMismatchError(f"expected a Subset, got {type(y).__name__}")
    if y.side is not Side.V or y.universes != rel.universes:
        raise SideMismatchError(
            "approximation takes a V-side subset over the relation's universes"
        )


def lower_approximation(rel: BinaryRelation, y: Subset) -> Subset:
    """Set-form lower approximation of a V-subset.

    Solitary elements always belong: an empty neighborhood is contained in
    every Y.
    """
    _require_v_subset(rel, y)
    return Subset(rel.universes, Side.U, lower_bits(rel.rows, y.bits))


def lower_approximation_matrix(rel: BinaryRelation, y: Subset) -> Subset:
    """Matrix-form lower approximation; must agree with the set form."""
    _require_v_subset(rel, y)
    return Subset(rel.universes, Side.U, _lower_bits_matrix(rel.rows, rel.vmask, y.bits))


def upper_approximation(rel: BinaryRelation, y: Subset) -> Subset:
    """Set-form upper approximation of a V-subset."""
    _require_v_subset(rel, y)
    return Subset(rel.universes, Side.U, upper_bits(rel.rows, y.bits))


def upper_approximation_matrix(rel: BinaryRelation, y: Subset) -> Subset:
    """Matrix-form upper approximation; must agree with the set form."""
    _require_v_subset(rel, y)
    return Subset(rel.universes, Side.U, _upper_bits_matrix(rel.rows, y.bits))


def upper_approximation_from_columns(rel: BinaryRelation, y: Subset) -> Subset:
    """Upper approximation as the union of left neighborhoods of Y's members."""
    _require_v_subset(rel, y)
    bits = 0
    for j in iter_bits(y.bits):
        bits |= rel.column_bits(j)
    return Subset(rel.universes, Side.U, bits)


def boundary(rel: BinaryRelation, y: Subset) -> Subset:
    """Upper minus lower approximation."""
    return upper_approximation(rel, y) - lower_approximation(rel, y)


def rough_type(rel: BinaryRelation, y: Subset) -> RoughType:
    """Classify Y by lower emptiness and upper coverage of U."""
    _require_v_subset(rel, y)
    return RoughType(type_code(rel.rows, rel.umask, y.bits))


@dataclass(frozen=True)
class ApproxResult:
    """Lower, upper, and boundary approximations plus the rough type."""

    lower: Subset
    upper: Subset
    boundary: Subset
    rough_type: RoughType


def approximate(rel: BinaryRelation, y: Subset) -> ApproxResult:
    """Compute all approximation facets of a V-subset in one call."""
    lo = lower_approximation(rel, y)
    up = upper_approximation(rel, y)
    return ApproxResult(
        lower=lo,
        upper=up,
        boundary=up - lo,
        rough_type=RoughType.from_flags(lo.bits == 0, up.bits == rel.umask),
    )
