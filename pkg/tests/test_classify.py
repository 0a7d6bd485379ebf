from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given

from birough import (
    BinaryRelation,
    ClassificationError,
    SideMismatchError,
    Side,
    UndefinedMeasureError,
    UniversePair,
    approximate_family,
    classification_violations,
    cover_duality_check,
    derived_laws_report,
    duality_report,
    family_law_report,
    measure_law_report,
    proper_index_subsets,
    support_duality_check,
    validate_classification,
)
from birough.classify import HOLDS, VACUOUS, VIOLATED
from birough.lab import GeneratorConfig, generate_relations
from strategies import relations


def classification_of(universes, **blocks):
    return validate_classification(
        [(name, universes.v_subset(labels)) for name, labels in blocks.items()]
    )


@pytest.fixture
def two_block(universes, sample):
    # lowers ({x3}, {x2}); uppers ({x1,x3,x4,x5}, {x1,x2,x4,x5})
    cls = classification_of(universes, Y1=("y1", "y2", "y4"), Y2=("y3", "y5", "y6"))
    return approximate_family(sample, cls)


@pytest.fixture
def totally_rough(universes, sample):
    # both lowers empty, both uppers cover U
    cls = classification_of(universes, Y1=("y1", "y2", "y6"), Y2=("y3", "y4", "y5"))
    return approximate_family(sample, cls)


@pytest.fixture
def three_block(universes, sample):
    cls = classification_of(universes, Y1=("y1", "y2", "y4"), Y2=("y3", "y6"), Y3=("y5",))
    return approximate_family(sample, cls)


def definable_2x3():
    up = UniversePair(("x1", "x2"), ("y1", "y2", "y3"))
    rel = BinaryRelation.from_rows(up, [[1, 0, 0], [0, 1, 1]])
    cls = validate_classification(
        [("Y1", up.v_subset(["y1"])), ("Y2", up.v_subset(["y2", "y3"]))]
    )
    return approximate_family(rel, cls)


def wide_u_3x2():
    up = UniversePair(("x1", "x2", "x3"), ("y1", "y2"))
    rel = BinaryRelation.from_rows(up, [[1, 0], [1, 0], [1, 0]])
    cls = validate_classification(
        [("Y1", up.v_subset(["y1"])), ("Y2", up.v_subset(["y2"]))]
    )
    return approximate_family(rel, cls)


class TestValidation:
    def test_valid_two_block_classification(self, universes):
        cls = classification_of(universes, Y1=("y1", "y2", "y6"), Y2=("y3", "y4", "y5"))
        assert cls.n == 2 and cls.names == ("Y1", "Y2")

    def test_overlap_names_blocks_and_element(self, universes):
        blocks = [
            ("Y1", universes.v_subset(["y1"])),
            ("Y2", universes.v_subset(["y1", "y2", "y3", "y4", "y5", "y6"])),
        ]
        violations = classification_violations(blocks)
        assert any("overlap" in v and "y1" in v for v in violations)
        with pytest.raises(ClassificationError):
            validate_classification(blocks)

    def test_single_block_rejected(self, universes):
        blocks = [("Y1", universes.full(Side.V))]
        assert any("more than one block" in v for v in classification_violations(blocks))

    def test_empty_block_and_gap_reported_together(self, universes):
        blocks = [
            ("Y1", universes.v_subset(["y1"])),
            ("Y2", universes.empty(Side.V)),
        ]
        violations = classification_violations(blocks)
        assert any("'Y2' is empty" in v for v in violations)
        assert any("do not cover" in v for v in violations)

    def test_no_blocks(self):
        assert classification_violations([]) == ["no blocks supplied"]
        with pytest.raises(ClassificationError):
            validate_classification([])

    def test_duplicate_names(self, universes):
        blocks = [
            ("Y1", universes.v_subset(["y1", "y2", "y3"])),
            ("Y1", universes.v_subset(["y4", "y5", "y6"])),
        ]
        assert any("duplicate block name" in v for v in classification_violations(blocks))

    def test_u_side_block_raises_type_error(self, universes):
        with pytest.raises(SideMismatchError):
            classification_violations([("Y1", universes.u_subset(["x1"]))])


class TestFamilyApprox:
    def test_two_block_family(self, two_block):
        assert [s.labels() for s in two_block.lowers] == [("x3",), ("x2",)]
        assert [s.labels() for s in two_block.uppers] == [
            ("x1", "x3", "x4", "x5"),
            ("x1", "x2", "x4", "x5"),
        ]

    def test_totally_rough_family(self, totally_rough):
        assert all(not lo for lo in totally_rough.lowers)
        assert all(up.is_full for up in totally_rough.uppers)

    def test_three_block_family(self, three_block):
        assert three_block.lowers[1].labels() == ("x2",)
        assert three_block.uppers[1].labels() == ("x2", "x4")
        assert three_block.uppers[0].labels() == ("x1", "x3", "x4", "x5")
        assert three_block.uppers[2].labels() == ("x1", "x4", "x5")

    def test_universe_mismatch(self, sample):
        other = UniversePair(("x1",), ("y1", "y2"))
        cls = validate_classification(
            [("A", other.v_subset(["y1"])), ("B", other.v_subset(["y2"]))]
        )
        with pytest.raises(SideMismatchError):
            approximate_family(sample, cls)


class TestMeasures:
    def test_accuracy(self, two_block, totally_rough):
        assert two_block.accuracy() == Fraction(1, 4)
        assert totally_rough.accuracy() == Fraction(0)

    def test_quality_both_normalizations(self, two_block, totally_rough):
        q = two_block.quality()
        assert q.v_normalized == Fraction(1, 3)
        assert q.u_normalized == Fraction(2, 5)
        q0 = totally_rough.quality()
        assert q0.v_normalized == 0 and q0.u_normalized == 0

    def test_definable_family_has_unit_accuracy(self):
        fa = definable_2x3()
        assert fa.is_definable()
        assert fa.accuracy() == Fraction(1)
        # the v-normalized quality disagrees with 1 because |U| != |V|
        assert fa.quality().v_normalized == Fraction(2, 3)
        assert fa.quality().u_normalized == Fraction(1)

    def test_quality_can_exceed_one_when_u_larger(self):
        fa = wide_u_3x2()
        assert fa.quality().v_normalized == Fraction(3, 2)
        assert fa.quality().u_normalized == Fraction(1)
        assert fa.is_definable() and fa.accuracy() == Fraction(1)

    def test_sample_family_not_definable(self, two_block):
        assert not two_block.is_definable()

    def test_solitary_element_blocks_definability(self):
        up = UniversePair(("x1", "x2"), ("y1", "y2"))
        rel = BinaryRelation.from_rows(up, [[0, 0], [1, 1]])
        cls = validate_classification(
            [("A", up.v_subset(["y1"])), ("B", up.v_subset(["y2"]))]
        )
        assert not approximate_family(rel, cls).is_definable()

    def test_accuracy_undefined_only_for_all_zero_relation(self):
        up = UniversePair(("x1", "x2"), ("y1", "y2"))
        rel = BinaryRelation.from_rows(up, [[0, 0], [0, 0]])
        cls = validate_classification(
            [("A", up.v_subset(["y1"])), ("B", up.v_subset(["y2"]))]
        )
        fa = approximate_family(rel, cls)
        with pytest.raises(UndefinedMeasureError):
            fa.accuracy()


class TestIndexSubsets:
    def test_small_enumeration_is_lexicographic(self):
        assert proper_index_subsets(3) == [(0,), (0, 1), (0, 2), (1,), (1, 2), (2,)]

    def test_large_n_keeps_singletons_and_complements(self):
        subsets = proper_index_subsets(20, samples=8)
        for i in range(20):
            assert (i,) in subsets
            assert tuple(j for j in range(20) if j != i) in subsets
        assert subsets == sorted(subsets)


class TestDualityChecks:
    def test_totally_rough_instance_both_sides_true(self, totally_rough):
        entry = cover_duality_check(totally_rough, (0,))
        assert entry.hypothesis and entry.conclusion and entry.verdict == HOLDS

    def test_two_block_instance_both_sides_false(self, two_block):
        entry = cover_duality_check(two_block, (0,))
        assert not entry.hypothesis and not entry.conclusion and entry.verdict == HOLDS

    def test_support_duality_instances(self, two_block, totally_rough):
        entry = support_duality_check(two_block, (0,))
        assert entry.hypothesis and entry.conclusion and entry.verdict == HOLDS
        entry = support_duality_check(totally_rough, (0,))
        assert not entry.hypothesis and not entry.conclusion and entry.verdict == HOLDS

    def test_bad_index_sets_rejected(self, two_block):
        for bad in ((), (0, 1), (5,)):
            with pytest.raises(Exception):
                cover_duality_check(two_block, bad)

    def test_exhaustive_2x2_never_violated(self):
        for rel in generate_relations(GeneratorConfig(2, 2, "exhaustive")):
            cls = validate_classification(
                [
                    ("B1", rel.universes.v_subset([0])),
                    ("B2", rel.universes.v_subset([1])),
                ]
            )
            fa = approximate_family(rel, cls)
            report = duality_report(fa)
            assert report.ok

    def test_sampled_larger_models_never_violated(self):
        from birough import random_campaign

        for rel in random_campaign(60, max_u=8, max_v=8, min_v=2, seed=47):
            half = rel.universes.v_subset(range((rel.v_size + 1) // 2))
            fa = approximate_family(
                rel,
                validate_classification([("A", half), ("B", half.complement())]),
            )
            assert duality_report(fa).ok
            assert derived_laws_report(fa).ok


class TestDerivedLaws:
    def test_verified_cover_instance(self, universes, sample):
        # upper(Y1) covers U, so the other blocks must have empty lowers
        cls = classification_of(universes, Y1=("y2", "y3", "y5"), Y2=("y1", "y4"), Y3=("y6",))
        fa = approximate_family(sample, cls)
        report = derived_laws_report(fa)
        entry = next(
            e
            for e in report.by_law("block-upper-covers-forces-other-lowers-empty")
            if e.blocks == ("Y1",)
        )
        assert entry.hypothesis and entry.verdict == HOLDS

    def test_verified_all_lowers_instance(self, two_block):
        report = derived_laws_report(two_block)
        (entry,) = report.by_law("all-lowers-nonempty-forces-all-uppers-proper")
        assert entry.hypothesis and entry.verdict == HOLDS

    def test_verified_support_instance(self, three_block):
        report = derived_laws_report(three_block)
        entry = next(
            e
            for e in report.by_law("block-lower-nonempty-forces-other-uppers-proper")
            if e.blocks == ("Y2",)
        )
        assert entry.hypothesis and entry.verdict == HOLDS

    def test_vacuous_is_distinguished(self, two_block):
        report = derived_laws_report(two_block)
        entry = next(
            e
            for e in report.by_law("block-upper-covers-forces-other-lowers-empty")
            if e.blocks == ("Y1",)
        )
        assert not entry.hypothesis and entry.verdict == VACUOUS

    def test_family_report_has_no_violations(self, two_block, totally_rough, three_block):
        for fa in (two_block, totally_rough, three_block):
            assert family_law_report(fa).ok


class TestMeasureLaws:
    def test_definable_family(self):
        report = measure_law_report(definable_2x3())
        tally = report.tally()
        assert tally[VIOLATED] == 0
        by = {e.law: e for e in report.entries}
        assert by["definable-forces-unit-accuracy"].verdict == HOLDS
        assert by["definable-forces-serial"].verdict == HOLDS
        assert by["definable-forces-unit-u-quality"].verdict == HOLDS
        assert by["serial-unit-accuracy-forces-definable"].verdict == HOLDS
        # not square, so the v-quality claim is not exercised
        assert by["definable-forces-unit-v-quality-on-square"].verdict == VACUOUS

    def test_unit_accuracy_without_seriality_is_not_definability(self):
        # rows 00|11: the solitary x1 sits in every lower approximation, so
        # both measures reach 1 on singleton blocks without the family being
        # definable; only the serial variant of the implication is a law.
        up = UniversePair(("x1", "x2"), ("y1", "y2"))
        rel = BinaryRelation.from_rows(up, [[0, 0], [1, 1]])
        cls = validate_classification(
            [("A", up.v_subset(["y1"])), ("B", up.v_subset(["y2"]))]
        )
        fa = approximate_family(rel, cls)
        assert fa.accuracy() == Fraction(1)
        assert fa.quality().v_normalized == Fraction(1)
        assert not fa.is_definable() and not rel.is_serial()
        assert measure_law_report(fa).ok

    def test_serial_chain_on_sample(self, two_block):
        report = measure_law_report(two_block)
        by = {e.law: e for e in report.entries}
        assert by["serial-measure-chain"].verdict == HOLDS
        assert report.ok

    @given(relations(max_u=5, max_v=5))
    def test_measure_laws_never_violated(self, rel):
        if rel.v_size < 2:
            return
        half = rel.universes.v_subset(range(rel.v_size // 2 or 1))
        cls = validate_classification(
            [("A", half), ("B", half.complement())]
        )
        if not half or not half.complement():
            return
        fa = approximate_family(rel, cls)
        assert measure_law_report(fa).ok
