"""Rough-set approximation over two universes linked by a binary relation."""

from .relation import (
    BiroughError,
    UniverseError,
    DimensionError,
    UnknownLabelError,
    SideMismatchError,
    PartitionError,
    Side,
    UniversePair,
    Subset,
    Partition,
    BinaryRelation,
)
from .approx import (
    RoughType,
    ApproxResult,
    lower_approximation,
    lower_approximation_matrix,
    upper_approximation,
    upper_approximation_matrix,
    upper_approximation_from_columns,
    boundary,
    rough_type,
    approximate,
)
from .classify import (
    ClassificationError,
    UndefinedMeasureError,
    Classification,
    classification_violations,
    validate_classification,
    FamilyApprox,
    approximate_family,
    Quality,
    LawInstance,
    TheoremReport,
    cover_duality_check,
    support_duality_check,
    duality_report,
    derived_laws_report,
    family_law_report,
    measure_law_report,
    proper_index_subsets,
)
from .lab import (
    ConfigError,
    BudgetError,
    GeneratorConfig,
    SubsetBudget,
    canonical_universes,
    generate_relations,
    random_relation,
    random_subset_bits,
    random_campaign,
    PropertyReport,
    verify_algebraic_properties,
    merge_property_reports,
    verify_serial_iff,
    reconstruct_relation,
    UNION_TABLE,
    INTERSECTION_TABLE,
    table_for,
    allowed_result_types,
    ambiguous_cells,
    Witness,
    TableCellFinding,
    check_type_tables,
    check_relation_against_tables,
    witness_inventory,
    find_type_witness,
)
from .formats import (
    ParseError,
    RelationDocument,
    parse_relation_file,
    render_relation_file,
    parse_classification_file,
    AnalysisReport,
    emit_report,
    ratio_decimal,
    ratio_obj,
    ratio_text,
)

__version__ = "0.1.0"
