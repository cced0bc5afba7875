"""Weighted subsequence sums, setpartitions and zero-sum invariants over finite abelian groups."""

from .errors import (
    BadN,
    CapExceeded,
    DomainTooLarge,
    EmptyFactors,
    EmptySet,
    FactorBelowTwo,
    GroupMismatch,
    GroupTooLarge,
    KneserViolation,
    LengthMismatch,
    MissingField,
    NoSetpartition,
    NonDivisibleChain,
    NotASubgroup,
    ParseError,
    ZerosumError,
)
from .groups import (
    Element,
    Group,
    QuotientMap,
    Subgroup,
    abelian_group_types,
    all_subgroups,
    elt_order,
    format_element,
    format_group,
    make_group,
    parse_element,
    parse_group,
    quotient,
    quotient_iso_type,
    subgroup_from_elements,
    subgroup_generated,
    trivial_group,
)
from .setsum import (
    ApWitness,
    GSet,
    KneserReport,
    StabilizerReport,
    detect_ap,
    gset,
    iterated_sumset,
    kneser_audit,
    stabilizer,
    sumset,
    weighted_dilate,
)
from .sequences import (
    GSequence,
    Setpartition,
    balanced_setpartition,
    enum_setpartitions,
    format_sequence,
    has_setpartition,
    parse_sequence,
    seq_from_indices,
    seq_stats,
    sequence,
)
from .weighted import (
    WeightSeq,
    format_weights,
    parse_weights,
    partition_wsum,
    sigma_all,
    sigma_from,
    sigma_n,
    sigma_upto,
    sums_by_count,
    w_dot,
    weight_seq,
)
from .invariants import (
    DAVENPORT_CAP,
    InvariantReport,
    check_davenport_bounds,
    davenport,
    davenport_report,
    dstar,
    dstar_of_factors,
    ell,
    invariant_report,
)
from .verdict import Status, Verdict
from .verify import (
    DEFAULT_CAPS,
    Instance,
    SearchCaps,
    SetpartitionWitness,
    StatementId,
    SweepDomain,
    SweepReport,
    check_ap_structure,
    check_instance,
    check_max_subgroup_dichotomy,
    check_self_duality,
    contained_subgroup,
    coset_condition,
    example1_instance,
    example2_instance,
    instance_to_dict,
    make_setpartition_witness,
    report_to_csv,
    report_to_json,
    statement_anchor,
    sweep,
    sweepable_statements,
    to_jsonable,
    verdict_to_dict,
    witness_search_setpartition,
)

__version__ = "0.1.0"
