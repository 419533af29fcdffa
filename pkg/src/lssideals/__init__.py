"""Edge ideals of graphs and hypergraphs: positive matching decompositions,
combinatorial classification of radical / complete intersection / prime
status per coordinate level, term-order certificates, matrix coordinate
sections, and an exact Groebner engine for witness verification."""

from .classifier import (
    FALSE,
    TRUE,
    UNKNOWN,
    AsymBounds,
    ClassifierContradiction,
    FieldAssumption,
    Justification,
    TransferReport,
    TransferStatement,
    Verdict,
    asym_bounds,
    classify,
    transfer_report,
    w_of,
)
from .graphs import (
    Bipartition,
    Clutter,
    Graph,
    bipartition,
    clique_number,
    complete_bipartite,
    complete_graph,
    crown_graph,
    cycle_graph,
    graph_from_json,
    graph_from_text,
    graph_to_json,
    graph_to_text,
    max_degree,
    named_graph,
    path_graph,
    star_graph,
)
from .groebner import (
    CertificateFailure,
    GBBudgetExhausted,
    GroebnerBasis,
    RadicalCiCertificate,
    WitnessReport,
    buchberger,
    certify_radical_ci,
    colon,
    eliminate,
    is_complete_intersection_gb,
    normal_form,
    quotient_dimension,
    reduces_to_zero,
    search_witness,
    witness_test,
)
from .ideals import (
    GeneratorSet,
    MatrixTemplate,
    block_matrix_template,
    expected_height,
    lss_generators,
    matrix_template,
    minor,
    minors,
    pfaffians,
    stacked_minor_pool,
    twisted_lss_generators,
)
from .instances import NONRADICAL_INSTANCES, NonradicalInstance
from .polynomials import (
    DEGREVLEX,
    LEX,
    MonomialOrder,
    Polynomial,
    VariableSpace,
    block_space,
    custom_space,
    elimination_order,
    generic_space,
    order_from_decomposition,
    parse_polynomial,
    poly_from_json,
    poly_to_json,
    poly_to_text,
    skew_space,
    symmetric_space,
)
from .posmatch import (
    PmDecomposition,
    PmdResult,
    WeightCertificate,
    exact_pmd,
    greedy_pm_decomposition,
    is_positive_matching,
    is_positive_matching_bipartite,
    pmd_bounds,
    verify_pm_decomposition,
)

__all__ = [name for name in dir() if not name.startswith("_")]
