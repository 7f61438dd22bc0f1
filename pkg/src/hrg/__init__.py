"""Hyperreflection systems on Cayley hypergraphs and graph products of groups."""

from .groups import (
    FiniteGroup,
    SizeExceeded,
    Subgroup,
    TableInvalid,
    build_group,
    conjugate_subgroup,
    cyclic_group,
    dihedral_group,
    direct_product,
    full_subgroup,
    max_group_order,
    subgroup,
    subgroup_generated,
    symmetric_group,
    table_group,
    trivial_subgroup,
)
from .hypergraph import (
    CayleySystem,
    Hypergraph,
    NotGenerating,
    TrivialSubgroup,
    Walk,
    cayley_hypergraph,
    components,
    fixed_edge_set,
    hypergraph,
    walk,
    wall_complement_components,
)
from .words import (
    DoubleCosetMin,
    DualWord,
    ExchangeOutcome,
    NotReduced,
    Word,
    coset_min,
    double_coset_min,
    dual_word,
    exchange,
    geodesic_words,
    is_reduced,
    length_and_reduced,
    length_of,
    make_word,
    reduce_word,
    reduction_trace,
    represented,
    word_walk,
)
from .hyperreflections import (
    HyperreflectionReport,
    Wall,
    in_fundamental_sector,
    is_hyperreflection,
    sector_decompose,
    special_subgroup,
    subsystem,
    support,
    system_passes,
    verification_as_dict,
    verify_system,
    wall_crossings,
    walls,
)
from .graphprod import (
    GPRealization,
    GPWord,
    GraphOfGroups,
    InfiniteOrCapExceeded,
    NormalWord,
    chamber_of,
    composite_system,
    elementary_neighbors,
    embedded_subgroup,
    enumerate_group,
    gp_inverse,
    gp_multiply,
    gp_word,
    graph_of_groups,
    is_normal,
    mu_prepend,
    normal_word,
    normalize,
    weight,
    word_name,
)
from .coxeter import CoxeterFamily, UnsupportedFamily, coxeter_system

__version__ = "0.1.0"
