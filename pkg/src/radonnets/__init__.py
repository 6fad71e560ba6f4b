"""Exact invariants, weak epsilon-nets, and lower-bound certificates for
finite abstract convexity spaces."""

from .space import (
    ConsistencyError,
    ConvexFamily,
    ConvexitySpace,
    Distribution,
    GroundSet,
    GroundTooLarge,
    MissingEmptySet,
    MissingFullSet,
    NotConvex,
    NotIntersectionClosed,
    PointSet,
    SpaceAxiomError,
    convex_hull,
    format_distribution_file,
    format_space_file,
    halfspaces,
    intersection_closure,
    is_separable,
    measure,
    parse_distribution_file,
    parse_space_file,
    restrict_space,
    size_cap,
    validate_space,
)
from .invariants import (
    InvariantReport,
    analyze,
    helly_number,
    is_radon_shattered,
    radon_number,
    vc_dimension,
)
from .exact import (
    Graph,
    HittingSetInstance,
    TooLarge,
    dense_sets,
    exact_chromatic_number,
    hitting_instance,
    minimal_weak_net,
)
from .nets import (
    EmptyIntersection,
    NetCheck,
    NetNode,
    NetParams,
    PackingBoundWarning,
    WeakNet,
    ZeroMassCondition,
    amplification_depth,
    build_weak_net,
    conditional,
    greedy_packing,
    net_params,
    piercing_point,
    verify_weak_net,
)
from .bounds import (
    DisjointnessGraph,
    KleitmanCheck,
    KneserGraph,
    LowerBoundCertificate,
    NotIntersecting,
    TooLargeForExact,
    chromatic_lower_bound,
    disjointness_graph,
    kleitman_union_bound,
    kneser_chromatic_number,
    kneser_embedding,
    kneser_graph,
    kneser_quarter_check,
    radon_lower_bound,
)
from .generators import (
    GeneratorSpec,
    cylinder_space,
    lattice_convex_space,
    linear_extension_space,
    power_set_space,
    random_separable,
    subtree_space,
)

__version__ = "0.1.0"
