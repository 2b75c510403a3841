"""Star structure detection, eigenvalue multiplicity, spectrum-preserving
reduction, and Fiedler partitioning for weighted undirected graphs."""

__version__ = "0.1.0"

from .errors import StarlapError
from .graphs import (
    Graph,
    adjacency,
    build_graph,
    connected_components,
    induced_subgraph,
    laplacian,
    normalized_laplacian,
    signless_laplacian,
    strength,
    strengths,
)
from .eigen import (
    MultiplicityTable,
    Spectrum,
    group_multiplicities,
    multiplicity_at,
    spectral_gap_index,
    sym_eigen,
)
from .stars import (
    LDependentPartition,
    MkStar,
    PredictionReport,
    StarClass,
    dependence_split,
    detect_proportional_ldependent,
    detect_stars,
    group_by_weight,
    plant_ldependent_graph,
    plant_star_graph,
    predict_multiplicities,
    star_weight,
    verify_ldependent,
    verify_star_predictions,
)
from .reduction import (
    Reduction,
    build_k_matrix,
    interlacing_check,
    lift_vector,
    mass_adjacency,
    mass_degree,
    mass_laplacian,
    reduce_all,
    reduce_star,
    star_frame,
    sym_mass_laplacian,
    verify_adjacency_reduction,
    verify_laplacian_reduction,
)
from .partition import (
    FiedlerResult,
    Partition,
    SignAgreementReport,
    compare_signs,
    fiedler,
    kway,
    recursive_bisection,
    reduced_fiedler,
    sign_bipartition,
)
from .fileio import (
    emit_dot,
    graph_summary,
    load_graph,
    parse_graph_file,
    save_graph,
    to_json,
    write_graph_file,
)
from .cli import main, run_cli

__all__ = [
    "Graph",
    "LDependentPartition",
    "MkStar",
    "MultiplicityTable",
    "Partition",
    "FiedlerResult",
    "PredictionReport",
    "Reduction",
    "SignAgreementReport",
    "Spectrum",
    "StarClass",
    "StarlapError",
    "adjacency",
    "build_graph",
    "build_k_matrix",
    "compare_signs",
    "connected_components",
    "dependence_split",
    "detect_proportional_ldependent",
    "detect_stars",
    "emit_dot",
    "fiedler",
    "graph_summary",
    "group_by_weight",
    "group_multiplicities",
    "induced_subgraph",
    "interlacing_check",
    "kway",
    "laplacian",
    "lift_vector",
    "load_graph",
    "main",
    "mass_adjacency",
    "mass_degree",
    "mass_laplacian",
    "multiplicity_at",
    "normalized_laplacian",
    "parse_graph_file",
    "plant_ldependent_graph",
    "plant_star_graph",
    "predict_multiplicities",
    "recursive_bisection",
    "reduce_all",
    "reduce_star",
    "reduced_fiedler",
    "run_cli",
    "save_graph",
    "sign_bipartition",
    "signless_laplacian",
    "spectral_gap_index",
    "star_frame",
    "star_weight",
    "strength",
    "strengths",
    "sym_eigen",
    "sym_mass_laplacian",
    "to_json",
    "verify_adjacency_reduction",
    "verify_laplacian_reduction",
    "verify_ldependent",
    "verify_star_predictions",
    "write_graph_file",
]
