"""Group-fairness benchmarking for community detection.

The package scores how evenly a detection method treats communities of
different size, density, and conductance: predicted communities are
greedily matched to the ground truth by Jaccard similarity, each
ground-truth community is scored (node recall, F1 overlap, edge
recall), and the fairness value per (score, property) pair is the
arctan-squashed slope of score against the normalized property.
Standard partition-quality metrics (NMI, RMI, ARI, PF1, NF1) ride along
for the performance side of the trade-off.
"""

from .errors import (
    ConfigError,
    EdgeListParseError,
    FaircommError,
    InsufficientDataError,
    NodeSetMismatchError,
    NoVariationError,
    PartitionCoverageError,
    UndefinedValueError,
)
from .graph import Graph, load_graph, parse_edge_list, write_edge_list
from .partition import (
    Partition,
    load_partition,
    parse_partition,
    write_partition,
)
from .properties import (
    CommunityProperties,
    community_conductance,
    community_density,
    community_properties,
    community_size,
    cut_fraction,
    normalize_property,
    pearson_correlation,
)
from .mapping import CommunityMapping, MappedPair, jaccard, map_communities
from .fairness import (
    FairnessReport,
    PhiCell,
    CommunityScore,
    f1,
    fairness_report,
    fccn,
    fcce,
    fit_slope,
    phi,
)
from .contingency import ContingencyTable
from .validation import (
    ValidationScores,
    ari,
    entropy,
    mutual_information,
    nf1,
    nmi,
    pf1,
    rand_index,
    rmi,
    rmi_detail,
    rmi_raw,
    validation_scores,
)
from .generators import (
    HichBaConfig,
    PlantedPartitionConfig,
    generate_hichba,
    generate_planted,
    generate_single_community,
    generate_two_community,
    hichba_mmaj_config,
    hichba_mmin_config,
    planted_lfr_like_config,
)
from .detectors import (
    DetectorRun,
    greedy_modularity,
    label_propagation,
    modularity,
    run_detector,
)
from .sweeps import sweep_removal, sweep_swap, removal_base_graph
from .results import (
    CSV_COLUMNS,
    CSV_SCHEMA_VERSION,
    ResultRow,
    aggregate_rows,
    evaluate_pair,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
