"""Quality scores for overlapping and fuzzy community covers.

Twelve metrics (four modularity variants and eight local community scores)
for crisp or fuzzy overlapping covers, plus the parameter-sweep consensus
used to pick a detection algorithm's best parameter.
"""
from fuzzyov.cover import (
    BelongingConfig, Community, Cover, add_singletons, apply_scheme, assign_v1, assign_v2,
    belonging_value, fuzzy_size, fuzzy_to_crisp, load_cover, logistic, read_cover, write_cover,
)
from fuzzyov.errors import CoverError, FuzzyovError, GraphError, MetricError, ParseError
from fuzzyov.global_metrics import (
    CommunityAggregates, Evaluation, community_aggregates, nq_disjoint, nq_ov, q_disjoint,
    q_ds_disjoint, q_ds_ov, q_ov, q_ov_link, q_ov_link_naive, q_ov_prime,
)
from fuzzyov.graph import Graph, degree, load_edge_list, read_edge_list, total_edge_weight, write_edge_list
from fuzzyov.kernels import backend
from fuzzyov.local_metrics import (
    DIRECTIONS, METRICS, LocalMetricRow, MetricReport, aggregate, compute_report, local_row, local_rows,
)
from fuzzyov.sweep import (
    ConsensusResult, ParamPoint, SweepTable, best_params, consensus, consensus_from_bests,
    evaluate_sweep, load_manifest, render_report,
)

__version__ = "0.1.0"
