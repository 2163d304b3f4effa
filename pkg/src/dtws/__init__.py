"""Trend-aware time-series similarity toolkit.

Series are compared by sliding a short window over each of them, mapping
every window to an interpretable vector of shapelet similarities, and
dynamically time-warping the resulting matrices. Clustering, 1-NN
classification and timing-and-scale ensembling build on the measure.
"""

from .classify import HyperGrid, LabeledDataset, LoocvResult, load_ucr, loocv_select, one_nn
from .cluster import ClusterResult, agglomerate, select_k, silhouette
from .dtw import AlignmentResult, brute_force_dtw, dtw, local_cost_matrix
from .ensemble import (
    EnsemblePoint,
    EnsembleResult,
    dtw_s_ensemble,
    ensemble_all_bases,
    mean_ensemble,
)
from .measures import (
    DistanceMatrix,
    MeasureConfig,
    concrete_config,
    distance,
    distance_matrix,
    dtw_plus_s,
)
from .series import (
    SSRMatrix,
    TimeSeries,
    estimate_beta,
    moving_average,
    ssr_matrix,
    znormalize,
)
from .shapelets import (
    BetaRule,
    FlatnessParams,
    INFINITE_BETA,
    Shapelet,
    ShapeletSet,
    center_normalize,
    default_shapelet_set,
    flatness,
    load_shapelet_json,
    mean_abs_slope,
    pearson,
    ssr_vector,
    validate_shapelet_set,
)

__version__ = "0.1.0"
