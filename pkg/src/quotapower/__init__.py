"""Exact Banzhaf power and decision-quota sensitivity for weighted voting bodies."""

__version__ = "0.1.0"

from ._backend import available_backends, get_backend, set_backend
from .dataio import (
    PowerReport,
    WeightTable,
    embedded_imf_dataset,
    load_weights,
    parse_weights_csv,
    write_report,
)
from .errors import (
    DegenerateError,
    GameSizeError,
    InputError,
    IntegrityError,
    QuotaPowerError,
    ResourceError,
    WeightsParseError,
)
from .game import (
    Coalition,
    CountryWeight,
    GameInstance,
    QuotaSpec,
    VotingBody,
    evaluate_coalition,
    threshold_from_quota,
)
from .metrics import (
    ComparisonReport,
    InequalityReport,
    compare,
    euclidean,
    gini,
    hhi,
    inequality,
    manhattan,
    max_ratio,
    pearson,
)
from .power import (
    CountVector,
    DecisivenessValue,
    PowerProfile,
    SwingProfile,
    banzhaf_indices,
    banzhaf_value,
    brute_force_banzhaf,
    brute_force_pta,
    build_count_vector,
    multi_quota_profiles,
    pta,
    remove_player,
    swing_count,
)
from .sweep import OptimumReport, SweepRow, find_optima, quota_range, run_sweep, weight_inequality
