"""极限流实验：曲线采样、W、渐近残差与收敛阶。"""

from .asymptotics import (
    FlowSample,
    coefficient_asymptotics,
    corollary35_residual,
    evolution_residual,
    index_for,
    p_point_residual,
    schwartz_gap_limit,
    schwartz_p_point,
    shift_stability,
    t_stability,
)
from .curves import (
    FiniteDifferenceCurve,
    LinearImageCurve,
    PeriodicCurve,
    ThetaFourierCurve,
    ThetaTerm,
    compute_W,
    curve_from_config,
    figure3_curve,
    load_curve,
    sample_polygon,
    unit_circle,
)
from .expansions import EXPANSIONS, REDERIVED, SCHWARTZ, STATED, ExpansionTable, get_expansion
from .figures import check_figure, figure_data, figure_summary, max_gap
from .models import AsymptoticsRecord, RecordKind, records_to_frame
from .sweep import CLAIM_BANDS, CLAIMS, ClaimResult, check_claim, run_sweep

__all__ = [
    "AsymptoticsRecord",
    "CLAIMS",
    "CLAIM_BANDS",
    "ClaimResult",
    "EXPANSIONS",
    "ExpansionTable",
    "FiniteDifferenceCurve",
    "FlowSample",
    "LinearImageCurve",
    "PeriodicCurve",
    "REDERIVED",
    "RecordKind",
    "SCHWARTZ",
    "STATED",
    "ThetaFourierCurve",
    "ThetaTerm",
    "check_claim",
    "check_figure",
    "coefficient_asymptotics",
    "compute_W",
    "corollary35_residual",
    "curve_from_config",
    "evolution_residual",
    "figure3_curve",
    "figure_data",
    "figure_summary",
    "get_expansion",
    "index_for",
    "load_curve",
    "max_gap",
    "p_point_residual",
    "records_to_frame",
    "run_sweep",
    "sample_polygon",
    "schwartz_gap_limit",
    "schwartz_p_point",
    "shift_stability",
    "t_stability",
    "unit_circle",
]
