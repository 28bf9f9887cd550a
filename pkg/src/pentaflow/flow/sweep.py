"""按声称逐 n 扫描残差并拟合收敛阶。"""

from __future__ import annotations

from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Any, Iterable, Literal, Sequence

import pandas as pd
from loguru import logger

from ..config import DEFAULT_TOLERANCES, ToleranceConfig
from ..errors import FitError
from ..fitting import fit_convergence
from .asymptotics import (
    FlowSample,
    coefficient_asymptotics,
    corollary35_residual,
    evolution_residual,
    index_for,
    p_point_residual,
    t_stability,
)
from .curves import PeriodicCurve
from .expansions import STATED, ExpansionTable, get_expansion
from .models import AsymptoticsRecord, RecordKind

Claim = Literal["lemma32", "lemma34", "theorem31", "eq4", "corollary35"]

CLAIMS: tuple[str, ...] = ("lemma32", "lemma34", "theorem31", "eq4", "corollary35")

CLAIM_KINDS: dict[str, tuple[RecordKind, ...]] = {
    "lemma32": (RecordKind.COEFF_B, RecordKind.COEFF_C),
    "lemma34": (RecordKind.T_STABILITY,),
    "theorem31": (RecordKind.EVOLUTION,),
    "eq4": (RecordKind.P_POINT,),
    "corollary35": (RecordKind.COROLLARY,),
}

# 声称的收敛阶（log-log 斜率）
CLAIM_BANDS: dict[str, dict[str, float]] = {
    "stated": {"lemma32": -2.0, "lemma34": -2.0, "theorem31": -1.0, "eq4": -1.0, "corollary35": -3.0},
    "rederived": {"lemma32": -2.0, "lemma34": -2.0, "theorem31": -2.0, "eq4": -2.0, "corollary35": -4.0},
}

ALL_INDICES = "max"


def _measure(sample: FlowSample, claim: str, i: int, table: ExpansionTable) -> list[AsymptoticsRecord]:
    curve, n = sample.curve, sample.n
    if claim == "lemma32":
        return list(coefficient_asymptotics(curve, n, i, expansion=table, sample=sample))
    if claim == "lemma34":
        return [t_stability(curve, n, i, "B", sample=sample)]
    if claim == "theorem31":
        return [evolution_residual(curve, n, i, expansion=table, sample=sample)]
    if claim == "eq4":
        return [p_point_residual(curve, n, i, expansion=table, sample=sample)]
    if claim == "corollary35":
        return [corollary35_residual(curve, n, i, expansion=table, sample=sample)]
    raise ValueError(f"未知声称 {claim!r}；可用: {', '.join(CLAIMS)}")


def _sweep_one(curve: PeriodicCurve, claim: str, n: int, x_points: Sequence[float] | None, table: ExpansionTable) -> list[AsymptoticsRecord]:
    sample = FlowSample(curve, n)
    records: list[AsymptoticsRecord] = []
    if x_points is None:
        for i in range(n):
            records.extend(_measure(sample, claim, i, table))
    else:
        measured: dict[int, list[AsymptoticsRecord]] = {}
        for x in sorted(set(x_points)):
            i = index_for(x, n)
            if i not in measured:
                measured[i] = _measure(sample, claim, i, table)
            records.extend(replace(r, x_target=float(x)) for r in measured[i])
    logger.info(f"{claim} n={n}: {len(records)} 条记录")
    return records


def run_sweep(
    curve: PeriodicCurve,
    claim: str,
    n_values: Iterable[int],
    *,
    x_points: Sequence[float] | None = (0.25,),
    expansion: ExpansionTable | str = STATED,
    workers: int = 1,
) -> list[AsymptoticsRecord]:
    """
    对每个 n 采样并测量 claim 的残差；x_points=None 表示所有顶点。

    各 n 相互独立，workers > 1 时用线程池并发；输出始终按 (kind, n, i) 排序。
    """
    if claim not in CLAIM_KINDS:
        raise ValueError(f"未知声称 {claim!r}；可用: {', '.join(CLAIMS)}")
    table = get_expansion(expansion)
    ns = sorted(set(n_values))
    if workers > 1 and len(ns) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(lambda n: _sweep_one(curve, claim, n, x_points, table), ns))
    else:
        chunks = [_sweep_one(curve, claim, n, x_points, table) for n in ns]
    records = [r for chunk in chunks for r in chunk]
    return sorted(records, key=AsymptoticsRecord.sort_key)


@dataclass
class KindFit:
    """某一 (kind, 位置) 上的收敛阶检查。"""

    kind: str
    location: str
    n_values: list[int]
    residuals: list[float]
    slope: float | None
    intercept: float | None
    r_squared: float | None
    exact: bool
    passed: bool
    error: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass
class ClaimResult:
    claim: str
    expansion: str
    expected_slope: float
    band: float
    strict: bool
    fits: list[KindFit] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.fits) and all(f.passed for f in self.fits)

    def to_dict(self) -> dict[str, Any]:
        return {
            "claim": self.claim,
            "expansion": self.expansion,
            "expected_slope": self.expected_slope,
            "band": self.band,
            "strict": self.strict,
            "passed": self.passed,
            "fits": [f.to_dict() for f in self.fits],
        }

    def to_frame(self) -> pd.DataFrame:
        rows = [
            {
                "claim": self.claim,
                "kind": f.kind,
                "location": f.location,
                "slope": f.slope,
                "intercept": f.intercept,
                "r_squared": f.r_squared,
                "expected_slope": self.expected_slope,
                "exact": f.exact,
                "passed": f.passed,
            }
            for f in self.fits
        ]
        return pd.DataFrame(rows)


def _group(records: Sequence[AsymptoticsRecord], all_indices: bool) -> dict[tuple[str, str], dict[int, float]]:
    """(kind, 位置) -> {n: residual}；位置取请求的 x，all_indices 时取每个 n 上的最大残差。"""
    groups: dict[tuple[str, str], dict[int, float]] = defaultdict(dict)
    for r in records:
        location = ALL_INDICES if all_indices else f"{r.location:.12g}"
        bucket = groups[(r.kind.value, location)]
        bucket[r.n] = max(bucket.get(r.n, 0.0), r.residual)
    return groups


def check_claim(
    records: Sequence[AsymptoticsRecord],
    claim: str,
    *,
    expansion: ExpansionTable | str = STATED,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
    strict: bool = False,
    all_indices: bool = False,
) -> ClaimResult:
    """
    O(n^-p) 是上界声称：默认只要求 slope <= -p + band 且 r² > r_squared_min；
    strict=True 时要求 |slope + p| <= band。残差全部低于 residual_floor 视为精确成立。
    """
    table = get_expansion(expansion)
    if table.name not in CLAIM_BANDS:
        raise ValueError(f"展开表 {table.name!r} 没有对应的收敛阶声称")
    expected = CLAIM_BANDS[table.name][claim]
    band = tolerances.slope_band
    result = ClaimResult(claim=claim, expansion=table.name, expected_slope=expected, band=band, strict=strict)

    groups = _group(records, all_indices)
    for kind in CLAIM_KINDS[claim]:
        locations = sorted(loc for (k, loc) in groups if k == kind.value)
        if not locations:
            result.fits.append(KindFit(kind.value, "", [], [], None, None, None, False, False, "无记录"))
            continue
        for loc in locations:
            data = groups[(kind.value, loc)]
            ns = sorted(data)
            residuals = [data[n] for n in ns]
            if max(residuals) <= tolerances.residual_floor:
                result.fits.append(KindFit(kind.value, loc, ns, residuals, None, None, None, True, True))
                continue
            try:
                fit = fit_convergence(zip(ns, residuals))
            except FitError as exc:
                result.fits.append(KindFit(kind.value, loc, ns, residuals, None, None, None, False, False, str(exc)))
                continue
            if strict:
                in_band = abs(fit.slope - expected) <= band
            else:
                in_band = fit.slope <= expected + band
            passed = in_band and fit.r_squared > tolerances.r_squared_min
            result.fits.append(
                KindFit(kind.value, loc, ns, residuals, fit.slope, fit.intercept, fit.r_squared, False, passed)
            )
            if not passed:
                logger.warning(
                    f"{claim}/{kind.value}@{loc}: slope={fit.slope:.3f} r²={fit.r_squared:.4f}，"
                    f"期望 {expected:+.1f} ± {band}"
                )
    return result


__all__ = [
    "Claim",
    "CLAIMS",
    "CLAIM_KINDS",
    "CLAIM_BANDS",
    "run_sweep",
    "KindFit",
    "ClaimResult",
    "check_claim",
]
