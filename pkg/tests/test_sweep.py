"""收敛阶扫描、声称检查与两组曲线图测试。"""

from __future__ import annotations

import pandas as pd
import pytest

from pentaflow.config import ToleranceConfig
from pentaflow.flow import (
    REDERIVED,
    SCHWARTZ,
    AsymptoticsRecord,
    RecordKind,
    check_claim,
    check_figure,
    figure_data,
    figure_summary,
    records_to_frame,
    run_sweep,
)

NS = [40, 80, 160, 320]


def _synthetic(kind: RecordKind, power: float, scale: float = 1.0) -> list[AsymptoticsRecord]:
    return [AsymptoticsRecord(kind, n, n // 4, scale * n**power, 0.0, scale * n**power) for n in NS]


def test_circle_lemma32_passes(circle):
    records = run_sweep(circle, "lemma32", NS)
    assert len(records) == 2 * len(NS)
    result = check_claim(records, "lemma32")
    assert result.passed
    assert {f.kind for f in result.fits} == {"coeffB", "coeffC"}


def test_sweep_is_sorted_and_thread_independent(fig3):
    serial = run_sweep(fig3, "theorem31", NS, x_points=(0.7, 0.25))
    threaded = run_sweep(fig3, "theorem31", NS, x_points=(0.7, 0.25), workers=3)
    assert [r.to_row() for r in serial] == [r.to_row() for r in threaded]
    keys = [r.sort_key() for r in serial]
    assert keys == sorted(keys)


def test_stated_evolution_fails_rederived_passes(fig3):
    stated = check_claim(run_sweep(fig3, "theorem31", NS), "theorem31")
    assert not stated.passed
    rederived = check_claim(
        run_sweep(fig3, "theorem31", NS, expansion=REDERIVED), "theorem31", expansion=REDERIVED
    )
    assert rederived.passed


def test_stated_c_fails_on_curved_input(fig3):
    result = check_claim(run_sweep(fig3, "lemma32", NS), "lemma32")
    by_kind = {f.kind: f for f in result.fits}
    assert by_kind["coeffB"].passed
    assert not by_kind["coeffC"].passed
    assert not result.passed


def test_uneven_n_keeps_one_location_per_requested_x(fig3):
    ns = [50, 75, 100, 150, 250]
    records = run_sweep(fig3, "lemma34", ns)
    assert [r.i for r in records] == [13, 19, 25, 38, 63]
    assert {r.location for r in records} == {0.25}
    result = check_claim(records, "lemma34")
    assert [f.location for f in result.fits] == ["0.25"]
    assert result.fits[0].n_values == ns
    assert result.passed


def test_coinciding_indices_are_reported_per_x(circle):
    records = run_sweep(circle, "lemma32", [20, 40, 80], x_points=(0.25, 0.251))
    frame = records_to_frame(records)
    assert set(frame["x_target"]) == {0.25, 0.251}
    result = check_claim(records, "lemma32")
    assert sorted({f.location for f in result.fits}) == ["0.25", "0.251"]
    assert all(len(f.n_values) == 3 for f in result.fits)


def test_all_indices_uses_max_residual(circle):
    records = run_sweep(circle, "lemma34", [20, 40, 80], x_points=None)
    assert len(records) == 20 + 40 + 80
    result = check_claim(records, "lemma34", all_indices=True)
    assert [f.location for f in result.fits] == ["max"]
    assert result.fits[0].exact
    assert result.passed


def test_upper_bound_and_strict_modes():
    records = _synthetic(RecordKind.T_STABILITY, -3.0)
    assert check_claim(records, "lemma34").passed
    assert not check_claim(records, "lemma34", strict=True).passed
    slow = _synthetic(RecordKind.T_STABILITY, -1.0)
    assert not check_claim(slow, "lemma34").passed


def test_residual_floor_counts_as_exact():
    records = _synthetic(RecordKind.T_STABILITY, 0.0, scale=1e-15)
    result = check_claim(records, "lemma34")
    assert result.passed and result.fits[0].exact
    strict_floor = ToleranceConfig(residual_floor=0.0)
    assert not check_claim(records, "lemma34", tolerances=strict_floor).passed


def test_missing_records_fail():
    result = check_claim([], "eq4")
    assert not result.passed
    assert result.fits[0].error


def test_schwartz_table_has_no_claim_bands():
    with pytest.raises(ValueError):
        check_claim([], "lemma32", expansion=SCHWARTZ)


def test_unknown_claim(circle):
    with pytest.raises(ValueError):
        run_sweep(circle, "lemma99", NS)


def test_result_frames(circle):
    records = run_sweep(circle, "eq4", NS)
    frame = records_to_frame(records)
    assert list(frame["n"]) == NS
    result = check_claim(records, "eq4")
    summary = result.to_frame()
    assert list(summary.columns)[:3] == ["claim", "kind", "location"]
    assert result.to_dict()["passed"] == result.passed


def test_circle_figure_gap_is_small(circle):
    frame = figure_data(circle, 20)
    assert list(frame.columns) == ["x", "t2_norm", "rhs_norm", "gap"]
    assert len(frame) == 20
    assert frame["gap"].max() < 1.0


def test_figure3_gap_shrinks_and_schwartz_gap_persists(fig3):
    _, corrected = figure_summary(fig3, [20, 30, 40], "fig3")
    assert check_figure(corrected, "fig3")
    frames, schwartz = figure_summary(fig3, [20, 30, 40], "fig4")
    assert sorted(frames) == [20, 30, 40]
    assert check_figure(schwartz, "fig4")


def test_check_figure_rules():
    rising = pd.DataFrame({"n": [20, 30, 40], "max_gap": [1.0, 0.5, 0.6]})
    assert not check_figure(rising, "fig3")
    vanishing = pd.DataFrame({"n": [20, 30, 40], "max_gap": [1.0, 0.5, 0.1]})
    assert not check_figure(vanishing, "fig4")
    assert not check_figure(vanishing.head(1), "fig3")


def test_unknown_figure_variant(circle):
    with pytest.raises(ValueError):
        figure_data(circle, 20, "other")


def test_circle_figure_columns_constant(circle):
    frame = figure_data(circle, 30)
    assert frame["t2_norm"].max() - frame["t2_norm"].min() < 1e-9
    assert frame["rhs_norm"].max() - frame["rhs_norm"].min() < 1e-9
