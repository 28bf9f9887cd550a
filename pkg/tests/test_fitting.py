"""log-log 收敛阶拟合测试。"""

from __future__ import annotations

import numpy as np
import pytest

from pentaflow.errors import InsufficientData, NonPositiveResidual
from pentaflow.fitting import fit_convergence, fit_line


def test_exact_power_law():
    fit = fit_convergence((n, 3.0 * n**-2) for n in (10, 20, 40, 80))
    assert fit.slope == pytest.approx(-2.0, abs=1e-12)
    assert fit.intercept == pytest.approx(np.log(3.0), abs=1e-12)
    assert fit.r_squared == pytest.approx(1.0)
    assert fit.points == 4


def test_fit_line_clips_r_squared():
    fit = fit_line([0, 1, 2, 3], [1.0, -1.0, 1.0, -1.0])
    assert 0.0 <= fit.r_squared <= 1.0
    assert fit.to_dict()["points"] == 4


def test_too_few_points():
    with pytest.raises(InsufficientData):
        fit_convergence([(10, 0.1), (20, 0.05)])


def test_duplicate_n_rejected():
    with pytest.raises(InsufficientData):
        fit_convergence([(10, 0.1), (10, 0.09), (20, 0.05)])


def test_non_positive_residual_rejected():
    with pytest.raises(NonPositiveResidual):
        fit_convergence([(10, 0.1), (20, 0.0), (40, 0.01)])
    with pytest.raises(ValueError):
        fit_convergence([(10, 0.1), (20, -1.0), (40, 0.01)])
