"""共享 fixtures。"""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest
from loguru import logger

from pentaflow.flow import figure3_curve, unit_circle
from pentaflow.geometry import Polygon, regular_polygon

PROJECT_ROOT = Path(__file__).resolve().parents[1]
CONFIGS_DIR = PROJECT_ROOT / "configs"


@pytest.fixture(scope="module", autouse=True)
def reset_logger():
    """CLI 测试会把 sink 指向 CliRunner 的临时流，每个模块结束后恢复。"""
    yield
    logger.remove()
    logger.add(sys.stderr, level="WARNING")


@pytest.fixture
def pentagon() -> Polygon:
    return regular_polygon(5, phase=np.pi / 2)


@pytest.fixture
def hexagon() -> Polygon:
    return regular_polygon(6)


@pytest.fixture
def fig3():
    return figure3_curve()


@pytest.fixture
def circle():
    return unit_circle()


@pytest.fixture
def configs_dir() -> Path:
    return CONFIGS_DIR
