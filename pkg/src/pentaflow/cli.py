"""pentaflow 命令行：map / invariant / flow / figure / converge。

退出码：0 成功，1 输入错误，2 几何退化，3 声称检查失败。
"""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Callable, List, Optional

import click
import typer
from loguru import logger

from .config import log_level
from .errors import ConfigError, CurveError, DegenerateImage, GeometryError
from .experiments.runner import (
    ExitCode,
    RunOutcome,
    exit_code_for,
    run_converge,
    run_figure,
    run_flow,
    run_invariant,
    run_map,
)

app = typer.Typer(help="Pentagram map numerical lab", add_completion=False, no_args_is_help=True)


def configure_logging(level: Optional[str] = None) -> None:
    """只保留一个 stderr sink，stdout 留给结果。"""
    logger.remove()
    logger.add(sys.stderr, level=level or log_level(), format="{time:HH:mm:ss} | {level:<7} | {message}")


def _run(action: Callable[[], RunOutcome]) -> None:
    configure_logging()
    try:
        outcome = action()
    except (GeometryError, CurveError, ConfigError, FileNotFoundError, ValueError) as exc:
        code = exit_code_for(exc)
        if isinstance(exc, DegenerateImage) and exc.iteration is not None:
            typer.echo(f"error: degeneracy at iteration {exc.iteration}: {exc}", err=True)
        else:
            typer.echo(f"error: {exc}", err=True)
        logger.debug(f"{type(exc).__name__} -> exit {int(code)}")
        raise typer.Exit(int(code))
    for line in outcome.lines:
        typer.echo(line)
    if outcome.manifest_path is not None:
        typer.echo(f"manifest {outcome.manifest_path}")
    raise typer.Exit(int(outcome.exit_code))


TOLERANCE_HELP = "覆盖容差，KEY=VAL，可重复（例如 slope_band=0.4）"


@app.command("map")
def map_cmd(
    input: Optional[Path] = typer.Option(None, "--input", "-i", help="多边形 CSV（x,y 每行一个顶点）"),
    iterations: int = typer.Option(1, "--iterations", "-k", help="应用 T 的次数"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="输出 CSV 路径"),
    output_dir: Optional[Path] = typer.Option(None, "--output-dir", help="输出目录（未给 --output 时）"),
    random_n: Optional[int] = typer.Option(None, "--random-n", help="改用随机凸 n 边形作为输入"),
    seed: int = typer.Option(0, "--seed", help="随机多边形种子"),
) -> None:
    """把 T^iterations(V) 写成多边形 CSV。"""
    _run(lambda: run_map(input, iterations, output, output_dir=output_dir, random_n=random_n, seed=seed))


@app.command("invariant")
def invariant_cmd(
    input: Optional[Path] = typer.Option(None, "--input", "-i", help="多边形 CSV"),
    iterations: int = typer.Option(5, "--iterations", "-k", help="迭代步数"),
    output_dir: Optional[Path] = typer.Option(None, "--output-dir", help="输出目录"),
    random_n: Optional[int] = typer.Option(None, "--random-n", help="改用随机凸 n 边形作为输入"),
    seed: int = typer.Option(0, "--seed", help="随机多边形种子"),
    tolerance: Optional[List[str]] = typer.Option(None, "--tolerance", help=TOLERANCE_HELP),
    perturb_at: Optional[int] = typer.Option(None, "--perturb-at", help="测试钩子：第 K 步后扰动一个顶点"),
) -> None:
    """打印 f(V) 和逐步漂移表。"""
    _run(
        lambda: run_invariant(
            input,
            iterations,
            output_dir=output_dir,
            random_n=random_n,
            seed=seed,
            tolerance_overrides=tolerance,
            perturb_at=perturb_at,
        )
    )


@app.command("flow")
def flow_cmd(
    config: Path = typer.Option(..., "--config", "-c", help="实验 YAML"),
    claim: str = typer.Option(..., "--claim", help="lemma32 | lemma34 | theorem31 | eq4 | corollary35"),
    expansion: Optional[str] = typer.Option(None, "--expansion", help="stated | rederived（默认取配置）"),
    strict_order: bool = typer.Option(False, "--strict-order", help="要求斜率落在双侧区间内"),
    output_dir: Optional[Path] = typer.Option(None, "--output-dir", help="输出目录"),
    tolerance: Optional[List[str]] = typer.Option(None, "--tolerance", help=TOLERANCE_HELP),
) -> None:
    """残差扫描 + 收敛阶拟合。"""
    _run(
        lambda: run_flow(
            config,
            claim,
            expansion=expansion,
            strict=strict_order,
            output_dir=output_dir,
            tolerance_overrides=tolerance,
        )
    )


@app.command("figure")
def figure_cmd(
    config: Path = typer.Option(..., "--config", "-c", help="实验 YAML"),
    which: str = typer.Option("fig3", "--which", help="fig3 | fig4"),
    expansion: Optional[str] = typer.Option(None, "--expansion", help="stated | rederived（默认取配置）"),
    output_dir: Optional[Path] = typer.Option(None, "--output-dir", help="输出目录"),
    tolerance: Optional[List[str]] = typer.Option(None, "--tolerance", help=TOLERANCE_HELP),
) -> None:
    """逐 n 输出两条曲线的数据和 max-gap 汇总。"""
    _run(
        lambda: run_figure(
            config,
            which,
            expansion=expansion,
            output_dir=output_dir,
            tolerance_overrides=tolerance,
        )
    )


@app.command("converge")
def converge_cmd(
    input: Optional[Path] = typer.Option(None, "--input", "-i", help="凸多边形 CSV"),
    steps: int = typer.Option(10, "--steps", "-k", help="迭代步数"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="轨迹 CSV 路径"),
    output_dir: Optional[Path] = typer.Option(None, "--output-dir", help="输出目录"),
    random_n: Optional[int] = typer.Option(None, "--random-n", help="改用随机凸 n 边形作为输入"),
    seed: int = typer.Option(0, "--seed", help="随机多边形种子"),
    tolerance: Optional[List[str]] = typer.Option(None, "--tolerance", help=TOLERANCE_HELP),
) -> None:
    """直径衰减轨迹与 log(diameter) ~ step 拟合。"""
    _run(
        lambda: run_converge(
            input,
            steps,
            output=output,
            output_dir=output_dir,
            random_n=random_n,
            seed=seed,
            tolerance_overrides=tolerance,
        )
    )


def main() -> None:
    """console script 入口：click 的用法错误也归到退出码 1。"""
    try:
        code = app(standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.ClickException as exc:
        exc.show()
        sys.exit(int(ExitCode.INPUT_ERROR))
    except click.exceptions.Abort:
        sys.exit(int(ExitCode.INPUT_ERROR))
    sys.exit(code if isinstance(code, int) else 0)


if __name__ == "__main__":
    main()
