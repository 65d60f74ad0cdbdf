"""
Experiment harness: single runs written as CSV time series and beta x topology
sweeps of mean profit.
"""

from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd

from src.cli.config_loader import ExperimentConfig
from src.core.config import get_settings
from src.core.exceptions import MsadError, OutputError, SimulationError, SweepError
from src.core.logger import LogContext, get_logger
from src.model.topologies import TopologyKind
from src.simulation.engine import RunResult, mean_profit, run
from src.utils.decorators import timing

logger = get_logger(__name__)

DEFAULT_WINDOW: Tuple[int, int] = (0, 800)


def simulate_config(config: ExperimentConfig) -> RunResult:
    """Run the experiment a config describes."""
    return run(
        config.kind,
        config.model_params(),
        config.build_environment(),
        config.total_steps,
        total_assets=config.total_assets,
    )


def write_frame(frame: pd.DataFrame, path: Path, index: bool = False) -> Path:
    """
    Write a DataFrame as CSV with the configured float format.

    Raises:
        OutputError: On any I/O failure, carrying the path
    """
    settings = get_settings()
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(
            path,
            index=index,
            float_format=settings.csv_float_format,
            lineterminator="\n",
        )
    except OSError as e:
        raise OutputError(f"Cannot write {path}: {e.strerror or e}", path=str(path))
    logger.info(f"Wrote {len(frame)} rows to {path}", extra={"path": str(path)})
    return path


def run_experiment(config: ExperimentConfig, out: Optional[Path] = None) -> Tuple[RunResult, Path]:
    """
    Run one experiment and write its time series.

    Columns: step, profit, relocated_pct, assets_region_1..M, node_count, leaf_count.

    Args:
        config: Validated experiment config
        out: Output path; falls back to ``config.output_path`` then a name
            derived from topology and beta, resolved under the output dir

    Returns:
        (RunResult, path written)
    """
    settings = get_settings()
    target = out or config.output_path or f"{config.topology}_beta{config.beta:g}.csv"
    path = settings.resolve_output(Path(target))

    with LogContext(logger, topology=config.topology, beta=config.beta) as ctx:
        result = simulate_config(config)
        write_frame(result.to_frame(), path)

        window_end = min(2 * config.period, config.total_steps)
        leaves = result.leaf_regions()
        ctx.log(
            "info",
            f"Run finished: {len(result.final_graph)} nodes, {len(leaves)} leaves, "
            f"mean profit {mean_profit(result, 0, window_end):.6g} over [0, {window_end})",
            leaves=[list(regions) for regions, _ in leaves],
        )
    return result, path


def _sweep_cell(config: ExperimentConfig, window: Tuple[int, int]) -> float:
    result = run(
        config.kind,
        config.model_params(),
        config.build_environment(),
        window[1],
        total_assets=config.total_assets,
    )
    return mean_profit(result, window[0], window[1])


def _cell_config(base: ExperimentConfig, topology: str, beta: float) -> ExperimentConfig:
    return base.with_overrides(topology=topology, beta=beta, growable=None)


@timing
def run_sweep(
    topologies: Sequence[str],
    betas: Sequence[float],
    base: ExperimentConfig,
    window: Tuple[int, int] = DEFAULT_WINDOW,
    workers: Optional[int] = None,
) -> pd.DataFrame:
    """
    Mean profit for every (beta, topology) pair.

    Each cell is an independent run of ``window[1]`` steps whose profit is
    averaged over ``[window[0], window[1])``. Growth is enabled for the
    growable topology only.

    Args:
        topologies: Topology names, in column order
        betas: Beta values, in row order
        base: Config supplying every other parameter
        window: Mean-profit window
        workers: Process count; defaults to the configured sweep workers

    Returns:
        DataFrame indexed by beta with one column per topology

    Raises:
        SimulationError: On empty inputs or an empty window
        SweepError: If a cell fails, naming the cell
    """
    if not topologies or not betas:
        raise SimulationError("Sweep needs at least one topology and one beta")
    start, stop = window
    if not 0 <= start < stop:
        raise SimulationError(
            f"Invalid mean-profit window [{start}, {stop})",
            details={"start": start, "stop": stop},
        )
    names = [TopologyKind.from_name(t).value for t in topologies]
    workers = workers or get_settings().sweep_workers

    cells: List[Tuple[str, float, ExperimentConfig]] = []
    for beta in betas:
        for name in names:
            try:
                cells.append((name, beta, _cell_config(base, name, beta)))
            except MsadError as e:
                raise SweepError(
                    f"Sweep cell ({name}, beta={beta}) failed: {e.message}",
                    topology=name,
                    beta=beta,
                    cause=e.message,
                )

    logger.info(
        f"Sweeping {len(names)} topologies x {len(betas)} betas "
        f"over [{start}, {stop}) with {workers} worker(s)"
    )

    values: Dict[Tuple[str, float], float] = {}
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                (name, beta, pool.submit(_sweep_cell, config, window))
                for name, beta, config in cells
            ]
            for name, beta, future in futures:
                values[(name, beta)] = _collect(name, beta, future.result)
    else:
        for name, beta, config in cells:
            values[(name, beta)] = _collect(name, beta, lambda: _sweep_cell(config, window))

    table = pd.DataFrame(
        [[values[(name, beta)] for name in names] for beta in betas],
        index=pd.Index(list(betas), name="beta"),
        columns=names,
    )
    return table


def _collect(name: str, beta: float, compute) -> float:
    try:
        return compute()
    except Exception as e:
        cause = getattr(e, "message", str(e))
        raise SweepError(
            f"Sweep cell ({name}, beta={beta}) failed: {cause}",
            topology=name,
            beta=beta,
            cause=cause,
        ) from e


def write_sweep(table: pd.DataFrame, out: Path) -> Path:
    """Write a sweep table with its beta index as the first column."""
    path = get_settings().resolve_output(Path(out))
    return write_frame(table, path, index=True)
