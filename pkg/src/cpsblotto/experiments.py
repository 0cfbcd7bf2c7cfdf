"""Reusable experiment drivers: payoff tables, sweeps, allocation bands."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import __version__
from .model import (CpsTopology, GameParams, ValidationError,
                    generate_concentric, normalize_weights)
from .metrics import battlefield_values
from .equilibrium import (EquilibriumSolution, complete_info_payoffs,
                          solve_equilibrium)
from .sampling import allocation_band_probability

COLUMN_SUM_TOL = 2e-3


@dataclass(frozen=True)
class SweepSpec:
    """A one-dimensional sweep: kind, strictly increasing points in (0, 1]."""

    kind: str
    points: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.kind not in ("flow", "symmetry"):
            raise ValidationError(f"unknown sweep kind {self.kind!r}")
        if not self.points:
            raise ValidationError("sweep needs at least one point")
        last = 0.0
        for p in self.points:
            if not (0.0 < p <= 1.0) or p <= last:
                raise ValidationError(
                    "sweep points must be strictly increasing within (0, 1]")
            last = p


DEFAULT_SWEEP_POINTS = tuple(round(0.1 * k, 10) for k in range(1, 11))
DEFAULT_LEVELS = ((1, 4.0), (3, 2.0), (5, 1.0))


def payoff_table(h: np.ndarray, g_columns: dict[str, np.ndarray],
                 budget_d: float, budget_a: float
                 ) -> list[tuple[str, float, float]]:
    """Equilibrium payoffs for several defender-value columns over one h.

    Columns whose sum strays from 1 by more than COLUMN_SUM_TOL are rejected;
    closer columns are renormalized exactly.

    Returns:
        Rows (column name, defender payoff, attacker payoff), h first.
    """
    h = np.asarray(h, dtype=float)
    if abs(h.sum() - 1.0) > COLUMN_SUM_TOL:
        raise ValidationError(f"h column sums to {h.sum():.6g}, expected 1")
    h = normalize_weights(h)
    rows = []
    for name, column in [("h", h)] + list(g_columns.items()):
        g = np.asarray(column, dtype=float)
        if g.shape != h.shape:
            raise ValidationError(f"column {name!r} has wrong length")
        if abs(g.sum() - 1.0) > COLUMN_SUM_TOL:
            raise ValidationError(
                f"column {name!r} sums to {g.sum():.6g}, expected 1")
        g = normalize_weights(g)
        solution = solve_equilibrium(g, h, budget_d, budget_a)
        rows.append((name, solution.payoff_d, solution.payoff_a))
    return rows


def _payoff_ratios(solution: EquilibriumSolution, budget_d: float,
                   budget_a: float) -> tuple[float, float]:
    base_d, base_a = complete_info_payoffs(budget_d, budget_a)
    return solution.payoff_d / base_d, solution.payoff_a / base_a


def flow_capacity_sweep(points: tuple[float, ...] = DEFAULT_SWEEP_POINTS,
                        levels: tuple[tuple[int, float], ...] = DEFAULT_LEVELS,
                        budget_d: float = 2.5, budget_a: float = 1.0,
                        alpha: float = 0.3, beta: float = 0.7,
                        t0: float | None = None
                        ) -> list[tuple[float, float, float]]:
    """Payoff ratios versus the flow/capacity fill of a layered topology.

    Each point regenerates the topology with flows = point * capacity, runs
    the full value pipeline, solves the game, and reports both payoffs
    relative to their no-interdependency baselines.

    Returns:
        Rows (fill ratio, defender payoff ratio, attacker payoff ratio).
    """
    SweepSpec(kind="flow", points=tuple(points))
    rows = []
    for fill in points:
        topology = generate_concentric(list(levels), flow_fill=fill)
        if t0 is None:
            t0_val = 1.0 / (topology.n - 1)
        else:
            t0_val = t0
        params = GameParams(alpha=alpha, beta=beta, t0=t0_val,
                            budget_d=budget_d, budget_a=budget_a)
        values = battlefield_values(topology, params)
        solution = solve_equilibrium(values.defender, values.attacker,
                                     budget_d, budget_a)
        ratio_d, ratio_a = _payoff_ratios(solution, budget_d, budget_a)
        rows.append((float(fill), ratio_d, ratio_a))
    return rows


def symmetry_sweep(h: np.ndarray,
                   points: tuple[float, ...] = DEFAULT_SWEEP_POINTS,
                   budget_d: float = 2.5, budget_a: float = 1.0,
                   g_base: np.ndarray | None = None
                   ) -> list[tuple[float, float, float, float]]:
    """Payoff ratios as defender values interpolate toward uniform.

    At interpolation weight theta the defender values are
    g(theta) = (1 - theta) * g_base + theta * uniform.  g_base defaults to h
    itself, making theta = 0 the interdependency-free game; passing a
    scenario's derived values starts the sweep at that scenario's ratio
    instead.  The deviation column is the standard deviation of g(theta),
    which shrinks as theta grows.

    Returns:
        Rows (theta, deviation of g, defender ratio, attacker ratio),
        ordered by theta ascending.
    """
    SweepSpec(kind="symmetry", points=tuple(points))
    h = normalize_weights(np.asarray(h, dtype=float))
    if g_base is None:
        g_base = h
    else:
        g_base = normalize_weights(np.asarray(g_base, dtype=float))
        if g_base.shape != h.shape:
            raise ValueError("g_base must have the same length as h")
    uniform = np.full(h.size, 1.0 / h.size)
    rows = []
    for theta in points:
        g = (1.0 - theta) * g_base + theta * uniform
        solution = solve_equilibrium(g, h, budget_d, budget_a)
        ratio_d, ratio_a = _payoff_ratios(solution, budget_d, budget_a)
        rows.append((float(theta), float(g.std()), ratio_d, ratio_a))
    return rows


def band_probability_table(h: np.ndarray, node_ids: tuple[int, ...],
                           points: tuple[float, ...] = DEFAULT_SWEEP_POINTS,
                           epsilon: float = 0.05, samples: int = 100_000,
                           seed: int = 0, budget_d: float = 2.5,
                           budget_a: float = 1.0,
                           g_base: np.ndarray | None = None
                           ) -> list[tuple[float, float, int, str, float, float]]:
    """Probability of allocating near the value share, across a symmetry sweep.

    For every sweep point theta (defender values interpolating from g_base,
    default h, toward uniform) and every watched node, estimates the
    probability that a sampled allocation puts within epsilon of the value
    share on that node: share g_i(theta) for the defender, h_i for the
    attacker.

    Returns:
        Rows (theta, deviation of g, node, owner, share, probability).
    """
    SweepSpec(kind="symmetry", points=tuple(points))
    h = normalize_weights(np.asarray(h, dtype=float))
    if g_base is None:
        g_base = h
    else:
        g_base = normalize_weights(np.asarray(g_base, dtype=float))
        if g_base.shape != h.shape:
            raise ValueError("g_base must have the same length as h")
    uniform = np.full(h.size, 1.0 / h.size)
    rows = []
    for index, theta in enumerate(points):
        g = (1.0 - theta) * g_base + theta * uniform
        solution = solve_equilibrium(g, h, budget_d, budget_a)
        deviation = float(g.std())
        for node in node_ids:
            for owner, marginals, share in (
                    ("defender", solution.marginals_d, float(g[node])),
                    ("attacker", solution.marginals_a, float(h[node]))):
                prob = allocation_band_probability(
                    marginals, node, share, epsilon, samples,
                    seed=seed + 7919 * index + 13 * node
                    + (1 if owner == "attacker" else 0))
                rows.append((float(theta), deviation, int(node), owner,
                             share, prob))
    return rows


# ---------------------------------------------------------------------------
# CSV output
# ---------------------------------------------------------------------------

def format_value(value: float | int | str) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{value:.9g}"


def csv_lines(header: list[str], rows: list[tuple], units: str) -> list[str]:
    """CSV content with a version/units comment line; 9 significant digits."""
    lines = [f"# cpsblotto v{__version__}; units: {units}",
             ",".join(header)]
    for row in rows:
        lines.append(",".join(format_value(value) for value in row))
    return lines


def write_csv(path: str, header: list[str], rows: list[tuple],
              units: str) -> None:
    content = "\n".join(csv_lines(header, rows, units)) + "\n"
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(content)


def matrix_rows(matrix: np.ndarray) -> list[tuple[int, int, float]]:
    """Long-format (row j, column i, value) triplets of a matrix."""
    n = matrix.shape[0]
    return [(j, i, float(matrix[j, i])) for j in range(n) for i in range(n)]


def vector_rows(vector: np.ndarray) -> list[tuple[int, float]]:
    return [(i, float(value)) for i, value in enumerate(vector)]
