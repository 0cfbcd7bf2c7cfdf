"""Monte Carlo sampling of joint allocations from equilibrium marginals."""

from __future__ import annotations

import numpy as np

from .equilibrium import MarginalDistribution

MIN_BAND_SAMPLES = 1000
_MAX_RESAMPLE = 1000


def draw_marginals(marginals: tuple[MarginalDistribution, ...],
                   rng: np.random.Generator, count: int = 1) -> np.ndarray:
    """Independent draws from each marginal, one row per sample.

    Atom draws yield 0; otherwise the value is uniform on the support.
    """
    n = len(marginals)
    atoms = np.array([m.atom_at_zero for m in marginals])
    uppers = np.array([m.support_upper for m in marginals])
    hit_atom = rng.random((count, n)) < atoms
    values = rng.random((count, n)) * uppers
    return np.where(hit_atom, 0.0, values)


def sample_allocations(marginals: tuple[MarginalDistribution, ...],
                       budget: float, count: int,
                       rng: np.random.Generator) -> np.ndarray:
    """Draw joint allocations on the budget simplex.

    Each row is drawn independently from the marginals and rescaled by
    budget / row-sum so it lands exactly on the simplex; all-zero rows (every
    marginal hit its atom) are redrawn.

    Returns:
        (count, n) array whose rows sum to `budget`.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    samples = draw_marginals(marginals, rng, count)
    for _ in range(_MAX_RESAMPLE):
        sums = samples.sum(axis=1)
        dead = sums == 0.0
        if not dead.any():
            break
        samples[dead] = draw_marginals(marginals, rng, int(dead.sum()))
    else:
        raise RuntimeError("could not draw a non-zero allocation")
    return samples * (budget / samples.sum(axis=1, keepdims=True))


def sample_allocation(marginals: tuple[MarginalDistribution, ...],
                      budget: float, rng: np.random.Generator | int | None = None
                      ) -> np.ndarray:
    """Single joint allocation summing exactly to `budget`."""
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    return sample_allocations(marginals, budget, 1, rng)[0]


def allocation_band_probability(marginals: tuple[MarginalDistribution, ...],
                                battlefield: int, share: float,
                                epsilon: float, samples: int,
                                seed: int | None = 0) -> float:
    """Estimate P(|r_i / budget - share| <= epsilon) under joint sampling.

    Args:
        marginals: one player's marginals, one per battlefield.
        battlefield: index of the battlefield to watch.
        share: target budget fraction, in (0, 1).
        epsilon: half-width of the acceptance band, in (0, 1).
        samples: Monte Carlo sample count, at least MIN_BAND_SAMPLES.
        seed: RNG seed (or a Generator).

    Returns:
        The estimated probability.
    """
    if samples < MIN_BAND_SAMPLES:
        raise ValueError(f"samples must be >= {MIN_BAND_SAMPLES}")
    if not (0.0 < share < 1.0 and 0.0 < epsilon < 1.0):
        raise ValueError("share and epsilon must lie in (0, 1)")
    rng = seed if isinstance(seed, np.random.Generator) \
        else np.random.default_rng(seed)
    # The budget cancels out of r_i / budget, so sample on the unit simplex.
    allocations = sample_allocations(marginals, 1.0, samples, rng)
    fractions = allocations[:, battlefield]
    return float(np.mean(np.abs(fractions - share) <= epsilon))
