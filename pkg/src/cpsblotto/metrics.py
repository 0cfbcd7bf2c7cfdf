"""Cyber effects, interdependency values, and battlefield value derivation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .model import CpsTopology, GameParams, ValidationError
from .cascade import physical_effect_matrix


@dataclass(frozen=True)
class ShortestPathTable:
    """All-pairs shortest path lengths; inf marks unreachable pairs."""

    lengths: np.ndarray
    reachable: np.ndarray


@dataclass(frozen=True)
class EffectMatrices:
    """Per-failure effect matrices: column i holds the effects of losing i."""

    physical: np.ndarray
    cyber: np.ndarray
    interdependency: np.ndarray


@dataclass(frozen=True)
class BattlefieldValues:
    """Attacker values h and defender values g, both summing to 1."""

    attacker: np.ndarray
    defender: np.ndarray


def all_pairs_shortest_paths(adjacency: np.ndarray,
                             removed: int | None = None) -> ShortestPathTable:
    """Exact shortest-path lengths between all node pairs.

    Args:
        adjacency: symmetric weight matrix, 0 meaning no link.
        removed: optional node to exclude; its row/column come back inf.

    Returns:
        ShortestPathTable over the full index set.
    """
    A = np.asarray(adjacency, dtype=float)
    n = A.shape[0]
    if removed is not None:
        A = A.copy()
        A[removed, :] = 0.0
        A[:, removed] = 0.0
    dist = shortest_path(csr_matrix(A), method="D", directed=False)
    if removed is not None:
        dist[removed, :] = np.inf
        dist[:, removed] = np.inf
        dist[removed, removed] = 0.0
    reachable = np.isfinite(dist)
    return ShortestPathTable(lengths=dist, reachable=reachable)


def cyber_effect_matrix(topology: CpsTopology, t0: float,
                        disconnection_penalty: float | None = None
                        ) -> np.ndarray:
    """Shortest-path degradation caused by each single-node removal.

    Entry (j, i) compares node j's summed shortest-path lengths to all other
    survivors after removing i against the same sums before removal, plus the
    baseline t0.  Pairs disconnected by the removal contribute a fixed
    penalty, by default n times the longest finite base path length.

    Args:
        topology: validated topology; its cyber graph must be connected.
        t0: baseline effect when the removal changes no path.
        disconnection_penalty: path length charged for pairs the removal
            disconnects; default n * max finite base length.

    Returns:
        n x n matrix with zero diagonal.

    Raises:
        ValidationError: the base cyber graph is disconnected.
    """
    n = topology.n
    base = all_pairs_shortest_paths(topology.cyber_adjacency)
    if not base.reachable.all():
        bad = np.argwhere(~base.reachable)
        raise ValidationError(
            f"cyber graph is disconnected (e.g. pair {tuple(bad[0])})")
    if disconnection_penalty is None:
        longest = base.lengths[np.isfinite(base.lengths)].max() if n > 1 else 0.0
        disconnection_penalty = n * longest

    T = np.zeros((n, n))
    others = ~np.eye(n, dtype=bool)
    for i in range(n):
        sub = all_pairs_shortest_paths(topology.cyber_adjacency, removed=i)
        capped = np.where(np.isfinite(sub.lengths), sub.lengths,
                          disconnection_penalty)
        keep = others.copy()
        keep[:, i] = False
        num = (capped * keep).sum(axis=1)
        den = (base.lengths * keep).sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(den > 0, num / np.where(den > 0, den, 1.0), 1.0)
        T[:, i] = ratio - 1.0 + t0
        T[i, i] = 0.0
    return T


def interdependency_matrix(physical: np.ndarray, cyber: np.ndarray,
                           alpha: float, beta: float) -> np.ndarray:
    """Blend normalized physical and cyber effects, alpha + beta = 1.

    Each matrix is scaled by its own global maximum (left as zero when the
    maximum is zero), so entries land in [0, 1].
    """
    if abs(alpha + beta - 1.0) > 1e-12:
        raise ValidationError("alpha + beta must equal 1")
    e_max = physical.max()
    t_max = cyber.max()
    e_norm = physical / e_max if e_max > 0 else np.zeros_like(physical)
    t_norm = cyber / t_max if t_max > 0 else np.zeros_like(cyber)
    return alpha * e_norm + beta * t_norm


def effective_values(h: np.ndarray, V: np.ndarray) -> np.ndarray:
    """Defender values: own weight plus interdependency-weighted damage.

    Node i's raw value is h_i plus the sum over other nodes j of
    V[j, i] * h_j, the damage i's failure would inflict elsewhere; the vector
    is then normalized to sum 1.

    Args:
        h: attacker values, positive, summing to 1.
        V: interdependency matrix with zero diagonal, entries in [0, 1].

    Returns:
        Defender value vector g, positive, summing to 1.
    """
    h = np.asarray(h, dtype=float)
    V = np.asarray(V, dtype=float)
    if np.any(np.diag(V) != 0):
        raise ValidationError("interdependency matrix must have zero diagonal")
    raw = h + V.T @ h
    return raw / raw.sum()


def effect_matrices(topology: CpsTopology, params: GameParams
                    ) -> EffectMatrices:
    """Run both effect pipelines and blend them."""
    physical = physical_effect_matrix(topology)
    cyber = cyber_effect_matrix(topology, params.t0)
    V = interdependency_matrix(physical, cyber, params.alpha, params.beta)
    return EffectMatrices(physical=physical, cyber=cyber, interdependency=V)


def battlefield_values(topology: CpsTopology, params: GameParams
                       ) -> BattlefieldValues:
    """Derive the game's value vectors from the topology.

    Attacker values are the normalized human-interaction weights; defender
    values fold in the interdependency matrix.
    """
    h = topology.human_interaction
    matrices = effect_matrices(topology, params)
    g = effective_values(h, matrices.interdependency)
    return BattlefieldValues(attacker=h, defender=g)
