"""Analytic equilibrium of the two-player resource-allocation game.

Battlefield i is worth g_i to the defender and h_i to the attacker (both
vectors positive and summing to 1).  Players split budgets R_D >= R_A across
battlefields simultaneously; the larger allocation wins a battlefield, ties
pay nobody.  The mixed equilibrium is characterized by two multipliers
(lambda_D, lambda_A): on battlefields the defender favors, the defender
randomizes uniformly on [0, h_i/lambda_A] while the attacker mixes an atom at
zero with a uniform part on the same support; on attacker-favored
battlefields (those in omega_a, where h_i/g_i exceeds mu = lambda_A/lambda_D)
the roles mirror.  mu solves a cubic determined by the budget ratio and the
partition; the partition in turn is fixed by mu, so the solver scans all
threshold partitions of the sorted ratios h_i/g_i.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

CUBIC_RESIDUAL_RTOL = 1e-10
BUDGET_IDENTITY_RTOL = 1e-9


class EquilibriumRegimeError(RuntimeError):
    """No consistent partition/multiplier pair exists for these inputs."""


@dataclass(frozen=True)
class MarginalDistribution:
    """One player's equilibrium marginal on one battlefield.

    CDF(r) = atom_at_zero + (1 - atom_at_zero) * r / support_upper for
    r in [0, support_upper], so the distribution is an atom at zero plus a
    uniform segment.
    """

    battlefield: int
    owner: str  # "defender" or "attacker"
    atom_at_zero: float
    support_upper: float

    def cdf(self, r: float) -> float:
        if r < 0.0:
            return 0.0
        if r >= self.support_upper or self.support_upper == 0.0:
            return 1.0
        return self.atom_at_zero + (1.0 - self.atom_at_zero) * (
            r / self.support_upper)

    def mean(self) -> float:
        return (1.0 - self.atom_at_zero) * self.support_upper / 2.0


@dataclass(frozen=True)
class EquilibriumSolution:
    """Full analytic solution of one game instance."""

    mu: float
    lambda_d: float
    lambda_a: float
    omega_a: frozenset[int]
    marginals_d: tuple[MarginalDistribution, ...]
    marginals_a: tuple[MarginalDistribution, ...]
    payoff_d: float
    payoff_a: float
    cubic_residual: float


def _check_values(g: np.ndarray, h: np.ndarray, budget_d: float,
                  budget_a: float) -> tuple[np.ndarray, np.ndarray]:
    g = np.asarray(g, dtype=float)
    h = np.asarray(h, dtype=float)
    if g.shape != h.shape or g.ndim != 1 or g.size == 0:
        raise ValueError("g and h must be equal-length non-empty vectors")
    if np.any(g <= 0) or np.any(h <= 0):
        raise EquilibriumRegimeError("battlefield values must be positive")
    if abs(g.sum() - 1.0) > 1e-6 or abs(h.sum() - 1.0) > 1e-6:
        raise ValueError("g and h must each sum to 1")
    if budget_d <= 0 or budget_a <= 0:
        raise ValueError("budgets must be positive")
    if budget_d < budget_a:
        raise ValueError("defender budget must be >= attacker budget")
    return g, h


def _cubic_terms(g: np.ndarray, h: np.ndarray, q: float,
                 members: np.ndarray) -> tuple[float, float, float, float]:
    """Coefficients of the partition's multiplier polynomial.

    a mu^3 + b mu^2 + c mu + d = 0 with a, b from the attacker-favored side
    and c, d from the defender-favored side; q is the budget ratio R_D/R_A.
    """
    inside = members
    outside = ~members
    a = float((g[inside] ** 2 / h[inside]).sum())
    b = float(-q * g[inside].sum())
    c = float(h[outside].sum())
    d = float(-q * (h[outside] ** 2 / g[outside]).sum())
    return a, b, c, d


def _cubic_value(coeffs: tuple[float, float, float, float],
                 mu: float) -> float:
    a, b, c, d = coeffs
    return ((a * mu + b) * mu + c) * mu + d


def _cubic_scale(coeffs: tuple[float, float, float, float],
                 mu: float) -> float:
    a, b, c, d = coeffs
    return max(abs(a * mu ** 3), abs(b * mu ** 2), abs(c * mu), abs(d), 1e-300)


def _polish_root(coeffs: tuple[float, float, float, float], mu: float,
                 lo: float, hi: float) -> float:
    """Newton refinement of a cubic root, kept inside [lo, hi]."""
    a, b, c, _ = coeffs
    for _ in range(60):
        value = _cubic_value(coeffs, mu)
        if value == 0.0:
            break
        slope = (3.0 * a * mu + 2.0 * b) * mu + c
        if slope == 0.0:
            break
        step = value / slope
        nxt = mu - step
        if not (lo <= nxt <= hi):
            nxt = min(max(nxt, lo), hi)
        if nxt == mu:
            break
        mu = nxt
    return mu


def _real_roots(coeffs: tuple[float, float, float, float]) -> list[float]:
    poly = np.array(coeffs, dtype=float)
    nonzero = np.flatnonzero(poly != 0.0)
    if nonzero.size == 0:
        return []
    poly = poly[nonzero[0]:]
    if poly.size == 1:
        return []
    roots = np.roots(poly)
    out = []
    for root in roots:
        if abs(root.imag) < 1e-9 * max(1.0, abs(root.real)):
            out.append(float(root.real))
    return out


def solve_mu(g: np.ndarray, h: np.ndarray, budget_d: float, budget_a: float
             ) -> tuple[float, frozenset[int]]:
    """Find the multiplier ratio mu = lambda_A / lambda_D and the partition.

    Scans every threshold partition of the sorted ratios h_i/g_i and keeps
    the root of that partition's cubic lying in the partition's consistency
    interval.  Battlefield i is attacker-favored (in omega_a) exactly when
    h_i/g_i > mu, with ratio ties resolved to the defender-favored side.

    Returns:
        (mu, omega_a).

    Raises:
        EquilibriumRegimeError: no partition admits a consistent root.
    """
    g, h = _check_values(g, h, budget_d, budget_a)
    n = g.size
    q = budget_d / budget_a
    ratios = h / g
    order = np.argsort(ratios, kind="stable")
    sorted_ratios = ratios[order]

    for split in range(n, -1, -1):
        # omega_a holds the (n - split) largest ratios.
        members = np.zeros(n, dtype=bool)
        members[order[split:]] = True
        lo = float(sorted_ratios[split - 1]) if split >= 1 else 0.0
        hi = float(sorted_ratios[split]) if split < n else np.inf
        if split < n and hi <= lo:
            # Tied ratios collapse this interval; the shared boundary value
            # is reachable through the interval that starts at it.
            continue
        coeffs = _cubic_terms(g, h, q, members)
        for root in _real_roots(coeffs):
            if root <= 0.0:
                continue
            mu = _polish_root(coeffs, root,
                              max(lo, np.nextafter(0.0, 1.0)), hi)
            if not (lo <= mu < hi) or mu <= 0.0:
                continue
            # Polishing clamps into the interval, so a root belonging to a
            # different partition can land on the boundary; only a genuine
            # root of this partition's cubic counts.
            if abs(_cubic_value(coeffs, mu)) > (CUBIC_RESIDUAL_RTOL
                                                * _cubic_scale(coeffs, mu)):
                continue
            induced = ratios > mu
            if np.array_equal(induced, members):
                return mu, frozenset(int(i) for i in np.flatnonzero(members))
    raise EquilibriumRegimeError(
        "no equilibrium in solver's regime: no threshold partition of "
        "h_i/g_i admits a consistent multiplier ratio")


def solve_lambdas(mu: float, g: np.ndarray, h: np.ndarray, budget_d: float,
                  budget_a: float, omega_a: frozenset[int]
                  ) -> tuple[float, float]:
    """Recover (lambda_d, lambda_a) from mu via the attacker budget identity.

    The defender identity then holds automatically to the accuracy of the
    cubic root; it is re-checked at BUDGET_IDENTITY_RTOL.
    """
    g, h = _check_values(g, h, budget_d, budget_a)
    members = np.zeros(g.size, dtype=bool)
    members[list(omega_a)] = True
    outside = ~members
    spend_a = (g[members].sum() / 2.0
               + (h[outside] ** 2 / g[outside]).sum() / (2.0 * mu ** 2))
    lambda_d = spend_a / budget_a
    lambda_a = mu * lambda_d
    spend_d = (mu * (g[members] ** 2 / h[members]).sum() / 2.0
               + h[outside].sum() / (2.0 * mu))
    if abs(spend_d / lambda_d - budget_d) > BUDGET_IDENTITY_RTOL * budget_d:
        raise EquilibriumRegimeError(
            "budget identities are inconsistent at the computed multiplier")
    return lambda_d, lambda_a


def equilibrium_marginals(mu: float, lambda_d: float, lambda_a: float,
                          g: np.ndarray, h: np.ndarray,
                          omega_a: frozenset[int]
                          ) -> tuple[tuple[MarginalDistribution, ...],
                                     tuple[MarginalDistribution, ...]]:
    """Per-battlefield equilibrium marginals for both players.

    Defender-favored battlefields: defender uniform on [0, h_i/lambda_a],
    attacker atom 1 - h_i/(g_i mu) plus a uniform part on the same support.
    Attacker-favored battlefields mirror the roles with support g_i/lambda_d.

    Raises:
        EquilibriumRegimeError: an atom mass falls outside [0, 1], which
            signals an inconsistent partition.
    """
    marginals_d = []
    marginals_a = []
    for i in range(g.size):
        if i in omega_a:
            upper = g[i] / lambda_d
            atom_d = 1.0 - g[i] * mu / h[i]
            atom_a = 0.0
        else:
            upper = h[i] / lambda_a
            atom_d = 0.0
            atom_a = 1.0 - h[i] / (g[i] * mu)
        for atom in (atom_d, atom_a):
            if atom < -1e-12 or atom > 1.0 + 1e-12:
                raise EquilibriumRegimeError(
                    f"atom mass {atom} outside [0, 1] on battlefield {i}")
        marginals_d.append(MarginalDistribution(
            battlefield=i, owner="defender",
            atom_at_zero=min(max(atom_d, 0.0), 1.0),
            support_upper=float(upper)))
        marginals_a.append(MarginalDistribution(
            battlefield=i, owner="attacker",
            atom_at_zero=min(max(atom_a, 0.0), 1.0),
            support_upper=float(upper)))
    return tuple(marginals_d), tuple(marginals_a)


def expected_payoffs(mu: float, g: np.ndarray, h: np.ndarray,
                     omega_a: frozenset[int]) -> tuple[float, float]:
    """Expected payoffs by integrating the win probabilities.

    On defender-favored battlefield i the attacker wins with probability
    h_i / (2 g_i mu); attacker-favored battlefields mirror to a defender win
    probability of g_i mu / (2 h_i).  Ties carry zero probability mass.
    """
    g = np.asarray(g, dtype=float)
    h = np.asarray(h, dtype=float)
    members = np.zeros(g.size, dtype=bool)
    members[list(omega_a)] = True
    p_attacker_wins = np.where(members,
                               1.0 - g * mu / (2.0 * h),
                               h / (2.0 * g * mu))
    p_defender_wins = 1.0 - p_attacker_wins
    payoff_d = float((g * p_defender_wins).sum())
    payoff_a = float((h * p_attacker_wins).sum())
    return payoff_d, payoff_a


def solve_equilibrium(g: np.ndarray, h: np.ndarray, budget_d: float,
                      budget_a: float) -> EquilibriumSolution:
    """End-to-end analytic solution: partition, multipliers, marginals, payoffs."""
    g, h = _check_values(g, h, budget_d, budget_a)
    mu, omega_a = solve_mu(g, h, budget_d, budget_a)
    lambda_d, lambda_a = solve_lambdas(mu, g, h, budget_d, budget_a, omega_a)
    marginals_d, marginals_a = equilibrium_marginals(
        mu, lambda_d, lambda_a, g, h, omega_a)
    payoff_d, payoff_a = expected_payoffs(mu, g, h, omega_a)
    members = np.zeros(g.size, dtype=bool)
    members[list(omega_a)] = True
    coeffs = _cubic_terms(g, h, budget_d / budget_a, members)
    residual = abs(_cubic_value(coeffs, mu)) / _cubic_scale(coeffs, mu)
    return EquilibriumSolution(
        mu=float(mu), lambda_d=float(lambda_d), lambda_a=float(lambda_a),
        omega_a=omega_a, marginals_d=marginals_d, marginals_a=marginals_a,
        payoff_d=payoff_d, payoff_a=payoff_a, cubic_residual=float(residual))


def complete_info_payoffs(budget_d: float, budget_a: float
                          ) -> tuple[float, float]:
    """Closed-form payoffs when both players value battlefields identically."""
    if budget_d < budget_a:
        raise ValueError("defender budget must be >= attacker budget")
    payoff_a = budget_a / (2.0 * budget_d)
    return 1.0 - payoff_a, payoff_a


@dataclass(frozen=True)
class SingleDependencyReport:
    """Closed forms for the one-dependency special case (see
    single_dependency_case)."""

    g: np.ndarray
    mu: float
    lambda_d: float
    lambda_a: float
    payoff_d: float
    payoff_a: float
    payoff_d_baseline: float
    defender_gain: float
    variant_payoff_d: float
    variant_consistent: bool


def single_dependency_case(h: np.ndarray, budget_d: float, budget_a: float
                           ) -> SingleDependencyReport:
    """Closed-form equilibrium when exactly one interdependency exists.

    The failure of the highest-valued node (weight h_m) fully compromises the
    lowest-valued node (weight h_l) and no other coupling exists, so
    g_m = (h_m + h_l)/(1 + h_l) and g_i = h_i/(1 + h_l) elsewhere.  Valid
    when R_D/R_A >= (h_m + h_l)/(h_m + h_l - h_m h_l); every battlefield is
    then defender-favored and the attacker payoff stays R_A/(2 R_D).

    The report also carries a published closed-form variant of the defender
    payoff (variant_payoff_d) that disagrees with the integrated payoff for
    R_D != R_A; variant_consistent flags whether the two agree.

    Raises:
        ValueError: h has fewer than two entries, is degenerate, or the
            budget ratio is outside the theorem regime.
    """
    h = np.asarray(h, dtype=float)
    if h.ndim != 1 or h.size < 2:
        raise ValueError("h must hold at least two battlefield values")
    if np.any(h <= 0) or abs(h.sum() - 1.0) > 1e-6:
        raise ValueError("h must be positive and sum to 1")
    m = int(np.argmax(h))
    l = int(np.argmin(h))
    if m == l:
        raise ValueError("h must have distinct max and min entries")
    h_m, h_l = float(h[m]), float(h[l])

    denom = h_m + h_l - h_m * h_l
    bound = (h_m + h_l) / denom
    q = budget_d / budget_a
    if q < bound:
        raise ValueError(
            f"outside theorem regime: R_D/R_A = {q:.6g} < {bound:.6g}")

    g = h / (1.0 + h_l)
    g[m] = (h_m + h_l) / (1.0 + h_l)

    # mu = q * sum(h^2/g) with this g; the sum collapses to the closed form.
    shape = (1.0 + h_l) * denom / (h_m + h_l)
    mu = q * shape
    lambda_a = 1.0 / (2.0 * budget_d)
    lambda_d = lambda_a / mu

    payoff_a = budget_a / (2.0 * budget_d)
    payoff_d = 1.0 - 1.0 / (2.0 * mu)
    payoff_d_baseline, _ = complete_info_payoffs(budget_d, budget_a)

    # Published alternate closed form, kept only as a flagged cross-check.
    variant = 1.0 + (budget_d - 2.0 * budget_a) / (2.0 * budget_d) * shape
    return SingleDependencyReport(
        g=g, mu=float(mu), lambda_d=float(lambda_d), lambda_a=float(lambda_a),
        payoff_d=float(payoff_d), payoff_a=float(payoff_a),
        payoff_d_baseline=float(payoff_d_baseline),
        defender_gain=float(payoff_d - payoff_d_baseline),
        variant_payoff_d=float(variant),
        variant_consistent=bool(abs(variant - payoff_d) <= 1e-9))


def solution_document(solution: EquilibriumSolution) -> dict:
    """Serialize a solution to the documented JSON schema."""
    marginals = []
    for marginal in solution.marginals_a + solution.marginals_d:
        marginals.append({"i": marginal.battlefield, "owner": marginal.owner,
                          "atom": marginal.atom_at_zero,
                          "upper": marginal.support_upper})
    return {
        "mu": solution.mu,
        "lambda_A": solution.lambda_a,
        "lambda_D": solution.lambda_d,
        "omega_A": sorted(solution.omega_a),
        "marginals": marginals,
        "payoff_D": solution.payoff_d,
        "payoff_A": solution.payoff_a,
    }


def solution_from_document(doc: dict) -> EquilibriumSolution:
    """Rebuild a solution from its JSON document (inverse of solution_document)."""
    marginals_d = []
    marginals_a = []
    for entry in doc["marginals"]:
        marginal = MarginalDistribution(
            battlefield=int(entry["i"]), owner=entry["owner"],
            atom_at_zero=float(entry["atom"]),
            support_upper=float(entry["upper"]))
        if marginal.owner == "defender":
            marginals_d.append(marginal)
        else:
            marginals_a.append(marginal)
    marginals_d.sort(key=lambda m: m.battlefield)
    marginals_a.sort(key=lambda m: m.battlefield)
    return EquilibriumSolution(
        mu=float(doc["mu"]), lambda_d=float(doc["lambda_D"]),
        lambda_a=float(doc["lambda_A"]),
        omega_a=frozenset(int(i) for i in doc["omega_A"]),
        marginals_d=tuple(marginals_d), marginals_a=tuple(marginals_a),
        payoff_d=float(doc["payoff_D"]), payoff_a=float(doc["payoff_A"]),
        cubic_residual=0.0)


def solution_to_json(solution: EquilibriumSolution) -> str:
    return json.dumps(solution_document(solution), indent=2)
