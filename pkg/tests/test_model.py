"""Topology model, validation, and scenario file round trips."""

import dataclasses

import numpy as np
import pytest

from cpsblotto import (CpsTopology, GameParams, NodeLevel, NodeSpec,
                       ScenarioError, default_nine_node, default_params,
                       generate_concentric, load_scenario, normalize_weights,
                       save_scenario, validate)
from cpsblotto.model import scenario_document, _parse_scenario


def small_valid_topology() -> CpsTopology:
    # 0 -> 1 -> 2 chain carrying one unit, cyber link closing the triangle.
    F = np.array([[0.0, 1.0, 0.0],
                  [0.0, 0.0, 1.0],
                  [0.0, 0.0, 0.0]])
    C = F * 2.0
    A = np.zeros((3, 3))
    A[0, 2] = A[2, 0] = 1.0
    nodes = (NodeSpec(0, NodeLevel.REFERENCE, 2.0),
             NodeSpec(1, NodeLevel.MAIN, 1.0),
             NodeSpec(2, NodeLevel.ORDINARY, 1.0))
    return CpsTopology(nodes=nodes, flows=F, capacities=C, cyber_adjacency=A)


def test_normalize_weights_sums_to_one_bitwise():
    h = np.array([3.0, 1.0, 1.0, 2.0])
    out = normalize_weights(h)
    assert out.sum() == 1.0
    assert np.allclose(out, h / h.sum())
    # already-normalized input is a fixed point
    again = normalize_weights(out)
    assert np.array_equal(again, out)


def test_normalize_weights_rejects_nonpositive():
    with pytest.raises(ValueError):
        normalize_weights(np.array([0.5, 0.0]))
    with pytest.raises(ValueError):
        normalize_weights(np.array([0.5, -0.1]))


def test_topology_arrays_are_read_only():
    topo = small_valid_topology()
    with pytest.raises(ValueError):
        topo.flows[0, 1] = 5.0
    with pytest.raises(ValueError):
        topo.cyber_adjacency[0, 1] = 5.0


def test_human_interaction_normalized():
    topo = small_valid_topology()
    h = topo.human_interaction
    assert h.sum() == 1.0
    assert np.allclose(h, [0.5, 0.25, 0.25])


def test_validate_accepts_generated_topologies():
    for fill in (0.1, 0.5, 0.7, 1.0):
        assert validate(default_nine_node(fill)) == []


def expect_violation(topology: CpsTopology, fragment: str):
    messages = validate(topology)
    assert any(fragment in m for m in messages), messages


def test_validate_flags_each_violation():
    base = small_valid_topology()

    expect_violation(dataclasses.replace(
        base, nodes=(base.nodes[0], dataclasses.replace(base.nodes[1], id=5),
                     base.nodes[2])), "contiguous")
    expect_violation(dataclasses.replace(
        base, nodes=tuple(dataclasses.replace(n, level=NodeLevel.MAIN)
                          for n in base.nodes)), "reference")
    expect_violation(dataclasses.replace(
        base, nodes=(base.nodes[0], dataclasses.replace(base.nodes[1], h=0.0),
                     base.nodes[2])), "non-positive weight")

    F = base.flows.copy()
    F[0, 1] = 5.0  # above capacity 2
    expect_violation(dataclasses.replace(base, flows=F), "exceeds capacity")

    F = base.flows.copy()
    F[0, 1] = -1.0
    expect_violation(dataclasses.replace(base, flows=F), "non-negative")

    F = base.flows.copy(); C = base.capacities.copy()
    F[1, 0] = 1.0; C[1, 0] = 2.0
    expect_violation(dataclasses.replace(base, flows=F, capacities=C),
                     "one-directional")

    F = base.flows.copy(); C = base.capacities.copy()
    F[1, 1] = 1.0; C[1, 1] = 2.0
    expect_violation(dataclasses.replace(base, flows=F, capacities=C),
                     "self-loop")

    # 3-cycle 0->1->2->0 is balanced everywhere, so only the cycle rule fires.
    F = np.array([[0.0, 1.0, 0.0],
                  [0.0, 0.0, 1.0],
                  [1.0, 0.0, 0.0]])
    expect_violation(dataclasses.replace(base, flows=F, capacities=F * 2),
                     "cycle")

    F = base.flows.copy(); C = base.capacities.copy()
    F[1, 2] = 0.25; C[1, 2] = 0.5  # node 1 takes in 1.0, sends 0.25
    expect_violation(dataclasses.replace(base, flows=F, capacities=C),
                     "conservation violated at node 1")

    A = np.zeros((3, 3))  # cyber link was the only edge reaching node 2's pair
    F = np.array([[0.0, 1.0, 0.0],
                  [0.0, 0.0, 0.0],
                  [0.0, 0.0, 0.0]])
    expect_violation(dataclasses.replace(
        base, flows=F, capacities=F * 2, cyber_adjacency=A), "unreachable")

    A = base.cyber_adjacency.copy()
    A[0, 2] = 3.0  # breaks symmetry
    expect_violation(dataclasses.replace(base, cyber_adjacency=A), "symmetric")

    A = base.cyber_adjacency.copy()
    A[1, 1] = 1.0
    expect_violation(dataclasses.replace(base, cyber_adjacency=A), "diagonal")

    A = base.cyber_adjacency.copy()
    A[0, 1] = A[1, 0] = -2.0
    expect_violation(dataclasses.replace(base, cyber_adjacency=A),
                     "non-negative")


def test_default_params_shape():
    params = default_params(9)
    assert params.alpha + params.beta == 1.0
    assert params.alpha == 0.3
    assert params.t0 == pytest.approx(1.0 / 8.0)
    assert params.budget_d == 2.5 and params.budget_a == 1.0
    with pytest.raises(ValueError):
        default_params(9, budget_d=1.0, budget_a=2.0)


def test_game_params_validation():
    with pytest.raises(ValueError):
        GameParams(alpha=0.7, beta=0.7, t0=0.1, budget_d=2.0, budget_a=1.0)
    with pytest.raises(ValueError):
        GameParams(alpha=0.5, beta=0.5, t0=-0.1, budget_d=2.0, budget_a=1.0)


def test_generate_concentric_structure():
    topo = generate_concentric([(1, 4.0), (3, 2.0), (5, 1.0)], flow_fill=0.7)
    assert topo.n == 9
    assert [n.level for n in topo.nodes].count(NodeLevel.REFERENCE) == 1
    assert validate(topo) == []
    # capacities follow the fill factor uniformly on existing edges
    mask = topo.capacities > 0
    assert np.allclose(topo.flows[mask] / topo.capacities[mask], 0.7)
    # the reference feeds the three mains with round-robin ordinary loads
    assert np.allclose(topo.capacities[0], [0, 1.5, 2.0, 1.5, 0, 0, 0, 0, 0])
    assert np.allclose(topo.flows[0], np.array([0, 1.5, 2.0, 1.5, 0, 0, 0, 0, 0]) * 0.7)


def test_generate_concentric_rejects_bad_inputs():
    with pytest.raises(ValueError):
        generate_concentric([(2, 4.0), (3, 1.0)], flow_fill=0.7)
    with pytest.raises(ValueError):
        generate_concentric([(1, 4.0), (3, 2.0), (5, 1.0)], flow_fill=0.0)
    with pytest.raises(ValueError):
        generate_concentric([(1, 4.0), (3, 2.0), (5, 1.0)], flow_fill=1.2)


def test_scenario_round_trip(tmp_path):
    topo = default_nine_node(0.7)
    params = default_params(9)
    path = tmp_path / "scenario.json"
    save_scenario(topo, params, str(path))
    loaded_topo, loaded_params = load_scenario(str(path))
    assert np.allclose(loaded_topo.flows, topo.flows)
    assert np.allclose(loaded_topo.capacities, topo.capacities)
    assert np.allclose(loaded_topo.cyber_adjacency, topo.cyber_adjacency)
    assert loaded_params == params
    assert [n.level for n in loaded_topo.nodes] == [n.level for n in topo.nodes]


def test_scenario_schema_rejects_missing_and_unknown_keys():
    topo = small_valid_topology()
    params = default_params(3)
    doc = scenario_document(topo, params)

    broken = {k: v for k, v in doc.items() if k != "edges"}
    with pytest.raises(ScenarioError):
        _parse_scenario(broken)

    extra = dict(doc)
    extra["surprise"] = 1
    with pytest.raises(ScenarioError):
        _parse_scenario(extra)

    bad = dict(doc)
    bad["edges"] = [dict(doc["edges"][0], to=7)]  # references unknown node
    with pytest.raises(ScenarioError):
        _parse_scenario(bad)


def test_load_scenario_validates(tmp_path):
    topo = small_valid_topology()
    params = default_params(3)
    doc = scenario_document(topo, params)
    doc["edges"][0]["flow"] = 99.0  # now exceeds capacity
    path = tmp_path / "bad.json"
    import json
    path.write_text(json.dumps(doc))
    from cpsblotto import ValidationError
    with pytest.raises(ValidationError):
        load_scenario(str(path))
