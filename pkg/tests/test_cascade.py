"""Flow redistribution after node failures and the physical effect matrix."""

import dataclasses

import numpy as np

from cpsblotto import (CpsTopology, NodeLevel, NodeSpec, cascade_failure,
                       default_nine_node, generate_concentric,
                       node_throughput, physical_effect_matrix,
                       rebalance_node, validate)
from _support import routed_dag, random_level_spec


def topology_from_flows(F: np.ndarray, C: np.ndarray) -> CpsTopology:
    n = F.shape[0]
    levels = [NodeLevel.REFERENCE] + [NodeLevel.ORDINARY] * (n - 1)
    nodes = tuple(NodeSpec(i, levels[i], 1.0) for i in range(n))
    A = np.zeros((n, n))
    mask = (F > 0) | (F.T > 0)
    A[mask] = 1.0
    return CpsTopology(nodes=nodes, flows=F, capacities=C, cyber_adjacency=A)


def test_rebalance_single_supplier_within_headroom():
    # r(0) -> i(1) -> j(3), alternate supplier k(2) -> j with headroom 8
    F = np.zeros((4, 4)); C = np.zeros((4, 4))
    F[0, 1] = 4.0; C[0, 1] = 8.0
    F[1, 3] = 4.0; C[1, 3] = 8.0
    F[2, 3] = 2.0; C[2, 3] = 10.0
    updated, record = rebalance_node(F, C, failed=1, node=3)
    assert updated[1, 3] == 0.0   # failed row removed by the call
    assert updated[2, 3] == 6.0
    assert F[1, 3] == 4.0         # input untouched
    assert record.deficit == 4.0
    assert record.absorbed == 4.0
    assert record.lost == 0.0


def test_rebalance_saturates_at_capacity():
    F = np.zeros((4, 4)); C = np.zeros((4, 4))
    F[0, 1] = 4.0; C[0, 1] = 8.0
    F[1, 3] = 4.0; C[1, 3] = 8.0
    F[2, 3] = 2.0; C[2, 3] = 5.0   # headroom 3 < deficit 4
    updated, record = rebalance_node(F, C, failed=1, node=3)
    assert updated[2, 3] == 5.0
    assert record.lost == 1.0


def test_leaf_failure_only_zeroes_the_failed_node():
    F = np.array([[0.0, 1.0, 1.0],
                  [0.0, 0.0, 0.0],
                  [0.0, 0.0, 0.0]])
    topo = topology_from_flows(F, F * 2)
    result = cascade_failure(topo, 2)
    expected = F.copy()
    expected[2, :] = 0.0; expected[:, 2] = 0.0
    assert np.array_equal(result.flows, expected)
    assert result.per_node_loss.sum() == 0.0


def test_chain_total_loss_downstream():
    # 0 -> 1 -> 2, one unit; failing 1 starves 2 completely
    F = np.zeros((3, 3))
    F[0, 1] = 1.0; F[1, 2] = 1.0
    topo = topology_from_flows(F, F.copy())
    E = physical_effect_matrix(topo)
    assert E[2, 1] == 1.0
    assert E[1, 1] == 0.0  # diagonal convention


def test_diamond_absorbs_via_surviving_branch():
    # 0 -> 1, 0 -> 2, 1 -> 3, 2 -> 3; c_23 = 2 leaves room for the reroute
    F = np.zeros((4, 4))
    F[0, 1] = 1.0; F[0, 2] = 1.0; F[1, 3] = 1.0; F[2, 3] = 1.0
    C = F.copy()
    C[2, 3] = 2.0
    C[0, 2] = 2.0   # the surviving branch can also be resupplied
    topo = topology_from_flows(F, C)
    result = cascade_failure(topo, 1)
    assert result.flows[2, 3] == 2.0
    assert result.per_node_loss[3] == 0.0
    # node 2 raised its outflow and pulled the difference from node 0
    assert result.flows[0, 2] == 2.0
    assert result.per_node_loss[2] == 0.0


def test_diamond_upstream_shortfall_is_recorded():
    # same diamond, but node 2 cannot be resupplied: the pull is lost there
    F = np.zeros((4, 4))
    F[0, 1] = 1.0; F[0, 2] = 1.0; F[1, 3] = 1.0; F[2, 3] = 1.0
    C = F.copy()
    C[2, 3] = 2.0
    topo = topology_from_flows(F, C)
    result = cascade_failure(topo, 1)
    assert result.flows[2, 3] == 2.0
    assert result.per_node_loss[3] == 0.0
    assert result.per_node_loss[2] == 1.0
    record = next(r for r in result.records if r.node == 2)
    assert record.deficit == 1.0 and record.lost == 1.0


def test_all_edges_at_capacity_lose_entire_deficit():
    # no headroom anywhere: every starved node loses its supplied fraction
    F = np.zeros((4, 4))
    F[0, 1] = 2.0; F[0, 2] = 1.0; F[1, 3] = 2.0; F[2, 3] = 1.0
    topo = topology_from_flows(F, F.copy())
    E = physical_effect_matrix(topo)
    # node 3 takes 2 of its 3 inflow units from node 1
    assert np.isclose(E[3, 1], 2.0 / 3.0)
    assert np.isclose(E[3, 2], 1.0 / 3.0)


def test_throughput_uses_larger_flow_side():
    F = np.zeros((3, 3))
    F[0, 1] = 1.0; F[1, 2] = 1.0
    topo = topology_from_flows(F, F * 2)
    assert np.allclose(node_throughput(topo), [1.0, 1.0, 1.0])


def test_nine_node_closed_forms():
    for fill, expected in ((0.6, (2 * 0.6 - 1) / (2 * 0.6)),
                           (0.7, (2 * 0.7 - 1) / (2 * 0.7))):
        topo = default_nine_node(fill)
        E = physical_effect_matrix(topo)
        # a main node loses everything when the reference fails
        assert all(E[m, 0] == 1.0 for m in (1, 2, 3))
        # ordinary nodes keep half their supply when one main fails; the
        # remaining parent absorbs only up to its capacity headroom
        assert np.isclose(E[4, 1], expected)
        # failures of leaf (ordinary) nodes never propagate flow loss
        assert np.all(E[:, 4:] == 0.0)
        assert np.all(np.diag(E) == 0.0)
        assert E.min() >= 0.0 and E.max() <= 1.0


def test_low_fill_kills_main_to_ordinary_effects():
    # below half fill the surviving parent has enough headroom for everything
    E = physical_effect_matrix(default_nine_node(0.4))
    assert np.all(E[4:, 1:4] == 0.0)


def test_cascade_determinism():
    rng = np.random.default_rng(17)
    topo = routed_dag(rng)
    assert validate(topo) == []
    a = cascade_failure(topo, 1)
    b = cascade_failure(topo, 1)
    assert np.array_equal(a.flows, b.flows)
    assert a.processing_order == b.processing_order
    assert np.array_equal(physical_effect_matrix(topo),
                          physical_effect_matrix(topo))


def test_failed_row_and_column_are_zeroed():
    rng = np.random.default_rng(23)
    topo = routed_dag(rng)
    for failed in range(topo.n):
        result = cascade_failure(topo, failed)
        assert np.all(result.flows[failed, :] == 0.0)
        assert np.all(result.flows[:, failed] == 0.0)
        assert np.all(result.flows <= topo.capacities + 1e-12)
        assert np.all(result.flows >= 0.0)


def test_accounting_identity_on_random_topologies():
    rng = np.random.default_rng(29)
    for _ in range(25):
        topo = routed_dag(rng)
        assert validate(topo) == []
        for failed in range(topo.n):
            for record in cascade_failure(topo, failed).records:
                assert abs(record.deficit
                           - (record.absorbed + record.lost)) <= 1e-9


def test_effect_matrix_range_on_random_topologies():
    rng = np.random.default_rng(31)
    for _ in range(10):
        topo = routed_dag(rng)
        E = physical_effect_matrix(topo)
        assert np.all(np.diag(E) == 0.0)
        assert E.min() >= 0.0 and E.max() <= 1.0


def test_more_capacity_never_worsens_layered_effects():
    rng = np.random.default_rng(37)
    for _ in range(10):
        topo = generate_concentric(random_level_spec(rng),
                                   flow_fill=float(rng.uniform(0.45, 0.95)))
        scaled = dataclasses.replace(
            topo, capacities=topo.capacities * float(rng.uniform(1.2, 2.0)))
        assert float((physical_effect_matrix(scaled)
                      - physical_effect_matrix(topo)).max()) <= 1e-12


def test_processing_order_customers_before_suppliers():
    # failing the reference of the 9-node system touches the three mains
    # (direct customers) first, then their ordinary customers
    topo = default_nine_node(0.7)
    result = cascade_failure(topo, 0)
    first = set(result.processing_order[0])
    assert first <= {1, 2, 3}
    flat = [n for group in result.processing_order for n in group]
    assert flat == sorted(set(flat), key=flat.index)  # no node twice
