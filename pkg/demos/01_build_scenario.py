"""Build a small distribution system, save it as a scenario file, reload it.

The generator lays the system out in concentric levels: a single reference
node that produces whatever the rest demands, a ring of main nodes, and a
ring of ordinary nodes that only consume.  Every edge gets a capacity so
that the requested flow uses a fixed fraction of it (the flow fill), which
is the single knob the capacity experiments sweep later.
"""

import dataclasses
import os
import tempfile

import numpy as np

from cpsblotto import (default_params, generate_concentric, load_scenario,
                       save_scenario, validate)


def main():
    # 1 reference node worth 4x an ordinary node, 3 mains worth 2x, 5 ordinary.
    topology = generate_concentric([(1, 4.0), (3, 2.0), (5, 1.0)],
                                   flow_fill=0.7)
    n = topology.n

    print(f"built a {n}-node system")
    for node in topology.nodes:
        print(f"  node {node.id}: level={node.level.name.lower():9s} "
              f"h={node.h:.4f}")
    print(f"value weights sum to {sum(s.h for s in topology.nodes):.6f}")

    active = topology.capacities > 0
    fills = topology.flows[active] / topology.capacities[active]
    print(f"{int(active.sum())} flow edges, fill "
          f"{fills.min():.2f}..{fills.max():.2f}")

    problems = validate(topology)
    print("validation:", "clean" if not problems else problems)

    # Round-trip through the scenario file format the CLI consumes.
    params = default_params(n)
    path = os.path.join(tempfile.mkdtemp(), "nine_node.json")
    save_scenario(topology, params, path)
    reloaded, reloaded_params = load_scenario(path)
    assert np.array_equal(reloaded.flows, topology.flows)
    assert reloaded_params.budget_d == params.budget_d
    print(f"saved and reloaded {path} (flows identical)")

    # A scenario that routes more than an edge can carry is rejected.
    bad_flows = topology.flows.copy()
    i, j = np.argwhere(active)[0]
    bad_flows[i, j] = topology.capacities[i, j] * 1.5
    tampered = dataclasses.replace(topology, flows=bad_flows)
    for problem in validate(tampered):
        print("tampered copy rejected:", problem)


if __name__ == "__main__":
    main()
