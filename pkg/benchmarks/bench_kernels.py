"""Time the compiled and pure-Python kernels on the same inputs.

    python benchmarks/bench_kernels.py [--repeat 3] [--nodes 300] [--threads 1]

Reports best-of-N wall time per kernel and backend, the speedup, and whether
both backends produced bit-identical arrays.
"""
import argparse
import random
import sys
import time
from importlib.resources import files

import numpy as np

from vsdnplace import kernels
from vsdnplace.paths import all_pairs_shortest
from vsdnplace.placement import compute_cost_tensor, enumerate_placements, evaluate_placements
from vsdnplace.topology import PhysicalLink, PhysicalNode, PhysicalTopology, parse_graphml
from vsdnplace.vsdn import ScenarioConfig, generate_vsdns, load_scenario


def random_topology(n, seed):
    rng = random.Random(seed)
    links = [PhysicalLink(i, rng.randrange(i), rng.uniform(0.1, 20.0)) for i in range(1, n)]
    for _ in range(2 * n):
        a, b = rng.sample(range(n), 2)
        links.append(PhysicalLink(a, b, rng.uniform(0.1, 20.0)))
    nodes = [PhysicalNode(i, str(i), f"n{i}") for i in range(n)]
    return PhysicalTopology.from_links(nodes, links)


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench_case(name, topology, config, repeat, threads):
    vsdns = generate_vsdns(config, topology)
    placements = enumerate_placements(config)
    rows = []
    results = {}
    for backend in kernels.available():
        t_sp, table = best_of(repeat, lambda: all_pairs_shortest(topology, threads=threads, backend=backend))
        costs = compute_cost_tensor(table, vsdns, config.hypervisor_candidates, config.controller_candidates)
        t_ev, metrics = best_of(repeat, lambda: evaluate_placements(placements, costs, threads=threads,
                                                                    backend=backend))
        results[backend] = (table, metrics)
        rows.append((backend, t_sp, t_ev))

    print(f"\n{name}: {topology.num_nodes} nodes, {len(vsdns)} vSDNs, {len(placements)} placements")
    print(f"  {'backend':<8} {'sssp (s)':>10} {'evaluate (s)':>13}")
    for backend, t_sp, t_ev in rows:
        print(f"  {backend:<8} {t_sp:>10.4f} {t_ev:>13.4f}")
    if "native" in results:
        py = dict((b, (s, e)) for b, s, e in rows)
        print(f"  speedup  {py['python'][0] / py['native'][0]:>9.1f}x {py['python'][1] / py['native'][1]:>12.1f}x")
        (ta, ma), (tb, mb) = results["python"], results["native"]
        same = (np.array_equal(ta.dist, tb.dist) and np.array_equal(ta.pred, tb.pred)
                and np.array_equal(ma, mb))
        print(f"  identical outputs: {same}")
        return same
    print("  native extension not built; python only")
    return True


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--nodes", type=int, default=300)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args(argv)

    data = files("vsdnplace").joinpath("data")
    att = parse_graphml(data.joinpath("att_north_america.graphml").read_bytes())
    att_cfg = load_scenario(data.joinpath("att_scenario.cfg").read_text())
    ok = bench_case("AT&T scenario", att, att_cfg, args.repeat, args.threads)

    big = random_topology(args.nodes, seed=7)
    rng = random.Random(8)
    big_cfg = ScenarioConfig(
        num_vsdns=40, demand_size_min=4, demand_size_max=12, seed=99,
        hypervisor_candidates=tuple(sorted(rng.sample(range(args.nodes), 10))),
        controller_candidates=tuple(sorted(rng.sample(range(args.nodes), 10))),
        max_hypervisors=2, max_controllers=2, c_proc_ms=5.0, h_proc_ms=1.0,
    )
    ok &= bench_case("random graph", big, big_cfg, args.repeat, args.threads)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
