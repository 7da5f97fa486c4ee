"""The compiled and pure-Python kernels must agree bit for bit."""
import random

import numpy as np
import pytest

from corpus import make_topology, random_instance, random_links
from vsdnplace import all_pairs_shortest, compute_cost_tensor, enumerate_placements, kernels
from vsdnplace.placement import evaluate_placements

needs_native = pytest.mark.skipif("native" not in kernels.available(), reason="extension not built")


def test_python_backend_always_available():
    assert "python" in kernels.available()
    assert kernels.BACKEND in kernels.available()


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.get("fortran")


@needs_native
@pytest.mark.parametrize("seed", range(25))
def test_sssp_parity(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 60)
    # Mix of zero, integer and real weights to stress equal-cost handling.
    weight = rng.choice([lambda: float(rng.randint(0, 3)), lambda: rng.uniform(0, 5)])
    topo = make_topology(n, random_links(rng, n, rng.randint(0, 3 * n), weight))
    py = all_pairs_shortest(topo, backend="python")
    nat = all_pairs_shortest(topo, backend="native")
    assert np.array_equal(py.dist, nat.dist)
    assert np.array_equal(py.pred, nat.pred)


@needs_native
@pytest.mark.parametrize("seed", range(25))
def test_evaluate_parity(seed):
    inst = random_instance(seed)
    table = all_pairs_shortest(inst.topology)
    costs = compute_cost_tensor(table, inst.vsdns, inst.config.hypervisor_candidates,
                                inst.config.controller_candidates)
    placements = enumerate_placements(inst.config)
    py = evaluate_placements(placements, costs, backend="python")
    nat = evaluate_placements(placements, costs, backend="native", threads=3)
    assert np.array_equal(py, nat)


def test_run_rows_covers_every_row():
    seen = []

    def fn(out, start, stop):
        out.extend(range(start, stop))

    kernels.run_rows(fn, 17, 4, seen)
    assert sorted(seen) == list(range(17))


def test_resolve_threads():
    assert kernels.resolve_threads(3) == 3
    assert kernels.resolve_threads(0) >= 1
    with pytest.raises(ValueError):
        kernels.resolve_threads(-1)
