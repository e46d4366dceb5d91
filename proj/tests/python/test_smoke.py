import math
import os
import sys

sys.path.insert(0, os.environ.get("NETMOD_PKG_DIR", ""))

import netmod
import pytest


def test_build_and_margin():
    net = netmod.build_network(2, [(0, 1, 0.5)], [0], [1],
                               netmod.NetworkKind.DirectStable)
    k = netmod.build_kernel(net)
    assert netmod.stability_margin(k, 1, 0) == pytest.approx(2.0, abs=1e-12)
    assert math.isinf(netmod.stability_margin(k, 0, 1))
    mod = netmod.EdgeMod(1, 0, 1.0)
    assert netmod.delta_hinf(k, mod) == pytest.approx(0.5, abs=1e-12)
    assert netmod.delta_h2_lower_bound(k, mod) == pytest.approx(1 / 12,
                                                               abs=1e-12)


def test_errors_translate():
    with pytest.raises(netmod.Error):
        netmod.build_network(2, [(0, 1, -1.0)], [0], [1],
                             netmod.NetworkKind.DirectStable)


def test_scan_and_generators():
    net = netmod.erdos_renyi(20, 0.2, 0.8, seed=5, inputs=[0], outputs=[19])
    k = netmod.build_kernel(net)
    entries = netmod.batch_scan(k, 0.1)
    assert len(entries) == 20 * 19
    stable = [e for e in entries if not e.destabilizing]
    assert stable and all(e.h2_lower_bound >= 0 for e in stable)


def test_coherence_and_grow():
    net = netmod.path_graph(20, 0.2)
    k = netmod.build_laplacian_kernel(net)
    assert netmod.coherence(k) == pytest.approx(172.37, abs=0.01)
    res = netmod.greedy_grow(net, 0.2, 2)
    assert len(res.mods) == 2
    assert res.trajectory[-1] < res.trajectory[0]


def test_oracle_roundtrip():
    net = netmod.path_graph(3, 0.2)
    k = netmod.build_laplacian_kernel(net)
    mod = netmod.EdgeMod(0, 2, 0.2)
    rep = netmod.rebuild_and_measure(net, mod)
    assert netmod.coherence_delta(k, 0, 2, 0.2) == pytest.approx(
        rep.exact_coherence_delta, abs=1e-6)
