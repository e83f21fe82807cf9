"""The compiled kernels and the pure-Python fallback must agree."""

import numpy as np
import pytest

from psldpc import _fallback, expand, kernels
from psldpc.girth import tanner_adjacency
from psldpc.simulate import ChannelPoint, Decoder, transmit_all_zero
from psldpc.construct import gcd_base

from conftest import random_exponent

try:
    from psldpc import _kernels
except ImportError:  # pragma: no cover
    _kernels = None

needs_ext = pytest.mark.skipif(_kernels is None, reason="compiled extension not built")


def test_backend_reported():
    assert kernels.BACKEND in ("compiled", "python")


@needs_ext
def test_bfs_girth_agrees(rng):
    for _ in range(100):
        H = expand(random_exponent(rng))
        ptr, idx = tanner_adjacency(H)
        for cap in (4, 8, 12):
            assert _kernels.bfs_girth(ptr, idx, cap) == _fallback.bfs_girth(ptr, idx, cap)


@needs_ext
@pytest.mark.parametrize("snr", [0.5, 1.5, 2.5])
def test_spa_agrees(snr):
    H = expand(gcd_base(16, 6))
    dec = Decoder(H)
    args = (dec.row_ptr, dec.edge_var, dec.var_ptr, dec.var_edges)
    for frame in range(5):
        llr = transmit_all_zero(H, ChannelPoint(snr, 0.5, 11), frame)
        h1, t1, c1, i1 = _kernels.spa_flood(*args, llr, 50, 30.0)
        h2, t2, c2, i2 = _fallback.spa_flood(*args, llr, 50, 30.0)
        assert (c1, i1) == (c2, i2)
        assert np.array_equal(h1, h2)
        np.testing.assert_allclose(t1, t2, rtol=1e-9, atol=1e-9)


@pytest.mark.parametrize("impl", [_fallback] + ([_kernels] if _kernels else []))
def test_degree_one_check(impl):
    # the lone check on variable 0 forces it to zero
    row_ptr = np.array([0, 1, 3], dtype=np.int64)
    edge_var = np.array([0, 1, 2], dtype=np.int64)
    var_ptr = np.array([0, 1, 2, 3], dtype=np.int64)
    var_edges = np.arange(3, dtype=np.int64)
    hard, total, conv, it = impl.spa_flood(row_ptr, edge_var, var_ptr, var_edges,
                                           np.array([-1.0, 4.0, 5.0]), 5, 30.0)
    assert conv and it == 1 and hard.tolist() == [0, 0, 0]
    assert total[0] == pytest.approx(29.0)
