import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from psldpc import (
    INF,
    ExponentMatrix,
    GirthResult,
    check_theorem1,
    expand,
    girth_exponent,
    girth_graph,
    splice_exponent,
)
from psldpc.construct import random_latin, random_maskset
from psldpc.girth import CycleWitness, verify_witness
from psldpc.matrix import SparseBinaryMatrix

from conftest import EX1_BASE, EX1_SPLICED, random_exponent


class TestGirthResult:
    def test_ordering(self):
        assert GirthResult.exact(4) < GirthResult.exact(6) < GirthResult.exceeds(12)
        assert GirthResult.exceeds(12) >= GirthResult.exact(12)
        assert GirthResult.exact(8) == GirthResult.exact(8)

    def test_invalid(self):
        with pytest.raises(ValueError):
            GirthResult.exact(5)
        with pytest.raises(ValueError):
            GirthResult.exact(2)

    def test_str(self):
        assert str(GirthResult.exact(8)) == "girth=8"
        assert str(GirthResult.exceeds(12)) == "girth>cap=12"


class TestExponentGirth:
    @pytest.mark.parametrize("P", [7, 8, 11, 16, 64])
    def test_example_base_has_four_cycle(self, P):
        E0 = ExponentMatrix(EX1_BASE, P)
        res, wit = girth_exponent(E0, 12, witness=True)
        assert res == GirthResult.exact(4)
        assert verify_witness(E0, wit)
        # the four positions of (1-2)+(5-4)
        assert set(wit.positions) == {(1, 1), (2, 1), (2, 3), (1, 3)}
        assert wit.alternating_sum == 0

    @pytest.mark.parametrize("P", [7, 8, 11, 16, 64])
    def test_example_compound_girth_eight(self, P):
        res, wit = girth_exponent(ExponentMatrix(EX1_SPLICED, P), 12, witness=True)
        assert res == GirthResult.exact(8)
        assert wit.length == 8 and verify_witness(ExponentMatrix(EX1_SPLICED, P), wit)

    def test_single_cpm_has_no_cycle(self):
        for cap in (4, 8, 12, 20):
            assert not girth_exponent(ExponentMatrix([[0]], 5), cap).is_exact

    @pytest.mark.parametrize("cap", [3, 5, 2])
    def test_bad_cap(self, cap):
        with pytest.raises(ValueError):
            girth_exponent(ExponentMatrix([[0]], 5), cap)

    def test_cap_truncates(self):
        assert girth_exponent(ExponentMatrix(EX1_SPLICED, 7), 6) == GirthResult.exceeds(6)

    def test_witness_detects_tampering(self):
        E0 = ExponentMatrix(EX1_BASE, 7)
        _, wit = girth_exponent(E0, witness=True)
        assert not verify_witness(E0, CycleWitness(wit.positions, wit.alternating_sum + 7))
        assert not verify_witness(E0, CycleWitness(wit.positions[:3], 0))


class TestGraphGirth:
    def test_k22(self):
        assert girth_graph(SparseBinaryMatrix.from_dense(np.ones((2, 2), dtype=int))) == GirthResult.exact(4)

    def test_example_base(self):
        assert girth_graph(expand(ExponentMatrix(EX1_BASE, 7))) == GirthResult.exact(4)

    @pytest.mark.parametrize("n", [1, 3, 10])
    def test_identity(self, n):
        assert not girth_graph(SparseBinaryMatrix.from_dense(np.eye(n, dtype=int))).is_exact

    def test_six_cycle(self):
        H = SparseBinaryMatrix.from_dense([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
        assert girth_graph(H) == GirthResult.exact(6)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_exponent_girth_matches_graph_oracle(seed):
    E = random_exponent(np.random.default_rng(seed))
    res, wit = girth_exponent(E, 12, witness=True)
    assert res == girth_graph(expand(E), 12)
    if wit is not None:
        assert verify_witness(E, wit) and wit.length == res.value


def _girth(E):
    return girth_exponent(E, 12)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_invariant_under_equivalences(seed):
    rng = np.random.default_rng(seed)
    E = random_exponent(rng, p_max=12)
    g = _girth(E)
    ent = E.entries
    assert _girth(ExponentMatrix(ent[rng.permutation(E.m)], E.lift)) == g
    assert _girth(ExponentMatrix(ent[:, rng.permutation(E.n)], E.lift)) == g
    j, c = int(rng.integers(E.n)), int(rng.integers(E.lift))
    shifted = ent.copy()
    col = shifted[:, j]
    shifted[:, j] = np.where(col == INF, INF, (col + c) % E.lift)
    assert _girth(ExponentMatrix(shifted, E.lift)) == g
    # same transform on a row
    i = int(rng.integers(E.m))
    shifted = ent.copy()
    shifted[i] = np.where(ent[i] == INF, INF, (ent[i] + c) % E.lift)
    assert _girth(ExponentMatrix(shifted, E.lift)) == g


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_masking_an_entry_never_lowers_girth(seed):
    rng = np.random.default_rng(seed)
    E = random_exponent(rng, p_max=12, density=0.9)
    fin = np.argwhere(E.finite)
    if not len(fin):
        return
    i, j = fin[rng.integers(len(fin))]
    ent = E.entries.copy()
    ent[i, j] = INF
    assert _girth(ExponentMatrix(ent, E.lift)) >= _girth(E)


class TestTheorem1:
    def test_example_pair(self):
        assert check_theorem1(ExponentMatrix(EX1_BASE, 7), ExponentMatrix(EX1_SPLICED, 7))

    def test_reflexive(self, rng):
        E = random_exponent(rng)
        assert check_theorem1(E, E)

    def test_detects_a_decrease(self):
        assert not check_theorem1(ExponentMatrix(EX1_SPLICED, 7), ExponentMatrix(EX1_BASE, 7))

    def test_randomized(self, rng):
        for _ in range(100):
            E0 = random_exponent(rng, p_max=32)
            N = int(rng.integers(2, 5))
            E = splice_exponent(E0, random_maskset(E0.m, E0.n, N, rng), random_latin(N, rng))
            assert check_theorem1(E0, E)
