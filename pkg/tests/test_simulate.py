import math

import numpy as np
import pytest

from psldpc import ExponentMatrix, expand, spa_decode
from psldpc.construct import extend_maskset, gcd_base, latin_circulant, mask_hamming, splice_exponent
from psldpc.simulate import (
    ChannelPoint,
    Decoder,
    StopRule,
    parse_snr_range,
    run_ber,
    transmit_all_zero,
)

from conftest import EX1_SPLICED


@pytest.fixture(scope="module")
def small_code():
    # girth-8 compound code of the worked example, 48 x 64
    return expand(ExponentMatrix(EX1_SPLICED, 8))


@pytest.fixture(scope="module")
def ps_h_code():
    E = splice_exponent(gcd_base(64, 8), extend_maskset(mask_hamming(4, 8), 4), latin_circulant(4))
    return expand(E)


class TestChannel:
    def test_sigma(self):
        pt = ChannelPoint(0.0, 0.5)
        assert pt.noise_sigma == pytest.approx(1.0)
        assert ChannelPoint(10 * math.log10(2), 0.5).noise_sigma == pytest.approx(math.sqrt(0.5))

    def test_rejects_bad_rate_and_seed(self):
        with pytest.raises(ValueError):
            ChannelPoint(1.0, 0.0)
        with pytest.raises(ValueError):
            ChannelPoint(1.0, 0.5, seed=-1)

    def test_noiseless_limit(self):
        llr = transmit_all_zero(100, ChannelPoint(60.0, 0.5, 1))
        assert (llr > 1e5).all()

    def test_deterministic(self):
        pt = ChannelPoint(1.0, 0.5, 42)
        assert np.array_equal(transmit_all_zero(500, pt, 3), transmit_all_zero(500, pt, 3))
        assert not np.array_equal(transmit_all_zero(500, pt, 3), transmit_all_zero(500, pt, 4))
        other = ChannelPoint(1.0, 0.5, 43)
        assert not np.array_equal(transmit_all_zero(500, pt, 3), transmit_all_zero(500, other, 3))

    def test_llr_mean(self):
        pt = ChannelPoint(1.0, 0.5, 5)
        llr = transmit_all_zero(10**5, pt)
        sigma = pt.noise_sigma
        se = (2 / sigma) / math.sqrt(len(llr))
        assert abs(llr.mean() - 2 / sigma**2) < 3 * se


class TestDecoder:
    def test_noiseless(self, small_code):
        out = spa_decode(small_code, np.full(small_code.cols, 20.0))
        assert out.converged and out.iterations_used == 1 and not out.decoded_word.any()
        assert out.wrong_codeword_weight is None

    def test_single_error_corrected(self, small_code):
        for pos in (0, 17, 63):
            llr = np.full(small_code.cols, 8.0)
            llr[pos] = -3.0
            out = spa_decode(small_code, llr)
            assert out.converged and not out.decoded_word.any()
            assert not small_code.syndrome(out.decoded_word).any()

    def test_converged_nonzero_is_codeword(self):
        # every bit strongly received as 1: the all-one word satisfies each even-weight check
        from psldpc.matrix import SparseBinaryMatrix
        H = SparseBinaryMatrix.from_dense([[1, 1, 0, 0], [0, 0, 1, 1]])
        out = spa_decode(H, np.full(4, -10.0))
        assert out.converged
        assert out.wrong_codeword_weight == 4
        assert not H.syndrome(out.decoded_word).any()

    def test_length_mismatch(self, small_code):
        with pytest.raises(ValueError, match="length"):
            spa_decode(small_code, np.zeros(3))

    def test_max_iter_respected(self, small_code):
        llr = transmit_all_zero(small_code, ChannelPoint(-3.0, 0.25, 9))
        out = Decoder(small_code, max_iter=3)(llr)
        assert out.iterations_used <= 3


class TestHarness:
    def test_snr_range(self):
        assert parse_snr_range("1.0:0.5:4.0") == [1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0]
        assert parse_snr_range("1,2.5") == [1.0, 2.5]
        with pytest.raises(ValueError):
            parse_snr_range("1:0:2")

    def test_stop_rule_validation(self):
        with pytest.raises(ValueError):
            StopRule(min_frame_errors=0)

    def test_counts_consistent(self, small_code):
        res = run_ber(small_code, [1.0], StopRule(20, 400), seed=3)
        pt = res.points[0]
        assert pt.frame_errors >= 20 or pt.frames_sent == 400
        assert pt.ber == pt.bit_errors / (pt.frames_sent * small_code.cols)
        assert pt.fer == pt.frame_errors / pt.frames_sent

    def test_stops_at_min_errors(self, small_code):
        pt = run_ber(small_code, [-2.0], StopRule(5, 1000), seed=3).points[0]
        assert pt.frame_errors == 5

    def test_high_snr_fer(self, ps_h_code):
        pt = run_ber(ps_h_code, [8.0], StopRule(1, 1000), seed=1).points[0]
        assert pt.frames_sent == 1000
        assert pt.fer < 1e-2

    def test_reproducible(self, small_code):
        a = run_ber(small_code, [1.5], StopRule(10, 300), seed=99).points[0]
        b = run_ber(small_code, [1.5], StopRule(10, 300), seed=99).points[0]
        assert (a.frames_sent, a.bit_errors, a.frame_errors) == (b.frames_sent, b.bit_errors, b.frame_errors)

    def test_chunking_and_workers_do_not_change_result(self, small_code):
        rule = StopRule(15, 500)
        ref = run_ber(small_code, [1.0, 2.0], rule, seed=5, chunk=64)
        for kw in ({"chunk": 7}, {"chunk": 1}, {"workers": 2, "chunk": 16}):
            got = run_ber(small_code, [1.0, 2.0], rule, seed=5, **kw)
            for a, b in zip(ref.points, got.points):
                assert (a.frames_sent, a.bit_errors, a.frame_errors, a.wrong_codeword_weights) == \
                       (b.frames_sent, b.bit_errors, b.frame_errors, b.wrong_codeword_weights)

    def test_wrong_codewords_are_codewords(self):
        # tiny repetition-like code at terrible SNR produces converged wrong words
        from psldpc.matrix import SparseBinaryMatrix
        H = SparseBinaryMatrix.from_dense([[1, 1, 0, 0, 0, 0], [0, 1, 1, 0, 0, 0],
                                           [0, 0, 0, 1, 1, 0], [0, 0, 0, 0, 1, 1]])
        res = run_ber(H, [-4.0], StopRule(50, 2000), seed=2).points[0]
        assert res.wrong_codeword_weights
        assert set(res.wrong_codeword_weights) <= {3, 6}
        assert res.min_wrong_codeword_weight == 3
