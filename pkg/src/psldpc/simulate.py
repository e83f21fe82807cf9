"""BPSK over the binary-input AWGN channel with flooding sum-product decoding.

The all-zero codeword is sent (bit 0 -> +1). Frame ``k`` at a channel point
with seed ``s`` draws its noise from a Philox stream keyed by ``s`` whose
counter starts at ``k`` in the high word, so every frame is reproducible on
its own and results do not depend on how frames are split across workers.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .matrix import SparseBinaryMatrix, profile

log = logging.getLogger(__name__)

DEFAULT_MAX_ITER = 50
CLIP = 30.0


@dataclass(frozen=True)
class ChannelPoint:
    eb_n0_db: float
    rate: float
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.rate <= 1:
            raise ValueError(f"rate must be in (0, 1], got {self.rate}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")

    @property
    def noise_sigma(self) -> float:
        """``sigma^2 = 1 / (2 R Eb/N0)``."""
        return math.sqrt(1.0 / (2.0 * self.rate * 10.0 ** (self.eb_n0_db / 10.0)))

    def frame_rng(self, frame: int) -> np.random.Generator:
        return np.random.Generator(np.random.Philox(key=self.seed, counter=[0, 0, 0, frame]))


@dataclass(frozen=True)
class DecodeOutcome:
    decoded_word: np.ndarray
    converged: bool
    iterations_used: int
    wrong_codeword_weight: int | None = None

    @property
    def weight(self) -> int:
        return int(self.decoded_word.sum())


@dataclass(frozen=True)
class StopRule:
    min_frame_errors: int = 100
    max_frames: int = 10**7

    def __post_init__(self):
        if self.min_frame_errors < 1:
            raise ValueError("min_frame_errors must be >= 1")
        if self.max_frames < 1:
            raise ValueError("max_frames must be >= 1")


@dataclass
class PointResult:
    eb_n0_db: float
    n: int
    frames_sent: int = 0
    bit_errors: int = 0
    frame_errors: int = 0
    unconverged: int = 0
    wrong_codeword_weights: Counter = field(default_factory=Counter)

    @property
    def ber(self) -> float:
        return self.bit_errors / (self.frames_sent * self.n) if self.frames_sent else math.nan

    @property
    def fer(self) -> float:
        return self.frame_errors / self.frames_sent if self.frames_sent else math.nan

    @property
    def min_wrong_codeword_weight(self) -> int | None:
        return min(self.wrong_codeword_weights) if self.wrong_codeword_weights else None


@dataclass
class SimResult:
    points: list[PointResult]

    def __iter__(self):
        return iter(self.points)


class Decoder:
    """Precomputed edge layout of ``H`` for repeated decoding."""

    def __init__(self, H: SparseBinaryMatrix, max_iter: int = DEFAULT_MAX_ITER, clip: float = CLIP):
        if max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        self.H = H
        self.max_iter = max_iter
        self.clip = clip
        self.row_ptr = np.ascontiguousarray(H.row_ptr, dtype=np.int64)
        self.edge_var = np.ascontiguousarray(H.row_idx, dtype=np.int64)
        self.var_edges = np.argsort(self.edge_var, kind="stable").astype(np.int64)
        self.var_ptr = np.ascontiguousarray(H.col_ptr, dtype=np.int64)

    def __call__(self, llr) -> DecodeOutcome:
        llr = np.ascontiguousarray(llr, dtype=np.float64)
        if llr.shape != (self.H.cols,):
            raise ValueError(f"llr length {llr.shape} does not match {self.H.cols} columns")
        hard, _, converged, used = kernels.spa_flood(
            self.row_ptr, self.edge_var, self.var_ptr, self.var_edges, llr, self.max_iter, self.clip
        )
        wrong = None
        if converged and hard.any():
            # re-verify before logging a codeword weight
            if not self.H.syndrome(hard).any():
                wrong = int(hard.sum())
        return DecodeOutcome(hard, bool(converged), int(used), wrong)


def spa_decode(H: SparseBinaryMatrix, llr, max_iter: int = DEFAULT_MAX_ITER) -> DecodeOutcome:
    """Flooding log-domain sum-product decoding with early stop on a zero syndrome."""
    return Decoder(H, max_iter)(llr)


def designed_rate(H: SparseBinaryMatrix) -> float:
    rate = profile(H).designed_rate
    if rate is None or rate <= 0:
        raise ValueError(f"designed rate {rate} is not positive")
    return float(rate)


def transmit_all_zero(n: int | SparseBinaryMatrix, point: ChannelPoint, frame: int = 0) -> np.ndarray:
    """Channel LLRs ``2 y / sigma^2`` for ``y = 1 + noise`` on frame ``frame``."""
    if isinstance(n, SparseBinaryMatrix):
        n = n.cols
    sigma = point.noise_sigma
    y = 1.0 + sigma * point.frame_rng(frame).standard_normal(n)
    return 2.0 * y / sigma**2


def _run_frames(decoder: Decoder, point: ChannelPoint, start: int, stop: int):
    """Per-frame ``(bit_errors, converged, wrong_weight)`` for frames ``start..stop-1``."""
    out = []
    for k in range(start, stop):
        res = decoder(transmit_all_zero(decoder.H.cols, point, k))
        if res.converged and res.wrong_codeword_weight is None and res.weight:
            raise AssertionError("decoder reported convergence with a non-zero syndrome")
        out.append((res.weight, res.converged, res.wrong_codeword_weight))
    return out


_worker_decoder: Decoder | None = None


def _init_worker(H, max_iter):
    global _worker_decoder
    _worker_decoder = Decoder(H, max_iter)


def _worker_chunk(args):
    point, start, stop = args
    return _run_frames(_worker_decoder, point, start, stop)


def _accumulate(acc: PointResult, frames, rule: StopRule) -> bool:
    """Fold per-frame records in order; True once the stop rule is met."""
    for bits, converged, wrong in frames:
        acc.frames_sent += 1
        acc.bit_errors += bits
        if bits:
            acc.frame_errors += 1
        if not converged:
            acc.unconverged += 1
        if wrong is not None:
            acc.wrong_codeword_weights[wrong] += 1
        if acc.frame_errors >= rule.min_frame_errors or acc.frames_sent >= rule.max_frames:
            return True
    return False


def run_ber(
    H: SparseBinaryMatrix,
    points: list[ChannelPoint] | list[float],
    stop: StopRule = StopRule(),
    max_iter: int = DEFAULT_MAX_ITER,
    seed: int = 0,
    workers: int = 1,
    chunk: int = 64,
) -> SimResult:
    """Simulate each channel point until the stop rule fires.

    ``points`` may be bare Eb/N0 values, in which case the designed rate of
    ``H`` and ``seed`` are used. With ``workers > 1`` frames are decoded in
    chunks on a process pool and folded in frame order, so the result equals
    the single-worker run.
    """
    if points and not isinstance(points[0], ChannelPoint):
        rate = designed_rate(H)
        points = [ChannelPoint(float(p), rate, seed) for p in points]
    results = []
    decoder = Decoder(H, max_iter)
    pool = None
    if workers > 1:
        pool = ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(H, max_iter))
    try:
        for pt in points:
            acc = PointResult(pt.eb_n0_db, H.cols)
            start = 0
            done = False
            while not done and start < stop.max_frames:
                if pool is None:
                    end = min(start + chunk, stop.max_frames)
                    done = _accumulate(acc, _run_frames(decoder, pt, start, end), stop)
                    start = end
                else:
                    jobs = []
                    for _ in range(workers):
                        end = min(start + chunk, stop.max_frames)
                        if end > start:
                            jobs.append((pt, start, end))
                        start = end
                    for frames in pool.map(_worker_chunk, jobs):
                        if _accumulate(acc, frames, stop):
                            done = True
                            break
            log.info("Eb/N0=%.2f dB frames=%d FE=%d BER=%.3e FER=%.3e",
                     pt.eb_n0_db, acc.frames_sent, acc.frame_errors, acc.ber, acc.fer)
            results.append(acc)
    finally:
        if pool is not None:
            pool.shutdown()
    return SimResult(results)


def parse_snr_range(spec: str) -> list[float]:
    """``"1.0:0.5:4.0"`` -> ``[1.0, 1.5, ..., 4.0]``; a comma list or single value also works."""
    if ":" in spec:
        parts = [float(x) for x in spec.split(":")]
        if len(parts) != 3 or parts[1] <= 0:
            raise ValueError(f"SNR range must be start:step:stop with step > 0, got {spec!r}")
        start, step, end = parts
        count = int(math.floor((end - start) / step + 1e-9)) + 1
        return [round(start + k * step, 10) for k in range(max(count, 0))]
    return [float(x) for x in spec.split(",") if x.strip()]
