"""Symbol timing recovery and threshold slicing."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from ._correlate import magnitude_contrast, symbol_count
from .core import BitString, DemodKind, EmptyInput, FskParams, IqBuffer, SymbolStatistics, TooShort

# Candidates whose metric is this close (relative) to the best count as ties.
TIE_RTOL = 1e-9


class SlicerMode(str, enum.Enum):
    ADAPTIVE_MEAN = "adaptive_mean"
    FIXED = "fixed"


@dataclass(frozen=True)
class SlicerConfig:
    mode: SlicerMode = SlicerMode.ADAPTIVE_MEAN
    fixed_threshold: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "mode", SlicerMode(self.mode))


@dataclass(frozen=True, eq=False)
class TimingEstimate:
    offset_samples: int
    metric: float
    metric_curve: np.ndarray


def timing_metric(x: np.ndarray, params: FskParams, offset: int, count: int) -> float:
    """Sum over ``count`` symbols of the non-coherent contrast magnitude."""
    return float(np.sum(np.abs(magnitude_contrast(x, params, offset, count))))


def estimate_timing(iq: IqBuffer, params: FskParams,
                    demod_kind: DemodKind = DemodKind.NONCOHERENT) -> TimingEstimate:
    """Find the symbol boundary offset by exhaustive search.

    Every integer offset in ``[0, samples_per_symbol)`` is scored with the
    same number of symbols (as many as fit at the largest offset) so the
    candidates compete on equal footing; the objective is the summed
    magnitude of the non-coherent contrast. The chosen offset maximises the
    objective summed over itself and its successor (cyclically), which on
    noiseless input is the maximiser of the curve with ties going to the
    smaller offset. ``demod_kind`` does not change the objective.

    Raises:
        TooShort: if the buffer holds fewer than two symbols.
    """
    DemodKind(demod_kind)
    sps = params.samples_per_symbol
    x = iq.samples
    if x.size < 2 * sps:
        raise TooShort(f"timing search needs at least {2 * sps} samples, got {x.size}")
    count = symbol_count(x.size, sps - 1, sps)
    curve = np.array([timing_metric(x, params, tau, count) for tau in range(sps)])
    # A continuous-phase symbol spans sps + 1 samples sharing its endpoints,
    # so offsets tau and tau + 1 score alike; pick the left edge of that pair.
    score = curve + np.roll(curve, -1)
    best = score.max()
    tied = np.flatnonzero(score >= best - TIE_RTOL * max(abs(best), 1.0))
    tau = int(tied[0])
    return TimingEstimate(tau, float(curve[tau]), curve)


def threshold_bits(values: np.ndarray, threshold: float) -> BitString:
    """1 where ``value > threshold``; ties go to 0."""
    return (np.asarray(values) > threshold).astype(np.uint8)


def slice_bits(stats: SymbolStatistics, cfg: SlicerConfig = SlicerConfig()) -> BitString:
    """Hard decisions from soft statistics.

    Raises:
        EmptyInput: if there are no statistics.
    """
    v = stats.values
    if v.size == 0:
        raise EmptyInput("no statistics to slice")
    if cfg.mode is SlicerMode.ADAPTIVE_MEAN:
        thr = float(np.mean(v))
    else:
        thr = cfg.fixed_threshold
    return threshold_bits(v, thr)
