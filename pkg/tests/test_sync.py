import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fskmodem.channel import ChannelConfig, apply_channel
from fskmodem.core import DemodKind, EmptyInput, FskParams, IqBuffer, SymbolStatistics, TooShort, random_bits
from fskmodem.demod import appendix_fft_pipeline, appendix_spectrum
from fskmodem.modulator import ModulatorConfig, modulate
from fskmodem.sync import SlicerConfig, SlicerMode, estimate_timing, slice_bits

from oracles import timing_objective


def stats(values):
    return SymbolStatistics(np.asarray(values, dtype=float), DemodKind.NONCOHERENT)


def test_slice_sign_separation():
    assert slice_bits(stats([-1, 1, -1])).tolist() == [0, 1, 0]


def test_slice_constant_ties_to_zero():
    assert slice_bits(stats([5, 5, 5])).tolist() == [0, 0, 0]


def test_slice_fixed():
    cfg = SlicerConfig(SlicerMode.FIXED, 2.0)
    assert slice_bits(stats([1, 2, 3]), cfg).tolist() == [0, 0, 1]


def test_slice_empty():
    with pytest.raises(EmptyInput):
        slice_bits(stats([]))


def test_slice_matches_appendix(appendix_params):
    mag = appendix_spectrum([0, 1], appendix_params)
    bits = slice_bits(SymbolStatistics(mag, DemodKind.NONCOHERENT))
    assert np.array_equal(bits, appendix_fft_pipeline([0, 1], appendix_params))


@settings(max_examples=100, deadline=None)
@given(values=st.lists(st.integers(-1000, 1000), min_size=1, max_size=50),
       a=st.integers(1, 64), b=st.integers(-1000, 1000))
def test_slice_affine_invariant(values, a, b):
    v = np.array(values, dtype=float)
    out = slice_bits(stats(v))
    assert np.array_equal(out, slice_bits(stats(a * v + b)))
    assert out.size == v.size
    assert set(out.tolist()) <= {0, 1}


def test_timing_aligned(baseband):
    iq = modulate(random_bits(200, 1), ModulatorConfig(baseband))
    assert estimate_timing(iq, baseband).offset_samples == 0


def test_timing_delay_seven():
    p = FskParams(16000, -1000, 1000, 0.001)
    tx = modulate(random_bits(100, 2), ModulatorConfig(p))
    rx = apply_channel(tx, ChannelConfig(delay_samples=7), p)
    est = estimate_timing(rx, p)
    assert est.offset_samples == 7
    assert est.metric == est.metric_curve.max()
    # Independent objective, evaluated over the same symbol count.
    count = (len(rx) - 15) // 16
    x = list(rx.samples)
    brute = [timing_objective(x, 16000, -1000, 1000, 16, tau, count) for tau in range(16)]
    np.testing.assert_allclose(est.metric_curve, brute, rtol=1e-9)
    assert brute[7] == pytest.approx(max(brute), rel=1e-9)


def test_timing_midpoint_tone_is_flat(baseband):
    iq = IqBuffer(np.ones(800, complex), 8000)  # midpoint of -500/+500 is 0 Hz
    est = estimate_timing(iq, baseband)
    assert np.ptp(est.metric_curve) < 1e-9
    assert est.offset_samples == 0


@pytest.mark.parametrize("p", [
    FskParams(8000, -500, 500, 0.001),
    FskParams(8000, -1000, 1000, 0.001),
    FskParams(12000, 1000, 2000, 0.001),
])
def test_timing_all_delays(p):
    sps = p.samples_per_symbol
    tx = modulate(random_bits(300, sps), ModulatorConfig(p))
    for d in range(sps):
        rx = apply_channel(tx, ChannelConfig(delay_samples=d), p)
        assert estimate_timing(rx, p).offset_samples == d


def test_timing_too_short(baseband):
    with pytest.raises(TooShort):
        estimate_timing(IqBuffer(np.ones(15, complex), 8000), baseband)


def test_timing_in_noise_picks_symbol_start(baseband):
    bits = random_bits(20_000, 8)
    rx = apply_channel(modulate(bits, ModulatorConfig(baseband)),
                       ChannelConfig(ebn0_db=4.0, delay_samples=3, noise_seed=9), baseband)
    assert estimate_timing(rx, baseband).offset_samples == 3
