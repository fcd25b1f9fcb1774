"""Shared types, parameter validation and the portable random source."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

# Bits travel as 1-D uint8 arrays holding only 0/1.
BitString = np.ndarray

_MASK64 = (1 << 64) - 1
_GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class FskError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParams(FskError, ValueError):
    pass


class EmptyInput(FskError, ValueError):
    pass


class TooShort(FskError, ValueError):
    pass


class ConflictingNoiseSpec(FskError, ValueError):
    pass


class BadLength(FskError, ValueError):
    pass


class LengthMismatch(FskError, ValueError):
    pass


class MalformedFile(FskError, ValueError):
    pass


class IoFailure(FskError, OSError):
    pass


class DemodKind(str, enum.Enum):
    COHERENT = "coherent"
    NONCOHERENT = "noncoherent"
    NONCOHERENT_SQUARELAW = "noncoherent_squarelaw"
    DIFFERENTIAL = "differential"


@dataclass(frozen=True)
class FskParams:
    """Binary FSK modulation constants.

    ``tone1_hz`` is the mark tone (bit 1) and ``tone0_hz`` the space tone
    (bit 0). Construction validates every invariant and raises
    :class:`InvalidParams` on violation.
    """

    sample_rate_hz: float
    tone0_hz: float
    tone1_hz: float
    symbol_duration_s: float

    def __post_init__(self):
        validate_params(self)

    @property
    def samples_per_symbol(self) -> int:
        return int(round(self.sample_rate_hz * self.symbol_duration_s))

    @property
    def modulation_index(self) -> float:
        return abs(self.tone1_hz - self.tone0_hz) * self.symbol_duration_s

    @property
    def symbol_rate_hz(self) -> float:
        return 1.0 / self.symbol_duration_s

    @property
    def is_orthogonal(self) -> bool:
        """True when the tones are orthogonal over one symbol (integer index)."""
        h = self.modulation_index
        return h >= 1 - 1e-9 and abs(h - round(h)) < 1e-9

    def tone(self, bit: int) -> float:
        return self.tone1_hz if bit else self.tone0_hz


def validate_params(p: FskParams) -> FskParams:
    """Check the FskParams invariants and return ``p`` unchanged."""
    fs = p.sample_rate_hz
    T = p.symbol_duration_s
    for name, value in (("sample_rate_hz", fs), ("tone0_hz", p.tone0_hz),
                        ("tone1_hz", p.tone1_hz), ("symbol_duration_s", T)):
        if not math.isfinite(value):
            raise InvalidParams(f"{name} must be finite, got {value!r}")
    if fs <= 0:
        raise InvalidParams(f"sample_rate_hz must be positive, got {fs}")
    if T <= 0:
        raise InvalidParams(f"symbol_duration_s must be positive, got {T}")

    exact = fs * T
    sps = round(exact)
    if abs(exact - sps) > 1e-9 * exact:
        raise InvalidParams(
            f"sample_rate_hz * symbol_duration_s = {exact!r} is not an integer "
            "sample count")
    if sps < 2:
        raise InvalidParams(f"samples_per_symbol must be >= 2, got {sps}")

    nyquist = fs / 2
    for name, f in (("tone0_hz", p.tone0_hz), ("tone1_hz", p.tone1_hz)):
        if abs(f) >= nyquist:
            raise InvalidParams(
                f"|{name}| = {abs(f)} violates Nyquist limit {nyquist}")
    if p.tone0_hz == p.tone1_hz:
        raise InvalidParams("tone0_hz and tone1_hz must differ")
    return p


@dataclass(frozen=True, eq=False)
class IqBuffer:
    """A block of complex baseband (or real passband) samples.

    Real-valued ``samples`` mark a real passband signal; the channel adds
    real noise to those.
    """

    samples: np.ndarray
    sample_rate_hz: float

    def __post_init__(self):
        s = np.asarray(self.samples)
        if s.ndim != 1:
            raise ValueError("samples must be one-dimensional")
        if not np.iscomplexobj(s):
            s = s.astype(np.float64, copy=False)
        else:
            s = s.astype(np.complex128, copy=False)
        if not np.all(np.isfinite(s)):
            raise ValueError("samples must be finite")
        if not self.sample_rate_hz > 0:
            raise ValueError("sample_rate_hz must be positive")
        object.__setattr__(self, "samples", s)

    def __len__(self):
        return len(self.samples)

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.samples)


@dataclass(frozen=True, eq=False)
class SymbolStatistics:
    """Per-symbol soft decisions; more positive means bit 1 is more likely."""

    values: np.ndarray
    demod_kind: DemodKind

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 1:
            raise ValueError("values must be one-dimensional")
        if not np.all(np.isfinite(v)):
            raise ValueError("statistics must be finite")
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "demod_kind", DemodKind(self.demod_kind))

    def __len__(self):
        return len(self.values)


def as_bits(bits) -> BitString:
    """Coerce a sequence (or '0'/'1' string) to a validated uint8 bit array."""
    if isinstance(bits, str):
        bits = [int(c) for c in bits]
    arr = np.asarray(bits)
    if arr.ndim != 1:
        raise ValueError("bits must be one-dimensional")
    if arr.size and not np.all((arr == 0) | (arr == 1)):
        raise ValueError("bits must contain only 0 and 1")
    return arr.astype(np.uint8)


def splitmix64(seed: int, n: int, start: int = 0) -> np.ndarray:
    """Outputs ``start .. start+n-1`` of the SplitMix64 stream for ``seed``.

    Output ``i`` is ``mix(seed + (i + 1) * 0x9E3779B97F4A7C15 mod 2**64)``,
    the reference SplitMix64 generator, so streams are identical on every
    platform.
    """
    idx = np.arange(start + 1, start + n + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed & _MASK64) + idx * np.uint64(_GOLDEN_GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        z = z ^ (z >> np.uint64(31))
    return z


def derive_seed(base_seed: int, index: int) -> int:
    """Child seed number ``index`` of ``base_seed`` (SplitMix64 output ``index``)."""
    return int(splitmix64(base_seed, 1, start=index)[0])


def random_bits(n: int, seed: int) -> BitString:
    """``n`` deterministic random bits: the top bit of each SplitMix64 output."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return (splitmix64(seed, n) >> np.uint64(63)).astype(np.uint8)


def uniform01(seed: int, n: int) -> np.ndarray:
    """``n`` doubles in (0, 1] from the top 53 bits of SplitMix64 outputs."""
    z = splitmix64(seed, n) >> np.uint64(11)
    return (z.astype(np.float64) + 1.0) * 2.0**-53


def standard_normal(seed: int, n: int) -> np.ndarray:
    """``n`` N(0, 1) draws via Box-Muller on the SplitMix64 stream."""
    m = (n + 1) // 2
    u = uniform01(seed, 2 * m)
    r = np.sqrt(-2.0 * np.log(u[0::2]))
    theta = 2.0 * np.pi * u[1::2]
    out = np.empty(2 * m)
    out[0::2] = r * np.cos(theta)
    out[1::2] = r * np.sin(theta)
    return out[:n]
