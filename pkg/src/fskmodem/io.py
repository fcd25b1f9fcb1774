"""File formats: headerless cf32 IQ, '0'/'1' text bit files, BER sweep CSV."""

from __future__ import annotations

import csv
import os
from pathlib import Path
from typing import Iterable, Union

import numpy as np

from .core import BitString, DemodKind, IoFailure, IqBuffer, MalformedFile, as_bits
from .metrics import BerReport

PathLike = Union[str, os.PathLike]

CSV_HEADER = ["ebn0_db", "demod", "fec", "n_bits", "n_errors", "ber", "seed"]


def _read_bytes(path: PathLike) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc


def _write_bytes(path: PathLike, data: bytes) -> None:
    try:
        Path(path).write_bytes(data)
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def write_iq(iq: IqBuffer, path: PathLike) -> None:
    """Store samples as interleaved little-endian float32 I, Q pairs."""
    x = iq.samples
    out = np.empty(2 * x.size, dtype="<f4")
    out[0::2] = np.real(x)
    out[1::2] = np.imag(x) if np.iscomplexobj(x) else 0.0
    _write_bytes(path, out.tobytes())


def read_iq(path: PathLike, sample_rate_hz: float) -> IqBuffer:
    data = _read_bytes(path)
    if len(data) % 4:
        raise MalformedFile(f"{path}: {len(data)} bytes is not a whole number of float32 values")
    floats = np.frombuffer(data, dtype="<f4")
    if floats.size % 2:
        raise MalformedFile(f"{path}: odd float count {floats.size}, expected I/Q pairs")
    x = floats[0::2].astype(np.float64) + 1j * floats[1::2].astype(np.float64)
    if not np.all(np.isfinite(x)):
        raise MalformedFile(f"{path}: contains non-finite samples")
    return IqBuffer(x, sample_rate_hz)


def write_bits(bits, path: PathLike) -> None:
    b = as_bits(bits)
    _write_bytes(path, ("".join("01"[v] for v in b.tolist()) + "\n").encode("ascii"))


def read_bits(path: PathLike) -> BitString:
    text = _read_bytes(path).decode("ascii", errors="replace")
    if text.endswith("\n"):
        text = text[:-1]
    if text.strip("01"):
        raise MalformedFile(f"{path}: bit files may only contain '0' and '1'")
    return np.frombuffer(text.encode("ascii"), dtype=np.uint8) - ord("0")


def format_ber(ber: float) -> str:
    """Six significant digits, exponent without padding: ``3.37000e-3``."""
    mantissa, exp = f"{ber:.5e}".split("e")
    return f"{mantissa}e{int(exp)}"


def format_ebn0(ebn0_db: float) -> str:
    return f"{ebn0_db:.10g}"


def report_row(r: BerReport) -> list[str]:
    return [format_ebn0(r.ebn0_db), r.demod_kind.value, "1" if r.fec_enabled else "0",
            str(r.n_bits), str(r.n_errors), format_ber(r.ber), str(r.seed)]


def write_ber_csv(reports: Iterable[BerReport], path: PathLike) -> None:
    try:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(CSV_HEADER)
            for r in reports:
                w.writerow(report_row(r))
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def read_ber_csv(path: PathLike) -> list[BerReport]:
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    if not rows or rows[0] != CSV_HEADER:
        raise MalformedFile(f"{path}: missing or wrong CSV header")
    out = []
    for row in rows[1:]:
        if len(row) != len(CSV_HEADER):
            raise MalformedFile(f"{path}: bad row {row!r}")
        e, demod, fec, n_bits, n_err, _ber, seed = row
        out.append(BerReport(float(e), DemodKind(demod), fec == "1", int(n_bits),
                             int(n_err), int(seed)))
    return out
