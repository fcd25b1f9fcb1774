"""Command-line front end.

Usage:
    fskmodem gen --bits 1000 --seed 1 --out msg.bits
    fskmodem mod --in msg.bits --out tx.cf32
    fskmodem channel --in tx.cf32 --out rx.cf32 --ebn0 8 --delay 3
    fskmodem demod --in rx.cf32 --out rx.bits --technique noncoherent
    fskmodem ber-sweep --ebn0 0:2:12 --technique coherent,noncoherent --out ber.csv
    fskmodem appendix-demo

Exit codes: 0 success, 1 runtime or I/O failure, 2 bad flags.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time

import numpy as np

from . import io as fio
from .channel import ChannelConfig, apply_channel
from .core import DemodKind, FskError, FskParams, random_bits
from .demod import appendix_fft_pipeline, demodulate
from .fec import conv_encode, viterbi_decode
from .metrics import make_grid, run_ber_sweep
from .modulator import ModulatorConfig, OutputMode, modulate
from .sync import SlicerConfig, SlicerMode, estimate_timing, slice_bits

logger = logging.getLogger(__name__)

TECHNIQUES = {
    "coherent": DemodKind.COHERENT,
    "noncoherent": DemodKind.NONCOHERENT,
    "noncoherent-squarelaw": DemodKind.NONCOHERENT_SQUARELAW,
    "differential": DemodKind.DIFFERENTIAL,
}

APPENDIX_PARAMS = dict(sample_rate_hz=1000.0, tone0_hz=10.0, tone1_hz=20.0, symbol_duration_s=1.0)


def _technique_list(text: str) -> list[DemodKind]:
    out = []
    for name in text.split(","):
        name = name.strip()
        if name not in TECHNIQUES:
            raise argparse.ArgumentTypeError(
                f"unknown technique {name!r}; choose from {', '.join(TECHNIQUES)}")
        out.append(TECHNIQUES[name])
    return out


def _ebn0_list(text: str) -> list[float]:
    """Comma list (``4,6,8``) or inclusive range ``start:step:stop``."""
    try:
        if ":" in text:
            start, step, stop = (float(v) for v in text.split(":"))
            if step <= 0:
                raise ValueError
            n = int(np.floor((stop - start) / step + 1e-9)) + 1
            return [round(start + i * step, 10) for i in range(n)]
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"bad Eb/N0 list {text!r}; use 'a,b,c' or 'start:step:stop'") from None


def _timing(text: str):
    if text == "auto":
        return text
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("--timing takes 'auto' or a sample count") from None
    if value < 0:
        raise argparse.ArgumentTypeError("--timing must be nonnegative")
    return value


def _threshold(text: str):
    if text == "mean":
        return text
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError("--threshold takes 'mean' or a number") from None


def _add_signal_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("signal parameters")
    g.add_argument("--fs", type=float, default=8000.0, help="sample rate in Hz (default 8000)")
    g.add_argument("--f0", type=float, default=-500.0, help="space tone (bit 0) in Hz (default -500)")
    g.add_argument("--f1", type=float, default=500.0, help="mark tone (bit 1) in Hz (default 500)")
    g.add_argument("--symbol-duration", type=float, default=0.001,
                   help="seconds per symbol (default 0.001)")


def _params(args) -> FskParams:
    return FskParams(args.fs, args.f0, args.f1, args.symbol_duration)


def cmd_gen(args) -> int:
    fio.write_bits(random_bits(args.bits, args.seed), args.out)
    return 0


def cmd_mod(args) -> int:
    params = _params(args)
    mode = OutputMode.REAL_PASSBAND if args.real_passband else OutputMode.COMPLEX_BASEBAND
    cfg = ModulatorConfig(params, continuous_phase=not args.phase_reset, output_mode=mode)
    fio.write_iq(modulate(fio.read_bits(args.inp), cfg), args.out)
    return 0


def cmd_channel(args) -> int:
    params = _params(args)
    cfg = ChannelConfig(ebn0_db=args.ebn0, snr_db=args.snr, cfo_hz=args.cfo,
                        phase_rad=args.phase, gain=args.gain, delay_samples=args.delay,
                        noise_seed=args.seed)
    iq = fio.read_iq(args.inp, params.sample_rate_hz)
    fio.write_iq(apply_channel(iq, cfg, params), args.out)
    return 0


def cmd_demod(args) -> int:
    params = _params(args)
    kind = TECHNIQUES[args.technique]
    iq = fio.read_iq(args.inp, params.sample_rate_hz)
    if args.timing == "auto":
        est = estimate_timing(iq, params, kind)
        offset = est.offset_samples
        logger.info("estimated timing offset %d samples", offset)
    else:
        offset = args.timing
    stats = demodulate(iq, kind, params, offset)
    if args.threshold == "mean":
        slicer = SlicerConfig()
    else:
        slicer = SlicerConfig(SlicerMode.FIXED, args.threshold)
    fio.write_bits(slice_bits(stats, slicer), args.out)
    return 0


def cmd_fec_encode(args) -> int:
    fio.write_bits(conv_encode(fio.read_bits(args.inp)), args.out)
    return 0


def cmd_fec_decode(args) -> int:
    fio.write_bits(viterbi_decode(fio.read_bits(args.inp)), args.out)
    return 0


def cmd_ber_sweep(args) -> int:
    params = _params(args)
    fec = {"on": [True], "off": [False], "both": [False, True]}[args.fec]
    grid = make_grid(args.ebn0, args.technique, fec)
    t0 = time.perf_counter()
    reports = run_ber_sweep(grid, args.bits_per_point, args.seed, params, jobs=args.jobs)
    elapsed = time.perf_counter() - t0
    fio.write_ber_csv(reports, args.out)

    print(f"{'Eb/N0':>7}  {'demod':<22} {'fec':>3}  {'bits':>8}  {'errors':>7}  {'BER':>11}"
          f"  {'bits/s*':>9}")
    for r in reports:
        print(f"{r.ebn0_db:7.2f}  {r.demod_kind.value:<22} {int(r.fec_enabled):3d}  "
              f"{r.n_bits:8d}  {r.n_errors:7d}  {r.ber:11.4e}  {r.throughput_bps:9.0f}")
    print(f"* throughput is wall-clock and machine dependent; sweep took {elapsed:.1f} s")
    return 0


def cmd_appendix_demo(args) -> int:
    bits = appendix_fft_pipeline([0, 1], FskParams(**APPENDIX_PARAMS))
    print("Extracted bit string:", "".join("01"[b] for b in bits.tolist()))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fskmodem", description="Binary FSK modem toolkit.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log diagnostics to stderr")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("gen", help="write deterministic random bits")
    p.add_argument("--bits", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("mod", help="modulate a bit file to cf32 IQ")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--real-passband", action="store_true", help="emit sin(phase) instead of exp(j*phase)")
    p.add_argument("--phase-reset", action="store_true", help="restart phase at every symbol")
    _add_signal_flags(p)
    p.set_defaults(func=cmd_mod)

    p = sub.add_parser("channel", help="apply AWGN, offsets, gain and delay to cf32 IQ")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    noise = p.add_mutually_exclusive_group()
    noise.add_argument("--ebn0", type=float, help="Eb/N0 in dB")
    noise.add_argument("--snr", type=float, help="per-sample SNR in dB")
    p.add_argument("--cfo", type=float, default=0.0, help="carrier offset in Hz")
    p.add_argument("--phase", type=float, default=0.0, help="phase rotation in radians")
    p.add_argument("--gain", type=float, default=1.0)
    p.add_argument("--delay", type=int, default=0, help="integer sample delay")
    p.add_argument("--seed", type=int, default=0, help="noise seed")
    _add_signal_flags(p)
    p.set_defaults(func=cmd_channel)

    p = sub.add_parser("demod", help="demodulate cf32 IQ to a bit file")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--technique", choices=list(TECHNIQUES), default="noncoherent")
    p.add_argument("--timing", type=_timing, default="auto", help="'auto' or sample offset")
    p.add_argument("--threshold", type=_threshold, default="mean", help="'mean' or a number")
    _add_signal_flags(p)
    p.set_defaults(func=cmd_demod)

    p = sub.add_parser("fec-encode", help="convolutionally encode a bit file")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_fec_encode)

    p = sub.add_parser("fec-decode", help="Viterbi-decode a bit file")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_fec_decode)

    p = sub.add_parser("ber-sweep", help="Monte-Carlo BER versus Eb/N0")
    p.add_argument("--ebn0", type=_ebn0_list, required=True, help="'a,b,c' or 'start:step:stop' dB")
    p.add_argument("--technique", type=_technique_list, default=[DemodKind.NONCOHERENT],
                   help="comma list of techniques")
    p.add_argument("--fec", choices=["on", "off", "both"], default="off")
    p.add_argument("--bits-per-point", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.add_argument("--out", required=True)
    _add_signal_flags(p)
    p.set_defaults(func=cmd_ber_sweep)

    p = sub.add_parser("appendix-demo", help="run the FFT + mean-threshold reference program")
    p.set_defaults(func=cmd_appendix_demo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (FskError, OSError, ValueError) as exc:
        print(f"fskmodem {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
