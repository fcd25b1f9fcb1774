import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fskmodem.core import DemodKind, IoFailure, IqBuffer, MalformedFile
from fskmodem.io import (
    format_ber,
    read_ber_csv,
    read_bits,
    read_iq,
    write_ber_csv,
    write_bits,
    write_iq,
)
from fskmodem.metrics import BerReport


def test_iq_size_law(tmp_path):
    path = tmp_path / "x.cf32"
    write_iq(IqBuffer(np.array([1 + 2j, -0.5j, 3.0]), 1000), path)
    assert path.stat().st_size == 24


def test_iq_little_endian_layout(tmp_path):
    path = tmp_path / "x.cf32"
    write_iq(IqBuffer(np.array([1 + 2j]), 1000), path)
    assert path.read_bytes() == bytes.fromhex("0000803f00000040")


def test_iq_round_trip(tmp_path):
    x = np.exp(1j * np.linspace(0, 7, 101)) * 0.3
    path = tmp_path / "x.cf32"
    write_iq(IqBuffer(x, 48000), path)
    y = read_iq(path, 48000)
    assert y.sample_rate_hz == 48000
    q = x.real.astype(np.float32) + 1j * x.imag.astype(np.float32)
    assert np.array_equal(y.samples, q)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False),
                max_size=64))
def test_iq_round_trip_property(tmp_path_factory, values):
    path = tmp_path_factory.mktemp("iq") / "x.cf32"
    x = np.array(values, dtype=complex)
    write_iq(IqBuffer(x, 1.0), path)
    y = read_iq(path, 1.0).samples
    assert np.array_equal(y, x.real.astype(np.float32) + 1j * x.imag.astype(np.float32))


def test_real_buffer_writes_zero_q(tmp_path):
    path = tmp_path / "r.cf32"
    write_iq(IqBuffer(np.array([0.5, -1.0]), 10), path)
    assert np.array_equal(read_iq(path, 10).samples, np.array([0.5, -1.0 + 0j]))


def test_iq_odd_float_count(tmp_path):
    path = tmp_path / "bad.cf32"
    path.write_bytes(np.zeros(7, dtype="<f4").tobytes())
    with pytest.raises(MalformedFile):
        read_iq(path, 1000)


def test_iq_missing_file(tmp_path):
    with pytest.raises(IoFailure):
        read_iq(tmp_path / "nope.cf32", 1000)


def test_bits_round_trip(tmp_path):
    path = tmp_path / "b.txt"
    write_bits([1, 0, 0, 1], path)
    assert path.read_text() == "1001\n"
    assert read_bits(path).tolist() == [1, 0, 0, 1]


def test_bits_without_newline_and_empty(tmp_path):
    path = tmp_path / "b.txt"
    path.write_text("0110")
    assert read_bits(path).tolist() == [0, 1, 1, 0]
    path.write_text("")
    assert read_bits(path).size == 0


@pytest.mark.parametrize("text", ["01a1", "01 1", "0101\n\n"])
def test_bits_rejects_garbage(tmp_path, text):
    path = tmp_path / "b.txt"
    path.write_text(text)
    with pytest.raises(MalformedFile):
        read_bits(path)


@pytest.mark.parametrize("value, text", [
    (3.37e-3, "3.37000e-3"),
    (0.0, "0.00000e0"),
    (1.0, "1.00000e0"),
    (0.25, "2.50000e-1"),
    (1 / 3, "3.33333e-1"),
])
def test_format_ber(value, text):
    assert format_ber(value) == text


def test_csv_empty(tmp_path):
    path = tmp_path / "b.csv"
    write_ber_csv([], path)
    assert path.read_text() == "ebn0_db,demod,fec,n_bits,n_errors,ber,seed\n"


def test_csv_row(tmp_path):
    path = tmp_path / "b.csv"
    write_ber_csv([BerReport(10.0, DemodKind.NONCOHERENT, False, 100000, 337, 7)], path)
    assert path.read_text().splitlines()[1] == "10,noncoherent,0,100000,337,3.37000e-3,7"


def test_csv_round_trip(tmp_path):
    reports = [
        BerReport(-2.5, "coherent", True, 1000, 12, 2**64 - 1),
        BerReport(6.0, "noncoherent_squarelaw", False, 5000, 0, 0),
        BerReport(0.1, "differential", True, 3, 3, 17),
    ]
    path = tmp_path / "b.csv"
    write_ber_csv(reports, path)
    back = read_ber_csv(path)
    assert back == reports
    assert path.read_text().splitlines()[1].startswith("-2.5,coherent,1,")


def test_csv_unwritable(tmp_path):
    with pytest.raises(IoFailure):
        write_ber_csv([], tmp_path / "missing-dir" / "b.csv")
