import struct

import numpy as np
import pytest

from nent import FormatError, read_stream_file, write_stream_file


def test_roundtrip_widths(tmp_path):
    for w, lo, hi in ((16, -2**15, 2**15 - 1), (32, -2**31, 2**31 - 1), (64, -2**62, 2**62)):
        rng = np.random.default_rng(w)
        data = rng.integers(lo, hi + 1, size=(4, 100), dtype=np.int64)
        path = tmp_path / f"s{w}.nent"
        write_stream_file(path, data, w)
        back, back_w = read_stream_file(path)
        assert back_w == w
        assert back.dtype == np.int64
        assert np.array_equal(back, data)


def test_roundtrip_byte_identical(tmp_path):
    data = np.arange(-50, 50, dtype=np.int64).reshape(4, 25)
    a = tmp_path / "a.nent"
    b = tmp_path / "b.nent"
    write_stream_file(a, data, 32)
    back, _ = read_stream_file(a)
    write_stream_file(b, back, 32)
    assert a.read_bytes() == b.read_bytes()


def test_value_does_not_fit_width(tmp_path):
    data = np.array([[40000]])
    with pytest.raises(FormatError):
        write_stream_file(tmp_path / "x.nent", data, 16)


def test_bad_width(tmp_path):
    with pytest.raises(FormatError):
        write_stream_file(tmp_path / "x.nent", np.zeros((2, 2)), 24)


def test_bad_magic(tmp_path):
    path = tmp_path / "x.nent"
    write_stream_file(path, np.zeros((2, 3)), 32)
    raw = bytearray(path.read_bytes())
    raw[:4] = b"JUNK"
    path.write_bytes(bytes(raw))
    with pytest.raises(FormatError):
        read_stream_file(path)


def test_bad_version(tmp_path):
    path = tmp_path / "x.nent"
    write_stream_file(path, np.zeros((2, 3)), 32)
    raw = bytearray(path.read_bytes())
    raw[4] = 99
    path.write_bytes(bytes(raw))
    with pytest.raises(FormatError):
        read_stream_file(path)


def test_truncated_header(tmp_path):
    path = tmp_path / "x.nent"
    path.write_bytes(b"NENT\x01")
    with pytest.raises(FormatError):
        read_stream_file(path)


def test_truncated_payload(tmp_path):
    path = tmp_path / "x.nent"
    write_stream_file(path, np.ones((3, 10)), 32)
    raw = path.read_bytes()
    path.write_bytes(raw[:-4])
    with pytest.raises(FormatError):
        read_stream_file(path)


def test_zero_streams_rejected(tmp_path):
    path = tmp_path / "x.nent"
    write_stream_file(path, np.ones((3, 10)), 32)
    raw = bytearray(path.read_bytes())
    # stream count field lives in the header after magic+version+width+reserved
    m_off = struct.calcsize("<4sBBH")
    raw[m_off:m_off + 4] = struct.pack("<I", 0)
    path.write_bytes(bytes(raw))
    with pytest.raises(FormatError):
        read_stream_file(path)
