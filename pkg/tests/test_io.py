import numpy as np
import pytest

from astzeros import (
    GuardSpec,
    LogFreqGrid,
    RadialStats,
    TimeGrid,
    WindowParams,
    dast_spectral,
    detect_zeros,
    sample_white_noise,
)
from astzeros import io as zio


def _signal(n=32, seed=0):
    tg = TimeGrid.from_sampling(0.0, 8.0, n)
    return sample_white_noise(n, seed, grid=tg)


def test_signal_csv_roundtrip(tmp_path):
    sig = _signal()
    path = tmp_path / "sig.csv"
    zio.write_signal_csv(sig, path)
    back = zio.read_signal_csv(path)
    assert back.grid == sig.grid
    assert np.array_equal(back.samples, sig.samples)


def test_signal_binary_roundtrip(tmp_path):
    sig = _signal()
    path = tmp_path / "sig.bin"
    zio.write_signal_binary(sig, path)
    back = zio.read_signal_binary(path)
    assert back.grid.n_samples == sig.grid.n_samples
    assert back.grid.sample_rate == pytest.approx(sig.grid.sample_rate)
    assert np.array_equal(back.samples, sig.samples)


def test_signal_binary_rejects_garbage(tmp_path):
    path = tmp_path / "bad.bin"
    path.write_bytes(b"NOTMAGIC" + b"\0" * 64)
    with pytest.raises(ValueError):
        zio.read_signal_binary(path)
    zio.write_signal_binary(_signal(), path)
    path.write_bytes(path.read_bytes()[:-8])  # truncate payload
    with pytest.raises(ValueError):
        zio.read_signal_binary(path)


def test_tfmatrix_roundtrip(tmp_path):
    sig = _signal()
    fg = LogFreqGrid(0.5, 2.0, 6)
    S = dast_spectral(sig, fg, WindowParams(5.0))
    path = tmp_path / "tf.csv"
    zio.write_tfmatrix_csv(S, path)
    back = zio.read_tfmatrix_csv(path)
    assert back.time_grid == S.time_grid
    assert back.freq_grid == S.freq_grid
    assert back.params == S.params
    assert back.convention == S.convention
    assert back.log_scale == S.log_scale
    assert np.array_equal(back.values, S.values)


def test_zeroset_csv_roundtrip(tmp_path):
    sig = _signal(64, 3)
    fg = LogFreqGrid(0.5, 2.0, 10)
    S = dast_spectral(sig, fg, WindowParams(5.0))
    zs = detect_zeros(S, GuardSpec(1, 0, None))
    path = tmp_path / "zeros.csv"
    zio.write_zeroset_csv(zs, path, meta={"seed": 3})
    w = zio.read_zeros_csv(path)
    assert np.array_equal(w, zs.w)


def test_zeros_csv_without_grid_columns(tmp_path):
    w = np.array([0.1 + 0.2j, -0.3j])
    path = tmp_path / "gaf.csv"
    zio.write_zeros_csv(path, None, None, w, meta={"alpha": 10.0})
    assert np.array_equal(zio.read_zeros_csv(path), w)
    assert zio._read_meta(path)["alpha"] == "10.0"


def test_radial_stats_csv(tmp_path):
    st = RadialStats(np.array([0.1, 0.2]), np.array([0.5, 1.5]),
                     np.array([3, 9]), 0.05, 7)
    path = tmp_path / "stats.csv"
    zio.write_radial_stats_csv(st, path, meta={"alpha": 5.0})
    lines = path.read_text().splitlines()
    assert lines[0] == "# alpha=5.0"
    assert lines[1] == "r,g_hat,n_pairs,n_centers"
    assert lines[2].startswith("0.1,0.5,3,7")


def test_writes_are_deterministic(tmp_path):
    sig = _signal()
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    zio.write_signal_csv(sig, a)
    zio.write_signal_csv(sig, b)
    assert a.read_bytes() == b.read_bytes()
