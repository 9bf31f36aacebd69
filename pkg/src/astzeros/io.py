"""CSV and binary readers/writers for signals, transform matrices, zero
sets, and spatial statistics.

All text output is written with explicit repr-precision floats and fixed
key ordering so that identical inputs produce byte-identical files.
Metadata rides in ``# key=value`` comment lines ahead of the column
header.
"""

import struct

import numpy as np

from .transform import DiscreteSignal, LogFreqGrid, TFMatrix, TimeGrid
from .windows import WindowParams
from .zeros import ZeroSet

_SIGNAL_MAGIC = b"ASTZSIG1"


def _fmt(v: float) -> str:
    return repr(float(v))


def _write_meta(f, meta: dict):
    for k in meta:
        f.write(f"# {k}={meta[k]}\n")


def _read_meta(path):
    meta = {}
    with open(path) as f:
        for line in f:
            if not line.startswith("#"):
                break
            body = line[1:].strip()
            if "=" in body:
                k, v = body.split("=", 1)
                meta[k.strip()] = v.strip()
    return meta


def write_signal_csv(sig: DiscreteSignal, path):
    with open(path, "w") as f:
        _write_meta(f, {
            "x_min": _fmt(sig.grid.x_min),
            "x_max": _fmt(sig.grid.x_max),
            "n_samples": sig.grid.n_samples,
        })
        f.write("index,real,imag\n")
        for i, v in enumerate(sig.samples):
            f.write(f"{i},{_fmt(v.real)},{_fmt(v.imag)}\n")


def read_signal_csv(path) -> DiscreteSignal:
    meta = _read_meta(path)
    data = np.loadtxt(path, delimiter=",", skiprows=len(meta) + 1, ndmin=2)
    grid = TimeGrid(float(meta["x_min"]), float(meta["x_max"]),
                    int(meta["n_samples"]))
    return DiscreteSignal(data[:, 1] + 1j * data[:, 2], grid)


def write_signal_binary(sig: DiscreteSignal, path):
    """Little-endian binary: 8-byte magic, uint64 N, float64 sample rate,
    then interleaved float64 (re, im) pairs.  Time origin is zero."""
    with open(path, "wb") as f:
        f.write(_SIGNAL_MAGIC)
        f.write(struct.pack("<Qd", sig.grid.n_samples, sig.grid.sample_rate))
        inter = np.empty(2 * len(sig.samples))
        inter[0::2] = sig.samples.real
        inter[1::2] = sig.samples.imag
        f.write(inter.astype("<f8").tobytes())


def read_signal_binary(path) -> DiscreteSignal:
    with open(path, "rb") as f:
        magic = f.read(8)
        if magic != _SIGNAL_MAGIC:
            raise ValueError("not a signal file (bad magic)")
        n, rate = struct.unpack("<Qd", f.read(16))
        inter = np.frombuffer(f.read(16 * n), dtype="<f8")
    if len(inter) != 2 * n:
        raise ValueError("truncated signal payload")
    grid = TimeGrid.from_sampling(0.0, rate, n)
    return DiscreteSignal(inter[0::2] + 1j * inter[1::2], grid)


def write_tfmatrix_csv(S: TFMatrix, path):
    x = S.time_grid.nodes()
    xi = S.freq_grid.channels()
    with open(path, "w") as f:
        _write_meta(f, {
            "beta": _fmt(S.params.beta),
            "convention": S.convention,
            "log_scale": _fmt(S.log_scale),
            "x_min": _fmt(S.time_grid.x_min),
            "x_max": _fmt(S.time_grid.x_max),
            "n_samples": S.time_grid.n_samples,
            "xi_min": _fmt(S.freq_grid.xi_min),
            "xi_max": _fmt(S.freq_grid.xi_max),
            "n_channels": S.freq_grid.n_channels,
        })
        f.write("j,m,x,xi,re,im,abs\n")
        for m in range(S.freq_grid.n_channels):
            col = S.values[:, m]
            for j in range(S.time_grid.n_samples):
                v = col[j]
                f.write(
                    f"{j},{m},{_fmt(x[j])},{_fmt(xi[m])},"
                    f"{_fmt(v.real)},{_fmt(v.imag)},{_fmt(abs(v))}\n"
                )


def read_tfmatrix_csv(path) -> TFMatrix:
    meta = _read_meta(path)
    tg = TimeGrid(float(meta["x_min"]), float(meta["x_max"]),
                  int(meta["n_samples"]))
    fg = LogFreqGrid(float(meta["xi_min"]), float(meta["xi_max"]),
                     int(meta["n_channels"]))
    data = np.loadtxt(path, delimiter=",", skiprows=len(meta) + 1, ndmin=2)
    vals = np.zeros((tg.n_samples, fg.n_channels), dtype=complex)
    j = data[:, 0].astype(int)
    m = data[:, 1].astype(int)
    vals[j, m] = data[:, 4] + 1j * data[:, 5]
    return TFMatrix(vals, tg, fg, WindowParams(float(meta["beta"])),
                    meta["convention"], float(meta["log_scale"]))


def write_zeros_csv(path, x, xi, w, j=None, m=None, meta=None):
    """Zero list; grid indices are left empty for zeros without a grid
    (e.g. sampled analytic-function zeros)."""
    with open(path, "w") as f:
        _write_meta(f, meta or {})
        f.write("j,m,x,xi,re_w,im_w\n")
        for k in range(len(w)):
            js = "" if j is None else str(int(j[k]))
            ms = "" if m is None else str(int(m[k]))
            xs = "" if x is None else _fmt(x[k])
            xis = "" if xi is None else _fmt(xi[k])
            f.write(f"{js},{ms},{xs},{xis},"
                    f"{_fmt(w[k].real)},{_fmt(w[k].imag)}\n")


def write_zeroset_csv(zs: ZeroSet, path, meta=None):
    write_zeros_csv(path, zs.x, zs.xi, zs.w, zs.j, zs.m, meta)


def read_zeros_csv(path) -> np.ndarray:
    """Disk points only (the last two columns); grid columns may be empty."""
    meta = _read_meta(path)
    w = []
    with open(path) as f:
        rows = [ln for ln in f if not ln.startswith("#")]
    for ln in rows[1:]:
        parts = ln.strip().split(",")
        w.append(float(parts[4]) + 1j * float(parts[5]))
    return np.asarray(w, dtype=complex)


def write_radial_stats_csv(stats, path, meta=None):
    with open(path, "w") as f:
        _write_meta(f, meta or {})
        f.write("r,g_hat,n_pairs,n_centers\n")
        for i, r in enumerate(stats.r_bins):
            f.write(f"{_fmt(r)},{_fmt(stats.g_values[i])},"
                    f"{int(stats.n_pairs[i])},{stats.n_centers}\n")


def write_intensity_csv(path, r_prime, count, area, rho_hat, meta=None):
    with open(path, "w") as f:
        _write_meta(f, meta or {})
        f.write("r_prime,count,area,rho_hat\n")
        for i in range(len(r_prime)):
            f.write(f"{_fmt(r_prime[i])},{_fmt(count[i])},"
                    f"{_fmt(area[i])},{_fmt(rho_hat[i])}\n")
