"""Shared oracles for the test suite.

Everything here is independent of the library internals it is used to
check: closed-form expressions, inverse-CDF samplers, and Mobius maps.
"""

import numpy as np
from scipy.special import gammaln

from astzeros import DiscreteSignal, TimeGrid, WindowParams, basis_ft


def closed_form_psi(u, p: WindowParams):
    """Time-domain analysis window from the explicit integral:

        psi(u) = sqrt(2*pi) * Gamma(beta+1) * (2*pi)^-(beta+1) * (1-iu)^-(beta+1)
    """
    u = np.asarray(u, dtype=float)
    b = p.beta
    log_amp = 0.5 * np.log(2 * np.pi) + gammaln(b + 1) \
        - (b + 1) * np.log(2 * np.pi)
    return np.exp(log_amp - (b + 1) * np.log(1.0 - 1j * u))


def synth_basis_signal(n: int, grid: TimeGrid, p: WindowParams) -> DiscreteSignal:
    """Sample the n-th basis function on a time grid by Fourier synthesis.

    The basis function is supported on positive frequencies and decays like
    exp(-2*pi*nu), so summing the first N positive frequency bins of the
    grid's Fourier dual reproduces the samples to near roundoff provided
    the Nyquist frequency covers the spectral support.
    """
    N = grid.n_samples
    dnu = grid.sample_rate / N
    nu = dnu * np.arange(N)
    F = basis_ft(n, nu, p) * np.exp(2j * np.pi * nu * grid.x_min)
    samples = np.fft.ifft(F) * N * dnu
    return DiscreteSignal(samples, grid)


def sample_poisson_disk(alpha: float, radius: float, rng) -> np.ndarray:
    """Poisson point process on the pseudo-hyperbolic disk of the given
    radius whose mean measure matches the zero intensity: expected count
    in radius r is alpha * r^2 / (1 - r^2).

    Radial inverse CDF: with t = u * R^2/(1-R^2), the radius is
    sqrt(t / (1 + t)); angles are uniform.
    """
    lam = alpha * radius ** 2 / (1.0 - radius ** 2)
    n = rng.poisson(lam)
    t = rng.random(n) * (radius ** 2 / (1.0 - radius ** 2))
    r = np.sqrt(t / (1.0 + t))
    ang = 2.0 * np.pi * rng.random(n)
    return r * np.exp(1j * ang)


def mobius_disk(w, a, phi=0.0):
    """Disk automorphism e^{i phi} (w - a)/(1 - conj(a) w); an isometry of
    both the pseudo-hyperbolic and the hyperbolic distance."""
    return np.exp(1j * phi) * (w - a) / (1.0 - np.conj(a) * w)
