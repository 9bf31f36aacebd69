"""Cauchy analysis window in the Fourier domain and the associated basis.

Everything here lives in the frequency domain: the window's Fourier profile,
generalized Laguerre polynomials, the orthogonal family f_n used as the
transform's numerical oracle, and the nonvanishing factors eta and lambda
that tie the transform to an analytic function on the disk.

Gamma-function ratios are evaluated through log-gamma so that large window
parameters (alpha up to several hundred) never overflow doubles.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class WindowParams:
    """Window shape parameter beta > 0; alpha = 2*beta + 1 is derived."""

    beta: float

    def __post_init__(self):
        if not self.beta > 0:
            raise ValueError("beta must be positive")

    @property
    def alpha(self) -> float:
        return 2.0 * self.beta + 1.0

    @classmethod
    def from_alpha(cls, alpha: float) -> "WindowParams":
        if not alpha > 1:
            raise ValueError("alpha must exceed 1")
        return cls(beta=(alpha - 1.0) / 2.0)


def cauchy_wavelet_ft(nu, p: WindowParams):
    """Fourier profile of the Cauchy window: nu^beta * exp(-2*pi*nu) for
    nu >= 0, zero on negative frequencies."""
    nu = np.asarray(nu, dtype=float)
    out = np.zeros_like(nu)
    pos = nu > 0
    out[pos] = np.exp(p.beta * np.log(nu[pos]) - TWO_PI * nu[pos])
    return out[()] if out.ndim == 0 else out


def laguerre(n: int, a: float, mu):
    """Generalized Laguerre polynomial L_n^(a)(mu) by the three-term recurrence.

    L_0 = 1, L_1 = 1 + a - mu,
    (k+1) L_{k+1} = (2k + 1 + a - mu) L_k - (k + a) L_{k-1}.
    """
    if n < 0:
        raise ValueError("order must be nonnegative")
    mu = np.asarray(mu, dtype=float)
    prev = np.ones_like(mu)
    if n == 0:
        return prev[()] if prev.ndim == 0 else prev
    cur = 1.0 + a - mu
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + a - mu) * cur - (k + a) * prev) / (k + 1)
    return cur[()] if cur.ndim == 0 else cur


def basis_ft(n: int, nu, p: WindowParams):
    """Fourier transform of the n-th basis function f_n.

    sqrt(n!/Gamma(2b+n+1)) * 2pi * e^(-2pi nu) * (2pi)^(2b) * nu^b * L_n^(2b)(4pi nu)
    for nu >= 0, and zero for nu < 0 (analytic-signal convention).
    """
    b = p.beta
    nu = np.asarray(nu, dtype=float)
    out = np.zeros_like(nu)
    pos = nu > 0
    if np.any(pos):
        log_amp = (
            0.5 * (gammaln(n + 1) - gammaln(2 * b + n + 1))
            + np.log(TWO_PI)
            + 2 * b * np.log(TWO_PI)
            + b * np.log(nu[pos])
            - TWO_PI * nu[pos]
        )
        out[pos] = laguerre(n, 2 * b, 2 * TWO_PI * nu[pos]) * np.exp(log_amp)
    return out[()] if out.ndim == 0 else out


def eta_beta(x, xi, p: WindowParams):
    """Nonvanishing factor sqrt(xi) e^(-2pi i xi x) (i/(x + i/xi + i))^(2b+1)."""
    x = np.asarray(x, dtype=float)
    xi = np.asarray(xi, dtype=float)
    if np.any(xi <= 0):
        raise ValueError("xi must be positive")
    base = 1j / (x + 1j * (1.0 / xi + 1.0))
    out = np.exp(
        0.5 * np.log(xi)
        - 2j * np.pi * xi * x
        + (2 * p.beta + 1) * np.log(base)
    )
    return out[()] if out.ndim == 0 else out


def lambda_factor(x, xi, p: WindowParams):
    """Nonvanishing factor lambda(x, xi) = xi^(-beta) e^(-2pi i xi x)."""
    x = np.asarray(x, dtype=float)
    xi = np.asarray(xi, dtype=float)
    if np.any(xi <= 0):
        raise ValueError("xi must be positive")
    out = np.exp(-p.beta * np.log(xi) - 2j * np.pi * xi * x)
    return out[()] if out.ndim == 0 else out


def closed_form_ast_basis(n: int, x, xi, p: WindowParams):
    """Closed-form transform of the basis function f_n at (x, xi):

        eta_beta(x, xi) * sqrt(Gamma(2b+n+1)/n!) * theta(x + i/xi)^n

    where theta is the Cayley map.  Evaluated entirely in the log domain so
    arbitrary n and alpha stay finite.
    """
    if n < 0:
        raise ValueError("order must be nonnegative")
    b = p.beta
    x = np.asarray(x, dtype=float)
    xi = np.asarray(xi, dtype=float)
    if np.any(xi <= 0):
        raise ValueError("xi must be positive")
    x, xi = np.broadcast_arrays(x, xi)
    z = x + 1j / xi
    base = 1j / (z + 1j)
    theta = (z - 1j) / (z + 1j)
    log_eta = 0.5 * np.log(xi) - 2j * np.pi * xi * x + (2 * b + 1) * np.log(base)
    log_amp = 0.5 * (gammaln(2 * b + n + 1) - gammaln(n + 1))
    if n == 0:
        out = np.exp(log_eta + log_amp) * np.ones_like(theta)
    else:
        out = np.zeros_like(theta)
        nz = theta != 0
        out[nz] = np.exp(log_eta[nz] + log_amp + n * np.log(theta[nz]))
    return out[()] if out.ndim == 0 else out
