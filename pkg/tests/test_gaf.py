import numpy as np
import pytest
from scipy.special import gammaln, logsumexp

from astzeros import (
    GafSample,
    MetricConvention,
    expected_count,
    gaf_zeros,
    hyperbolic_disk_area,
    hyperbolic_radius_from_pseudo,
    sample_gaf,
    theoretical_intensity,
    theoretical_pair_correlation,
    truncation_order,
)


def _poly_sample(coeffs, alpha=2.0):
    c = np.asarray(coeffs, dtype=complex)
    return GafSample(alpha, len(c), 0.0, c)


def test_sample_gaf_determinism_and_validation():
    a = sample_gaf(20.0, 64, 5)
    b = sample_gaf(20.0, 64, 5)
    c = sample_gaf(20.0, 64, 6)
    assert np.array_equal(a.coeffs, b.coeffs)
    assert not np.array_equal(a.coeffs, c.coeffs)
    with pytest.raises(ValueError):
        sample_gaf(-1.0, 64, 5)
    with pytest.raises(ValueError):
        GafSample(2.0, 3, 0.0, np.zeros(2))


def test_known_linear_root():
    # c0 + c1 w = 0 at w = -c0/c1
    z = gaf_zeros(_poly_sample([0.2 - 0.1j, 1.0 + 0.5j]), 0.9)
    assert len(z) == 1
    assert z[0] == pytest.approx(-(0.2 - 0.1j) / (1.0 + 0.5j), abs=1e-10)


def test_known_quadratic_roots():
    r1, r2 = 0.3, -0.2 + 0.4j
    coeffs = [r1 * r2, -(r1 + r2), 1.0]
    z = np.sort_complex(gaf_zeros(_poly_sample(coeffs), 0.9))
    expect = np.sort_complex(np.array([r1, r2]))
    assert np.allclose(z, expect, atol=1e-10)


def test_roots_outside_radius_are_dropped():
    z = gaf_zeros(_poly_sample([-0.9, 0.0, 1.0]), 0.5)  # roots at +-0.948...
    assert len(z) == 0


def test_root_at_origin_is_kept():
    z = gaf_zeros(_poly_sample([0.0, 1.0, 0.5]), 0.9)
    assert np.any(np.abs(z) == 0)


def test_zero_polynomial_rejected():
    with pytest.raises(ValueError):
        gaf_zeros(_poly_sample([0.0, 0.0, 0.0]), 0.5)


def test_real_coefficients_give_conjugate_root_pairs():
    rng = np.random.default_rng(3)
    g = sample_gaf(30.0, truncation_order(30.0, 0.8), 11)
    coeffs = np.abs(g.coeffs) * np.sign(rng.standard_normal(len(g.coeffs)))
    z = gaf_zeros(GafSample(30.0, len(coeffs), g.log_amp_scale, coeffs), 0.8)
    off_axis = z[np.abs(z.imag) > 1e-8]
    for w in off_axis:
        assert np.min(np.abs(off_axis - np.conj(w))) < 1e-8


def test_zeros_are_distinct_and_inside():
    g = sample_gaf(50.0, truncation_order(50.0, 0.8), 123)
    z = gaf_zeros(g, 0.8)
    assert np.all(np.abs(z) <= 0.8)
    if len(z) > 1:
        d = np.abs(z[:, None] - z[None, :])
        np.fill_diagonal(d, np.inf)
        assert d.min() > 1e-9


def test_mean_count_matches_intensity():
    alpha, r = 5.0, 0.8
    trunc = truncation_order(alpha, r)
    counts = [len(gaf_zeros(sample_gaf(alpha, trunc, s), r))
              for s in range(80)]
    mean = np.mean(counts)
    se = np.std(counts, ddof=1) / np.sqrt(len(counts))
    assert abs(mean - expected_count(alpha, r)) < 4 * se


@pytest.mark.parametrize("alpha,r", [(10.0, 0.9), (50.0, 0.8)])
def test_truncation_rule_bounds_tail(alpha, r):
    N = truncation_order(alpha, r)
    n = np.arange(N + 5000)
    log_terms = gammaln(alpha + n) - gammaln(n + 1.0) + 2 * n * np.log(r)
    log_total = logsumexp(log_terms)
    log_tail = logsumexp(log_terms[N:])
    assert 0.5 * (log_tail - log_total) < np.log(1e-8)


def test_truncation_rule_monotonicity():
    assert truncation_order(10.0, 0.9) > truncation_order(10.0, 0.5)
    assert truncation_order(300.0, 0.8) > truncation_order(10.0, 0.8)
    with pytest.raises(ValueError):
        truncation_order(10.0, 1.0)


def test_large_alpha_representation_stays_finite():
    g = sample_gaf(500.0, 4000, 0)
    assert np.all(np.isfinite(g.coeffs))
    assert np.isfinite(g.log_amp_scale)
    assert np.max(np.abs(g.coeffs)) > 0


def test_intensity_conventions_agree_on_expected_count():
    alpha = 17.0
    for r in (0.2, 0.5, 0.9):
        r_prime = hyperbolic_radius_from_pseudo(r)
        for conv in MetricConvention:
            n = theoretical_intensity(alpha, conv) * hyperbolic_disk_area(
                r_prime, conv
            )
            assert n == pytest.approx(expected_count(alpha, r), rel=1e-12)


def test_pair_correlation_checkpoints():
    # alpha = 1 at r^2 = 1/2: exact value 3/4
    assert theoretical_pair_correlation(1.0, np.sqrt(0.5)) == pytest.approx(
        0.75, abs=1e-12
    )
    # r -> 1: complete decorrelation, g -> 1
    assert theoretical_pair_correlation(7.0, 1.0 - 1e-8) == pytest.approx(
        1.0, abs=1e-12
    )
    # r -> 0: quadratic repulsion g ~ r^2 (alpha+1)^2 / (2 alpha)
    alpha, r = 500.0, 1e-4
    g = theoretical_pair_correlation(alpha, r)
    assert np.isfinite(g)
    assert g / r ** 2 == pytest.approx((alpha + 1) ** 2 / (2 * alpha), rel=1e-3)
    with pytest.raises(ValueError):
        theoretical_pair_correlation(2.0, 1.5)
