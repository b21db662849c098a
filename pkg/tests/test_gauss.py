"""Log-det engine, standard-form conversion, and channel containers."""
import math

import numpy as np
import pytest

from ifccr import (
    ChannelGains,
    GeneralChannel,
    InputCoeffs,
    NoiseCorr,
    build_general_covariance,
    build_joint_covariance,
    cap,
    effective_coeffs,
    mi_batch,
    mi_pair,
    mutual_info,
    to_standard_form,
)
from ifccr.gauss import DomainError, UsageError


def _random_gains(rng, complex_cross=True):
    if complex_cross:
        h12 = complex(rng.normal(), rng.normal())
        h21 = complex(rng.normal(), rng.normal())
    else:
        h12 = rng.normal()
        h21 = rng.normal()
    return ChannelGains(rng.uniform(0.2, 2.0), rng.uniform(0.2, 2.0),
                        rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0),
                        h12, h21)


def _random_coeffs(rng):
    b = rng.uniform(-0.8, 0.8, size=2)
    n = np.hypot(*b)
    if n > 0.95:
        b *= 0.95 / n
    return InputCoeffs(b[0], b[1])


def test_cap_scalar_values():
    assert cap(0.0) == 0.0
    assert abs(cap(1.0) - 1.0) < 1e-15
    assert abs(cap(3.0) - 2.0) < 1e-15


def test_point_to_point_rate():
    # single active transmitter: I(Y1; X1) = log2(1 + h11^2)
    for h in (0.5, 1.0, 2.5):
        g = ChannelGains(h, 1.0, 0.0, 0.0, 0.0, 0.0)
        cov = build_joint_covariance(g, InputCoeffs())
        assert abs(mutual_info(cov, ["Y1", "X1"]) - cap(h * h)) < 1e-12


def test_relay_signal_has_unit_power():
    rng = np.random.default_rng(11)
    g = _random_gains(rng)
    for _ in range(20):
        c = _random_coeffs(rng)
        cov = build_joint_covariance(g, c)
        i = cov.labels.index("Xc")
        assert abs(cov.matrix[i, i].real - 1.0) < 1e-12


def test_relay_power_on_disk_boundary():
    # |beta1|^2 + |beta2|^2 = 1 leaves no fresh-noise power but stays legal
    g = ChannelGains(1.0, 1.0, 1.5, 0.7, 0.3, -0.2)
    c = InputCoeffs(math.sqrt(0.4), math.sqrt(0.6))
    cov = build_joint_covariance(g, c)
    i = cov.labels.index("Xc")
    assert abs(cov.matrix[i, i].real - 1.0) < 1e-12


def test_mutual_info_chain_rule_and_nonnegativity():
    rng = np.random.default_rng(3)
    for _ in range(25):
        g = _random_gains(rng)
        cov = build_joint_covariance(g, _random_coeffs(rng))
        joint = mutual_info(cov, ["Y1", "X1", "X2"])
        first = mutual_info(cov, ["Y1", "X1"])
        second = mutual_info(cov, ["Y1", "X2"], ["X1"])
        assert joint >= -1e-12
        assert abs(joint - (first + second)) < 1e-9


def test_mi_pair_symmetry():
    rng = np.random.default_rng(4)
    for _ in range(10):
        g = _random_gains(rng)
        cov = build_joint_covariance(g, _random_coeffs(rng))
        a = mi_pair(cov, ["Y1"], ["X1"], ["X2"])
        b = mi_pair(cov, ["X1"], ["Y1"], ["X2"])
        assert abs(a - b) < 1e-10


def test_mi_batch_matches_mi_pair():
    rng = np.random.default_rng(5)
    g = _random_gains(rng)
    coeffs = [_random_coeffs(rng) for _ in range(30)]
    covs = [build_joint_covariance(g, c) for c in coeffs]
    labels = covs[0].labels
    sig = np.stack([c.matrix for c in covs])
    ia = [labels.index("Y1")]
    ib = [labels.index("X1"), labels.index("Xc")]
    ic = [labels.index("X2")]
    batch = mi_batch(sig, ia, ib, ic)
    for k, cov in enumerate(covs):
        ref = mi_pair(cov, ["Y1"], ["X1", "Xc"], ["X2"])
        assert abs(batch[k] - ref) < 1e-7


def test_effective_coeffs_match_engine():
    # I(Y1; X1, Xc | X2) = log2(1 + |u1|^2 + w1^2) and the Y2 mirror
    rng = np.random.default_rng(6)
    for _ in range(20):
        g = _random_gains(rng)
        c = _random_coeffs(rng)
        cov = build_joint_covariance(g, c)
        u1, v1, w1sq, u2, v2, w2sq = effective_coeffs(g, c.beta1, c.beta2)
        lhs1 = mutual_info(cov, ["Y1", "X1", "Xc"], ["X2"])
        lhs2 = mutual_info(cov, ["Y2", "X2", "Xc"], ["X1"])
        assert abs(lhs1 - math.log2(1 + abs(u1) ** 2 + w1sq)) < 1e-9
        assert abs(lhs2 - math.log2(1 + abs(v2) ** 2 + w2sq)) < 1e-9


def test_surrogate_outputs_share_marginals():
    g = ChannelGains(1.0, 1.0, 1.2, 0.8, 0.5, -0.3)
    c = InputCoeffs(0.4, 0.5)
    cov = build_joint_covariance(g, c, include_surrogates=True)
    m, lab = cov.matrix, list(cov.labels)
    for real, til in (("Y1", "Ytil1"), ("Y2", "Ytil2")):
        i, j = lab.index(real), lab.index(til)
        assert abs(m[i, i] - m[j, j]) < 1e-12
        for other in ("X1", "X2", "Xc"):
            k = lab.index(other)
            assert abs(m[i, k] - m[j, k]) < 1e-12


def test_standard_form_gain_conventions():
    rng = np.random.default_rng(7)
    for _ in range(20):
        ch = GeneralChannel(
            g11=complex(rng.normal(), rng.normal()),
            g12=complex(rng.normal(), rng.normal()),
            g21=complex(rng.normal(), rng.normal()),
            g22=complex(rng.normal(), rng.normal()),
            g1c=complex(rng.normal(), rng.normal()),
            g2c=complex(rng.normal(), rng.normal()),
            P1=rng.uniform(0.2, 4.0), P2=rng.uniform(0.2, 4.0),
            Pc=rng.uniform(0.2, 4.0),
            s1sq=rng.uniform(0.2, 4.0), s2sq=rng.uniform(0.2, 4.0),
        )
        g = to_standard_form(ch)
        for v in (g.h11, g.h22, g.h1c, g.h2c):
            assert isinstance(v, float) and v >= 0.0


def test_standard_form_preserves_mutual_information():
    rng = np.random.default_rng(8)
    queries = [
        (["Y1", "X1", "X2", "Xc"], []),
        (["Y2", "X1", "X2", "Xc"], []),
        (["Y1", "X1", "Xc"], ["X2"]),
        (["Y2", "X2", "Xc"], ["X1"]),
        (["Y1", "X2"], ["X1"]),
        (["Y2", "X1"], ["X2"]),
    ]
    for _ in range(15):
        ch = GeneralChannel(
            g11=complex(rng.normal(), rng.normal()),
            g12=complex(rng.normal(), rng.normal()),
            g21=complex(rng.normal(), rng.normal()),
            g22=complex(rng.normal(), rng.normal()),
            g1c=complex(rng.normal(), rng.normal()),
            g2c=complex(rng.normal(), rng.normal()),
            P1=rng.uniform(0.2, 4.0), P2=rng.uniform(0.2, 4.0),
            Pc=rng.uniform(0.2, 4.0),
            s1sq=rng.uniform(0.2, 4.0), s2sq=rng.uniform(0.2, 4.0),
        )
        g = to_standard_form(ch)
        c = _random_coeffs(rng)
        gen = build_general_covariance(ch, c)
        std = build_joint_covariance(g, c)
        for targets, cond in queries:
            a = mutual_info(gen, targets, cond)
            b = mutual_info(std, targets, cond)
            assert abs(a - b) < 1e-9, (targets, cond, a, b)


def test_degenerate_inputs_stay_finite():
    # fully correlated relay (no fresh noise) plus a zero direct path
    g = ChannelGains(0.0, 0.0, 1.0, 1.0, 0.0, 0.0)
    c = InputCoeffs(1.0, 0.0)
    cov = build_joint_covariance(g, c)
    v = mutual_info(cov, ["Y1", "X1", "Xc"], ["X2"])
    assert np.isfinite(v) and v >= 0.0


def test_domain_and_usage_errors():
    with pytest.raises(DomainError):
        InputCoeffs(0.9, 0.9)
    with pytest.raises(DomainError):
        NoiseCorr(1.5)
    with pytest.raises(DomainError):
        ChannelGains(-1.0, 1.0, 1.0, 1.0, 0.0, 0.0)
    cov = build_joint_covariance(ChannelGains(1, 1, 1, 1, 0, 0),
                                 InputCoeffs(0.5, 0.5))
    with pytest.raises(UsageError):
        mutual_info(cov, ["X1", "X2"])  # no output label among targets
