"""Gaussian channel model and log-determinant mutual-information engine.

Channel convention (standard form, unit powers / unit noise):

    Y1 = h11*X1 + h12*X2 + h1c*Xc + Z1
    Y2 = h21*X1 + h22*X2 + h2c*Xc + Z2

with h11, h22, h1c, h2c nonnegative real (phases absorbed) and h12, h21
complex.  The relay input is parameterized by correlation coefficients

    Xc = conj(beta1)*X1 + conj(beta2)*X2 + sqrt(1 - |beta1|^2 - |beta2|^2)*W

with X1, X2, W independent unit-variance proper complex Gaussians.  All
mutual informations are in bits with the proper-complex convention
(log2 det, no 1/2 factor).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

EIG_FLOOR = 1e-12
COEFF_TOL = 1e-12          # slack on |beta1|^2+|beta2|^2 <= 1
OUTPUT_LABELS = ("Y1", "Y2", "Ytil1", "Ytil2")

LOG2E = math.log2(math.e)


class DomainError(ValueError):
    """Input outside the documented domain of an operation."""


class UsageError(ValueError):
    """Malformed query (unknown label, overlapping sets, ...)."""


class DegenerateInputError(ValueError):
    """Numerically singular conditioning beyond the eigenvalue floor."""


def cap(x):
    """C(x) = log2(1 + x) for x >= 0."""
    if x < -0.0 and x < 0:
        raise DomainError(f"cap() requires x >= 0, got {x}")
    return math.log2(1.0 + x)


def _check_finite(name, value):
    if not np.all(np.isfinite([np.real(value), np.imag(value)])):
        raise DomainError(f"{name} must be finite, got {value}")


@dataclass(frozen=True)
class GeneralChannel:
    """Pre-normalization channel: arbitrary complex gains, powers, noise."""
    g11: complex
    g12: complex
    g21: complex
    g22: complex
    g1c: complex
    g2c: complex
    P1: float = 1.0
    P2: float = 1.0
    Pc: float = 1.0
    s1sq: float = 1.0
    s2sq: float = 1.0

    def __post_init__(self):
        for name in ("g11", "g12", "g21", "g22", "g1c", "g2c"):
            _check_finite(name, getattr(self, name))
        for name in ("P1", "P2", "Pc", "s1sq", "s2sq"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be positive and finite, got {v}")


@dataclass(frozen=True)
class ChannelGains:
    """Standard-form gains: direct and relay gains nonnegative real."""
    h11: float
    h22: float
    h1c: float
    h2c: float
    h12: complex
    h21: complex

    def __post_init__(self):
        for name in ("h11", "h22", "h1c", "h2c"):
            v = getattr(self, name)
            if not (np.isfinite(v) and np.isreal(v) and float(np.real(v)) >= 0):
                raise DomainError(f"{name} must be nonnegative real, got {v}")
            object.__setattr__(self, name, float(np.real(v)))
        for name in ("h12", "h21"):
            _check_finite(name, getattr(self, name))
            object.__setattr__(self, name, complex(getattr(self, name)))

    def swapped(self):
        """Index swap 1 <-> 2 (role reversal of the two users)."""
        return ChannelGains(h11=self.h22, h22=self.h11, h1c=self.h2c,
                            h2c=self.h1c, h12=self.h21, h21=self.h12)


@dataclass(frozen=True)
class InputCoeffs:
    """Correlation coefficients (beta1, beta2) of the input covariance S."""
    beta1: complex = 0.0
    beta2: complex = 0.0

    def __post_init__(self):
        _check_finite("beta1", self.beta1)
        _check_finite("beta2", self.beta2)
        object.__setattr__(self, "beta1", complex(self.beta1))
        object.__setattr__(self, "beta2", complex(self.beta2))
        if self.power() > 1.0 + COEFF_TOL:
            raise DomainError(
                f"|beta1|^2 + |beta2|^2 = {self.power()} exceeds 1")

    def power(self):
        return abs(self.beta1) ** 2 + abs(self.beta2) ** 2

    @property
    def k2(self):
        """Residual fresh power of Xc: 1 - |beta1|^2 - |beta2|^2, clamped."""
        return max(0.0, 1.0 - self.power())

    @property
    def k(self):
        return math.sqrt(self.k2)


@dataclass(frozen=True)
class NoiseCorr:
    """Correlation r between a true noise and its surrogate twin."""
    r: complex = 0.0

    def __post_init__(self):
        _check_finite("r", self.r)
        object.__setattr__(self, "r", complex(self.r))
        if abs(self.r) > 1.0 + COEFF_TOL:
            raise DomainError(f"|r| = {abs(self.r)} exceeds 1")


class JointCovariance:
    """Labeled Hermitian PSD covariance of channel inputs/outputs."""

    def __init__(self, labels, matrix):
        labels = tuple(labels)
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.shape != (len(labels), len(labels)):
            raise UsageError("matrix shape does not match labels")
        if np.max(np.abs(matrix - matrix.conj().T)) > 1e-12 * max(
                1.0, np.max(np.abs(matrix))):
            raise DomainError("covariance is not Hermitian within 1e-12")
        eigs = np.linalg.eigvalsh(matrix)
        if eigs.min() < -1e-10 * max(1.0, abs(eigs.max())):
            raise DomainError(f"covariance not PSD: min eig {eigs.min()}")
        self.labels = labels
        self.matrix = matrix
        self._index = {lab: i for i, lab in enumerate(labels)}

    def idx(self, labels):
        try:
            return [self._index[lab] for lab in labels]
        except KeyError as exc:
            raise UsageError(f"unknown label {exc.args[0]!r}; "
                             f"have {self.labels}") from None


def to_standard_form(ch: GeneralChannel) -> ChannelGains:
    """Normalize a GeneralChannel to unit powers/noises, nonneg direct gains.

    Output rotations theta_i = -angle(g_ic) make the relay gains real
    nonnegative; input rotations psi_j = angle(g_jc) - angle(g_jj) then make
    the direct gains real nonnegative.  Cross gains keep the residual phase.
    The map preserves every mutual information (invertible per-variable
    scaling/rotation of the joint Gaussian).
    """
    s1 = math.sqrt(ch.s1sq)
    s2 = math.sqrt(ch.s2sq)
    rp1, rp2, rpc = math.sqrt(ch.P1), math.sqrt(ch.P2), math.sqrt(ch.Pc)
    psi1 = cmath.phase(ch.g1c) - cmath.phase(ch.g11)
    psi2 = cmath.phase(ch.g2c) - cmath.phase(ch.g22)
    theta1 = -cmath.phase(ch.g1c)
    theta2 = -cmath.phase(ch.g2c)
    return ChannelGains(
        h11=rp1 * abs(ch.g11) / s1,
        h22=rp2 * abs(ch.g22) / s2,
        h1c=rpc * abs(ch.g1c) / s1,
        h2c=rpc * abs(ch.g2c) / s2,
        h12=rp2 * ch.g12 * cmath.exp(1j * (psi2 + theta1)) / s1,
        h21=rp1 * ch.g21 * cmath.exp(1j * (psi1 + theta2)) / s2,
    )


# latent ordering for the covariance builders
_N_LATENT = 7  # X1, X2, W, Z1, Z2, N1, N2


def _signal_rows(gains: ChannelGains, coeffs: InputCoeffs):
    """Rows of (X1, X2, Xc, sig(Y1), sig(Y2)) over the latent basis."""
    x1 = np.zeros(_N_LATENT, dtype=complex)
    x1[0] = 1.0
    x2 = np.zeros(_N_LATENT, dtype=complex)
    x2[1] = 1.0
    xc = np.zeros(_N_LATENT, dtype=complex)
    xc[0] = np.conj(coeffs.beta1)
    xc[1] = np.conj(coeffs.beta2)
    xc[2] = coeffs.k
    y1 = gains.h11 * x1 + gains.h12 * x2 + gains.h1c * xc
    y2 = gains.h21 * x1 + gains.h22 * x2 + gains.h2c * xc
    return x1, x2, xc, y1, y2


def build_joint_covariance(gains: ChannelGains, coeffs: InputCoeffs,
                           noise: NoiseCorr = NoiseCorr(0.0),
                           include_surrogates: bool = False,
                           noise2: NoiseCorr | None = None) -> JointCovariance:
    """Covariance of (X1, X2, Xc, Y1, Y2[, Ytil1, Ytil2]).

    Surrogate outputs have the same marginals as the true outputs; Ztil2 is
    correlated with Z1 with coefficient noise.r, and Ztil1 with Z2 with
    coefficient noise2.r (defaulting to noise.r).
    """
    if coeffs.power() > 1.0 + COEFF_TOL:
        raise DomainError("input coefficients exceed unit power")
    x1, x2, xc, y1s, y2s = _signal_rows(gains, coeffs)
    ez1 = np.zeros(_N_LATENT, dtype=complex)
    ez1[3] = 1.0
    ez2 = np.zeros(_N_LATENT, dtype=complex)
    ez2[4] = 1.0
    rows = [x1, x2, xc, y1s + ez1, y2s + ez2]
    labels = ["X1", "X2", "Xc", "Y1", "Y2"]
    if include_surrogates:
        if noise2 is None:
            noise2 = noise
        r12, r21 = noise.r, noise2.r
        en1 = np.zeros(_N_LATENT, dtype=complex)
        en1[5] = 1.0
        en2 = np.zeros(_N_LATENT, dtype=complex)
        en2[6] = 1.0
        ytil1 = y1s + r21 * ez2 + math.sqrt(max(0.0, 1 - abs(r21) ** 2)) * en1
        ytil2 = y2s + r12 * ez1 + math.sqrt(max(0.0, 1 - abs(r12) ** 2)) * en2
        rows += [ytil1, ytil2]
        labels += ["Ytil1", "Ytil2"]
    a = np.array(rows)
    return JointCovariance(labels, a @ a.conj().T)


def build_general_covariance(ch: GeneralChannel, coeffs: InputCoeffs) -> JointCovariance:
    """Covariance of the pre-normalization channel with matched inputs.

    Inputs carry the powers P1, P2, Pc; the relay correlation coefficients
    refer to the normalized inputs, phased consistently with
    to_standard_form so that every mutual information agrees pre/post.
    """
    psi1 = cmath.phase(ch.g1c) - cmath.phase(ch.g11)
    psi2 = cmath.phase(ch.g2c) - cmath.phase(ch.g22)
    u1 = np.zeros(5, dtype=complex)
    u1[0] = 1.0
    u2 = np.zeros(5, dtype=complex)
    u2[1] = 1.0
    w = np.zeros(5, dtype=complex)
    w[2] = 1.0
    x1 = math.sqrt(ch.P1) * cmath.exp(1j * psi1) * u1
    x2 = math.sqrt(ch.P2) * cmath.exp(1j * psi2) * u2
    xc = math.sqrt(ch.Pc) * (np.conj(coeffs.beta1) * u1 +
                             np.conj(coeffs.beta2) * u2 + coeffs.k * w)
    ez1 = np.zeros(5, dtype=complex)
    ez1[3] = 1.0
    ez2 = np.zeros(5, dtype=complex)
    ez2[4] = 1.0
    y1 = ch.g11 * x1 + ch.g12 * x2 + ch.g1c * xc + math.sqrt(ch.s1sq) * ez1
    y2 = ch.g21 * x1 + ch.g22 * x2 + ch.g2c * xc + math.sqrt(ch.s2sq) * ez2
    a = np.array([x1, x2, xc, y1, y2])
    return JointCovariance(["X1", "X2", "Xc", "Y1", "Y2"], a @ a.conj().T)


def _floored_pinv(mat):
    """Hermitian pseudo-inverse with eigenvalue floor EIG_FLOOR."""
    vals, vecs = np.linalg.eigh(mat)
    inv = np.where(vals > EIG_FLOOR, 1.0 / np.where(vals > EIG_FLOOR, vals, 1.0), 0.0)
    return (vecs * inv) @ vecs.conj().T


def conditional_cov(matrix, idx_a, idx_c):
    """Schur complement Sigma_{A|C} with floored pseudo-inverse."""
    a = np.asarray(idx_a, dtype=int)
    saa = matrix[np.ix_(a, a)]
    if len(idx_c) == 0:
        return saa
    c = np.asarray(idx_c, dtype=int)
    sac = matrix[np.ix_(a, c)]
    scc = matrix[np.ix_(c, c)]
    return saa - sac @ _floored_pinv(scc) @ sac.conj().T


def _log2det(mat):
    sign, logdet = np.linalg.slogdet(mat)
    if sign.real <= 0:
        raise DegenerateInputError("conditional covariance numerically singular")
    return logdet * LOG2E


def mutual_info(cov: JointCovariance, targets, conditioners=()) -> float:
    """I(Ysel; A | C) in bits, where Ysel = output labels among targets.

    Computed as log2 det Sigma_{Ysel|C} - log2 det Sigma_{Ysel|A,C}.
    """
    targets = list(targets)
    conditioners = list(conditioners)
    if set(targets) & set(conditioners):
        raise UsageError("targets and conditioners must be disjoint")
    ys = [t for t in targets if t in OUTPUT_LABELS]
    rest = [t for t in targets if t not in OUTPUT_LABELS]
    if not ys:
        raise UsageError("targets must include at least one output label")
    iy = cov.idx(ys)
    ic = cov.idx(conditioners)
    ia = cov.idx(rest)
    val = _log2det(conditional_cov(cov.matrix, iy, ic)) \
        - _log2det(conditional_cov(cov.matrix, iy, ia + ic))
    if val < -1e-9:
        raise DegenerateInputError(f"mutual information {val} < -1e-9")
    return max(0.0, val)


def mi_pair(cov: JointCovariance, a_labels, b_labels, c_labels=()) -> float:
    """Generic I(A; B | C) = h(A|C) - h(A|B,C); A need not contain outputs."""
    ia = cov.idx(list(a_labels))
    ib = cov.idx(list(b_labels))
    ic = cov.idx(list(c_labels))
    val = _log2det(conditional_cov(cov.matrix, ia, ic)) \
        - _log2det(conditional_cov(cov.matrix, ia, ib + ic))
    if val < -1e-9:
        raise DegenerateInputError(f"mutual information {val} < -1e-9")
    return max(0.0, val)


def mi_batch(sigma, idx_a, idx_b, idx_c=(), jitter=1e-13):
    """Batched I(A; B | C) over stacked covariances sigma of shape (..., k, k).

    Uses the symmetric four-log-det identity; a small jitter keeps blocks
    nonsingular at degenerate grid points (zero-power auxiliaries).
    """
    sigma = np.asarray(sigma)
    k = sigma.shape[-1]
    sigma = sigma + jitter * np.eye(k)
    idx_a, idx_b, idx_c = list(idx_a), list(idx_b), list(idx_c)

    def det3(sub):
        a, b, c = sub[..., 0, 0], sub[..., 0, 1], sub[..., 0, 2]
        d, e, f = sub[..., 1, 0], sub[..., 1, 1], sub[..., 1, 2]
        g, h, i = sub[..., 2, 0], sub[..., 2, 1], sub[..., 2, 2]
        return (a * (e * i - f * h) - b * (d * i - f * g)
                + c * (d * h - e * g))

    def ld(idx):
        if not idx:
            return 0.0
        ix = np.asarray(idx)
        sub = sigma[..., ix[:, None], ix[None, :]]
        n = len(idx)
        # closed-form determinants for the small blocks dominating the
        # batched grids; slogdet stays as the general path
        if n == 1:
            det = np.real(sub[..., 0, 0])
        elif n == 2:
            det = np.real(sub[..., 0, 0] * sub[..., 1, 1]
                          - sub[..., 0, 1] * sub[..., 1, 0])
        elif n == 3:
            det = np.real(det3(sub))
        elif n == 4:
            rows = np.arange(1, 4)
            minors = [det3(sub[..., rows[:, None],
                                np.delete(np.arange(4), j)[None, :]])
                      for j in range(4)]
            det = np.real(sub[..., 0, 0] * minors[0]
                          - sub[..., 0, 1] * minors[1]
                          + sub[..., 0, 2] * minors[2]
                          - sub[..., 0, 3] * minors[3])
        else:
            sign, logdet = np.linalg.slogdet(sub)
            return logdet * LOG2E
        return np.log2(np.maximum(det, 1e-300))

    val = ld(idx_a + idx_c) + ld(idx_b + idx_c) - ld(idx_a + idx_b + idx_c) - ld(idx_c)
    return np.maximum(np.real(val), 0.0)


def effective_coeffs(gains: ChannelGains, beta1, beta2):
    """Effective output coefficients under the relay combination.

    Broadcasts over numpy arrays of beta1/beta2.  Returns (u1, v1, w1sq,
    u2, v2, w2sq) with Y1 = u1*X1 + v1*X2 + w1*W + Z1 and likewise Y2,
    where w_i^2 = h_ic^2 * (1 - |beta1|^2 - |beta2|^2).
    """
    beta1 = np.asarray(beta1)
    beta2 = np.asarray(beta2)
    k2 = np.clip(1.0 - np.abs(beta1) ** 2 - np.abs(beta2) ** 2, 0.0, None)
    u1 = gains.h11 + gains.h1c * np.conj(beta1)
    v1 = gains.h12 + gains.h1c * np.conj(beta2)
    u2 = gains.h21 + gains.h2c * np.conj(beta1)
    v2 = gains.h22 + gains.h2c * np.conj(beta2)
    return u1, v1, gains.h1c ** 2 * k2, u2, v2, gains.h2c ** 2 * k2
