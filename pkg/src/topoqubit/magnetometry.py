"""Quantum Fisher information of the dephased pair for field estimation.

The field strength B enters the evolved state only through the coherence
factor alpha(t; B), so the QFI for estimating B admits a closed form on the
Bell-like family at theta = pi/2:

    F(t) = 128 B^2 beta^2 I_Q(t)^2 alpha^4 / (1 - alpha^4),

valid because the eigenvectors of the evolved state are B-independent there.
The general spectral formula

    F = 2 sum_{i,j} |<i| d_B rho |j>|^2 / (lambda_i + lambda_j)

is implemented independently and the two routes are compared sample by
sample; the comparison is the point, so neither route delegates to the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import dephasing, states
from .errors import DomainError
from .nonmarkov import TimeWindow
from .specfun import DEFAULT_OPTIONS, EvalOptions

__all__ = [
    "QfiSample",
    "qfi_general",
    "drho_db",
    "qfi_closed",
    "qfi_series",
]

_REL_GAP_FLOOR = 1e-30


@dataclass(frozen=True, slots=True)
class QfiSample:
    """One time sample with both QFI routes and their relative gap."""

    t: float
    f_general: float
    f_closed: float
    rel_gap: float


def qfi_general(rho, drho: np.ndarray, kernel_tol: float = 1e-12) -> float:
    """Spectral-decomposition QFI for a state and its parameter derivative.

    ``rho`` is any object exposing a density ``.matrix``; ``drho`` must be
    Hermitian and traceless (it is d rho / d parameter).  Eigenpairs with
    lambda_i + lambda_j <= kernel_tol lie in the channel kernel and are
    excluded from the sum.
    """
    m = np.asarray(rho.matrix, dtype=np.complex128)
    d = np.asarray(drho, dtype=np.complex128)
    if d.shape != m.shape:
        raise DomainError(f"derivative shape {d.shape} does not match state {m.shape}")
    herm_defect = float(np.abs(d - d.conj().T).max())
    if herm_defect > 1e-12:
        raise DomainError(f"drho is not Hermitian (defect {herm_defect:.3e})")
    tr = abs(complex(np.trace(d)))
    if tr > 1e-12:
        raise DomainError(f"drho is not traceless (|trace| = {tr:.3e})")
    lam, vec = np.linalg.eigh(m)
    a = vec.conj().T @ d @ vec
    s = lam[:, None] + lam[None, :]
    mask = s > kernel_tol
    with np.errstate(divide="ignore", invalid="ignore"):
        contrib = 2.0 * np.abs(a) ** 2 / s
    return float(contrib[mask].sum())


def _drho_from(theta: float, a: float, dadb: float) -> np.ndarray:
    # Entrywise derivative of the evolved X state with respect to B, written
    # as (d rho / d alpha) * (d alpha / dB).
    a2 = a * a
    a3 = a2 * a
    cos_t = math.cos(theta)
    sin_t = math.sin(theta)
    d = np.zeros((4, 4), dtype=np.complex128)
    d[0, 0] = (a3 + cos_t * a) * dadb
    d[1, 1] = -a3 * dadb
    d[2, 2] = -a3 * dadb
    d[3, 3] = (a3 - cos_t * a) * dadb
    d[0, 3] = a * sin_t * dadb
    d[3, 0] = d[0, 3]
    return d


def drho_db(
    theta: float,
    ch: dephasing.DephasingChannel,
    t: float,
    opts: EvalOptions = DEFAULT_OPTIONS,
) -> np.ndarray:
    """d rho / dB of the evolved Bell-like state at time ``t``; Hermitian and
    traceless by construction."""
    if not (0.0 <= theta <= math.pi):
        raise DomainError(f"theta must lie in [0, pi], got {theta}")
    a = dephasing.alpha(ch, t, opts)
    dadb = dephasing.dalpha_db(ch, t, opts)
    return _drho_from(theta, a, dadb)


def _closed_from(b: float, beta_abs: float, iv: float, a: float) -> float:
    if b == 0.0 or iv == 0.0:
        return 0.0
    a4 = a**4
    om = 1.0 - a4
    if om == 0.0:
        # alpha indistinguishable from 1 in double precision; the exact limit
        # at t -> 0 is 0 and F here is below representable noise.
        return 0.0
    return 128.0 * b * b * beta_abs * beta_abs * iv * iv * a4 / om


def qfi_closed(
    ch: dephasing.DephasingChannel, t: float, opts: EvalOptions = DEFAULT_OPTIONS
) -> float:
    """Closed-form QFI of the theta = pi/2 family,
    F = 128 B^2 beta^2 I_Q^2 alpha^4 / (1 - alpha^4)."""
    if t < 0.0:
        raise DomainError(f"time must be >= 0, got {t}")
    if t == 0.0 or ch.b == 0.0:
        return 0.0
    iv = dephasing.i_q(ch.env, t, opts)
    a = math.exp(-2.0 * ch.b * ch.b * ch.beta_abs * iv)
    return _closed_from(ch.b, ch.beta_abs, iv, a)


def qfi_series(
    ch: dephasing.DephasingChannel,
    theta: float,
    w: TimeWindow,
    opts: EvalOptions = DEFAULT_OPTIONS,
) -> list[QfiSample]:
    """Both QFI routes over a time window; the closed form is compared at
    theta = pi/2 regardless of the state angle used for the general route."""
    if not (0.0 <= theta <= math.pi):
        raise DomainError(f"theta must lie in [0, pi], got {theta}")
    ts = w.times()
    ivals, _ = dephasing.i_q_profile(ch.env, ts, opts)
    c = 2.0 * ch.b * ch.b * ch.beta_abs
    with np.errstate(under="ignore"):
        avals = np.exp(-c * ivals)
    dadb_vals = -4.0 * ch.b * ch.beta_abs * ivals * avals
    samples: list[QfiSample] = []
    for t, a, iv, dadb in zip(ts, avals, ivals, dadb_vals):
        rho = states.evolved_x_state(theta, float(a))
        f_general = qfi_general(rho, _drho_from(theta, float(a), float(dadb)))
        f_closed = _closed_from(ch.b, ch.beta_abs, float(iv), float(a))
        gap = abs(f_general - f_closed) / max(f_general, _REL_GAP_FLOOR)
        samples.append(QfiSample(float(t), f_general, f_closed, gap))
    return samples
