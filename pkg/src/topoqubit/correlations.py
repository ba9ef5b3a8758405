"""Quantum-correlation measures for two-qubit X states.

Each measure comes in a general X-state route and, where the evolved
Bell-like family admits one, a closed-form route; the two are compared
against each other in the test suite rather than trusted individually.

Measures: concurrence (entanglement), quantum discord, local quantum
uncertainty (LQU), trace-norm discord (TND), and the l1 coherence.
Logarithms are base 2 throughout, so discord-like quantities are in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateError, DomainError
from .states import XState4, evolved_x_state

__all__ = [
    "CorrelationReport",
    "concurrence_x",
    "concurrence_evolved",
    "discord_x",
    "discord_closed",
    "lqu_x",
    "lqu_closed",
    "tnd_x",
    "coherence_l1",
    "report",
]

_LN2 = math.log(2.0)

_ID2 = np.eye(2, dtype=np.complex128)
_PAULIS = (
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128),
)


@dataclass(frozen=True, slots=True)
class CorrelationReport:
    """All correlation measures of one state, evaluated together."""

    concurrence: float
    discord: float
    lqu: float
    tnd: float
    coherence_l1: float


def _plog2(x: float) -> float:
    # x log2 x with the continuous extension 0 log 0 = 0.
    if x <= 0.0:
        return 0.0
    return x * math.log2(x)


def _h2(x: float) -> float:
    # Binary entropy; arguments can graze 0 or 1 by rounding noise.
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def concurrence_x(s: XState4) -> float:
    """Concurrence of an X state: 2 max(0, |rho14| - sqrt(rho22 rho33),
    |rho23| - sqrt(rho11 rho44))."""
    l1 = abs(complex(s.rho14)) - math.sqrt(max(s.rho22 * s.rho33, 0.0))
    l2 = abs(complex(s.rho23)) - math.sqrt(max(s.rho11 * s.rho44, 0.0))
    return 2.0 * max(0.0, l1, l2)


def concurrence_evolved(theta: float, a: float) -> float:
    """Concurrence of the evolved Bell-like family in closed form:
    2 max(0, (a^2/2) sin(theta) - (1 - a^4)/4)."""
    if not (0.0 <= theta <= math.pi):
        raise DomainError(f"theta must lie in [0, pi], got {theta}")
    if not (0.0 <= a <= 1.0):
        raise DomainError(f"coherence factor must lie in [0, 1], got {a}")
    a2 = a * a
    return 2.0 * max(0.0, 0.5 * a2 * math.sin(theta) - 0.25 * (1.0 - a2 * a2))


def discord_x(s: XState4) -> float:
    """Quantum discord of an X state.

    Classical correlations are maximized over projective measurements on the
    second qubit; for X states the optimum is attained on the sigma_z or
    sigma_x axis, giving the two-branch minimum evaluated here.
    """
    r11, r22, r33, r44 = s.rho11, s.rho22, s.rho33, s.rho44
    c14 = abs(complex(s.rho14))
    c23 = abs(complex(s.rho23))

    # Eigenvalues of the X state itself.
    mid1 = math.sqrt((r11 - r44) ** 2 + 4.0 * c14 * c14)
    mid2 = math.sqrt((r22 - r33) ** 2 + 4.0 * c23 * c23)
    lam = (
        0.5 * ((r11 + r44) + mid1),
        0.5 * ((r11 + r44) - mid1),
        0.5 * ((r22 + r33) + mid2),
        0.5 * ((r22 + r33) - mid2),
    )
    sum_lam_log = sum(_plog2(max(v, 0.0)) for v in lam)

    h_b = _h2(r11 + r33)

    d1 = _h2(
        0.5
        * (
            1.0
            + math.sqrt(
                (1.0 - 2.0 * (r33 + r44)) ** 2 + 4.0 * (c14 + c23) ** 2
            )
        )
    )
    d2 = -sum(_plog2(max(p, 0.0)) for p in (r11, r22, r33, r44)) - h_b

    q1 = h_b + sum_lam_log + d1
    q2 = h_b + sum_lam_log + d2
    return min(q1, q2)


def discord_closed(a: float) -> float:
    """Discord of the evolved maximally entangled state (theta = pi/2) as an
    explicit function of the coherence factor.

    Every logarithm argument is taken in absolute value; the bracketed
    combinations are real for 0 <= a < 1 and the a -> 1 limit equals 1.
    """
    if not (0.0 <= a <= 1.0):
        raise DomainError(f"coherence factor must lie in [0, 1], got {a}")
    if a == 1.0:
        return 1.0
    a2 = a * a
    a4 = a2 * a2
    log_m4 = math.log(abs(a4 - 1.0))
    log_m2 = math.log(abs(a2 - 1.0))
    q1 = (
        log_m4
        - a4 * math.log(abs(1.0 - a2))
        + a2 * math.log(abs(1.0 - a4))
        + a2 * (a2 - 2.0) * log_m2
    ) / (2.0 * _LN2)
    q2 = (
        log_m4
        - (a4 + 1.0) * math.log(a4 + 1.0)
        + (a2 - 2.0) * a2 * log_m2
        + (a2 + 2.0) * a2 * math.log(a2 + 1.0)
    ) / (2.0 * _LN2)
    return min(q1, q2)


def lqu_x(s: XState4) -> float:
    """Local quantum uncertainty of an X state.

    1 - max eigenvalue of the 3x3 matrix W with
    W_ij = Tr[sqrt(rho) (sigma_i x I) sqrt(rho) (sigma_j x I)].
    """
    m = s.matrix
    w, v = np.linalg.eigh(m)
    w = np.clip(w, 0.0, None)
    sq = (v * np.sqrt(w)) @ v.conj().T
    ops = [np.kron(p, _ID2) for p in _PAULIS]
    wmat = np.empty((3, 3))
    for i in range(3):
        left = sq @ ops[i] @ sq
        for j in range(i, 3):
            wmat[i, j] = np.trace(left @ ops[j]).real
            wmat[j, i] = wmat[i, j]
    lam_max = float(np.linalg.eigvalsh(wmat).max())
    return 1.0 - lam_max


def lqu_closed(theta: float, a: float) -> float:
    """LQU of the evolved Bell-like family in closed form.

    Piecewise: 1 - sqrt(1 - a^4) when
    2 + a^4 cos(2 theta) <= a^4 + 2 sqrt(1 - a^4), else a^4 sin^2(theta).
    """
    if not (0.0 <= theta <= math.pi):
        raise DomainError(f"theta must lie in [0, pi], got {theta}")
    if not (0.0 <= a <= 1.0):
        raise DomainError(f"coherence factor must lie in [0, 1], got {a}")
    a4 = a**4
    root = math.sqrt(max(1.0 - a4, 0.0))
    if 2.0 + a4 * math.cos(2.0 * theta) <= a4 + 2.0 * root:
        return 1.0 - root
    return a4 * math.sin(theta) ** 2


def tnd_x(s: XState4) -> float:
    """Trace-norm (geometric) discord of an X state.

    With xi_1,2 = 2(|rho23| +- |rho14|), xi_3 = 1 - 2(rho22 + rho33) and
    x = 2(rho11 + rho22) - 1:

        TND = (1/2) sqrt[(xi_1^2 ximax - xi_2^2 ximin) /
                         (xi_1^2 - xi_2^2 + ximax - ximin)]

    where ximax = max(xi_3^2, xi_2^2 + x^2) and ximin = min(xi_1^2, xi_3^2).

    Raises
    ------
    DegenerateError
        If the denominator vanishes while the numerator does not; the fully
        symmetric zero/zero points evaluate to 0 by continuity.
    """
    c14 = abs(complex(s.rho14))
    c23 = abs(complex(s.rho23))
    xi1 = 2.0 * (c23 + c14)
    xi2 = 2.0 * (c23 - c14)
    xi3 = 1.0 - 2.0 * (s.rho22 + s.rho33)
    x = 2.0 * (s.rho11 + s.rho22) - 1.0
    xi1sq = xi1 * xi1
    xi2sq = xi2 * xi2
    ximax = max(xi3 * xi3, xi2sq + x * x)
    ximin = min(xi1sq, xi3 * xi3)
    num = xi1sq * ximax - xi2sq * ximin
    den = xi1sq - xi2sq + ximax - ximin
    if abs(den) < 1e-14:
        if abs(num) < 1e-14:
            return 0.0
        raise DegenerateError(
            f"trace-norm discord is indeterminate here (num={num:.3e}, den={den:.3e})"
        )
    return 0.5 * math.sqrt(max(num / den, 0.0))


def coherence_l1(rho) -> float:
    """l1 norm of coherence: sum of |off-diagonal entries| of ``rho.matrix``."""
    m = np.asarray(rho.matrix, dtype=np.complex128)
    absm = np.abs(m)
    return float(absm.sum() - np.trace(absm).real)


def report(s: XState4) -> CorrelationReport:
    """Evaluate every measure on one X state through the general routes."""
    return CorrelationReport(
        concurrence=concurrence_x(s),
        discord=discord_x(s),
        lqu=lqu_x(s),
        tnd=tnd_x(s),
        coherence_l1=coherence_l1(s),
    )
