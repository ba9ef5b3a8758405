"""Qubit states and the action of the dephasing channel on them.

Single-qubit states dephase by scaling off-diagonal entries with alpha(t)
and pulling populations toward 1/2 with weight alpha(t)^2.  Two independent
copies of the channel acting on a pair give the entrywise map implemented in
:func:`evolve_pair`; the family of Bell-like initial states
cos(theta/2)|00> + sin(theta/2)|11> stays of X form under it, and
:func:`evolved_x_state` writes that X state down directly.

Ordering convention for the pair basis: |00>, |01>, |10>, |11>.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

__all__ = [
    "DensityMatrix2",
    "DensityMatrix4",
    "XState4",
    "BlochAffineMap",
    "evolve_single",
    "evolve_pair",
    "bell_like",
    "evolved_x_state",
    "trace_distance",
    "bloch_affine_map",
]

_ATOL = 1e-12

_ID2 = np.eye(2, dtype=np.complex128)
_SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
_SY = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128)
_SZ = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128)
PAULIS = (_SX, _SY, _SZ)


def _validated_density(matrix: np.ndarray, dim: int) -> np.ndarray:
    m = np.asarray(matrix, dtype=np.complex128)
    if m.shape != (dim, dim):
        raise DomainError(f"expected a {dim}x{dim} matrix, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise DomainError("density matrix entries must be finite")
    herm_defect = float(np.abs(m - m.conj().T).max())
    if herm_defect > _ATOL:
        raise DomainError(f"matrix is not Hermitian (defect {herm_defect:.3e} > {_ATOL})")
    tr_defect = abs(complex(np.trace(m)) - 1.0)
    if tr_defect > _ATOL:
        raise DomainError(f"trace deviates from 1 by {tr_defect:.3e} > {_ATOL}")
    lam_min = float(np.linalg.eigvalsh(m).min())
    if lam_min < -_ATOL:
        raise DomainError(f"matrix has negative eigenvalue {lam_min:.3e} < -{_ATOL}")
    out = m.copy()
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class DensityMatrix2:
    """Validated single-qubit density matrix (Hermitian, unit trace, PSD)."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrix", _validated_density(self.matrix, 2))


@dataclass(frozen=True, eq=False)
class DensityMatrix4:
    """Validated two-qubit density matrix (Hermitian, unit trace, PSD)."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrix", _validated_density(self.matrix, 4))


@dataclass(frozen=True, eq=False)
class XState4:
    """Two-qubit X-form state: diagonal plus the two anti-diagonal coherences.

    Parameters are the populations rho11..rho44 (basis |00>,|01>,|10>,|11>)
    and the coherences rho14 = <00|rho|11>, rho23 = <01|rho|10>.
    """

    rho11: float
    rho22: float
    rho33: float
    rho44: float
    rho14: complex = 0.0
    rho23: complex = 0.0

    def __post_init__(self) -> None:
        pops = (self.rho11, self.rho22, self.rho33, self.rho44)
        for name, p in zip(("rho11", "rho22", "rho33", "rho44"), pops):
            if not (math.isfinite(p) and p >= -_ATOL):
                raise DomainError(f"population {name}={p} must be finite and >= 0")
        if abs(sum(pops) - 1.0) > _ATOL:
            raise DomainError(f"populations sum to {sum(pops)!r}, expected 1")
        r14 = abs(complex(self.rho14))
        r23 = abs(complex(self.rho23))
        if r14 * r14 > self.rho11 * self.rho44 + _ATOL:
            raise DomainError("|rho14|^2 exceeds rho11*rho44: not positive semidefinite")
        if r23 * r23 > self.rho22 * self.rho33 + _ATOL:
            raise DomainError("|rho23|^2 exceeds rho22*rho33: not positive semidefinite")

    @property
    def matrix(self) -> np.ndarray:
        m = np.zeros((4, 4), dtype=np.complex128)
        m[0, 0] = self.rho11
        m[1, 1] = self.rho22
        m[2, 2] = self.rho33
        m[3, 3] = self.rho44
        m[0, 3] = self.rho14
        m[3, 0] = np.conj(self.rho14)
        m[1, 2] = self.rho23
        m[2, 1] = np.conj(self.rho23)
        m.setflags(write=False)
        return m


@dataclass(frozen=True, eq=False)
class BlochAffineMap:
    """Affine action r -> M r + c of a single-qubit channel on Bloch vectors.

    For the dephasing channel the map is unital (c = 0) and
    M = diag(alpha, alpha, alpha^2); the generic assembly in
    :func:`bloch_affine_map` does not assume that shape.
    """

    m: np.ndarray
    c: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self) -> None:
        m = np.asarray(self.m, dtype=np.float64)
        c = np.asarray(self.c, dtype=np.float64)
        if m.shape != (3, 3) or c.shape != (3,):
            raise DomainError("BlochAffineMap needs a 3x3 matrix and a 3-vector")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "c", c)

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.m))


def evolve_single(rho0: DensityMatrix2, a: float) -> DensityMatrix2:
    """Apply the single-qubit dephasing channel with coherence factor ``a``.

    Populations relax toward 1/2 with weight a^2, the coherence scales by a:
        rho'_00 = (1 + (2 rho_00 - 1) a^2) / 2,   rho'_01 = a rho_01.
    """
    if not (0.0 < a <= 1.0):
        raise DomainError(f"coherence factor must lie in (0, 1], got {a}")
    r = rho0.matrix
    a2 = a * a
    out = np.empty((2, 2), dtype=np.complex128)
    out[0, 0] = 0.5 * (1.0 + (2.0 * r[0, 0].real - 1.0) * a2)
    out[1, 1] = 0.5 * (1.0 + (2.0 * r[1, 1].real - 1.0) * a2)
    out[0, 1] = a * r[0, 1]
    out[1, 0] = np.conj(out[0, 1])
    return DensityMatrix2(out)


def evolve_pair(rho0: DensityMatrix4, a: float) -> DensityMatrix4:
    """Apply two independent copies of the dephasing channel to a pair state."""
    if not (0.0 < a <= 1.0):
        raise DomainError(f"coherence factor must lie in (0, 1], got {a}")
    r = rho0.matrix
    a2 = a * a
    ap = 0.5 * (1.0 + a2)
    am = 0.5 * (1.0 - a2)
    w = np.array([[ap, am], [am, ap]])
    mix = np.kron(w, w)
    diag = mix @ np.real(np.diag(r))
    out = np.zeros((4, 4), dtype=np.complex128)
    out[np.arange(4), np.arange(4)] = diag
    # Single-qubit coherences mix in pairs under the two-copy channel.
    out[0, 1] = a * (ap * r[0, 1] + am * r[2, 3])
    out[2, 3] = a * (am * r[0, 1] + ap * r[2, 3])
    out[0, 2] = a * (ap * r[0, 2] + am * r[1, 3])
    out[1, 3] = a * (am * r[0, 2] + ap * r[1, 3])
    # Two-qubit coherences just pick up a factor a^2.
    out[0, 3] = a2 * r[0, 3]
    out[1, 2] = a2 * r[1, 2]
    for i in range(4):
        for j in range(i + 1, 4):
            out[j, i] = np.conj(out[i, j])
    return DensityMatrix4(out)


def bell_like(theta: float) -> DensityMatrix4:
    """Pure state cos(theta/2)|00> + sin(theta/2)|11> for theta in [0, pi]."""
    if not (0.0 <= theta <= math.pi):
        raise DomainError(f"theta must lie in [0, pi], got {theta}")
    c = math.cos(0.5 * theta)
    s = math.sin(0.5 * theta)
    psi = np.array([c, 0.0, 0.0, s], dtype=np.complex128)
    return DensityMatrix4(np.outer(psi, psi.conj()))


def evolved_x_state(theta: float, a: float) -> XState4:
    """The Bell-like state after both qubits dephase with coherence factor ``a``.

    Accepts a = 0 (fully dephased) so that long-time tails of strongly coupled
    channels remain representable.
    """
    if not (0.0 <= theta <= math.pi):
        raise DomainError(f"theta must lie in [0, pi], got {theta}")
    if not (0.0 <= a <= 1.0):
        raise DomainError(f"coherence factor must lie in [0, 1], got {a}")
    a2 = a * a
    a4 = a2 * a2
    c = math.cos(theta)
    quarter = 0.25
    rho11 = quarter * (1.0 + a4) + 0.5 * a2 * c
    rho44 = quarter * (1.0 + a4) - 0.5 * a2 * c
    rho22 = quarter * (1.0 - a4)
    rho33 = quarter * (1.0 - a4)
    rho14 = 0.5 * a2 * math.sin(theta)
    return XState4(rho11, rho22, rho33, rho44, rho14, 0.0)


def trace_distance(rho, sigma) -> float:
    """Trace distance (1/2)||rho - sigma||_1 between two states.

    Accepts any objects exposing a ``.matrix`` square array of equal shape.
    """
    m1 = np.asarray(rho.matrix, dtype=np.complex128)
    m2 = np.asarray(sigma.matrix, dtype=np.complex128)
    if m1.shape != m2.shape:
        raise DomainError(f"shape mismatch: {m1.shape} vs {m2.shape}")
    ev = np.linalg.eigvalsh(m1 - m2)
    return 0.5 * float(np.abs(ev).sum())


def bloch_affine_map(a: float) -> BlochAffineMap:
    """Assemble the Bloch-sphere affine map of the dephasing channel.

    Built generically from the channel action on physical states: the image
    of sigma_j is reconstructed as E((I+sigma_j)/2) - E((I-sigma_j)/2), the
    offset from E(I).  No diagonal form is assumed.
    """
    images = []
    eye_image = None
    for sj in PAULIS:
        plus = evolve_single(DensityMatrix2(0.5 * (_ID2 + sj)), a).matrix
        minus = evolve_single(DensityMatrix2(0.5 * (_ID2 - sj)), a).matrix
        images.append(plus - minus)
        eye_image = plus + minus
    m = np.empty((3, 3))
    c = np.empty(3)
    for i, si in enumerate(PAULIS):
        for j in range(3):
            m[i, j] = 0.5 * np.trace(si @ images[j]).real
        c[i] = 0.5 * np.trace(si @ eye_image).real
    return BlochAffineMap(m, c)
