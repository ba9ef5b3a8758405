"""Non-Markovianity measures for the dephasing channel.

Three witnesses built on one primitive, the positive variation of a scalar
signal over a time window:

* BLP: information backflow, positive variation of the trace distance between
  the |0>, |1> antipodal pair, which for pure dephasing equals alpha(t)^2.
* LPP: volume backflow, positive variation of |det M(t)| for the generically
  assembled Bloch affine map.
* CB: coherence backflow of the evolved Bell-like family at angle theta.

For this channel family every witness is a strictly increasing function of
alpha, so revival intervals coincide across measures; interval detection is
therefore shared (located on d(alpha^2)/dt) and only the telescoped values
differ.  All measures vanish identically for spectral exponents Q <= 2 and a
revival requires Q > 2 plus a field weak enough that the coherence floor
stays representable.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import dephasing, states
from .errors import DomainError, HorizonWarning
from .specfun import DEFAULT_OPTIONS, EvalOptions

__all__ = [
    "TimeWindow",
    "NonMarkovReport",
    "positive_variation",
    "blp",
    "lpp",
    "cb",
    "blp_pair_scan",
    "critical_q_scan",
    "nm_report",
]

# A measure below this threshold counts as Markovian in scans.
_FIRING_THRESHOLD = 1e-10


@dataclass(frozen=True, slots=True)
class TimeWindow:
    """Uniform time grid [0, t_max] used for sign scanning, with bisection
    refinement of derivative sign changes down to ``refine_tol``."""

    t_max: float
    n_grid: int = 4096
    refine_tol: float = 1e-10

    def __post_init__(self) -> None:
        if not (math.isfinite(self.t_max) and self.t_max > 0.0):
            raise DomainError(f"t_max must be finite and > 0, got {self.t_max}")
        if self.n_grid < 16:
            raise DomainError(f"n_grid must be >= 16, got {self.n_grid}")
        if not (self.refine_tol > 0.0):
            raise DomainError(f"refine_tol must be > 0, got {self.refine_tol}")

    @classmethod
    def for_cutoff(cls, gamma0: float, n_grid: int = 4096) -> "TimeWindow":
        """Window covering t gamma0 in [0, 100], where the kernel has settled."""
        if not (gamma0 > 0.0):
            raise DomainError(f"gamma0 must be > 0, got {gamma0}")
        return cls(t_max=100.0 / gamma0, n_grid=n_grid)

    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.n_grid)


@dataclass(frozen=True, slots=True)
class NonMarkovReport:
    """The three witnesses plus the refined revival intervals."""

    n_blp: float
    n_lpp: float
    n_cb: float
    revival_intervals: tuple[tuple[float, float], ...]


def _bisect_sign_change(g, lo: float, hi: float, sign_lo: float, tol: float) -> float:
    # Narrow a bracket over which g changes sign; only the left-end sign is
    # trusted from the caller, midpoints are re-evaluated exactly.
    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if gm == 0.0:
            return mid
        if (gm > 0.0) == (sign_lo > 0.0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _variation_from_grid(
    ts: np.ndarray,
    d_grid: np.ndarray,
    f,
    dfdt,
    refine_tol: float,
) -> tuple[float, tuple[tuple[float, float], ...]]:
    """Positive variation of f from grid samples of its derivative.

    Sign changes of ``d_grid`` are refined by bisection on the scalar ``dfdt``;
    the variation telescopes to sum f(end) - f(start) over intervals of
    positive derivative.  Exact zeros on the grid carry no sign and are
    skipped when locating changes.
    """
    signs = np.sign(d_grid)
    nz = np.flatnonzero(signs)
    intervals: list[tuple[float, float]] = []
    if nz.size:
        cur_start = float(ts[0]) if signs[nz[0]] > 0 else None
        prev = nz[0]
        for cur in nz[1:]:
            if signs[cur] != signs[prev]:
                root = _bisect_sign_change(
                    dfdt, float(ts[prev]), float(ts[cur]), float(signs[prev]), refine_tol
                )
                if signs[cur] > 0:
                    cur_start = root
                elif cur_start is not None:
                    intervals.append((cur_start, root))
                    cur_start = None
            prev = cur
        if cur_start is not None:
            intervals.append((cur_start, float(ts[-1])))
            if d_grid[-1] > 0.0:
                warnings.warn(
                    "derivative still positive at t_max; a revival is truncated "
                    "by the window",
                    HorizonWarning,
                    stacklevel=3,
                )
    value = 0.0
    for a, b in intervals:
        value += f(b) - f(a)
    return value, tuple(intervals)


def positive_variation(f, dfdt, w: TimeWindow) -> tuple[float, tuple[tuple[float, float], ...]]:
    """Positive variation of a scalar signal f over the window.

    ``f`` and ``dfdt`` are callables of time; ``dfdt`` may accept an ndarray
    (used for the grid scan) or be scalar-only, in which case the grid is
    evaluated pointwise.  Returns (variation, intervals of increase).
    """
    ts = w.times()
    try:
        d_grid = np.asarray(dfdt(ts), dtype=np.float64)
        if d_grid.shape != ts.shape:
            raise TypeError
    except (TypeError, ValueError):
        d_grid = np.array([float(dfdt(float(t))) for t in ts])
    return _variation_from_grid(ts, d_grid, f, dfdt, w.refine_tol)


@lru_cache(maxsize=128)
def _cached_profile(
    q: float,
    gamma0: float,
    b: float,
    t_max: float,
    n_grid: int,
    rel_tol: float,
    max_terms: int,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    env = dephasing.OhmicEnvironment(q, gamma0)
    ch = dephasing.DephasingChannel(env, b)
    ts = np.linspace(0.0, t_max, n_grid)
    avals, davals = dephasing.alpha_profile(ch, ts, EvalOptions(rel_tol, max_terms))
    for arr in (ts, avals, davals):
        arr.setflags(write=False)
    return ts, avals, davals


def _profile(
    ch: dephasing.DephasingChannel, w: TimeWindow, opts: EvalOptions
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    return _cached_profile(
        ch.env.q, ch.env.gamma0, ch.b, w.t_max, w.n_grid, opts.rel_tol, opts.max_terms
    )


def _alpha_slope(ch: dephasing.DephasingChannel, opts: EvalOptions):
    # d(alpha^2)/dt as a scalar callable; shared sign oracle for all measures.
    def g(t: float) -> float:
        return 2.0 * dephasing.alpha(ch, t, opts) * dephasing.dalpha_dt(ch, t, opts)

    return g


def _blp_with_intervals(
    ch: dephasing.DephasingChannel, w: TimeWindow, opts: EvalOptions = DEFAULT_OPTIONS
) -> tuple[float, tuple[tuple[float, float], ...]]:
    ts, avals, davals = _profile(ch, w, opts)
    d_grid = 2.0 * avals * davals

    def f(t: float) -> float:
        return dephasing.alpha(ch, t, opts) ** 2

    return _variation_from_grid(ts, d_grid, f, _alpha_slope(ch, opts), w.refine_tol)


def blp(ch: dephasing.DephasingChannel, w: TimeWindow) -> float:
    """Information-backflow measure: positive variation of the trace distance
    of the antipodal pole pair, which dephasing sends to alpha(t)^2."""
    value, _ = _blp_with_intervals(ch, w)
    return value


def lpp(ch: dephasing.DephasingChannel, w: TimeWindow) -> float:
    """Volume-backflow measure: positive variation of |det M(t)| with M the
    generically assembled Bloch affine map.

    |det M| is a strictly increasing function of alpha for this family, so
    its extrema coincide with those of alpha; sign changes are located on
    d(alpha^2)/dt and only the telescoped values use the generic determinant.
    """
    ts, avals, davals = _profile(ch, w, DEFAULT_OPTIONS)
    d_grid = 2.0 * avals * davals

    def f(t: float) -> float:
        a = dephasing.alpha(ch, t)
        return abs(states.bloch_affine_map(a).det)

    value, _ = _variation_from_grid(
        ts, d_grid, f, _alpha_slope(ch, DEFAULT_OPTIONS), w.refine_tol
    )
    return value


def cb(theta: float, ch: dephasing.DephasingChannel, w: TimeWindow) -> float:
    """Coherence-backflow measure for the evolved Bell-like family at angle
    ``theta``: positive variation of the l1 coherence sin(theta) alpha(t)^2."""
    if not (0.0 <= theta <= math.pi):
        raise DomainError(f"theta must lie in [0, pi], got {theta}")
    from . import correlations

    ts, avals, davals = _profile(ch, w, DEFAULT_OPTIONS)
    sin_t = math.sin(theta)
    d_grid = sin_t * (2.0 * avals * davals)
    base_slope = _alpha_slope(ch, DEFAULT_OPTIONS)

    def f(t: float) -> float:
        a = dephasing.alpha(ch, t)
        return correlations.coherence_l1(states.evolved_x_state(theta, a))

    def g(t: float) -> float:
        return sin_t * base_slope(t)

    value, _ = _variation_from_grid(ts, d_grid, f, g, w.refine_tol)
    return value


def blp_pair_scan(
    ch: dephasing.DephasingChannel, w: TimeWindow, n_angles: int = 9
) -> tuple[tuple[float, float], float]:
    """Scan antipodal Bloch pairs for the one maximizing information backflow.

    Each pair (n, -n) is evolved through the generic single-qubit channel and
    the discrete positive variation of their trace distance accumulated on the
    grid.  Returns ((theta, phi) of the best axis, its variation).  The polar
    pair theta = 0 is optimal for pure dephasing; the scan verifies rather
    than assumes that.
    """
    if n_angles < 2:
        raise DomainError(f"n_angles must be >= 2, got {n_angles}")
    ts, avals, _ = _profile(ch, w, DEFAULT_OPTIONS)
    thetas = np.linspace(0.0, 0.5 * math.pi, n_angles)
    phis = np.linspace(0.0, math.pi, n_angles, endpoint=False)
    best_val = -1.0
    best_axis = (0.0, 0.0)
    for th in thetas:
        for ph in phis:
            nx = math.sin(th) * math.cos(ph)
            ny = math.sin(th) * math.sin(ph)
            nz = math.cos(th)
            nvec = nx * states.PAULIS[0] + ny * states.PAULIS[1] + nz * states.PAULIS[2]
            r_plus = states.DensityMatrix2(0.5 * (np.eye(2) + nvec))
            r_minus = states.DensityMatrix2(0.5 * (np.eye(2) - nvec))
            dist = np.empty(ts.shape)
            for i, a in enumerate(avals):
                if a == 0.0:
                    # Fully dephased: both members collapse to I/2.
                    dist[i] = 0.0
                    continue
                dist[i] = states.trace_distance(
                    states.evolve_single(r_plus, float(a)),
                    states.evolve_single(r_minus, float(a)),
                )
            val = float(np.clip(np.diff(dist), 0.0, None).sum())
            if val > best_val:
                best_val = val
                best_axis = (float(th), float(ph))
    return best_axis, best_val


def critical_q_scan(
    gamma0: float,
    q_range: tuple[float, float] = (0.0, 12.0),
    w: TimeWindow | None = None,
    b: float = 1.0,
) -> float | None:
    """Smallest spectral exponent whose BLP measure fires (> 1e-10), located
    by bisection to 1e-3 resolution.

    Returns None when no exponent in ``q_range`` fires, e.g. for b = 0 or a
    field so strong that every revival underflows.
    """
    q_lo, q_hi = q_range
    if not (0.0 <= q_lo < q_hi):
        raise DomainError(f"q_range must satisfy 0 <= lo < hi, got {q_range}")
    if w is None:
        w = TimeWindow.for_cutoff(gamma0)

    def fires(q: float) -> bool:
        ch = dephasing.DephasingChannel(dephasing.OhmicEnvironment(q, gamma0), b)
        return blp(ch, w) > _FIRING_THRESHOLD

    if not fires(q_hi):
        return None
    if fires(q_lo):
        return q_lo
    lo, hi = q_lo, q_hi
    while hi - lo > 1e-3:
        mid = 0.5 * (lo + hi)
        if fires(mid):
            hi = mid
        else:
            lo = mid
    return hi


def nm_report(
    ch: dephasing.DephasingChannel, w: TimeWindow, theta: float = 0.5 * math.pi
) -> NonMarkovReport:
    """Evaluate all three witnesses plus revival intervals in one pass."""
    n_blp, intervals = _blp_with_intervals(ch, w)
    return NonMarkovReport(
        n_blp=n_blp,
        n_lpp=lpp(ch, w),
        n_cb=cb(theta, ch, w),
        revival_intervals=intervals,
    )
