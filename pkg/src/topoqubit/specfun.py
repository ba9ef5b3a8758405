"""Real-argument special functions with controlled accuracy.

Gamma, Kummer's confluent hypergeometric M(a;b;z), the specialized
hypergeometric 2F2({1,1};{3/2,2};z), their z-derivatives, and the Dawson
integral: everything the dephasing kernel needs, in plain double precision
with compensated series summation.  Arbitrary-precision cross-checks live in
the test suite, never here, so the runtime footprint stays numpy-only.

All functions are pure; concurrent use is unrestricted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError, ParameterError, PoleError

__all__ = [
    "EvalOptions",
    "DEFAULT_OPTIONS",
    "gamma",
    "hyp1f1",
    "dhyp1f1_dz",
    "hyp2f2_11_32_2",
    "dhyp2f2_11_32_2_dz",
    "dawson",
]

_LN2 = math.log(2.0)
_SQRT_PI = math.sqrt(math.pi)

# Series accumulators are rescaled by 2**-1024 past this magnitude; the
# shifted exponent is reassembled in log space at the end.
_RESCALE_LIMIT = 1e250
_RESCALE_BITS = 1024

# exp() underflows to zero a little below exp(-745); products e^z * total are
# formed directly only when safely inside the normal range.
_EXP_UNDERFLOW = -745.0
_DIRECT_EXP_LIMIT = -700.0

# Direct alternating series for the specialized 2F2 is well conditioned only
# for small |z|; beyond this the all-positive resummation takes over.
_F22_DIRECT_LIMIT = 8.0

# Rybicki sampling parameters for the Dawson integral: step h and half-width
# (in units of h) of the window kept around x.  The sampling error scales as
# exp(-pi^2/(4 h^2)) ~ 2e-27, the truncation error as exp(-(window*h)^2).
_DAWSON_H = 0.2
_DAWSON_TAYLOR_LIMIT = 0.5
_DAWSON_WINDOW = 60


@dataclass(frozen=True, slots=True)
class EvalOptions:
    """Accuracy controls for series evaluation.

    Parameters
    ----------
    rel_tol : float
        Target relative tolerance; a series stops once two consecutive terms
        drop below ``rel_tol`` times the running sum.
    max_terms : int
        Hard cap on series length before ConvergenceError is raised.
    """

    rel_tol: float = 1e-13
    max_terms: int = 10_000

    def __post_init__(self) -> None:
        if not (self.rel_tol > 0.0):
            raise DomainError(f"rel_tol must be positive, got {self.rel_tol}")
        if self.max_terms < 1:
            raise DomainError(f"max_terms must be >= 1, got {self.max_terms}")


DEFAULT_OPTIONS = EvalOptions()


def _require_no_pole(x: float, exc: type, name: str) -> None:
    # Non-positive integers are poles of Gamma; reject anything within 1e-12.
    if x < 0.5:
        nearest = round(x)
        if nearest <= 0 and abs(x - nearest) <= 1e-12:
            raise exc(f"{name}={x!r} is within 1e-12 of the pole at {nearest}")


def gamma(x: float) -> float:
    """Gamma function on the real line, poles rejected.

    Raises
    ------
    PoleError
        If ``x`` lies within 1e-12 of a non-positive integer.
    """
    _require_no_pole(x, PoleError, "x")
    return math.gamma(x)


def _series_1f1(a: float, b: float, z: float, opts: EvalOptions) -> tuple[float, int]:
    """Kahan-summed Kummer series; returns (total, n2) meaning total * 2**n2."""
    total = 1.0
    term = 1.0
    comp = 0.0
    n2 = 0
    small_run = 0
    for k in range(opts.max_terms):
        term *= (a + k) * z / ((b + k) * (k + 1.0))
        y = term - comp
        s = total + y
        comp = (s - total) - y
        total = s
        if abs(term) <= opts.rel_tol * abs(total):
            small_run += 1
            if small_run >= 2:
                return total, n2
        else:
            small_run = 0
        if abs(total) > _RESCALE_LIMIT or abs(term) > _RESCALE_LIMIT:
            total = math.ldexp(total, -_RESCALE_BITS)
            term = math.ldexp(term, -_RESCALE_BITS)
            comp = math.ldexp(comp, -_RESCALE_BITS)
            n2 += _RESCALE_BITS
    raise ConvergenceError(
        f"1F1 series for (a={a}, b={b}, z={z}) did not reach rel_tol="
        f"{opts.rel_tol} within {opts.max_terms} terms"
    )


def hyp1f1(a: float, b: float, z: float, opts: EvalOptions = DEFAULT_OPTIONS) -> float:
    """Kummer's confluent hypergeometric function M(a; b; z).

    For z < -1 the Kummer transformation M(a;b;z) = e^z M(b-a;b;-z) is applied
    so the summed series has eventually positive terms and no destructive
    cancellation; the product with e^z is assembled in log space when either
    factor leaves the comfortable double range.

    Raises
    ------
    ParameterError
        If ``b`` is within 1e-12 of a non-positive integer.
    ConvergenceError
        If the series budget is exhausted.
    """
    _require_no_pole(b, ParameterError, "b")
    if z == 0.0:
        return 1.0
    if z >= -1.0:
        total, n2 = _series_1f1(a, b, z, opts)
        return math.ldexp(total, n2)
    total, n2 = _series_1f1(b - a, b, -z, opts)
    if n2 == 0 and z > _DIRECT_EXP_LIMIT:
        return math.exp(z) * total
    if total == 0.0:
        return 0.0
    mag = z + math.log(abs(total)) + n2 * _LN2
    if mag < _EXP_UNDERFLOW:
        return 0.0
    return math.copysign(math.exp(mag), total)


def dhyp1f1_dz(a: float, b: float, z: float, opts: EvalOptions = DEFAULT_OPTIONS) -> float:
    """d/dz of M(a;b;z) via the contiguous relation dM/dz = (a/b) M(a+1;b+1;z)."""
    _require_no_pole(b, ParameterError, "b")
    return (a / b) * hyp1f1(a + 1.0, b + 1.0, z, opts)


def _f22_direct(z: float, opts: EvalOptions) -> float:
    # Alternating series, safe for |z| <= _F22_DIRECT_LIMIT.
    total = 1.0
    term = 1.0
    comp = 0.0
    small_run = 0
    for k in range(opts.max_terms):
        term *= (1.0 + k) * z / ((1.5 + k) * (2.0 + k))
        y = term - comp
        s = total + y
        comp = (s - total) - y
        total = s
        if abs(term) <= opts.rel_tol * abs(total):
            small_run += 1
            if small_run >= 2 and k >= abs(z):
                return total
        else:
            small_run = 0
    raise ConvergenceError(
        f"2F2 series at z={z} did not reach rel_tol={opts.rel_tol} "
        f"within {opts.max_terms} terms"
    )


def _f22_resummed(u: float, opts: EvalOptions) -> float:
    # 2F2({1,1};{3/2,2};-u) = (1/u) * sum_k P(k+1, u)/(2k+1) with P the
    # regularized lower incomplete gamma (equivalently 1 - Poisson CDF).
    # Every term is positive, so no cancellation occurs for any u.
    lnu = math.log(u)
    total = 0.0
    comp = 0.0
    cdf = 0.0
    for k in range(opts.max_terms):
        lp = -u + k * lnu - math.lgamma(k + 1.0)
        if lp > _EXP_UNDERFLOW:
            cdf += math.exp(lp)
        p = 1.0 - cdf
        if p < 0.0:
            p = 0.0
        term = p / (2.0 * k + 1.0)
        y = term - comp
        s = total + y
        comp = (s - total) - y
        total = s
        if k > u and term <= opts.rel_tol * total:
            return total / u
    raise ConvergenceError(
        f"2F2 resummation at z={-u} did not converge within {opts.max_terms} "
        f"terms; enlarge max_terms for |z| this large"
    )


def hyp2f2_11_32_2(z: float, opts: EvalOptions = DEFAULT_OPTIONS) -> float:
    """The specialized hypergeometric 2F2({1,1}; {3/2,2}; z) for z <= 0.

    Direct compensated series for z >= -8; for more negative arguments an
    exact all-positive resummation in terms of regularized incomplete gamma
    functions, immune to the e^{|z|} cancellation of the raw series.

    Raises
    ------
    DomainError
        If z > 0.
    ConvergenceError
        If the series budget is exhausted (|z| ~ 1e4 needs ~|z| terms).
    """
    if z > 0.0:
        raise DomainError(f"hyp2f2_11_32_2 requires z <= 0, got {z}")
    if z == 0.0:
        return 1.0
    if z >= -_F22_DIRECT_LIMIT:
        return _f22_direct(z, opts)
    return _f22_resummed(-z, opts)


def _df22_direct(z: float, opts: EvalOptions) -> float:
    # Term-wise derivative: (1/3) 2F2({2,2};{5/2,3};z), summed directly.
    total = 1.0 / 3.0
    term = 1.0 / 3.0
    comp = 0.0
    small_run = 0
    for k in range(opts.max_terms):
        term *= (2.0 + k) * (2.0 + k) * z / ((2.5 + k) * (3.0 + k) * (1.0 + k))
        y = term - comp
        s = total + y
        comp = (s - total) - y
        total = s
        if abs(term) <= opts.rel_tol * abs(total):
            small_run += 1
            if small_run >= 2 and k >= abs(z):
                return total
        else:
            small_run = 0
    raise ConvergenceError(
        f"2F2 derivative series at z={z} did not converge within "
        f"{opts.max_terms} terms"
    )


def dhyp2f2_11_32_2_dz(z: float, opts: EvalOptions = DEFAULT_OPTIONS) -> float:
    """d/dz of 2F2({1,1};{3/2,2};z) for z <= 0.

    Shifted-parameter series near zero; for z < -8 the exact identity
    d/dz 2F2(z)|_{z=-u} = 2F2(-u)/u - D(sqrt(u))/u^{3/2}, with D the Dawson
    integral, avoids the ill-conditioned direct series.
    """
    if z > 0.0:
        raise DomainError(f"dhyp2f2_11_32_2_dz requires z <= 0, got {z}")
    if z == 0.0:
        return 1.0 / 3.0
    if z >= -_F22_DIRECT_LIMIT:
        return _df22_direct(z, opts)
    u = -z
    return _f22_resummed(u, opts) / u - dawson(math.sqrt(u)) / u**1.5


def dawson(x: float) -> float:
    """Dawson integral D(x) = e^{-x^2} integral_0^x e^{t^2} dt.

    Taylor series for |x| <= 0.5, Rybicki's equally-spaced sampling method
    beyond; both accurate to a few ulps over the real line.
    """
    if x < 0.0:
        return -dawson(-x)
    if x <= _DAWSON_TAYLOR_LIMIT:
        total = term = x
        k = 0
        while abs(term) > 1e-18 * abs(total):
            term *= -2.0 * x * x / (2.0 * k + 3.0)
            total += term
            k += 1
        return total
    h = _DAWSON_H
    span = _DAWSON_WINDOW * h
    n_lo = int(math.floor((x - span) / h))
    n_hi = int(math.ceil((x + span) / h))
    total = 0.0
    for n in range(n_lo, n_hi + 1):
        if n % 2 == 0:
            continue
        d = x - n * h
        total += math.exp(-d * d) / n
    return total / _SQRT_PI


# ---------------------------------------------------------------------------
# Vectorized counterparts used by the dense-profile evaluator.  Identical
# algorithms, elementwise over a numpy array of nonpositive arguments; term
# rescaling is applied per element so small-|z| entries are never squashed.
# ---------------------------------------------------------------------------


def _series_1f1_array(
    a: float, b: float, z: np.ndarray, opts: EvalOptions
) -> tuple[np.ndarray, np.ndarray]:
    total = np.ones_like(z)
    term = np.ones_like(z)
    comp = np.zeros_like(z)
    n2 = np.zeros(z.shape, dtype=np.int64)
    done = np.zeros(z.shape, dtype=bool)
    small_prev = np.zeros(z.shape, dtype=bool)
    for k in range(opts.max_terms):
        term = term * ((a + k) * z / ((b + k) * (k + 1.0)))
        y = term - comp
        s = total + y
        comp = (s - total) - y
        total = s
        small = np.abs(term) <= opts.rel_tol * np.abs(total)
        done |= small & small_prev
        if done.all():
            return total, n2
        small_prev = small
        big = (np.abs(total) > _RESCALE_LIMIT) | (np.abs(term) > _RESCALE_LIMIT)
        if big.any():
            total[big] = np.ldexp(total[big], -_RESCALE_BITS)
            term[big] = np.ldexp(term[big], -_RESCALE_BITS)
            comp[big] = np.ldexp(comp[big], -_RESCALE_BITS)
            n2[big] += _RESCALE_BITS
    raise ConvergenceError(
        f"vectorized 1F1 series (a={a}, b={b}) did not converge within "
        f"{opts.max_terms} terms; worst |z|={np.abs(z).max():g}"
    )


def _hyp1f1_array(a: float, b: float, z: np.ndarray, opts: EvalOptions) -> np.ndarray:
    _require_no_pole(b, ParameterError, "b")
    if np.any(z > 0.0):
        raise DomainError("vectorized 1F1 path expects z <= 0")
    out = np.empty_like(z)
    near = z >= -1.0
    if near.any():
        total, n2 = _series_1f1_array(a, b, z[near], opts)
        out[near] = np.ldexp(total, n2.astype(np.int32))
    far = ~near
    if far.any():
        zf = z[far]
        total, n2 = _series_1f1_array(b - a, b, -zf, opts)
        abst = np.abs(total)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            mag = zf + np.log(np.where(abst > 0.0, abst, 1.0)) + n2 * _LN2
            vals = np.where(
                (abst > 0.0) & (mag > _EXP_UNDERFLOW),
                np.copysign(np.exp(np.minimum(mag, 700.0)), total),
                0.0,
            )
        out[far] = vals
    return out


def _f22_direct_array(z: np.ndarray, opts: EvalOptions) -> np.ndarray:
    total = np.ones_like(z)
    term = np.ones_like(z)
    comp = np.zeros_like(z)
    done = np.zeros(z.shape, dtype=bool)
    small_prev = np.zeros(z.shape, dtype=bool)
    kmin = float(np.abs(z).max())
    for k in range(opts.max_terms):
        term = term * ((1.0 + k) * z / ((1.5 + k) * (2.0 + k)))
        y = term - comp
        s = total + y
        comp = (s - total) - y
        total = s
        small = np.abs(term) <= opts.rel_tol * np.abs(total)
        done |= small & small_prev
        if done.all() and k >= kmin:
            return total
        small_prev = small
    raise ConvergenceError(
        f"vectorized 2F2 series did not converge within {opts.max_terms} terms"
    )


def _f22_resummed_array(u: np.ndarray, opts: EvalOptions) -> np.ndarray:
    lnu = np.log(u)
    total = np.zeros_like(u)
    comp = np.zeros_like(u)
    cdf = np.zeros_like(u)
    umax = float(u.max())
    for k in range(opts.max_terms):
        lp = -u + k * lnu - math.lgamma(k + 1.0)
        with np.errstate(under="ignore"):
            cdf = cdf + np.where(lp > _EXP_UNDERFLOW, np.exp(np.minimum(lp, 0.0)), 0.0)
        p = np.clip(1.0 - cdf, 0.0, None)
        term = p / (2.0 * k + 1.0)
        y = term - comp
        s = total + y
        comp = (s - total) - y
        total = s
        if k > umax and (term <= opts.rel_tol * total).all():
            return total / u
    raise ConvergenceError(
        f"vectorized 2F2 resummation did not converge within {opts.max_terms} "
        f"terms; worst |z|={umax:g}"
    )


def _hyp2f2_array(z: np.ndarray, opts: EvalOptions) -> np.ndarray:
    if np.any(z > 0.0):
        raise DomainError("vectorized 2F2 path expects z <= 0")
    out = np.ones_like(z)
    near = (z < 0.0) & (z >= -_F22_DIRECT_LIMIT)
    if near.any():
        out[near] = _f22_direct_array(z[near], opts)
    far = z < -_F22_DIRECT_LIMIT
    if far.any():
        out[far] = _f22_resummed_array(-z[far], opts)
    return out


def _df22_direct_array(z: np.ndarray, opts: EvalOptions) -> np.ndarray:
    total = np.full_like(z, 1.0 / 3.0)
    term = np.full_like(z, 1.0 / 3.0)
    comp = np.zeros_like(z)
    done = np.zeros(z.shape, dtype=bool)
    small_prev = np.zeros(z.shape, dtype=bool)
    kmin = float(np.abs(z).max())
    for k in range(opts.max_terms):
        term = term * ((2.0 + k) * (2.0 + k) * z / ((2.5 + k) * (3.0 + k) * (1.0 + k)))
        y = term - comp
        s = total + y
        comp = (s - total) - y
        total = s
        small = np.abs(term) <= opts.rel_tol * np.abs(total)
        done |= small & small_prev
        if done.all() and k >= kmin:
            return total
        small_prev = small
    raise ConvergenceError(
        f"vectorized 2F2 derivative series did not converge within "
        f"{opts.max_terms} terms"
    )


def _dhyp2f2_array(z: np.ndarray, opts: EvalOptions) -> np.ndarray:
    if np.any(z > 0.0):
        raise DomainError("vectorized 2F2 derivative path expects z <= 0")
    out = np.full_like(z, 1.0 / 3.0)
    near = (z < 0.0) & (z >= -_F22_DIRECT_LIMIT)
    if near.any():
        out[near] = _df22_direct_array(z[near], opts)
    far = z < -_F22_DIRECT_LIMIT
    if far.any():
        u = -z[far]
        out[far] = _f22_resummed_array(u, opts) / u - _dawson_array(np.sqrt(u)) / u**1.5
    return out


def _dawson_array(x: np.ndarray) -> np.ndarray:
    # Rybicki sampling, vectorized; callers only reach this for x > 2.8 so no
    # small-x Taylor branch is needed.
    h = _DAWSON_H
    center = 2.0 * np.floor(x / (2.0 * h)) + 1.0
    offsets = np.arange(-_DAWSON_WINDOW, _DAWSON_WINDOW + 2, 2, dtype=np.float64)
    n = center[None, :] + offsets[:, None]
    d = x[None, :] - n * h
    with np.errstate(under="ignore"):
        total = (np.exp(-d * d) / n).sum(axis=0)
    return total / _SQRT_PI
