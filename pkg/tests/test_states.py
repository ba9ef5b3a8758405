"""State containers, channel action, and the Bloch-sphere picture."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from topoqubit import (
    BlochAffineMap,
    DensityMatrix2,
    DensityMatrix4,
    DomainError,
    XState4,
    bell_like,
    bloch_affine_map,
    evolve_pair,
    evolve_single,
    evolved_x_state,
    trace_distance,
)
from conftest import kraus_pair_evolve, random_density


def dm2(m) -> DensityMatrix2:
    return DensityMatrix2(np.asarray(m, dtype=complex))


def dm4(m) -> DensityMatrix4:
    return DensityMatrix4(np.asarray(m, dtype=complex))


KET0 = dm2([[1, 0], [0, 0]])
KET1 = dm2([[0, 0], [0, 1]])
PLUS = dm2([[0.5, 0.5], [0.5, 0.5]])


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def test_density_validation():
    with pytest.raises(DomainError):
        dm2([[1, 0, 0], [0, 0, 0]])
    with pytest.raises(DomainError):
        dm2([[0.5, 0.5], [0.2, 0.5]])                   # not Hermitian
    with pytest.raises(DomainError):
        dm2([[0.7, 0], [0, 0.7]])                       # trace 1.4
    with pytest.raises(DomainError):
        dm2([[1.2, 0], [0, -0.2]])                      # negative eigenvalue
    with pytest.raises(DomainError):
        dm2([[np.nan, 0], [0, 1]])
    m = dm2([[0.5, 0.1], [0.1, 0.5]]).matrix
    assert not m.flags.writeable


def test_x_state_validation():
    with pytest.raises(DomainError):
        XState4(0.5, 0.5, 0.2, -0.2)
    with pytest.raises(DomainError):
        XState4(0.4, 0.4, 0.4, 0.4)                     # populations sum to 1.6
    with pytest.raises(DomainError):
        XState4(0.25, 0.25, 0.25, 0.25, rho14=0.3)      # exceeds cross bound
    with pytest.raises(DomainError):
        XState4(0.25, 0.25, 0.25, 0.25, rho23=0.26)
    s = XState4(0.4, 0.1, 0.1, 0.4, rho14=0.2j)
    m = s.matrix
    assert m[0, 3] == 0.2j and m[3, 0] == -0.2j
    assert np.trace(m).real == pytest.approx(1.0, abs=1e-15)


def test_bloch_affine_map_validation():
    with pytest.raises(DomainError):
        BlochAffineMap(np.eye(2))
    am = BlochAffineMap(0.5 * np.eye(3))
    assert am.det == pytest.approx(0.125, rel=1e-15)
    assert np.all(am.c == 0.0)


# ---------------------------------------------------------------------------
# single-qubit action
# ---------------------------------------------------------------------------

def test_evolve_single_identity_at_full_coherence():
    for rho in (KET0, KET1, PLUS):
        out = evolve_single(rho, 1.0)
        assert np.allclose(out.matrix, rho.matrix, atol=1e-15)


def test_evolve_single_formulas():
    out = evolve_single(KET0, 0.6)
    # populations relax toward 1/2 with weight a^2
    assert out.matrix[0, 0] == pytest.approx(0.5 * (1.0 + 0.36), rel=1e-15)
    out = evolve_single(PLUS, 0.6)
    assert out.matrix[0, 1] == pytest.approx(0.5 * 0.6, rel=1e-15)
    assert out.matrix[0, 0] == pytest.approx(0.5, rel=1e-15)


def test_evolve_single_domain():
    for a in (0.0, -0.1, 1.2):
        with pytest.raises(DomainError):
            evolve_single(KET0, a)


def test_evolve_composition():
    # the family is a semigroup in the coherence factor
    rho = dm2([[0.3, 0.2 - 0.1j], [0.2 + 0.1j, 0.7]])
    a1, a2 = 0.8, 0.55
    two_step = evolve_single(evolve_single(rho, a1), a2)
    one_step = evolve_single(rho, a1 * a2)
    assert np.allclose(two_step.matrix, one_step.matrix, atol=1e-15)


# ---------------------------------------------------------------------------
# pair action
# ---------------------------------------------------------------------------

def test_evolve_pair_matches_kraus_oracle(rng):
    worst = 0.0
    for _ in range(50):
        m = random_density(rng, 4)
        a = float(rng.uniform(0.05, 1.0))
        got = evolve_pair(dm4(m), a).matrix
        want = kraus_pair_evolve(m, a)
        worst = max(worst, float(np.abs(got - want).max()))
    assert worst <= 1e-14


def test_evolve_pair_identity_and_diagonal():
    bell = bell_like(math.pi / 2)
    assert np.allclose(evolve_pair(bell, 1.0).matrix, bell.matrix, atol=1e-15)
    ket00 = dm4(np.diag([1.0, 0.0, 0.0, 0.0]))
    out = evolve_pair(ket00, 0.5).matrix
    assert np.allclose(out, np.diag(np.diag(out)), atol=1e-15)
    assert np.trace(out).real == pytest.approx(1.0, abs=1e-14)


def test_evolve_pair_matches_x_state_family():
    for theta in np.linspace(0.0, math.pi, 9):
        for a in (0.05, 0.4, 0.9, 1.0):
            via_pair = evolve_pair(bell_like(float(theta)), a).matrix
            via_x = evolved_x_state(float(theta), a).matrix
            assert np.abs(via_pair - via_x).max() <= 1e-14


def test_bell_like_endpoints():
    assert np.allclose(bell_like(0.0).matrix, np.diag([1.0, 0, 0, 0]), atol=1e-15)
    assert np.allclose(bell_like(math.pi).matrix, np.diag([0, 0, 0, 1.0]), atol=1e-15)
    m = bell_like(math.pi / 2).matrix
    assert m[0, 0] == pytest.approx(0.5, rel=1e-15)
    assert m[0, 3] == pytest.approx(0.5, rel=1e-15)
    with pytest.raises(DomainError):
        bell_like(-0.1)
    with pytest.raises(DomainError):
        bell_like(3.5)


def test_evolved_x_state_entries():
    theta, a = math.pi / 3, 0.7
    s = evolved_x_state(theta, a)
    m = s.matrix
    a2, a4 = a * a, a ** 4
    assert m[0, 0].real == pytest.approx(0.25 * (1 + a4) + 0.5 * a2 * math.cos(theta), rel=1e-14)
    assert m[1, 1].real == pytest.approx(0.25 * (1 - a4), rel=1e-14)
    assert m[2, 2].real == pytest.approx(0.25 * (1 - a4), rel=1e-14)
    assert m[0, 3].real == pytest.approx(0.5 * a2 * math.sin(theta), rel=1e-14)
    assert evolved_x_state(theta, 0.0).matrix[0, 3] == 0.0


# ---------------------------------------------------------------------------
# trace distance
# ---------------------------------------------------------------------------

def test_trace_distance_basics():
    assert trace_distance(KET0, KET0) == pytest.approx(0.0, abs=1e-15)
    assert trace_distance(KET0, KET1) == pytest.approx(1.0, rel=1e-15)
    assert trace_distance(KET0, PLUS) == pytest.approx(math.sqrt(0.5), rel=1e-12)


def test_trace_distance_of_evolved_poles():
    # antipodal initial states keep distance a^2 under the channel
    for a in (0.1, 0.5, 0.9):
        d = trace_distance(evolve_single(KET0, a), evolve_single(KET1, a))
        assert d == pytest.approx(a * a, rel=1e-13)


def test_trace_distance_contractivity(rng):
    for _ in range(200):
        r1 = dm2(random_density(rng, 2))
        r2 = dm2(random_density(rng, 2))
        a = float(rng.uniform(0.05, 1.0))
        before = trace_distance(r1, r2)
        after = trace_distance(evolve_single(r1, a), evolve_single(r2, a))
        assert after <= before + 1e-12


# ---------------------------------------------------------------------------
# evolved states stay physical
# ---------------------------------------------------------------------------

def test_evolved_states_legitimate(rng):
    for _ in range(250):
        a = float(rng.uniform(0.01, 1.0))
        m2 = evolve_single(dm2(random_density(rng, 2)), a).matrix
        m4 = evolve_pair(dm4(random_density(rng, 4)), a).matrix
        for m in (m2, m4):
            assert np.abs(m - m.conj().T).max() <= 1e-13
            assert np.trace(m).real == pytest.approx(1.0, abs=1e-13)
            assert np.linalg.eigvalsh(m).min() >= -1e-12


# ---------------------------------------------------------------------------
# Bloch picture
# ---------------------------------------------------------------------------

def test_bloch_affine_map_structure():
    am = bloch_affine_map(1.0)
    assert np.allclose(am.m, np.eye(3), atol=1e-14)
    assert np.allclose(am.c, 0.0, atol=1e-14)
    for a in (0.3, 0.5, 0.95):
        am = bloch_affine_map(a)
        assert np.allclose(am.m, np.diag([a, a, a * a]), atol=1e-13)
        assert np.allclose(am.c, 0.0, atol=1e-13)
        assert am.det == pytest.approx(a ** 4, rel=1e-12)


@settings(deadline=None, max_examples=50)
@given(
    st.floats(min_value=0.0, max_value=math.pi),
    st.floats(min_value=0.01, max_value=1.0),
)
def test_pair_channel_consistency(theta, a):
    via_pair = evolve_pair(bell_like(theta), a).matrix
    via_x = evolved_x_state(theta, a).matrix
    assert np.abs(via_pair - via_x).max() <= 1e-14
