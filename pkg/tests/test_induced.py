import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gadq.channel import BlochVector, GadcParams, apply_gadc_density, binary_entropy, bloch_to_density
from gadq.holevo import EnsembleZ
from gadq.induced import (
    BinaryChannel,
    IterationLimitError,
    binary_channel_capacity,
    blahut_arimoto,
    bsc_capacity,
    helstrom_projector,
    induced_gap,
    m1_channel,
    m2_channel,
    m2_flip_probability,
)

LOG2_5_4 = math.log2(1.25)
ONE_MINUS_H_QUARTER = 0.188721875540867136090304207961

unit = st.floats(0.0, 1.0)


def brute_capacity(t, points=200_001):
    a = np.linspace(0, 1, points)
    py0 = (1 - a) * t[0, 0] + a * t[0, 1]
    return float((binary_entropy(py0) - (1 - a) * binary_entropy(t[0, 0]) - a * binary_entropy(t[0, 1])).max())


def test_binary_channel_validation():
    with pytest.raises(ValueError):
        BinaryChannel(np.array([[0.5, 0.5], [0.6, 0.5]]))
    with pytest.raises(ValueError):
        BinaryChannel(np.eye(3))


def test_helstrom_computational_basis():
    zero = bloch_to_density(BlochVector(0, 0, 1))
    one = bloch_to_density(BlochVector(0, 0, -1))
    for p, n in [(0.1, 0.0), (0.5, 0.3), (0.99, 0.9)]:
        ch = GadcParams(p, n)
        meas = helstrom_projector(apply_gadc_density(ch, zero), apply_gadc_density(ch, one))
        assert not meas.ambiguous
        np.testing.assert_allclose(meas.projector, np.diag([1, 0]), atol=1e-12)


def test_helstrom_ensemble_is_x_plus():
    ens = EnsembleZ(0.0)
    ch = GadcParams(0.4, 0.2)
    plus = apply_gadc_density(ch, bloch_to_density(BlochVector(*ens.plus)))
    minus = apply_gadc_density(ch, bloch_to_density(BlochVector(*ens.minus)))
    meas = helstrom_projector(plus, minus)
    np.testing.assert_allclose(meas.projector, 0.5 * np.ones((2, 2)), atol=1e-12)


def test_helstrom_degenerate():
    rho = bloch_to_density(BlochVector(0.1, 0.2, 0.3))
    meas = helstrom_projector(rho, rho)
    assert meas.ambiguous
    assert not meas.projector.any()


@settings(max_examples=50)
@given(st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1))
def test_helstrom_is_projector(x0, y0, z0, x1, y1, z1):
    def state(x, y, z):
        r = np.array([x, y, z])
        norm = np.linalg.norm(r)
        return bloch_to_density(BlochVector(*(r / max(norm, 1.0))))

    rho0, rho1 = state(x0, y0, z0), state(x1, y1, z1)
    e = helstrom_projector(rho0, rho1).projector
    np.testing.assert_allclose(e @ e, e, atol=1e-12)
    # optimal success probability 1/2 + |rho0 - rho1|_1 / 4
    trace_norm = np.abs(np.linalg.eigvalsh(rho0.matrix - rho1.matrix)).sum()
    success = 0.5 * (np.trace(rho0.matrix @ e).real + np.trace(rho1.matrix @ (np.eye(2) - e)).real)
    assert success == pytest.approx(0.5 + trace_norm / 4, abs=1e-12)


def test_m1_examples():
    np.testing.assert_allclose(m1_channel(GadcParams(0, 0.3)).t, np.eye(2), atol=1e-15)
    np.testing.assert_allclose(m1_channel(GadcParams(1, 0)).t, [[1, 1], [0, 0]], atol=1e-15)
    p = 0.3
    np.testing.assert_allclose(m1_channel(GadcParams(p, 0.5)).t, [[1 - p / 2, p / 2], [p / 2, 1 - p / 2]], atol=1e-15)


@given(unit, unit)
def test_m1_closed_form(p, n):
    expected = [[1 - p * n, p * (1 - n)], [p * n, 1 - p * (1 - n)]]
    np.testing.assert_allclose(m1_channel(GadcParams(p, n)).t, expected, atol=1e-12)


@given(unit, st.floats(-1, 1), unit, unit)
def test_m2_flip_and_independent_of_n(p, z, n, n2):
    t = m2_channel(GadcParams(p, n), z).t
    q = m2_flip_probability(p, z)
    np.testing.assert_allclose(t, [[1 - q, q], [q, 1 - q]], atol=1e-12)
    np.testing.assert_allclose(m2_channel(GadcParams(p, n2), z).t, t, atol=1e-15)


def test_m2_examples():
    np.testing.assert_allclose(m2_channel(GadcParams(0, 0.3), 0).t, np.eye(2), atol=1e-15)
    for z in (-1, 1):
        np.testing.assert_allclose(m2_channel(GadcParams(0.3, 0.3), z).t, 0.5 * np.ones((2, 2)), atol=1e-15)
        assert binary_channel_capacity(m2_channel(GadcParams(0.3, 0.3), z)).capacity == pytest.approx(0, abs=1e-12)
    assert m2_flip_probability(0.75) == pytest.approx(0.25)


def test_bsc_capacity_values():
    assert bsc_capacity(0) == 1.0
    assert bsc_capacity(0.5) == pytest.approx(0, abs=1e-15)
    assert bsc_capacity(0.25) == pytest.approx(ONE_MINUS_H_QUARTER, abs=1e-15)


def test_capacity_examples():
    ident = BinaryChannel(np.eye(2))
    res = binary_channel_capacity(ident)
    assert res.capacity == pytest.approx(1, abs=1e-12)
    assert res.optimal_input == pytest.approx(0.5, abs=1e-6)
    z = m1_channel(GadcParams(0.5, 0))
    assert brute_capacity(z.t) == pytest.approx(LOG2_5_4, abs=1e-9)
    assert binary_channel_capacity(z).capacity == pytest.approx(LOG2_5_4, abs=1e-12)


@pytest.mark.parametrize("q", [0.0, 0.1, 0.25, 0.4])
def test_symmetric_channel_capacity(q):
    res = binary_channel_capacity(BinaryChannel(np.array([[1 - q, q], [q, 1 - q]])))
    assert res.capacity == pytest.approx(bsc_capacity(q), abs=1e-12)
    if q < 0.5:
        assert res.optimal_input == pytest.approx(0.5, abs=1e-4)


def test_blahut_arimoto_examples():
    assert blahut_arimoto(BinaryChannel(np.eye(2))).capacity == pytest.approx(1, abs=1e-9)
    assert blahut_arimoto(m1_channel(GadcParams(0.5, 0))).capacity == pytest.approx(LOG2_5_4, abs=1e-9)
    assert blahut_arimoto(m2_channel(GadcParams(0.75, 0.1), 0)).capacity == pytest.approx(ONE_MINUS_H_QUARTER, abs=1e-9)


def test_blahut_arimoto_iteration_limit():
    chan = BinaryChannel(np.array([[0.9, 0.3], [0.1, 0.7]]))
    with pytest.raises(IterationLimitError) as info:
        blahut_arimoto(chan, tol=1e-15, max_iter=3)
    assert 0 < info.value.result.capacity < 1


@settings(max_examples=200, deadline=None)
@given(unit, unit)
def test_blahut_arimoto_matches_golden(a, b):
    chan = BinaryChannel(np.array([[a, b], [1 - a, 1 - b]]))
    assert blahut_arimoto(chan).capacity == pytest.approx(binary_channel_capacity(chan).capacity, abs=1e-6)


def test_dominance_and_symmetry_grid():
    grid = np.linspace(0, 1, 21)
    for p in grid:
        c2 = bsc_capacity(m2_flip_probability(p))
        for n in grid:
            c1 = binary_channel_capacity(m1_channel(GadcParams(p, n))).capacity
            assert c2 >= c1 - 1e-9
            assert c1 == pytest.approx(binary_channel_capacity(m1_channel(GadcParams(p, 1 - n))).capacity, abs=1e-9)


@given(unit, st.floats(-1, 1))
def test_m2_maximal_at_zero(p, z):
    assert bsc_capacity(m2_flip_probability(p, z)) <= bsc_capacity(m2_flip_probability(p)) + 1e-15


@pytest.mark.parametrize("p", [0.2, 0.5, 0.9])
def test_m1_decreases_in_n(p):
    caps = [binary_channel_capacity(m1_channel(GadcParams(p, n))).capacity for n in np.linspace(0, 0.5, 11)]
    assert np.all(np.diff(caps) <= 1e-12)


def test_induced_gap_examples():
    for p in (0.1, 0.5, 0.9):
        assert abs(induced_gap(GadcParams(p, 0.5))) <= 2e-9
    assert induced_gap(GadcParams(0, 0.3)) == pytest.approx(0, abs=1e-12)
    assert induced_gap(GadcParams(0.5, 0)) > 0.07
