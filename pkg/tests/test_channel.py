import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gadq.channel import (
    IDENTITY,
    SIGMA_Z,
    BlochVector,
    DensityMatrix,
    GadcParams,
    apply_gadc_bloch,
    apply_gadc_density,
    binary_entropy,
    bloch_to_density,
    density_to_bloch,
    ebt_threshold,
    is_entanglement_breaking,
    kraus_operators,
    qubit_entropy,
)

# 1/2 + (3/4) log2(4/3) evaluated with mpmath at 30 digits
H_QUARTER = 0.811278124459132863909695792039

unit = st.floats(0.0, 1.0)


@st.composite
def bloch_vectors(draw):
    theta = draw(st.floats(0.0, math.pi))
    phi = draw(st.floats(0.0, 2 * math.pi))
    r = draw(unit)
    return BlochVector(r * math.sin(theta) * math.cos(phi), r * math.sin(theta) * math.sin(phi), r * math.cos(theta))


def test_binary_entropy_values():
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert binary_entropy(0.5) == pytest.approx(1.0, abs=1e-15)
    assert binary_entropy(0.25) == pytest.approx(H_QUARTER, abs=1e-15)


def test_binary_entropy_clamps_and_rejects():
    assert binary_entropy(-1e-13) == 0.0
    assert binary_entropy(1 + 1e-13) == 0.0
    with pytest.raises(ValueError):
        binary_entropy(-1e-9)
    with pytest.raises(ValueError):
        binary_entropy(np.array([0.2, 1.1]))


def test_binary_entropy_vectorized():
    out = binary_entropy(np.array([0.0, 0.25, 0.5]))
    np.testing.assert_allclose(out, [0.0, H_QUARTER, 1.0], atol=1e-15)


def test_params_validation():
    assert GadcParams(1 + 1e-13, -1e-13) == GadcParams(1.0, 0.0)
    with pytest.raises(ValueError):
        GadcParams(1.1, 0.5)
    with pytest.raises(ValueError):
        GadcParams(0.5, -0.01)


def test_bloch_vector_rejects_unphysical():
    with pytest.raises(ValueError):
        BlochVector(1.0, 0.1, 0.0)


def test_density_matrix_validation():
    with pytest.raises(ValueError):
        DensityMatrix(np.array([[1, 1], [0, 0]]))
    with pytest.raises(ValueError):
        DensityMatrix(np.diag([0.6, 0.6]))
    with pytest.raises(ValueError):
        DensityMatrix(np.diag([1.5, -0.5]))


@given(bloch_vectors())
def test_bloch_round_trip(r):
    back = density_to_bloch(bloch_to_density(r))
    np.testing.assert_allclose(back.as_array(), r.as_array(), atol=1e-12)


def test_kraus_no_damping():
    k = kraus_operators(GadcParams(0.0, 0.3))
    np.testing.assert_allclose(k.k0, math.sqrt(0.7) * IDENTITY, atol=1e-15)
    np.testing.assert_allclose(k.k2, math.sqrt(0.3) * IDENTITY, atol=1e-15)
    assert not k.k1.any() and not k.k3.any()


def test_kraus_full_damping():
    k = kraus_operators(GadcParams(1.0, 0.0))
    np.testing.assert_allclose(k.k0, [[1, 0], [0, 0]], atol=1e-15)
    np.testing.assert_allclose(k.k1, [[0, 1], [0, 0]], atol=1e-15)
    assert not k.k2.any() and not k.k3.any()


@given(unit, unit)
def test_kraus_completeness(p, n):
    np.testing.assert_allclose(kraus_operators(GadcParams(p, n)).completeness(), IDENTITY, atol=1e-12)


def test_bloch_action_examples():
    ch = GadcParams(0.37, 0.5)
    assert apply_gadc_bloch(ch, BlochVector(0, 0, 0)).as_array() == pytest.approx([0, 0, 0])
    out = apply_gadc_bloch(GadcParams(1.0, 0.0), BlochVector(0, 0, -1))
    assert out.as_array() == pytest.approx([0, 0, 1])
    r = BlochVector(0.3, -0.4, 0.5)
    assert apply_gadc_bloch(GadcParams(0.0, 0.8), r).as_array() == pytest.approx(r.as_array())


def test_density_action_examples():
    mixed = DensityMatrix(IDENTITY / 2)
    np.testing.assert_allclose(apply_gadc_density(GadcParams(0.6, 0.5), mixed).matrix, IDENTITY / 2, atol=1e-15)
    p = 0.3
    one = DensityMatrix(np.diag([0.0, 1.0]))
    # K1 moves weight p to |0>, K0 keeps 1 - p on |1>
    np.testing.assert_allclose(apply_gadc_density(GadcParams(p, 0.0), one).matrix, np.diag([p, 1 - p]), atol=1e-15)
    rho = bloch_to_density(BlochVector(0.1, 0.2, -0.3))
    np.testing.assert_allclose(apply_gadc_density(GadcParams(0, 0.4), rho).matrix, rho.matrix, atol=1e-15)


@given(unit, unit, bloch_vectors())
def test_kraus_and_bloch_forms_agree(p, n, r):
    ch = GadcParams(p, n)
    lhs = apply_gadc_density(ch, bloch_to_density(r)).matrix
    rhs = bloch_to_density(apply_gadc_bloch(ch, r)).matrix
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)


@given(unit, unit, bloch_vectors())
def test_sigma_z_covariance(p, n, r):
    ch = GadcParams(p, n)
    rho = bloch_to_density(r)
    lhs = apply_gadc_density(ch, DensityMatrix(SIGMA_Z @ rho.matrix @ SIGMA_Z)).matrix
    rhs = SIGMA_Z @ apply_gadc_density(ch, rho).matrix @ SIGMA_Z
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)


@given(unit, unit, bloch_vectors())
def test_convex_decomposition(p, n, r):
    rho = bloch_to_density(r)
    full = apply_gadc_density(GadcParams(p, n), rho).matrix
    mix = (1 - n) * apply_gadc_density(GadcParams(p, 0), rho).matrix + n * apply_gadc_density(GadcParams(p, 1), rho).matrix
    np.testing.assert_allclose(full, mix, atol=1e-12)


@given(unit, unit, bloch_vectors())
def test_output_stays_physical(p, n, r):
    assert apply_gadc_bloch(GadcParams(p, n), r).norm <= 1 + 1e-12


def test_qubit_entropy():
    assert qubit_entropy(BlochVector(0, 0, 1)) == 0.0
    assert qubit_entropy(BlochVector(0, 0, 0)) == pytest.approx(1.0)
    assert qubit_entropy(BlochVector(0.5, 0, 0)) == pytest.approx(H_QUARTER, abs=1e-15)


def test_entanglement_breaking_examples():
    assert is_entanglement_breaking(GadcParams(1.0, 0.5))
    assert not is_entanglement_breaking(GadcParams(0.5, 0.5))
    # l(0.9) = 0.7114582486..., band [0.14427, 0.85573]
    assert is_entanglement_breaking(GadcParams(0.9, 0.5))
    assert is_entanglement_breaking(GadcParams(0.9, 0.145))
    assert not is_entanglement_breaking(GadcParams(0.9, 0.144))


def test_ebt_threshold_values():
    assert ebt_threshold(0.5) == pytest.approx(2 * (math.sqrt(2) - 1), abs=1e-12)
    # second branch, mpmath at 30 digits
    assert ebt_threshold(0.25) == pytest.approx(0.861001748086120787, abs=1e-14)
    assert ebt_threshold(0.75) == ebt_threshold(0.25)
    with pytest.raises(ValueError):
        ebt_threshold(0.0)


@settings(max_examples=50)
@given(st.floats(0.01, 0.99))
def test_ebt_threshold_consistency(n):
    p_star = ebt_threshold(n)
    assert is_entanglement_breaking(GadcParams(min(p_star + 1e-6, 1.0), n))
    assert not is_entanglement_breaking(GadcParams(p_star - 1e-6, n))
