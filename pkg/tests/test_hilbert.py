"""Core linear-algebra layer: states, tensors, traces, random generators."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clonebound import hilbert
from clonebound.hilbert import DegeneratePairError, SizeCapExceeded

import _oracles as oracle


def e(i, d):
    return hilbert.basis_state(i, d)


# ---------------------------------------------------------------- inner product


def test_inner_product_identity_and_orthogonal():
    assert hilbert.inner_product(e(0, 2), e(0, 2)) == 1
    assert hilbert.inner_product(e(0, 2), e(1, 2)) == 0


def test_inner_product_hand_value():
    a = hilbert.as_state([0.6, 0.8])
    b = hilbert.as_state([1.0, 0.0])
    assert hilbert.inner_product(a, b) == pytest.approx(0.6, abs=1e-15)


def test_inner_product_conjugates_first_argument():
    a = hilbert.as_state([1j / math.sqrt(2), 1 / math.sqrt(2)])
    b = e(0, 2)
    # <a|b> = conj(i/sqrt2) * 1
    assert hilbert.inner_product(a, b) == pytest.approx(-1j / math.sqrt(2))


def test_inner_product_dimension_mismatch():
    with pytest.raises(ValueError):
        hilbert.inner_product(e(0, 2), e(0, 3))


# ---------------------------------------------------------------- tensor algebra


def test_tensor_power_of_basis_state():
    out = hilbert.tensor_power(e(0, 2), 3)
    assert out.shape == (8,)
    np.testing.assert_allclose(out, e(0, 8))


def test_tensor_power_overlap_multiplicativity():
    # unitarity identity: overlap of n-fold copies is z**n
    phi = hilbert.as_state([1.0, 0.0])
    psi = hilbert.as_state([0.6, 0.8])
    z2 = hilbert.inner_product(
        hilbert.tensor_power(phi, 2), hilbert.tensor_power(psi, 2)
    )
    assert z2 == pytest.approx(0.36, abs=1e-15)


def test_tensor_power_amplitudes_match_loop_oracle():
    s = [0.6, 0.8]
    got = hilbert.tensor_power(hilbert.as_state(s), 2)
    np.testing.assert_allclose(got, oracle.kron(s, s), atol=1e-15)
    np.testing.assert_allclose(got, [0.36, 0.48, 0.48, 0.64], atol=1e-15)


def test_tensor_power_respects_size_cap():
    with pytest.raises(SizeCapExceeded):
        hilbert.tensor_power(e(0, 2), 21)  # 2**21 > cap
    # exactly at the cap is allowed
    hilbert.tensor_power(e(0, 2), 20)


def test_tensor_product_basis_and_cap():
    np.testing.assert_allclose(hilbert.tensor_product(e(0, 2), e(0, 2)), e(0, 4))
    big = hilbert.tensor_power(e(0, 2), 20)
    with pytest.raises(SizeCapExceeded):
        hilbert.tensor_product(big, e(0, 2))


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_tensor_product_norm_multiplicative(seed):
    rng = hilbert.make_rng(seed)
    a = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    b = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    prod = np.kron(a, b)
    assert np.linalg.norm(prod) == pytest.approx(
        np.linalg.norm(a) * np.linalg.norm(b), rel=1e-12
    )


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_tensor_product_inner_factorizes(seed):
    rng = hilbert.make_rng(seed)
    a, b = hilbert.random_state(3, rng), hilbert.random_state(3, rng)
    c, d = hilbert.random_state(4, rng), hilbert.random_state(4, rng)
    lhs = hilbert.inner_product(
        hilbert.tensor_product(a, c), hilbert.tensor_product(b, d)
    )
    rhs = hilbert.inner_product(a, b) * hilbert.inner_product(c, d)
    assert abs(lhs - rhs) < 1e-10


# ---------------------------------------------------------------- orthonormal pair


def test_gram_schmidt_hand_case():
    e1, e2 = hilbert.gram_schmidt_pair(e(0, 2), hilbert.as_state([0.6, 0.8]))
    np.testing.assert_allclose(e1, [1.0, 0.0], atol=1e-15)
    np.testing.assert_allclose(e2, [0.0, 1.0], atol=1e-15)


def test_gram_schmidt_orthonormal_input_unchanged():
    e1, e2 = hilbert.gram_schmidt_pair(e(0, 3), e(1, 3))
    np.testing.assert_allclose(e1, e(0, 3))
    np.testing.assert_allclose(e2, e(1, 3))


def test_gram_schmidt_degenerate_pair_raises():
    v = hilbert.as_state([0.6, 0.8])
    with pytest.raises(DegeneratePairError):
        hilbert.gram_schmidt_pair(v, v)


def test_gram_schmidt_collinear_up_to_phase_raises():
    v = hilbert.as_state([0.6, 0.8])
    with pytest.raises(DegeneratePairError):
        hilbert.gram_schmidt_pair(v, np.exp(0.7j) * v)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=50, deadline=None)
def test_gram_schmidt_frame_properties(seed):
    rng = hilbert.make_rng(seed)
    v1 = hilbert.random_state(4, rng)
    v2 = hilbert.random_state(4, rng)
    e1, e2 = hilbert.gram_schmidt_pair(v1, v2)
    assert abs(hilbert.inner_product(e1, e1) - 1) < 1e-12
    assert abs(hilbert.inner_product(e2, e2) - 1) < 1e-12
    assert abs(hilbert.inner_product(e1, e2)) < 1e-12
    # orientation contract: the residual coefficient of v2 along e2 is real > 0
    coeff = hilbert.inner_product(e2, v2)
    assert coeff.real > 0
    assert abs(coeff.imag) < 1e-12


# ---------------------------------------------------------------- partial trace


def test_partial_trace_product_basis_state():
    rho = hilbert.projector_onto(hilbert.tensor_product(e(0, 2), e(0, 2)))
    reduced = hilbert.partial_trace(rho, (2, 2), keep="A")
    np.testing.assert_allclose(reduced, hilbert.projector_onto(e(0, 2)), atol=1e-15)


def test_partial_trace_bell_state_is_maximally_mixed():
    bell = hilbert.as_state([1 / math.sqrt(2), 0, 0, 1 / math.sqrt(2)])
    rho = hilbert.projector_onto(bell)
    reduced = hilbert.partial_trace(rho, (2, 2), keep="B")
    np.testing.assert_allclose(reduced, np.eye(2) / 2, atol=1e-15)
    # explicit loop oracle on the same 4x4 matrix
    np.testing.assert_allclose(
        hilbert.partial_trace(rho, (2, 2), keep="A"),
        oracle.trace_out_second(rho.tolist(), 2, 2),
        atol=1e-15,
    )


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_partial_trace_of_product_recovers_factor(seed):
    rng = hilbert.make_rng(seed)
    rho_a = hilbert.random_density(3, rng)
    rho_b = hilbert.random_density(2, rng)
    joint = np.kron(rho_a, rho_b)
    np.testing.assert_allclose(
        hilbert.partial_trace(joint, (3, 2), keep="A"), rho_a, atol=1e-12
    )
    np.testing.assert_allclose(
        hilbert.partial_trace(joint, (3, 2), keep="B"), rho_b, atol=1e-12
    )


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_partial_trace_output_is_density(seed):
    rng = hilbert.make_rng(seed)
    rho = hilbert.random_density(6, rng)
    reduced = hilbert.partial_trace(rho, (2, 3), keep="B")
    hilbert.check_density(reduced)  # hermitian, unit trace, PSD within 1e-9


def test_partial_trace_dimension_mismatch():
    rho = hilbert.random_density(6, hilbert.make_rng(0))
    with pytest.raises(ValueError):
        hilbert.partial_trace(rho, (4, 2), keep="A")


# ---------------------------------------------------------------- matrix sqrt


def test_matrix_sqrt_identity_and_diagonal():
    np.testing.assert_allclose(hilbert.matrix_sqrt_psd(np.eye(3)), np.eye(3))
    np.testing.assert_allclose(
        hilbert.matrix_sqrt_psd(np.diag([4.0, 9.0])), np.diag([2.0, 3.0])
    )


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_matrix_sqrt_reconstructs_random_psd(seed):
    rng = hilbert.make_rng(seed)
    g = rng.standard_normal((16, 16)) + 1j * rng.standard_normal((16, 16))
    m = g @ g.conj().T
    root = hilbert.matrix_sqrt_psd(m)
    assert np.max(np.abs(root @ root - m)) < 1e-8 * max(1.0, np.max(np.abs(m)))


def test_matrix_sqrt_rejects_non_hermitian():
    with pytest.raises(ValueError):
        hilbert.matrix_sqrt_psd(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_matrix_sqrt_rejects_negative_eigenvalue():
    with pytest.raises(ValueError):
        hilbert.matrix_sqrt_psd(np.diag([1.0, -0.5]))


def test_matrix_sqrt_clamps_tiny_negative_noise():
    root = hilbert.matrix_sqrt_psd(np.diag([1.0, -1e-12]))
    np.testing.assert_allclose(root, np.diag([1.0, 0.0]), atol=1e-6)


# ---------------------------------------------------------------- random objects


def test_random_state_deterministic_per_seed():
    a = hilbert.random_state(4, hilbert.make_rng(42))
    b = hilbert.random_state(4, hilbert.make_rng(42))
    np.testing.assert_array_equal(a, b)


def test_make_rng_uses_pcg64():
    assert type(hilbert.make_rng(0).bit_generator).__name__.lower() == "pcg64"


def test_random_full_rank_projector_is_identity():
    p = hilbert.random_projector(3, 3, hilbert.make_rng(1))
    np.testing.assert_allclose(p, np.eye(3), atol=1e-12)


def test_random_projector_invalid_rank():
    rng = hilbert.make_rng(0)
    with pytest.raises(ValueError):
        hilbert.random_projector(3, 0, rng)
    with pytest.raises(ValueError):
        hilbert.random_projector(3, 4, rng)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_random_unitary_is_unitary(seed):
    u = hilbert.random_unitary(5, hilbert.make_rng(seed))
    assert np.max(np.abs(u.conj().T @ u - np.eye(5))) < 1e-10


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_random_density_and_projector_validate(seed):
    rng = hilbert.make_rng(seed)
    hilbert.check_density(hilbert.random_density(5, rng))
    hilbert.check_projector(hilbert.random_projector(5, 2, rng))


def test_random_state_is_normalized():
    s = hilbert.random_state(7, hilbert.make_rng(3))
    assert np.linalg.norm(s) == pytest.approx(1.0, abs=1e-12)


# ---------------------------------------------------------------- validation helpers


def test_as_state_rejects_unnormalized():
    with pytest.raises(ValueError):
        hilbert.as_state([1.0, 1.0])


def test_basis_state_bounds():
    with pytest.raises(ValueError):
        hilbert.basis_state(2, 2)
    with pytest.raises(ValueError):
        hilbert.basis_state(-1, 2)


def test_check_density_rejects_wrong_trace_and_negativity():
    with pytest.raises(ValueError):
        hilbert.check_density(np.eye(2))  # trace 2
    with pytest.raises(ValueError):
        hilbert.check_density(np.diag([1.5, -0.5]))


def test_check_projector_rejects_non_idempotent():
    with pytest.raises(ValueError):
        hilbert.check_projector(np.diag([0.5, 0.5]))
