"""Dense-operator plumbing: shapes, embeddings, fits, derivatives."""

import numpy as np
import pytest

import spinchain as sc

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.diag([1.0, -1.0]).astype(complex)


def test_operator_round_trip():
    op = sc.Operator((2, 2), np.eye(4, dtype=complex))
    assert op.dims == (2, 2)
    assert sc.mat(op).shape == (4, 4)
    assert sc.mat(np.eye(3)).dtype == complex


def test_as_operator_infers_square_dims():
    op = sc.linalg.as_operator(np.eye(4))
    assert np.prod(op.dims) == 4


def test_kron_dims_and_entries():
    a = sc.Operator((2,), SX)
    b = sc.Operator((2,), SZ)
    k = sc.kron(a, b)
    assert k.dims == (2, 2)
    assert np.array_equal(sc.mat(k), np.kron(SX, SZ))
    assert np.array_equal(sc.kron_all(SX, SZ, SX), np.kron(SX, np.kron(SZ, SX)))


def test_embed_is_one_indexed():
    dims = (2, 2, 2)
    left = sc.mat(sc.embed(SZ, 1, dims))
    mid = sc.mat(sc.embed(SZ, 2, dims))
    assert np.array_equal(left, np.kron(SZ, np.eye(4)))
    assert np.array_equal(mid, np.kron(np.eye(2), np.kron(SZ, np.eye(2))))


def test_embed_pair_and_wrap():
    dims = (2, 2, 2)
    pair = np.kron(SX, SZ)
    spot = sc.linalg.embed_pair(pair, 2, dims)
    assert np.array_equal(spot, np.kron(np.eye(2), pair))
    # wrap couples the last site (left factor) with the first
    wrap = sc.linalg.embed_wrap_pair(pair, dims)
    manual = np.kron(SZ, np.kron(np.eye(2), SX))
    assert np.allclose(wrap, manual)


def test_permutation_swaps_factors():
    p = sc.mat(sc.permutation(2))
    a = np.array([[1, 2], [3, 4.0]])
    b = np.array([[0, 1], [5, 7.0]])
    assert np.allclose(p @ np.kron(a, b) @ p, np.kron(b, a))
    assert np.allclose(p @ p, np.eye(4))


def test_partial_trace_first():
    a = np.array([[1, 2], [3, 4.0]])
    b = np.array([[0, 1], [5, 7.0]])
    op = sc.Operator((2, 2), np.kron(a, b))
    out = sc.partial_trace_first(op)
    assert np.allclose(sc.mat(out), np.trace(a) * b)


def test_eig_sorting_and_vectors():
    m = np.diag([3.0, -1.0, 1.0])
    spec = sc.eig(sc.Operator((3,), m.astype(complex)))
    assert np.allclose(spec.eigenvalues, [-1, 1, 3])
    spec_h = sc.eig(sc.Operator((3,), m.astype(complex)), hermitian=True)
    assert np.allclose(spec_h.eigenvalues, [-1, 1, 3])
    assert spec_h.eigenvectors is not None


def test_comm_norm_and_rel_norm():
    assert sc.comm_norm(SZ, np.eye(2)) == 0.0
    assert sc.comm_norm(SX, SZ) > 1.0
    assert sc.rel_norm(2 * SX, 2 * SX) == 0.0
    assert sc.rel_norm(SX, SZ) > 0.5


def test_fit_affine_recovers_coefficients():
    rng = np.random.default_rng(3)
    b1 = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    b2 = rng.normal(size=(4, 4))
    target = (2.0 - 1.0j) * b1 + 0.25 * b2
    coef, resid = sc.fit_affine(target, [b1, b2])
    assert abs(coef[0] - (2.0 - 1.0j)) < 1e-12
    assert abs(coef[1] - 0.25) < 1e-12
    assert resid < 1e-13
    # a constant offset is only absorbed when the identity is in the basis
    coef2, resid2 = sc.fit_affine(target + 3 * np.eye(4), [b1, b2, np.eye(4)])
    assert abs(coef2[2] - 3.0) < 1e-12 and resid2 < 1e-13


def test_fit_affine_reports_misfit():
    _, resid = sc.fit_affine(SX, [SZ])
    assert resid > 0.9


def test_richardson_derivative():
    m = np.array([[0.0, 1.0], [0.0, 0.0]])
    f = lambda lam: np.eye(2) + lam * m + 0.5 * lam**2 * (m @ m)
    d = sc.richardson_derivative(f)
    assert np.abs(d - m).max() < 1e-10


def test_polynomial_matrix_coefficients_exact():
    a = np.diag([1.0, 2.0]).astype(complex)
    b = SX.astype(complex)
    c = SZ.astype(complex)
    f = lambda lam: a + lam * b + lam**2 * c
    coeffs = sc.polynomial_matrix_coefficients(f, 2)
    for got, want in zip(coeffs, (a, b, c)):
        assert np.abs(got - want).max() < 1e-10


def test_embed_rejects_bad_site():
    with pytest.raises((ValueError, IndexError)):
        sc.embed(SZ, 0, (2, 2))
