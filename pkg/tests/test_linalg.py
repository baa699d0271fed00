import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ghzlab import DimensionOverflowError, ParameterError
from ghzlab.ghz import GhzSpec, build_ghz
from ghzlab.linalg import (
    KronOperator,
    apply,
    basis_state,
    commutant_dimension,
    commutator_norm,
    eigen_residual,
    tensor,
    tensor_state,
)
from ghzlab.observables import build_x, build_y, concurrent_set, omega

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def random_unitary(d, rng):
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def test_tensor_examples():
    assert np.array_equal(tensor([np.eye(2), np.eye(2)]), np.eye(4))
    xx = tensor([build_x(2), build_x(2)])
    assert xx[0, 3] == 1
    x4 = build_x(4)
    assert np.array_equal(tensor([x4]), x4)


def test_tensor_overflow():
    with pytest.raises(DimensionOverflowError):
        tensor([np.eye(8)] * 5)  # 32768^2 entries


def test_tensor_associative():
    rng = np.random.default_rng(1)
    a, b, c = (random_unitary(k, rng) for k in (2, 3, 2))
    left = tensor([a, tensor([b, c])])
    right = tensor([tensor([a, b]), c])
    assert np.max(np.abs(left - right)) < 1e-14


def test_party_one_most_significant():
    # |1> (x) |0> for d = 3 sits at index 3
    s = tensor_state([basis_state(3, 1), basis_state(3, 0)])
    assert s[3] == 1


def test_apply_examples():
    s = np.array([0.6, 0.8j])
    assert np.array_equal(apply(np.eye(2), s), s)
    assert np.array_equal(apply(build_x(2), basis_state(2, 0)), basis_state(2, 1))
    assert np.array_equal(apply(build_x(4), basis_state(4, 0)), basis_state(4, 3))


def test_apply_dimension_mismatch():
    with pytest.raises(ParameterError):
        apply(np.eye(3), np.ones(2))


def test_apply_product_rule():
    rng = np.random.default_rng(2)
    a, b = random_unitary(3, rng), random_unitary(2, rng)
    u = rng.normal(size=3) + 1j * rng.normal(size=3)
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    lhs = apply(tensor([a, b]), tensor_state([u, v]))
    rhs = tensor_state([apply(a, u), apply(b, v)])
    assert np.max(np.abs(lhs - rhs)) < 1e-12


@pytest.mark.parametrize("dims", [(2, 3, 2), (4, 4, 4), (3, 2, 5, 2)])
def test_kron_apply_matches_dense(dims):
    rng = np.random.default_rng(sum(dims))
    factors = tuple(random_unitary(k, rng) for k in dims)
    s = rng.normal(size=int(np.prod(dims))) + 0j
    k = KronOperator(factors)
    assert np.max(np.abs(apply(k, s) - tensor(factors) @ s)) < 1e-12


def test_eigen_residual_examples():
    s = np.array([1, 1j]) / math.sqrt(2)
    assert eigen_residual(np.eye(2), s, 1) == 0
    obs = concurrent_set(4, 3)
    psi = build_ghz(GhzSpec(4, 3))
    xxx = tensor([build_x(4)] * 3)
    assert eigen_residual(xxx, psi, 1) < 1e-12
    xyy = tensor([build_x(4), build_y(4, 3), build_y(4, 3)])
    assert eigen_residual(xyy, psi, omega(4, -1)) < 1e-12
    assert eigen_residual(obs.observables[1], psi, omega(4, -1)) < 1e-12


def test_commutator_norm_examples():
    assert commutator_norm(np.eye(2), SX) == 0
    assert commutator_norm(SX, SY) == pytest.approx(2 * np.linalg.norm(SZ), abs=1e-14)
    assert commutator_norm(SX, SY) == pytest.approx(2 * math.sqrt(2), abs=1e-14)
    obs = concurrent_set(4, 3)
    assert commutator_norm(obs.observables[1], obs.observables[2]) > 1e-6


@pytest.mark.parametrize("dims", [(2, 2, 2), (3, 3, 3), (2, 3, 4)])
def test_factored_commutator_matches_dense(dims):
    rng = np.random.default_rng(7)
    a = KronOperator(tuple(random_unitary(k, rng) for k in dims))
    b = KronOperator(tuple(random_unitary(k, rng) for k in dims))
    dense = np.linalg.norm(a.dense() @ b.dense() - b.dense() @ a.dense())
    assert commutator_norm(a, b) == pytest.approx(dense, rel=1e-10)


def test_factored_commutator_of_commuting_products_is_zero():
    z = np.diag([1, 1j, -1, -1j])
    a = KronOperator((z, z, z))
    b = KronOperator((z.conj(), z, np.eye(4)))
    assert commutator_norm(a, b) == 0.0


def test_commutant_examples():
    assert commutant_dimension([np.eye(3)]) == 9
    assert commutant_dimension([SX]) == 2
    assert commutant_dimension([build_x(4), build_y(4, 3)]) == 1


def test_commutant_single_shift_is_circulants():
    # the commutant of a d-cycle is the d-dimensional circulant algebra
    for d in (3, 5, 6):
        assert commutant_dimension([build_x(d)]) == d


def test_commutant_reducible_pair():
    # 1 + 3 block-diagonal pair: commutant is spanned by the two block projectors
    a = np.zeros((4, 4), dtype=complex)
    b = np.zeros((4, 4), dtype=complex)
    a[0, 0] = b[0, 0] = 1
    a[1:, 1:] = build_x(3)
    b[1:, 1:] = build_y(3, 3)
    assert commutant_dimension([a, b]) == 2


def test_commutant_equivalent_blocks():
    # two unitarily equivalent 2x2 irreps: commutant is a full 2x2 matrix algebra
    a = np.kron(np.eye(2), SX)
    b = np.kron(np.eye(2), SZ)
    assert commutant_dimension([a, b]) == 4


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 4), st.integers(0, 2**31 - 1))
def test_commutant_unitary_invariance(d, seed):
    rng = np.random.default_rng(seed)
    u = random_unitary(d, rng)
    base_sets = [[build_x(d)], [build_x(d), build_y(d, 3)], [np.eye(d)], [np.diag(np.arange(d) % 2)]]
    for ops in base_sets:
        conj = [u @ o @ u.conj().T for o in ops]
        assert commutant_dimension(conj) == commutant_dimension(ops)


def test_commutant_dimension_guard():
    with pytest.raises(DimensionOverflowError):
        commutant_dimension([np.eye(17)])
    with pytest.raises(ParameterError):
        commutant_dimension([np.eye(2), np.eye(3)])


def test_kron_operator_composition():
    rng = np.random.default_rng(3)
    a = KronOperator(tuple(random_unitary(2, rng) for _ in range(3)))
    b = KronOperator(tuple(random_unitary(2, rng) for _ in range(3)))
    assert np.max(np.abs((a @ b).dense() - a.dense() @ b.dense())) < 1e-13
    assert np.max(np.abs(a.dagger().dense() - a.dense().conj().T)) < 1e-15
    assert all(k.shape == (8, 8) for k in (a, b))
