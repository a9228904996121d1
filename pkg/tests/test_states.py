import math

import numpy as np
import pytest

from qudit_epi.errors import (
    BadPermutation,
    BadSubsystemIndex,
    DimensionMismatch,
    NotHermitian,
    NotPositive,
    NotUnitTrace,
)
from qudit_epi.rand import RandomSource, sample_state
from qudit_epi.states import (
    commutator,
    eigenvalues_descending,
    make_density,
    matrix_distance,
    multipartite,
    partial_trace,
    permute_subsystems,
    tensor,
)


def test_make_density_maximally_mixed():
    rho = make_density(np.eye(2) / 2)
    assert rho.dim == 2
    assert np.allclose(rho.mat, np.eye(2) / 2)


def test_make_density_pure():
    rho = make_density([[1, 0], [0, 0]])
    assert np.allclose(rho.mat, np.diag([1.0, 0.0]))


def test_make_density_rejects_indefinite():
    # eigenvalue by the quadratic formula: (1 - sqrt(1.04)) / 2 = -0.0099...
    with pytest.raises(NotPositive) as err:
        make_density([[0.6, 0.5], [0.5, 0.4]])
    assert "-9.90195" in str(err.value)  # measured deviation is reported


def test_make_density_rejects_non_hermitian_and_bad_trace():
    with pytest.raises(NotHermitian):
        make_density([[0.5, 1.0], [0.0, 0.5]])
    with pytest.raises(NotUnitTrace):
        make_density(np.eye(2))


def test_make_density_symmetrizes_roundoff():
    base = np.array([[0.5, 0.1 + 1e-13j], [0.1, 0.5]])
    rho = make_density(base)
    assert matrix_distance(rho.mat, rho.mat.conj().T) == 0.0


def test_tensor_examples():
    half = make_density(np.eye(2) / 2)
    assert np.allclose(tensor(half, half).mat, np.eye(4) / 4)
    zero = make_density(np.diag([1.0, 0.0]))
    one = make_density(np.diag([0.0, 1.0]))
    assert np.allclose(tensor(zero, one).mat, np.diag([0.0, 1.0, 0.0, 0.0]))


def test_tensor_trace_multiplicative():
    gen = RandomSource(8).generator()
    a = sample_state(gen, 3)
    b = sample_state(gen, 2)
    assert np.trace(tensor(a, b).mat).real == pytest.approx(1.0, abs=1e-12)


def test_partial_trace_recovers_factors():
    gen = RandomSource(9).generator()
    a = sample_state(gen, 3)
    b = sample_state(gen, 4)
    s = multipartite(tensor(a, b), (3, 4))
    assert matrix_distance(partial_trace(s, (0,)).state.mat, a.mat) <= 5e-12
    assert matrix_distance(partial_trace(s, (1,)).state.mat, b.mat) <= 5e-12


def test_partial_trace_bell_marginal(bell):
    s = multipartite(bell, (2, 2))
    assert matrix_distance(partial_trace(s, (0,)).state.mat, np.eye(2) / 2) < 1e-12


def test_partial_trace_basis_ordering():
    # |01><01| on dims (2, 2): keeping the first leg leaves |0><0|
    s = multipartite(make_density(np.diag([0.0, 1.0, 0.0, 0.0])), (2, 2))
    assert np.allclose(partial_trace(s, (0,)).state.mat, np.diag([1.0, 0.0]))


def test_partial_trace_bad_subset():
    s = multipartite(make_density(np.eye(4) / 4), (2, 2))
    with pytest.raises(BadSubsystemIndex):
        partial_trace(s, ())
    with pytest.raises(BadSubsystemIndex):
        partial_trace(s, (0, 1))
    with pytest.raises(BadSubsystemIndex):
        partial_trace(s, (2,))


def test_permute_identity_and_swap():
    gen = RandomSource(10).generator()
    a = sample_state(gen, 2)
    b = sample_state(gen, 3)
    s = multipartite(tensor(a, b), (2, 3))
    same = permute_subsystems(s, (0, 1))
    assert np.array_equal(same.state.mat, s.state.mat)
    swapped = permute_subsystems(s, (1, 0))
    assert swapped.dims == (3, 2)
    assert matrix_distance(swapped.state.mat, np.kron(b.mat, a.mat)) < 1e-14
    back = permute_subsystems(swapped, (1, 0))
    assert np.array_equal(back.state.mat, s.state.mat)


def test_permute_preserves_spectrum():
    gen = RandomSource(11).generator()
    s = multipartite(sample_state(gen, 12), (2, 3, 2))
    perm = (2, 0, 1)
    before = eigenvalues_descending(s.state).values
    after = eigenvalues_descending(make_density(permute_subsystems(s, perm).state.mat)).values
    assert np.abs(before - after).max() <= 1e-11


def test_permute_rejects_non_permutation():
    s = multipartite(make_density(np.eye(4) / 4), (2, 2))
    with pytest.raises(BadPermutation):
        permute_subsystems(s, (0, 0))


def test_eigenvalues_descending_examples():
    assert np.allclose(eigenvalues_descending(make_density(np.eye(3) / 3)).values, [1 / 3] * 3)
    plus = make_density(np.full((2, 2), 0.5))
    assert np.allclose(eigenvalues_descending(plus).values, [1.0, 0.0], atol=1e-12)
    worked = make_density([[0.75, (1 - 1j) / 4], [(1 + 1j) / 4, 0.25]])
    vals = eigenvalues_descending(worked).values
    assert vals[0] == pytest.approx(0.5 + math.sqrt(3) / 4, abs=1e-12)
    assert vals[1] == pytest.approx(0.5 - math.sqrt(3) / 4, abs=1e-12)


def test_spectrum_clipping_and_order():
    gen = RandomSource(12).generator()
    for _ in range(20):
        vals = eigenvalues_descending(sample_state(gen, 5, "rank", rank=2)).values
        assert np.all(np.diff(vals) <= 0)
        assert vals.min() >= 0.0
        assert vals.sum() == pytest.approx(1.0, abs=1e-12)


def test_commutator_examples():
    assert np.allclose(commutator(np.diag([1.0, 2.0]), np.diag([3.0, 4.0])), np.zeros((2, 2)))
    zero = np.diag([1.0, 0.0])
    plus = np.full((2, 2), 0.5)
    assert np.allclose(commutator(zero, plus), [[0.0, 0.5], [-0.5, 0.0]])
    assert np.allclose(commutator(plus, plus), np.zeros((2, 2)))
    with pytest.raises(DimensionMismatch):
        commutator(np.eye(2), np.eye(3))


def test_matrix_distance():
    a = np.diag([1.0, 0.0])
    assert matrix_distance(a, a) == 0.0
    assert matrix_distance(a, np.diag([0.0, 1.0])) == 1.0
    assert matrix_distance(a, a + 1e-13 * np.eye(2)) == pytest.approx(1e-13)
    with pytest.raises(DimensionMismatch):
        matrix_distance(np.eye(2), np.eye(3))


def test_multipartite_dimension_check():
    with pytest.raises(DimensionMismatch):
        multipartite(make_density(np.eye(4) / 4), (2, 3))


def test_ginibre_mean_purity_matches_hilbert_schmidt_value():
    # Known mean purity of G G†/Tr for square Ginibre G is 2d/(d^2+1),
    # 4/5 at d=2; frozen from a pre-build Monte Carlo oracle.
    gen = RandomSource(20240807).generator()
    total = 0.0
    n = 10_000
    for _ in range(n):
        rho = sample_state(gen, 2, "ginibre")
        total += float(np.trace(rho.mat @ rho.mat).real)
    assert total / n == pytest.approx(0.8, abs=0.01)
