import numpy as np
import pytest

from prodbasis.basis import ProductBasis, ProductState
from prodbasis.errors import (
    CountMismatch,
    DimensionTooLarge,
    InvalidProjector,
    NonOrthonormalInput,
)
from prodbasis.families import cartesian_basis, gen_tiles1, gen_tiles2
from prodbasis.linalg import basis_vector, kron
from prodbasis.sampling import random_unit_vector, stream
from prodbasis.verify import (
    Verdict,
    basis_set_equal_up_to_phase,
    check_orthonormal,
    check_upb,
    complement_projector,
    gram_matrix,
    grid_oracle_max_product_overlap,
    seesaw_max_product_overlap,
)

# converged see-saw maxima for the complement projectors, frozen as
# regression baselines from 1000 restarts x 5 seeds (spread < 1e-14)
GENTILES1_4_MAX_OVERLAP = 0.970278247980011


def single_state_basis():
    return ProductBasis(2, 2, (ProductState(basis_vector(2, 0), basis_vector(2, 0)),))


def duplicated_state_basis():
    st = ProductState(basis_vector(2, 0), basis_vector(2, 0))
    return ProductBasis(2, 2, (st, st))


def test_gram_matrix_gentiles1():
    g = gram_matrix(gen_tiles1(6))
    assert np.max(np.abs(g - np.eye(25))) <= 1e-12


def test_gram_matrix_single_state():
    g = gram_matrix(single_state_basis())
    assert g.shape == (1, 1)
    assert abs(g[0, 0] - 1.0) < 1e-15


def test_check_orthonormal():
    ok, _ = check_orthonormal(gen_tiles2(3, 4), tol=1e-10)
    assert ok
    ok, _ = check_orthonormal(cartesian_basis(2, 2))
    assert ok
    ok, dev = check_orthonormal(duplicated_state_basis())
    assert not ok
    assert abs(dev.max_offdiag - 1.0) < 1e-12


def test_complement_projector_traces():
    q = complement_projector(gen_tiles1(6))
    assert abs(np.trace(q).real - 11.0) <= 1e-9
    q = complement_projector(cartesian_basis(2, 3))
    assert np.max(np.abs(q)) <= 1e-10
    q = complement_projector(gen_tiles2(3, 4))
    assert abs(np.trace(q).real - 5.0) <= 1e-9


def test_complement_projector_rejects_non_orthonormal():
    with pytest.raises(NonOrthonormalInput):
        complement_projector(duplicated_state_basis())


def test_seesaw_zero_operator():
    res = seesaw_max_product_overlap(np.zeros((4, 4), dtype=complex), 2, 2, restarts=3, seed=0)
    assert res.value == 0.0


def test_seesaw_finds_product_state_in_complement():
    q = complement_projector(single_state_basis())
    res = seesaw_max_product_overlap(q, 2, 2, restarts=5, seed=0)
    assert res.value >= 1.0 - 1e-10
    # witness must be a product state orthogonal to |00>
    w = kron(res.witness.a, res.witness.b)
    assert abs(np.vdot(kron(basis_vector(2, 0), basis_vector(2, 0)), w)) <= 1e-6


def test_seesaw_gentiles1_4_regression():
    q = complement_projector(gen_tiles1(4))
    res = seesaw_max_product_overlap(q, 4, 4, restarts=200, seed=0)
    assert res.value < 1.0 - 1e-3
    assert abs(res.value - GENTILES1_4_MAX_OVERLAP) <= 1e-9


def test_seesaw_deterministic():
    q = complement_projector(gen_tiles2(3, 4))
    r1 = seesaw_max_product_overlap(q, 3, 4, restarts=20, seed=42)
    r2 = seesaw_max_product_overlap(q, 3, 4, restarts=20, seed=42)
    assert r1.value == r2.value
    assert np.array_equal(r1.witness.a, r2.witness.a)
    assert np.array_equal(r1.witness.b, r2.witness.b)
    assert r1.iterations_total == r2.iterations_total


def test_seesaw_rejects_bad_operator():
    with pytest.raises(InvalidProjector):
        seesaw_max_product_overlap(2.0 * np.eye(4, dtype=complex), 2, 2, restarts=1, seed=0)
    with pytest.raises(InvalidProjector):
        seesaw_max_product_overlap(np.array([[0, 1], [0, 0]], dtype=complex), 1, 2, restarts=1, seed=0)


def test_grid_oracle_rank_one_product():
    v = kron(basis_vector(2, 0), basis_vector(2, 0))
    q = np.outer(v, v.conj())
    res = grid_oracle_max_product_overlap(q, 2, 2, resolution=64)
    assert res.value >= 0.998
    assert res.gap_bound > 0


def test_grid_oracle_maximally_entangled():
    bell = (kron(basis_vector(2, 0), basis_vector(2, 0)) + kron(basis_vector(2, 1), basis_vector(2, 1))) / np.sqrt(2)
    q = np.outer(bell, bell.conj())
    res = grid_oracle_max_product_overlap(q, 2, 2, resolution=64)
    # analytic optimum is the largest squared Schmidt coefficient, 1/2
    assert abs(res.value - 0.5) <= 0.01


def test_grid_oracle_below_seesaw():
    rng = stream(99, 0)
    for trial in range(5):
        v1 = random_unit_vector(rng, 4)
        v2 = random_unit_vector(rng, 4)
        v2 -= v1 * np.vdot(v1, v2)
        v2 /= np.linalg.norm(v2)
        q = np.outer(v1, v1.conj()) + np.outer(v2, v2.conj())
        grid = grid_oracle_max_product_overlap(q, 2, 2, resolution=64)
        ss = seesaw_max_product_overlap(q, 2, 2, restarts=40, seed=trial)
        assert grid.value <= ss.value + 1e-6


def test_grid_oracle_dimension_guard():
    with pytest.raises(DimensionTooLarge):
        grid_oracle_max_product_overlap(np.eye(9, dtype=complex), 3, 3, resolution=8)


def test_check_upb_gentiles1():
    report = check_upb(gen_tiles1(6), restarts=60, seed=3)
    assert report.verdict is Verdict.UPB_NUMERIC
    assert report.complement_dim == 11
    assert report.span_rank == 25


@pytest.mark.parametrize("n", [4, 6, 8])
def test_check_upb_gentiles1_family(n):
    report = check_upb(gen_tiles1(n), restarts=40, seed=1)
    assert report.verdict is Verdict.UPB_NUMERIC


@pytest.mark.parametrize("m,n", [(3, 4), (3, 5), (4, 4), (4, 5)])
def test_check_upb_gentiles2_family(m, n):
    report = check_upb(gen_tiles2(m, n), restarts=40, seed=1)
    assert report.verdict is Verdict.UPB_NUMERIC


def test_check_upb_complete_basis_skips_seesaw():
    report = check_upb(cartesian_basis(3, 3), restarts=50, seed=0)
    assert report.verdict is Verdict.COMPLETE_BASIS
    assert report.complement_dim == 0
    assert report.restarts_used == 0 and report.iterations_total == 0


def test_check_upb_extendible_with_witness():
    report = check_upb(single_state_basis(), restarts=10, seed=0)
    assert report.verdict is Verdict.EXTENDIBLE
    assert report.witness_state is not None
    assert report.max_product_overlap >= 1.0 - 1e-8


def test_check_upb_propagates_non_orthonormal():
    with pytest.raises(NonOrthonormalInput):
        check_upb(duplicated_state_basis())


def test_set_equal_self():
    basis = gen_tiles2(3, 4)
    ok, perm = basis_set_equal_up_to_phase(basis, basis)
    assert ok
    assert perm == tuple(range(len(basis)))


def test_set_equal_rejects_different_sets():
    g = gen_tiles1(6)
    truncated = cartesian_basis(6, 6)
    other = ProductBasis(6, 6, truncated.states[:25])
    ok, perm = basis_set_equal_up_to_phase(g, other)
    assert not ok and perm is None


def test_set_equal_count_mismatch():
    with pytest.raises(CountMismatch):
        basis_set_equal_up_to_phase(gen_tiles1(4), cartesian_basis(4, 4))
