import numpy as np
import pytest

from prodbasis.boundent import (
    DensityMatrix,
    RangeVerdict,
    is_ppt,
    range_criterion_report,
    upb_density_state,
)
from prodbasis.errors import CompleteBasisInput
from prodbasis.families import cartesian_basis, gen_tiles1, gen_tiles2
from prodbasis.linalg import basis_vector, kron, partial_transpose
from prodbasis.verify import complement_projector


def bell_density():
    bell = (kron(basis_vector(2, 0), basis_vector(2, 0)) + kron(basis_vector(2, 1), basis_vector(2, 1))) / np.sqrt(2)
    return DensityMatrix(np.outer(bell, bell.conj()), 2, 2)


def test_density_state_gentiles1_4():
    rho = upb_density_state(gen_tiles1(4))
    w = np.linalg.eigvalsh(rho.matrix)
    assert np.sum(w > 1e-9) == 7
    assert np.all((np.abs(w) < 1e-10) | (np.abs(w - 1 / 7) < 1e-10))
    assert abs(np.trace(rho.matrix).real - 1.0) < 1e-12


def test_density_state_gentiles2_34():
    rho = upb_density_state(gen_tiles2(3, 4))
    w = np.linalg.eigvalsh(rho.matrix)
    assert np.sum(w > 1e-9) == 5
    assert np.all((np.abs(w) < 1e-10) | (np.abs(w - 0.2) < 1e-10))


def test_density_state_rejects_complete_basis():
    with pytest.raises(CompleteBasisInput):
        upb_density_state(cartesian_basis(2, 2))


def test_density_state_commutes_with_complement():
    basis = gen_tiles2(3, 4)
    rho = upb_density_state(basis)
    q = complement_projector(basis)
    comm = rho.matrix @ q - q @ rho.matrix
    assert np.max(np.abs(comm)) <= 1e-10


def test_is_ppt_product_state():
    rng = np.random.default_rng(0)
    a = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    b = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    a /= np.linalg.norm(a)
    b /= np.linalg.norm(b)
    v = kron(a, b)
    rho = DensityMatrix(np.outer(v, v.conj()), 2, 3)
    ok, w_min = is_ppt(rho)
    assert ok and w_min >= -1e-10


def test_is_ppt_maximally_entangled():
    ok, w_min = is_ppt(bell_density())
    assert not ok
    assert abs(w_min - (-0.5)) <= 1e-10


@pytest.mark.parametrize("make", [lambda: gen_tiles1(4), lambda: gen_tiles2(3, 4)])
def test_upb_complement_state_is_ppt(make):
    rho = upb_density_state(make())
    ok, w_min = is_ppt(rho, tol=1e-10)
    assert ok, w_min


def test_partial_transpose_of_density_keeps_trace():
    rho = upb_density_state(gen_tiles1(4))
    pt = partial_transpose(rho.matrix, rho.d_a, rho.d_b)
    assert abs(np.trace(pt).real - 1.0) <= 1e-10


def test_range_criterion_on_upb_state():
    rho = upb_density_state(gen_tiles1(6))
    report = range_criterion_report(rho, restarts=60, seed=5)
    assert report.verdict is RangeVerdict.ENTANGLED
    assert report.range_rank == 11
    assert report.max_product_overlap < 1 - 1e-3


def test_range_criterion_inconclusive_on_separable_mixture():
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = 0.5
    m[3, 3] = 0.5
    rho = DensityMatrix(m, 2, 2)
    report = range_criterion_report(rho, restarts=20, seed=0)
    assert report.verdict is RangeVerdict.INCONCLUSIVE
    assert report.max_product_overlap >= 1 - 1e-9


def test_range_criterion_inconclusive_on_pure_product():
    v = kron(basis_vector(2, 1), basis_vector(2, 0))
    rho = DensityMatrix(np.outer(v, v.conj()), 2, 2)
    report = range_criterion_report(rho, restarts=10, seed=0)
    assert report.verdict is RangeVerdict.INCONCLUSIVE
    assert report.max_product_overlap >= 1 - 1e-9
