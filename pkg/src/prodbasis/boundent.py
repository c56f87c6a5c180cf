"""Bound-entanglement signature of a UPB complement.

The normalized projector onto the complement of a UPB is entangled (its
range contains no product state) yet positive under partial transposition,
so it cannot be distilled.  This module builds that state and checks both
halves of the signature numerically: the PPT test via the minimum
partial-transpose eigenvalue, and the range criterion via the same see-saw
search used for unextendibility.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .basis import ProductBasis, ProductState
from .config import TOLERANCES, Tolerances
from .errors import CompleteBasisInput, DimensionMismatch, ZeroState
from .linalg import hermitian_part, partial_transpose
from .verify import complement_projector, seesaw_max_product_overlap

__all__ = [
    "DensityMatrix",
    "RangeVerdict",
    "RangeCriterionReport",
    "upb_density_state",
    "is_ppt",
    "range_criterion_report",
]


class RangeVerdict(str, Enum):
    ENTANGLED = "entangled (range criterion)"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class DensityMatrix:
    """Normalized density operator on C^dA (x) C^dB."""

    matrix: np.ndarray
    d_a: int
    d_b: int

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        dim = self.d_a * self.d_b
        if m.shape != (dim, dim):
            raise DimensionMismatch(f"matrix shape {m.shape} does not match dims ({self.d_a}, {self.d_b})")
        if float(np.max(np.abs(m - m.conj().T))) > 1e-10:
            raise ValueError("density matrix is not Hermitian within 1e-10")
        if abs(float(np.trace(m).real) - 1.0) > 1e-10:
            raise ValueError("density matrix trace differs from 1 beyond 1e-10")
        if float(np.linalg.eigvalsh(hermitian_part(m))[0]) < -1e-10:
            raise ValueError("density matrix has an eigenvalue below -1e-10")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.d_a * self.d_b


@dataclass(frozen=True)
class RangeCriterionReport:
    range_rank: int
    max_product_overlap: float
    witness: ProductState
    verdict: RangeVerdict
    restarts_used: int
    iterations_total: int
    seed: int


def upb_density_state(basis: ProductBasis, tol: Tolerances = TOLERANCES) -> DensityMatrix:
    """Uniform mixture over the complement of the basis span.

    rho = (I - P_S) / (dA*dB - N); the spectrum is {0, 1/(D - N)}.  Callers
    are expected to have certified the basis as numerically unextendible;
    the construction itself only needs the complement to be nonempty.
    """
    n = len(basis)
    rank = basis.dim - n
    if rank == 0:
        raise CompleteBasisInput("basis spans the full space, the complement state is empty")
    q = complement_projector(basis, tol)
    return DensityMatrix(q / rank, basis.d_a, basis.d_b)


def is_ppt(rho: DensityMatrix, tol: float = TOLERANCES.ppt):
    """PPT test: (bool, min partial-transpose eigenvalue)."""
    pt = partial_transpose(rho.matrix, rho.d_a, rho.d_b)
    w_min = float(np.linalg.eigvalsh(hermitian_part(pt))[0])
    return w_min >= -tol, w_min


def range_criterion_report(
    rho: DensityMatrix,
    restarts: int = 100,
    seed: int = 0,
    stop_tol: float = 1e-12,
    max_iterations: int = 10_000,
    eta: float | None = None,
    tol: Tolerances = TOLERANCES,
) -> RangeCriterionReport:
    """Search the range of rho for product states.

    The range projector collects eigenvectors with eigenvalue above
    ``tol.range_cutoff``; the see-saw then maximizes the product overlap
    with it.  A maximum below 1 - eta means the range holds no product
    state numerically, which is the entanglement half of the signature.
    """
    eta = tol.upb_margin if eta is None else eta
    w, v = np.linalg.eigh(hermitian_part(np.asarray(rho.matrix, dtype=complex)))
    keep = w > tol.range_cutoff
    if not np.any(keep):
        raise ZeroState("density matrix has no eigenvalue above the range cutoff")
    cols = v[:, keep]
    r = hermitian_part(cols @ cols.conj().T)
    result = seesaw_max_product_overlap(
        r, rho.d_a, rho.d_b,
        restarts=restarts, seed=seed, stop_tol=stop_tol,
        max_iterations=max_iterations, tol=tol,
    )
    verdict = RangeVerdict.ENTANGLED if result.value < 1.0 - eta else RangeVerdict.INCONCLUSIVE
    return RangeCriterionReport(
        range_rank=int(np.count_nonzero(keep)),
        max_product_overlap=result.value,
        witness=result.witness,
        verdict=verdict,
        restarts_used=result.restarts_used,
        iterations_total=result.iterations_total,
        seed=seed,
    )
