"""Seeded random sampling helpers.

Randomness is drawn from counter-based Philox streams keyed by
``(seed, counter)``, so independent restarts or moves get independent,
order-insensitive streams and every result is reproducible bit for bit.
"""

from __future__ import annotations

import numpy as np

__all__ = ["stream", "random_unit_vector", "haar_unitary"]


def stream(seed: int, counter: int = 0) -> np.random.Generator:
    """Independent generator for stream ``counter`` of the given seed."""
    key = np.array([seed % 2**64, counter % 2**64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def random_unit_vector(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Unit vector from the rotation-invariant (complex normal) distribution."""
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def haar_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix.

    The R-diagonal phase fix makes the distribution exactly Haar rather
    than QR-convention dependent.
    """
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))
