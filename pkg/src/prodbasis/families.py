"""Constructors for the tile product-basis families and their symmetries.

Both tile families live on a dA x dB grid whose columns index the A side and
whose rows index the B side.  States are built from a single generator,
:func:`fourier_local_state`, which places root-of-unity phases on an ordered
support; all outputs are normalized to unit norm so the families are
orthonormal sets, not merely orthogonal ones.
"""

from __future__ import annotations

import numpy as np

from .basis import Family, ProductBasis, ProductState
from .errors import DimensionMismatch, IndexOutOfRange, InvalidDimension
from .linalg import basis_vector

__all__ = [
    "fourier_local_state",
    "gen_tiles1",
    "gen_tiles2",
    "cartesian_basis",
    "cyclic_shift_basis",
    "swap_shift_basis",
]


def fourier_local_state(dim: int, support, m: int, omega: complex) -> np.ndarray:
    """Unit vector with amplitude omega^(j*m)/sqrt(s) at support[j], zero elsewhere.

    The support is an ordered list of ``s`` distinct indices in [0, dim).
    """
    idx = [int(s) for s in support]
    if len(set(idx)) != len(idx):
        raise IndexOutOfRange(f"support indices must be distinct, got {idx}")
    if any(s < 0 or s >= dim for s in idx):
        raise IndexOutOfRange(f"support {idx} outside [0, {dim})")
    if not idx:
        raise IndexOutOfRange("support must be nonempty")
    v = np.zeros(dim, dtype=complex)
    for j, s in enumerate(idx):
        v[s] = complex(omega) ** (j * m)
    return v / np.sqrt(len(idx))


def gen_tiles1(n: int) -> ProductBasis:
    """First tile family on C^n (x) C^n for even n >= 4; (n-1)^2 states.

    Vertical states |k> (x) |w_{m,k+1}|, horizontal states |w_{m,k}> (x) |k>
    and one uniform stopper, where |w_{m,k}> puts phases omega^(jm) with
    omega = exp(4*pi*i/n) on the indices k..k+n/2-1 (mod n).  A vertical
    state occupies column k, rows k+1..k+n/2 (mod n); a horizontal state row
    k, columns k..k+n/2-1 (mod n); the stopper covers the whole grid.
    """
    if n % 2 != 0 or n < 4:
        raise InvalidDimension(f"gen_tiles1 requires even n >= 4, got n={n}")
    omega = np.exp(4j * np.pi / n)
    half = n // 2
    states = []
    for m in range(1, half):
        for k in range(n):
            support = tuple((j + k + 1) % n for j in range(half))
            states.append(ProductState(
                basis_vector(n, k),
                fourier_local_state(n, support, m, omega),
                label=f"V[{m},{k}]",
                tile_cells=frozenset((k, r) for r in support),
            ))
    for m in range(1, half):
        for k in range(n):
            support = tuple((j + k) % n for j in range(half))
            states.append(ProductState(
                fourier_local_state(n, support, m, omega),
                basis_vector(n, k),
                label=f"H[{m},{k}]",
                tile_cells=frozenset((c, k) for c in support),
            ))
    uniform = fourier_local_state(n, range(n), 0, 1.0)
    states.append(ProductState(
        uniform, uniform, label="F",
        tile_cells=frozenset((c, r) for c in range(n) for r in range(n)),
    ))
    return ProductBasis(n, n, tuple(states), family=Family.GENTILES1)


def gen_tiles2(m: int, n: int) -> ProductBasis:
    """Second tile family on C^m (x) C^n for n > 3, m >= 3, n >= m; mn-2m+1 states.

    Short tiles (|j> - |j+1 mod m>)/sqrt(2) (x) |j> cover two cells each.
    Long tiles |j> (x) sum of omega^(ik) phases, omega = exp(2*pi*i/(n-2)),
    run down column j over rows j+1..j+m-2 (mod m) and m..n-1, so they are
    vertical and in general not contiguous.  A uniform stopper completes
    the set.
    """
    if m < 3 or n <= 3 or n < m:
        raise InvalidDimension(f"gen_tiles2 requires n > 3, m >= 3 and n >= m, got m={m}, n={n}")
    states = []
    for j in range(m):
        states.append(ProductState(
            fourier_local_state(m, (j, (j + 1) % m), 1, -1.0),
            basis_vector(n, j),
            label=f"S[{j}]",
            tile_cells=frozenset({(j, j), ((j + 1) % m, j)}),
        ))
    omega = np.exp(2j * np.pi / (n - 2))
    for j in range(m):
        support = tuple((i + j + 1) % m for i in range(m - 2)) + tuple(i + 2 for i in range(m - 2, n - 2))
        for k in range(1, n - 2):
            states.append(ProductState(
                basis_vector(m, j),
                fourier_local_state(n, support, k, omega),
                label=f"L[{j},{k}]",
                tile_cells=frozenset((j, r) for r in support),
            ))
    states.append(ProductState(
        fourier_local_state(m, range(m), 0, 1.0),
        fourier_local_state(n, range(n), 0, 1.0),
        label="F",
        tile_cells=frozenset((c, r) for c in range(m) for r in range(n)),
    ))
    return ProductBasis(m, n, tuple(states), family=Family.GENTILES2)


def cartesian_basis(d_a: int, d_b: int) -> ProductBasis:
    """The grid basis {|i> (x) |j>} in lexicographic order.

    Carries no tile metadata; tiles belong to the two constructions above.
    """
    if d_a < 1 or d_b < 1:
        raise InvalidDimension(f"cartesian_basis needs positive dims, got ({d_a}, {d_b})")
    states = tuple(
        ProductState(basis_vector(d_a, i), basis_vector(d_b, j), label=f"C[{i},{j}]")
        for i in range(d_a)
        for j in range(d_b)
    )
    return ProductBasis(d_a, d_b, states, family=Family.CARTESIAN)


def _shift_cells(cells, d_c: int, d_r: int, s_c: int, s_r: int):
    if cells is None:
        return None
    return frozenset(((c + s_c) % d_c, (r + s_r) % d_r) for c, r in cells)


def cyclic_shift_basis(basis: ProductBasis, s: int) -> ProductBasis:
    """Simultaneously shift both local bases by s: |x> -> |x+s mod n>.

    Requires dA = dB.  Both tile families are invariant under this map as
    sets, which is what the set-equality tests exercise.
    """
    if basis.d_a != basis.d_b:
        raise DimensionMismatch("cyclic shift needs equal local dimensions")
    n = basis.d_a
    sh = s % n
    states = tuple(
        ProductState(
            np.roll(st.a, sh), np.roll(st.b, sh), label=st.label,
            tile_cells=_shift_cells(st.tile_cells, n, n, sh, sh),
        )
        for st in basis
    )
    return ProductBasis(
        n, n, states, family=basis.family,
        provenance=basis.provenance + ({"op": "cyclic_shift", "shift": sh},),
    )


def swap_shift_basis(basis: ProductBasis, variant: str = "shift_a") -> ProductBasis:
    """Interchange the A and B sides combined with a cyclic shift by one.

    Requires dA = dB.  Two readings of "swap with a shift of 1" exist:

    - ``"shift_a"``: (a, b) -> (b, shift(a)); the outgoing A factor is
      shifted as it becomes the new B side.  This is the convention under
      which the first tile family is exactly invariant, so it is the default.
    - ``"shift_b"``: (a, b) -> (shift(b), a).

    The chosen variant is recorded in the basis provenance.
    """
    if basis.d_a != basis.d_b:
        raise DimensionMismatch("swap-shift needs equal local dimensions")
    if variant not in ("shift_a", "shift_b"):
        raise ValueError(f"unknown swap-shift variant {variant!r}")
    n = basis.d_a
    states = []
    for st in basis:
        swapped_cells = None if st.tile_cells is None else {(r, c) for c, r in st.tile_cells}
        if variant == "shift_a":
            new = ProductState(
                st.b, np.roll(st.a, 1), label=st.label,
                tile_cells=_shift_cells(swapped_cells, n, n, 0, 1),
            )
        else:
            new = ProductState(
                np.roll(st.b, 1), st.a, label=st.label,
                tile_cells=_shift_cells(swapped_cells, n, n, 1, 0),
            )
        states.append(new)
    return ProductBasis(
        n, n, tuple(states), family=basis.family,
        provenance=basis.provenance + ({"op": "swap_shift", "variant": variant},),
    )
