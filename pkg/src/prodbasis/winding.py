"""Winding moves on complete product bases and a depth-bounded unwinder.

A winding move picks a local subspace pair compatible with the basis (every
state lies inside the product subspace or orthogonal to it) and rotates the
inside block by local unitaries supported on the pair.  Orthogonality and
productness survive every move, so repeated winding manufactures complete
product bases with nontrivial local structure; unwinding searches for a
move sequence that returns a basis to grid (Cartesian) form.

The unwinder is best effort with certified output: any returned sequence is
re-applied and checked, and an exhausted search is reported as absence, not
as a proof that no unwinding exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .basis import Family, ProductBasis, ProductState
from .config import TOLERANCES, Tolerances
from .errors import IncompleteBasis, InvalidSplit, NoValidSplit
from .families import cartesian_basis
from .linalg import dagger
from .sampling import haar_unitary, stream
from .verify import check_orthonormal

__all__ = [
    "SplitClass",
    "SubspacePair",
    "WindingMove",
    "validate_split",
    "apply_winding_move",
    "inverse_move",
    "is_cartesian",
    "enumerate_splits",
    "unwind",
    "wind_basis",
    "random_wound_basis",
    "move_to_record",
    "move_from_record",
]


class SplitClass(Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    UNCLASSIFIED = "unclassified"


def _orthonormal_columns(mat, name: str) -> np.ndarray:
    arr = np.array(mat, dtype=complex)
    if arr.ndim != 2 or arr.shape[1] < 1 or arr.shape[0] < arr.shape[1]:
        raise ValueError(f"{name} must hold 1..dim orthonormal columns")
    gram = dagger(arr) @ arr
    if float(np.max(np.abs(gram - np.eye(arr.shape[1])))) > 1e-10:
        raise ValueError(f"{name} columns are not orthonormal within 1e-10")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class SubspacePair:
    """Orthonormal column bases for a local subspace pair H_A' (x) H_B'."""

    a_basis: np.ndarray  # shape (dA, ka)
    b_basis: np.ndarray  # shape (dB, kb)

    def __post_init__(self):
        object.__setattr__(self, "a_basis", _orthonormal_columns(self.a_basis, "a_basis"))
        object.__setattr__(self, "b_basis", _orthonormal_columns(self.b_basis, "b_basis"))

    @property
    def dims(self) -> tuple[int, int]:
        return self.a_basis.shape[1], self.b_basis.shape[1]

    def a_projector(self) -> np.ndarray:
        return self.a_basis @ dagger(self.a_basis)

    def b_projector(self) -> np.ndarray:
        return self.b_basis @ dagger(self.b_basis)

    def is_proper_for(self, d_a: int, d_b: int) -> bool:
        """A proper split leaves something outside: (ka, kb) != (dA, dB)."""
        return self.dims != (d_a, d_b)


def _unitary(mat, dim: int, name: str) -> np.ndarray:
    arr = np.array(mat, dtype=complex)
    if arr.shape != (dim, dim):
        raise ValueError(f"{name} must be {dim}x{dim}")
    if float(np.max(np.abs(dagger(arr) @ arr - np.eye(dim)))) > 1e-10:
        raise ValueError(f"{name} is not unitary within 1e-10")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class WindingMove:
    split: SubspacePair
    u_a: np.ndarray
    u_b: np.ndarray

    def __post_init__(self):
        ka, kb = self.split.dims
        object.__setattr__(self, "u_a", _unitary(self.u_a, ka, "u_a"))
        object.__setattr__(self, "u_b", _unitary(self.u_b, kb, "u_b"))


def inverse_move(move: WindingMove) -> WindingMove:
    """Same split, adjoint unitaries."""
    return WindingMove(move.split, dagger(move.u_a), dagger(move.u_b))


def _require_complete(basis: ProductBasis):
    if not basis.is_complete():
        raise IncompleteBasis(
            f"basis has {len(basis)} states but the space has dimension {basis.dim}"
        )


def validate_split(basis: ProductBasis, split: SubspacePair, tol: Tolerances = TOLERANCES):
    """Classify every state of a complete basis against a subspace pair.

    A state is INSIDE when both factors lie in their subspaces (projection
    residual <= tol) and OUTSIDE when the product of the two projection
    weights vanishes, which for product states is membership in the
    orthogonal complement of H_A' (x) H_B'.  The split is valid iff every
    state is classified; completeness then forces the inside count to be
    dim H_A' * dim H_B' (asserted).
    """
    _require_complete(basis)
    p_a = split.a_projector()
    p_b = split.b_projector()
    classes = []
    for st in basis:
        res_a = float(np.linalg.norm(st.a - p_a @ st.a))
        res_b = float(np.linalg.norm(st.b - p_b @ st.b))
        if res_a <= tol.split_inside_residual and res_b <= tol.split_inside_residual:
            classes.append(SplitClass.INSIDE)
            continue
        w_a = float(np.real(np.vdot(st.a, p_a @ st.a)))
        w_b = float(np.real(np.vdot(st.b, p_b @ st.b)))
        if w_a * w_b <= tol.split_outside_overlap:
            classes.append(SplitClass.OUTSIDE)
        else:
            classes.append(SplitClass.UNCLASSIFIED)
    ok = SplitClass.UNCLASSIFIED not in classes
    if ok:
        ka, kb = split.dims
        n_inside = sum(1 for c in classes if c is SplitClass.INSIDE)
        assert n_inside == ka * kb, "completeness forces the inside block to fill the split"
    return ok, tuple(classes)


def _embed(cols: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Operator acting as u on span(cols) and as the identity on its complement."""
    dim = cols.shape[0]
    p = cols @ dagger(cols)
    return cols @ u @ dagger(cols) + np.eye(dim, dtype=complex) - p


def apply_winding_move(basis: ProductBasis, move: WindingMove, tol: Tolerances = TOLERANCES) -> ProductBasis:
    """Rotate the inside block of a valid split by u_a (x) u_b.

    Outside states are fixed by the support condition.  The output is again
    a complete orthonormal product basis (asserted) and the move is appended
    to the basis provenance.
    """
    ok, classes = validate_split(basis, move.split, tol)
    if not ok:
        raise InvalidSplit("split does not classify every basis state")
    op_a = _embed(move.split.a_basis, move.u_a)
    op_b = _embed(move.split.b_basis, move.u_b)
    states = []
    for st, cls in zip(basis, classes):
        if cls is SplitClass.INSIDE:
            states.append(ProductState(op_a @ st.a, op_b @ st.b, label=st.label))
        else:
            states.append(st)
    out = ProductBasis(
        basis.d_a, basis.d_b, tuple(states), family=Family.CUSTOM,
        provenance=basis.provenance + (move_to_record(move),),
    )
    ok_gram, dev = check_orthonormal(out, tol.orthonormality)
    assert ok_gram, f"winding move broke orthonormality (deviation {max(dev):.3e})"
    return out


def _group_rays(vectors, tol: float):
    """Assign each vector a ray id; representatives in first-occurrence order."""
    reps: list[np.ndarray] = []
    ids: list[int] = []
    for v in vectors:
        for i, r in enumerate(reps):
            if abs(np.vdot(r, v)) >= 1.0 - tol:
                ids.append(i)
                break
        else:
            reps.append(v)
            ids.append(len(reps) - 1)
    return ids, reps


def _mutually_orthogonal(reps, tol: float) -> bool:
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            if abs(np.vdot(reps[i], reps[j])) > tol:
                return False
    return True


def is_cartesian(basis: ProductBasis, tol: float = TOLERANCES.ray_grouping) -> bool:
    """True iff the basis is a grid basis in some pair of local bases.

    Checks that the distinct A rays number exactly dA and are mutually
    orthogonal, likewise for B, and that the (A ray, B ray) incidence map
    covers the dA x dB grid bijectively.  No alignment with the
    computational axes is required.
    """
    _require_complete(basis)
    a_ids, a_reps = _group_rays([st.a for st in basis], tol)
    if len(a_reps) != basis.d_a or not _mutually_orthogonal(a_reps, tol):
        return False
    b_ids, b_reps = _group_rays([st.b for st in basis], tol)
    if len(b_reps) != basis.d_b or not _mutually_orthogonal(b_reps, tol):
        return False
    return len(set(zip(a_ids, b_ids))) == basis.dim


def _component_subspaces(reps, tol: float):
    """Orthonormal bases for the connected components of the non-orthogonality graph.

    Components are discovered in first-occurrence order; a component whose
    rays are already mutually orthogonal keeps them as its basis (they make
    natural alignment targets), otherwise a rank-revealing QR is used.
    """
    n = len(reps)
    adj = [[abs(np.vdot(reps[i], reps[j])) > tol for j in range(n)] for i in range(n)]
    seen = [False] * n
    components = []
    for start in range(n):
        if seen[start]:
            continue
        queue, members = [start], []
        seen[start] = True
        while queue:
            i = queue.pop(0)
            members.append(i)
            for j in range(n):
                if not seen[j] and adj[i][j]:
                    seen[j] = True
                    queue.append(j)
        members.sort()
        rays = [reps[i] for i in members]
        if _mutually_orthogonal(rays, tol):
            cols = np.column_stack(rays)
        else:
            stacked = np.column_stack(rays)
            q, r = np.linalg.qr(stacked)
            keep = np.abs(np.diag(r)) > 1e-10
            cols = q[:, keep]
        components.append(cols)
    return components


def _union_candidates(components):
    """Column bases for every proper nonempty union of components, bitmask order."""
    c = len(components)
    out = []
    for mask in range(1, 2**c - 1):
        cols = [components[i] for i in range(c) if mask >> i & 1]
        out.append(np.column_stack(cols) if len(cols) > 1 else cols[0])
    return out


def enumerate_splits(basis: ProductBasis, tol: Tolerances = TOLERANCES) -> tuple[SubspacePair, ...]:
    """All proper splits visible in the ray structure of a complete basis.

    Candidate subspaces are spans of unions of connected components of the
    per-side non-orthogonality graphs (rays in different components are
    mutually orthogonal, so such spans always classify every state); the
    candidates are paired with the full opposite side and with each other,
    validated, and deduplicated by projector equality.
    """
    _require_complete(basis)
    _, a_reps = _group_rays([st.a for st in basis], tol.ray_grouping)
    _, b_reps = _group_rays([st.b for st in basis], tol.ray_grouping)
    a_cands = _union_candidates(_component_subspaces(a_reps, tol.ray_grouping))
    b_cands = _union_candidates(_component_subspaces(b_reps, tol.ray_grouping))
    full_a = np.eye(basis.d_a, dtype=complex)
    full_b = np.eye(basis.d_b, dtype=complex)

    pairs = [(a, full_b) for a in a_cands]
    pairs += [(full_a, b) for b in b_cands]
    pairs += [(a, b) for a in a_cands for b in b_cands]

    splits: list[SubspacePair] = []
    projectors: list[tuple[np.ndarray, np.ndarray]] = []
    for a_cols, b_cols in pairs:
        split = SubspacePair(a_cols, b_cols)
        if not split.is_proper_for(basis.d_a, basis.d_b):
            continue
        ok, _ = validate_split(basis, split, tol)
        if not ok:
            continue
        p_a, p_b = split.a_projector(), split.b_projector()
        duplicate = any(
            np.max(np.abs(p_a - qa)) <= 1e-10 and np.max(np.abs(p_b - qb)) <= 1e-10
            for qa, qb in projectors
        )
        if not duplicate:
            splits.append(split)
            projectors.append((p_a, p_b))
    return tuple(splits)


def _alignment_unitary(reps) -> np.ndarray:
    """Unitary mapping a full orthonormal set of rays onto the coordinate axes.

    Axes are assigned by greedy maximum |overlap| so that rays already on an
    axis map to that axis; the result sends each ray exactly (phase
    included) to its assigned axis.
    """
    k = len(reps)
    weight = np.abs(np.column_stack(reps))  # rows: axes, cols: rays
    free_axes = set(range(k))
    free_rays = set(range(k))
    assignment = {}
    order = sorted(
        ((i, j) for i in range(k) for j in range(k)),
        key=lambda ij: (-weight[ij], ij),
    )
    for i, j in order:
        if i in free_axes and j in free_rays:
            assignment[j] = i
            free_axes.discard(i)
            free_rays.discard(j)
    u = np.zeros((k, k), dtype=complex)
    for j, i in assignment.items():
        u[i, :] = reps[j].conj()
    return u


def _is_phase_diagonal(u: np.ndarray) -> bool:
    return bool(np.all(np.abs(np.abs(np.diag(u)) - 1.0) < 1e-9))


def _candidate_moves(basis: ProductBasis, split: SubspacePair, classes, tol: Tolerances):
    """Grid-restoring moves for the inside block of a split.

    The inside block is itself a complete product basis of the split
    subspace.  When its local ray structure is one move away from grid form
    (a full set of mutually orthogonal rays on a side), the unitary mapping
    those rays onto the split's own basis is a candidate; it is the inverse
    of whatever single local rotation wound that side.  Moves that only
    adjust phases are skipped.
    """
    inside = [st for st, c in zip(basis, classes) if c is SplitClass.INSIDE]
    ka, kb = split.dims
    alphas = [dagger(split.a_basis) @ st.a for st in inside]
    betas = [dagger(split.b_basis) @ st.b for st in inside]
    alphas = [v / np.linalg.norm(v) for v in alphas]
    betas = [v / np.linalg.norm(v) for v in betas]
    _, a_reps = _group_rays(alphas, tol.ray_grouping)
    _, b_reps = _group_rays(betas, tol.ray_grouping)
    a_grid = len(a_reps) == ka and _mutually_orthogonal(a_reps, tol.ray_grouping)
    b_grid = len(b_reps) == kb and _mutually_orthogonal(b_reps, tol.ray_grouping)

    moves = []
    u_a = _alignment_unitary(a_reps) if a_grid else None
    u_b = _alignment_unitary(b_reps) if b_grid else None
    eye_a = np.eye(ka, dtype=complex)
    eye_b = np.eye(kb, dtype=complex)
    if a_grid and b_grid and not (_is_phase_diagonal(u_a) and _is_phase_diagonal(u_b)):
        moves.append(WindingMove(split, u_a, u_b))
    if a_grid and not _is_phase_diagonal(u_a):
        moves.append(WindingMove(split, u_a, eye_b))
    if b_grid and not _is_phase_diagonal(u_b):
        moves.append(WindingMove(split, eye_a, u_b))
    return moves


def _search(basis: ProductBasis, depth: int, tol: Tolerances):
    if is_cartesian(basis, tol.ray_grouping):
        return []
    if depth == 0:
        return None
    for split in enumerate_splits(basis, tol):
        _, classes = validate_split(basis, split, tol)
        for move in _candidate_moves(basis, split, classes, tol):
            deeper = _search(apply_winding_move(basis, move, tol), depth - 1, tol)
            if deeper is not None:
                return [move] + deeper
    return None


def unwind(basis: ProductBasis, max_depth: int, tol: Tolerances = TOLERANCES):
    """Search for a certified move sequence taking the basis to grid form.

    Iterative deepening keeps the result the lexicographically smallest
    certified sequence by (depth, split index, move index).  Returns the
    move list, empty for an already-Cartesian basis, or ``None`` when the
    search is exhausted; absence means "not unwound within this depth",
    never "not unwindable".  Every returned sequence is independently
    certified by re-application before being returned.
    """
    _require_complete(basis)
    for depth in range(max_depth + 1):
        seq = _search(basis, depth, tol)
        if seq is not None:
            replayed = basis
            for move in seq:
                replayed = apply_winding_move(replayed, move, tol)
            assert is_cartesian(replayed, tol.ray_grouping), "unwinding sequence failed certification"
            return seq
    return None


def wind_basis(basis: ProductBasis, k_moves: int, seed: int, tol: Tolerances = TOLERANCES):
    """Apply ``k_moves`` random winding moves to a complete product basis.

    Each move samples a split uniformly from the currently available ones
    and Haar-random subspace unitaries, all from a stream keyed by
    (seed, move index).  Returns the wound basis together with the exact
    move list; raises :class:`NoValidSplit` (carrying the moves applied so
    far) if the split enumeration ever comes up empty.
    """
    if k_moves < 0:
        raise ValueError("k_moves must be nonnegative")
    _require_complete(basis)
    moves: list[WindingMove] = []
    for m in range(k_moves):
        splits = enumerate_splits(basis, tol)
        if not splits:
            raise NoValidSplit(
                f"no proper split available after {m} moves", moves_applied=tuple(moves)
            )
        rng = stream(seed, m)
        split = splits[int(rng.integers(len(splits)))]
        ka, kb = split.dims
        move = WindingMove(split, haar_unitary(rng, ka), haar_unitary(rng, kb))
        basis = apply_winding_move(basis, move, tol)
        moves.append(move)
    return basis, tuple(moves)


def random_wound_basis(d_a: int, d_b: int, k_moves: int, seed: int, tol: Tolerances = TOLERANCES):
    """Wound test fixture: ``k_moves`` random moves applied to the Cartesian basis."""
    return wind_basis(cartesian_basis(d_a, d_b), k_moves, seed, tol)


def _matrix_to_json(m: np.ndarray):
    return [[[float(x.real), float(x.imag)] for x in row] for row in np.asarray(m, dtype=complex)]


def _matrix_from_json(rows) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)


def move_to_record(move: WindingMove) -> dict:
    """JSON-serializable record of a move (stored in basis provenance)."""
    return {
        "op": "winding_move",
        "a_basis": _matrix_to_json(move.split.a_basis),
        "b_basis": _matrix_to_json(move.split.b_basis),
        "u_a": _matrix_to_json(move.u_a),
        "u_b": _matrix_to_json(move.u_b),
    }


def move_from_record(record: dict) -> WindingMove:
    if record.get("op") != "winding_move":
        raise ValueError(f"not a winding move record: {record.get('op')!r}")
    split = SubspacePair(_matrix_from_json(record["a_basis"]), _matrix_from_json(record["b_basis"]))
    return WindingMove(split, _matrix_from_json(record["u_a"]), _matrix_from_json(record["u_b"]))
