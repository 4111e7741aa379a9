"""Complete sets of local orthogonal observables (LOOs) and their transforms.

A complete LOO set for a d-level system is d^2 Hermitian matrices that are
orthonormal under the Hilbert-Schmidt inner product, Tr(L_u L_v) = delta_uv.
The standard set used throughout, in this fixed slot order:

  slots 0 .. d-1                        projectors |m><m|
  slots d .. d + d(d-1)/2 - 1           (|m><n| + |n><m|) / sqrt(2),   m < n
  remaining d(d-1)/2 slots              (|m><n| - |n><m|) / (i sqrt(2)), m < n

with the (m, n) pairs in lexicographic order within each block. For d=2 this
is {|1><1|, |2><2|, sigma_x/sqrt(2), sigma_y/sqrt(2)}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .linalg import max_abs

ORTHOGONALITY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class LooBasis:
    """Ordered stack of d^2 Hermitian d x d observables.

    ``mats`` has shape (d^2, d, d). ``orthonormal`` is False only for bases
    produced by a contraction (non-orthogonal) mixing, which are not required
    to satisfy the Gram identity.
    """

    dim: int
    mats: np.ndarray
    tag: str = "standard"
    orthonormal: bool = True

    def __len__(self) -> int:
        return self.mats.shape[0]

    def __iter__(self):
        return iter(self.mats)

    def __getitem__(self, idx: int) -> np.ndarray:
        return self.mats[idx]


def n_pairs(d: int) -> int:
    return d * (d - 1) // 2


def pair_rank(d: int, m: int, n: int) -> int:
    """Lexicographic rank of the 0-based pair (m, n), m < n."""
    if not 0 <= m < n < d:
        raise ValueError(f"need 0 <= m < n < d, got ({m}, {n}) with d={d}")
    return m * d - m * (m + 1) // 2 + (n - m - 1)


def diag_slot(d: int, m: int) -> int:
    return m


def sym_slot(d: int, m: int, n: int) -> int:
    return d + pair_rank(d, m, n)


def asym_slot(d: int, m: int, n: int) -> int:
    return d + n_pairs(d) + pair_rank(d, m, n)


def pair_list(d: int) -> list[tuple[int, int]]:
    """All 0-based (m, n) pairs with m < n, lexicographic."""
    return [(m, n) for m in range(d) for n in range(m + 1, d)]


@lru_cache(maxsize=None)
def standard_basis(d: int) -> LooBasis:
    """The standard complete LOO set for local dimension d."""
    if d < 2:
        raise ValueError(f"local dimension must be >= 2, got {d}")
    mats = np.zeros((d * d, d, d), dtype=complex)
    for m in range(d):
        mats[m, m, m] = 1.0
    s = 1.0 / np.sqrt(2.0)
    for m, n in pair_list(d):
        mats[sym_slot(d, m, n), m, n] = s
        mats[sym_slot(d, m, n), n, m] = s
        mats[asym_slot(d, m, n), m, n] = -1j * s
        mats[asym_slot(d, m, n), n, m] = 1j * s
    mats.flags.writeable = False
    return LooBasis(dim=d, mats=mats, tag="standard", orthonormal=True)


def gram_matrix(basis: LooBasis) -> np.ndarray:
    """Pairwise Hilbert-Schmidt inner products Tr(L_u L_v)."""
    flat = basis.mats.reshape(len(basis), -1)
    return (flat @ flat.conj().T).real


def pair_sum(mats_a: np.ndarray, mats_b: np.ndarray) -> np.ndarray:
    """sum_u kron(mats_a[u], mats_b[u]) over two equally long stacks.

    For the standard set this gives |Phi><Phi| when the B stack is transposed
    entrywise and the SWAP operator when it is not.
    """
    d = mats_a.shape[1]
    out = np.einsum("uab,ucd->acbd", mats_a, mats_b)
    return out.reshape(d * d, d * d)


def expand(basis: LooBasis, x: np.ndarray) -> np.ndarray:
    """Coefficients Tr(x L_u) of x in the basis."""
    return np.einsum("ij,uji->u", np.asarray(x, dtype=complex), basis.mats)


def reconstruct(basis: LooBasis, coeffs: np.ndarray) -> np.ndarray:
    """Sum_u coeffs[u] L_u."""
    return np.einsum("u,uij->ij", np.asarray(coeffs), basis.mats)


def validate_basis(basis: LooBasis, rng: np.random.Generator | None = None, n_probe: int = 5) -> dict[str, float]:
    """Max deviations of the defining properties; all should be ~1e-13 for exact bases.

    Returns {"gram": ..., "hermiticity": ..., "completeness": ...}. The
    completeness figure is the worst reconstruction error over ``n_probe``
    random matrices.
    """
    rng = rng if rng is not None else np.random.default_rng(0)
    d = basis.dim
    gram_dev = max_abs(gram_matrix(basis) - np.eye(len(basis)))
    herm_dev = max(max_abs(m - m.conj().T) for m in basis.mats)
    comp_dev = 0.0
    for _ in range(n_probe):
        x = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        comp_dev = max(comp_dev, max_abs(reconstruct(basis, expand(basis, x)) - x))
    return {"gram": gram_dev, "hermiticity": herm_dev, "completeness": comp_dev}


@dataclass(frozen=True, eq=False)
class OrthTransform:
    """Real d^2 x d^2 mixing matrix for LOO sets.

    ``kind`` is "orthogonal" (O O^T = I) or "contraction" (O O^T <= I, not
    orthogonal). Contractions are first-class: they still produce sound
    witness candidates, but the mixed observable set loses orthonormality.
    """

    matrix: np.ndarray
    kind: str

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def make_transform(matrix: np.ndarray, tol: float = ORTHOGONALITY_TOL) -> OrthTransform:
    """Classify a real square matrix as orthogonal or contraction.

    Raises ValueError naming the offending eigenvalue when O O^T exceeds the
    identity beyond tolerance.
    """
    matrix = np.asarray(matrix)
    if np.iscomplexobj(matrix):
        if max_abs(matrix.imag) > tol:
            raise ValueError("transform matrix must be real")
        matrix = matrix.real
    matrix = matrix.astype(float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"transform must be square, got shape {matrix.shape}")
    g = matrix @ matrix.T
    if max_abs(g - np.eye(matrix.shape[0])) <= tol:
        return OrthTransform(matrix=matrix, kind="orthogonal")
    top = float(np.linalg.eigvalsh((g + g.T) / 2.0)[-1])
    if top <= 1.0 + tol:
        return OrthTransform(matrix=matrix, kind="contraction")
    raise ValueError(
        f"transform is neither orthogonal nor a contraction: max eigenvalue of O O^T is {top:.9g}"
    )


@dataclass(frozen=True)
class Permutation:
    """Bijection on basis slots {0, ..., size-1} (0-based images)."""

    size: int
    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.mapping) != self.size or sorted(self.mapping) != list(range(self.size)):
            raise ValueError("mapping is not a bijection on the slot range")

    def __call__(self, slot: int) -> int:
        return self.mapping[slot]


def identity_permutation(size: int) -> Permutation:
    return Permutation(size=size, mapping=tuple(range(size)))


def diag_cycle(d: int, l: int) -> Permutation:
    """Cyclic shift by l of the d projector slots; every pair slot is fixed.

    In 1-based labels the projector slots map as m -> m + l (mod d).
    """
    if not 1 <= l <= d - 1:
        raise ValueError(f"shift must satisfy 1 <= l <= d-1, got l={l} for d={d}")
    mapping = [(i + l) % d for i in range(d)] + list(range(d, d * d))
    return Permutation(size=d * d, mapping=tuple(mapping))


def fixed_points(sigma: Permutation) -> int:
    """Number of slots left unchanged."""
    return sum(1 for i, j in enumerate(sigma.mapping) if i == j)


def identity_transform(n: int) -> OrthTransform:
    return OrthTransform(matrix=np.eye(n), kind="orthogonal")


def transpose_transform(d: int) -> OrthTransform:
    """Diagonal +-1 matrix realizing entrywise transposition of the standard set.

    Projector and symmetric-pair slots are fixed (+1), antisymmetric-pair
    slots flip sign (-1). Its determinant is (-1)^(d(d-1)/2) while every
    unitary-induced mixing has determinant +1, which is numerical evidence
    (not proof) that no unitary conjugation reproduces the transposition.
    """
    signs = np.ones(d * d)
    signs[d + n_pairs(d):] = -1.0
    return OrthTransform(matrix=np.diag(signs), kind="orthogonal")


def permutation_transform(sigma: Permutation) -> OrthTransform:
    """Permutation matrix O with O[u, sigma(u)] = 1, so mixing sends slot u to L_sigma(u)."""
    matrix = np.zeros((sigma.size, sigma.size))
    matrix[np.arange(sigma.size), np.array(sigma.mapping)] = 1.0
    return OrthTransform(matrix=matrix, kind="orthogonal")


def require_unitary(u: np.ndarray, tol: float = ORTHOGONALITY_TOL) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"unitary must be square, got shape {u.shape}")
    defect = max_abs(u.conj().T @ u - np.eye(u.shape[0]))
    if defect > tol:
        raise ValueError(f"matrix is not unitary: max |u^dagger u - I| = {defect:.3e}")
    return u


def unitary_transform(u: np.ndarray, tol: float = ORTHOGONALITY_TOL) -> OrthTransform:
    """Orthogonal mixing O[u, v] = Tr(L_v  u L_u u^dagger) induced by conjugation.

    Index order is chosen so that applying the result to the standard set
    reproduces conjugate_basis(standard, u) slot by slot.
    """
    u = require_unitary(u, tol=tol)
    basis = standard_basis(u.shape[0])
    conj = np.matmul(np.matmul(u, basis.mats), u.conj().T)
    matrix = np.einsum("mij,nji->mn", conj, basis.mats)
    if max_abs(matrix.imag) > tol:
        raise ValueError("induced mixing has a non-real entry; input is not unitary enough")
    return OrthTransform(matrix=matrix.real, kind="orthogonal")


def apply_orthogonal(basis: LooBasis, transform: OrthTransform) -> LooBasis:
    """Mix the set: out_u = sum_v O[u, v] L_v."""
    if transform.dim != len(basis):
        raise ValueError(f"transform dim {transform.dim} does not match basis size {len(basis)}")
    mats = np.einsum("uv,vij->uij", transform.matrix, basis.mats)
    return LooBasis(
        dim=basis.dim,
        mats=mats,
        tag="transformed",
        orthonormal=basis.orthonormal and transform.kind == "orthogonal",
    )


def conjugate_basis(basis: LooBasis, u: np.ndarray, tol: float = ORTHOGONALITY_TOL) -> LooBasis:
    """Conjugate every observable: L_u -> u L_u u^dagger. Preserves orthonormality."""
    u = require_unitary(u, tol=tol)
    if u.shape[0] != basis.dim:
        raise ValueError(f"unitary dim {u.shape[0]} does not match basis dim {basis.dim}")
    mats = np.matmul(np.matmul(u, basis.mats), u.conj().T)
    return LooBasis(dim=basis.dim, mats=mats, tag="transformed", orthonormal=basis.orthonormal)


def transpose_basis(basis: LooBasis) -> LooBasis:
    """Entrywise transpose of every observable.

    On the standard ordering this fixes projector and symmetric slots and
    negates the antisymmetric ones; applied twice it is the identity.
    """
    mats = basis.mats.transpose(0, 2, 1).copy()
    return LooBasis(dim=basis.dim, mats=mats, tag=basis.tag, orthonormal=basis.orthonormal)


def random_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-uniform orthogonal matrix via QR with R-diagonal sign fixing."""
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-uniform unitary matrix via QR with R-diagonal phase fixing."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    phases = diag / np.abs(diag)
    return q * phases
