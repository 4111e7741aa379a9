"""Built-in bipartite states, random samplers, and JSON (de)serialization.

All randomness flows from one explicit 64-bit seed through numpy's default
PCG64 generator, so sampled fixtures are bit-stable across runs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .linalg import (
    DimPair,
    hermitian_defect,
    herm_eigvalues,
    kron,
    max_abs,
)

STATE_HERMITICITY_TOL = 1e-10
STATE_TRACE_TOL = 1e-9
STATE_EIG_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class BipartiteState:
    """Density matrix on a d_A * d_B product space with provenance label."""

    dims: DimPair
    rho: np.ndarray
    label: str


def make_state(rho: np.ndarray, dims: DimPair, label: str, check: bool = True) -> BipartiteState:
    """Wrap and validate a density matrix; error messages name the violated quantity."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (dims.total, dims.total):
        raise ValueError(
            f"state matrix shape {rho.shape} does not match dims {dims.d_a}x{dims.d_b} (dimension)"
        )
    if check:
        defect = hermitian_defect(rho)
        if defect > STATE_HERMITICITY_TOL * max(1.0, max_abs(rho)):
            raise ValueError(f"state violates hermiticity: max |rho - rho^dagger| = {defect:.3e}")
        tr = complex(np.trace(rho))
        if abs(tr - 1.0) > STATE_TRACE_TOL:
            raise ValueError(f"state violates trace normalization: trace = {tr.real:.12g}")
        min_eig = float(herm_eigvalues(rho)[0])
        if min_eig < -STATE_EIG_TOL:
            raise ValueError(f"state violates positivity: min eigenvalue = {min_eig:.3e}")
    return BipartiteState(dims=dims, rho=rho, label=label)


def phi(d: int) -> np.ndarray:
    """Unnormalized maximally entangled vector sum_i |i,i>, squared norm d."""
    if d < 2:
        raise ValueError(f"local dimension must be >= 2, got {d}")
    v = np.zeros(d * d, dtype=complex)
    v[np.arange(d) * (d + 1)] = 1.0
    return v


def max_entangled(d: int) -> BipartiteState:
    """Normalized maximally entangled state |Phi><Phi| / d."""
    v = phi(d)
    return make_state(np.outer(v, v.conj()) / d, DimPair.square(d), label=f"phi(d={d})")


def horodecki_rho(a: float) -> BipartiteState:
    """The 3x3 PPT-entangled one-parameter state, a in [0, 1].

    Entangled for all 0 < a < 1 while its partial transpose stays positive;
    at the endpoints it degenerates to separable states.
    """
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"parameter must lie in [0, 1], got {a}")
    rho = np.zeros((9, 9), dtype=complex)
    for i in (0, 1, 2, 3, 4, 5, 7):
        rho[i, i] = a
    rho[6, 6] = (1.0 + a) / 2.0
    rho[8, 8] = (1.0 + a) / 2.0
    for i, j in ((0, 4), (0, 8), (4, 8)):
        rho[i, j] = a
        rho[j, i] = a
    c = np.sqrt(1.0 - a * a) / 2.0
    rho[6, 8] = c
    rho[8, 6] = c
    rho /= 1.0 + 8.0 * a
    return make_state(rho, DimPair.square(3), label=f"horodecki(a={a:g})")


@dataclass(frozen=True)
class FamilyParams:
    """Mixing weights (a_1, ..., a_d) of the d-level diagonal family; sum = 1."""

    d: int
    a: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.d < 2:
            raise ValueError(f"local dimension must be >= 2, got {self.d}")
        if len(self.a) != self.d:
            raise ValueError(f"need {self.d} weights, got {len(self.a)}")
        if any(x < 0.0 for x in self.a):
            raise ValueError(f"weights must be nonnegative, got {self.a}")
        if abs(sum(self.a) - 1.0) > 1e-12:
            raise ValueError(f"weights must sum to 1, got sum = {sum(self.a)!r}")


def _wrap(i: int, d: int) -> int:
    """Wrap a 1-based subscript into 1..d."""
    return (i - 1) % d + 1


def family_special(d: int, a1: float, a2: float) -> FamilyParams:
    """Special slice a = (a1, a2, a1, ..., a1, a_d) with a_d = 1 - (d-2) a1 - a2."""
    a_d = 1.0 - (d - 2) * a1 - a2
    if a1 < 0.0 or a2 < 0.0 or a_d < 0.0:
        raise ValueError(f"invalid slice point: (a1, a2, a_d) = ({a1}, {a2}, {a_d})")
    a = [a1] * d
    a[1] = a2
    a[d - 1] = a_d
    return FamilyParams(d=d, a=tuple(a))


def family_rho(params: FamilyParams) -> BipartiteState:
    """Diagonal d x d family state.

    (a_1/d) |Phi><Phi| plus, for i = 2..d, weight a_i/d on each projector
    |k, k+i-1><k, k+i-1| with the second label wrapped into 1..d. The reduced
    state on either side is I/d for every valid parameter choice.
    """
    d = params.d
    v = phi(d)
    rho = np.outer(v, v.conj()) * (params.a[0] / d)
    for i in range(2, d + 1):
        w = params.a[i - 1] / d
        for k in range(1, d + 1):
            col = _wrap(k + i - 1, d)
            idx = (k - 1) * d + (col - 1)
            rho[idx, idx] += w
    label = "family(d={}, a=({}))".format(d, ", ".join(f"{x:g}" for x in params.a))
    return make_state(rho, DimPair.square(d), label=label)


def family_separable_sufficient(params: FamilyParams) -> bool:
    """Separability condition: a_i >= a_1 for every i != 1."""
    return all(x >= params.a[0] for x in params.a[1:])


def family_ppt_sufficient(params: FamilyParams) -> bool:
    """Positive-partial-transpose condition: a_{i+1} a_{d-i+1} >= a_1^2 for i = 1..d-1."""
    d, a = params.d, params.a
    a1_sq = a[0] * a[0]
    return all(a[_wrap(i + 1, d) - 1] * a[_wrap(d - i + 1, d) - 1] >= a1_sq for i in range(1, d))


def werner2(p: float) -> BipartiteState:
    """Two-qubit Werner state p |psi-><psi-| + (1-p) I/4; entangled iff p > 1/3."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"mixing parameter must lie in [0, 1], got {p}")
    psi = np.zeros(4, dtype=complex)
    psi[1] = 1.0 / np.sqrt(2.0)
    psi[2] = -1.0 / np.sqrt(2.0)
    rho = p * np.outer(psi, psi.conj()) + (1.0 - p) * np.eye(4) / 4.0
    return make_state(rho, DimPair.square(2), label=f"werner2(p={p:g})")


def _random_pure_density(rng: np.random.Generator, d: int) -> np.ndarray:
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    z /= np.linalg.norm(z)
    return np.outer(z, z.conj())


def _random_mixed_density(rng: np.random.Generator, d: int) -> np.ndarray:
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    w = g @ g.conj().T
    return w / np.trace(w).real


def _random_factor(rng: np.random.Generator, d: int, mode: str) -> np.ndarray:
    if mode == "pure":
        return _random_pure_density(rng, d)
    if mode == "mixed":
        return _random_mixed_density(rng, d)
    raise ValueError(f"mode must be 'pure' or 'mixed', got {mode!r}")


def _product_from_rng(rng: np.random.Generator, dims: DimPair, mode: str) -> np.ndarray:
    return kron(_random_factor(rng, dims.d_a, mode), _random_factor(rng, dims.d_b, mode))


def random_product_state(dims: DimPair, seed: int, mode: str = "pure") -> BipartiteState:
    """Product state rho_1 x rho_2 with independent random factors.

    ``mode`` selects Haar-random pure projectors or normalized Wishart
    mixtures for the factors.
    """
    rng = np.random.default_rng(seed)
    rho = _product_from_rng(rng, dims, mode)
    return make_state(rho, dims, label=f"product(dims={dims.d_a}x{dims.d_b}, seed={seed}, mode={mode})")


def random_separable_state(dims: DimPair, k: int, seed: int, mode: str = "pure") -> BipartiteState:
    """Convex mixture of k random product states with uniform-simplex weights.

    For k = 1 this reduces exactly to random_product_state with the same seed.
    """
    if k < 1:
        raise ValueError(f"need k >= 1 mixture terms, got {k}")
    rng = np.random.default_rng(seed)
    parts = [_product_from_rng(rng, dims, mode) for _ in range(k)]
    weights = np.ones(1) if k == 1 else rng.dirichlet(np.ones(k))
    rho = sum(w * part for w, part in zip(weights, parts))
    return make_state(
        rho, dims, label=f"separable(dims={dims.d_a}x{dims.d_b}, k={k}, seed={seed}, mode={mode})"
    )


def save_state(state: BipartiteState, path: str | Path) -> None:
    """Write the state as JSON: {"dim_a", "dim_b", "re", "im"}, row-major composite basis."""
    payload = {
        "dim_a": state.dims.d_a,
        "dim_b": state.dims.d_b,
        "re": state.rho.real.tolist(),
        "im": state.rho.imag.tolist(),
    }
    Path(path).write_text(json.dumps(payload), encoding="utf-8")


def _matrix_from_payload(payload: dict, path: Path) -> tuple[np.ndarray, DimPair]:
    try:
        dims = DimPair(int(payload["dim_a"]), int(payload["dim_b"]))
        re = np.asarray(payload["re"], dtype=float)
        im = np.asarray(payload["im"], dtype=float)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed matrix file {path}: {exc}") from exc
    if re.shape != im.shape or re.ndim != 2:
        raise ValueError(f"malformed matrix file {path}: re/im shapes {re.shape} vs {im.shape}")
    return re + 1j * im, dims


def load_state(path: str | Path) -> BipartiteState:
    """Read and validate a state written by save_state (round trip is exact)."""
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed state file {path}: {exc}") from exc
    rho, dims = _matrix_from_payload(payload, path)
    return make_state(rho, dims, label=f"file:{path.name}")
