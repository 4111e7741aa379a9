import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import random_complex, random_density, random_hermitian
from loowit.linalg import (
    DimPair,
    herm_eig,
    herm_eigvalues,
    is_psd,
    kron,
    max_abs,
    partial_trace,
    partial_transpose,
    realign,
    trace_norm,
)
from loowit.loo import random_orthogonal, random_unitary, standard_basis, sym_slot
from loowit.states import FamilyParams, family_rho, horodecki_rho, max_entangled, phi, werner2


# reference implementations used as oracles

def partial_trace_loops(rho, dims, subsystem):
    da, db = dims.d_a, dims.d_b
    if subsystem == "B":
        out = np.zeros((da, da), dtype=complex)
        for m in range(da):
            for k in range(da):
                out[m, k] = sum(rho[m * db + n, k * db + n] for n in range(db))
    else:
        out = np.zeros((db, db), dtype=complex)
        for n in range(db):
            for l in range(db):
                out[n, l] = sum(rho[m * db + n, m * db + l] for m in range(da))
    return out


def realign_loops(rho, dims):
    da, db = dims.d_a, dims.d_b
    out = np.zeros((da * da, db * db), dtype=complex)
    for m in range(da):
        for n in range(da):
            for k in range(db):
                for l in range(db):
                    out[m * da + n, k * db + l] = rho[m * db + k, n * db + l]
    return out


class TestKron:
    def test_identity(self):
        assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_pair_observable_placement(self):
        basis = standard_basis(2)
        proj = np.diag([1.0, 0.0]).astype(complex)
        result = kron(basis[sym_slot(2, 0, 1)], proj)
        expected = np.zeros((4, 4), dtype=complex)
        expected[0, 2] = expected[2, 0] = 1.0 / np.sqrt(2.0)
        assert max_abs(result - expected) < 1e-15

    def test_trace_multiplicative(self, rng):
        for _ in range(100):
            a = random_complex(rng, int(rng.integers(2, 5)))
            b = random_complex(rng, int(rng.integers(2, 5)))
            assert abs(np.trace(kron(a, b)) - np.trace(a) * np.trace(b)) < 1e-10


class TestPartialTranspose:
    def test_product_state(self, rng):
        dims = DimPair(3, 3)
        r1, r2 = random_density(rng, 3), random_density(rng, 3)
        got = partial_transpose(kron(r1, r2), dims, "B")
        assert max_abs(got - kron(r1, r2.T)) < 1e-14

    def test_max_entangled_min_eig(self):
        state = max_entangled(3)
        pt = partial_transpose(state.rho, state.dims, "B")
        assert abs(herm_eigvalues(pt)[0] + 1.0 / 3.0) < 1e-12

    def test_horodecki_is_ppt(self):
        for a in np.arange(0.1, 0.95, 0.1):
            state = horodecki_rho(float(a))
            pt = partial_transpose(state.rho, state.dims, "B")
            assert herm_eigvalues(pt)[0] >= -1e-9

    def test_involution_and_composition(self, rng):
        dims = DimPair(2, 3)
        rho = random_density(rng, 6)
        for side in ("A", "B"):
            twice = partial_transpose(partial_transpose(rho, dims, side), dims, side)
            assert max_abs(twice - rho) < 1e-15
        both = partial_transpose(partial_transpose(rho, dims, "A"), dims, "B")
        assert max_abs(both - rho.T) < 1e-15

    def test_preserves_trace_and_hermiticity(self, rng):
        dims = DimPair(2, 2)
        rho = random_density(rng, 4)
        pt = partial_transpose(rho, dims, "B")
        assert abs(np.trace(pt) - np.trace(rho)) < 1e-12
        assert max_abs(pt - pt.conj().T) < 1e-12


class TestPartialTrace:
    def test_product_state(self, rng):
        dims = DimPair(3, 3)
        r1, r2 = random_density(rng, 3), random_complex(rng, 3)
        got = partial_trace(kron(r1, r2), dims, "B")
        assert max_abs(got - np.trace(r2) * r1) < 1e-13

    def test_phi_projector(self):
        d = 3
        v = phi(d)
        got = partial_trace(np.outer(v, v.conj()), DimPair.square(d), "B")
        assert max_abs(got - np.eye(d)) < 1e-15

    def test_family_reduction_uniform(self):
        state = family_rho(FamilyParams(3, (1 / 3, 1 / 3, 1 / 3)))
        reduced = partial_trace(state.rho, state.dims, "A")
        oracle = partial_trace_loops(state.rho, state.dims, "A")
        assert max_abs(reduced - oracle) < 1e-14
        assert max_abs(reduced - np.eye(3) / 3.0) < 1e-12

    def test_against_loop_oracle(self, rng):
        dims = DimPair(2, 4)
        rho = random_complex(rng, 8)
        for side in ("A", "B"):
            assert max_abs(partial_trace(rho, dims, side) - partial_trace_loops(rho, dims, side)) < 1e-13

    def test_trace_preserved(self, rng):
        dims = DimPair(3, 2)
        rho = random_density(rng, 6)
        for side in ("A", "B"):
            assert abs(np.trace(partial_trace(rho, dims, side)) - 1.0) < 1e-12


class TestRealign:
    def test_entry_rule(self, rng):
        dims = DimPair(3, 3)
        rho = random_complex(rng, 9)
        tilde = realign(rho, dims)
        # 1-based: tilde[(1,2),(1,1)] = rho[(1,1),(2,1)]
        assert tilde[1, 0] == rho[0, 3]
        assert max_abs(tilde - realign_loops(rho, dims)) == 0.0

    def test_entry_rule_rectangular(self, rng):
        dims = DimPair(2, 3)
        rho = random_complex(rng, 6)
        assert max_abs(realign(rho, dims) - realign_loops(rho, dims)) == 0.0

    def test_max_entangled_value(self):
        state = max_entangled(3)
        tilde = realign(state.rho, state.dims)
        assert max_abs(tilde - np.eye(9) / 3.0) < 1e-15
        assert abs(trace_norm(tilde) - 3.0) < 1e-12

    def test_product_state_value(self, rng):
        for _ in range(100):
            r1, r2 = random_density(rng, 3), random_density(rng, 3)
            value = trace_norm(realign(kron(r1, r2), DimPair(3, 3)))
            closed = np.sqrt(np.trace(r1 @ r1).real * np.trace(r2 @ r2).real)
            assert abs(value - closed) < 1e-10

    @given(st.floats(-2.0, 2.0), st.floats(-2.0, 2.0))
    def test_linearity(self, alpha, beta):
        rng = np.random.default_rng(7)
        dims = DimPair(2, 2)
        x, y = random_complex(rng, 4), random_complex(rng, 4)
        lhs = realign(alpha * x + beta * y, dims)
        rhs = alpha * realign(x, dims) + beta * realign(y, dims)
        assert max_abs(lhs - rhs) < 1e-12


class TestHermEig:
    def test_sorted_diag(self):
        spec = herm_eig(np.diag([3.0, 1.0, 2.0]).astype(complex))
        assert np.allclose(spec.values, [1.0, 2.0, 3.0])

    def test_pair_observable_eigenvalues(self):
        basis = standard_basis(2)
        spec = herm_eig(basis[sym_slot(2, 0, 1)])
        assert np.allclose(spec.values, [-1.0 / np.sqrt(2.0), 1.0 / np.sqrt(2.0)])

    def test_trace_reconstruction_orthonormality(self, rng):
        for _ in range(100):
            n = int(rng.integers(2, 9))
            h = random_hermitian(rng, n)
            spec = herm_eig(h)
            assert abs(spec.values.sum() - np.trace(h).real) < 1e-9
            recon = (spec.vectors * spec.values) @ spec.vectors.conj().T
            scale = max(1.0, max_abs(h))
            assert max_abs(recon - h) < 1e-9 * scale
            assert max_abs(spec.vectors.conj().T @ spec.vectors - np.eye(n)) < 1e-9

    def test_rejects_asymmetric(self, rng):
        with pytest.raises(ValueError, match="hermiticity"):
            herm_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestTraceNorm:
    def test_identity(self):
        for d in (2, 5, 9):
            assert abs(trace_norm(np.eye(d)) - d) < 1e-12

    def test_diagonal(self):
        assert abs(trace_norm(np.diag([-2.0, 3.0])) - 5.0) < 1e-12

    def test_unitary_invariance(self, rng):
        for _ in range(20):
            m = random_complex(rng, 4)
            u, v = random_unitary(4, rng), random_unitary(4, rng)
            assert abs(trace_norm(u @ m @ v) - trace_norm(m)) < 1e-10
        h = random_hermitian(rng, 5)
        assert abs(trace_norm(h) - np.abs(herm_eigvalues(h)).sum()) < 1e-11

    def test_dominates_orthogonal_pairing(self, rng):
        m = rng.standard_normal((6, 6))
        bound = trace_norm(m)
        for _ in range(100):
            o = random_orthogonal(6, rng)
            assert abs(np.trace(m @ o)) <= bound + 1e-10


class TestIsPsd:
    def test_examples(self):
        ok, min_eig = is_psd(np.eye(3))
        assert ok and abs(min_eig - 1.0) < 1e-12
        ok, min_eig = is_psd(np.diag([1.0, -0.5]))
        assert not ok and abs(min_eig + 0.5) < 1e-12

    def test_generator_outputs(self, rng):
        for state in (horodecki_rho(0.4), werner2(0.8), max_entangled(2)):
            ok, _ = is_psd(state.rho)
            assert ok
