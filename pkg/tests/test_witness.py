import json

import numpy as np
import pytest

from loowit.linalg import DimPair, herm_eigvalues, max_abs
from loowit.loo import (
    Permutation,
    diag_cycle,
    gram_matrix,
    identity_transform,
    make_transform,
    random_orthogonal,
    transpose_transform,
)
from loowit.states import horodecki_rho, max_entangled, phi, random_product_state, random_separable_state
from loowit.witness import (
    ew_from_transform,
    expectation,
    horodecki_ew,
    horodecki_loo_bases,
    perm_ew,
    save_witness,
)


def n_sq_closed(a: float) -> float:
    return (1.0 - a) * a * a / ((2.0 + a) * (1.0 + 8.0 * a) ** 2)


class TestTransformWitness:
    def test_identity_transform_gives_phi_witness(self):
        w = ew_from_transform(identity_transform(9), 3)
        v = phi(3)
        assert max_abs(w.matrix - (np.eye(9) - np.outer(v, v.conj()))) < 1e-12
        assert abs(w.min_eig - (1.0 - 3.0)) < 1e-12
        assert not w.candidate_only

    def test_transpose_transform_never_a_witness(self):
        # I - SWAP is positive semidefinite: the transposition mixing induces
        # a completely positive map and cannot detect anything
        w = ew_from_transform(transpose_transform(3), 3)
        assert w.min_eig >= -1e-12
        assert w.candidate_only
        eigs = herm_eigvalues(w.matrix)
        assert np.allclose(np.sort(eigs), [0.0] * 6 + [2.0] * 3, atol=1e-12)

    def test_sound_on_product_states(self, rng):
        dims = DimPair.square(3)
        rhos = np.stack([random_product_state(dims, seed=s).rho for s in range(500)])
        for _ in range(5):
            w = ew_from_transform(make_transform(random_orthogonal(9, rng)), 3)
            values = np.einsum("bij,ji->b", rhos, w.matrix).real
            assert values.min() >= -1e-9

    def test_contraction_accepted_non_contraction_rejected(self):
        ew_from_transform(make_transform(0.7 * np.eye(9)), 3)  # no raise
        with pytest.raises(ValueError, match="max eigenvalue"):
            ew_from_transform(make_transform(1.1 * np.eye(9)), 3)

    def test_hermitian(self, rng):
        w = ew_from_transform(make_transform(random_orthogonal(4, rng)), 2)
        assert max_abs(w.matrix - w.matrix.conj().T) <= 1e-10


class TestPermWitness:
    def test_identity_permutation(self):
        from loowit.loo import identity_permutation

        w = perm_ew(identity_permutation(9), 3)
        assert w.phi_value == 3 - 9
        v = phi(3)
        assert max_abs(w.matrix - (np.eye(9) - np.outer(v, v.conj()))) < 1e-12
        assert not w.candidate_only

    def test_diag_cycle_confirmed(self):
        w = perm_ew(diag_cycle(3, 1), 3)
        assert w.phi_value == 3 - 6
        assert not w.candidate_only
        assert w.min_eig < -1e-9  # eigensolve confirms the fixed-point certificate

    def test_fixed_point_free_swap_stays_candidate(self):
        sigma = Permutation(4, (1, 0, 3, 2))
        w = perm_ew(sigma, 2)
        assert w.phi_value == 2.0
        assert w.candidate_only

    def test_enough_fixed_points_always_confirms(self, rng):
        # any permutation with >= d+1 fixed slots certifies a negative eigenvalue
        from loowit.loo import fixed_points

        d = 3
        for _ in range(20):
            mapping = np.arange(9)
            moved = rng.choice(9, size=int(rng.integers(2, 5)), replace=False)
            mapping[moved] = moved[np.argsort(rng.standard_normal(len(moved)))]
            sigma = Permutation(9, tuple(int(i) for i in mapping))
            if fixed_points(sigma) < d + 1:
                continue
            w = perm_ew(sigma, d)
            assert not w.candidate_only
            assert w.min_eig < -1e-9

    def test_dim_mismatch(self):
        with pytest.raises(ValueError):
            perm_ew(diag_cycle(3, 1), 2)


class TestHorodeckiWitness:
    @pytest.mark.parametrize("a", np.arange(0.1, 0.95, 0.1))
    def test_bases_orthonormal(self, a):
        basis_a, basis_b = horodecki_loo_bases(float(a))
        assert max_abs(gram_matrix(basis_a) - np.eye(9)) < 1e-12
        assert max_abs(gram_matrix(basis_b) - np.eye(9)) < 1e-12

    def test_a3_normalization_closed_form(self):
        a = 0.35
        num = (1.0 + 2.0 * a) ** 2 + 3.0 * (1.0 - a * a)
        assert abs(num / (2.0 + a) ** 2 - 1.0) < 1e-12

    def test_half_point_values(self):
        w, data = horodecki_ew(0.5)
        assert abs(data.n_sq - 0.002) < 1e-15
        assert abs(np.trace(data.coeffs) - 1.0) < 1e-9
        value = expectation(w, horodecki_rho(0.5))
        assert abs(value - (1.0 - np.sqrt(1.002))) < 1e-12
        assert abs(value + 9.995e-4) < 1e-6

    @pytest.mark.parametrize("a", np.arange(0.05, 1.0, 0.05))
    def test_detection_identity_on_grid(self, a):
        a = float(a)
        w, data = horodecki_ew(a)
        assert abs(data.n_sq - n_sq_closed(a)) < 1e-12
        value = expectation(w, horodecki_rho(a))
        assert abs(value - (1.0 - np.sqrt(1.0 + data.n_sq))) < 1e-9
        assert value < 0.0
        assert not w.candidate_only

    def test_mixing_is_extremal_contraction(self):
        _, data = horodecki_ew(0.5)
        eigs = herm_eigvalues(data.mixing.T @ data.mixing)
        low = 1.0 / (1.0 + data.n_sq)
        assert eigs[0] >= low - 1e-9
        assert abs(eigs[-1] - 1.0) < 1e-9

    def test_endpoints_degenerate(self):
        for a in (0.0, 1.0):
            w, data = horodecki_ew(a)
            assert max_abs(data.n_vec) < 1e-12
            assert max_abs(data.mixing - np.eye(9)) < 1e-12
            assert abs(expectation(w, horodecki_rho(a))) < 1e-9

    def test_sound_on_separable_samples(self):
        w, _ = horodecki_ew(0.4)
        for seed in range(20):
            state = random_separable_state(DimPair.square(3), k=4, seed=seed)
            assert expectation(w, state) >= -1e-9

    def test_hermitian(self):
        w, _ = horodecki_ew(0.25)
        assert max_abs(w.matrix - w.matrix.conj().T) <= 1e-10


class TestExpectation:
    def test_identity_witness_on_max_entangled(self):
        w = ew_from_transform(identity_transform(9), 3)
        assert abs(expectation(w, max_entangled(3)) - (1.0 - 3.0)) < 1e-12

    def test_dims_mismatch(self):
        w = ew_from_transform(identity_transform(4), 2)
        with pytest.raises(ValueError, match="mismatch"):
            expectation(w, max_entangled(3))


class TestSerialization:
    def test_export_schema(self, tmp_path):
        w, _ = horodecki_ew(0.5)
        path = tmp_path / "witness.json"
        save_witness(w, path)
        payload = json.loads(path.read_text())
        assert payload["provenance"] == "horodecki(a=0.5)"
        assert payload["dim_a"] == payload["dim_b"] == 3
        matrix = np.asarray(payload["re"]) + 1j * np.asarray(payload["im"])
        assert max_abs(matrix - w.matrix) <= 1e-15
