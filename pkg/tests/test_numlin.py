import numpy as np
import pytest
import scipy.sparse as sps

from vocalis.common.errors import SingularMatrixError, ValidationError
from vocalis.numlin import lu_solve, qep_residual, qep_solve, scatter_local


def test_lu_solve_matches_dense():
    rng = np.random.default_rng(3)
    dense = rng.standard_normal((30, 30)) + 30 * np.eye(30)
    rhs = rng.standard_normal(30)
    x = lu_solve(sps.csr_matrix(dense), rhs)
    assert np.linalg.norm(dense @ x - rhs) <= 1e-10 * np.linalg.norm(rhs)


def test_lu_solve_complex_rhs():
    matrix = sps.diags([2.0, 4.0]).tocsr()
    x = lu_solve(matrix, np.array([2.0 + 2.0j, 4.0j]))
    np.testing.assert_allclose(x, [1.0 + 1.0j, 1.0j])


def test_singular_matrix_reports_pivot():
    with pytest.raises(SingularMatrixError) as excinfo:
        lu_solve(sps.csr_matrix(np.ones((2, 2))), np.array([1.0, 1.0]))
    assert excinfo.value.pivot == 1


def test_rhs_shape_is_checked():
    with pytest.raises(ValidationError):
        lu_solve(sps.identity(3, format="csr"), np.ones(2))


def test_scatter_local_sums_shared_entries():
    cells = np.array([[0, 1], [1, 2]])
    local = np.array([[[1.0, -1.0], [-1.0, 1.0]]] * 2)
    np.testing.assert_array_equal(
        scatter_local(cells, local, 3).toarray(),
        [[1.0, -1.0, 0.0], [-1.0, 2.0, -1.0], [0.0, -1.0, 1.0]],
    )


class TestQuadraticEigen:
    def test_damped_oscillator(self):
        omega, zeta = 2.0 * np.pi * 100.0, 0.05
        pairs = qep_solve([[1.0]], [[2.0 * zeta * omega]], [[omega**2]], k=1, shift=2j * np.pi * 100.0)
        expected = -zeta * omega + 1j * omega * np.sqrt(1.0 - zeta**2)
        assert pairs[0].lam == pytest.approx(expected, rel=1e-10)
        assert pairs[0].residual <= 1e-8

    def test_conjugate_pairs_for_real_matrices(self):
        mass = np.diag([1.0, 2.0])
        damping = np.array([[3.0, -1.0], [-1.0, 1.0]])
        stiffness = np.array([[1e4, -2e3], [-2e3, 5e3]])
        lams = np.array([p.lam for p in qep_solve(mass, damping, stiffness, k=4, shift=0.0)])
        for lam in lams:
            assert np.min(np.abs(lams - np.conj(lam))) <= 1e-8 * abs(lam)

    def test_undamped_eigenvalues_are_imaginary(self):
        stiffness = np.diag((2.0 * np.pi * np.array([150.0, 400.0, 900.0])) ** 2)
        for pair in qep_solve(np.eye(3), np.zeros((3, 3)), stiffness, k=6, shift=0.0):
            assert abs(pair.lam.real) <= 1e-8 * abs(pair.lam)

    def test_shift_invert_path_finds_nearest(self):
        n = 200
        stiffness = sps.diags((2.0 * np.pi * 100.0 * np.arange(1, n + 1)) ** 2).tocsr()
        mass = sps.identity(n, format="csr")
        pairs = qep_solve(mass, sps.csr_matrix((n, n)), stiffness, k=3, shift=2j * np.pi * 310.0)
        assert pairs[0].frequency == pytest.approx(300.0, rel=1e-8)
        assert sorted(round(p.frequency) for p in pairs) == [200, 300, 400]
        for pair in pairs:
            assert qep_residual(pair.lam, pair.vector, mass, sps.csr_matrix((n, n)), stiffness) <= 1e-8

    def test_shifts_agree_on_shared_eigenvalues(self):
        n = 200
        stiffness = sps.diags((2.0 * np.pi * 100.0 * np.arange(1, n + 1)) ** 2).tocsr()
        damping = sps.diags(np.full(n, 10.0)).tocsr()
        mass = sps.identity(n, format="csr")
        low = qep_solve(mass, damping, stiffness, k=4, shift=2j * np.pi * 300.0)
        high = qep_solve(mass, damping, stiffness, k=4, shift=2j * np.pi * 400.0)
        shared = [p.lam for p in low if any(abs(p.lam - q.lam) < 1.0 for q in high)]
        assert len(shared) >= 2
        for lam in shared:
            closest = min((q.lam for q in high), key=lambda q: abs(q - lam))
            assert abs(closest - lam) <= 1e-8 * abs(lam)

    def test_repeated_runs_are_identical(self):
        n = 200
        stiffness = sps.diags((2.0 * np.pi * 100.0 * np.arange(1, n + 1)) ** 2).tocsr()
        args = (sps.identity(n, format="csr"), sps.csr_matrix((n, n)), stiffness)
        first = [p.lam for p in qep_solve(*args, k=3, shift=2j * np.pi * 310.0)]
        second = [p.lam for p in qep_solve(*args, k=3, shift=2j * np.pi * 310.0)]
        assert first == second

    def test_too_many_pairs_requested(self):
        with pytest.raises(ValidationError):
            qep_solve(np.eye(2), np.zeros((2, 2)), np.eye(2), k=5, shift=0.0)

    def test_random_symmetric_pencil_matches_determinant_roots(self):
        rng = np.random.default_rng(7)
        x, y, z = (rng.standard_normal((6, 6)) for _ in range(3))
        mass = x @ x.T / 6.0 + np.eye(6)
        damping = 0.5 * (y + y.T)
        stiffness = z @ z.T / 6.0 + np.eye(6)
        pairs = qep_solve(mass, damping, stiffness, k=12, shift=0.0)

        # det(lam^2 M + lam C + K) has degree 12; sample it on a circle and recover the coefficients
        radius, count = 2.0, 13
        points = radius * np.exp(2j * np.pi * np.arange(count) / count)
        dets = np.array([np.linalg.det(p * p * mass + p * damping + stiffness) for p in points])
        coefficients = np.fft.fft(dets) / count / radius ** np.arange(count)
        roots = np.roots(coefficients[::-1])

        assert len(pairs) == 12
        for pair in pairs:
            assert pair.residual <= 1e-9
            assert np.min(np.abs(roots - pair.lam)) <= 1e-6 * max(1.0, abs(pair.lam))
