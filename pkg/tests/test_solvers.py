"""Solver paths against numpy/scipy references and constructed matrices."""

import numpy as np
import pytest
import scipy.linalg

import spectra_trust as st
from spectra_trust.pencils import MatrixPencil
from spectra_trust.solvers import (
    BANDED_MAX_ORDER,
    DENSE_MAX_ORDER,
    ConvergenceError,
    EigenSolveOptions,
    FactorizationError,
    SolverError,
    StructureError,
    _band_to_tridiag,
    tridiagonal_eigenvalues,
)


def dense_to_band(A):
    n = A.shape[0]
    bw = 0
    for i in range(1, n):
        if np.any(np.diag(A, -i) != 0):
            bw = i
    band = np.zeros((bw + 1, n))
    for i in range(bw + 1):
        band[i, : n - i] = np.diag(A, -i)
    return band


def full_pencil(K, M):
    return MatrixPencil(K.shape[0], dense_to_band(K), dense_to_band(M))


class TestTridiagonalCore:
    @pytest.mark.parametrize("seed", range(8))
    def test_random_tridiagonal_matches_numpy(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 200))
        d = rng.normal(size=n)
        e = rng.normal(size=n - 1)
        got = tridiagonal_eigenvalues(d, e)
        T = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
        want = np.linalg.eigvalsh(T)
        scale = np.max(np.abs(want))
        assert np.max(np.abs(got - want)) < 1e-12 * scale

    def test_single_entry(self):
        assert tridiagonal_eigenvalues(np.array([3.0]), np.array([])) == 3.0

    def test_clustered_eigenvalues(self):
        d = np.array([1.0, 1.0, 1.0, 1.0 + 1e-12, 5.0])
        e = np.full(4, 1e-13)
        got = tridiagonal_eigenvalues(d, e)
        want = np.linalg.eigvalsh(np.diag(d) + np.diag(e, 1) + np.diag(e, -1))
        assert np.allclose(got, want, atol=1e-11)

    def test_convergence_error_carries_index(self):
        rng = np.random.default_rng(7)
        d = rng.normal(size=50)
        e = rng.normal(size=49)
        with pytest.raises(ConvergenceError) as err:
            tridiagonal_eigenvalues(
                d, e, EigenSolveOptions(max_iterations_per_eigenvalue=1)
            )
        assert isinstance(err.value.index, int)
        assert 0 <= err.value.index < 50


class TestBandReduction:
    @pytest.mark.parametrize("bw", [1, 2, 3, 4, 5])
    def test_matches_scipy_eig_banded(self, bw):
        rng = np.random.default_rng(100 + bw)
        n = 60
        band = rng.normal(size=(bw + 1, n))
        for i in range(1, bw + 1):
            band[i, n - i :] = 0.0
        got_band = np.zeros((bw + 2, n))
        got_band[: bw + 1] = band
        _band_to_tridiag(got_band, bw)
        got = tridiagonal_eigenvalues(got_band[0], got_band[1, : n - 1])
        want = scipy.linalg.eig_banded(band, lower=True, eigvals_only=True)
        scale = np.max(np.abs(want))
        assert np.max(np.abs(got - want)) < 1e-11 * scale

    def test_diagonal_input_passes_through(self):
        W = np.zeros((2, 4))
        W[0] = [4.0, 1.0, 3.0, 2.0]
        _band_to_tridiag(W, 0)
        assert np.array_equal(W[0], [4.0, 1.0, 3.0, 2.0])
        assert np.all(W[1] == 0.0)


class TestDenseSolver:
    def test_constructed_spectrum_is_recovered(self):
        # pencil built to have eigenvalues exactly 1..12: K = L B L^T,
        # M = L L^T with B = Q diag(1..12) Q^T
        rng = np.random.default_rng(3)
        n = 12
        lam = np.arange(1.0, n + 1)
        Q, _ = np.linalg.qr(rng.normal(size=(n, n)))
        B = Q @ np.diag(lam) @ Q.T
        L = np.tril(rng.normal(size=(n, n)), -1) + np.diag(rng.uniform(1.0, 2.0, n))
        K = L @ B @ L.T
        M = L @ L.T
        K = 0.5 * (K + K.T)
        M = 0.5 * (M + M.T)
        got = st.solve_dense(full_pencil(K, M))
        assert np.max(np.abs(got - lam)) < 1e-11 * n

    @pytest.mark.parametrize("seed", range(4))
    def test_random_pencil_matches_scipy(self, seed):
        rng = np.random.default_rng(40 + seed)
        n = int(rng.integers(3, 40))
        A = rng.normal(size=(n, n))
        K = 0.5 * (A + A.T)
        G = rng.normal(size=(n, n))
        M = G @ G.T + n * np.eye(n)
        got = st.solve_dense(full_pencil(K, M))
        want = scipy.linalg.eigh(K, M, eigvals_only=True)
        scale = np.max(np.abs(want))
        assert np.max(np.abs(got - want)) < 1e-11 * scale

    def test_rejects_indefinite_mass(self):
        K = np.eye(3)
        M = np.diag([1.0, -1.0, 1.0])
        with pytest.raises(FactorizationError):
            st.solve_dense(full_pencil(K, M))

    def test_order_cap(self):
        n = DENSE_MAX_ORDER + 1
        pen = MatrixPencil(n, np.ones((1, n)), np.ones((1, n)))
        with pytest.raises(SolverError):
            st.solve_dense(pen)


class TestBandedSolver:
    def test_diagonal_mass_path_matches_dense(self):
        pen = st.lumped_pencil(st.assemble_linear_triangle_2d(st.UniformMesh(16)))
        banded = st.solve_banded(pen)
        dense = st.solve_dense(pen)
        assert np.max(np.abs(banded - dense) / np.abs(dense)) < 1e-12

    def test_diagonal_stiffness_path_matches_dense(self):
        # agreement is relative to the spectral radius: the pencil spans
        # six decades, so per-eigenvalue relative comparison is meaningless
        pen = st.assemble_legendre_1d(100)
        banded = st.solve_banded(pen)
        dense = st.solve_dense(pen)
        assert np.max(np.abs(banded - dense)) < 1e-12 * dense[-1]

    def test_nonuniform_diagonal_mass(self):
        # scaled congruence must handle a genuinely varying diagonal
        rng = np.random.default_rng(11)
        n = 30
        K = np.diag(rng.uniform(1, 3, n))
        K += np.diag(rng.normal(size=n - 2), -2) + np.diag(rng.normal(size=n - 2), 2)
        K = 0.5 * (K + K.T)
        diag = rng.uniform(0.5, 4.0, n)
        pen = MatrixPencil(n, dense_to_band(K), diag[None, :].copy())
        got = st.solve_banded(pen)
        want = scipy.linalg.eigh(K, np.diag(diag), eigvals_only=True)
        assert np.max(np.abs(got - want)) < 1e-11 * np.max(np.abs(want))

    def test_neither_diagonal_falls_back_to_dense(self):
        pen = st.assemble_quadratic_1d(st.UniformMesh(32))
        assert np.array_equal(st.solve_banded(pen), st.solve_dense(pen))

    def test_neither_diagonal_beyond_dense_cap_is_structural_error(self):
        n = DENSE_MAX_ORDER + 1
        pen = MatrixPencil(n, np.ones((2, n)), np.ones((2, n)))
        with pytest.raises(StructureError):
            st.solve_banded(pen)

    def test_order_cap(self):
        n = BANDED_MAX_ORDER + 1
        pen = MatrixPencil(n, np.ones((1, n)), np.ones((1, n)))
        with pytest.raises(SolverError):
            st.solve_banded(pen)

    def test_rejects_nonpositive_diagonal_mass(self):
        pen = MatrixPencil(3, np.ones((2, 3)), np.array([[1.0, 0.0, 1.0]]))
        with pytest.raises(FactorizationError):
            st.solve_banded(pen)

    def test_rejects_nonpositive_diagonal_stiffness(self):
        pen = MatrixPencil(3, np.array([[1.0, -2.0, 1.0]]), np.ones((2, 3)))
        with pytest.raises(FactorizationError):
            st.solve_banded(pen)


class TestOptions:
    def test_defaults(self):
        opts = EigenSolveOptions()
        assert opts.max_iterations_per_eigenvalue == 60
        assert opts.convergence_tol == 1e-14

    @pytest.mark.parametrize("tol", [0.0, -1e-12, 1e-7, 1.0])
    def test_tolerance_range(self, tol):
        with pytest.raises(ValueError):
            EigenSolveOptions(convergence_tol=tol)

    def test_boundary_tolerance_accepted(self):
        assert EigenSolveOptions(convergence_tol=1e-8).convergence_tol == 1e-8

    def test_iteration_floor(self):
        with pytest.raises(ValueError):
            EigenSolveOptions(max_iterations_per_eigenvalue=0)


class TestStructuredProblems:
    @pytest.mark.parametrize("n", [4, 8, 16, 32])
    def test_linear_consistent_dense_vs_closed_form(self, n):
        mesh = st.UniformMesh(n)
        got = st.solve_dense(st.assemble_linear_1d(mesh))
        want = st.linear_fem_1d(mesh).values
        assert np.max(np.abs(got - want) / want) < 1e-9

    def test_quadratic_error_scales_like_fourth_power(self):
        # relative error of the low modes behaves like lambda^2 h^4 / 720
        n = 64
        pen = st.assemble_quadratic_1d(st.UniformMesh(n))
        vals = st.solve_banded(pen)
        j = np.arange(1, 10, dtype=float)
        exact = (j * np.pi) ** 2
        rel = (vals[:9] - exact) / exact
        model = exact**2 * (1.0 / n) ** 4 / 720.0
        assert np.allclose(rel, model, rtol=0.15)

    def test_legendre_low_modes_spectrally_accurate(self):
        vals = st.solve_banded(st.assemble_legendre_1d(64))
        j = np.arange(1, 21, dtype=float)
        exact = (j * np.pi / 2.0) ** 2
        assert np.max(np.abs(vals[:20] - exact) / exact) < 1e-12
