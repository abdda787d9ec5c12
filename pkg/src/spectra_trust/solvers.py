"""Symmetric generalized eigenvalue solvers for banded pencils.

Two paths share one tridiagonal QL core (implicit Wilkinson shifts,
compiled with numba):

* solve_dense: Cholesky congruence to standard form, Householder
  tridiagonalization, QL.  Capped at order 4096.
* solve_banded: when either matrix of the pencil is diagonal, a diagonal
  congruence keeps the problem banded; Givens bulge-chasing reduces the
  band to tridiagonal form without fill-in.  Capped at order 65536; falls
  back to the dense path (when small enough) if neither matrix is diagonal.

Both return the full ascending eigenvalue array.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .pencils import MatrixPencil

__all__ = [
    "EigenSolveOptions",
    "SolverError",
    "FactorizationError",
    "ConvergenceError",
    "StructureError",
    "solve_dense",
    "solve_banded",
    "tridiagonal_eigenvalues",
    "DENSE_MAX_ORDER",
    "BANDED_MAX_ORDER",
]

DENSE_MAX_ORDER = 4096
BANDED_MAX_ORDER = 65536


class SolverError(Exception):
    """Base class for eigenvalue solver failures."""


class FactorizationError(SolverError):
    """A matrix required to be positive definite is not."""


class ConvergenceError(SolverError):
    """QL iteration exceeded its per-eigenvalue budget."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"eigenvalue {index} did not converge")


class StructureError(SolverError):
    """Pencil structure unsupported by the requested path."""


@dataclass(frozen=True)
class EigenSolveOptions:
    """QL iteration controls shared by both solver paths."""

    max_iterations_per_eigenvalue: int = 60
    convergence_tol: float = 1e-14

    def __post_init__(self):
        if self.max_iterations_per_eigenvalue < 1:
            raise ValueError("max_iterations_per_eigenvalue must be >= 1")
        if not 0.0 < self.convergence_tol <= 1e-8:
            raise ValueError("convergence_tol must lie in (0, 1e-8]")


@njit(cache=True)
def _ql_implicit_shift(d, e, max_iter, tol):
    """In-place QL with implicit shifts on (d, e); e[n-1] is workspace.

    Returns -1 on success, else the index whose deflation exceeded
    max_iter iterations.  EISPACK tql1 rotation form: no divisions by
    intermediate zeros can occur while the off-diagonal test fails.
    """
    n = d.shape[0]
    for l in range(n):
        iters = 0
        while True:
            m = l
            while m < n - 1:
                if abs(e[m]) <= tol * (abs(d[m]) + abs(d[m + 1])):
                    break
                m += 1
            if m == l:
                break
            if iters == max_iter:
                return l
            iters += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            if g >= 0.0:
                g = d[m] - d[l] + e[l] / (g + r)
            else:
                g = d[m] - d[l] + e[l] / (g - r)
            s = 1.0
            c = 1.0
            p = 0.0
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                if abs(f) >= abs(g):
                    c = g / f
                    r = math.sqrt(c * c + 1.0)
                    e[i + 1] = f * r
                    s = 1.0 / r
                    c = c * s
                else:
                    s = f / g
                    r = math.sqrt(s * s + 1.0)
                    e[i + 1] = g * r
                    c = 1.0 / r
                    s = s * c
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return -1


@njit(cache=True)
def _rotate_band(W, b, p, x0):
    """Zero A[p, x0] with a Givens rotation in the (p-1, p) plane.

    W is the (b+2, n) lower band of a symmetric matrix with one spare
    subdiagonal for the bulge.  Returns True when the rotation pushed a
    bulge to A[p+b, p-1].
    """
    n = W.shape[1]
    v = W[p - x0, x0]
    if v == 0.0:
        return False
    u = W[p - 1 - x0, x0]
    r = math.hypot(u, v)
    c = u / r
    s = -v / r
    W[p - 1 - x0, x0] = r
    W[p - x0, x0] = 0.0
    for x in range(x0 + 1, p - 1):
        uu = W[p - 1 - x, x]
        vv = W[p - x, x]
        W[p - 1 - x, x] = c * uu - s * vv
        W[p - x, x] = s * uu + c * vv
    a = W[0, p - 1]
    dd = W[0, p]
    bb = W[1, p - 1]
    W[0, p - 1] = c * c * a - 2.0 * s * c * bb + s * s * dd
    W[0, p] = s * s * a + 2.0 * s * c * bb + c * c * dd
    W[1, p - 1] = s * c * (a - dd) + (c * c - s * s) * bb
    ymax = p + b
    if ymax > n - 1:
        ymax = n - 1
    for y in range(p + 1, ymax + 1):
        uu = W[y - p + 1, p - 1]
        vv = W[y - p, p]
        W[y - p + 1, p - 1] = c * uu - s * vv
        W[y - p, p] = s * uu + c * vv
    return p + b <= n - 1 and W[b + 1, p - 1] != 0.0


@njit(cache=True)
def _band_to_tridiag(W, b):
    """Chase the band below the first subdiagonal off the matrix."""
    n = W.shape[1]
    for j in range(n - 2):
        imax = b
        if imax > n - 1 - j:
            imax = n - 1 - j
        for i in range(imax, 1, -1):
            p = j + i
            bulge = _rotate_band(W, b, p, j)
            while bulge:
                x0 = p - 1
                p = p + b
                bulge = _rotate_band(W, b, p, x0)


def warm_up():
    """Trigger JIT compilation of the numba kernels on toy inputs."""
    d = np.array([2.0, 1.0, 3.0])
    e = np.array([0.5, 0.25, 0.0])
    _ql_implicit_shift(d, e, 60, 1e-14)
    W = np.zeros((4, 3))
    W[0] = 1.0
    W[2, 0] = 0.5
    _band_to_tridiag(W, 2)


def tridiagonal_eigenvalues(
    d: np.ndarray, e: np.ndarray, options: EigenSolveOptions | None = None
) -> np.ndarray:
    """Ascending eigenvalues of tridiag(e, d, e); e has length len(d) - 1."""
    opts = options or EigenSolveOptions()
    n = len(d)
    dw = np.asarray(d, dtype=float).copy()
    ew = np.zeros(n)
    ew[: n - 1] = e
    bad = _ql_implicit_shift(
        dw, ew, opts.max_iterations_per_eigenvalue, opts.convergence_tol
    )
    if bad >= 0:
        raise ConvergenceError(int(bad))
    dw.sort()
    return dw


def _householder_tridiag(A: np.ndarray):
    """Reduce a symmetric dense matrix to tridiagonal (d, e) in place."""
    n = A.shape[0]
    e = np.zeros(n - 1 if n > 1 else 0)
    for k in range(n - 2):
        x = A[k + 1 :, k]
        alpha = math.sqrt(float(x @ x))
        if alpha == 0.0:
            continue
        if x[0] > 0.0:
            alpha = -alpha
        v = x.copy()
        v[0] -= alpha
        vnorm = math.sqrt(float(v @ v))
        if vnorm == 0.0:
            e[k] = alpha
            continue
        v /= vnorm
        B = A[k + 1 :, k + 1 :]
        p = B @ v
        w = p - (v @ p) * v
        B -= 2.0 * np.outer(v, w)
        B -= 2.0 * np.outer(w, v)
        e[k] = alpha
    if n > 1:
        e[n - 2] = A[n - 1, n - 2]
    return np.diag(A).copy(), e


def solve_dense(
    pencil: MatrixPencil, options: EigenSolveOptions | None = None
) -> np.ndarray:
    """All eigenvalues of K u = lambda M u via Cholesky congruence."""
    opts = options or EigenSolveOptions()
    if pencil.order > DENSE_MAX_ORDER:
        raise SolverError(
            f"dense solver capped at order {DENSE_MAX_ORDER}, got {pencil.order}"
        )
    K = pencil.stiffness_dense()
    M = pencil.mass_dense()
    try:
        L = np.linalg.cholesky(M)
    except np.linalg.LinAlgError as exc:
        raise FactorizationError(f"mass matrix not positive definite: {exc}") from exc
    Y = np.linalg.solve(L, K)
    C = np.linalg.solve(L, Y.T)
    C = 0.5 * (C + C.T)
    d, e = _householder_tridiag(C)
    return tridiagonal_eigenvalues(d, e, opts)


def _scaled_band(band: np.ndarray, diag: np.ndarray) -> np.ndarray:
    """Congruence D^{-1/2} A D^{-1/2} applied to a lower band array."""
    s = 1.0 / np.sqrt(diag)
    out = np.zeros_like(band)
    n = band.shape[1]
    for i in range(band.shape[0]):
        out[i, : n - i] = band[i, : n - i] * s[i:] * s[: n - i]
    return out


def solve_banded(
    pencil: MatrixPencil, options: EigenSolveOptions | None = None
) -> np.ndarray:
    """Banded path: requires a diagonal stiffness or mass matrix.

    Mass diagonal: eigenvalues of M^{-1/2} K M^{-1/2}.  Stiffness diagonal:
    reciprocals of the eigenvalues of K^{-1/2} M K^{-1/2}.  Neither: falls
    back to solve_dense when the order permits.
    """
    opts = options or EigenSolveOptions()
    if pencil.order > BANDED_MAX_ORDER:
        raise SolverError(
            f"banded solver capped at order {BANDED_MAX_ORDER}, got {pencil.order}"
        )
    if pencil.mass_is_diagonal:
        diag = pencil.mass[0]
        if np.any(diag <= 0.0):
            raise FactorizationError("diagonal mass matrix must be positive")
        band, invert = _scaled_band(pencil.stiffness, diag), False
    elif pencil.stiffness_is_diagonal:
        diag = pencil.stiffness[0]
        if np.any(diag <= 0.0):
            raise FactorizationError("diagonal stiffness matrix must be positive")
        band, invert = _scaled_band(pencil.mass, diag), True
    else:
        if pencil.order <= DENSE_MAX_ORDER:
            return solve_dense(pencil, opts)
        raise StructureError(
            "banded path needs a diagonal stiffness or mass matrix; "
            f"order {pencil.order} exceeds the dense fallback cap"
        )
    b = band.shape[0] - 1
    n = pencil.order
    W = np.zeros((b + 2, n))
    W[: b + 1] = band
    _band_to_tridiag(W, b)
    vals = tridiagonal_eigenvalues(W[0], W[1, : n - 1] if n > 1 else [], opts)
    if invert:
        if np.any(vals <= 0.0):
            raise FactorizationError("mass matrix not positive definite")
        vals = np.sort(1.0 / vals)
    return vals
