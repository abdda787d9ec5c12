"""Symmetric banded stiffness/mass pencils for the model eigenproblems.

Band storage is lower-triangle, diagonal-major: band[i, j] = A[j + i, j],
so row 0 is the main diagonal and row i holds the i-th subdiagonal padded
with trailing zeros.  All assemblies apply homogeneous Dirichlet trimming,
so only interior degrees of freedom remain.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .core import UniformMesh

__all__ = [
    "MatrixPencil",
    "band_to_dense",
    "assemble_linear_1d",
    "assemble_quadratic_1d",
    "assemble_legendre_1d",
    "assemble_linear_triangle_2d",
    "assemble_bilinear_2d",
    "lumped_pencil",
    "dump_pencil",
    "parse_pencil",
]

# 2D band arrays are (n+1, (n-1)^2); this keeps them under ~20 MB
MAX_2D_MESH = 128


@dataclass(frozen=True)
class MatrixPencil:
    """Generalized pencil (K, M) with symmetric banded storage."""

    order: int
    stiffness: np.ndarray
    mass: np.ndarray

    def __post_init__(self):
        for name, band in (("stiffness", self.stiffness), ("mass", self.mass)):
            if band.ndim != 2 or band.shape[1] != self.order:
                raise ValueError(f"{name} bands must be (rows, {self.order})")
            if band.shape[0] < 1 or band.shape[0] > self.order:
                raise ValueError(f"{name} bandwidth out of range")

    @property
    def stiffness_bandwidth(self) -> int:
        return self.stiffness.shape[0] - 1

    @property
    def mass_bandwidth(self) -> int:
        return self.mass.shape[0] - 1

    @property
    def stiffness_is_diagonal(self) -> bool:
        return self.stiffness.shape[0] == 1

    @property
    def mass_is_diagonal(self) -> bool:
        return self.mass.shape[0] == 1

    def stiffness_dense(self) -> np.ndarray:
        return band_to_dense(self.stiffness)

    def mass_dense(self) -> np.ndarray:
        return band_to_dense(self.mass)


def band_to_dense(band: np.ndarray) -> np.ndarray:
    n = band.shape[1]
    out = np.zeros((n, n))
    for i in range(band.shape[0]):
        vals = band[i, : n - i]
        idx = np.arange(n - i)
        out[idx + i, idx] = vals
        out[idx, idx + i] = vals
    return out


def _band(rows: int, order: int) -> np.ndarray:
    return np.zeros((rows, order))


def _clip(band: np.ndarray, order: int) -> np.ndarray:
    # subdiagonal rows at or beyond the order hold no entries
    if band.shape[0] > order:
        return np.ascontiguousarray(band[:order])
    return band


def assemble_linear_1d(mesh: UniformMesh) -> MatrixPencil:
    """Linear elements on n cells: K = (1/h^2) tridiag(-1, 2, -1),
    M = (1/6) tridiag(1, 4, 1), both of order n - 1."""
    order, h = mesh.interior, mesh.h
    kb = _band(2, order)
    kb[0] = 2.0 / h**2
    kb[1, : order - 1] = -1.0 / h**2
    mb = _band(2, order)
    mb[0] = 4.0 / 6.0
    mb[1, : order - 1] = 1.0 / 6.0
    return MatrixPencil(order, _clip(kb, order), _clip(mb, order))


def assemble_quadratic_1d(mesh: UniformMesh) -> MatrixPencil:
    """Quadratic elements on n cells: order 2n - 1, bandwidth 2."""
    n, h = mesh.n, mesh.h
    ke = np.array([[7.0, -8.0, 1.0], [-8.0, 16.0, -8.0], [1.0, -8.0, 7.0]])
    ke /= 3.0 * h
    me = np.array([[4.0, 2.0, -1.0], [2.0, 16.0, 2.0], [-1.0, 2.0, 4.0]])
    me *= h / 30.0
    size = 2 * n + 1
    kb = _band(3, size)
    mb = _band(3, size)
    for e in range(n):
        g = 2 * e
        for a in range(3):
            for b in range(a, 3):
                kb[b - a, g + a] += ke[a, b]
                mb[b - a, g + a] += me[a, b]
    # trim the two endpoint rows/columns
    order = size - 2
    kb = np.ascontiguousarray(kb[:, 1 : 1 + order])
    mb = np.ascontiguousarray(mb[:, 1 : 1 + order])
    for off in range(1, 3):
        kb[off, order - off :] = 0.0
        mb[off, order - off :] = 0.0
    return MatrixPencil(order, kb, mb)


def assemble_legendre_1d(order: int, extent: float = 2.0) -> MatrixPencil:
    """Modal basis phi_k = (L_k - L_{k+2}) / sqrt(4k+6) on [-1, 1].

    The normalization makes the stiffness matrix the identity; the mass
    matrix is pentadiagonal with a zero first subdiagonal.  For an interval
    of a different extent both matrices scale by powers of extent/2.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    scale = extent / 2.0
    k = np.arange(order, dtype=float)
    c = 1.0 / np.sqrt(4.0 * k + 6.0)
    kb = np.full((1, order), 1.0 / scale)
    mb = _band(3, order)
    mb[0] = scale * c**2 * (2.0 / (2.0 * k + 1.0) + 2.0 / (2.0 * k + 5.0))
    if order > 2:
        kk = k[: order - 2]
        cc = c[: order - 2] * c[2:order]
        mb[2, : order - 2] = -scale * cc * 2.0 / (2.0 * kk + 5.0)
    return MatrixPencil(order, kb, _clip(mb, order))


def assemble_linear_triangle_2d(mesh: UniformMesh) -> MatrixPencil:
    """Linear triangles from the standard diagonal split of an n x n grid.

    K = (1/h^2) blocktridiag(-I, A, -I) with A = tridiag(-1, 4, -1);
    M = (1/12) blocktridiag(D^T, H, D) with H = tridiag(1, 6, 1) and D the
    lower bidiagonal of ones.  Order (n-1)^2, bandwidth n-1.
    """
    _check_2d(mesh)
    m = mesh.interior
    order = m * m
    inv_h2 = 1.0 / mesh.h**2
    kb = _band(m + 1, order)
    kb[0] = 4.0 * inv_h2
    kb[1, : order - 1] = -inv_h2
    kb[1, m - 1 :: m] = 0.0
    kb[m, : order - m] = -inv_h2
    mb = _band(m + 1, order)
    mb[0] = 6.0 / 12.0
    mb[1, : order - 1] = 1.0 / 12.0
    mb[1, m - 1 :: m] = 0.0
    if m > 1:
        mb[m - 1, : order - (m - 1)] = 1.0 / 12.0
        mb[m - 1, 0 :: m] = 0.0
        mb[m - 1, order - (m - 1) :] = 0.0
    mb[m, : order - m] = 1.0 / 12.0
    return MatrixPencil(order, _clip(kb, order), _clip(mb, order))


def assemble_bilinear_2d(mesh: UniformMesh) -> MatrixPencil:
    """Bilinear elements on the n x n square partition.

    K = (1/(3h^2)) blocktridiag(-B, A, -B) with A = tridiag(-1, 8, -1) and
    B = tridiag(1, 1, 1); M = (1/36) blocktridiag(C, 4C, C) with
    C = tridiag(1, 4, 1).  Order (n-1)^2, bandwidth n.
    """
    _check_2d(mesh)
    m = mesh.interior
    order = m * m
    s = 1.0 / (3.0 * mesh.h**2)
    kb = _band(m + 2, order)
    kb[0] = 8.0 * s
    kb[1, : order - 1] = -s
    kb[1, m - 1 :: m] = 0.0
    if m > 1:
        kb[m - 1, : order - (m - 1)] = -s
        kb[m - 1, 0 :: m] = 0.0
        kb[m - 1, order - (m - 1) :] = 0.0
    kb[m, : order - m] = -s
    if order > m + 1:
        kb[m + 1, : order - (m + 1)] = -s
        kb[m + 1, m - 1 :: m] = 0.0
        kb[m + 1, order - (m + 1) :] = 0.0
    mb = _band(m + 2, order)
    mb[0] = 16.0 / 36.0
    mb[1, : order - 1] = 4.0 / 36.0
    mb[1, m - 1 :: m] = 0.0
    if m > 1:
        mb[m - 1, : order - (m - 1)] = 1.0 / 36.0
        mb[m - 1, 0 :: m] = 0.0
        mb[m - 1, order - (m - 1) :] = 0.0
    mb[m, : order - m] = 4.0 / 36.0
    if order > m + 1:
        mb[m + 1, : order - (m + 1)] = 1.0 / 36.0
        mb[m + 1, m - 1 :: m] = 0.0
        mb[m + 1, order - (m + 1) :] = 0.0
    return MatrixPencil(order, _clip(kb, order), _clip(mb, order))


def _check_2d(mesh):
    if mesh.n > MAX_2D_MESH:
        raise ValueError(f"2D assembly capped at n = {MAX_2D_MESH}, got {mesh.n}")


def lumped_pencil(pencil: MatrixPencil) -> MatrixPencil:
    """Replace the mass matrix by the identity.

    For the pencils assembled here the interior row sums of the mass matrix
    are exactly one, so diagonal (row-sum) lumping of the untrimmed matrix
    gives the identity on the retained degrees of freedom.
    """
    return MatrixPencil(pencil.order, pencil.stiffness, np.ones((1, pencil.order)))


def dump_pencil(pencil: MatrixPencil) -> str:
    """Serialize as 'order bandwidthK bandwidthM' plus one line per band.

    Band entries are written with repr(), the shortest decimal text that
    round-trips the binary value exactly.
    """
    buf = io.StringIO()
    buf.write(
        f"{pencil.order} {pencil.stiffness_bandwidth} {pencil.mass_bandwidth}\n"
    )
    for band in (pencil.stiffness, pencil.mass):
        for row in band:
            buf.write(" ".join(repr(v) for v in row.tolist()))
            buf.write("\n")
    return buf.getvalue()


def parse_pencil(text: str) -> MatrixPencil:
    lines = text.strip().split("\n")
    head = lines[0].split()
    if len(head) != 3:
        raise ValueError("header must be 'order bandwidthK bandwidthM'")
    order, bwk, bwm = (int(x) for x in head)
    expected = (bwk + 1) + (bwm + 1)
    if len(lines) - 1 != expected:
        raise ValueError(f"expected {expected} band rows, got {len(lines) - 1}")

    def rows(start, count):
        out = np.empty((count, order))
        for i in range(count):
            vals = lines[start + i].split()
            if len(vals) != order:
                raise ValueError(f"band row {start + i} has {len(vals)} entries")
            out[i] = [float(v) for v in vals]
        return out

    return MatrixPencil(order, rows(1, bwk + 1), rows(2 + bwk, bwm + 1))


def mass_row_sums(pencil: MatrixPencil) -> np.ndarray:
    """Row sums of the dense mass matrix (boundary rows lack trimmed terms)."""
    dense = pencil.mass_dense()
    return dense.sum(axis=1)
