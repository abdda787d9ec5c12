"""Closed-form discrete spectra of uniform-mesh Laplace discretizations.

Every method with a known dispersion relation is evaluated here directly
from the mode angles theta_j = j*pi/n, so these values serve as exact
references for the matrix-pencil solvers.  All formulas are stated for an
interval (or square side) of extent L with h = L/n; the classic unit-domain
expressions are recovered at L = 1.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DomainSpec",
    "UniformMesh",
    "ModeIndex",
    "Method",
    "DiscreteSpectrum",
    "exact_spectrum",
    "linear_fem_1d",
    "lumped_fd_1d",
    "extrapolated_1d",
    "five_point_lumped_2d",
    "nine_point_lumped_2d",
    "bilinear_consistent_2d",
    "extrapolated_2d",
    "closed_form_2d",
    "middle_mode",
]

_UNIT_BALL = {1: 2.0, 2: math.pi, 3: 4.0 * math.pi / 3.0}


@dataclass(frozen=True)
class DomainSpec:
    """Interval (dim 1), square (dim 2), or cube (dim 3, asymptotics only)."""

    dim: int
    extent: float = 1.0

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise ValueError(f"unsupported dimension {self.dim}")
        if self.extent <= 0:
            raise ValueError("extent must be positive")

    @property
    def volume(self) -> float:
        return self.extent**self.dim

    @property
    def unit_ball_volume(self) -> float:
        return _UNIT_BALL[self.dim]


@dataclass(frozen=True)
class UniformMesh:
    """n equal cells per axis on a domain of the given extent."""

    n: int
    extent: float = 1.0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"mesh too coarse: need n >= 2, got {self.n}")
        if self.extent <= 0:
            raise ValueError("extent must be positive")

    @property
    def h(self) -> float:
        return self.extent / self.n

    @property
    def interior(self) -> int:
        return self.n - 1


@dataclass(frozen=True)
class ModeIndex:
    """Per-axis mode numbers j (and k in 2D), each in [1, n-1]."""

    indices: tuple
    n: int

    def __post_init__(self):
        for j in self.indices:
            if not 1 <= j <= self.n - 1:
                raise ValueError(f"mode index {j} outside [1, {self.n - 1}]")

    @property
    def theta(self) -> tuple:
        return tuple(j * math.pi / self.n for j in self.indices)


class Method(enum.Enum):
    LINEAR_1D = "linear1d"
    LUMPED_1D = "lumped1d"
    EXTRAPOLATED_1D = "extrap1d"
    FIVE_POINT_LUMPED_2D = "fivepoint2d"
    NINE_POINT_LUMPED_2D = "ninepoint2d"
    BILINEAR_CONSISTENT_2D = "bilinear2d"
    EXTRAPOLATED_2D = "extrap2d"
    QUADRATIC_1D = "quadratic1d"
    QUADRATIC_Q2_2D = "q2_2d"
    LEGENDRE_SPECTRAL_1D = "legendre1d"
    LEGENDRE_SPECTRAL_2D = "legendre2d"
    EXACT = "exact"

    @property
    def dim(self) -> int:
        return 2 if "2d" in self.value else 1

    @property
    def separable(self) -> bool:
        return self in (
            Method.LUMPED_1D,
            Method.QUADRATIC_1D,
            Method.LEGENDRE_SPECTRAL_1D,
        )


# 2D tag produced when a separable 1D spectrum is tensorized.
TENSOR_METHOD = {
    Method.LUMPED_1D: Method.FIVE_POINT_LUMPED_2D,
    Method.QUADRATIC_1D: Method.QUADRATIC_Q2_2D,
    Method.LEGENDRE_SPECTRAL_1D: Method.LEGENDRE_SPECTRAL_2D,
    Method.EXACT: Method.EXACT,
}


@dataclass(frozen=True)
class DiscreteSpectrum:
    """Eigenvalues of one discretization, labeled by mode index.

    labels has shape (count,) in 1D and (count, 2) in 2D; values is the
    matching eigenvalue array.  When ordering == "magnitude" the values are
    ascending with lexicographic label tie-break; level-based orderings keep
    their enumeration order instead.
    """

    method: Method
    n: int
    extent: float
    labels: np.ndarray
    values: np.ndarray
    ordering: str = "magnitude"

    def __post_init__(self):
        if len(self.labels) != len(self.values):
            raise ValueError("labels/values length mismatch")
        if np.any(self.values <= 0):
            raise ValueError("eigenvalues must be strictly positive")
        if self.ordering == "magnitude" and np.any(np.diff(self.values) < 0):
            raise ValueError("magnitude-ordered spectrum must be ascending")

    def __len__(self) -> int:
        return len(self.values)

    def value_at(self, *mode: int) -> float:
        """Eigenvalue for a mode label; accepts j or (j, k)."""
        lab = self.labels
        if lab.ndim == 1:
            hit = np.nonzero(lab == mode[0])[0]
        else:
            hit = np.nonzero((lab[:, 0] == mode[0]) & (lab[:, 1] == mode[1]))[0]
        if len(hit) == 0:
            raise KeyError(f"mode {mode} not present")
        return float(self.values[hit[0]])


def _sorted_1d(method, mesh, values):
    labels = np.arange(1, mesh.n, dtype=np.int64)
    order = np.lexsort((labels, values))
    return DiscreteSpectrum(method, mesh.n, mesh.extent, labels[order], values[order])


def _sorted_2d(method, n, extent, grid):
    """Flatten an (n-1, n-1) grid of lambda_{j,k} into a sorted spectrum."""
    m = grid.shape[0]
    j = np.repeat(np.arange(1, m + 1, dtype=np.int64), m)
    k = np.tile(np.arange(1, m + 1, dtype=np.int64), m)
    vals = grid.ravel()
    order = np.lexsort((k, j, vals))
    labels = np.stack([j[order], k[order]], axis=1)
    return DiscreteSpectrum(method, n, extent, labels, vals[order])


def _two_one_minus_cos(theta):
    # 2(1-cos t) as 4 sin^2(t/2): no cancellation for small t
    return 4.0 * np.sin(theta / 2.0) ** 2


def middle_mode(n: int) -> int:
    """Index n/2 of the middle eigenvalue; defined only for even n."""
    if n % 2 != 0:
        raise ValueError(f"middle mode needs even n, got {n}")
    return n // 2


def exact_spectrum(domain: DomainSpec, count: int) -> DiscreteSpectrum:
    """First `count` exact Dirichlet Laplace eigenvalues, with multiplicity."""
    if count < 1:
        raise ValueError("count must be >= 1")
    base = (math.pi / domain.extent) ** 2
    if domain.dim == 1:
        j = np.arange(1, count + 1, dtype=np.int64)
        return DiscreteSpectrum(
            Method.EXACT, count + 1, domain.extent, j, base * j.astype(float) ** 2
        )
    if domain.dim == 2:
        # box side J with J^2 >= 2*count always covers the smallest `count`
        # values: any omitted (j,k) has j^2+k^2 > J^2 >= 4*count/pi + slack
        J = math.isqrt(2 * count - 1) + 1
        grid = base * (
            np.arange(1, J + 1, dtype=float)[:, None] ** 2
            + np.arange(1, J + 1, dtype=float)[None, :] ** 2
        )
        spec = _sorted_2d(Method.EXACT, J + 1, domain.extent, grid)
        return DiscreteSpectrum(
            Method.EXACT, J + 1, domain.extent, spec.labels[:count], spec.values[:count]
        )
    raise ValueError("exact spectra implemented for dim 1 and 2 only")


def exact_modes_1d(n: int, extent: float = 1.0) -> DiscreteSpectrum:
    """Exact eigenvalues at the discrete mode set j = 1..n-1."""
    j = np.arange(1, n, dtype=np.int64)
    vals = (j.astype(float) * math.pi / extent) ** 2
    return DiscreteSpectrum(Method.EXACT, n, extent, j, vals)


def exact_modes_2d(n: int, extent: float = 1.0) -> DiscreteSpectrum:
    """Exact eigenvalues on the (n-1) x (n-1) discrete mode lattice."""
    j = np.arange(1, n, dtype=float)
    base = (math.pi / extent) ** 2
    grid = base * (j[:, None] ** 2 + j[None, :] ** 2)
    return _sorted_2d(Method.EXACT, n, extent, grid)


def _theta(mesh):
    return np.arange(1, mesh.n) * (math.pi / mesh.n)


def linear_fem_1d(mesh: UniformMesh) -> DiscreteSpectrum:
    """lambda_j = (3/h^2) * 2(1-cos t_j) / (2+cos t_j), t_j = j*pi/n."""
    t = _theta(mesh)
    vals = (3.0 / mesh.h**2) * _two_one_minus_cos(t) / (2.0 + np.cos(t))
    return _sorted_1d(Method.LINEAR_1D, mesh, vals)


def lumped_fd_1d(mesh: UniformMesh) -> DiscreteSpectrum:
    """Mass-lumped linear elements, equal to the central difference scheme."""
    t = _theta(mesh)
    vals = _two_one_minus_cos(t) / mesh.h**2
    return _sorted_1d(Method.LUMPED_1D, mesh, vals)


def extrapolated_1d(mesh: UniformMesh) -> DiscreteSpectrum:
    """Mode-wise average of the consistent and lumped 1D eigenvalues.

    The averaging cancels the leading h^2 dispersion error, leaving
    lambda_j = (j pi)^2 + h^4 (j pi)^6 / 360 + ... on the unit interval.
    """
    t = _theta(mesh)
    consistent = (3.0 / mesh.h**2) * _two_one_minus_cos(t) / (2.0 + np.cos(t))
    lumped = _two_one_minus_cos(t) / mesh.h**2
    return _sorted_1d(Method.EXTRAPOLATED_1D, mesh, 0.5 * (consistent + lumped))


def _five_point_grid(mesh):
    t = _theta(mesh)
    one = _two_one_minus_cos(t) / mesh.h**2
    return one[:, None] + one[None, :]


def _nine_point_grid(mesh):
    t = _theta(mesh)
    c = np.cos(t)
    edge = _two_one_minus_cos(t)
    cross = 4.0 * (1.0 - c[:, None] * c[None, :])
    return (edge[:, None] + edge[None, :] + cross) / (3.0 * mesh.h**2)


def _bilinear_grid(mesh):
    t = _theta(mesh)
    c = np.cos(t)
    edge = _two_one_minus_cos(t)
    num = edge[:, None] + edge[None, :] + 4.0 * (1.0 - c[:, None] * c[None, :])
    den = 4.0 + 2.0 * (c[:, None] + c[None, :]) + c[:, None] * c[None, :]
    return (3.0 / mesh.h**2) * num / den


def five_point_lumped_2d(mesh: UniformMesh) -> DiscreteSpectrum:
    """Lumped linear triangles: the 5-point stencil, separable in (j, k)."""
    return _sorted_2d(
        Method.FIVE_POINT_LUMPED_2D, mesh.n, mesh.extent, _five_point_grid(mesh)
    )


def nine_point_lumped_2d(mesh: UniformMesh) -> DiscreteSpectrum:
    """Lumped bilinear elements: the 9-point stencil."""
    return _sorted_2d(
        Method.NINE_POINT_LUMPED_2D, mesh.n, mesh.extent, _nine_point_grid(mesh)
    )


def bilinear_consistent_2d(mesh: UniformMesh) -> DiscreteSpectrum:
    """Consistent-mass bilinear elements on the n x n square partition."""
    return _sorted_2d(
        Method.BILINEAR_CONSISTENT_2D, mesh.n, mesh.extent, _bilinear_grid(mesh)
    )


def extrapolated_2d(mesh: UniformMesh) -> DiscreteSpectrum:
    """Mode-wise average of the bilinear consistent and 5-point values."""
    grid = 0.5 * (_bilinear_grid(mesh) + _five_point_grid(mesh))
    return _sorted_2d(Method.EXTRAPOLATED_2D, mesh.n, mesh.extent, grid)


_CLOSED_FORM_2D = {
    Method.FIVE_POINT_LUMPED_2D: five_point_lumped_2d,
    Method.NINE_POINT_LUMPED_2D: nine_point_lumped_2d,
    Method.BILINEAR_CONSISTENT_2D: bilinear_consistent_2d,
    Method.EXTRAPOLATED_2D: extrapolated_2d,
}


def closed_form_2d(method: Method, mesh: UniformMesh) -> DiscreteSpectrum:
    try:
        return _CLOSED_FORM_2D[method](mesh)
    except KeyError:
        raise ValueError(f"no 2D closed form for {method.value}") from None
