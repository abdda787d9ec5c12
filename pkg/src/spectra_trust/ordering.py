"""Enumeration orders for 2D mode lattices and tensor-product spectra.

A 2D mode index (j, k) can be walked level by level in several ways; the
level structure determines which eigenvalues count as the "first N" when a
spectrum is scanned for reliability.  Three lattice enumerations are
provided (square shells, anti-diagonals, quarter-circle rings) plus plain
magnitude order.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import TENSOR_METHOD, DiscreteSpectrum, Method

__all__ = [
    "OrderingStrategy",
    "LevelGroup",
    "square_levels",
    "triangular_levels",
    "circular_levels",
    "levels",
    "enumerate_lattice",
    "tensorize",
    "apply_ordering",
]


class OrderingStrategy(enum.Enum):
    SQUARE = "square"
    TRIANGULAR = "triangular"
    CIRCULAR = "circular"
    MAGNITUDE = "magnitude"


@dataclass(frozen=True)
class LevelGroup:
    """Members of one enumeration level and the count up to and including it."""

    level: int
    members: tuple
    cumulative_count: int


def _accumulate(member_lists):
    groups = []
    total = 0
    for lvl, members in enumerate(member_lists, start=1):
        total += len(members)
        groups.append(LevelGroup(lvl, tuple(members), total))
    return groups


def square_levels(max_level: int) -> list:
    """Level l walks the bent row (1,l)..(l,l) then the column (l,l-1)..(l,1).

    Level l contributes 2l - 1 members, so the cumulative count is l^2: the
    levels tile growing square blocks of the lattice.
    """
    _check_level(max_level)
    out = []
    for lvl in range(1, max_level + 1):
        members = [(j, lvl) for j in range(1, lvl + 1)]
        members += [(lvl, k) for k in range(lvl - 1, 0, -1)]
        out.append(members)
    return _accumulate(out)


def triangular_levels(max_level: int) -> list:
    """Level l is the anti-diagonal j + k = l + 1 in zigzag order.

    Members alternate from the ends inward: (1,l), (l,1), (2,l-1),
    (l-1,2), ...  Cumulative count l(l+1)/2.
    """
    _check_level(max_level)
    out = []
    for lvl in range(1, max_level + 1):
        members = []
        i, j = 1, lvl
        while i < j:
            members.append((i, lvl + 1 - i))
            members.append((j, lvl + 1 - j))
            i += 1
            j -= 1
        if i == j:
            members.append((i, lvl + 1 - i))
        out.append(members)
    return _accumulate(out)


def circular_levels(max_level: int) -> list:
    """Ring l holds 1 + (l-1)^2 < j^2 + k^2 <= 1 + l^2, sorted by radius then j.

    Ring areas grow linearly, with cumulative count close to pi l^2 / 4:
    one quadrant of a disc of radius l.
    """
    _check_level(max_level)
    out = []
    for lvl in range(1, max_level + 1):
        lo = 1 + (lvl - 1) ** 2
        hi = 1 + lvl**2
        members = []
        for j in range(1, lvl + 1):
            kmin_sq = lo - j * j
            kmax_sq = hi - j * j
            if kmax_sq < 1:
                continue
            kmin = math.isqrt(kmin_sq) + 1 if kmin_sq >= 1 else 1
            kmax = math.isqrt(kmax_sq)
            members.extend((j, k) for k in range(kmin, kmax + 1))
        members.sort(key=lambda jk: (jk[0] ** 2 + jk[1] ** 2, jk[0]))
        out.append(members)
    return _accumulate(out)


def _check_level(max_level):
    if max_level < 1:
        raise ValueError("max_level must be >= 1")


_LEVEL_FUNCS = {
    OrderingStrategy.SQUARE: square_levels,
    OrderingStrategy.TRIANGULAR: triangular_levels,
    OrderingStrategy.CIRCULAR: circular_levels,
}


def levels(strategy: OrderingStrategy, max_level: int) -> list:
    try:
        return _LEVEL_FUNCS[strategy](max_level)
    except KeyError:
        raise ValueError(f"{strategy.value} has no level structure") from None


def enumerate_lattice(strategy: OrderingStrategy, m: int) -> np.ndarray:
    """All m^2 pairs of [1, m]^2 in strategy order, shape (m^2, 2).

    Levels reaching outside the lattice are truncated to members with
    j, k <= m; magnitude order is undefined without eigenvalues.
    """
    if strategy is OrderingStrategy.MAGNITUDE:
        raise ValueError("magnitude order requires eigenvalues, not a lattice")
    if m < 1:
        raise ValueError("m must be >= 1")
    if strategy is OrderingStrategy.SQUARE:
        max_level = m
    elif strategy is OrderingStrategy.TRIANGULAR:
        max_level = 2 * m - 1
    else:
        # smallest l with 1 + l^2 >= 2 m^2 closes the ring past (m, m)
        max_level = math.isqrt(2 * m * m - 2) + 1
    pairs = []
    for group in levels(strategy, max_level):
        pairs.extend(jk for jk in group.members if jk[0] <= m and jk[1] <= m)
    out = np.array(pairs, dtype=np.int64)
    if out.shape != (m * m, 2):
        raise AssertionError("lattice enumeration does not cover [1, m]^2")
    return out


def _values_by_label(spec: DiscreteSpectrum) -> np.ndarray:
    m = int(spec.labels.max())
    out = np.zeros(m + 1)
    out[spec.labels] = spec.values
    return out


def tensorize(
    spec_1d: DiscreteSpectrum,
    strategy: OrderingStrategy = OrderingStrategy.MAGNITUDE,
) -> DiscreteSpectrum:
    """Tensor-product 2D spectrum lambda_{j,k} = lambda_j + lambda_k.

    Valid only for methods whose 2D matrices are the Kronecker sums of the
    1D ones, which is exactly the diagonal-mass and spectral families; the
    consistent-mass 2D stencils couple the axes and are rejected.
    """
    if spec_1d.labels.ndim != 1:
        raise ValueError("tensorize expects a 1D spectrum")
    method = spec_1d.method
    if method is not Method.EXACT and not method.separable:
        raise ValueError(f"{method.value} is not a tensor-product method")
    v = _values_by_label(spec_1d)
    m = len(v) - 1
    method_2d = TENSOR_METHOD[method]
    if strategy is OrderingStrategy.MAGNITUDE:
        grid = v[1:, None] + v[None, 1:]
        j = np.repeat(np.arange(1, m + 1, dtype=np.int64), m)
        k = np.tile(np.arange(1, m + 1, dtype=np.int64), m)
        vals = grid.ravel()
        order = np.lexsort((k, j, vals))
        labels = np.stack([j[order], k[order]], axis=1)
        return DiscreteSpectrum(
            method_2d, spec_1d.n, spec_1d.extent, labels, vals[order]
        )
    labels = enumerate_lattice(strategy, m)
    vals = v[labels[:, 0]] + v[labels[:, 1]]
    return DiscreteSpectrum(
        method_2d, spec_1d.n, spec_1d.extent, labels, vals, ordering=strategy.value
    )


def apply_ordering(
    spec_2d: DiscreteSpectrum, strategy: OrderingStrategy
) -> DiscreteSpectrum:
    """Re-enumerate a full-lattice 2D spectrum under the given strategy."""
    if spec_2d.labels.ndim != 2:
        raise ValueError("apply_ordering expects a 2D spectrum")
    m = int(spec_2d.labels.max())
    if len(spec_2d) != m * m:
        raise ValueError("spectrum must cover the full square mode lattice")
    if strategy is OrderingStrategy.MAGNITUDE:
        order = np.lexsort((spec_2d.labels[:, 1], spec_2d.labels[:, 0], spec_2d.values))
        return DiscreteSpectrum(
            spec_2d.method,
            spec_2d.n,
            spec_2d.extent,
            spec_2d.labels[order],
            spec_2d.values[order],
        )
    grid = np.zeros((m + 1, m + 1))
    grid[spec_2d.labels[:, 0], spec_2d.labels[:, 1]] = spec_2d.values
    labels = enumerate_lattice(strategy, m)
    vals = grid[labels[:, 0], labels[:, 1]]
    return DiscreteSpectrum(
        spec_2d.method,
        spec_2d.n,
        spec_2d.extent,
        labels,
        vals,
        ordering=strategy.value,
    )
