"""How many computed eigenvalues sit within a relative-error tolerance.

Reference laws for the Dirichlet Laplacian (Weyl growth, the Polya and
Li-Yau lower bounds), the predicted reliable count for a method of
approximation order 2(k - m) on N degrees of freedom, and the machinery
that compares a discrete spectrum against the exact one and counts the
trustworthy part.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import DiscreteSpectrum, DomainSpec

__all__ = [
    "weyl_law",
    "pleijel_law",
    "polya_bound",
    "li_yau_sum_bound",
    "li_yau_individual_bound",
    "TheoremParams",
    "predicted_jn",
    "Pairing",
    "relative_errors",
    "count_reliable",
    "ReliabilityReport",
    "assess",
    "fit_growth_exponent",
]


def weyl_law(n: int, domain: DomainSpec) -> float:
    """Leading-order growth of the n-th Dirichlet eigenvalue.

    lambda_n ~ 4 pi^2 (n / (omega_d |Omega|))^(2/d); exact at every n for
    the unit interval, asymptotic otherwise.
    """
    if n < 1:
        raise ValueError("eigenvalue index must be >= 1")
    base = n / (domain.unit_ball_volume * domain.volume)
    return 4.0 * math.pi**2 * base ** (2.0 / domain.dim)


def pleijel_law(n: int, domain: DomainSpec) -> float:
    """Growth of lambda_n^2, the biharmonic analogue: the Weyl value squared."""
    return weyl_law(n, domain) ** 2


def polya_bound(n: int, domain: DomainSpec) -> float:
    """Lower bound lambda_n >= weyl_law(n) (holds for tiling domains)."""
    return weyl_law(n, domain)


def li_yau_sum_bound(n: int, domain: DomainSpec) -> float:
    """Lower bound on lambda_1 + ... + lambda_n: (d n / (d+2)) weyl_law(n)."""
    d = domain.dim
    return d * n / (d + 2.0) * weyl_law(n, domain)


def li_yau_individual_bound(n: int, domain: DomainSpec) -> float:
    """Lower bound lambda_n >= (d / (d+2)) weyl_law(n)."""
    d = domain.dim
    return d / (d + 2.0) * weyl_law(n, domain)


@dataclass(frozen=True)
class TheoremParams:
    """Sobolev index m, approximation order k > m, dimension d, tolerance
    exponent alpha with tol ~ h^alpha, alpha in (0, 2(k - m)]."""

    m: int
    k: int
    d: int
    alpha: float

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if self.k <= self.m:
            raise ValueError("k must exceed m")
        if self.d < 1:
            raise ValueError("d must be >= 1")
        if not 0.0 < self.alpha <= 2.0 * (self.k - self.m):
            raise ValueError(f"alpha must lie in (0, {2 * (self.k - self.m)}]")


def predicted_jn(params: TheoremParams, N: float) -> float:
    """Largest reliable index for N degrees of freedom.

    j_N = N^rho (k-1)^(-d rho) with rho = (k - m - alpha/2) / (k - m);
    eigenvalues below index j_N have relative error within O(h^alpha).
    """
    if N <= 0:
        raise ValueError("N must be positive")
    km = params.k - params.m
    rho = (km - params.alpha / 2.0) / km
    return N**rho * float(params.k - 1) ** (-params.d * rho)


class Pairing(enum.Enum):
    """How numeric eigenvalues are matched with exact ones."""

    BY_RANK = "rank"
    BY_MODE_INDEX = "mode"


def _exact_by_label(spec: DiscreteSpectrum) -> np.ndarray:
    base = (math.pi / spec.extent) ** 2
    lab = spec.labels.astype(float)
    if lab.ndim == 1:
        return base * lab**2
    return base * (lab[:, 0] ** 2 + lab[:, 1] ** 2)


def relative_errors(
    numeric: DiscreteSpectrum,
    exact: DiscreteSpectrum | None = None,
    pairing: Pairing = Pairing.BY_RANK,
) -> np.ndarray:
    """|lambda_numeric - lambda_exact| / lambda_exact in numeric's order.

    BY_RANK matches the i-th smallest with the i-th smallest and requires a
    magnitude-ordered spectrum.  BY_MODE_INDEX matches each label (j) or
    (j, k) with its own exact eigenvalue, regardless of order.  When exact
    is omitted it is derived from the labels for the numeric spectrum's
    domain extent.
    """
    if pairing is Pairing.BY_RANK:
        if numeric.ordering != "magnitude":
            raise ValueError("rank pairing needs a magnitude-ordered spectrum")
        if exact is not None:
            ex = np.sort(exact.values)[: len(numeric)]
            if len(ex) < len(numeric):
                raise ValueError("exact spectrum shorter than numeric one")
        else:
            ex = np.sort(_exact_by_label(numeric))
        return np.abs(numeric.values - ex) / ex
    if exact is not None:
        ex = np.empty(len(numeric))
        for i in range(len(numeric)):
            mode = numeric.labels[i]
            ex[i] = (
                exact.value_at(int(mode))
                if numeric.labels.ndim == 1
                else exact.value_at(int(mode[0]), int(mode[1]))
            )
    else:
        ex = _exact_by_label(numeric)
    return np.abs(numeric.values - ex) / ex


def count_reliable(errors: np.ndarray, tol: float):
    """(total, prefix, fraction) of entries with error <= tol.

    total counts every such entry; prefix is the length of the unbroken
    run from the start; fraction = total / len(errors).
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if len(errors) == 0:
        raise ValueError("empty error sequence")
    ok = errors <= tol
    total = int(np.count_nonzero(ok))
    bad = np.nonzero(~ok)[0]
    prefix = int(bad[0]) if len(bad) else len(errors)
    return total, prefix, total / len(errors)


@dataclass(frozen=True)
class ReliabilityReport:
    method: str
    n: int
    dof: int
    tau: float
    pairing: str
    reliable_count: int
    reliable_prefix: int
    fraction: float


def assess(
    numeric: DiscreteSpectrum,
    exact: DiscreteSpectrum | None = None,
    tau: float | None = None,
    pairing: Pairing = Pairing.BY_RANK,
) -> ReliabilityReport:
    """Count eigenvalues whose relative error is within tau (default 1/n)."""
    t = 1.0 / numeric.n if tau is None else tau
    errors = relative_errors(numeric, exact, pairing)
    total, prefix, fraction = count_reliable(errors, t)
    return ReliabilityReport(
        method=numeric.method.value,
        n=numeric.n,
        dof=len(numeric),
        tau=t,
        pairing=pairing.value,
        reliable_count=total,
        reliable_prefix=prefix,
        fraction=fraction,
    )


def fit_growth_exponent(ns, counts):
    """Least-squares slope of log(count) against log(n), with r^2.

    Fits count ~ C n^p and returns (p, r_squared).
    """
    x = np.log(np.asarray(ns, dtype=float))
    y = np.asarray(counts, dtype=float)
    if len(x) < 2 or len(x) != len(y):
        raise ValueError("need at least two (n, count) pairs")
    if np.any(y <= 0):
        raise ValueError("counts must be positive to fit a power law")
    y = np.log(y)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0.0:
        r2 = 1.0
    else:
        r2 = 1.0 - float(np.sum(resid**2)) / ss_tot
    return float(slope), r2
