"""Command line front end: spectra, reliability counts, bound tables.

Every subcommand writes deterministic text: CSV (header row, LF line ends,
floats via repr so they round-trip exactly) or JSON with the same rows.
Exit codes: 0 success, 1 computation or consistency failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import core, ordering, pencils, reliability, solvers
from .core import DiscreteSpectrum, DomainSpec, Method, UniformMesh
from .ordering import OrderingStrategy
from .reliability import Pairing, TheoremParams, predicted_jn

__all__ = ["main"]

ORACLE_TOL = 1e-9

# (m, k, d) of the error model behind each method with a finite order
_THEOREM_MAP = {
    Method.LINEAR_1D: (1, 2, 1),
    Method.LUMPED_1D: (1, 2, 1),
    Method.QUADRATIC_1D: (1, 3, 1),
    Method.FIVE_POINT_LUMPED_2D: (1, 2, 2),
    Method.NINE_POINT_LUMPED_2D: (1, 2, 2),
    Method.BILINEAR_CONSISTENT_2D: (1, 2, 2),
    Method.QUADRATIC_Q2_2D: (1, 3, 2),
}

_CLI_METHODS = [m.value for m in Method if m is not Method.EXACT]


def _require_power_of_two(n: int, minimum: int, what: str):
    if n < minimum or n & (n - 1):
        raise ValueError(f"{what} must be a power of two >= {minimum}, got {n}")


def _default_extent(method: Method) -> float:
    if method in (Method.LEGENDRE_SPECTRAL_1D, Method.LEGENDRE_SPECTRAL_2D):
        return 2.0
    return 1.0


def compute_spectrum(
    method: Method, n: int, extent: float | None = None
) -> DiscreteSpectrum:
    """Spectrum of a method at per-axis resolution n (n - 1 modes per axis).

    Closed forms are used where they exist; the quadratic and modal methods
    assemble their pencils and run the matrix solvers.  Quadratic methods
    use n/2 cells per axis so every method shares the same mode count.
    """
    L = _default_extent(method) if extent is None else extent
    if method is Method.LINEAR_1D:
        return core.linear_fem_1d(UniformMesh(n, L))
    if method is Method.LUMPED_1D:
        return core.lumped_fd_1d(UniformMesh(n, L))
    if method is Method.EXTRAPOLATED_1D:
        return core.extrapolated_1d(UniformMesh(n, L))
    if method.dim == 2 and method in (
        Method.FIVE_POINT_LUMPED_2D,
        Method.NINE_POINT_LUMPED_2D,
        Method.BILINEAR_CONSISTENT_2D,
        Method.EXTRAPOLATED_2D,
    ):
        return core.closed_form_2d(method, UniformMesh(n, L))
    if method is Method.QUADRATIC_1D:
        if n % 2 or n < 4:
            raise ValueError(f"quadratic methods need even n >= 4, got {n}")
        pencil = pencils.assemble_quadratic_1d(UniformMesh(n // 2, L))
        vals = solvers.solve_banded(pencil)
        labels = np.arange(1, n, dtype=np.int64)
        return DiscreteSpectrum(method, n, L, labels, vals)
    if method is Method.LEGENDRE_SPECTRAL_1D:
        if n < 2:
            raise ValueError(f"need n >= 2, got {n}")
        pencil = pencils.assemble_legendre_1d(n - 1, L)
        vals = solvers.solve_banded(pencil)
        labels = np.arange(1, n, dtype=np.int64)
        return DiscreteSpectrum(method, n, L, labels, vals)
    if method is Method.QUADRATIC_Q2_2D:
        return ordering.tensorize(compute_spectrum(Method.QUADRATIC_1D, n, L))
    if method is Method.LEGENDRE_SPECTRAL_2D:
        return ordering.tensorize(compute_spectrum(Method.LEGENDRE_SPECTRAL_1D, n, L))
    raise ValueError(f"cannot compute spectrum for method {method.value}")


def _exact_for(spec: DiscreteSpectrum) -> np.ndarray:
    base = (math.pi / spec.extent) ** 2
    lab = spec.labels.astype(float)
    if lab.ndim == 1:
        return base * lab**2
    return base * (lab[:, 0] ** 2 + lab[:, 1] ** 2)


def _cell(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return "" if v is None else str(v)


def _render(rows: list, columns: list, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row[c]) for c in columns])
    return buf.getvalue()


def _write(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _resolve_tol(tol: str, n: int) -> float:
    if tol == "auto":
        return 1.0 / n
    value = float(tol)
    if value <= 0:
        raise ValueError("tolerance must be positive")
    return value


def cmd_spectrum(args) -> int:
    method = Method(args.method)
    strategy = OrderingStrategy(args.ordering)
    if args.n < 2:
        raise ValueError(f"need n >= 2, got {args.n}")
    spec = compute_spectrum(method, args.n)
    if strategy is not OrderingStrategy.MAGNITUDE:
        if method.dim != 2:
            raise ValueError("level orderings apply to 2D spectra only")
        spec = ordering.apply_ordering(spec, strategy)
    ex = _exact_for(spec)
    if spec.ordering == "magnitude":
        ex = np.sort(ex)
    rel = np.abs(spec.values - ex) / ex
    rows = []
    for i in range(len(spec)):
        if spec.labels.ndim == 1:
            j, k = int(spec.labels[i]), 0
        else:
            j, k = int(spec.labels[i, 0]), int(spec.labels[i, 1])
        rows.append(
            {
                "method": method.value,
                "j": j,
                "k": k,
                "numeric_value": float(spec.values[i]),
                "exact_value": float(ex[i]),
                "rel_error": float(rel[i]),
            }
        )
    columns = ["method", "j", "k", "numeric_value", "exact_value", "rel_error"]
    _write(_render(rows, columns, args.format), args.out)
    return 0


def cmd_reliability(args) -> int:
    methods = args.method or ["linear1d"]
    if args.n < 2:
        raise ValueError(f"need n >= 2, got {args.n}")
    tau = _resolve_tol(args.tol, args.n)
    rows = []
    for name in methods:
        method = Method(name)
        spec = compute_spectrum(method, args.n)
        report = reliability.assess(spec, tau=tau)
        predicted = None
        if args.tol == "auto" and method in _THEOREM_MAP:
            m, k, d = _THEOREM_MAP[method]
            predicted = predicted_jn(TheoremParams(m, k, d, 1.0), report.dof)
        rows.append(
            {
                "method": report.method,
                "n": report.n,
                "dof": report.dof,
                "tau": report.tau,
                "pairing": report.pairing,
                "reliable_count": report.reliable_count,
                "reliable_prefix": report.reliable_prefix,
                "fraction": report.fraction,
                "predicted_jn": predicted,
            }
        )
    columns = [
        "method",
        "n",
        "dof",
        "tau",
        "pairing",
        "reliable_count",
        "reliable_prefix",
        "fraction",
        "predicted_jn",
    ]
    _write(_render(rows, columns, args.format), args.out)
    return 0


def cmd_theorem(args) -> int:
    if args.case:
        cases = []
        for text in args.case:
            parts = text.split(",")
            if len(parts) != 4:
                raise ValueError(f"--case wants m,k,d,alpha, got {text!r}")
            cases.append(
                TheoremParams(int(parts[0]), int(parts[1]), int(parts[2]), float(parts[3]))
            )
    else:
        cases = [
            TheoremParams(m, k, args.dim, args.alpha)
            for m, k in ((1, 2), (1, 3), (2, 3), (2, 4))
        ]
    rows = [
        {
            "m": p.m,
            "k": p.k,
            "d": p.d,
            "alpha": p.alpha,
            "N": args.n,
            "predicted_jn": predicted_jn(p, args.n),
        }
        for p in cases
    ]
    columns = ["m", "k", "d", "alpha", "N", "predicted_jn"]
    _write(_render(rows, columns, args.format), args.out)
    return 0


def cmd_asymptotics(args) -> int:
    if args.n < 1:
        raise ValueError("need n >= 1")
    domain = DomainSpec(args.dim, 1.0)
    ns = []
    p = 1
    while p <= args.n:
        ns.append(p)
        p *= 2
    if ns[-1] != args.n:
        ns.append(args.n)
    rows = [
        {
            "dim": args.dim,
            "n": n,
            "weyl": reliability.weyl_law(n, domain),
            "pleijel": reliability.pleijel_law(n, domain),
            "polya": reliability.polya_bound(n, domain),
            "li_yau_sum": reliability.li_yau_sum_bound(n, domain),
            "li_yau_individual": reliability.li_yau_individual_bound(n, domain),
        }
        for n in ns
    ]
    columns = ["dim", "n", "weyl", "pleijel", "polya", "li_yau_sum", "li_yau_individual"]
    _write(_render(rows, columns, args.format), args.out)
    return 0


def _summary_rows(name: str, tau: float, errors: np.ndarray) -> list:
    total, prefix, fraction = reliability.count_reliable(errors, tau)
    return [
        {"kind": "tau", "method": name, "index": 0, "value": tau},
        {"kind": "count", "method": name, "index": 0, "value": float(total)},
        {"kind": "prefix", "method": name, "index": 0, "value": float(prefix)},
        {"kind": "fraction", "method": name, "index": 0, "value": fraction},
    ]


def cmd_example1(args) -> int:
    _require_power_of_two(args.n, 64, "example1 n")
    n = args.n
    tau = _resolve_tol(args.tol, n)
    rows = []
    for name in ("linear1d", "lumped1d", "legendre1d"):
        method = Method(name)
        spec = compute_spectrum(method, n, extent=2.0)
        errors = reliability.relative_errors(spec)
        rows.extend(
            {
                "kind": "relerr",
                "method": name,
                "index": j + 1,
                "value": float(errors[j]),
            }
            for j in range(len(errors))
        )
        rows.extend(_summary_rows(name, tau, errors))
    dof = n - 1
    rows.append(
        {"kind": "annotation", "method": "sqrt_N", "index": 0, "value": math.sqrt(dof)}
    )
    rows.append(
        {
            "kind": "annotation",
            "method": "two_N_over_pi",
            "index": 0,
            "value": 2.0 * dof / math.pi,
        }
    )
    _write(_render(rows, ["kind", "method", "index", "value"], args.format), args.out)
    return 0


def cmd_example2(args) -> int:
    _require_power_of_two(args.n, 16, "example2 n")
    n = args.n
    tau = _resolve_tol(args.tol, n)
    m = n - 1
    rows = []
    for name in ("bilinear2d", "ninepoint2d", "q2_2d", "legendre2d"):
        method = Method(name)
        spec = compute_spectrum(method, n, extent=2.0)
        errors = reliability.relative_errors(spec, pairing=Pairing.BY_MODE_INDEX)
        rows.extend(_summary_rows(name, tau, errors))
        ok = np.zeros((m + 1, m + 1), dtype=bool)
        ok[spec.labels[:, 0], spec.labels[:, 1]] = errors <= tau
        for j in range(1, m + 1):
            bad = np.nonzero(~ok[j, 1:])[0]
            run = int(bad[0]) if len(bad) else m
            rows.append({"kind": "region", "method": name, "index": j, "value": float(run)})
    _write(_render(rows, ["kind", "method", "index", "value"], args.format), args.out)
    return 0


def _moment_checks(pencil) -> tuple:
    """Compare eigenvalue sums with trace identities of M^{-1} K."""
    vals = solvers.solve_dense(pencil)
    X = np.linalg.solve(pencil.mass_dense(), pencil.stiffness_dense())
    t1 = float(np.trace(X))
    t2 = float(np.trace(X @ X))
    d1 = abs(float(vals.sum()) - t1) / abs(t1)
    d2 = abs(float((vals**2).sum()) - t2) / abs(t2)
    return (d1, 1) if d1 >= d2 else (d2, 2)


def _closed_form_check(pencil, reference, banded: bool) -> tuple:
    vals = solvers.solve_banded(pencil) if banded else solvers.solve_dense(pencil)
    ref = np.sort(reference.values)
    dev = np.abs(vals - ref) / ref
    i = int(np.argmax(dev))
    return float(dev[i]), i


def _cross_check(pencil) -> tuple:
    dense = solvers.solve_dense(pencil)
    banded = solvers.solve_banded(pencil)
    dev = np.abs(dense - banded) / np.abs(dense)
    i = int(np.argmax(dev))
    return float(dev[i]), i


def _corrupt(pencil):
    band = pencil.stiffness.copy()
    row = min(1, band.shape[0] - 1)
    band[row, 0] += 1e-3 * (1.0 + abs(band[row, 0]))
    return pencils.MatrixPencil(pencil.order, band, pencil.mass)


def cmd_oracle_check(args) -> int:
    max_n = args.max_n
    if not 4 <= max_n <= 128:
        raise ValueError(f"--max-n must lie in [4, 128], got {max_n}")
    ns_1d = [n for n in (4, 8, 16, 32, 64, 128) if n <= max_n]
    ns_2d = [n for n in ns_1d if n <= 32]
    corrupt_at = ("linear1d-consistent", ns_1d[-1]) if args.inject_corruption else None
    checks = []
    for n in ns_1d:
        mesh = UniformMesh(n)
        consistent = pencils.assemble_linear_1d(mesh)
        if corrupt_at == ("linear1d-consistent", n):
            consistent = _corrupt(consistent)
        checks.append(
            (
                "linear1d-consistent",
                n,
                lambda p=consistent, r=core.linear_fem_1d(mesh): _closed_form_check(
                    p, r, banded=False
                ),
            )
        )
        checks.append(
            (
                "linear1d-lumped",
                n,
                lambda p=pencils.lumped_pencil(
                    pencils.assemble_linear_1d(mesh)
                ), r=core.lumped_fd_1d(mesh): _closed_form_check(p, r, banded=True),
            )
        )
        checks.append(
            (
                "quadratic1d",
                n,
                lambda p=pencils.assemble_quadratic_1d(mesh): _moment_checks(p),
            )
        )
        checks.append(
            (
                "legendre1d",
                n,
                lambda p=pencils.assemble_legendre_1d(n): max(
                    [_cross_check(p), _moment_checks(p)]
                ),
            )
        )
    for n in ns_2d:
        mesh = UniformMesh(n)
        checks.append(
            (
                "triangle2d-lumped",
                n,
                lambda p=pencils.lumped_pencil(
                    pencils.assemble_linear_triangle_2d(mesh)
                ), r=core.five_point_lumped_2d(mesh): _closed_form_check(
                    p, r, banded=True
                ),
            )
        )
        checks.append(
            (
                "triangle2d-consistent",
                n,
                lambda p=pencils.assemble_linear_triangle_2d(mesh): _moment_checks(p),
            )
        )
        checks.append(
            (
                "bilinear2d-consistent",
                n,
                lambda p=pencils.assemble_bilinear_2d(mesh), r=core.bilinear_consistent_2d(
                    mesh
                ): _closed_form_check(p, r, banded=False),
            )
        )
        checks.append(
            (
                "bilinear2d-lumped",
                n,
                lambda p=pencils.lumped_pencil(
                    pencils.assemble_bilinear_2d(mesh)
                ), r=core.nine_point_lumped_2d(mesh): _closed_form_check(
                    p, r, banded=True
                ),
            )
        )
    lines = []
    failed = 0
    for name, n, run in checks:
        dev, idx = run()
        if dev <= ORACLE_TOL:
            lines.append(f"PASS {name} n={n}: max rel deviation {dev!r}")
        else:
            failed += 1
            lines.append(
                f"FAIL {name} n={n}: max rel deviation {dev!r} "
                f"at eigenvalue {idx} (tolerance {ORACLE_TOL!r})"
            )
    if failed:
        lines.append(
            f"oracle check: {len(checks)} combinations, "
            f"{len(checks) - failed} passed, {failed} failed"
        )
    else:
        lines.append(f"oracle check: {len(checks)} combinations, all passed")
    _write("\n".join(lines) + "\n", args.out)
    return 1 if failed else 0


def cmd_dump_pencil(args) -> int:
    n = args.n
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    mesh = UniformMesh(n)
    if args.pencil == "linear1d":
        pencil = pencils.assemble_linear_1d(mesh)
    elif args.pencil == "lumped1d":
        pencil = pencils.lumped_pencil(pencils.assemble_linear_1d(mesh))
    elif args.pencil == "quadratic1d":
        pencil = pencils.assemble_quadratic_1d(mesh)
    elif args.pencil == "legendre1d":
        pencil = pencils.assemble_legendre_1d(n)
    elif args.pencil == "triangle2d":
        pencil = pencils.assemble_linear_triangle_2d(mesh)
    else:
        pencil = pencils.assemble_bilinear_2d(mesh)
    _write(pencils.dump_pencil(pencil), args.out)
    return 0


def _add_output_options(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", default=None, help="output path (default stdout)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectra-trust",
        description="Discrete Laplace spectra and their trustworthy range.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="eigenvalues of one method with errors")
    p.add_argument("--method", choices=_CLI_METHODS, required=True)
    p.add_argument("--n", type=int, default=64)
    p.add_argument(
        "--ordering",
        choices=[s.value for s in OrderingStrategy],
        default="magnitude",
    )
    _add_output_options(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("reliability", help="reliable eigenvalue counts")
    p.add_argument("--method", action="append", choices=_CLI_METHODS)
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--tol", default="auto", help="relative tolerance or 'auto' (1/n)")
    _add_output_options(p)
    p.set_defaults(func=cmd_reliability)

    p = sub.add_parser("theorem", help="predicted reliable index table")
    p.add_argument("--case", action="append", help="m,k,d,alpha (repeatable)")
    p.add_argument("--n", type=int, default=2**20, help="degrees of freedom N")
    p.add_argument("--dim", type=int, default=1, choices=(1, 2, 3))
    p.add_argument("--alpha", type=float, default=1.0)
    _add_output_options(p)
    p.set_defaults(func=cmd_theorem)

    p = sub.add_parser("example1", help="interval study: three methods, full range")
    p.add_argument("--n", type=int, default=4096)
    p.add_argument("--tol", default="auto")
    _add_output_options(p)
    p.set_defaults(func=cmd_example1)

    p = sub.add_parser("example2", help="square study: four methods, mode regions")
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--tol", default="auto")
    _add_output_options(p)
    p.set_defaults(func=cmd_example2)

    p = sub.add_parser("asymptotics", help="growth laws and lower bounds")
    p.add_argument("--dim", type=int, default=2, choices=(1, 2, 3))
    p.add_argument("--n", type=int, default=10000)
    _add_output_options(p)
    p.set_defaults(func=cmd_asymptotics)

    p = sub.add_parser("oracle-check", help="solver vs closed-form consistency")
    p.add_argument("--max-n", type=int, default=32)
    p.add_argument("--inject-corruption", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("dump-pencil", help="serialize an assembled pencil")
    p.add_argument(
        "--pencil",
        required=True,
        choices=[
            "linear1d",
            "lumped1d",
            "quadratic1d",
            "legendre1d",
            "triangle2d",
            "bilinear2d",
        ],
    )
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_dump_pencil)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return int(args.func(args) or 0)
    except solvers.SolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
