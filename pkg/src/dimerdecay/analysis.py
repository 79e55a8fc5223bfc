"""Inverse analyses of the attenuation factor.

Three questions, all about 1/alpha as a function of the asymmetry
magnitude |eta| at fixed phase theta:

* how does the attenuation curve look over an |eta| grid (sweep),
* where is its interior minimum (golden-section bracket search),
* which |eta| reproduces a measured lifetime ratio gamma_d/gamma
  (smallest positive root of a quartic, by scan plus bisection).

1/alpha diverges at both |eta| -> 0 and |eta| -> infinity, so an
interior minimum always exists; a target ratio below that minimum has
no solution and is reported as such.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, replace
from typing import IO, Sequence

import numpy as np

from .excitons import DimerParams, lambda2_from_eta
from .rates import attenuation_factor

__all__ = [
    "NoSolutionError",
    "SweepResult",
    "EtaEstimate",
    "sweep_inverse_alpha",
    "find_alpha_minimum",
    "estimate_eta",
    "estimate_eta_limit",
    "write_sweep_csv",
    "write_theta_table_csv",
    "SWEEP_CSV_HEADER",
]

# search interval for the |eta| minimum; generous around the O(1) physics
ETA_SEARCH_LO = 1e-6
ETA_SEARCH_HI = 50.0
# root scan covers the largest asymmetries the weak-coupling limit produces
ETA_SCAN_HI = 100.0

SWEEP_CSV_HEADER = ("theta_rad", "eta_abs", "inverse_alpha")

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0  # 1/golden ratio


class NoSolutionError(ValueError):
    """The requested lifetime ratio is not attainable for any |eta|."""


@dataclass(frozen=True)
class SweepResult:
    """1/alpha sampled over an |eta| grid at one asymmetry phase.

    points holds (eta_abs, inverse_alpha) pairs in increasing eta_abs;
    minimum is the interior minimum of the continuous curve, refined
    beyond the grid.
    """

    theta: float
    points: tuple[tuple[float, float], ...]
    minimum: tuple[float, float]

    def __post_init__(self) -> None:
        etas = [x for x, _ in self.points]
        if any(b <= a for a, b in zip(etas, etas[1:])):
            raise ValueError("sweep points must be strictly increasing in eta_abs")
        # the refined minimum can undercut grid samples only by round-off
        slack = 1e-9 * max(1.0, abs(self.minimum[1]))
        if any(v < self.minimum[1] - slack for _, v in self.points):
            raise ValueError("minimum is inconsistent with sampled points")


@dataclass(frozen=True)
class EtaEstimate:
    """Asymmetry magnitude inferred from a lifetime ratio gamma_d/gamma."""

    target_ratio: float
    theta: float
    eta_abs: float
    lambda2: float
    all_roots: tuple[float, ...]


def _inverse_alpha_at(p: DimerParams, theta: float, eta_abs: float) -> float:
    alpha = attenuation_factor(replace(p, eta_abs=eta_abs, theta=theta))
    return 1.0 / alpha


def sweep_inverse_alpha(
    p: DimerParams, theta: float, eta_grid: Sequence[float]
) -> SweepResult:
    """Evaluate 1/alpha over eta_grid at phase theta.

    The template's eta_abs/theta are overridden point by point.  Grid
    points where alpha vanishes are excluded from the result.
    """
    grid = [float(x) for x in eta_grid]
    if not grid:
        raise ValueError("eta_grid must not be empty")
    if any(x <= 0.0 for x in grid):
        raise ValueError("eta_grid values must be > 0")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("eta_grid must be strictly increasing")

    points = []
    for x in grid:
        alpha = attenuation_factor(replace(p, eta_abs=x, theta=theta))
        if alpha > 0.0:
            points.append((x, 1.0 / alpha))
    if not points:
        raise ValueError(
            "attenuation vanishes on the whole grid (zero coupling?)"
        )
    minimum = find_alpha_minimum(p, theta)
    return SweepResult(theta=theta, points=tuple(points), minimum=minimum)


def find_alpha_minimum(p: DimerParams, theta: float) -> tuple[float, float]:
    """Interior minimum of 1/alpha over |eta|, as (eta_min, inv_alpha_min).

    Coarse geometric scan over (1e-6, 50] to bracket, then golden-section
    refinement until the bracket is shorter than 1e-6.
    """
    if p.j12 == 0.0:
        raise ValueError("j12 must be nonzero: 1/alpha is infinite without coupling")

    def f(x: float) -> float:
        return _inverse_alpha_at(p, theta, x)

    grid = np.geomspace(ETA_SEARCH_LO, ETA_SEARCH_HI, 400)
    values = [f(x) for x in grid]
    i = int(np.argmin(values))
    if i == 0 or i == len(grid) - 1:
        raise ValueError(
            "no interior minimum of 1/alpha in the search interval "
            f"({ETA_SEARCH_LO}, {ETA_SEARCH_HI}]"
        )
    a, b = float(grid[i - 1]), float(grid[i + 1])

    # golden-section: keep two interior probes, shrink to tolerance
    x1 = b - _INVPHI * (b - a)
    x2 = a + _INVPHI * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > 1e-6:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INVPHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INVPHI * (b - a)
            f2 = f(x2)
    xmin = 0.5 * (a + b)
    return xmin, f(xmin)


def estimate_eta(p: DimerParams, theta: float, target_ratio: float) -> EtaEstimate:
    """Solve 1/alpha = target_ratio for |eta|; return the smallest root.

    The condition is a quartic in x = |eta|:

        [gap0 + 2 lambda1 x (2 cos(theta) + x)]^2 + 4 j12^2
            = target_ratio * x^2 * j12^2

    All positive real roots in (0, 100] are located by a sign-change
    scan and polished by bisection to 1e-12 in x; each root is verified
    by back-substitution into the attenuation factor.
    """
    if not target_ratio > 0.0:
        raise ValueError(f"target_ratio must be > 0, got {target_ratio}")
    if p.j12 == 0.0:
        raise NoSolutionError(
            "attenuation vanishes identically for zero coupling; "
            "no |eta| can reach a finite lifetime ratio"
        )

    gap0 = p.gap
    lam1 = p.lambda1
    ctheta = math.cos(theta)
    j2 = p.j12 * p.j12

    def residual(x):
        dressed = gap0 + 2.0 * lam1 * x * (2.0 * ctheta + x)
        return dressed * dressed + 4.0 * j2 - target_ratio * x * x * j2

    xs = np.linspace(0.0, ETA_SCAN_HI, 100001)[1:]
    rs = residual(xs)

    roots: list[float] = []
    exact = xs[rs == 0.0]
    roots.extend(float(x) for x in exact)
    sign_flip = np.nonzero(rs[:-1] * rs[1:] < 0.0)[0]
    for i in sign_flip:
        lo, hi = float(xs[i]), float(xs[i + 1])
        flo = residual(lo)
        while hi - lo > 1e-12:
            mid = 0.5 * (lo + hi)
            fmid = residual(mid)
            if fmid == 0.0:
                lo = hi = mid
                break
            if (flo < 0.0) == (fmid < 0.0):
                lo, flo = mid, fmid
            else:
                hi = mid
        roots.append(0.5 * (lo + hi))

    roots = sorted(set(roots))
    if not roots:
        eta_min, inv_min = find_alpha_minimum(p, theta)
        raise NoSolutionError(
            f"target ratio {target_ratio:.6g} is below the attainable "
            f"minimum 1/alpha = {inv_min:.6g} (at |eta| = {eta_min:.6g})"
        )

    for x in roots:
        back = _inverse_alpha_at(p, theta, x)
        if abs(back - target_ratio) > 1e-8 * target_ratio:
            raise ArithmeticError(
                f"root {x} fails back-substitution: 1/alpha = {back} "
                f"vs target {target_ratio}"
            )

    eta_abs = roots[0]
    return EtaEstimate(
        target_ratio=target_ratio,
        theta=theta,
        eta_abs=eta_abs,
        lambda2=lambda2_from_eta(lam1, eta_abs, theta),
        all_roots=tuple(roots),
    )


def estimate_eta_limit(gap0: float, j12: float, target_ratio: float) -> float:
    """Weak-coupling inversion: |eta| = (gap0/|j12|)/sqrt(target_ratio).

    Valid when reorganization energy and coupling are both small against
    the bare gap, where 1/alpha collapses to (gap0/j12)^2/|eta|^2.
    """
    if not target_ratio > 0.0:
        raise ValueError(f"target_ratio must be > 0, got {target_ratio}")
    if j12 == 0.0:
        raise ValueError("j12 must be nonzero")
    return (gap0 / abs(j12)) / math.sqrt(target_ratio)


def _fmt(x: float) -> str:
    # 9 significant digits; +0.0 folds negative zero for stable bytes
    return f"{x + 0.0:.9g}"


def write_sweep_csv(fh: IO[str], results: Sequence[SweepResult]) -> None:
    """Serialize sweep curves: one row per (theta, eta) sample."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(SWEEP_CSV_HEADER)
    for res in results:
        for eta, inv_alpha in res.points:
            writer.writerow([_fmt(res.theta), _fmt(eta), _fmt(inv_alpha)])


def write_theta_table_csv(
    fh: IO[str],
    theta_list: Sequence[float],
    rows: Sequence[tuple[str, Sequence[float]]],
) -> None:
    """Serialize per-theta quantities as a table, one column per theta."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["quantity"] + [f"theta={_fmt(t)}" for t in theta_list])
    for name, values in rows:
        if len(values) != len(theta_list):
            raise ValueError(f"row {name!r} length mismatch")
        writer.writerow([name] + [_fmt(v) for v in values])
