"""Search over free Hölder exponents for the sharpest bound of a family."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import bounds as bd
from .bounds import BoundParams, BoundVariant
from .errors import ParamError
from .space import ExponentPair
from .verify import Instance

FAMILIES = {
    "B": bd.WEIGHTED,
    "P": bd.PECARIC,
    "F": bd.BOMBIERI,
    "FF": bd.FOURIER_FREE[:4],
}

UNCONSTRAINED_CAP = 64.0
GRID_FLOOR = 1e-2  # smallest p - 1 on the grid
INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
TIE_RTOL = 1e-12


@dataclass(frozen=True)
class OptimizeResult:
    best_params: BoundParams
    best_value: float
    family: str
    evaluations: int
    best_variant: BoundVariant
    probed_min: float


def golden_section(f: Callable[[float], float], lo: float, hi: float, iters: int):
    """Minimize ``f`` on ``[lo, hi]`` with ``iters`` golden-section steps; returns ``(x, f(x), evals)``."""
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    evals = 2
    for _ in range(iters):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
        evals += 1
    return (c, fc, evals) if fc <= fd else (d, fd, evals)


def exponent_grid(constrained: bool, steps: int) -> list:
    """Log-spaced in ``p - 1``; always contains 2 and the range top.

    Unconstrained grids span ``(1, 64]`` plus the ``one``/``infinity`` endpoints.
    """
    top = 1.0 if constrained else UNCONSTRAINED_CAP - 1.0
    offsets = set(np.geomspace(GRID_FLOOR, top, steps).tolist())
    offsets.add(1.0)
    grid = [ExponentPair.of(1.0 + o) for o in sorted(offsets)]
    if not constrained:
        grid = [ExponentPair("one")] + grid + [ExponentPair("infinity")]
    return grid


def _evaluator(instance: Instance, family: str, variant: BoundVariant):
    G = instance.G
    if family == "B":
        return lambda pr: bd.bound_weighted(variant, instance.alpha, G, pr).value
    if family == "P":
        return lambda pr: bd.pecaric_bound(variant, instance.x_norm_sq, instance.c, G, pr).value
    if family == "F":
        return lambda pr: bd.bombieri_bound(variant, instance.x_norm, instance.fc, G, pr).value
    return lambda pr: bd.fourier_free_bound(variant, instance.x_norm_sq, G, pr).value


def _tie_key(order: int, pr: BoundParams):
    two = bd.DEFAULT_EXPONENT
    return (pr.p is None or pr.p != two, pr.t is None or pr.t != two, order, pr.render())


def optimize_exponents(instance: Instance, family: str, grid_steps: int = 9,
                       refine_iters: int = 20) -> OptimizeResult:
    """Smallest bound of ``family`` (``B``, ``P``, ``F`` or ``FF``) over its free exponents.

    Each parameterized variant is probed on the product grid of its exponents;
    its best finite grid cell is then refined by cyclic golden-section search
    on ``log(p - 1)`` within the neighbouring grid points.  Ties (within
    ``1e-12`` relative) prefer ``p = 2``, then ``t = 2``, then variant order.
    """
    family = family.upper()
    if family not in FAMILIES:
        raise ParamError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    if grid_steps < 2:
        raise ParamError("grid_steps must be >= 2")
    if refine_iters < 0:
        raise ParamError("refine_iters must be >= 0")

    candidates = []  # (value, order, params, variant)
    evaluations = 0
    probed_min = math.inf
    for order, variant in enumerate(FAMILIES[family]):
        f = _evaluator(instance, family, variant)
        names = variant.param_names
        if not names:
            val = f(BoundParams())
            evaluations += 1
            probed_min = min(probed_min, val)
            candidates.append((val, order, BoundParams(), variant))
            continue
        grid = exponent_grid(variant.constrained, grid_steps)
        best = None
        for combo in itertools.product(grid, repeat=len(names)):
            pr = BoundParams(**dict(zip(names, combo)))
            val = f(pr)
            evaluations += 1
            probed_min = min(probed_min, val)
            candidates.append((val, order, pr, variant))
            if best is None or val < best[0]:
                best = (val, combo)
        refined, n_evals = _refine(f, names, best[1], grid, refine_iters)
        evaluations += n_evals
        for val, pr in refined:
            candidates.append((val, order, pr, variant))

    lowest = min(c[0] for c in candidates)
    tied = [c for c in candidates if c[0] <= lowest + TIE_RTOL * abs(lowest)]
    val, _, pr, variant = min(tied, key=lambda c: _tie_key(c[1], c[2]))
    return OptimizeResult(pr, val, family, evaluations, variant, probed_min)


def _refine(f, names, start, grid, iters):
    """Cyclic coordinate golden-section from the grid point ``start``."""
    finite = [e for e in grid if e.kind == "finite"]
    if iters == 0 or any(e.kind != "finite" for e in start):
        return [], 0
    logs = [math.log(e.value - 1.0) for e in finite]
    point = [math.log(e.value - 1.0) for e in start]
    out = []
    evals = 0
    sweeps = 1 if len(names) == 1 else 2
    for _ in range(sweeps):
        for k in range(len(names)):
            idx = int(np.argmin([abs(g - point[k]) for g in logs]))
            lo = logs[max(idx - 1, 0)]
            hi = logs[min(idx + 1, len(logs) - 1)]
            if hi <= lo:
                continue

            def along(z, k=k):
                coords = list(point)
                coords[k] = z
                return f(_params_at(names, coords))

            z, val, n = golden_section(along, lo, hi, iters)
            evals += n
            current = f(_params_at(names, point))
            evals += 1
            if val < current:
                point[k] = z
                out.append((val, _params_at(names, point)))
    return out, evals


def _params_at(names, logs) -> BoundParams:
    return BoundParams(**{k: ExponentPair.of(1.0 + math.exp(z)) for k, z in zip(names, logs)})
