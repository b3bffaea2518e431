"""Built-in instances with known closed-form answers, and the self-check run over them."""

from __future__ import annotations

import math

import numpy as np

from . import bounds as bd
from .bounds import BoundVariant as V
from .space import Coefficients, VectorSystem, canonical_orthonormal
from .verify import Instance, InstanceConfig, check_bound, check_chain, fuzz


def fixture_a() -> Instance:
    """``H = R``, ``y1 = 2``, ``y2 = 1``, ``x = 1``; coefficients ``conj((x, y_i))``."""
    return Instance([1.0], VectorSystem("real", 1, [[2.0], [1.0]]))


def orthonormal_fixture(n: int = 4, field: str = "real") -> Instance:
    """``x = e_1 + ... + e_n`` against the canonical basis."""
    dtype = float if field == "real" else complex
    return Instance(np.ones(n, dtype=dtype), canonical_orthonormal(n, n, field))


def chain_fixture() -> Instance:
    """``Z = {[1, 0], [1, 1]}``, ``alpha = [1, -1]``: ``||z1 - z2||^2 = 1``."""
    return Instance([1.0, 0.0], VectorSystem("real", 2, [[1.0, 0.0], [1.0, 1.0]]),
                    Coefficients([1.0, -1.0]))


def selfcheck(fuzz_trials: int = 200) -> list:
    """Run the built-in fixtures; returns ``(name, passed, detail)`` triples."""
    out = []

    def add(name, ok, detail=""):
        out.append((name, bool(ok), detail))

    a = fixture_a()
    m1, m2, winner = bd.compare_M1_M2(a.G)
    add("fixtureA compare M1/M2", (m1, m2, winner) == (6.0, 5.0, "M2"), f"M1={m1} M2={m2} winner={winner}")
    for v, want in ((V.CLASSIC_M1, 6.0), (V.CLASSIC_M2, 5.0), (V.F1, 6.0), (V.F9, 6.0),
                    (V.PR0, 27.0), (V.PR1, 30.0), (V.PC4, 40.0)):
        res = check_bound(a, v)
        add(f"fixtureA {v}", res.passed and math.isclose(res.bound, want, rel_tol=1e-12),
            f"lhs={res.lhs} bound={res.bound}")
    for v in (V.SELBERG, V.HEILBRONN, V.CLASSIC_M2):
        res = check_bound(a, v)
        add(f"fixtureA {v} equality", res.passed and abs(res.rel_slack) < 1e-9,
            f"rel_slack={res.rel_slack}")
    for v in bd.ALL_VARIANTS:
        res = check_bound(a, v)
        if not res.passed:
            add(f"fixtureA {v}", False, f"lhs={res.lhs} bound={res.bound}")

    for field in ("real", "complex"):
        e = orthonormal_fixture(4, field)
        m1, m2, winner = bd.compare_M1_M2(e.G)
        add(f"orthonormal[{field}] compare M1/M2", (m1, m2, winner) == (1.0, 2.0, "M1"),
            f"M1={m1} M2={m2}")
        lhs, rhs = bd.heilbronn_pair(e.fc, e.x_norm, e.G)
        add(f"orthonormal[{field}] Heilbronn equality", math.isclose(lhs, 4.0) and math.isclose(rhs, 4.0),
            f"({lhs}, {rhs})")
        res = check_bound(e, V.CLASSIC_M1)
        add(f"orthonormal[{field}] Bombieri -> Bessel", math.isclose(res.bound, e.x_norm_sq, rel_tol=1e-12),
            f"bound={res.bound} ||x||^2={e.x_norm_sq}")

    results = check_chain(chain_fixture())
    add("chain fixture", all(r.passed for r in results),
        "; ".join(f"{r.variant}: {r.lhs:g}<={r.bound:g}" for r in results[:5]))

    report = fuzz(InstanceConfig(field="alternating", n_max=8, d_max=8), trials=fuzz_trials,
                  fixtures=[("fixtureA", a)])
    add(f"fuzz {fuzz_trials} trials", report.ok, f"{report.checks} checks, {len(report.failures)} failures")
    return out
