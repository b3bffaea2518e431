"""Instance generation, single checks, proof-chain checks and fuzz campaigns."""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Literal, Optional, Sequence, Union

import numpy as np

from . import bounds as bd
from .bounds import BoundParams, BoundVariant, as_variant, resolve_params
from .errors import DimensionMismatch, ValidationError
from .space import (AbsGram, Coefficients, ExponentPair, VectorSystem, as_vector, fourier_coeffs,
                    gram, gram_abs, inner, pnorm)

DEFAULT_TOL = 1e-9
NEAR_EQUALITY = 1e-6
SEED_MOD = 2 ** 64

Conditioning = Literal["generic", "near_orthonormal", "collinear"]


@dataclass(frozen=True, eq=False)
class Instance:
    """A vector ``x``, a system ``Y`` and optional coefficients.

    The stored coefficients are the weights ``alpha`` of ``||sum alpha_i y_i||^2``;
    the sums ``sum c_i (x, y_i)`` use ``c = conj(alpha)``, so that
    ``sum c_i (x, y_i) = (x, sum alpha_i y_i)``.  Without explicit coefficients
    ``alpha_i = (x, y_i)``, i.e. ``c_i = conj((x, y_i))``.
    """

    x: np.ndarray
    Y: VectorSystem
    coefficients: Optional[Coefficients] = None

    def __post_init__(self):
        x = as_vector(self.x, self.Y.field)
        if x.shape[0] != self.Y.dim:
            raise DimensionMismatch(f"x has length {x.shape[0]}, system dimension is {self.Y.dim}")
        object.__setattr__(self, "x", x)
        c = self.coefficients
        if c is not None:
            if not isinstance(c, Coefficients):
                c = Coefficients(np.asarray(c))
            if len(c) != self.Y.n:
                raise DimensionMismatch(f"{len(c)} coefficients for {self.Y.n} vectors")
            if self.Y.field == "real" and np.iscomplexobj(c.values) and np.any(c.values.imag != 0):
                raise ValidationError("real field forbids complex coefficients")
            object.__setattr__(self, "coefficients", c)

    @property
    def field(self) -> str:
        return self.Y.field

    @property
    def n(self) -> int:
        return self.Y.n

    @property
    def dim(self) -> int:
        return self.Y.dim

    @cached_property
    def G(self) -> AbsGram:
        return gram_abs(self.Y)

    @cached_property
    def fc(self) -> Coefficients:
        return fourier_coeffs(self.x, self.Y)

    @cached_property
    def alpha(self) -> Coefficients:
        return self.coefficients if self.coefficients is not None else self.fc

    @cached_property
    def c(self) -> Coefficients:
        return self.alpha.conj()

    @cached_property
    def x_norm_sq(self) -> float:
        return float(inner(self.x, self.x).real)

    @property
    def x_norm(self) -> float:
        return math.sqrt(self.x_norm_sq)

    @cached_property
    def weighted_lhs(self) -> float:
        return oracle_norm_sq(self.alpha, self.Y)

    @cached_property
    def pecaric_lhs(self) -> float:
        s = complex(np.sum(self.c.values * self.fc.values))
        return abs(s) ** 2

    @cached_property
    def bombieri_lhs(self) -> float:
        return bd.bombieri_lhs(self.fc)

    def digest(self) -> str:
        """``field:n:d:hash`` where the hash covers every scalar of the instance."""
        h = hashlib.sha256()
        for arr in (self.x, self.Y.vectors, self.alpha.values):
            h.update(np.ascontiguousarray(arr, dtype=np.complex128).tobytes())
        return f"{self.field}:n={self.n}:d={self.dim}:{h.hexdigest()[:16]}"


def oracle_norm_sq(alpha, Z: VectorSystem) -> float:
    """``||sum alpha_i z_i||^2`` from the explicitly assembled vector."""
    vals = alpha.values if isinstance(alpha, Coefficients) else np.asarray(alpha)
    if vals.shape[0] != Z.n:
        raise DimensionMismatch(f"{vals.shape[0]} coefficients for {Z.n} vectors")
    w = np.zeros(Z.dim, dtype=np.complex128 if (np.iscomplexobj(vals) or Z.field == "complex") else np.float64)
    for a, z in zip(vals, Z.vectors):
        w = w + a * z
    return float(np.real(inner(w, w)))


def gram_quadratic_form(alpha, Z: VectorSystem) -> float:
    """``sum_ij alpha_i conj(alpha_j) (z_i, z_j)`` via the signed Gram matrix."""
    vals = alpha.values if isinstance(alpha, Coefficients) else np.asarray(alpha)
    if vals.shape[0] != Z.n:
        raise DimensionMismatch(f"{vals.shape[0]} coefficients for {Z.n} vectors")
    return float(np.real(vals @ gram(Z) @ np.conj(vals)))


@dataclass(frozen=True)
class InstanceConfig:
    """Recipe for :func:`random_instance`.

    ``field`` may also be ``"alternating"`` inside :func:`fuzz` (even trials
    real, odd trials complex).  With ``exact_size`` the drawn sizes are
    exactly ``n_max`` and ``d_max``.
    """

    field: str = "real"
    n_max: int = 8
    d_max: int = 8
    entry_scale: float = 1.0
    conditioning: Conditioning = "generic"
    seed: int = 0
    exact_size: bool = False

    def __post_init__(self):
        if self.field not in ("real", "complex", "alternating"):
            raise ValidationError(f"unknown field {self.field!r}")
        if self.n_max < 0 or self.d_max < 1:
            raise ValidationError("need n_max >= 0 and d_max >= 1")
        if not self.entry_scale > 0:
            raise ValidationError("entry_scale must be positive")
        if self.conditioning not in ("generic", "near_orthonormal", "collinear"):
            raise ValidationError(f"unknown conditioning {self.conditioning!r}")
        object.__setattr__(self, "seed", int(self.seed) % SEED_MOD)


def _uniform(rng, shape, scale, complex_):
    out = rng.uniform(-scale, scale, size=shape)
    if complex_:
        out = out + 1j * rng.uniform(-scale, scale, size=shape)
    return out


def random_instance(config: InstanceConfig) -> Instance:
    """Deterministic random ``(x, Y, alpha)`` for ``config`` and its seed."""
    if config.field == "alternating":
        config = replace(config, field="real" if config.seed % 2 == 0 else "complex")
    rng = np.random.default_rng(config.seed)
    cplx = config.field == "complex"
    s = config.entry_scale

    if config.exact_size:
        d = config.d_max
        n = config.n_max
    else:
        d = int(rng.integers(1, config.d_max + 1))
        cap = config.n_max
        if config.conditioning == "near_orthonormal":
            cap = min(cap, d)
        n = int(rng.integers(1, cap + 1)) if cap >= 1 else 0

    if config.conditioning == "near_orthonormal":
        if n > d:
            raise ValidationError(f"near_orthonormal needs n <= d, got n={n}, d={d}")
        Q, _ = np.linalg.qr(_uniform(rng, (d, d), 1.0, cplx))
        basis = Q[:, :n].T
        pert = _uniform(rng, (n, d), 1.0, cplx)
        norms = np.linalg.norm(pert, axis=1, keepdims=True)
        norms[norms == 0] = 1.0
        radius = 0.1 * s * rng.uniform(0.0, 1.0, size=(n, 1))
        vectors = basis + pert / norms * radius
    elif config.conditioning == "collinear":
        v = _uniform(rng, (d,), s, cplx)
        scales = _uniform(rng, (n, 1), 1.0, cplx)
        vectors = scales * v[None, :]
    else:
        vectors = _uniform(rng, (n, d), s, cplx)

    x = _uniform(rng, (d,), s, cplx)
    alpha = _uniform(rng, (n,), s, cplx)
    Y = VectorSystem(config.field, d, vectors if n else [])
    return Instance(x, Y, Coefficients(alpha))


@dataclass(frozen=True)
class VerificationResult:
    variant: str
    params: Optional[BoundParams]
    form: str
    lhs: float
    bound: float
    slack: float
    passed: bool
    rel_slack: float


def make_result(variant, params, form, lhs, bound, tol=DEFAULT_TOL) -> VerificationResult:
    """Fill slack bookkeeping.

    ``rel_slack`` is the slack relative to ``max(|lhs|, |bound|)`` (0 when both vanish).
    """
    lhs = float(lhs)
    bound = float(bound)
    slack = bound - lhs
    passed = slack >= -tol * max(1.0, abs(lhs))
    scale = max(abs(lhs), abs(bound))
    rel = slack / scale if scale > 0 else 0.0
    return VerificationResult(str(variant), params, form, lhs, bound, slack, bool(passed), rel)


def evaluate_variant(instance: Instance, variant, params=None, form="derived"):
    """``(lhs, bound, resolved params)`` for ``variant`` on ``instance``."""
    variant = as_variant(variant)
    fam = variant.family
    if fam in ("B", "L", "C"):
        bv = bd.bound_weighted(variant, instance.alpha, instance.G, params)
        return instance.weighted_lhs, bv.value, bv.params
    if fam == "P":
        bv = bd.pecaric_bound(variant, instance.x_norm_sq, instance.c, instance.G, params)
        return instance.pecaric_lhs, bv.value, bv.params
    if fam == "F":
        bv = bd.bombieri_bound(variant, instance.x_norm, instance.fc, instance.G, params, form)
        return instance.bombieri_lhs, bv.value, bv.params
    if fam == "FF":
        bv = bd.fourier_free_bound(variant, instance.x_norm_sq, instance.G, params)
        return instance.bombieri_lhs, bv.value, bv.params
    pr = resolve_params(variant, params)
    if variant is BoundVariant.SELBERG:
        return bd.selberg_lhs(instance.fc, instance.G), instance.x_norm_sq, pr
    lhs, rhs = bd.heilbronn_pair(instance.fc, instance.x_norm, instance.G)
    return lhs, rhs, pr


def check_bound(instance: Instance, variant, params: Optional[BoundParams] = None,
                form: str = "derived", tol: float = DEFAULT_TOL) -> VerificationResult:
    """Compare ``variant``'s bound against its own left-hand side on ``instance``."""
    variant = as_variant(variant)
    if variant.family != "F":
        form = "derived"
    lhs, bound, pr = evaluate_variant(instance, variant, params, form)
    return make_result(variant, pr, form, lhs, bound, tol)


def chain_values(alpha, G: AbsGram, params: BoundParams) -> dict:
    """Intermediate quantities of the proof chain for moduli ``alpha``.

    Keys: ``M`` (``sum a_i a_j G_ij``), ``M1``, ``Mp``, ``Minf`` and every
    ``B*``/``L*`` branch evaluated at ``params``.
    """
    a = bd._moduli(alpha)
    bd._check_lengths(a, G)
    p = params.p
    amax = float(a.max(initial=0.0))
    out = {
        "M": float(a @ G.entries @ a),
        "M1": amax * float(a @ G.row_sums),
        "Mp": pnorm(a, p.p) * float(a @ G.row_qnorms(p.q)),
        "Minf": float(a.sum()) * float(a @ G.row_max),
    }
    for v in bd.WEIGHTED[:13]:
        out[v.value] = bd._weighted_value(v, a, G, params.restrict(v.param_names))
    return out


CHAIN_EDGES = (
    ("LHS", "M"), ("M", "M1"), ("M", "Mp"), ("M", "Minf"),
    ("M1", "B1"), ("M1", "B2"), ("M1", "B3"),
    ("Mp", "B4"), ("Mp", "B5"), ("Mp", "B6"),
    ("Minf", "B7"), ("Minf", "B8"), ("Minf", "B9"),
    ("LHS", "L0"), ("M", "L0"), ("L0", "L1"), ("L0", "L2"), ("L0", "L3"),
)


def chain_params(params: Optional[BoundParams] = None) -> BoundParams:
    """Fill any of ``p, r, t, m`` missing from ``params`` with 2."""
    two = bd.DEFAULT_EXPONENT
    if params is None:
        return BoundParams(two, two, two, two)
    return BoundParams(params.p or two, params.r or two, params.t or two, params.m or two)


def check_chain(instance: Instance, params: Optional[BoundParams] = None,
                tol: float = DEFAULT_TOL) -> list:
    """Check every adjacent inequality of the two proof chains.

    ``LHS <= M <= {M1, Mp, Minf}``, then ``M1 <= B1..B3``, ``Mp <= B4..B6``,
    ``Minf <= B7..B9``, and ``LHS <= M <= L0 <= L1..L3``.
    """
    pr = chain_params(params)
    vals = chain_values(instance.alpha, instance.G, pr)
    vals["LHS"] = instance.weighted_lhs
    return [make_result(f"CHAIN:{lo}<={hi}", pr, "derived", vals[lo], vals[hi], tol)
            for lo, hi in CHAIN_EDGES]


@dataclass
class FuzzReport:
    trials: int
    checks: int = 0
    failures: list = field(default_factory=list)
    min_rel_slack: dict = field(default_factory=dict)
    near_equality: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def _record(self, trial_id, digest, res: VerificationResult):
        self.checks += 1
        key = res.variant if res.form == "derived" else f"{res.variant}[{res.form}]"
        cur = self.min_rel_slack.get(key)
        if cur is None or res.rel_slack < cur:
            self.min_rel_slack[key] = res.rel_slack
        if res.rel_slack < NEAR_EQUALITY:
            self.near_equality.setdefault(key, []).append(trial_id)
        if not res.passed:
            self.failures.append((trial_id, digest, res))


def random_params(variant: BoundVariant, rng: np.random.Generator) -> BoundParams:
    """Random legal exponents for ``variant``, endpoints included where allowed."""
    kw = {}
    for name in variant.param_names:
        if variant.constrained:
            kw[name] = ExponentPair.of(2.0 - rng.uniform(0.0, 1.0))
        else:
            u = rng.uniform()
            if u < 0.1:
                kw[name] = ExponentPair("one")
            elif u < 0.2:
                kw[name] = ExponentPair("infinity")
            else:
                v = 1.0 + math.exp(rng.uniform(math.log(1e-3), math.log(63.0)))
                kw[name] = ExponentPair.of(v)
    return BoundParams(**kw)


def _random_chain_params(rng) -> BoundParams:
    kw = {}
    for name in ("p", "r", "t", "m"):
        kw[name] = random_params(BoundVariant.B4, rng).p
    return BoundParams(**kw)


def _run_trial(report, trial_id, digest, inst, variants, forms, tol, rng, with_chain):
    for v in variants:
        param_sets = [None]
        if v.param_names and rng is not None:
            param_sets.append(random_params(v, rng))
        for pr in param_sets:
            for form in forms:
                if form == "as_printed" and v not in bd.AS_PRINTED_DISTINCT:
                    continue
                report._record(trial_id, digest, check_bound(inst, v, pr, form, tol))
    if with_chain:
        chain_sets = [None]
        if rng is not None:
            chain_sets.append(_random_chain_params(rng))
        for pr in chain_sets:
            for res in check_chain(inst, pr, tol):
                report._record(trial_id, digest, res)


def fuzz(config: InstanceConfig, variants: Optional[Iterable] = None, trials: int = 1000,
         tol: float = DEFAULT_TOL, forms: Sequence[str] = ("derived",), randomize_params: bool = True,
         fixtures: Sequence = ()) -> FuzzReport:
    """Run ``trials`` random instances through every requested check.

    Trial ``i`` uses seed ``config.seed + i`` (mod 2^64), so a failure is
    replayable from its seed alone.  ``fixtures`` are ``(label, Instance)``
    pairs checked before the random trials.  Chain checks run whenever a
    ``B``/``L`` variant is requested.
    """
    if trials < 1:
        raise ValidationError("trials must be >= 1")
    variants = bd.ALL_VARIANTS if variants is None else tuple(as_variant(v) for v in variants)
    for form in forms:
        if form not in bd.FORMS:
            raise ValidationError(f"unknown form {form!r}")
    with_chain = any(v.family in ("B", "L") for v in variants)
    report = FuzzReport(trials=trials)

    for label, inst in fixtures:
        vs = [v for v in variants if not (v is BoundVariant.SELBERG and np.any(inst.G.row_sums <= 0))]
        _run_trial(report, label, inst.digest(), inst, vs, forms, tol, None, with_chain)

    for i in range(trials):
        seed = (config.seed + i) % SEED_MOD
        cfg = replace(config, seed=seed)
        inst = random_instance(cfg)
        rng = np.random.default_rng([seed, 1]) if randomize_params else None
        vs = variants
        if BoundVariant.SELBERG in vs and np.any(inst.G.row_sums <= 0):
            vs = [v for v in vs if v is not BoundVariant.SELBERG]
        _run_trial(report, seed, inst.digest(), inst, vs, forms, tol, rng, with_chain)
    return report
