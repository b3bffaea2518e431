"""Catalog of Bessel/Bombieri-type upper bounds.

All evaluators are pure functions of coefficient moduli, ``||x||`` and an
:class:`~bombieri.space.AbsGram`.  Notation used in the formulas below:
``a`` are coefficient moduli, ``G`` the absolute Gram matrix, ``rs_i`` its
row sums, ``rm_i`` its row maxima and ``||G_i||_q`` the ``q``-norm of row
``i``.  Exponents come in conjugate pairs ``(p, q)``, ``(r, s)``, ``(t, u)``
and ``(m, l)``.

Families:

* ``B1..B9`` nine branches bounding ``||sum a_i z_i||^2``;
* ``L0..L3`` the row-weighted chain (``L0`` is Pečarić's first bound);
* ``CA..CE`` the ``sum a_i^2`` corollaries;
* ``P*`` the same bounds times ``||x||^2``, bounding ``|sum c_i (x, y_i)|^2``;
* ``F1..F9`` Bombieri-type bounds with Fourier coefficients on the right;
* ``FF1..FF4``, ``CLASSIC_M1``, ``CLASSIC_M2`` Fourier-free Bombieri bounds;
* ``SELBERG``, ``HEILBRONN`` the classical inequalities (see :func:`selberg_lhs`,
  :func:`heilbronn_pair`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from enum import Enum
from typing import Literal, Optional

import numpy as np

from .errors import DimensionMismatch, ParamError, ZeroVectorRow
from .space import AbsGram, Coefficients, ExponentPair, inv, pnorm

Form = Literal["derived", "as_printed"]
FORMS = ("derived", "as_printed")


class BoundVariant(str, Enum):
    B1 = "B1"
    B2 = "B2"
    B3 = "B3"
    B4 = "B4"
    B5 = "B5"
    B6 = "B6"
    B7 = "B7"
    B8 = "B8"
    B9 = "B9"
    L0 = "L0"
    L1 = "L1"
    L2 = "L2"
    L3 = "L3"
    CA = "CA"
    CB = "CB"
    CC = "CC"
    CD = "CD"
    CE = "CE"
    P1 = "P1"
    P2 = "P2"
    P3 = "P3"
    P4 = "P4"
    P5 = "P5"
    P6 = "P6"
    P7 = "P7"
    P8 = "P8"
    P9 = "P9"
    PC1 = "PC1"
    PC2 = "PC2"
    PC3 = "PC3"
    PC4 = "PC4"
    PR0 = "PR0"
    PR1 = "PR1"
    PR2 = "PR2"
    PR3 = "PR3"
    F1 = "F1"
    F2 = "F2"
    F3 = "F3"
    F4 = "F4"
    F5 = "F5"
    F6 = "F6"
    F7 = "F7"
    F8 = "F8"
    F9 = "F9"
    FF1 = "FF1"
    FF2 = "FF2"
    FF3 = "FF3"
    FF4 = "FF4"
    CLASSIC_M1 = "CLASSIC_M1"
    CLASSIC_M2 = "CLASSIC_M2"
    SELBERG = "SELBERG"
    HEILBRONN = "HEILBRONN"

    def __str__(self) -> str:
        return self.value

    @property
    def family(self) -> str:
        return _FAMILY[self]

    @property
    def param_names(self) -> tuple:
        return _PARAMS.get(self, ())

    @property
    def constrained(self) -> bool:
        """Exponents restricted to ``(1, 2]``."""
        return self in _CONSTRAINED


V = BoundVariant

WEIGHTED = tuple(V(f"B{k}") for k in range(1, 10)) + (V.L0, V.L1, V.L2, V.L3) + (
    V.CA, V.CB, V.CC, V.CD, V.CE)
PECARIC = tuple(V(f"P{k}") for k in range(1, 10)) + (V.PC1, V.PC2, V.PC3, V.PC4) + (
    V.PR0, V.PR1, V.PR2, V.PR3)
BOMBIERI = tuple(V(f"F{k}") for k in range(1, 10))
FOURIER_FREE = (V.FF1, V.FF2, V.FF3, V.FF4, V.CLASSIC_M1, V.CLASSIC_M2)
CLASSICAL = (V.SELBERG, V.HEILBRONN)
ALL_VARIANTS = tuple(V)

_FAMILY = {}
for _v in WEIGHTED:
    _FAMILY[_v] = _v.value[0]
for _v in PECARIC:
    _FAMILY[_v] = "P"
for _v in BOMBIERI:
    _FAMILY[_v] = "F"
for _v in FOURIER_FREE:
    _FAMILY[_v] = "FF"
_FAMILY[V.SELBERG] = "SELBERG"
_FAMILY[V.HEILBRONN] = "HEILBRONN"

# P-variant -> the weighted variant it multiplies by ||x||^2
PECARIC_BASE = {V(f"P{k}"): V(f"B{k}") for k in range(1, 10)}
PECARIC_BASE.update({V.PC1: V.CA, V.PC2: V.CC, V.PC3: V.CD, V.PC4: V.CE})
PECARIC_BASE.update({V(f"PR{k}"): V(f"L{k}") for k in range(4)})

# F-variant -> B-variant whose square root (times ||x||) it is
BOMBIERI_BASE = {V(f"F{k}"): V(f"B{k}") for k in range(1, 10)}

_PARAMS = {
    V.B2: ("r",), V.B4: ("p",), V.B5: ("p", "t"), V.B6: ("p",), V.B8: ("m",),
    V.L2: ("p",), V.CA: ("p", "t"), V.CC: ("p",), V.CD: ("m",),
    V.FF1: ("p", "t"), V.FF3: ("m",),
}
for _p, _b in PECARIC_BASE.items():
    if _b in _PARAMS:
        _PARAMS[_p] = _PARAMS[_b]
for _f, _b in BOMBIERI_BASE.items():
    if _b in _PARAMS:
        _PARAMS[_f] = _PARAMS[_b]

_CONSTRAINED = {V.CA, V.CC, V.CD, V.PC1, V.PC2, V.PC3, V.FF1, V.FF3}

# F-variants whose printed formula differs from the square-root derivation
AS_PRINTED_DISTINCT = (V.F3, V.F8)


def as_variant(tag) -> BoundVariant:
    try:
        return BoundVariant(str(tag).strip().upper())
    except ValueError:
        raise ParamError(f"unknown bound variant {tag!r}") from None


@dataclass(frozen=True)
class BoundParams:
    """Hölder exponents ``p``, ``r``, ``t``, ``m``; absent ones are ``None``."""

    p: Optional[ExponentPair] = None
    r: Optional[ExponentPair] = None
    t: Optional[ExponentPair] = None
    m: Optional[ExponentPair] = None

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if v is not None and not isinstance(v, ExponentPair):
                object.__setattr__(self, f.name, ExponentPair.of(v))

    def items(self):
        return [(f.name, getattr(self, f.name)) for f in fields(self) if getattr(self, f.name) is not None]

    def names(self) -> tuple:
        return tuple(name for name, _ in self.items())

    def render(self) -> str:
        return ",".join(f"{k}={v}" for k, v in self.items())

    def restrict(self, names) -> "BoundParams":
        return BoundParams(**{k: v for k, v in self.items() if k in names})

    @classmethod
    def parse(cls, text: str) -> "BoundParams":
        """Parse ``"p=2,t=1.5"``; an empty string gives no parameters."""
        kw = {}
        for part in filter(None, (s.strip() for s in text.split(","))):
            key, sep, val = part.partition("=")
            key = key.strip()
            if not sep or key not in ("p", "r", "t", "m"):
                raise ParamError(f"bad parameter assignment {part!r}")
            kw[key] = ExponentPair.of(val)
        return cls(**kw)


DEFAULT_EXPONENT = ExponentPair.of(2.0)


def default_params(variant) -> BoundParams:
    """``p = r = t = m = 2`` for whichever exponents ``variant`` uses."""
    variant = as_variant(variant)
    return BoundParams(**{k: DEFAULT_EXPONENT for k in variant.param_names})


def resolve_params(variant, params: Optional[BoundParams]) -> BoundParams:
    """Check ``params`` against what ``variant`` uses; ``None`` means the defaults."""
    variant = as_variant(variant)
    if params is None:
        return default_params(variant)
    used = variant.param_names
    extra = [k for k in params.names() if k not in used]
    if extra:
        raise ParamError(f"{variant} does not use parameter(s) {', '.join(extra)}")
    missing = [k for k in used if getattr(params, k) is None]
    if missing:
        raise ParamError(f"{variant} needs parameter(s) {', '.join(missing)}")
    if variant.constrained:
        for k, e in params.items():
            if e.kind != "finite" or e.value > 2.0:
                raise ParamError(f"{variant} requires 1 < {k} <= 2, got {k}={e}")
    return params


@dataclass(frozen=True)
class BoundValue:
    value: float
    variant: BoundVariant
    params: BoundParams
    form: Form = "derived"
    note: str = ""

    def __float__(self) -> float:
        return self.value


def _check_lengths(a: np.ndarray, G: AbsGram):
    if a.shape[0] != G.n:
        raise DimensionMismatch(f"{a.shape[0]} coefficients for a Gram matrix of order {G.n}")


def _moduli(c) -> np.ndarray:
    if isinstance(c, Coefficients):
        return c.moduli
    return np.abs(np.asarray(c, dtype=np.complex128 if np.iscomplexobj(c) else np.float64))


def weighted_gram_sum(moduli, G: AbsGram) -> float:
    """``sum_ij a_i a_j G_ij``, the quantity every weighted bound dominates."""
    a = _moduli(moduli)
    _check_lengths(a, G)
    return float(a @ G.entries @ a)


def _weighted_value(v: BoundVariant, a: np.ndarray, G: AbsGram, pr: BoundParams) -> float:
    n = a.shape[0]
    amax = float(a.max(initial=0.0))
    if v is V.B1 or v is V.L3:
        return amax * amax * G.total_sum
    if v is V.B2:
        r = pr.r.p
        return amax * pnorm(a, r) * pnorm(G.row_sums, pr.r.q)
    if v is V.B3:
        return amax * float(a.sum()) * G.max_row_sum
    if v is V.B4:
        return pnorm(a, pr.p.p) * amax * float(G.row_qnorms(pr.p.q).sum())
    if v is V.B5:
        return pnorm(a, pr.p.p) * pnorm(a, pr.t.p) * pnorm(G.row_qnorms(pr.p.q), pr.t.q)
    if v is V.B6:
        return pnorm(a, pr.p.p) * float(a.sum()) * float(G.row_qnorms(pr.p.q).max(initial=0.0))
    if v is V.B7:
        return float(a.sum()) * amax * float(G.row_max.sum())
    if v is V.B8:
        return float(a.sum()) * pnorm(a, pr.m.p) * pnorm(G.row_max, pr.m.q)
    if v is V.B9:
        s = float(a.sum())
        return s * s * G.global_max
    sq = a * a
    if v is V.L0:
        return float(sq @ G.row_sums)
    if v is V.L1:
        return float(sq.sum()) * G.max_row_sum
    if v is V.L2:
        return pnorm(sq, pr.p.p) * pnorm(G.row_sums, pr.p.q)
    if v is V.CA:
        p, t = pr.p, pr.t
        return n ** (inv(p.p) + inv(t.p) - 1.0) * float(sq.sum()) * pnorm(G.row_qnorms(p.q), t.q)
    if v is V.CB:
        return float(sq.sum()) * G.frobenius
    if v is V.CC:
        return n ** inv(pr.p.p) * float(sq.sum()) * float(G.row_qnorms(pr.p.q).max(initial=0.0))
    if v is V.CD:
        return n ** inv(pr.m.p) * float(sq.sum()) * pnorm(G.row_max, pr.m.q)
    if v is V.CE:
        return n * float(sq.sum()) * G.global_max
    raise ParamError(f"{v} is not a weighted bound")


def bound_weighted(variant, moduli, G: AbsGram, params: Optional[BoundParams] = None) -> BoundValue:
    """Upper bound for ``||sum alpha_i z_i||^2`` from ``|alpha_i|`` and ``|(z_i, z_j)|``.

    ``variant`` is one of ``B1..B9``, ``L0..L3``, ``CA..CE``.  ``L2`` sums over
    rows: ``(sum a_i^(2p))^(1/p) (sum_i rs_i^q)^(1/q)``.
    """
    variant = as_variant(variant)
    if variant not in WEIGHTED:
        raise ParamError(f"{variant} is not a weighted bound")
    pr = resolve_params(variant, params)
    a = _moduli(moduli)
    _check_lengths(a, G)
    return BoundValue(_weighted_value(variant, a, G, pr), variant, pr)


def pecaric_bound(variant, x_norm_sq: float, c, G: AbsGram,
                  params: Optional[BoundParams] = None) -> BoundValue:
    """Upper bound for ``|sum c_i (x, y_i)|^2``: ``||x||^2`` times the matching weighted bound."""
    variant = as_variant(variant)
    base = PECARIC_BASE.get(variant)
    if base is None:
        raise ParamError(f"{variant} is not a Pečarić-type bound")
    pr = resolve_params(variant, params)
    a = _moduli(c)
    _check_lengths(a, G)
    return BoundValue(float(x_norm_sq) * _weighted_value(base, a, G, pr), variant, pr)


def bombieri_lhs(fc) -> float:
    """``sum_i |(x, y_i)|^2``."""
    a = _moduli(fc)
    return float(a @ a)


def _as_printed_value(variant, x_norm, a, G, pr) -> float:
    if variant is V.F3:
        # bracket printed without its square root
        return x_norm * math.sqrt(float(a.max(initial=0.0))) * math.sqrt(float(a.sum())) * G.max_row_sum
    # F8: printed without the (sum |(x,y_i)|)^(1/2) factor
    return x_norm * math.sqrt(pnorm(a, pr.m.p)) * math.sqrt(pnorm(G.row_max, pr.m.q))


def bombieri_bound(variant, x_norm: float, fc, G: AbsGram,
                   params: Optional[BoundParams] = None, form: Form = "derived") -> BoundValue:
    """Upper bound for ``sum |(x, y_i)|^2`` with Fourier coefficients on the right.

    The derived form of ``Fk`` is ``||x|| * sqrt(Bk(|fc|, G))``.  ``as_printed``
    only differs for ``F3`` and ``F8``; for other variants it returns the
    derived value with a note.
    """
    variant = as_variant(variant)
    base = BOMBIERI_BASE.get(variant)
    if base is None:
        raise ParamError(f"{variant} is not a Bombieri-type bound")
    if form not in FORMS:
        raise ParamError(f"unknown form {form!r}")
    pr = resolve_params(variant, params)
    a = _moduli(fc)
    _check_lengths(a, G)
    x_norm = float(x_norm)
    if form == "as_printed":
        if variant in AS_PRINTED_DISTINCT:
            return BoundValue(_as_printed_value(variant, x_norm, a, G, pr), variant, pr, form)
        value = x_norm * math.sqrt(_weighted_value(base, a, G, pr))
        return BoundValue(value, variant, pr, form, note="printed form coincides with derived")
    return BoundValue(x_norm * math.sqrt(_weighted_value(base, a, G, pr)), variant, pr, form)


def fourier_free_bound(variant, x_norm_sq: float, G: AbsGram,
                       params: Optional[BoundParams] = None) -> BoundValue:
    """Upper bound for ``sum |(x, y_i)|^2`` using only ``||x||^2`` and ``G``."""
    variant = as_variant(variant)
    if variant not in FOURIER_FREE:
        raise ParamError(f"{variant} is not a Fourier-free bound")
    pr = resolve_params(variant, params)
    n = G.n
    if variant is V.FF1:
        p, t = pr.p, pr.t
        stat = n ** (inv(p.p) + inv(t.p) - 1.0) * pnorm(G.row_qnorms(p.q), t.q)
    elif variant is V.FF2 or variant is V.CLASSIC_M2:
        stat = G.frobenius
    elif variant is V.FF3:
        stat = n ** inv(pr.m.p) * pnorm(G.row_max, pr.m.q)
    elif variant is V.FF4:
        stat = n * G.global_max
    else:
        stat = G.max_row_sum
    return BoundValue(float(x_norm_sq) * stat, variant, pr)


def selberg_lhs(fc, G: AbsGram) -> float:
    """``sum_i |(x, y_i)|^2 / rs_i``, never more than ``||x||^2``."""
    a = _moduli(fc)
    _check_lengths(a, G)
    rs = G.row_sums
    if np.any(rs <= 0):
        i = int(np.flatnonzero(rs <= 0)[0])
        raise ZeroVectorRow(f"row {i} of the Gram matrix sums to zero (y_{i} is the zero vector)")
    return float(np.sum(a * a / rs))


def heilbronn_pair(fc, x_norm: float, G: AbsGram) -> tuple:
    """``(sum |(x, y_i)|, ||x|| * (sum_ij G_ij)^(1/2))``; the first never exceeds the second."""
    a = _moduli(fc)
    _check_lengths(a, G)
    return float(a.sum()), float(x_norm) * math.sqrt(G.total_sum)


def compare_M1_M2(G: AbsGram) -> tuple:
    """Max row sum against the Frobenius norm; the smaller one gives the sharper bound."""
    m1, m2 = G.max_row_sum, G.frobenius
    if math.isclose(m1, m2, rel_tol=1e-12, abs_tol=0.0):
        winner = "tie"
    else:
        winner = "M1" if m1 < m2 else "M2"
    return m1, m2, winner


def orthonormal_bombieri_bound(k: int, x_norm: float, fc, params: Optional[BoundParams] = None,
                               form: Form = "derived") -> float:
    """Closed forms of the ``Fk`` bounds for an orthonormal system ``e_1..e_n``.

    Only ``k = 8`` has a distinct printed form:
    ``n^(1/2l) ||x|| (sum |(x,e_i)|^m)^(1/m)``.
    """
    if not 1 <= k <= 9:
        raise ParamError(f"orthonormal bound index must be 1..9, got {k}")
    variant = V(f"F{k}")
    pr = resolve_params(variant, params)
    a = _moduli(fc)
    n = a.shape[0]
    x_norm = float(x_norm)
    amax = float(a.max(initial=0.0))
    asum = float(a.sum())
    if k == 1:
        return math.sqrt(n) * x_norm * amax
    if k == 2:
        return n ** (inv(pr.r.q) / 2) * x_norm * math.sqrt(amax) * math.sqrt(pnorm(a, pr.r.p))
    if k == 3:
        return x_norm * math.sqrt(amax) * math.sqrt(asum)
    if k == 4:
        return math.sqrt(n) * x_norm * math.sqrt(amax) * math.sqrt(pnorm(a, pr.p.p))
    if k == 5:
        return n ** (inv(pr.t.q) / 2) * x_norm * math.sqrt(pnorm(a, pr.p.p) * pnorm(a, pr.t.p))
    if k == 6:
        return x_norm * math.sqrt(pnorm(a, pr.p.p)) * math.sqrt(asum)
    if k == 7:
        return math.sqrt(n) * x_norm * math.sqrt(asum) * math.sqrt(amax)
    if k == 8:
        lead = n ** (inv(pr.m.q) / 2) * x_norm
        if form == "as_printed":
            return lead * pnorm(a, pr.m.p)
        return lead * math.sqrt(asum) * math.sqrt(pnorm(a, pr.m.p))
    return x_norm * asum
