"""Scalars, vector systems, inner products and absolute Gram statistics.

Inner products are linear in the first slot and conjugate-linear in the
second: ``inner(u, v) = sum_k u_k * conj(v_k)``.  Everything else in the
package is built on :func:`inner`, :func:`gram_abs` and the row statistics
cached on :class:`AbsGram`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Literal, Optional, Sequence, Union

import numpy as np

from .errors import DimensionMismatch, NotEmbeddable, ParamError, ValidationError

Field = Literal["real", "complex"]
Scalar = Union[float, complex]

FIELDS = ("real", "complex")


def scalar(value) -> Scalar:
    """Coerce ``value`` to a finite Python float or complex."""
    if isinstance(value, (bool, np.bool_)):
        raise ValidationError(f"boolean is not a scalar: {value!r}")
    if isinstance(value, (complex, np.complexfloating)):
        out: Scalar = complex(value)
        ok = math.isfinite(out.real) and math.isfinite(out.imag)
    else:
        out = float(value)
        ok = math.isfinite(out)
    if not ok:
        raise ValidationError(f"scalar must be finite, got {value!r}")
    return out


def modulus(s: Scalar) -> float:
    return abs(s)


def _as_array(values, field: str) -> np.ndarray:
    dtype = np.float64 if field == "real" else np.complex128
    if field == "real":
        raw = np.asarray(values)
        if np.iscomplexobj(raw):
            if np.any(raw.imag != 0):
                raise ValidationError("real field forbids nonzero imaginary parts")
            raw = raw.real
        arr = np.array(raw, dtype=dtype)
    else:
        arr = np.array(values, dtype=dtype)
    if not np.all(np.isfinite(arr)):
        raise ValidationError("all scalars must be finite (no NaN or infinity)")
    return arr


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def as_vector(values, field: Field = "real") -> np.ndarray:
    """Validated, read-only 1-D array over ``field``."""
    if field not in FIELDS:
        raise ValidationError(f"unknown field {field!r}")
    arr = _as_array(values, field)
    if arr.ndim != 1:
        raise ValidationError("a vector must be one-dimensional")
    return _frozen(arr)


@dataclass(frozen=True, eq=False)
class VectorSystem:
    """``n`` vectors of common dimension ``dim`` over the real or complex field.

    ``vectors`` is stored as an ``(n, dim)`` read-only array; ``n`` may be 0.
    """

    field: Field
    dim: int
    vectors: np.ndarray

    def __post_init__(self):
        if self.field not in FIELDS:
            raise ValidationError(f"unknown field {self.field!r}")
        if not isinstance(self.dim, (int, np.integer)) or self.dim < 1:
            raise ValidationError(f"dim must be a positive integer, got {self.dim!r}")
        raw = self.vectors
        if len(raw) == 0:
            arr = np.zeros((0, self.dim), dtype=np.float64 if self.field == "real" else np.complex128)
        else:
            if not isinstance(raw, np.ndarray):
                lengths = {len(row) for row in raw}
                if lengths != {self.dim}:
                    raise DimensionMismatch(
                        f"all vectors must have length {self.dim}, got lengths {sorted(lengths)}"
                    )
            arr = _as_array(raw, self.field)
            if arr.ndim != 2 or arr.shape[1] != self.dim:
                raise DimensionMismatch(
                    f"vectors must form an (n, {self.dim}) array, got shape {arr.shape}"
                )
        object.__setattr__(self, "dim", int(self.dim))
        object.__setattr__(self, "vectors", _frozen(arr))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: Field = "real", dim: Optional[int] = None):
        if dim is None:
            if len(rows) == 0:
                raise ValidationError("dim is required for an empty system")
            dim = len(rows[0])
        return cls(field, dim, rows)

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> np.ndarray:
        return self.vectors[i]


@dataclass(frozen=True, eq=False)
class Coefficients:
    """Scalars ``c_1..c_n`` with their cached moduli."""

    values: np.ndarray
    moduli: np.ndarray = field(init=False)

    def __post_init__(self):
        vals = np.asarray(self.values)
        field_ = "complex" if np.iscomplexobj(vals) else "real"
        vals = _as_array(vals, field_) if vals.size else np.zeros(0)
        if vals.ndim != 1:
            raise ValidationError("coefficients must be one-dimensional")
        object.__setattr__(self, "values", _frozen(vals))
        object.__setattr__(self, "moduli", _frozen(np.abs(vals).astype(np.float64)))

    def __len__(self) -> int:
        return self.values.shape[0]

    def conj(self) -> "Coefficients":
        return Coefficients(np.conj(self.values))


@dataclass(frozen=True)
class ExponentPair:
    """A Hölder exponent ``p`` tagged as ``one``, ``finite`` (> 1) or ``infinity``.

    The conjugate ``q`` (``1/p + 1/q = 1``) is always derived, never stored.
    """

    kind: Literal["one", "finite", "infinity"]
    value: Optional[float] = None

    def __post_init__(self):
        if self.kind == "finite":
            v = self.value
            if v is None or not math.isfinite(v) or v <= 1.0:
                raise ParamError(f"finite exponent must be a real > 1, got {v!r}")
            object.__setattr__(self, "value", float(v))
        elif self.kind in ("one", "infinity"):
            if self.value is not None:
                raise ParamError(f"{self.kind} exponent carries no value")
        else:
            raise ParamError(f"unknown exponent kind {self.kind!r}")

    @classmethod
    def of(cls, x) -> "ExponentPair":
        """Build from a number or one of the strings ``one``/``inf``/``infinity``."""
        if isinstance(x, ExponentPair):
            return x
        if isinstance(x, str):
            s = x.strip().lower()
            if s in ("one", "1"):
                return cls("one")
            if s in ("inf", "infinity", "+inf"):
                return cls("infinity")
            try:
                x = float(s)
            except ValueError:
                raise ParamError(f"cannot parse exponent {x!r}") from None
        if isinstance(x, bool):
            raise ParamError(f"cannot use a boolean as exponent: {x!r}")
        v = float(x)
        if v == 1.0:
            return cls("one")
        if v == math.inf:
            return cls("infinity")
        return cls("finite", v)

    @property
    def p(self) -> float:
        if self.kind == "one":
            return 1.0
        if self.kind == "infinity":
            return math.inf
        return self.value

    @property
    def q(self) -> float:
        return self.conjugate().p

    def conjugate(self) -> "ExponentPair":
        if self.kind == "one":
            return ExponentPair("infinity")
        if self.kind == "infinity":
            return ExponentPair("one")
        v = self.value
        return ExponentPair("finite", v / (v - 1.0))

    def __str__(self) -> str:
        if self.kind == "one":
            return "1"
        if self.kind == "infinity":
            return "inf"
        return format(self.value, ".17g")


def inv(p: float) -> float:
    """``1/p`` with ``1/inf = 0``."""
    return 0.0 if p == math.inf else 1.0 / p


def pnorm(values: np.ndarray, p: float) -> float:
    """``(sum |v|^p)^(1/p)`` for nonnegative ``values``; ``p = inf`` gives the max.

    Scaled by the maximum so that large exponents cannot overflow.
    """
    if values.size == 0:
        return 0.0
    top = float(values.max())
    if p == 1.0:
        return float(values.sum())
    if p == math.inf or top == 0.0:
        return top
    return top * float(np.sum((values / top) ** p)) ** (1.0 / p)


def inner(u, v) -> Scalar:
    """``sum_k u_k * conj(v_k)``; a float when both inputs are real."""
    u = np.asarray(u)
    v = np.asarray(v)
    if u.shape != v.shape or u.ndim != 1:
        raise DimensionMismatch(f"inner product of shapes {u.shape} and {v.shape}")
    out = np.vdot(v, u)
    if np.iscomplexobj(u) or np.iscomplexobj(v):
        return complex(out)
    return float(out)


def fourier_coeffs(x, Y: VectorSystem) -> Coefficients:
    """The Fourier coefficients ``(x, y_i)``."""
    x = np.asarray(x)
    if x.ndim != 1 or x.shape[0] != Y.dim:
        raise DimensionMismatch(f"x has shape {x.shape}, system dimension is {Y.dim}")
    if Y.field == "real" and np.iscomplexobj(x) and np.any(x.imag != 0):
        raise DimensionMismatch("complex x against a real system")
    if Y.n == 0:
        return Coefficients(np.zeros(0))
    # (x, y_i) = sum_k x_k conj(y_ik)
    return Coefficients(Y.vectors.conj() @ x)


@dataclass(frozen=True, eq=False)
class AbsGram:
    """Entry-wise absolute Gram matrix ``G_ij = |(y_i, y_j)|`` with cached statistics."""

    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=np.float64)
        if arr.size == 0:
            arr = np.zeros((0, 0))
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise DimensionMismatch(f"Gram matrix must be square, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)) or np.any(arr < 0):
            raise ValidationError("Gram entries must be finite and nonnegative")
        object.__setattr__(self, "entries", _frozen(arr))
        object.__setattr__(self, "_qnorms", {})

    @classmethod
    def identity(cls, n: int) -> "AbsGram":
        return cls(np.eye(n))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @cached_property
    def row_sums(self) -> np.ndarray:
        return _frozen(self.entries.sum(axis=1))

    @cached_property
    def row_max(self) -> np.ndarray:
        return _frozen(self.entries.max(axis=1, initial=0.0))

    @cached_property
    def total_sum(self) -> float:
        return float(self.row_sums.sum())

    @cached_property
    def global_max(self) -> float:
        return float(self.entries.max(initial=0.0))

    @cached_property
    def max_row_sum(self) -> float:
        return float(self.row_sums.max(initial=0.0))

    @cached_property
    def frobenius(self) -> float:
        """``(sum_ij G_ij^2)^(1/2)``."""
        return float(np.sqrt(np.sum(self.entries * self.entries)))

    def row_qnorms(self, q: float) -> np.ndarray:
        """Vector of row ``q``-norms; ``q = 1`` is the row sums, ``q = inf`` the row maxima."""
        if q == 1.0:
            return self.row_sums
        if q == math.inf:
            return self.row_max
        cache = self._qnorms
        out = cache.get(q)
        if out is None:
            G = self.entries
            top = G.max(axis=1, initial=0.0)
            safe = np.where(top > 0, top, 1.0)
            out = top * np.sum((G / safe[:, None]) ** q, axis=1) ** (1.0 / q)
            out = _frozen(out)
            if len(cache) < 64:
                cache[q] = out
        return out


def gram(Y: VectorSystem) -> np.ndarray:
    """The signed Gram matrix ``(y_i, y_j)``."""
    V = Y.vectors
    return V @ V.conj().T


def gram_abs(Y: VectorSystem) -> AbsGram:
    """Absolute Gram matrix of ``Y``; exactly symmetric by construction."""
    A = np.abs(gram(Y))
    upper = np.triu(A)
    return AbsGram(upper + np.triu(A, 1).T)


def aggregate(G: AbsGram, kind: str, i: Optional[int] = None, q: Optional[float] = None) -> float:
    """Named scalar statistic of ``G``.

    ``kind`` is one of ``row_sum``, ``row_qnorm``, ``row_max`` (all need ``i``),
    ``total_sum`` or ``global_max``.
    """
    if kind in ("row_sum", "row_qnorm", "row_max"):
        if i is None or not 0 <= i < G.n:
            raise IndexError(f"row index {i!r} out of range for n={G.n}")
        if kind == "row_sum":
            return float(G.row_sums[i])
        if kind == "row_max":
            return float(G.row_max[i])
        if q is None:
            raise ParamError("row_qnorm needs q")
        q = float(q)
        if not q > 1.0:
            raise ParamError(f"row_qnorm needs q in (1, inf], got {q}")
        return float(G.row_qnorms(q)[i])
    if kind == "total_sum":
        return G.total_sum
    if kind == "global_max":
        return G.global_max
    raise ValueError(f"unknown aggregate {kind!r}")


def canonical_orthonormal(n: int, d: int, field: Field = "real") -> VectorSystem:
    """The first ``n`` standard basis vectors of ``K^d``."""
    if n > d:
        raise NotEmbeddable(f"cannot fit {n} orthonormal vectors in dimension {d}")
    dtype = np.float64 if field == "real" else np.complex128
    return VectorSystem(field, d, np.eye(n, d, dtype=dtype))
