"""Dense multivector arithmetic over R^n with a diagonal nondegenerate metric.

Basis blades are indexed by bitmasks: bit k set means generator e_{k+1} is a
factor, so mask 0b101 is e1^e3 and the grade of a blade is the popcount of its
mask.  A multivector stores one coefficient per mask (2^n in total).

Product conventions, for homogeneous A of grade r and B of grade s:

    geometric  AB        full Clifford product
    wedge      A ^ B     <AB>_{r+s}
    scalar     A . B     <(~A) B>_0 if r == s, else 0
    lcontract  A _| B    <(~A) B>_{s-r} if r <= s, else 0

all extended bilinearly.  The reversion normalisation makes blade.blade the
product of its metric entries (so >= 0 in a Euclidean metric) and makes the
reciprocal of a frame blade the same-index blade of the reciprocal frame.

Coefficients are ordinarily floats, but anything supporting +, - and * works;
DiffScalar coefficients propagate exact directional derivatives through every
product.  All values are immutable after construction and every operation is
pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterable, Sequence

import numpy as np

from .dual import DiffScalar, tangent_of, value_of
from .errors import ConfigurationError, DegenerateFrameError

MAX_DIM = 8
PRODUCT_KINDS = ("geometric", "wedge", "scalar", "lcontract")


@dataclass(frozen=True)
class Metric:
    """Diagonal metric: dimension and one nonzero entry per generator."""

    dim: int
    diag: tuple[float, ...] | None = None

    def __post_init__(self):
        if not isinstance(self.dim, int) or not 2 <= self.dim <= MAX_DIM:
            raise ConfigurationError(f"dim must be an integer in [2, {MAX_DIM}], got {self.dim!r}")
        diag = self.diag
        if diag is None:
            diag = (1.0,) * self.dim
        diag = tuple(float(g) for g in diag)
        if len(diag) != self.dim:
            raise ConfigurationError(f"metric has {len(diag)} entries for dim {self.dim}")
        if any(g == 0.0 for g in diag):
            raise ConfigurationError("metric entries must be nonzero")
        object.__setattr__(self, "diag", diag)

    @classmethod
    def euclidean(cls, dim: int) -> "Metric":
        return cls(dim)

    @property
    def size(self) -> int:
        """Number of basis blades, 2^dim."""
        return 1 << self.dim


@dataclass(frozen=True)
class BasisBlade:
    """A basis blade identified by its generator bitmask."""

    mask: int

    @property
    def grade(self) -> int:
        return self.mask.bit_count()

    @property
    def name(self) -> str:
        return blade_name(self.mask)


def blade_name(mask: int) -> str:
    if mask == 0:
        return "1"
    return "e" + "".join(str(k + 1) for k in range(mask.bit_length()) if mask >> k & 1)


def _reorder_sign(a: int, b: int) -> float:
    """Sign from reordering the concatenated generators of blades a, b."""
    a >>= 1
    swaps = 0
    while a:
        swaps += (a & b).bit_count()
        a >>= 1
    return -1.0 if swaps & 1 else 1.0


def _reverse_sign(grade: int) -> float:
    return -1.0 if (grade * (grade - 1) // 2) & 1 else 1.0


@dataclass(frozen=True)
class _Tables:
    grades: tuple[int, ...]
    weight: tuple[float, ...]  # blade "squared norm": product of touched metric entries
    reverse_signs: tuple[float, ...]
    signs: dict  # kind -> size x size tuple-of-tuples; result mask is always i ^ j


@lru_cache(maxsize=None)
def _tables(metric: Metric) -> _Tables:
    size = metric.size
    grades = tuple(m.bit_count() for m in range(size))
    weight = []
    for m in range(size):
        w = 1.0
        for k in range(metric.dim):
            if m >> k & 1:
                w *= metric.diag[k]
        weight.append(w)
    geometric = [[0.0] * size for _ in range(size)]
    wedge = [[0.0] * size for _ in range(size)]
    scalar = [[0.0] * size for _ in range(size)]
    lcontract = [[0.0] * size for _ in range(size)]
    for i in range(size):
        rev_i = _reverse_sign(grades[i])
        for j in range(size):
            s = _reorder_sign(i, j) * weight[i & j]
            geometric[i][j] = s
            if not i & j:
                wedge[i][j] = s
            if i & j == i:
                lcontract[i][j] = rev_i * s
        scalar[i][i] = weight[i]
    freeze = lambda rows: tuple(tuple(r) for r in rows)
    return _Tables(
        grades=grades,
        weight=tuple(weight),
        reverse_signs=tuple(_reverse_sign(g) for g in grades),
        signs={
            "geometric": freeze(geometric),
            "wedge": freeze(wedge),
            "scalar": freeze(scalar),
            "lcontract": freeze(lcontract),
        },
    )


def _as_coeff(c):
    if isinstance(c, DiffScalar):
        return c
    return float(c)


def _is_zero(c) -> bool:
    if isinstance(c, DiffScalar):
        return c.value == 0.0 and c.tangent == 0.0
    return c == 0.0


class Multivector:
    """Immutable element of the full algebra: one coefficient per basis blade."""

    __slots__ = ("metric", "coeffs", "_nz")

    def __init__(self, metric: Metric, coeffs: Iterable):
        coeffs = tuple(_as_coeff(c) for c in coeffs)
        if len(coeffs) != metric.size:
            raise ValueError(f"expected {metric.size} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "metric", metric)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def _raw(cls, metric: Metric, coeffs: tuple) -> "Multivector":
        """Internal constructor for coefficients already float or DiffScalar."""
        out = object.__new__(cls)
        object.__setattr__(out, "metric", metric)
        object.__setattr__(out, "coeffs", coeffs)
        return out

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, metric: Metric) -> "Multivector":
        return cls(metric, (0.0,) * metric.size)

    @classmethod
    def from_scalar(cls, metric: Metric, s) -> "Multivector":
        coeffs = [0.0] * metric.size
        coeffs[0] = s
        return cls(metric, coeffs)

    @classmethod
    def from_blade(cls, metric: Metric, mask: int, coeff=1.0) -> "Multivector":
        if not 0 <= mask < metric.size:
            raise ValueError(f"blade mask {mask} out of range for dim {metric.dim}")
        coeffs = [0.0] * metric.size
        coeffs[mask] = coeff
        return cls(metric, coeffs)

    # -- structure ---------------------------------------------------------

    def coeff(self, mask: int):
        return self.coeffs[mask]

    def scalar_part(self):
        """Grade-0 coefficient (a float or DiffScalar)."""
        return self.coeffs[0]

    def values(self) -> np.ndarray:
        return np.array([value_of(c) for c in self.coeffs])

    def value_part(self) -> "Multivector":
        return Multivector._raw(self.metric, tuple(value_of(c) for c in self.coeffs))

    def tangent_part(self) -> "Multivector":
        return Multivector._raw(self.metric, tuple(tangent_of(c) for c in self.coeffs))

    def with_tangent(self, direction: "Multivector") -> "Multivector":
        """Lift to DiffScalar coefficients, seeding tangents from `direction`."""
        self._check_metric(direction)
        return Multivector._raw(
            self.metric,
            tuple(
                DiffScalar(value_of(c), value_of(d))
                for c, d in zip(self.coeffs, direction.coeffs)
            ),
        )

    def nonzero_items(self):
        try:
            return self._nz
        except AttributeError:
            pass
        items = [(m, c) for m, c in enumerate(self.coeffs) if not _is_zero(c)]
        object.__setattr__(self, "_nz", items)
        return items

    def grades(self) -> frozenset:
        grades = _tables(self.metric).grades
        return frozenset(grades[m] for m, _ in self.nonzero_items())

    def is_homogeneous(self, grade: int) -> bool:
        """True when supported on grade `grade` only (the zero element counts)."""
        return self.grades() <= {grade}

    def norm_inf(self) -> float:
        return max((abs(value_of(c)) for c in self.coeffs), default=0.0)

    # -- linear operations -------------------------------------------------

    def _check_metric(self, other: "Multivector"):
        if self.metric != other.metric:
            raise ConfigurationError("operands live over different metrics")

    def __add__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        self._check_metric(other)
        return Multivector._raw(
            self.metric, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        self._check_metric(other)
        return Multivector._raw(
            self.metric, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self):
        return Multivector._raw(self.metric, tuple(-c for c in self.coeffs))

    def _scaled(self, factor):
        if not isinstance(factor, DiffScalar):
            factor = float(factor)
        return Multivector._raw(self.metric, tuple(factor * c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return self.geometric(other)
        if isinstance(other, (int, float, DiffScalar)):
            return self._scaled(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, DiffScalar)):
            return self._scaled(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return self._scaled(1.0 / other)
        return NotImplemented

    def __xor__(self, other):
        return self.wedge(other)

    def __or__(self, other):
        return self.scalar_product(other)

    def grade_project(self, grade: int) -> "Multivector":
        if not 0 <= grade <= self.metric.dim:
            raise ValueError(f"grade {grade} out of range for dim {self.metric.dim}")
        grades = _tables(self.metric).grades
        return Multivector._raw(
            self.metric,
            tuple(c if grades[m] == grade else 0.0 for m, c in enumerate(self.coeffs)),
        )

    def reverse(self) -> "Multivector":
        signs = _tables(self.metric).reverse_signs
        return Multivector._raw(
            self.metric, tuple(s * c for s, c in zip(signs, self.coeffs))
        )

    # -- products ----------------------------------------------------------

    def _product(self, kind: str, other: "Multivector") -> "Multivector":
        if not isinstance(other, Multivector):
            raise TypeError(f"expected a Multivector, got {type(other).__name__}")
        self._check_metric(other)
        signs = _tables(self.metric).signs[kind]
        out = [0.0] * self.metric.size
        right = other.nonzero_items()
        for i, ci in self.nonzero_items():
            row = signs[i]
            for j, cj in right:
                s = row[j]
                if s:
                    k = i ^ j
                    out[k] = out[k] + s * ci * cj
        return Multivector._raw(self.metric, tuple(out))

    def geometric(self, other: "Multivector") -> "Multivector":
        return self._product("geometric", other)

    def wedge(self, other: "Multivector") -> "Multivector":
        return self._product("wedge", other)

    def scalar_product(self, other: "Multivector") -> "Multivector":
        return self._product("scalar", other)

    def lcontract(self, other: "Multivector") -> "Multivector":
        return self._product("lcontract", other)

    def __repr__(self):
        terms = [
            f"{value_of(c):g}*{blade_name(m)}" if m else f"{value_of(c):g}"
            for m, c in self.nonzero_items()
        ]
        return " + ".join(terms) if terms else "0"


def product(kind: str, a: Multivector, b: Multivector) -> Multivector:
    """One of the four bilinear products; kind in PRODUCT_KINDS."""
    if kind not in PRODUCT_KINDS:
        raise ValueError(f"unknown product kind {kind!r}")
    return a._product(kind, b)


def grade_masks(dim: int, grade: int) -> list[int]:
    """Masks of the grade-`grade` blades, in increasing mask order."""
    if not 0 <= grade <= dim:
        raise ValueError(f"grade {grade} out of range for dim {dim}")
    return [m for m in range(1 << dim) if m.bit_count() == grade]


def blade_basis(metric: Metric, grade: int) -> list[BasisBlade]:
    """The C(dim, grade) basis blades of a grade, in increasing mask order."""
    return [BasisBlade(m) for m in grade_masks(metric.dim, grade)]


def basis_vectors(metric: Metric) -> list[Multivector]:
    return [Multivector.from_blade(metric, 1 << k) for k in range(metric.dim)]


def unit_pseudoscalar(metric: Metric) -> Multivector:
    return Multivector.from_blade(metric, metric.size - 1)


def wedge_all(metric: Metric, factors: Sequence[Multivector]) -> Multivector:
    """Wedge of the factors in order; the empty product is the scalar 1."""
    return reduce(lambda a, b: a.wedge(b), factors, Multivector.from_scalar(metric, 1.0))


def scalar_value(a: Multivector, b: Multivector) -> float:
    """Value part of the scalar product, as a plain float."""
    return value_of(a.scalar_product(b).scalar_part())


def max_abs_diff(a: Multivector, b: Multivector) -> float:
    return float(np.max(np.abs(a.values() - b.values())))


def reciprocal_frame(vectors: Sequence[Multivector]) -> list[Multivector]:
    """Vectors f^i with f^i . f_j = delta_ij under the ambient metric."""
    vectors = list(vectors)
    if not vectors:
        raise DegenerateFrameError("empty frame")
    metric = vectors[0].metric
    n = metric.dim
    if len(vectors) != n:
        raise DegenerateFrameError(f"need {n} vectors, got {len(vectors)}")
    for v in vectors:
        if not v.is_homogeneous(1):
            raise DegenerateFrameError("frame vectors must be grade 1")
    gram = np.array([[scalar_value(u, v) for v in vectors] for u in vectors])
    if abs(np.linalg.det(gram)) < 1e-12 * max(np.max(np.abs(gram)), 1.0) ** n:
        raise DegenerateFrameError("frame vectors are (numerically) dependent")
    inv = np.linalg.inv(gram)
    out = []
    for i in range(n):
        acc = Multivector.zero(metric)
        for j in range(n):
            acc = acc + inv[i, j] * vectors[j]
        out.append(acc)
    return out


@dataclass(frozen=True)
class Frame:
    """A basis of grade-1 vectors together with its reciprocal basis."""

    vectors: tuple[Multivector, ...]
    reciprocal: tuple[Multivector, ...]

    def __post_init__(self):
        object.__setattr__(self, "_pair_cache", {})

    @classmethod
    def from_vectors(cls, vectors: Sequence[Multivector]) -> "Frame":
        return cls(tuple(vectors), tuple(reciprocal_frame(vectors)))

    @classmethod
    def orthonormal(cls, metric: Metric) -> "Frame":
        """The coordinate frame; reciprocals are e_k / g_kk."""
        return _orthonormal_frame(metric)

    @property
    def metric(self) -> Metric:
        return self.vectors[0].metric

    def blade(self, mask: int) -> Multivector:
        factors = [self.vectors[k] for k in range(self.metric.dim) if mask >> k & 1]
        return wedge_all(self.metric, factors)

    def reciprocal_blade(self, mask: int) -> Multivector:
        factors = [self.reciprocal[k] for k in range(self.metric.dim) if mask >> k & 1]
        return wedge_all(self.metric, factors)

    def blade_pairs(self, grade: int) -> list[tuple[Multivector, Multivector]]:
        """(primal, reciprocal) blade pairs of a grade, increasing mask order."""
        cache = self._pair_cache
        if grade not in cache:
            cache[grade] = [
                (self.blade(m), self.reciprocal_blade(m))
                for m in grade_masks(self.metric.dim, grade)
            ]
        return cache[grade]


@lru_cache(maxsize=None)
def _orthonormal_frame(metric: Metric) -> Frame:
    basis = basis_vectors(metric)
    recip = [(1.0 / metric.diag[k]) * basis[k] for k in range(metric.dim)]
    return Frame(tuple(basis), tuple(recip))


def _as_rng(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def random_multivector(metric: Metric, grade: int, rng) -> Multivector:
    """Homogeneous multivector with coefficients uniform in [-1, 1)."""
    rng = _as_rng(rng)
    coeffs = [0.0] * metric.size
    for m in grade_masks(metric.dim, grade):
        coeffs[m] = float(rng.uniform(-1.0, 1.0))
    return Multivector(metric, coeffs)
