"""Functionals of extensors induced by multivector functions, and their
derivative operators.

An InducedFunctional pairs a function F of k grade-q variables with a fixed
tuple of grade-p anchor multivectors (A^1, ..., A^k); its value on a (p,q)
map t is F(t(A^1), ..., t(A^k)).  Derivatives come in two families:

  * the directional derivative along a grade-p direction A,

        sum_i  (A . A^i) * dF/dX^i   evaluated at (t(A^1), ..., t(A^k)),

    linear in A, with dF/dX^i the standard derivative of F in slot i;

  * the four star operators (curl for wedge, scalar divergence, left
    contracted divergence, gradient for the geometric product),

        sum_i  A^i * dF/dX^i,

    which also equal the grade-p blade frame sum

        sum_J  f^J * (directional derivative along f_J)

    for any frame -- both routes are implemented and their agreement is a
    test target, as is independence from the choice of frame.

The module also carries the bridge to classical matrix calculus: the partial
derivatives of the lifted real function of the n x n frame components of t,
and the reassembly of both derivative families from those partials.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .algebra import (
    Frame,
    Metric,
    Multivector,
    product,
    scalar_value,
)
from .calculus import (
    DEFAULT_FD_STEP,
    MvFunction,
    fd_grad_star,
    grad_star,
)
from .dual import value_of
from .extensor import Extensor


@dataclass(frozen=True)
class InducedFunctional:
    """t -> F(t(A^1), ..., t(A^k)) for fixed grade-p anchors A^i."""

    func: MvFunction
    anchors: tuple[Multivector, ...]
    source_grade: int

    def __post_init__(self):
        object.__setattr__(self, "anchors", tuple(self.anchors))
        if len(self.anchors) != self.func.arity:
            raise ValueError(
                f"{self.func.arity} variables but {len(self.anchors)} anchors"
            )
        if not self.anchors:
            raise ValueError("need at least one anchor")
        for a in self.anchors:
            if not a.is_homogeneous(self.source_grade):
                raise ValueError(f"anchors must be homogeneous of grade {self.source_grade}")
            if a.metric != self.anchors[0].metric:
                raise ValueError("anchors live over different metrics")

    @property
    def metric(self) -> Metric:
        return self.anchors[0].metric

    @property
    def arity(self) -> int:
        return self.func.arity

    def _check_map(self, t: Extensor):
        if t.metric != self.metric:
            raise ValueError("map lives over a different metric")
        if t.p != self.source_grade or t.q != self.func.input_grade:
            raise ValueError(
                f"expected a ({self.source_grade},{self.func.input_grade}) map, "
                f"got ({t.p},{t.q})"
            )

    def arguments(self, t: Extensor) -> tuple[Multivector, ...]:
        self._check_map(t)
        return tuple(t.apply(a) for a in self.anchors)

    def evaluate(self, t: Extensor) -> Multivector:
        return self.func(*self.arguments(t))

    # -- derivatives ---------------------------------------------------------

    def partial_gradients(self, t: Extensor) -> list[Multivector]:
        """Standard derivative of F in each slot, at (t(A^1), ..., t(A^k))."""
        args = self.arguments(t)
        return [grad_star(self.func, args, i, "geometric") for i in range(self.arity)]

    def directional_derivative(self, t: Extensor, direction: Multivector) -> Multivector:
        """Derivative along a grade-p direction; linear in the direction."""
        self._check_map(t)
        if not direction.is_homogeneous(self.source_grade):
            raise ValueError(f"direction must be homogeneous of grade {self.source_grade}")
        weights = [scalar_value(direction, a) for a in self.anchors]
        total = Multivector.zero(self.metric)
        if all(w == 0.0 for w in weights):
            return total
        args = self.arguments(t)
        for i, w in enumerate(weights):
            if w != 0.0:
                total = total + w * grad_star(self.func, args, i, "geometric")
        return total

    def derivative_table(self, t: Extensor, kinds: Sequence[str]) -> dict:
        """Star derivatives for several product kinds, sharing one gradient pass."""
        grads = self.partial_gradients(t)
        out = {}
        for kind in kinds:
            total = Multivector.zero(self.metric)
            for anchor, grad in zip(self.anchors, grads):
                total = total + product(kind, anchor, grad)
            out[kind] = total
        return out

    def derivative(self, t: Extensor, kind: str = "geometric") -> Multivector:
        """Star derivative: curl (wedge), scalar or contracted divergence, or
        gradient (geometric product), in intrinsic anchor-sum form."""
        return self.derivative_table(t, (kind,))[kind]

    def derivative_via_frame(self, t: Extensor, kind: str, frame: Frame) -> Multivector:
        """Same operator through the grade-p blade frame sum; frame-independent."""
        self._check_map(t)
        total = Multivector.zero(self.metric)
        for primal, recip in frame.blade_pairs(self.source_grade):
            total = total + product(kind, recip, self.directional_derivative(t, primal))
        return total

    # -- finite-difference oracle routes --------------------------------------

    def _fd_gradients(self, t: Extensor, step: float) -> list[Multivector]:
        args = self.arguments(t)
        return [
            fd_grad_star(self.func, args, i, "geometric", step)
            for i in range(self.arity)
        ]

    def directional_derivative_fd(
        self, t: Extensor, direction: Multivector, step: float = DEFAULT_FD_STEP
    ) -> Multivector:
        self._check_map(t)
        weights = [scalar_value(direction, a) for a in self.anchors]
        grads = self._fd_gradients(t, step)
        total = Multivector.zero(self.metric)
        for w, grad in zip(weights, grads):
            total = total + w * grad
        return total

    def derivative_fd(
        self, t: Extensor, kind: str = "geometric", step: float = DEFAULT_FD_STEP
    ) -> Multivector:
        grads = self._fd_gradients(t, step)
        total = Multivector.zero(self.metric)
        for anchor, grad in zip(self.anchors, grads):
            total = total + product(kind, anchor, grad)
        return total

    # -- combinators -----------------------------------------------------------

    def _with_func(self, func: MvFunction) -> "InducedFunctional":
        return InducedFunctional(func, self.anchors, self.source_grade)

    def scaled(self, factor: float) -> "InducedFunctional":
        f = self.func
        return self._with_func(
            MvFunction(f.arity, f.input_grade, f.output_grade,
                       lambda *xs: factor * f(*xs))
        )

    def times_constant(self, m: Multivector) -> "InducedFunctional":
        """Right geometric multiplication of the value by a fixed multivector."""
        f = self.func
        return self._with_func(
            MvFunction(f.arity, f.input_grade, None, lambda *xs: f(*xs).geometric(m))
        )

    def __add__(self, other: "InducedFunctional") -> "InducedFunctional":
        if self.anchors != other.anchors or self.source_grade != other.source_grade:
            raise ValueError("functionals must share their anchor tuple")
        f, g = self.func, other.func
        if (f.arity, f.input_grade) != (g.arity, g.input_grade):
            raise ValueError("functions take different variables")
        return self._with_func(
            MvFunction(f.arity, f.input_grade, f.output_grade,
                       lambda *xs: f(*xs) + g(*xs))
        )

    def times_functional(self, other: "InducedFunctional") -> "InducedFunctional":
        """Scalar functional times functional, over a shared anchor tuple."""
        if self.func.output_grade != 0:
            raise ValueError("left factor must be scalar-valued")
        if self.anchors != other.anchors or self.source_grade != other.source_grade:
            raise ValueError("functionals must share their anchor tuple")
        f, g = self.func, other.func
        return self._with_func(
            MvFunction(f.arity, f.input_grade, g.output_grade,
                       lambda *xs: g(*xs) * f(*xs).scalar_part())
        )

    def map_scalar(self, fn: Callable) -> "InducedFunctional":
        """Compose a scalar functional with a smooth map from extcalc.dual."""
        if self.func.output_grade != 0:
            raise ValueError("only scalar functionals compose with scalar maps")
        f = self.func
        metric = self.metric
        return self._with_func(
            MvFunction(
                f.arity, f.input_grade, 0,
                lambda *xs: Multivector.from_scalar(metric, fn(f(*xs).scalar_part())),
            )
        )


# -- bridge to classical matrix calculus ---------------------------------------


def _check_bridge_shape(phi: InducedFunctional):
    if phi.arity != 1 or phi.source_grade != 1 or phi.func.input_grade != 1:
        raise ValueError("bridge needs a single grade-1 anchor and a (1,1) map")
    if phi.func.output_grade != 0:
        raise ValueError("bridge needs a scalar-valued functional")


def component_partials(phi: InducedFunctional, t: Extensor, frame: Frame) -> np.ndarray:
    """d(lifted Phi)/d m[p,q] where m are the frame components of t.

    Entry (p, q) is (anchor . f^p) * (f^q . grad Phi) with the gradient taken
    at t(anchor).
    """
    _check_bridge_shape(phi)
    phi._check_map(t)
    n = phi.metric.dim
    grad = grad_star(phi.func, phi.arguments(t), 0, "geometric")
    anchor = phi.anchors[0]
    a = [scalar_value(anchor, frame.reciprocal[i]) for i in range(n)]
    g = [scalar_value(frame.reciprocal[j], grad) for j in range(n)]
    return np.array([[a[i] * g[j] for j in range(n)] for i in range(n)])


def component_partials_fd(
    phi: InducedFunctional, t: Extensor, frame: Frame, step: float = DEFAULT_FD_STEP
) -> np.ndarray:
    """Central differences of the lifted real function in the components of t."""
    _check_bridge_shape(phi)
    phi._check_map(t)
    n = phi.metric.dim
    anchor = phi.anchors[0]
    a = [scalar_value(anchor, frame.reciprocal[i]) for i in range(n)]
    comps = t.to_components(frame)

    def lifted(m: np.ndarray) -> float:
        x = Multivector.zero(phi.metric)
        for j in range(n):
            coeff = sum(m[i, j] * a[i] for i in range(n))
            x = x + coeff * frame.reciprocal[j]
        return value_of(phi.func(x).scalar_part())

    out = np.zeros((n, n))
    for p in range(n):
        for q in range(n):
            plus = comps.copy()
            minus = comps.copy()
            plus[p, q] += step
            minus[p, q] -= step
            out[p, q] = (lifted(plus) - lifted(minus)) / (2.0 * step)
    return out


def directional_from_partials(
    partials: np.ndarray, direction: Multivector, frame: Frame
) -> Multivector:
    """sum_pq (direction . f_p) partials[p,q] f_q; rebuilds the directional
    derivative of the functional the partials came from."""
    partials = np.asarray(partials, dtype=float)
    n = frame.metric.dim
    if partials.shape != (n, n):
        raise ValueError(f"expected shape {(n, n)}, got {partials.shape}")
    total = Multivector.zero(frame.metric)
    for p in range(n):
        w = scalar_value(direction, frame.vectors[p])
        for q in range(n):
            total = total + (w * partials[p, q]) * frame.vectors[q]
    return total


def star_from_partials(partials: np.ndarray, kind: str, frame: Frame) -> Multivector:
    """sum_pq f_p * (partials[p,q] f_q); rebuilds the star derivative."""
    partials = np.asarray(partials, dtype=float)
    n = frame.metric.dim
    if partials.shape != (n, n):
        raise ValueError(f"expected shape {(n, n)}, got {partials.shape}")
    total = Multivector.zero(frame.metric)
    for p in range(n):
        for q in range(n):
            total = total + product(
                kind, frame.vectors[p], partials[p, q] * frame.vectors[q]
            )
    return total
