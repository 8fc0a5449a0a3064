import numpy as np
import pytest

from extcalc.algebra import (
    Frame,
    Metric,
    Multivector,
    basis_vectors,
    max_abs_diff,
    random_multivector,
)
from extcalc.calculus import MvFunction, dir_deriv, fd_dir_deriv, fd_grad_star, grad_star
from extcalc.dual import value_of
from extcalc.extensor import Extensor

E3 = Metric.euclidean(3)


def dot_with(c):
    return MvFunction(1, 1, 0, lambda x: x.scalar_product(c))


def wedge_with(c):
    return MvFunction(1, 1, 2, lambda x: x.wedge(c))


IDENTITY = MvFunction(1, 1, 1, lambda x: x)


# -- directional derivatives -------------------------------------------------


def test_dir_deriv_of_dot_is_direction_dot_constant():
    # F(x) = x.y gives derivative (B.y) along B
    e1, e2, _ = basis_vectors(E3)
    out = dir_deriv(dot_with(e1), (e2,), 0, e1)
    assert max_abs_diff(out, Multivector.from_scalar(E3, 1.0)) == 0.0


def test_dir_deriv_of_square_is_twice_dot():
    e1, _, _ = basis_vectors(E3)
    square = MvFunction(1, 1, 0, lambda x: x.scalar_product(x))
    out = dir_deriv(square, (e1,), 0, e1)
    assert max_abs_diff(out, Multivector.from_scalar(E3, 2.0)) == 0.0


def test_dir_deriv_along_zero_is_zero():
    rng = np.random.default_rng(1)
    x = random_multivector(E3, 1, rng)
    out = dir_deriv(dot_with(x), (x,), 0, Multivector.zero(E3))
    assert out.norm_inf() == 0.0


def test_dir_deriv_is_linear_in_direction():
    rng = np.random.default_rng(2)
    c = random_multivector(E3, 1, rng)
    func = MvFunction(1, 1, 0, lambda x: x.scalar_product(c).geometric(x.scalar_product(x)))
    x = random_multivector(E3, 1, rng)
    a = random_multivector(E3, 1, rng)
    b = random_multivector(E3, 1, rng)
    combo = dir_deriv(func, (x,), 0, 2.0 * a - 3.0 * b)
    split = 2.0 * dir_deriv(func, (x,), 0, a) - 3.0 * dir_deriv(func, (x,), 0, b)
    assert max_abs_diff(combo, split) < 1e-12


def test_dir_deriv_validates_slot_and_grade():
    e1, e2, _ = basis_vectors(E3)
    with pytest.raises(ValueError):
        dir_deriv(dot_with(e1), (e2,), 1, e1)
    with pytest.raises(ValueError):
        dir_deriv(dot_with(e1), (e2,), 0, e1 ^ e2)
    with pytest.raises(ValueError):
        dir_deriv(dot_with(e1), (e2, e2), 0, e1)


# -- gradients ------------------------------------------------------------------


def test_gradient_of_identity_is_dimension():
    # the standard derivative of x |-> x is the scalar n
    rng = np.random.default_rng(3)
    x = random_multivector(E3, 1, rng)
    out = grad_star(IDENTITY, (x,), 0, "geometric")
    assert max_abs_diff(out, Multivector.from_scalar(E3, 3.0)) < 1e-14


def test_gradient_of_dot_with_constant_is_the_constant():
    rng = np.random.default_rng(4)
    y = random_multivector(E3, 1, rng)
    x = random_multivector(E3, 1, rng)
    assert max_abs_diff(grad_star(dot_with(y), (x,), 0), y) < 1e-14


def test_gradient_of_wedge_with_constant():
    # grad of x |-> x ^ y is (n-1) y
    rng = np.random.default_rng(5)
    y = random_multivector(E3, 1, rng)
    x = random_multivector(E3, 1, rng)
    out = grad_star(wedge_with(y), (x,), 0, "geometric")
    assert max_abs_diff(out, 2.0 * y) < 1e-14


def test_gradient_in_curved_metric_and_dim():
    for metric in (Metric.euclidean(2), Metric(4, (2.0, 1.0, -1.0, 1.0))):
        rng = np.random.default_rng(6)
        x = random_multivector(metric, 1, rng)
        out = grad_star(IDENTITY, (x,), 0, "geometric")
        assert max_abs_diff(out, Multivector.from_scalar(metric, metric.dim)) < 1e-13


def test_gradient_is_frame_independent():
    rng = np.random.default_rng(7)
    carrier = Extensor.random_invertible(E3, rng)
    frame = Frame.from_vectors([carrier(e) for e in basis_vectors(E3)])
    c = random_multivector(E3, 1, rng)
    func = MvFunction(1, 1, 0, lambda x: x.scalar_product(c).geometric(x.scalar_product(x)))
    x = random_multivector(E3, 1, rng)
    for kind in ("geometric", "wedge", "scalar", "lcontract"):
        a = grad_star(func, (x,), 0, kind)
        b = grad_star(func, (x,), 0, kind, frame)
        assert max_abs_diff(a, b) < 1e-8


def test_gradient_of_two_slot_function():
    # grad in the second slot of (x, y) |-> x.y is x
    rng = np.random.default_rng(8)
    dot = MvFunction(2, 1, 0, lambda x, y: x.scalar_product(y))
    x = random_multivector(E3, 1, rng)
    y = random_multivector(E3, 1, rng)
    assert max_abs_diff(grad_star(dot, (x, y), 1), x) < 1e-14


# -- finite differences -----------------------------------------------------------


def test_fd_matches_exact_for_affine_function():
    e1, e2, _ = basis_vectors(E3)
    out = fd_dir_deriv(dot_with(e1), (e2,), 0, e1, 1e-5)
    assert abs(out.values()[0] - 1.0) < 1e-9


def test_fd_matches_exact_for_quadratic():
    e1, _, _ = basis_vectors(E3)
    square = MvFunction(1, 1, 0, lambda x: x.scalar_product(x))
    out = fd_dir_deriv(square, (e1,), 0, e1, 1e-5)
    assert abs(out.values()[0] - 2.0) < 1e-8


def test_fd_zero_direction_is_exactly_zero():
    e1, _, _ = basis_vectors(E3)
    square = MvFunction(1, 1, 0, lambda x: x.scalar_product(x))
    out = fd_dir_deriv(square, (e1,), 0, Multivector.zero(E3))
    assert out.norm_inf() == 0.0


def test_fd_requires_positive_step():
    e1, e2, _ = basis_vectors(E3)
    with pytest.raises(ValueError):
        fd_dir_deriv(dot_with(e1), (e2,), 0, e1, 0.0)


def test_oracle_agreement_on_random_polynomials():
    # cubic-ish compositions of the four products against central differences
    rng = np.random.default_rng(9)
    c1 = random_multivector(E3, 1, rng)
    c2 = random_multivector(E3, 2, rng)
    funcs = [
        MvFunction(1, 1, 0, lambda x: x.scalar_product(c1)),
        MvFunction(1, 1, 0, lambda x: x.scalar_product(x).geometric(x.scalar_product(c1))),
        MvFunction(1, 1, 2, lambda x: x.wedge(c1)),
        MvFunction(1, 1, 1, lambda x: x.lcontract(c2)),
        MvFunction(2, 1, 0, lambda x, y: x.scalar_product(y)),
    ]
    for func in funcs:
        args = tuple(random_multivector(E3, 1, rng) for _ in range(func.arity))
        for slot in range(func.arity):
            direction = random_multivector(E3, 1, rng)
            exact = dir_deriv(func, args, slot, direction)
            approx = fd_dir_deriv(func, args, slot, direction, 1e-5)
            assert max_abs_diff(exact, approx) < 1e-5


def test_fd_gradient_matches_exact_gradient():
    rng = np.random.default_rng(10)
    c = random_multivector(E3, 1, rng)
    func = MvFunction(1, 1, 0, lambda x: x.scalar_product(c).geometric(x.scalar_product(x)))
    x = random_multivector(E3, 1, rng)
    for kind in ("geometric", "wedge", "scalar", "lcontract"):
        assert max_abs_diff(
            grad_star(func, (x,), 0, kind), fd_grad_star(func, (x,), 0, kind)
        ) < 1e-6


# -- product rule sanity ------------------------------------------------------------


def test_product_rule_for_scalar_valued_functions():
    rng = np.random.default_rng(12)
    c1 = random_multivector(E3, 1, rng)
    c2 = random_multivector(E3, 1, rng)
    phi = MvFunction(1, 1, 0, lambda x: x.scalar_product(c1))
    psi = MvFunction(1, 1, 0, lambda x: x.scalar_product(c2))
    both = MvFunction(1, 1, 0, lambda x: phi(x).geometric(psi(x)))
    x = random_multivector(E3, 1, rng)
    b = random_multivector(E3, 1, rng)
    lhs = dir_deriv(both, (x,), 0, b)
    rhs = dir_deriv(phi, (x,), 0, b) * value_of(psi(x).scalar_part()) + dir_deriv(
        psi, (x,), 0, b
    ) * value_of(phi(x).scalar_part())
    assert max_abs_diff(lhs, rhs) < 1e-10


def test_evaluator_agrees_between_plain_and_lifted_scalars():
    # zero-tangent DiffScalar coefficients change nothing
    rng = np.random.default_rng(13)
    c = random_multivector(E3, 1, rng)
    func = MvFunction(1, 1, 0, lambda x: x.scalar_product(c).geometric(x.scalar_product(x)))
    x = random_multivector(E3, 1, rng)
    lifted = func(x.with_tangent(Multivector.zero(E3)))
    assert max_abs_diff(lifted.value_part(), func(x)) == 0.0
    assert lifted.tangent_part().norm_inf() == 0.0
