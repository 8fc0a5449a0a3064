import numpy as np
import pytest

from extcalc.algebra import (
    BasisBlade,
    Frame,
    Metric,
    Multivector,
    basis_vectors,
    blade_basis,
    blade_name,
    max_abs_diff,
    product,
    random_multivector,
    reciprocal_frame,
    scalar_value,
    unit_pseudoscalar,
)
from extcalc.errors import ConfigurationError, DegenerateFrameError

E3 = Metric.euclidean(3)


def vecs(metric):
    return basis_vectors(metric)


# -- metric ----------------------------------------------------------------


def test_metric_defaults_to_euclidean():
    assert E3.diag == (1.0, 1.0, 1.0)
    assert E3.size == 8


@pytest.mark.parametrize("dim", [0, 1, 9])
def test_metric_dim_bounds(dim):
    with pytest.raises(ConfigurationError):
        Metric(dim)


def test_metric_rejects_zero_entries():
    with pytest.raises(ConfigurationError):
        Metric(2, (1.0, 0.0))
    with pytest.raises(ConfigurationError):
        Metric(3, (1.0, 1.0))  # wrong arity


def test_metric_mismatch_is_configuration_error():
    a = basis_vectors(E3)[0]
    b = basis_vectors(Metric.euclidean(2))[0]
    with pytest.raises(ConfigurationError):
        a.geometric(b)


# -- products: frozen examples ------------------------------------------------


def test_generator_squares_to_metric_entry():
    e1, _, _ = vecs(E3)
    assert max_abs_diff(e1 * e1, Multivector.from_scalar(E3, 1.0)) == 0.0
    weighted = Metric(2, (2.0, -3.0))
    f1, f2 = vecs(weighted)
    assert (f1 * f1).values()[0] == 2.0
    assert (f2 * f2).values()[0] == -3.0


def test_wedge_of_vector_with_itself_vanishes():
    e1, _, _ = vecs(E3)
    assert (e1 ^ e1).norm_inf() == 0.0


def test_bilinear_expansion_example():
    # (e1+e2)(e1-e2) = e1e1 - e1e2 + e2e1 - e2e2 = -2 e12
    e1, e2, _ = vecs(E3)
    expected = -2.0 * (e1 ^ e2)
    assert max_abs_diff((e1 + e2) * (e1 - e2), expected) == 0.0


def test_scalar_product_of_bivector_with_itself():
    # <(~e12) e12>_0 = <(-e12)(e12)>_0 = 1 in a Euclidean metric
    e1, e2, _ = vecs(E3)
    e12 = e1 ^ e2
    assert scalar_value(e12, e12) == 1.0


def test_vector_contraction_into_bivector():
    # a _| (b ^ c) = (a.b) c - (a.c) b; on generators e1 _| e12 = e2
    e1, e2, _ = vecs(E3)
    assert max_abs_diff(e1.lcontract(e1 ^ e2), e2) == 0.0


def test_product_kind_dispatch_and_validation():
    e1, e2, _ = vecs(E3)
    assert max_abs_diff(product("wedge", e1, e2), e1 ^ e2) == 0.0
    with pytest.raises(ValueError):
        product("cross", e1, e2)


# -- grade projection and reversion ----------------------------------------


def test_grade_project_examples():
    e1, e2, _ = vecs(E3)
    a = Multivector.from_scalar(E3, 3.0) + 2.0 * e1 + (e1 ^ e2)
    assert max_abs_diff(a.grade_project(1), 2.0 * e1) == 0.0
    assert max_abs_diff(a.grade_project(0), Multivector.from_scalar(E3, 3.0)) == 0.0
    # homogeneous input is a fixed point
    assert max_abs_diff((e1 ^ e2).grade_project(2), e1 ^ e2) == 0.0
    # projection to an absent grade is zero
    assert unit_pseudoscalar(E3).grade_project(2).norm_inf() == 0.0


def test_grade_project_is_idempotent_and_complete():
    rng = np.random.default_rng(11)
    a = Multivector(E3, rng.uniform(-1, 1, E3.size))
    recomposed = Multivector.zero(E3)
    for r in range(E3.dim + 1):
        part = a.grade_project(r)
        assert max_abs_diff(part.grade_project(r), part) == 0.0
        recomposed = recomposed + part
    assert max_abs_diff(recomposed, a) == 0.0
    with pytest.raises(ValueError):
        a.grade_project(4)
    with pytest.raises(ValueError):
        a.grade_project(-1)


def test_reverse_signs_by_grade():
    e1, e2, e3 = vecs(E3)
    assert max_abs_diff(e1.reverse(), e1) == 0.0
    assert max_abs_diff((e1 ^ e2).reverse(), -(e1 ^ e2)) == 0.0
    e123 = e1 ^ e2 ^ e3
    assert max_abs_diff(e123.reverse(), -e123) == 0.0


def test_reverse_is_involution_and_antihomomorphism():
    rng = np.random.default_rng(5)
    a = Multivector(E3, rng.uniform(-1, 1, E3.size))
    b = Multivector(E3, rng.uniform(-1, 1, E3.size))
    assert max_abs_diff(a.reverse().reverse(), a) == 0.0
    assert max_abs_diff((a * b).reverse(), b.reverse() * a.reverse()) < 1e-12


# -- algebraic invariants on random inputs -----------------------------------


@pytest.mark.parametrize("metric", [E3, Metric(3, (1.0, 1.0, -1.0)), Metric(4, (2.0, 1.0, -1.0, 1.0))])
def test_wedge_anticommutation_by_grades(metric):
    rng = np.random.default_rng(17)
    for _ in range(8):
        r = int(rng.integers(0, metric.dim + 1))
        s = int(rng.integers(0, metric.dim + 1))
        a = random_multivector(metric, r, rng)
        b = random_multivector(metric, s, rng)
        sign = -1.0 if (r * s) % 2 else 1.0
        assert max_abs_diff(a ^ b, sign * (b ^ a)) < 1e-12


def test_scalar_product_symmetry_on_same_grade():
    rng = np.random.default_rng(23)
    for grade in range(E3.dim + 1):
        a = random_multivector(E3, grade, rng)
        b = random_multivector(E3, grade, rng)
        assert abs(scalar_value(a, b) - scalar_value(b, a)) < 1e-14


def test_scalar_product_vanishes_across_grades():
    rng = np.random.default_rng(29)
    a = random_multivector(E3, 1, rng)
    b = random_multivector(E3, 2, rng)
    assert abs(scalar_value(a, b)) == 0.0


@pytest.mark.parametrize("metric", [E3, Metric(4, (1.0, -1.0, 1.0, 2.0))])
def test_geometric_product_associativity(metric):
    rng = np.random.default_rng(31)
    for _ in range(8):
        a = Multivector(metric, rng.uniform(-1, 1, metric.size))
        b = Multivector(metric, rng.uniform(-1, 1, metric.size))
        c = Multivector(metric, rng.uniform(-1, 1, metric.size))
        lhs = (a * b) * c
        rhs = a * (b * c)
        scale = max(1.0, lhs.norm_inf(), rhs.norm_inf())
        assert max_abs_diff(lhs, rhs) / scale < 1e-12


def test_wedge_associativity_and_grade_additivity():
    rng = np.random.default_rng(37)
    a = random_multivector(E3, 1, rng)
    b = random_multivector(E3, 1, rng)
    c = random_multivector(E3, 1, rng)
    assert max_abs_diff((a ^ b) ^ c, a ^ (b ^ c)) < 1e-13
    assert (a ^ b).is_homogeneous(2)
    assert ((a ^ b) ^ c).is_homogeneous(3)


@pytest.mark.parametrize("metric", [E3, Metric(3, (2.0, 1.0, -1.0))])
def test_contraction_expansion_identity(metric):
    # a _| (b ^ c) = (a.b) c - (a.c) b for vectors
    rng = np.random.default_rng(41)
    for _ in range(8):
        a = random_multivector(metric, 1, rng)
        b = random_multivector(metric, 1, rng)
        c = random_multivector(metric, 1, rng)
        lhs = a.lcontract(b ^ c)
        rhs = scalar_value(a, b) * c - scalar_value(a, c) * b
        assert max_abs_diff(lhs, rhs) < 1e-13


def test_contraction_grade_rules():
    e1, e2, _ = vecs(E3)
    # higher grade onto lower vanishes
    assert (e1 ^ e2).lcontract(e1).norm_inf() == 0.0
    # equal grades reduce to the scalar product
    b = e1 ^ e2
    assert max_abs_diff(b.lcontract(b), b.scalar_product(b)) == 0.0


# -- frames -------------------------------------------------------------------


def test_reciprocal_frame_examples():
    m2 = Metric.euclidean(2)
    e1, e2 = vecs(m2)
    # orthonormal Euclidean frames are self-reciprocal
    rec = reciprocal_frame([e1, e2])
    assert max_abs_diff(rec[0], e1) == 0.0
    assert max_abs_diff(rec[1], e2) == 0.0
    # {e1, e1+e2} -> {e1-e2, e2}, from solving the 2x2 Gram system
    rec = reciprocal_frame([e1, e1 + e2])
    assert max_abs_diff(rec[0], e1 - e2) < 1e-14
    assert max_abs_diff(rec[1], e2) < 1e-14
    # orthogonal but not normalized: f^k = e_k / g_kk
    weighted = Metric(2, (2.0, 1.0))
    f1, f2 = vecs(weighted)
    rec = reciprocal_frame([f1, f2])
    assert max_abs_diff(rec[0], 0.5 * f1) == 0.0
    assert max_abs_diff(rec[1], f2) == 0.0


def test_reciprocal_frame_biorthogonality_random():
    rng = np.random.default_rng(43)
    metric = Metric(3, (1.0, -1.0, 2.0))
    vectors = [random_multivector(metric, 1, rng) for _ in range(3)]
    rec = reciprocal_frame(vectors)
    for i in range(3):
        for j in range(3):
            assert abs(scalar_value(rec[i], vectors[j]) - (i == j)) < 1e-12


def test_reciprocal_frame_is_involutive():
    rng = np.random.default_rng(47)
    vectors = [random_multivector(E3, 1, rng) for _ in range(3)]
    back = reciprocal_frame(reciprocal_frame(vectors))
    for v, w in zip(vectors, back):
        assert max_abs_diff(v, w) < 1e-10


def test_degenerate_frame_raises():
    e1, e2, _ = vecs(E3)
    with pytest.raises(DegenerateFrameError):
        reciprocal_frame([e1, e2, e1 + e2])
    with pytest.raises(DegenerateFrameError):
        reciprocal_frame([e1, e2])  # wrong count
    with pytest.raises(DegenerateFrameError):
        reciprocal_frame([e1, e2, e1 ^ e2])  # wrong grade


def test_frame_sum_of_reciprocal_products_is_dimension():
    # sum_j f^j f_j = n for any frame and its reciprocal
    rng = np.random.default_rng(53)
    for metric in (E3, Metric(4, (1.0, 1.0, -1.0, 2.0))):
        vectors = [random_multivector(metric, 1, rng) for _ in range(metric.dim)]
        frame = Frame.from_vectors(vectors)
        total = Multivector.zero(metric)
        for v, r in zip(frame.vectors, frame.reciprocal):
            total = total + r * v
        assert max_abs_diff(total, Multivector.from_scalar(metric, metric.dim)) < 1e-12


def test_frame_blades_are_biorthogonal():
    rng = np.random.default_rng(59)
    vectors = [random_multivector(E3, 1, rng) for _ in range(3)]
    frame = Frame.from_vectors(vectors)
    for grade in range(E3.dim + 1):
        pairs = frame.blade_pairs(grade)
        for i, (_, recip) in enumerate(pairs):
            for j, (primal, _) in enumerate(pairs):
                assert abs(scalar_value(recip, primal) - (i == j)) < 1e-11


# -- blade bookkeeping ----------------------------------------------------------


def test_blade_basis_orders_and_counts():
    names = [b.name for b in blade_basis(E3, 2)]
    assert names == ["e12", "e13", "e23"]
    assert [b.name for b in blade_basis(E3, 0)] == ["1"]
    assert len(blade_basis(Metric.euclidean(4), 2)) == 6
    masks = [b.mask for b in blade_basis(Metric.euclidean(4), 2)]
    assert masks == sorted(masks)
    with pytest.raises(ValueError):
        blade_basis(E3, 4)


def test_blade_grade_and_name():
    blade = BasisBlade(0b101)
    assert blade.grade == 2
    assert blade.name == "e13"
    assert blade_name(0) == "1"


# -- random generation -----------------------------------------------------------


def test_random_multivector_is_deterministic_per_seed():
    a = random_multivector(E3, 1, 99)
    b = random_multivector(E3, 1, 99)
    assert max_abs_diff(a, b) == 0.0


def test_random_multivector_is_homogeneous():
    for grade in range(E3.dim + 1):
        mv = random_multivector(E3, grade, 7)
        assert mv.is_homogeneous(grade)
        assert max_abs_diff(mv.grade_project(grade), mv) == 0.0
    assert random_multivector(E3, 0, 3).grades() <= {0}
