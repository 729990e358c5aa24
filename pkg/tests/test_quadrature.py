"""Gauss-Legendre rules and box integration against independent references."""

import math

import numpy as np
import pytest

from cubeforms.exprlang import parse
from cubeforms.fields import ScalarField, constant_field
from cubeforms.quadrature import (BoxDomain, CostCapError, face_integral,
                                  gl_rule, insert_coord, integrate_box,
                                  restrict_field, unit_box)


@pytest.mark.parametrize("order", [1, 2, 3, 5, 8, 16, 32, 64])
def test_rule_matches_numpy_leggauss(order):
    rule = gl_rule(order)
    nodes, weights = np.polynomial.legendre.leggauss(order)
    assert np.allclose(rule.nodes, nodes, atol=1e-14)
    assert np.allclose(rule.weights, weights, atol=1e-14)


def test_rule_weights_positive_and_sum_to_two():
    for order in range(1, 65):
        rule = gl_rule(order)
        assert min(rule.weights) > 0
        assert math.fsum(rule.weights) == pytest.approx(2.0, abs=1e-13)


def test_order_out_of_range_is_a_cost_cap_error():
    for bad in (0, -1, 65, 2.0, "8"):
        with pytest.raises(CostCapError):
            gl_rule(bad)


def test_exactness_through_degree_2n_minus_1(rng):
    for order in (1, 2, 4, 7):
        degree = 2 * order - 1
        coeffs = rng.uniform(-2, 2, degree + 1)
        a, b = -0.8, 1.4

        def poly(coords):
            total = 0.0
            for k, c in enumerate(coeffs):
                total = total + c * coords[0] ** k
            return total

        exact = sum(c * (b ** (k + 1) - a ** (k + 1)) / (k + 1)
                    for k, c in enumerate(coeffs))
        got = integrate_box(ScalarField(1, poly), BoxDomain((a,), (b,)), order)
        assert got == pytest.approx(exact, rel=1e-13, abs=1e-13)


def test_multidimensional_product_factorizes():
    field = parse("x0^2*x1^3*x2", 3)
    box = BoxDomain((0.0, -1.0, 0.5), (1.0, 1.0, 2.0))
    got = integrate_box(field, box, 8)
    expect = (1 / 3) * 0.0 * (2 ** 2 - 0.5 ** 2) / 2
    assert got == pytest.approx(expect, abs=1e-14)

    field = parse("x0*x1", 2)
    got = integrate_box(field, BoxDomain((0.0, 0.0), (2.0, 3.0)), 4)
    assert got == pytest.approx(2.0 * 4.5, rel=1e-14)


def test_translation_covariance(rng):
    field = parse("sin(x0) + x0^2", 1)
    shift = 0.7
    shifted = parse(f"sin(x0 + {shift}) + (x0 + {shift})^2", 1)
    a, b = -0.5, 1.1
    direct = integrate_box(field, BoxDomain((a + shift,), (b + shift,)), 20)
    moved = integrate_box(shifted, BoxDomain((a,), (b,)), 20)
    assert direct == pytest.approx(moved, rel=1e-13)


def test_dimension_zero_box_is_bare_evaluation():
    box = BoxDomain((), ())
    assert integrate_box(constant_field(0, 4.25), box) == 4.25


def test_constant_bodies_broadcast():
    field = ScalarField(2, lambda coords: 3.0)
    got = integrate_box(field, BoxDomain((0.0, 0.0), (2.0, 2.0)), 4)
    assert got == pytest.approx(12.0, rel=1e-14)


def test_dimension_cost_cap():
    with pytest.raises(CostCapError):
        integrate_box(constant_field(7, 1.0), unit_box(7), 2)
    assert integrate_box(constant_field(7, 1.0), unit_box(7), 2,
                         max_dim=7) == pytest.approx(1.0)


def test_box_validation():
    with pytest.raises(ValueError):
        BoxDomain((0.0, 0.0), (1.0,))
    with pytest.raises(ValueError):
        BoxDomain((1.0,), (0.0,))


def test_delete_coord():
    box = BoxDomain((0.0, -1.0, 2.0), (1.0, 1.0, 3.0))
    assert box.delete_coord(1) == BoxDomain((0.0, 2.0), (1.0, 3.0))
    assert box.dim == 3


def test_insert_coord():
    assert insert_coord(0, 9.0, (1.0, 2.0)) == [9.0, 1.0, 2.0]
    assert insert_coord(1, 9.0, (1.0, 2.0)) == [1.0, 9.0, 2.0]
    assert insert_coord(2, 9.0, (1.0, 2.0)) == [1.0, 2.0, 9.0]


def test_restrict_field_pins_one_coordinate(rng):
    field = parse("x0*x1^2 + x2", 3)
    pinned = restrict_field(field, 1, 0.5)
    assert pinned.dim == 2
    for _ in range(5):
        y = tuple(rng.uniform(-1, 1, 2))
        full = field.body((y[0], 0.5, y[1]))
        assert pinned.body(y) == pytest.approx(full, rel=1e-15)


def test_face_integral_equals_restricted_integral():
    field = parse("x0^2 + x0*x1", 2)
    box = BoxDomain((0.0, -1.0), (2.0, 1.0))
    top = face_integral(field, box, 0, 2.0, 8)
    direct = integrate_box(restrict_field(field, 0, 2.0),
                           box.delete_coord(0), 8)
    assert top == pytest.approx(direct, rel=1e-14)
    assert top == pytest.approx(8.0, rel=1e-13)
