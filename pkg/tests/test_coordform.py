"""Coordinate n-forms: signs, exterior derivative, Leibniz, box Stokes."""

import math

import numpy as np
import pytest

from cubeforms.catalog import box_catalog, coordform_catalog
from cubeforms.coordform import (CoordNForm, add_forms, bdry_integral,
                                 box_stokes_residual, box_stokes_sides,
                                 ext_deriv_coord, leibniz_residual,
                                 multiply_field, neg_form, precompose,
                                 scale_form, signed_coeff, zero_form)
from cubeforms.exprlang import parse, parse_ast
from cubeforms.fields import eval_field
from cubeforms.quadrature import BoxDomain, unit_box

from oracles import diff_ast, symbolic_gradient


def _sample_form() -> CoordNForm:
    return CoordNForm((parse("x0*x1^2", 2), parse("sin(x0) + x1", 2)))


def test_signed_coeff_alternates(rng):
    w = CoordNForm((parse("x0", 3), parse("x1", 3), parse("x2", 3)))
    p = tuple(rng.uniform(-1, 1, 3))
    assert eval_field(signed_coeff(w, 0), p) == pytest.approx(p[0])
    assert eval_field(signed_coeff(w, 1), p) == pytest.approx(-p[1])
    assert eval_field(signed_coeff(w, 2), p) == pytest.approx(p[2])


def test_ext_deriv_coord_matches_symbolic_divergence(rng):
    texts = ["x0^2*x1 + sin(x1)", "exp(x0/2) - x0*x1^3"]
    asts = [parse_ast(t, 2) for t in texts]
    w = CoordNForm(tuple(parse(t, 2) for t in texts))
    d0 = symbolic_gradient(asts[0], 2)[0]
    d1 = symbolic_gradient(asts[1], 2)[1]
    top = ext_deriv_coord(w)
    for _ in range(20):
        p = tuple(rng.uniform(-1.5, 1.5, 2))
        expect = d0(p) - d1(p)
        assert eval_field(top, p) == pytest.approx(expect, rel=1e-12,
                                                   abs=1e-12)


def test_ext_deriv_of_zero_form_is_zero(rng):
    top = ext_deriv_coord(zero_form(2))
    p = tuple(rng.uniform(-1, 1, 3))
    assert eval_field(top, p) == 0.0


def test_linearity_of_ext_deriv(rng):
    w1 = _sample_form()
    w2 = CoordNForm((parse("x1", 2), parse("x0^3", 2)))
    combo = add_forms(scale_form(2.5, w1), neg_form(w2))
    p = tuple(rng.uniform(-1, 1, 2))
    direct = eval_field(ext_deriv_coord(combo), p)
    split = (2.5 * eval_field(ext_deriv_coord(w1), p)
             - eval_field(ext_deriv_coord(w2), p))
    assert direct == pytest.approx(split, rel=1e-13, abs=1e-13)


def test_leibniz_residual_vanishes(rng):
    f = parse("x0^2 + cos(x1)", 2)
    w = _sample_form()
    for _ in range(20):
        p = tuple(rng.uniform(-1, 1, 2))
        assert leibniz_residual(f, w, p) <= 1e-12


def test_precompose_is_substitution_only(rng):
    w = _sample_form()
    matrix = rng.uniform(-1, 1, (2, 2))
    sub = precompose(matrix, w)
    p = tuple(rng.uniform(-1, 1, 2))
    image = tuple(matrix @ np.asarray(p))
    for i in range(2):
        assert eval_field(sub.coeffs[i], p) == pytest.approx(
            eval_field(w.coeffs[i], image), rel=1e-13)


def test_precompose_functoriality(rng):
    """Substitution composes covariantly: applying B then A substitutes
    x -> A(Bx), which is one substitution by the product A @ B."""
    w = _sample_form()
    a = rng.uniform(-1, 1, (2, 2))
    b = rng.uniform(-1, 1, (2, 2))
    once = precompose(a @ b, w)
    twice = precompose(b, precompose(a, w))
    p = tuple(rng.uniform(-1, 1, 2))
    for i in range(2):
        assert eval_field(once.coeffs[i], p) == pytest.approx(
            eval_field(twice.coeffs[i], p), rel=1e-12)


def test_bdry_integral_closed_form():
    """omega = x0 dx1 on the unit square: only the two x0-faces contribute,
    with + at x0=1 and - at x0=0, each integrating x0 over the x1 edge."""
    w = CoordNForm((parse("x0", 2), parse("0", 2)))
    got = bdry_integral(w, unit_box(2), 4)
    assert got == pytest.approx(1.0, rel=1e-14)


def test_box_stokes_residual_on_catalog(rng):
    for n in (0, 1, 2):
        for _, w, _ in coordform_catalog(n, 3, rng):
            box = box_catalog(n + 1, 1, rng)[0]
            assert box_stokes_residual(w, box, 16) <= 1e-9


def test_flipping_one_face_sign_breaks_stokes():
    """Guards the sign convention: same integrals, one sign flipped, and
    the identity visibly fails (the flipped face integrates to 1)."""
    w = CoordNForm((parse("x0 + 1", 2), parse("0", 2)))
    box = unit_box(2)
    volume, boundary = box_stokes_sides(w, box, 8)
    assert abs(volume - boundary) <= 1e-13

    from cubeforms.quadrature import face_integral
    f = signed_coeff(w, 0)
    flipped = (face_integral(f, box, 0, 1.0, 8)
               + face_integral(f, box, 0, 0.0, 8))
    assert abs(volume - flipped) > 0.5


def test_multiply_field_scales_coefficients(rng):
    f = parse("x1 + 2", 2)
    w = _sample_form()
    fw = multiply_field(f, w)
    p = tuple(rng.uniform(-1, 1, 2))
    for i in range(2):
        assert eval_field(fw.coeffs[i], p) == pytest.approx(
            eval_field(f, p) * eval_field(w.coeffs[i], p), rel=1e-14)


def test_dimension_validation():
    with pytest.raises(ValueError):
        CoordNForm((parse("x0", 1), parse("x0 + x1", 2)))
    with pytest.raises(ValueError):
        multiply_field(parse("x0", 1), _sample_form())
    with pytest.raises(ValueError):
        precompose(np.eye(3), _sample_form())
    with pytest.raises(ValueError):
        bdry_integral(_sample_form(), unit_box(3))
