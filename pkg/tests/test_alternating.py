"""Alternating forms: evaluation, linear composition, d, and the bridge."""

import itertools
import math

import numpy as np
import pytest

from cubeforms.alternating import (AltForm, AltFormField, bridge_residual,
                                   comp_linear, dd_residual, det_carrier,
                                   evaluate_alt, ext_deriv_apply,
                                   ext_deriv_field, from_coord_form,
                                   increasing_sets, set_rank, to_coord_form,
                                   zero_alt)
from cubeforms.catalog import altfield_catalog, coordform_catalog
from cubeforms.coordform import ext_deriv_coord
from cubeforms.dual import Dual
from cubeforms.exprlang import parse, parse_ast
from cubeforms.fields import eval_field

from oracles import diff_ast, symbolic_gradient


def test_increasing_sets_are_lexicographic_combinations():
    assert increasing_sets(4, 2) == ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3),
                                     (2, 3))
    assert increasing_sets(3, 0) == ((),)
    ranks = set_rank(4, 2)
    assert ranks[(0, 3)] == 2 and ranks[(2, 3)] == 5


def test_evaluate_alt_is_antisymmetric(rng):
    w = AltForm(4, 2, rng.uniform(-1, 1, 6))
    u, v = rng.uniform(-1, 1, 4), rng.uniform(-1, 1, 4)
    assert evaluate_alt(w, [u, v]) == pytest.approx(-evaluate_alt(w, [v, u]),
                                                    rel=1e-13)
    assert evaluate_alt(w, [u, u]) == pytest.approx(0.0, abs=1e-13)


def test_evaluate_alt_is_multilinear(rng):
    w = AltForm(3, 2, rng.uniform(-1, 1, 3))
    u, v, extra = (rng.uniform(-1, 1, 3) for _ in range(3))
    a, b = 1.7, -0.4
    combined = evaluate_alt(w, [a * u + b * extra, v])
    split = a * evaluate_alt(w, [u, v]) + b * evaluate_alt(w, [extra, v])
    assert combined == pytest.approx(split, rel=1e-12, abs=1e-13)


def test_top_degree_form_is_determinant(rng):
    w = AltForm(3, 3, np.array([2.5]))
    vectors = rng.uniform(-1, 1, (3, 3))
    expect = 2.5 * np.linalg.det(np.column_stack(list(vectors)))
    assert evaluate_alt(w, list(vectors)) == pytest.approx(expect, rel=1e-12)


@pytest.mark.parametrize("m, d, k", [(2, 2, 1), (3, 2, 2), (3, 3, 2),
                                     (4, 3, 2), (4, 2, 1), (5, 4, 3)])
def test_comp_linear_agrees_with_pushed_vectors(m, d, k, rng):
    width = len(increasing_sets(m, k))
    w = AltForm(m, k, rng.uniform(-1, 1, width))
    matrix = rng.uniform(-1, 1, (m, d))
    pulled = comp_linear(w, matrix)
    for _ in range(5):
        vectors = [rng.uniform(-1, 1, d) for _ in range(k)]
        pushed = [matrix @ v for v in vectors]
        assert evaluate_alt(pulled, vectors) == pytest.approx(
            evaluate_alt(w, pushed), rel=1e-11, abs=1e-12)


def test_comp_linear_functoriality(rng):
    w = AltForm(4, 2, rng.uniform(-1, 1, 6))
    first = rng.uniform(-1, 1, (4, 3))
    second = rng.uniform(-1, 1, (3, 2))
    once = comp_linear(w, first @ second)
    twice = comp_linear(comp_linear(w, first), second)
    assert np.allclose(once.coeffs, twice.coeffs, rtol=1e-11, atol=1e-12)


def test_comp_linear_with_identity_is_identity(rng):
    w = AltForm(3, 2, rng.uniform(-1, 1, 3))
    assert np.allclose(comp_linear(w, np.eye(3)).coeffs, w.coeffs)


def test_det_carrier_matches_numpy(rng):
    for n in range(0, 6):
        rows = rng.uniform(-1, 1, (n, n))
        got = det_carrier([list(r) for r in rows])
        expect = np.linalg.det(rows) if n else 1.0
        assert got == pytest.approx(expect, rel=1e-11, abs=1e-12)


def test_det_carrier_dual_entries_differentiate_the_determinant(rng):
    base = rng.uniform(-1, 1, (3, 3))
    direction = rng.uniform(-1, 1, (3, 3))
    rows = [[Dual(base[r, c], (direction[r, c],)) for c in range(3)]
            for r in range(3)]
    out = det_carrier(rows)
    h = 1e-7
    fd = (np.linalg.det(base + h * direction)
          - np.linalg.det(base - h * direction)) / (2 * h)
    assert out.value == pytest.approx(np.linalg.det(base), rel=1e-12)
    assert out.pert[0] == pytest.approx(fd, rel=1e-6, abs=1e-8)


def test_zero_alt_and_validation():
    assert zero_alt(3, 2).max_abs() == 0.0
    with pytest.raises(ValueError):
        AltForm(3, 2, np.zeros(4))
    with pytest.raises(ValueError):
        AltForm(2, 3, np.zeros(1))


def _field_1form():
    return AltFormField(2, 1, (parse("x0*x1", 2), parse("x0^2 - x1", 2)))


def test_ext_deriv_field_matches_hand_computation(rng):
    dw = ext_deriv_field(_field_1form())
    assert dw.degree == 2
    for _ in range(10):
        p = tuple(rng.uniform(-1, 1, 2))
        got = eval_field(dw.coeff_fields[0], p)
        assert got == pytest.approx(2 * p[0] - p[0], rel=1e-13)


def test_ext_deriv_two_formulas_agree(rng):
    for m, k in [(2, 1), (3, 1), (3, 2), (4, 2)]:
        _, w, _ = altfield_catalog(m, k, 1, rng)[0]
        dw = ext_deriv_field(w)
        for _ in range(5):
            p = tuple(rng.uniform(-1, 1, m))
            vectors = [rng.uniform(-1, 1, m) for _ in range(k + 1)]
            coeff_route = evaluate_alt(dw.evaluate(p), vectors)
            direct = ext_deriv_apply(w, p, vectors)
            assert coeff_route == pytest.approx(direct, rel=1e-9, abs=1e-10)


def test_dd_residual_vanishes_with_duals(rng):
    for m, k in [(2, 0), (3, 1), (4, 1), (4, 2)]:
        _, w, _ = altfield_catalog(m, k, 1, rng)[0]
        for _ in range(5):
            p = tuple(rng.uniform(-1, 1, m))
            assert dd_residual(w, p) <= 1e-12


def test_dd_residual_central_difference_fallback(rng):
    _, w, _ = altfield_catalog(3, 1, 1, rng)[0]
    for _ in range(5):
        p = tuple(rng.uniform(-1, 1, 3))
        assert dd_residual(w, p, method="central") <= 1e-6


def test_coord_form_round_trip(rng):
    for n in (1, 2, 3):
        m = n + 1
        _, w, _ = altfield_catalog(m, n, 1, rng)[0]
        back = from_coord_form(to_coord_form(w))
        for _ in range(5):
            p = tuple(rng.uniform(-1, 1, m))
            for a, b in zip(back.coeff_fields, w.coeff_fields):
                assert eval_field(a, p) == pytest.approx(eval_field(b, p),
                                                         rel=1e-13, abs=1e-13)


def test_bridge_residual_on_catalog(rng):
    for n in (1, 2, 3):
        _, w, _ = altfield_catalog(n + 1, n, 1, rng)[0]
        for _ in range(20):
            p = tuple(rng.uniform(-1, 1, n + 1))
            assert bridge_residual(w, p) <= 1e-10


def test_bridge_ties_the_two_derivative_routes(rng):
    """The coordinate route and the alternating route are independent code
    paths; spot-check they produce the same number on a concrete form."""
    w = AltFormField(2, 1, (parse("sin(x1)", 2), parse("x0^2*x1", 2)))
    wc = to_coord_form(w)
    dwc = ext_deriv_coord(wc)
    dw = ext_deriv_field(w)
    for _ in range(10):
        p = tuple(rng.uniform(-1, 1, 2))
        basis = np.eye(2)
        assert evaluate_alt(dw.evaluate(p), list(basis)) == pytest.approx(
            eval_field(dwc, p), rel=1e-12, abs=1e-13)
