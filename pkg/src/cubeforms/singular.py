"""Smooth singular cubes and the pullback of alternating form fields.

A singular d-cube is a smooth map from [0,1]^d into R^m. The pullback at a
point composes the target form with the Jacobian (Cauchy-Binet on minors),
so integration of a degree-d field over the cube reduces to a plain box
integral of the single top pullback coefficient. Faces restrict one
domain coordinate to 0 or 1 via the face inclusion maps, and the Stokes
residual compares the integral of dw over the cube against the signed sum
of the face integrals of w.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .alternating import (AltForm, AltFormField, apply_field, comp_linear,
                          det_carrier, evaluate_alt, ext_deriv_field,
                          increasing_sets)
from .fields import (ScalarField, SmoothMap, as_point, compose,
                     constant_field, coordinate_field, eval_map,
                     eval_with_jacobian, jacobian)
from .indexing import succ_above
from .quadrature import integrate_box, unit_box


@dataclass(frozen=True)
class SingularCube:
    """A smooth map [0,1]^dim -> R^ambient, optionally named for reports."""

    map: SmoothMap
    name: str = ""

    @property
    def dim(self) -> int:
        return self.map.domain_dim

    @property
    def ambient(self) -> int:
        return self.map.codomain_dim


def face_inclusion(i: int, eps: int, n: int) -> SmoothMap:
    """The inclusion [0,1]^n -> [0,1]^(n+1) pinning coordinate i to eps.

    Output j reads input j below i, the constant eps at i, and input j-1
    above i; the Jacobian columns are the basis vectors e_(succ_above(i, k)).
    """
    if not 0 <= i <= n:
        raise ValueError(f"face index {i} out of range for {n + 1} axes")
    if eps not in (0, 1):
        raise ValueError("face side must be 0 or 1")
    comps = []
    for j in range(n + 1):
        if j == i:
            comps.append(constant_field(n, float(eps)))
        else:
            comps.append(coordinate_field(n, j if j < i else j - 1))
    return SmoothMap(n, tuple(comps))


def singular_face(sigma: SingularCube, i: int, eps: int) -> SingularCube:
    """The (i, eps) face: the cube precomposed with the face inclusion."""
    if sigma.dim == 0:
        raise ValueError("a 0-cube has no faces")
    inclusion = face_inclusion(i, eps, sigma.dim - 1)
    return SingularCube(compose(sigma.map, inclusion),
                        name=f"{sigma.name or 'cube'}.face({i},{eps})")


def pullback_form(sigma: SingularCube, w: AltFormField, point) -> AltForm:
    """Pointwise pullback: compose w at sigma(x) with the Jacobian at x."""
    pt = as_point(point, sigma.dim)
    if w.ambient != sigma.ambient:
        raise ValueError(
            f"form on R^{w.ambient} pulled back along a map into R^{sigma.ambient}")
    target = w.evaluate(eval_map(sigma.map, pt))
    return comp_linear(target, jacobian(sigma.map, pt))


def pullback_field(sigma: SingularCube, w: AltFormField) -> AltFormField:
    """The pullback as a form field on the cube's domain.

    Coefficients are lazy carrier-generic bodies (coefficients of w at the
    image point contracted with Jacobian minors), so the result can be
    differentiated again or integrated on vectorized grids.
    """
    if w.ambient != sigma.ambient:
        raise ValueError(
            f"form on R^{w.ambient} pulled back along a map into R^{sigma.ambient}")
    d, k = sigma.dim, w.degree
    if k > d:
        raise ValueError(f"cannot pull a degree-{k} form back to {d} variables")
    src_sets = increasing_sets(w.ambient, k)

    def make(jset) -> ScalarField:
        def body(coords):
            image, jac = eval_with_jacobian(sigma.map, coords)
            total = 0.0
            for f, iset in zip(w.coeff_fields, src_sets):
                minor = det_carrier([[jac[r][c] for c in jset] for r in iset])
                total = total + f.body(image) * minor
            return total
        return ScalarField(d, body)

    return AltFormField(d, k, tuple(make(j) for j in increasing_sets(d, k)))


def integrate_form(sigma: SingularCube, w: AltFormField, order: int = 16, *,
                   max_dim: int = 6) -> float:
    """Integral of a degree-d form field over a singular d-cube."""
    if w.degree != sigma.dim:
        raise ValueError(
            f"degree {w.degree} form integrated over a {sigma.dim}-cube")
    top = pullback_field(sigma, w)
    assert comb(sigma.dim, sigma.dim) == len(top.coeff_fields) == 1
    return integrate_box(top.coeff_fields[0], unit_box(sigma.dim), order,
                         max_dim=max_dim)


def face_matching_residual(sigma: SingularCube, w: AltFormField, i: int,
                           eps: int, point) -> float:
    """|pullback evaluated through the face - pullback of the face| at a point.

    The left side pulls w back along sigma, moves the point through the
    face inclusion, and evaluates on the lifted basis vectors
    e_(succ_above(i, .)); the right side pulls back along the composed face
    cube and evaluates on the standard basis.
    """
    n = sigma.dim - 1
    if w.degree != n:
        raise ValueError(f"face matching needs a degree-{n} form")
    pt = as_point(point, n)
    inclusion = face_inclusion(i, eps, n)
    lifted = eval_map(inclusion, pt)
    big = pullback_form(sigma, w, lifted)
    lift_basis = [[1.0 if t == succ_above(i, k) else 0.0 for t in range(n + 1)]
                  for k in range(n)]
    lhs = evaluate_alt(big, lift_basis)
    small = pullback_form(singular_face(sigma, i, eps), w, pt)
    basis = [[1.0 if t == k else 0.0 for t in range(n)] for k in range(n)]
    rhs = evaluate_alt(small, basis)
    return abs(lhs - rhs)


def boundary_face_integrals(sigma: SingularCube, w: AltFormField,
                            order: int = 16, *, max_dim: int = 6) -> list[dict]:
    """Per-face integrals of w with their boundary signs (the ledger rows)."""
    rows = []
    for i in range(sigma.dim):
        sign = 1.0 if i % 2 == 0 else -1.0
        for eps in (1, 0):
            value = integrate_form(singular_face(sigma, i, eps), w, order,
                                   max_dim=max_dim)
            rows.append({"i": i, "eps": eps,
                         "sign": sign if eps == 1 else -sign,
                         "integral": value})
    return rows


def singular_stokes_sides(sigma: SingularCube, w: AltFormField,
                          order: int = 16, *, max_dim: int = 6
                          ) -> tuple[float, float, list[dict]]:
    """(volume side, boundary side, per-face rows) of singular Stokes."""
    if w.degree != sigma.dim - 1:
        raise ValueError(
            f"Stokes on a {sigma.dim}-cube needs a degree-{sigma.dim - 1} form")
    volume = integrate_form(sigma, ext_deriv_field(w), order, max_dim=max_dim)
    rows = boundary_face_integrals(sigma, w, order, max_dim=max_dim)
    boundary = sum(r["sign"] * r["integral"] for r in rows)
    return volume, boundary, rows


def singular_stokes_residual(sigma: SingularCube, w: AltFormField,
                             order: int = 16, *, max_dim: int = 6) -> float:
    """|integral of dw over the cube - signed sum of face integrals of w|."""
    volume, boundary, _ = singular_stokes_sides(sigma, w, order, max_dim=max_dim)
    return abs(volume - boundary)


def pullback_naturality_residual(sigma: SingularCube, w: AltFormField,
                                 point) -> float:
    """|d(pullback of w) - pullback of dw| at a point, max over coefficients.

    The first path differentiates the derived pullback coefficients
    (nested duals inside); the second pulls the abstract derivative back
    pointwise. Both land in degree k+1 on the cube domain.
    """
    pt = as_point(point, sigma.dim)
    lhs = ext_deriv_field(pullback_field(sigma, w)).evaluate(pt)
    rhs = comp_linear(ext_deriv_field(w).evaluate(eval_map(sigma.map, pt)),
                      jacobian(sigma.map, pt))
    return float(np.max(np.abs(lhs.coeffs - rhs.coeffs)))
