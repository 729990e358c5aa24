"""Coordinate n-forms on R^(n+1) and the box Stokes identity.

A coordinate n-form is stored as its n+1 coefficient fields; coefficient i
multiplies the basis form that omits dx_i. The signed coefficient
(-1)^i * omega_i is what shows up in boundary integrals, and the exterior
derivative collapses to the signed divergence

    sum_i (-1)^i d(omega_i)/dx_i

times the top form. All derived fields are lazy compositions evaluable
over any carrier, so they can be differentiated again or integrated on
vectorized grids.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fields import ScalarField, as_point, eval_field, partial
from .quadrature import BoxDomain, face_integral, integrate_box


@dataclass(frozen=True)
class CoordNForm:
    """An n-form on R^(n+1): coefficient i multiplies dx_0^...^dx_n with dx_i omitted."""

    coeffs: tuple[ScalarField, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("coordinate form needs at least one coefficient")
        dim = len(self.coeffs)
        for c in self.coeffs:
            if c.dim != dim:
                raise ValueError(
                    f"coefficient of dim {c.dim} in form over {dim} variables")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def dim(self) -> int:
        return len(self.coeffs)


def signed_coeff(w: CoordNForm, i: int) -> ScalarField:
    """(-1)^i * omega_i, the coefficient as it enters boundary sums."""
    if not 0 <= i < w.dim:
        raise ValueError(f"coefficient index {i} out of range for {w.dim}")
    f = w.coeffs[i]
    if i % 2 == 0:
        return f
    return ScalarField(f.dim, lambda coords: -f.body(coords),
                       label=None if f.label is None else f"-({f.label})")


def ext_deriv_coord(w: CoordNForm) -> ScalarField:
    """Top coefficient of d(omega): the signed divergence of the coefficients."""
    dim = w.dim
    coeffs = w.coeffs

    def body(coords):
        total = partial(coeffs[0], coords, 0)
        for i in range(1, dim):
            term = partial(coeffs[i], coords, i)
            total = total - term if i % 2 else total + term
        return total

    return ScalarField(dim, body, label="extDeriv")


def zero_form(degree: int) -> CoordNForm:
    dim = degree + 1
    zero = ScalarField(dim, lambda coords: 0.0, label="0")
    return CoordNForm((zero,) * dim)


def add_forms(w1: CoordNForm, w2: CoordNForm) -> CoordNForm:
    if w1.dim != w2.dim:
        raise ValueError("cannot add forms of different dimension")

    def make(f: ScalarField, g: ScalarField) -> ScalarField:
        return ScalarField(f.dim, lambda coords: f.body(coords) + g.body(coords))

    return CoordNForm(tuple(make(f, g) for f, g in zip(w1.coeffs, w2.coeffs)))


def scale_form(c: float, w: CoordNForm) -> CoordNForm:
    cv = float(c)

    def make(f: ScalarField) -> ScalarField:
        return ScalarField(f.dim, lambda coords: cv * f.body(coords))

    return CoordNForm(tuple(make(f) for f in w.coeffs))


def neg_form(w: CoordNForm) -> CoordNForm:
    return scale_form(-1.0, w)


def multiply_field(f: ScalarField, w: CoordNForm) -> CoordNForm:
    """The form f * omega (every coefficient scaled by the field f)."""
    if f.dim != w.dim:
        raise ValueError("field and form dimensions differ")

    def make(g: ScalarField) -> ScalarField:
        return ScalarField(g.dim, lambda coords: f.body(coords) * g.body(coords))

    return CoordNForm(tuple(make(g) for g in w.coeffs))


def precompose(matrix: np.ndarray, w: CoordNForm) -> CoordNForm:
    """Coefficient-wise composition with a linear map: x -> omega_i(A x).

    This substitutes into the coefficients only; it is *not* the pullback
    of the form (no Jacobian factors), and no compatibility with the
    exterior derivative is implied.
    """
    a = np.asarray(matrix, dtype=float)
    if a.shape != (w.dim, w.dim):
        raise ValueError(f"matrix must be {w.dim}x{w.dim}, got {a.shape}")
    rows = [[float(v) for v in row] for row in a]

    def make(f: ScalarField) -> ScalarField:
        def body(coords):
            image = [sum_product(row, coords) for row in rows]
            return f.body(image)
        return ScalarField(f.dim, body)

    def sum_product(row, coords):
        total = row[0] * coords[0]
        for c, x in zip(row[1:], coords[1:]):
            total = total + c * x
        return total

    return CoordNForm(tuple(make(f) for f in w.coeffs))


def leibniz_residual(f: ScalarField, w: CoordNForm, point) -> float:
    """|d(f*omega) - [f*d(omega) + sum_i (-1)^i d(f)/dx_i * omega_i]| at a point."""
    pt = as_point(point, w.dim)
    lhs = eval_field(ext_deriv_coord(multiply_field(f, w)), pt)
    rhs = eval_field(f, pt) * eval_field(ext_deriv_coord(w), pt)
    for i in range(w.dim):
        term = float(partial(f, pt, i)) * eval_field(w.coeffs[i], pt)
        rhs = rhs - term if i % 2 else rhs + term
    return abs(lhs - rhs)


def bdry_integral(w: CoordNForm, box: BoxDomain, order: int = 16, *,
                  max_dim: int = 6) -> float:
    """Sum over faces of the signed coefficients: the boundary side of Stokes."""
    if w.dim != box.dim:
        raise ValueError(f"form of dim {w.dim} over box of dim {box.dim}")
    total = 0.0
    for i in range(w.dim):
        f = signed_coeff(w, i)
        total += (face_integral(f, box, i, box.hi[i], order, max_dim=max_dim)
                  - face_integral(f, box, i, box.lo[i], order, max_dim=max_dim))
    return total


def box_stokes_sides(w: CoordNForm, box: BoxDomain, order: int = 16, *,
                     max_dim: int = 6) -> tuple[float, float]:
    """(volume side, boundary side) of the Stokes identity on a box."""
    volume = integrate_box(ext_deriv_coord(w), box, order, max_dim=max_dim)
    boundary = bdry_integral(w, box, order, max_dim=max_dim)
    return volume, boundary


def box_stokes_residual(w: CoordNForm, box: BoxDomain, order: int = 16, *,
                        max_dim: int = 6) -> float:
    """|integral of d(omega) over the box - boundary integral of omega|."""
    volume, boundary = box_stokes_sides(w, box, order, max_dim=max_dim)
    return abs(volume - boundary)
