"""Classical identities recovered from the box Stokes machinery.

Each check builds the coordinate form whose Stokes identity *is* the
classical statement and reports the quantities a reader would compare by
hand. The two-path check integrates the same derivative with a
self-contained adaptive Simpson rule that shares no code with the
Gauss-Legendre path.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Callable

from .coordform import (CoordNForm, bdry_integral, box_stokes_sides,
                        ext_deriv_coord)
from .fields import ScalarField, eval_field, partial
from .quadrature import BoxDomain, integrate_box, restrict_field


def adaptive_simpson(g: Callable[[float], float], a: float, b: float,
                     tol: float = 1e-12, max_depth: int = 30) -> float:
    """Recursive adaptive Simpson integration of a scalar callable.

    Bisects until the local Richardson error estimate drops below the
    (subdivided) tolerance; raises if max_depth cannot reach it.
    """
    if not a <= b:
        raise ValueError("need a <= b")

    def simpson(lo: float, hi: float, flo: float, fmid: float, fhi: float) -> float:
        return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)

    def recurse(lo: float, hi: float, flo: float, fmid: float, fhi: float,
                whole: float, eps: float, depth: int) -> float:
        mid = 0.5 * (lo + hi)
        lmid = 0.5 * (lo + mid)
        rmid = 0.5 * (mid + hi)
        fl = g(lmid)
        fr = g(rmid)
        left = simpson(lo, mid, flo, fl, fmid)
        right = simpson(mid, hi, fmid, fr, fhi)
        err = left + right - whole
        if abs(err) <= 15.0 * eps:
            return left + right + err / 15.0
        if depth <= 0:
            raise ArithmeticError(
                f"adaptive Simpson did not converge on [{lo}, {hi}]")
        return (recurse(lo, mid, flo, fl, fmid, left, eps / 2.0, depth - 1)
                + recurse(mid, hi, fmid, fr, fhi, right, eps / 2.0, depth - 1))

    if a == b:
        return 0.0
    mid = 0.5 * (a + b)
    fa, fm, fb = g(a), g(mid), g(b)
    whole = simpson(a, b, fa, fm, fb)
    return recurse(a, b, fa, fm, fb, whole, tol, max_depth)


def derivative_1d(f: ScalarField) -> Callable[[float], float]:
    """f' as a plain callable, each value an exact dual-number derivative."""
    if f.dim != 1:
        raise ValueError("need a field of one variable")
    return lambda t: float(partial(f, (float(t),), 0))


def function_form(f: ScalarField) -> CoordNForm:
    """A one-variable function read as a degree-0 coordinate form."""
    return CoordNForm((f,))


@dataclass(frozen=True)
class FtcResult:
    volume: float
    boundary: float
    difference: float          # f(b) - f(a), computed directly
    stokes_residual: float     # |volume - boundary|
    boundary_residual: float   # |boundary - difference|; exactly zero


def ftc_check(f: ScalarField, a: float, b: float, order: int = 16) -> FtcResult:
    """Fundamental theorem of calculus as 1D box Stokes."""
    box = BoxDomain((a,), (b,))
    volume, boundary = box_stokes_sides(function_form(f), box, order)
    difference = eval_field(f, (b,)) - eval_field(f, (a,))
    return FtcResult(volume, boundary, difference,
                     abs(volume - boundary), abs(boundary - difference))


def ftc_paths_agree(f: ScalarField, a: float, b: float, order: int = 16,
                    tol: float = 1e-12) -> float:
    """|Gauss-Legendre integral of f' - adaptive Simpson integral of f'|."""
    box = BoxDomain((a,), (b,))
    gl = integrate_box(ext_deriv_coord(function_form(f)), box, order)
    simpson = adaptive_simpson(derivative_1d(f), a, b, tol=tol)
    return abs(gl - simpson)


@dataclass(frozen=True)
class GreenResult:
    volume: float
    boundary: float
    four_edge: float
    stokes_residual: float
    edge_residual: float


def green_check(p: ScalarField, q: ScalarField, box: BoxDomain,
                order: int = 16) -> GreenResult:
    """Green's theorem on a rectangle.

    The 1-form with coefficients (Q, P) has d = (dQ/dx0 - dP/dx1) dx0^dx1,
    and its boundary integral is the counterclockwise circulation of
    P dx0 + Q dx1. The four-edge sum is assembled directly from 1D
    integrals as an extra guard.
    """
    if box.dim != 2 or p.dim != 2 or q.dim != 2:
        raise ValueError("Green check needs two fields on a 2D box")
    w = CoordNForm((q, p))
    volume, boundary = box_stokes_sides(w, box, order)
    (a0, a1), (b0, b1) = box.lo, box.hi
    side = BoxDomain((a1,), (b1,))
    bottom = BoxDomain((a0,), (b0,))
    four_edge = (integrate_box(restrict_field(q, 0, b0), side, order)
                 - integrate_box(restrict_field(q, 0, a0), side, order)
                 - integrate_box(restrict_field(p, 1, b1), bottom, order)
                 + integrate_box(restrict_field(p, 1, a1), bottom, order))
    return GreenResult(volume, boundary, four_edge,
                       abs(volume - boundary), abs(boundary - four_edge))


@dataclass(frozen=True)
class DivergenceResult:
    volume: float
    flux: float
    residual: float


def divergence_check(components: tuple[ScalarField, ...], box: BoxDomain,
                     order: int = 16) -> DivergenceResult:
    """Divergence theorem on a box via the alternating-coefficient form.

    Storing omega_i = (-1)^i F_i makes the signed coefficients reproduce
    the components F_i, so the boundary side is the outward flux and the
    volume side integrates the plain divergence.
    """
    dim = len(components)
    if box.dim != dim:
        raise ValueError("one component per box axis is required")

    def alternate(i: int, f: ScalarField) -> ScalarField:
        if i % 2 == 0:
            return f
        return ScalarField(f.dim, lambda coords: -f.body(coords))

    w = CoordNForm(tuple(alternate(i, f) for i, f in enumerate(components)))
    volume = integrate_box(ext_deriv_coord(w), box, order)
    flux = bdry_integral(w, box, order)
    return DivergenceResult(volume, flux, abs(volume - flux))


def ibp_check(f: ScalarField, g: ScalarField, a: float, b: float,
              order: int = 16) -> float:
    """|int f g' - (f(b)g(b) - f(a)g(a) - int f' g)| on [a, b]."""
    if f.dim != 1 or g.dim != 1:
        raise ValueError("integration by parts needs one-variable fields")
    box = BoxDomain((a,), (b,))

    def times_derivative(u: ScalarField, v: ScalarField) -> ScalarField:
        return ScalarField(1, lambda coords: u.body(coords) * partial(v, coords, 0))

    lhs = integrate_box(times_derivative(f, g), box, order)
    bracket = (eval_field(f, (b,)) * eval_field(g, (b,))
               - eval_field(f, (a,)) * eval_field(g, (a,)))
    rhs_tail = integrate_box(
        ScalarField(1, lambda coords: partial(f, coords, 0) * g.body(coords)),
        box, order)
    return abs(lhs - (bracket - rhs_tail))


def load_scenarios() -> dict:
    """The packaged scenario catalog for the classical suite."""
    path = resources.files("cubeforms").joinpath("data/scenarios.json")
    return json.loads(path.read_text())
