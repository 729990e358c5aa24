"""Seeded catalogs of fields, forms, boxes, and cubes for the suites.

Everything here is deterministic in the seed: the generators draw from a
freshly constructed numpy Generator and round coefficients to three
decimals so the expressions echoed into reports stay readable. Random
smooth fields stick to polynomials and gentle sin/cos/exp terms (bounded
frequencies, no log/sqrt), which keeps order-16 quadrature far below the
suite tolerances on boxes inside [-1, 2]^d.
"""

from __future__ import annotations

import numpy as np

from .alternating import AltFormField, increasing_sets
from .coordform import CoordNForm
from .exprlang import (Add, Call, Const, Expr, IntPow, Mul, Var,
                       field_from_ast, format_expr, parse)
from .fields import ScalarField, SmoothMap, identity_map
from .quadrature import BoxDomain
from .singular import SingularCube


def _const(rng: np.random.Generator, lo: float, hi: float) -> Const:
    return Const(round(float(rng.uniform(lo, hi)), 3))


def _monomial(dim: int, rng: np.random.Generator) -> Expr:
    node: Expr = _const(rng, -1.5, 1.5)
    width = min(dim, int(rng.integers(1, 3)))
    for j in sorted(rng.choice(dim, size=width, replace=False)):
        power = int(rng.integers(1, 4))
        var: Expr = Var(int(j))
        node = Mul(node, IntPow(var, power) if power > 1 else var)
    return node


def _trig_term(dim: int, rng: np.random.Generator) -> Expr:
    fn = ("sin", "cos", "exp")[int(rng.integers(0, 3))]
    j = int(rng.integers(0, dim))
    freq = _const(rng, -1.5, 1.5) if fn != "exp" else _const(rng, -0.8, 0.8)
    arg: Expr = Mul(freq, Var(j))
    if rng.random() < 0.5:
        arg = Add(arg, _const(rng, -1.0, 1.0))
    node: Expr = Call(fn, arg)
    if rng.random() < 0.5 and dim > 1:
        k = int(rng.integers(0, dim))
        node = Mul(node, Var(k))
    return Mul(_const(rng, -1.5, 1.5), node)


def smooth_ast(dim: int, rng: np.random.Generator, *, trig: bool = True) -> Expr:
    """A random smooth expression: a short polynomial plus one wave term."""
    node = _monomial(dim, rng)
    node = Add(node, _monomial(dim, rng))
    if trig and rng.random() < 0.7:
        node = Add(node, _trig_term(dim, rng))
    return node


def smooth_field(dim: int, rng: np.random.Generator, *, trig: bool = True) -> ScalarField:
    return field_from_ast(smooth_ast(dim, rng, trig=trig), dim)


def scalar_catalog(seed: int = 0) -> list[tuple[str, ScalarField, BoxDomain]]:
    """Named fields with safe sampling boxes, for the derivative checks."""
    rng = np.random.default_rng(seed)
    entries: list[tuple[str, ScalarField, BoxDomain]] = [
        ("quadratic", parse("x0^2 - 3*x0 + 1", 1), BoxDomain((-1.0,), (2.0,))),
        ("wave", parse("sin(2*x0) + cos(x0/2)", 1), BoxDomain((-1.0,), (2.0,))),
        ("growth", parse("x0*exp(x0/2)", 1), BoxDomain((-1.0,), (2.0,))),
        ("bell", parse("1/(1 + x0^2)", 1), BoxDomain((-1.0,), (2.0,))),
        ("log-slope", parse("log(2 + x0)*sqrt(2 + x0)", 1),
         BoxDomain((-0.9,), (2.0,))),
        ("saddle", parse("x0^2 - x1^2 + x0*x1", 2),
         BoxDomain((-1.0, -1.0), (2.0, 2.0))),
        ("spiral", parse("(1 + x0)*cos(2*pi*x1)", 2),
         BoxDomain((0.0, 0.0), (1.0, 1.0))),
        ("mixed-3d", parse("x0*x1*x2 + sin(x1)*exp(x2/3)", 3),
         BoxDomain((-1.0, -1.0, -1.0), (2.0, 2.0, 2.0))),
    ]
    for dim in (2, 3, 4):
        for t in range(2):
            f = smooth_field(dim, rng)
            entries.append((f"random-{dim}d-{t}", f,
                            BoxDomain((-1.0,) * dim, (2.0,) * dim)))
    return entries


def random_points(box: BoxDomain, count: int, rng: np.random.Generator) -> list[tuple[float, ...]]:
    lo = np.asarray(box.lo)
    hi = np.asarray(box.hi)
    return [tuple(float(c) for c in lo + (hi - lo) * rng.random(box.dim))
            for _ in range(count)]


def coordform_catalog(n: int, count: int, rng: np.random.Generator,
                      *, trig: bool = True) -> list[tuple[str, CoordNForm, list[str]]]:
    """Coordinate n-forms with smooth random coefficients."""
    out = []
    dim = n + 1
    for t in range(count):
        asts = [smooth_ast(dim, rng, trig=trig) for _ in range(dim)]
        form = CoordNForm(tuple(field_from_ast(a, dim) for a in asts))
        out.append((f"coordform-n{n}-{t}", form, [format_expr(a) for a in asts]))
    return out


def altfield_catalog(m: int, k: int, count: int, rng: np.random.Generator,
                     *, trig: bool = True) -> list[tuple[str, AltFormField, list[str]]]:
    """Degree-k form fields on R^m with smooth random coefficients."""
    out = []
    width = len(increasing_sets(m, k))
    for t in range(count):
        asts = [smooth_ast(m, rng, trig=trig) for _ in range(width)]
        w = AltFormField(m, k, tuple(field_from_ast(a, m) for a in asts))
        out.append((f"altfield-m{m}k{k}-{t}", w, [format_expr(a) for a in asts]))
    return out


def box_catalog(dim: int, count: int, rng: np.random.Generator,
                lo: float = -1.0, hi: float = 2.0,
                min_width: float = 0.2) -> list[BoxDomain]:
    """Random boxes inside [lo, hi]^dim with a minimum side length."""
    out = []
    for _ in range(count):
        los, his = [], []
        for _ in range(dim):
            a = float(rng.uniform(lo, hi - min_width))
            b = float(rng.uniform(a + min_width, hi))
            los.append(round(a, 3))
            his.append(round(b, 3))
        out.append(BoxDomain(tuple(los), tuple(his)))
    return out


def identity_cube(dim: int) -> SingularCube:
    return SingularCube(identity_map(dim), name=f"identity-{dim}d")


def annulus_cube() -> SingularCube:
    """(r, theta) -> ((1+r) cos 2 pi theta, (1+r) sin 2 pi theta)."""
    comps = (parse("(1 + x0)*cos(2*pi*x1)", 2),
             parse("(1 + x0)*sin(2*pi*x1)", 2))
    return SingularCube(SmoothMap(2, comps), name="annulus")


def annulus_half_area_form() -> AltFormField:
    """(x dy - y dx) / 2, whose derivative is the area form."""
    return AltFormField(2, 1, (parse("-x1/2", 2), parse("x0/2", 2)))


def curved_cube_3_to_4(seed: int = 0) -> SingularCube:
    """A low-degree polynomial embedding [0,1]^3 -> R^4."""
    rng = np.random.default_rng(seed + 17)
    comps = []
    for r in range(4):
        base: Expr = Var(r % 3)
        node: Expr = Add(base, _quadratic_bump(rng))
        comps.append(field_from_ast(node, 3))
    return SingularCube(SmoothMap(3, tuple(comps)), name="curved-3-to-4")


def _quadratic_bump(rng: np.random.Generator) -> Expr:
    j, k = int(rng.integers(0, 3)), int(rng.integers(0, 3))
    return Mul(_const(rng, -0.5, 0.5), Mul(Var(j), Var(k)))


def constant_cube(dim: int = 2, ambient: int = 2, seed: int = 0) -> SingularCube:
    rng = np.random.default_rng(seed + 29)
    comps = tuple(field_from_ast(_const(rng, -1.0, 1.0), dim)
                  for _ in range(ambient))
    return SingularCube(SmoothMap(dim, comps), name=f"constant-{dim}d")


def curve_cube() -> SingularCube:
    """A smooth path [0,1] -> R^2 for the 0-dimensional Stokes cases."""
    comps = (parse("x0^2 - x0/2", 1), parse("sin(2*x0)", 1))
    return SingularCube(SmoothMap(1, comps), name="plane-curve")


def stokes_cube_catalog(seed: int = 0) -> list[tuple[SingularCube, int]]:
    """The singular-Stokes cast with a quadrature-order floor per cube.

    The annulus map winds through one full period of cos/sin(2 pi x1), so a
    degree-d coefficient form pulls back to a trig polynomial with roughly
    d + 1 harmonics; 24 nodes resolves the catalog's degree-6 forms down to
    machine precision, while the polynomial cubes need no floor at all.
    """
    return [
        (identity_cube(1), 1), (identity_cube(2), 1), (identity_cube(3), 1),
        (curve_cube(), 1), (annulus_cube(), 24),
        (curved_cube_3_to_4(seed), 1), (constant_cube(seed=seed), 1),
    ]


def chain_registry(seed: int = 0):
    """Base cubes of dimensions 2..6 plus the named curved examples."""
    from .chains import CubeRegistry

    registry = CubeRegistry()
    for d in range(2, 7):
        registry.register(f"identity-{d}d", identity_cube(d))
    registry.register("annulus", annulus_cube())
    registry.register("curved-3-to-4", curved_cube_3_to_4(seed))
    return registry


def split_unit_box(dim: int, axis: int = 0, at: float = 0.5) -> tuple[BoxDomain, BoxDomain]:
    """The unit box split in two along one axis (an adjacent pair)."""
    lo = (0.0,) * dim
    hi = (1.0,) * dim
    mid_hi = tuple(at if t == axis else h for t, h in enumerate(hi))
    mid_lo = tuple(at if t == axis else l for t, l in enumerate(lo))
    return BoxDomain(lo, mid_hi), BoxDomain(mid_lo, hi)
