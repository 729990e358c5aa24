"""Verification suites: named residual checks assembled into reports.

Each suite draws its inputs from the seeded catalogs, runs the residual
operations, and emits one ``CheckRecord`` per identity instance. Ordering
is the declaration order below and all randomness flows from the request
seed, so reports are reproducible end to end (timing fields aside).
"""

from __future__ import annotations

import math
import time
from typing import Callable, Iterable

import numpy as np

from . import __version__
from .alternating import (AltFormField, bridge_residual, dd_residual,
                          evaluate_alt, ext_deriv_apply, ext_deriv_field,
                          increasing_sets, to_coord_form)
from .catalog import (altfield_catalog, annulus_cube, annulus_half_area_form,
                      box_catalog, chain_registry, coordform_catalog,
                      random_points, scalar_catalog, smooth_ast, smooth_field,
                      split_unit_box, stokes_cube_catalog)
from .chains import (BoxChain, CubeTerm, boundary, boundary_boundary_is_zero,
                     chain_of, double_boundary_integral_zero, face_term,
                     integrate_chain, merge_boxes, shared_face_residual,
                     stokes_chain_sides)
from .classical import (adaptive_simpson, derivative_1d, divergence_check,
                        ftc_check, ftc_paths_agree, green_check, ibp_check,
                        load_scenarios)
from .coordform import (CoordNForm, bdry_integral, box_stokes_sides,
                        ext_deriv_coord, leibniz_residual)
from .exprlang import field_from_ast, format_expr, parse
from .fields import (ScalarField, SmoothMap, fd_jacobian, gradient,
                     identity_map, jacobian)
from .indexing import face_of_face_box, parity_distinct, sign_cancel
from .models import (CheckRecord, IntegrateRequest, IntegrateResponse, Report)
from .quadrature import BoxDomain, integrate_box, unit_box
from .singular import (SingularCube, face_matching_residual, integrate_form,
                       pullback_naturality_residual, singular_stokes_sides)

Maker = Callable[[], tuple[float, dict]]


def _run(name: str, inputs: dict, tolerance: float, fn: Maker) -> CheckRecord:
    start = time.perf_counter()
    residual, values = fn()
    millis = round((time.perf_counter() - start) * 1000.0, 3)
    residual = float(residual)
    ok = math.isfinite(residual) and residual <= tolerance
    return CheckRecord(name=name, inputs=inputs, values=values,
                       residual=residual, tolerance=float(tolerance),
                       passed=ok, millis=millis)


def _box_inputs(box: BoxDomain) -> list[list[float]]:
    return [list(box.lo), list(box.hi)]


# ---------------------------------------------------------------- box suite

def box_checks(order: int, seed: int) -> list[CheckRecord]:
    checks: list[CheckRecord] = []
    rng = np.random.default_rng([seed, 1])

    # Quadrature exactness: monomials through per-axis degree 2*order - 1.
    for dim in (1, 2, 3):
        box = box_catalog(dim, 1, rng)[0]
        degrees = [int(rng.integers(0, 2 * order)) for _ in range(dim)]

        def exactness(box=box, degrees=degrees, dim=dim):
            def body(coords):
                total = 1.0
                for j, p in enumerate(degrees):
                    total = total * coords[j] ** p
                return total
            numeric = integrate_box(ScalarField(dim, body), box, order)
            exact = 1.0
            for (a, b), p in zip(zip(box.lo, box.hi), degrees):
                exact *= (b ** (p + 1) - a ** (p + 1)) / (p + 1)
            rel = abs(numeric - exact) / max(1.0, abs(exact))
            return rel, {"numeric": numeric, "exact": exact}

        checks.append(_run(
            f"quadrature-exactness-{dim}d",
            {"box": _box_inputs(box), "degrees": degrees, "order": order},
            1e-12, exactness))

    # Forward-mode derivatives against central differences.
    for name, field_, box in scalar_catalog(seed):
        pts = random_points(box, 100, rng)

        def ad_check(field_=field_, pts=pts):
            worst = 0.0
            for p in pts:
                g = gradient(field_, p)
                sigma = SmoothMap(field_.dim, (field_,))
                fd = fd_jacobian(sigma, p)[0]
                err = float(np.max(np.abs(g - fd))) / (1.0 + float(np.max(np.abs(g))))
                worst = max(worst, err)
            return worst, {"points": len(pts)}

        checks.append(_run(f"ad-vs-central-{name}",
                           {"field": field_.label, "points": 100},
                           1e-6, ad_check))

    # Box Stokes sweeps: >= 20 forms per degree on random boxes in [-1, 2].
    for n in (0, 1, 2, 3):
        forms = coordform_catalog(n, 20, rng)
        boxes = box_catalog(n + 1, 20, rng)
        for (name, w, exprs), box in zip(forms, boxes):
            def stokes(w=w, box=box):
                volume, bdry = box_stokes_sides(w, box, order)
                return abs(volume - bdry), {"volume": volume, "boundary": bdry}

            checks.append(_run(
                f"box-stokes-{name}",
                {"coefficients": exprs, "box": _box_inputs(box), "order": order},
                1e-9, stokes))

    # Leibniz rule for f * omega at sampled points.
    for n in (1, 2):
        dim = n + 1
        f = smooth_field(dim, rng)
        _, w, exprs = coordform_catalog(n, 1, rng)[0]
        pts = random_points(BoxDomain((-1.0,) * dim, (2.0,) * dim), 25, rng)

        def leibniz(f=f, w=w, pts=pts):
            worst = max(leibniz_residual(f, w, p) for p in pts)
            return worst, {"points": len(pts)}

        checks.append(_run(f"leibniz-n{n}",
                           {"field": f.label, "coefficients": exprs},
                           1e-10, leibniz))

    return checks


# ------------------------------------------------------------ bridge suite

def bridge_checks(order: int, seed: int) -> list[CheckRecord]:
    del order
    checks: list[CheckRecord] = []
    rng = np.random.default_rng([seed, 2])

    for n in (1, 2, 3):
        m = n + 1
        sample = BoxDomain((-1.0,) * m, (2.0,) * m)
        for name, w, exprs in altfield_catalog(m, n, 5, rng):
            pts = random_points(sample, 100, rng)

            def bridge(w=w, pts=pts):
                worst = max(bridge_residual(w, p) for p in pts)
                return worst, {"points": len(pts)}

            checks.append(_run(f"bridge-{name}",
                               {"coefficients": exprs}, 1e-8, bridge))

    # d(d(w)) = 0 for every legal (degree, ambient) pair up to R^4.
    for m in (2, 3, 4):
        for k in range(0, m - 1):
            sample = BoxDomain((-1.0,) * m, (2.0,) * m)
            for name, w, exprs in altfield_catalog(m, k, 2, rng):
                pts = random_points(sample, 100, rng)

                def ddzero(w=w, pts=pts):
                    worst = max(dd_residual(w, p) for p in pts)
                    return worst, {"points": len(pts), "method": "dual"}

                checks.append(_run(f"dd-zero-{name}",
                                   {"coefficients": exprs}, 1e-7, ddzero))

    # The central-difference fallback agrees on one representative case.
    _, w0, exprs0 = altfield_catalog(3, 1, 1, rng)[0]
    pts0 = random_points(BoxDomain((-1.0,) * 3, (2.0,) * 3), 20, rng)

    def dd_central():
        worst = max(dd_residual(w0, p, method="central") for p in pts0)
        return worst, {"points": len(pts0), "method": "central", "h": 1e-4}

    checks.append(_run("dd-zero-central-fallback",
                       {"coefficients": exprs0}, 1e-7, dd_central))

    # Coefficient formula vs evaluation formula for d.
    for m, k in ((2, 1), (3, 1), (3, 2), (4, 2)):
        _, w, exprs = altfield_catalog(m, k, 1, rng)[0]
        pts = random_points(BoxDomain((-1.0,) * m, (2.0,) * m), 20, rng)
        vec_sets = [[[float(v) for v in rng.uniform(-1, 1, m)]
                     for _ in range(k + 1)] for _ in range(5)]

        def two_formulas(w=w, pts=pts, vec_sets=vec_sets):
            dw = ext_deriv_field(w)
            worst = 0.0
            for p in pts:
                form = dw.evaluate(p)
                for vectors in vec_sets:
                    a = evaluate_alt(form, vectors)
                    b = ext_deriv_apply(w, p, vectors)
                    worst = max(worst, abs(a - b))
            return worst, {"points": len(pts), "vector_sets": len(vec_sets)}

        checks.append(_run(f"ext-deriv-two-formulas-m{m}k{k}",
                           {"coefficients": exprs}, 1e-8, two_formulas))

    return checks


# ---------------------------------------------------------- singular suite

def _annulus_checks(order: int) -> list[CheckRecord]:
    def annulus_area():
        sigma = annulus_cube()
        w = annulus_half_area_form()
        volume, bdry, _ = singular_stokes_sides(sigma, w, order)
        target = 3.0 * math.pi
        err = max(abs(volume - target), abs(bdry - target))
        return err, {"volume": volume, "boundary": bdry, "target": target}

    def annulus_edges():
        sigma = annulus_cube()
        w = annulus_half_area_form()
        _, _, rows = singular_stokes_sides(sigma, w, order)
        edge_sum = sum(r["sign"] * r["integral"] for r in rows if r["i"] == 1)
        return abs(edge_sum), {"edges": [r["integral"] for r in rows if r["i"] == 1]}

    def annulus_stokes():
        sigma = annulus_cube()
        w = annulus_half_area_form()
        volume, bdry, _ = singular_stokes_sides(sigma, w, order)
        return abs(volume - bdry), {"volume": volume, "boundary": bdry}

    return [
        _run("annulus-area-3pi", {"cube": "annulus", "order": order},
             1e-8, annulus_area),
        _run("annulus-theta-edges-cancel", {"cube": "annulus", "order": order},
             1e-9, annulus_edges),
        _run("annulus-stokes", {"cube": "annulus", "order": order},
             1e-8, annulus_stokes),
    ]


def singular_checks(order: int, seed: int) -> list[CheckRecord]:
    checks: list[CheckRecord] = []
    rng = np.random.default_rng([seed, 3])

    checks.extend(_annulus_checks(order))

    # Stokes residuals across the cube cast (polynomial coefficient forms;
    # the composition through the map supplies the nonlinearity). Each cube
    # carries an order floor sized to its harmonic content.
    for cube, floor in stokes_cube_catalog(seed):
        n = cube.dim - 1
        eff = max(order, floor)
        for name, w, exprs in altfield_catalog(cube.ambient, n, 3, rng,
                                               trig=False):
            def stokes(cube=cube, w=w, eff=eff):
                volume, bdry, _ = singular_stokes_sides(cube, w, eff)
                return abs(volume - bdry), {"volume": volume, "boundary": bdry}

            checks.append(_run(
                f"singular-stokes-{cube.name}-{name}",
                {"cube": cube.name, "coefficients": exprs, "order": eff},
                1e-7, stokes))

    # Face matching at sampled points, all faces of each cube.
    for cube, _floor in stokes_cube_catalog(seed):
        n = cube.dim - 1
        if n == 0:
            continue
        _, w, exprs = altfield_catalog(cube.ambient, n, 1, rng)[0]
        pts = random_points(unit_box(n), 50, rng)

        def matching(cube=cube, w=w, pts=pts, n=n):
            worst = 0.0
            for i in range(n + 1):
                for eps in (0, 1):
                    worst = max(worst, max(
                        face_matching_residual(cube, w, i, eps, p) for p in pts))
            return worst, {"points": len(pts), "faces": 2 * (n + 1)}

        checks.append(_run(f"face-matching-{cube.name}",
                           {"cube": cube.name, "coefficients": exprs},
                           1e-9, matching))

    # Naturality: d commutes with pullback at sampled points.
    for cube, _floor in stokes_cube_catalog(seed):
        if cube.dim < 2:
            continue
        k = cube.dim - 2
        _, w, exprs = altfield_catalog(cube.ambient, k, 1, rng)[0]
        pts = random_points(unit_box(cube.dim), 10, rng)

        def naturality(cube=cube, w=w, pts=pts):
            worst = max(pullback_naturality_residual(cube, w, p) for p in pts)
            return worst, {"points": len(pts)}

        checks.append(_run(f"pullback-naturality-{cube.name}",
                           {"cube": cube.name, "coefficients": exprs},
                           1e-7, naturality))

    return checks


# ------------------------------------------------------------ chains suite

def chains_checks(order: int, seed: int) -> list[CheckRecord]:
    checks: list[CheckRecord] = []
    rng = np.random.default_rng([seed, 4])
    registry = chain_registry(seed)

    # Exact double-boundary cancellation for every registered cube.
    for base_id in registry.ids():
        cube = registry[base_id]
        if cube.dim < 2:
            continue
        term = CubeTerm(base_id, cube.dim)

        def ddzero(term=term):
            ok = boundary_boundary_is_zero(term)
            squared = boundary(boundary(chain_of(term)))
            return (0.0 if ok else float(len(squared.terms))), {
                "surviving_terms": len(squared.terms)}

        checks.append(_run(f"boundary-boundary-empty-{base_id}",
                           {"cube": base_id}, 0.0, ddzero))

    # Integral over a double boundary is exactly zero (empty chain).
    for base_id in ("identity-2d", "identity-3d", "curved-3-to-4"):
        cube = registry[base_id]
        k = cube.dim - 2
        _, w, exprs = altfield_catalog(cube.ambient, k, 1, rng, trig=False)[0]
        term = CubeTerm(base_id, cube.dim)

        def ddint(term=term, w=w):
            value = double_boundary_integral_zero(term, w, registry, order)
            return value, {}

        checks.append(_run(f"double-boundary-integral-{base_id}",
                           {"cube": base_id, "coefficients": exprs}, 0.0, ddint))

    # Box-chain Stokes on two-box splits of the unit box.
    for n in (1, 2):
        dim = n + 1
        b1, b2 = split_unit_box(dim, axis=0, at=0.5)
        _, w, exprs = coordform_catalog(n, 1, rng)[0]
        bc = BoxChain(dim, {b1: 1, b2: 1})

        def chain_stokes(bc=bc, w=w):
            volume, bdry, rows = stokes_chain_sides(bc, w, order)
            return abs(volume - bdry), {"volume": volume, "boundary": bdry,
                                        "terms": rows}

        checks.append(_run(f"box-chain-stokes-split-n{n}",
                           {"coefficients": exprs, "order": order},
                           1e-9, chain_stokes))

        def chain_scaled(bc=bc, w=w):
            scaled = BoxChain(bc.dim, {b: -3 * c for b, c in bc.terms.items()})
            v1, b1_, _ = stokes_chain_sides(scaled, w, order)
            return abs(v1 - b1_), {"volume": v1, "boundary": b1_, "coeff": -3}

        checks.append(_run(f"box-chain-stokes-scaled-n{n}",
                           {"coefficients": exprs, "order": order},
                           1e-9, chain_scaled))

    # Shared interior faces cancel; merging boxes preserves the boundary sum.
    for dim in (2, 3):
        b1, b2 = split_unit_box(dim, axis=dim - 1, at=0.375)
        _, w, exprs = coordform_catalog(dim - 1, 1, rng)[0]

        def shared(b1=b1, b2=b2, w=w, dim=dim):
            return shared_face_residual(b1, b2, dim - 1, w, order), {}

        checks.append(_run(f"shared-face-{dim}d",
                           {"axis": dim - 1, "coefficients": exprs},
                           1e-12, shared))

        def merged(b1=b1, b2=b2, w=w, dim=dim):
            merged_box = merge_boxes(b1, b2, dim - 1)
            total = (bdry_integral(w, b1, order) + bdry_integral(w, b2, order)
                     - bdry_integral(w, merged_box, order))
            return abs(total), {}

        checks.append(_run(f"merged-boundary-{dim}d",
                           {"axis": dim - 1, "coefficients": exprs},
                           1e-9, merged))

    # Degenerate adjacency: a zero-width overlap contributes nothing.
    flat = BoxDomain((0.0, 0.25), (1.0, 0.25))
    _, wf, exprs_flat = coordform_catalog(1, 1, rng)[0]

    def degenerate():
        return shared_face_residual(flat, flat, 1, wf, order), {}

    checks.append(_run("shared-face-degenerate",
                       {"coefficients": exprs_flat}, 0.0, degenerate))

    # Linearity of chain integration over singular chains.
    base_id = "identity-2d"
    term = CubeTerm(base_id, 2)
    bdry_chain = boundary(chain_of(term))
    _, w1, e1 = altfield_catalog(2, 1, 1, rng, trig=False)[0]

    def additive():
        c2 = boundary(chain_of(term, 2))
        lhs = integrate_chain(c2, w1, registry, order)
        rhs = 2.0 * integrate_chain(bdry_chain, w1, registry, order)
        return abs(lhs - rhs), {"lhs": lhs, "rhs": rhs}

    checks.append(_run("chain-integral-linear",
                       {"cube": base_id, "coefficients": e1}, 1e-12, additive))

    return checks


# ----------------------------------------------------- combinatorics suite

def combinatorics_checks(max_n: int, seed: int) -> list[CheckRecord]:
    checks: list[CheckRecord] = []
    rng = np.random.default_rng([seed, 5])

    def cancel():
        worst = 0
        count = 0
        for i in range(max_n + 1):
            for j in range(max_n):
                for eps in (0, 1):
                    for eta in (0, 1):
                        worst = max(worst, abs(sign_cancel(i, j, eps, eta)))
                        count += 1
        return float(worst), {"pairs": count}

    checks.append(_run("sign-cancel-exhaustive",
                       {"i_max": max_n, "j_max": max_n - 1}, 0.0, cancel))

    def parity():
        bad = sum(1 for i in range(max_n + 1) for j in range(max_n)
                  if not parity_distinct(i, j))
        return float(bad), {"pairs": (max_n + 1) * max_n}

    checks.append(_run("parity-lemma-exhaustive",
                       {"i_max": max_n, "j_max": max_n - 1}, 0.0, parity))

    def face_paths():
        bad = 0
        total = 0
        for dim in range(2, 7):
            boxes = [unit_box(dim)] + box_catalog(dim, 2, rng)
            for box in boxes:
                for i in range(dim):
                    for j in range(dim - 1):
                        one, two = face_of_face_box(box, i, j)
                        total += 1
                        if one != two:
                            bad += 1
        return float(bad), {"paths": total, "dims": [2, 3, 4, 5, 6]}

    checks.append(_run("face-of-face-paths", {"dims": "2..6"}, 0.0, face_paths))

    return checks


# --------------------------------------------------------- classical suite

def classical_checks(order: int, seed: int) -> list[CheckRecord]:
    del seed
    checks: list[CheckRecord] = []
    scenarios = load_scenarios()

    for row in scenarios["ftc"]:
        def ftc(row=row):
            f = parse(row["f"], 1)
            result = ftc_check(f, row["a"], row["b"], order)
            residual = max(result.stokes_residual, result.boundary_residual)
            if "value" in row:
                residual = max(residual, abs(result.volume - row["value"]))
            return residual, {"volume": result.volume,
                              "boundary": result.boundary,
                              "difference": result.difference}

        checks.append(_run(row["name"], {"f": row["f"], "interval":
                                         [row["a"], row["b"]], "order": order},
                           row["tolerance"], ftc))

    for row in scenarios["ftc_paths"]:
        def paths(row=row):
            f = parse(row["f"], 1)
            return ftc_paths_agree(f, row["a"], row["b"], order), {}

        checks.append(_run(row["name"], {"f": row["f"], "interval":
                                         [row["a"], row["b"]], "order": order},
                           row["tolerance"], paths))

    for row in scenarios["green"]:
        def green(row=row):
            p = parse(row["p"], 2)
            q = parse(row["q"], 2)
            box = BoxDomain(tuple(row["box"][0]), tuple(row["box"][1]))
            result = green_check(p, q, box, order)
            residual = max(result.stokes_residual, result.edge_residual)
            if "value" in row:
                residual = max(residual, abs(result.volume - row["value"]))
            return residual, {"volume": result.volume,
                              "boundary": result.boundary,
                              "four_edge": result.four_edge}

        checks.append(_run(row["name"], {"p": row["p"], "q": row["q"],
                                         "box": row["box"], "order": order},
                           row["tolerance"], green))

    for row in scenarios["divergence"]:
        def diverg(row=row):
            comps = tuple(parse(text, len(row["components"]))
                          for text in row["components"])
            box = BoxDomain(tuple(row["box"][0]), tuple(row["box"][1]))
            result = divergence_check(comps, box, order)
            residual = result.residual
            if "value" in row:
                residual = max(residual, abs(result.volume - row["value"]))
            return residual, {"volume": result.volume, "flux": result.flux}

        checks.append(_run(row["name"], {"components": row["components"],
                                         "box": row["box"], "order": order},
                           row["tolerance"], diverg))

    for row in scenarios["ibp"]:
        def ibp(row=row):
            f = parse(row["f"], 1)
            g = parse(row["g"], 1)
            return ibp_check(f, g, row["a"], row["b"], order), {}

        checks.append(_run(row["name"], {"f": row["f"], "g": row["g"],
                                         "interval": [row["a"], row["b"]],
                                         "order": order},
                           row["tolerance"], ibp))

    return checks


# ------------------------------------------------------------------ runner

_SUITE_FNS = {
    "box": lambda order, max_n, seed: box_checks(order, seed),
    "singular": lambda order, max_n, seed: singular_checks(order, seed),
    "bridge": lambda order, max_n, seed: bridge_checks(order, seed),
    "chains": lambda order, max_n, seed: chains_checks(order, seed),
    "combinatorics": lambda order, max_n, seed: combinatorics_checks(max_n, seed),
    "classical": lambda order, max_n, seed: classical_checks(order, seed),
}

_ALL_ORDER = ("box", "singular", "bridge", "chains", "combinatorics",
              "classical")


def run_suite(suite: str, order: int = 16, max_n: int = 12,
              seed: int = 0) -> Report:
    """Run one named suite (or ``all``) and wrap the records in a report."""
    if suite == "all":
        checks = []
        for name in _ALL_ORDER:
            checks.extend(_SUITE_FNS[name](order, max_n, seed))
    elif suite in _SUITE_FNS:
        checks = _SUITE_FNS[suite](order, max_n, seed)
    else:
        raise ValueError(f"unknown suite {suite!r}")
    return Report(version=__version__, suite=suite, checks=checks,
                  passed=all(c.passed for c in checks))


def run_check_parity(max_n: int = 12, seed: int = 0) -> Report:
    """The exhaustive integer identities on their own (exact, no tolerance)."""
    checks = combinatorics_checks(max_n, seed)
    return Report(version=__version__, suite="check-parity", checks=checks,
                  passed=all(c.passed for c in checks))


# ------------------------------------------------------------------- demos

def _poly_coordform(n: int, rng: np.random.Generator) -> tuple[CoordNForm, list[str]]:
    dim = n + 1
    asts = [smooth_ast(dim, rng, trig=False) for _ in range(dim)]
    return (CoordNForm(tuple(field_from_ast(a, dim) for a in asts)),
            [format_expr(a) for a in asts])


def _demo_box(dim: int, order: int, seed: int, tolerance: float) -> list[CheckRecord]:
    rng = np.random.default_rng([seed, dim])
    w, exprs = _poly_coordform(dim - 1, rng)
    box = unit_box(dim)

    def stokes():
        volume = integrate_box(ext_deriv_coord(w), box, order, max_dim=dim)
        bdry = bdry_integral(w, box, order, max_dim=dim)
        return abs(volume - bdry), {"volume": volume, "boundary": bdry}

    return [_run(f"box-stokes-{dim}d", {"coefficients": exprs, "order": order},
                 tolerance, stokes)]


def run_demo(name: str, order: int | None = None, seed: int = 0) -> Report:
    """Named demonstrations with documented orders and tolerances."""
    if name == "annulus":
        checks = _annulus_checks(order or 16)
    elif name == "box4d":
        checks = _demo_box(4, order or 8, seed, 1e-9)
    elif name == "box5d":
        checks = _demo_box(5, order or 4, seed, 1e-9)
    elif name == "box10d":
        checks = _demo_box(10, order or 3, seed, 1e-8)
    else:
        raise ValueError(f"unknown demo {name!r}")
    return Report(version=__version__, suite=f"demo:{name}", checks=checks,
                  passed=all(c.passed for c in checks))


# --------------------------------------------------------------- integrate

MAX_AMBIENT = 8


def _parse_form(exprs: list[str], ambient: int, degree: int) -> AltFormField:
    expected = len(increasing_sets(ambient, degree))
    if len(exprs) != expected:
        raise ValueError(
            f"a degree-{degree} form on R^{ambient} needs {expected} "
            f"coefficients (lexicographic index-set order), got {len(exprs)}")
    return AltFormField(ambient, degree,
                        tuple(parse(text, ambient) for text in exprs))


def _parse_cube(exprs: list[str], domain_dim: int, ambient: int,
                name: str) -> SingularCube:
    if len(exprs) != ambient:
        raise ValueError(
            f"the map needs {ambient} component expressions, got {len(exprs)}")
    comps = tuple(parse(text, domain_dim) for text in exprs)
    return SingularCube(SmoothMap(domain_dim, comps), name=name)


def _box_cube(lo: list[float], hi: list[float]) -> SingularCube:
    """The affine cube tracing out an axis-aligned box."""
    box = BoxDomain(tuple(lo), tuple(hi))
    comps = tuple(
        ScalarField(box.dim, lambda c, a=a, s=b - a, j=j: a + s * c[j],
                    label=f"{a} + {b - a}*x{j}")
        for j, (a, b) in enumerate(zip(box.lo, box.hi)))
    return SingularCube(SmoothMap(box.dim, comps),
                        name=f"box{list(box.lo)}:{list(box.hi)}")


def run_integrate(req: IntegrateRequest) -> IntegrateResponse:
    """Integrate a form over a cube, a box chain, or a cube chain.

    Without ``stokes`` the form degree must equal the cube dimension and the
    plain integral is returned. With ``stokes`` the cube dimension is
    degree + 1 and the full residual ledger comes back as checks.
    """
    if req.ambient > MAX_AMBIENT:
        raise ValueError(
            f"ambient dimension {req.ambient} exceeds the cost cap {MAX_AMBIENT}")
    if req.degree > req.ambient:
        raise ValueError("form degree cannot exceed the ambient dimension")
    w = _parse_form(req.form, req.ambient, req.degree)
    cube_dim = req.degree + 1 if req.stokes else req.degree

    if req.boxes is not None:
        if not req.stokes:
            raise ValueError("box chains are only supported with stokes=true")
        if req.ambient != req.degree + 1:
            raise ValueError("box-chain Stokes needs ambient == degree + 1")
        terms = {}
        for b in req.boxes:
            box = BoxDomain(tuple(b.lo), tuple(b.hi))
            if box.dim != cube_dim:
                raise ValueError(
                    f"box of dimension {box.dim}, expected {cube_dim}")
            terms[box] = terms.get(box, 0) + b.coeff
        bc = BoxChain(cube_dim, terms)
        wc = to_coord_form(w)

        def ledger():
            volume, bdry, rows = stokes_chain_sides(bc, wc, req.order)
            return abs(volume - bdry), {"volume": volume, "boundary": bdry,
                                        "terms": rows}

        check = _run("box-chain-stokes", {"boxes": len(bc.terms),
                                          "order": req.order}, 1e-9, ledger)
        return IntegrateResponse(version=__version__,
                                 value=check.values["volume"],
                                 checks=[check], passed=check.passed)

    if req.chain is not None:
        cubes: list[tuple[int, SingularCube]] = []
        for t, spec in enumerate(req.chain):
            if (spec.map is None) == (spec.box is None):
                raise ValueError("each chain term needs a map or a box")
            if spec.map is not None:
                cubes.append((spec.coeff, _parse_cube(spec.map, cube_dim,
                                                      req.ambient, f"term{t}")))
            else:
                cube = _box_cube(spec.box.lo, spec.box.hi)
                if cube.ambient != req.ambient or cube.dim != cube_dim:
                    raise ValueError(
                        f"chain box term is a {cube.dim}-cube in "
                        f"R^{cube.ambient}, expected a {cube_dim}-cube in "
                        f"R^{req.ambient}")
                cubes.append((spec.coeff * spec.box.coeff, cube))
        if not req.stokes:
            rows = [{"term": cube.name, "coeff": coeff,
                     "integral": integrate_form(cube, w, req.order)}
                    for coeff, cube in cubes]
            value = sum(r["coeff"] * r["integral"] for r in rows)
            return IntegrateResponse(version=__version__, value=value,
                                     checks=[], passed=True)

        def chain_ledger():
            volume = 0.0
            bdry = 0.0
            rows = []
            for coeff, cube in cubes:
                v, b, faces = singular_stokes_sides(cube, w, req.order)
                rows.append({"term": cube.name, "coeff": coeff, "volume": v,
                             "boundary": b, "faces": faces})
                volume += coeff * v
                bdry += coeff * b
            return abs(volume - bdry), {"volume": volume, "boundary": bdry,
                                        "terms": rows}

        check = _run("cube-chain-stokes", {"terms": len(cubes),
                                           "order": req.order}, 1e-7,
                     chain_ledger)
        return IntegrateResponse(version=__version__,
                                 value=check.values["volume"],
                                 checks=[check], passed=check.passed)

    if req.map is None:
        if req.ambient != cube_dim:
            raise ValueError(
                "with no map the identity cube is used, which needs "
                f"ambient == {'degree + 1' if req.stokes else 'degree'}")
        sigma = SingularCube(identity_map(cube_dim), name="identity")
    else:
        sigma = _parse_cube(req.map, cube_dim, req.ambient, "cube")

    if not req.stokes:
        value = integrate_form(sigma, w, req.order)
        return IntegrateResponse(version=__version__, value=value,
                                 checks=[], passed=True)

    def stokes_ledger():
        volume, bdry, rows = singular_stokes_sides(sigma, w, req.order)
        return abs(volume - bdry), {"volume": volume, "boundary": bdry,
                                    "faces": rows}

    check = _run("stokes-ledger", {"cube": sigma.name, "order": req.order},
                 1e-7, stokes_ledger)
    return IntegrateResponse(version=__version__, value=check.values["volume"],
                             checks=[check], passed=check.passed)
