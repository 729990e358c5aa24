"""Smooth scalar fields and maps, with exact forward-mode derivatives.

A ``ScalarField`` is a dimension plus a body; the body takes a sequence of
carrier scalars (see :mod:`cubeforms.dual`) and combines them with smooth
operations only. A ``SmoothMap`` bundles component fields sharing a domain.
Points are plain float tuples; lengths are validated at operation
boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .dual import Dual, Scalar, seed_all, seed_one

Point = tuple[float, ...]


def as_point(point: Sequence[float], dim: int) -> Point:
    pt = tuple(float(c) for c in point)
    if len(pt) != dim:
        raise ValueError(f"point has {len(pt)} coordinates, expected {dim}")
    return pt


@dataclass(frozen=True)
class ScalarField:
    """A smooth real-valued function of ``dim`` variables."""

    dim: int
    body: Callable[[Sequence[Scalar]], Scalar] = field(repr=False)
    label: str | None = None

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("field dimension must be nonnegative")

    def __repr__(self) -> str:
        name = self.label if self.label is not None else "<body>"
        return f"ScalarField(dim={self.dim}, {name})"


@dataclass(frozen=True)
class SmoothMap:
    """A smooth map given by component fields over a shared domain."""

    domain_dim: int
    components: tuple[ScalarField, ...]

    def __post_init__(self):
        for comp in self.components:
            if comp.dim != self.domain_dim:
                raise ValueError(
                    f"component of dimension {comp.dim} in map over "
                    f"{self.domain_dim} variables")

    @property
    def codomain_dim(self) -> int:
        return len(self.components)


def constant_field(dim: int, value: float) -> ScalarField:
    v = float(value)
    return ScalarField(dim, lambda coords: v, label=repr(v))


def coordinate_field(dim: int, index: int) -> ScalarField:
    if not 0 <= index < dim:
        raise ValueError(f"coordinate index {index} out of range for dim {dim}")
    return ScalarField(dim, lambda coords: coords[index], label=f"x{index}")


def identity_map(dim: int) -> SmoothMap:
    return SmoothMap(dim, tuple(coordinate_field(dim, j) for j in range(dim)))


def eval_field(f: ScalarField, point: Sequence[float]) -> float:
    """Evaluate a field at a real point."""
    pt = as_point(point, f.dim)
    return float(f.body(pt))


def partial(f: ScalarField, coords: Sequence[Scalar], j: int) -> Scalar:
    """Single partial derivative over any carrier, via a one-slot dual."""
    out = f.body(seed_one(coords, j))
    if isinstance(out, Dual):
        return out.pert[0]
    return 0.0 * out if isinstance(out, np.ndarray) else 0.0


def partials(f: ScalarField, coords: Sequence[Scalar]) -> list[Scalar]:
    """All partial derivatives at once, via a full-width dual pass."""
    out = f.body(seed_all(coords))
    if isinstance(out, Dual):
        return list(out.pert)
    return [0.0] * len(coords)


def gradient(f: ScalarField, point: Sequence[float]) -> np.ndarray:
    """Exact gradient at a real point."""
    pt = as_point(point, f.dim)
    grad = np.array([float(p) for p in partials(f, pt)])
    if not np.all(np.isfinite(grad)):
        raise ArithmeticError(f"non-finite gradient at {pt}")
    return grad


def eval_map(sigma: SmoothMap, point: Sequence[float]) -> Point:
    pt = as_point(point, sigma.domain_dim)
    return tuple(float(c.body(pt)) for c in sigma.components)


def eval_map_carrier(sigma: SmoothMap, coords: Sequence[Scalar]) -> list[Scalar]:
    return [c.body(coords) for c in sigma.components]


def jacobian(sigma: SmoothMap, point: Sequence[float]) -> np.ndarray:
    """Exact Jacobian, shape (codomain_dim, domain_dim)."""
    pt = as_point(point, sigma.domain_dim)
    rows = [[float(p) for p in partials(c, pt)] for c in sigma.components]
    jac = np.array(rows).reshape(sigma.codomain_dim, sigma.domain_dim)
    if not np.all(np.isfinite(jac)):
        raise ArithmeticError(f"non-finite jacobian at {pt}")
    return jac


def jacobian_carrier(sigma: SmoothMap, coords: Sequence[Scalar]) -> list[list[Scalar]]:
    """Jacobian rows over any carrier (entries may be arrays or duals)."""
    return [partials(c, coords) for c in sigma.components]


def eval_with_jacobian(sigma: SmoothMap, coords: Sequence[Scalar]):
    """One dual pass per component: returns (values, jacobian rows)."""
    values: list[Scalar] = []
    rows: list[list[Scalar]] = []
    seeded = seed_all(coords)
    for comp in sigma.components:
        out = comp.body(seeded)
        if isinstance(out, Dual):
            values.append(out.value)
            rows.append(list(out.pert))
        else:
            values.append(out)
            rows.append([0.0] * len(coords))
    return values, rows


def fd_jacobian(sigma: SmoothMap, point: Sequence[float], h: float = 1e-5) -> np.ndarray:
    """Central-difference Jacobian, the finite-difference cross-check."""
    pt = list(as_point(point, sigma.domain_dim))
    cols = []
    for j in range(sigma.domain_dim):
        hi = list(pt)
        lo = list(pt)
        hi[j] += h
        lo[j] -= h
        fhi = eval_map(sigma, hi)
        flo = eval_map(sigma, lo)
        cols.append([(a - b) / (2.0 * h) for a, b in zip(fhi, flo)])
    return np.array(cols).T.reshape(sigma.codomain_dim, sigma.domain_dim)


def compose(outer: SmoothMap, inner: SmoothMap) -> SmoothMap:
    """Composition by substitution at evaluation time; duals flow through."""
    if outer.domain_dim != inner.codomain_dim:
        raise ValueError(
            f"cannot compose: outer expects {outer.domain_dim} inputs, "
            f"inner produces {inner.codomain_dim}")

    def make_body(g: ScalarField):
        def body(coords):
            return g.body([c.body(coords) for c in inner.components])
        return body

    comps = tuple(
        ScalarField(inner.domain_dim, make_body(g), label=g.label)
        for g in outer.components)
    return SmoothMap(inner.domain_dim, comps)
