"""Alternating k-forms with coefficients over increasing index sets.

A degree-k form on R^m keeps one coefficient per increasing k-subset of
{0..m-1}, in lexicographic order. Evaluation on k vectors contracts the
coefficients with k x k minors; composition with a linear map is the
Cauchy-Binet formula

    (w . L)_J = sum_I w_I * det(L[I, J]).

The exterior derivative of a coefficient-field form uses the coefficient
formula

    (dw)_J = sum_{t in J} (-1)^{pos(t, J)} d(w_{J \\ t}) / dx_t,

with every partial taken by exact forward-mode duals; an independent
evaluation-formula version (alternating sums of directional derivatives)
is provided for cross-checking. ``to_coord_form`` and ``bridge_residual``
connect this picture with :mod:`cubeforms.coordform`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Sequence

import numpy as np

from .coordform import CoordNForm, ext_deriv_coord
from .dual import Dual, Scalar, seed_direction
from .fields import ScalarField, as_point, eval_field, partial

IndexSet = tuple[int, ...]


@lru_cache(maxsize=None)
def increasing_sets(m: int, k: int) -> tuple[IndexSet, ...]:
    """All increasing k-subsets of {0..m-1}, lexicographically ordered."""
    if k < 0 or k > m:
        raise ValueError(f"no increasing {k}-subsets of {m} indices")
    return tuple(combinations(range(m), k))


@lru_cache(maxsize=None)
def set_rank(m: int, k: int) -> dict[IndexSet, int]:
    return {s: r for r, s in enumerate(increasing_sets(m, k))}


@dataclass(frozen=True)
class AltForm:
    """A constant alternating k-form on R^m (one coefficient per index set)."""

    ambient: int
    degree: int
    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=float))
        expected = comb(self.ambient, self.degree)
        if self.coeffs.shape != (expected,):
            raise ValueError(
                f"degree {self.degree} on R^{self.ambient} needs {expected} "
                f"coefficients, got shape {self.coeffs.shape}")

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coeffs)))


def zero_alt(m: int, k: int) -> AltForm:
    return AltForm(m, k, np.zeros(comb(m, k)))


def _vector_matrix(m: int, vectors: Sequence[Sequence[float]]) -> np.ndarray:
    v = np.array([[float(c) for c in vec] for vec in vectors], dtype=float)
    if v.size and v.shape[1] != m:
        raise ValueError(f"vectors must live in R^{m}")
    return v.reshape(len(vectors), m)


def evaluate_alt(w: AltForm, vectors: Sequence[Sequence[float]]) -> float:
    """Apply the form to k vectors: sum of coefficients times k x k minors."""
    if len(vectors) != w.degree:
        raise ValueError(f"degree {w.degree} form applied to {len(vectors)} vectors")
    v = _vector_matrix(w.ambient, vectors)
    total = 0.0
    for coeff, idx in zip(w.coeffs, increasing_sets(w.ambient, w.degree)):
        total += float(coeff) * float(np.linalg.det(v[:, list(idx)].T))
    return total


def comp_linear(w: AltForm, matrix: np.ndarray) -> AltForm:
    """Compose with a linear map L: R^d -> R^m (Cauchy-Binet on minors)."""
    lm = np.asarray(matrix, dtype=float)
    if lm.ndim != 2 or lm.shape[0] != w.ambient:
        raise ValueError(f"matrix must have {w.ambient} rows, got {lm.shape}")
    d = lm.shape[1]
    if w.degree > d:
        raise ValueError(
            f"cannot pull a degree-{w.degree} form back to R^{d}")
    src_sets = increasing_sets(w.ambient, w.degree)
    out = np.zeros(comb(d, w.degree))
    for j, jset in enumerate(increasing_sets(d, w.degree)):
        total = 0.0
        for coeff, iset in zip(w.coeffs, src_sets):
            total += float(coeff) * float(np.linalg.det(lm[np.ix_(iset, jset)]))
        out[j] = total
    return AltForm(d, w.degree, out)


def det_carrier(rows: list[list[Scalar]]) -> Scalar:
    """Determinant by cofactor expansion; entries may be duals or arrays."""
    n = len(rows)
    if n == 0:
        return 1.0
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = 0.0
    for c in range(n):
        minor = [row[:c] + row[c + 1:] for row in rows[1:]]
        term = rows[0][c] * det_carrier(minor)
        total = total - term if c % 2 else total + term
    return total


@dataclass(frozen=True)
class AltFormField:
    """A smooth field of alternating k-forms on R^m."""

    ambient: int
    degree: int
    coeff_fields: tuple[ScalarField, ...]

    def __post_init__(self):
        expected = comb(self.ambient, self.degree)
        if len(self.coeff_fields) != expected:
            raise ValueError(
                f"degree {self.degree} on R^{self.ambient} needs {expected} "
                f"coefficient fields, got {len(self.coeff_fields)}")
        for f in self.coeff_fields:
            if f.dim != self.ambient:
                raise ValueError(
                    f"coefficient field of dim {f.dim} on R^{self.ambient}")

    def evaluate(self, point) -> AltForm:
        pt = as_point(point, self.ambient)
        return AltForm(self.ambient, self.degree,
                       np.array([eval_field(f, pt) for f in self.coeff_fields]))


def apply_field(w: AltFormField, coords: Sequence[Scalar],
                vectors: Sequence[Sequence[float]]) -> Scalar:
    """Evaluate w at carrier coords and contract with fixed real vectors."""
    if len(vectors) != w.degree:
        raise ValueError(f"degree {w.degree} form applied to {len(vectors)} vectors")
    v = _vector_matrix(w.ambient, vectors)
    total = 0.0
    for f, idx in zip(w.coeff_fields, increasing_sets(w.ambient, w.degree)):
        minor = float(np.linalg.det(v[:, list(idx)].T))
        if minor != 0.0:
            total = total + f.body(coords) * minor
    return total


def ext_deriv_field(w: AltFormField) -> AltFormField:
    """Exterior derivative by the coefficient formula, with exact partials."""
    m, k = w.ambient, w.degree
    if k >= m:
        raise ValueError(f"no nonzero degree-{k + 1} forms on R^{m}")
    rank = set_rank(m, k)
    fields = []
    for jset in increasing_sets(m, k + 1):
        terms = []
        for pos, t in enumerate(jset):
            sub = jset[:pos] + jset[pos + 1:]
            terms.append((1.0 if pos % 2 == 0 else -1.0, w.coeff_fields[rank[sub]], t))

        def body(coords, terms=terms):
            total = 0.0
            for sign, f, t in terms:
                total = total + sign * partial(f, coords, t)
            return total

        fields.append(ScalarField(m, body))
    return AltFormField(m, k + 1, tuple(fields))


def ext_deriv_apply(w: AltFormField, point,
                    vectors: Sequence[Sequence[float]]) -> float:
    """Evaluation-formula exterior derivative (independent cross-check).

    (dw)(x)(v_0..v_k) as the alternating sum over j of the directional
    derivative along v_j of y -> w(y)(v_0..^v_j..v_k).
    """
    m = w.ambient
    pt = as_point(point, m)
    if len(vectors) != w.degree + 1:
        raise ValueError("need degree + 1 vectors")
    total = 0.0
    for j, vj in enumerate(vectors):
        rest = [v for t, v in enumerate(vectors) if t != j]
        out = apply_field(w, seed_direction(pt, vj), rest)
        deriv = float(out.pert[0]) if isinstance(out, Dual) else 0.0
        total += deriv if j % 2 == 0 else -deriv
    return total


def _ext_deriv_central(w: AltFormField, point, h: float) -> AltForm:
    """Coefficient-formula derivative with central differences (fallback)."""
    m, k = w.ambient, w.degree
    pt = list(as_point(point, m))
    rank = set_rank(m, k)
    out = []
    for jset in increasing_sets(m, k + 1):
        total = 0.0
        for pos, t in enumerate(jset):
            f = w.coeff_fields[rank[jset[:pos] + jset[pos + 1:]]]
            hi, lo = list(pt), list(pt)
            hi[t] += h
            lo[t] -= h
            d = (eval_field(f, hi) - eval_field(f, lo)) / (2.0 * h)
            total += d if pos % 2 == 0 else -d
        out.append(total)
    return AltForm(m, k + 1, np.array(out))


def dd_residual(w: AltFormField, point, h: float = 1e-4,
                method: str = "dual") -> float:
    """Max |coefficient| of d(d(w)) at a point; zero for smooth fields.

    ``method="dual"`` nests exact duals; ``method="central"`` redoes the
    outer derivative with central differences of step h.
    """
    if w.degree + 2 > w.ambient:
        raise ValueError("d(d(w)) needs degree + 2 <= ambient dimension")
    inner = ext_deriv_field(w)
    if method == "dual":
        return ext_deriv_field(inner).evaluate(point).max_abs()
    if method == "central":
        return _ext_deriv_central(inner, point, h).max_abs()
    raise ValueError(f"unknown method {method!r}")


def _succ_above_basis(m: int, i: int) -> list[list[float]]:
    vectors = []
    for k in range(m - 1):
        j = k if k < i else k + 1
        vectors.append([1.0 if t == j else 0.0 for t in range(m)])
    return vectors


def to_coord_form(w: AltFormField) -> CoordNForm:
    """Read a top-degree-minus-one form as a coordinate form.

    Coefficient i is the evaluation of w on the basis vectors that skip
    direction i, realized as a derived field evaluable over any carrier.
    """
    m = w.ambient
    if w.degree != m - 1:
        raise ValueError(
            f"need degree {m - 1} on R^{m}, got degree {w.degree}")

    def make(i: int) -> ScalarField:
        basis = _succ_above_basis(m, i)
        return ScalarField(m, lambda coords: apply_field(w, coords, basis))

    return CoordNForm(tuple(make(i) for i in range(m)))


def from_coord_form(w: CoordNForm) -> AltFormField:
    """The inverse reading: coefficient fields keyed by complement index sets."""
    m = w.dim
    rank = set_rank(m, m - 1)
    fields: list[ScalarField | None] = [None] * m
    for i in range(m):
        complement = tuple(t for t in range(m) if t != i)
        fields[rank[complement]] = w.coeffs[i]
    return AltFormField(m, m - 1, tuple(fields))


def bridge_residual(w: AltFormField, point) -> float:
    """|dw applied to the full basis - divergence-form derivative| at a point.

    The left side runs the abstract coefficient-formula derivative and
    contracts with e_0..e_n; the right side goes through the coordinate
    reading and the signed divergence. Agreement ties the two pictures
    together.
    """
    m = w.ambient
    if w.degree != m - 1:
        raise ValueError(f"need degree {m - 1} on R^{m}, got degree {w.degree}")
    pt = as_point(point, m)
    basis = [[1.0 if t == j else 0.0 for t in range(m)] for j in range(m)]
    lhs = evaluate_alt(ext_deriv_field(w).evaluate(pt), basis)
    rhs = eval_field(ext_deriv_coord(to_coord_form(w)), pt)
    return abs(lhs - rhs)
