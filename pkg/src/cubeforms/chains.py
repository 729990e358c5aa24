"""Integer-linear chains of singular cubes and of boxes.

A chain term is a base cube plus a record of which *original* coordinates
have been frozen to 0 or 1; freezing is order-independent by construction,
so the term algebra can cancel paired boundary faces exactly (empty
support, no tolerance). Boundary signs follow

    face (i, eps)  ->  (-1)^i * (+1 if eps == 1 else -1).

Box chains carry the same linear structure for axis-aligned boxes, where
the Stokes identity extends by linearity and shared interior faces cancel.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .alternating import AltFormField
from .coordform import (CoordNForm, bdry_integral, ext_deriv_coord)
from .fields import SmoothMap, compose, constant_field, coordinate_field
from .quadrature import BoxDomain, face_integral, integrate_box
from .coordform import signed_coeff
from .singular import SingularCube, integrate_form


class CubeRegistry:
    """Named base cubes; chain terms refer to cubes by id."""

    def __init__(self):
        self._cubes: dict[str, SingularCube] = {}

    def register(self, base_id: str, cube: SingularCube) -> str:
        if base_id in self._cubes:
            raise ValueError(f"cube id {base_id!r} already registered")
        self._cubes[base_id] = cube
        return base_id

    def __getitem__(self, base_id: str) -> SingularCube:
        try:
            return self._cubes[base_id]
        except KeyError:
            raise KeyError(f"unknown cube id {base_id!r}") from None

    def ids(self) -> list[str]:
        return list(self._cubes)


@dataclass(frozen=True)
class CubeTerm:
    """A base cube with some original coordinates frozen to 0 or 1.

    ``frozen`` maps original coordinate indices to sides, stored sorted;
    two terms are the same face exactly when base, dimension, and frozen
    assignments coincide, regardless of the order the freezes happened.
    """

    base_id: str
    base_dim: int
    frozen: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        seen = set()
        for coord, side in self.frozen:
            if not 0 <= coord < self.base_dim:
                raise ValueError(f"frozen coordinate {coord} out of range")
            if side not in (0, 1):
                raise ValueError("frozen side must be 0 or 1")
            if coord in seen:
                raise ValueError(f"coordinate {coord} frozen twice")
            seen.add(coord)
        object.__setattr__(self, "frozen", tuple(sorted(self.frozen)))

    @property
    def dim(self) -> int:
        return self.base_dim - len(self.frozen)

    def unfrozen(self) -> list[int]:
        taken = {coord for coord, _ in self.frozen}
        return [r for r in range(self.base_dim) if r not in taken]


def face_term(term: CubeTerm, i: int, eps: int) -> CubeTerm:
    """Freeze the i-th currently unfrozen original coordinate to eps."""
    free = term.unfrozen()
    if not 0 <= i < len(free):
        raise ValueError(f"face index {i} out of range for a {term.dim}-cube")
    if eps not in (0, 1):
        raise ValueError("face side must be 0 or 1")
    return CubeTerm(term.base_id, term.base_dim,
                    term.frozen + ((free[i], eps),))


def term_to_map(registry: CubeRegistry, term: CubeTerm) -> SingularCube:
    """Realize a term as a cube: fill frozen slots, then apply the base map."""
    base = registry[term.base_id]
    if base.dim != term.base_dim:
        raise ValueError(
            f"term expects a {term.base_dim}-cube, registry has {base.dim}")
    frozen = dict(term.frozen)
    free = term.unfrozen()
    slot = {r: k for k, r in enumerate(free)}
    comps = []
    for r in range(term.base_dim):
        if r in frozen:
            comps.append(constant_field(term.dim, float(frozen[r])))
        else:
            comps.append(coordinate_field(term.dim, slot[r]))
    fill = SmoothMap(term.dim, tuple(comps))
    label = ",".join(f"x{c}={s}" for c, s in term.frozen) or "full"
    return SingularCube(compose(base.map, fill),
                        name=f"{term.base_id}[{label}]")


@dataclass
class SingularChain:
    """An integer combination of same-dimension cube terms."""

    dim: int
    terms: dict[CubeTerm, int] = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {t: int(c) for t, c in self.terms.items() if c != 0}
        for t in self.terms:
            if t.dim != self.dim:
                raise ValueError(
                    f"{t.dim}-dimensional term in a {self.dim}-chain")

    def is_zero(self) -> bool:
        return not self.terms


def chain_of(term: CubeTerm, coeff: int = 1) -> SingularChain:
    return SingularChain(term.dim, {term: coeff})


def add_chains(c1: SingularChain, c2: SingularChain) -> SingularChain:
    if c1.dim != c2.dim:
        raise ValueError("cannot add chains of different dimension")
    merged = dict(c1.terms)
    for t, c in c2.terms.items():
        merged[t] = merged.get(t, 0) + c
    return SingularChain(c1.dim, merged)


def scale_chain(k: int, c: SingularChain) -> SingularChain:
    return SingularChain(c.dim, {t: k * v for t, v in c.terms.items()})


def boundary(chain: SingularChain) -> SingularChain:
    """The signed sum of faces; paired faces cancel exactly in the algebra."""
    if chain.dim == 0:
        raise ValueError("0-dimensional chains have no boundary")
    out: dict[CubeTerm, int] = {}
    for term, coeff in chain.terms.items():
        for i in range(chain.dim):
            sign = 1 if i % 2 == 0 else -1
            for eps, s in ((1, sign), (0, -sign)):
                ft = face_term(term, i, eps)
                out[ft] = out.get(ft, 0) + coeff * s
    return SingularChain(chain.dim - 1, out)


def boundary_boundary_is_zero(term: CubeTerm) -> bool:
    """Exact check: the double boundary of a single term has empty support."""
    return boundary(boundary(chain_of(term))).is_zero()


def integrate_chain(chain: SingularChain, w: AltFormField,
                    registry: CubeRegistry, order: int = 16, *,
                    max_dim: int = 6) -> float:
    """Linear extension of cube integration to chains."""
    total = 0.0
    for term, coeff in sorted(chain.terms.items(),
                              key=lambda item: (item[0].base_id, item[0].frozen)):
        total += coeff * integrate_form(term_to_map(registry, term), w, order,
                                        max_dim=max_dim)
    return total


def chain_term_rows(chain: SingularChain, w: AltFormField,
                    registry: CubeRegistry, order: int = 16, *,
                    max_dim: int = 6) -> list[dict]:
    """Per-term contributions, for report ledgers."""
    rows = []
    for term, coeff in sorted(chain.terms.items(),
                              key=lambda item: (item[0].base_id, item[0].frozen)):
        cube = term_to_map(registry, term)
        value = integrate_form(cube, w, order, max_dim=max_dim)
        rows.append({"term": cube.name, "coeff": coeff, "integral": value})
    return rows


def double_boundary_integral_zero(term: CubeTerm, w: AltFormField,
                                  registry: CubeRegistry,
                                  order: int = 16) -> float:
    """|integral of w over the double boundary|; exactly zero (empty chain)."""
    if term.dim < 2:
        raise ValueError("need a term of dimension at least 2")
    if w.degree != term.dim - 2:
        raise ValueError("form degree must match the double-boundary dimension")
    return abs(integrate_chain(boundary(boundary(chain_of(term))), w,
                               registry, order))


@dataclass
class BoxChain:
    """An integer combination of boxes of a shared dimension."""

    dim: int
    terms: dict[BoxDomain, int] = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {b: int(c) for b, c in self.terms.items() if c != 0}
        for b in self.terms:
            if b.dim != self.dim:
                raise ValueError(f"{b.dim}-dimensional box in a {self.dim}-chain")


def stokes_chain_sides(bc: BoxChain, w: CoordNForm, order: int = 16, *,
                       max_dim: int = 6) -> tuple[float, float, list[dict]]:
    """Volume and boundary sides of Stokes extended linearly over a box chain."""
    if w.dim != bc.dim:
        raise ValueError(f"form of dim {w.dim} over boxes of dim {bc.dim}")
    dw = ext_deriv_coord(w)
    rows = []
    volume = 0.0
    bdry = 0.0
    for box, coeff in sorted(bc.terms.items(), key=lambda item: item[0].lo):
        v = integrate_box(dw, box, order, max_dim=max_dim)
        b = bdry_integral(w, box, order, max_dim=max_dim)
        rows.append({"box": [list(box.lo), list(box.hi)], "coeff": coeff,
                     "volume": v, "boundary": b})
        volume += coeff * v
        bdry += coeff * b
    return volume, bdry, rows


def stokes_chain_residual(bc: BoxChain, w: CoordNForm, order: int = 16, *,
                          max_dim: int = 6) -> float:
    volume, bdry, _ = stokes_chain_sides(bc, w, order, max_dim=max_dim)
    return abs(volume - bdry)


def boxes_adjacent(b1: BoxDomain, b2: BoxDomain, i: int) -> bool:
    """True when b2 sits directly above b1 along axis i (exact equality)."""
    if b1.dim != b2.dim or not 0 <= i < b1.dim:
        return False
    if b1.hi[i] != b2.lo[i]:
        return False
    return all(b1.lo[t] == b2.lo[t] and b1.hi[t] == b2.hi[t]
               for t in range(b1.dim) if t != i)


def shared_face_residual(b1: BoxDomain, b2: BoxDomain, i: int, w: CoordNForm,
                         order: int = 16, *, max_dim: int = 6) -> float:
    """|upper-face integral of b1 - lower-face integral of b2| along axis i.

    The boxes must be adjacent along axis i; the two integrals then run
    over the same face with the same rule, so the residual vanishes.
    """
    if not boxes_adjacent(b1, b2, i):
        raise ValueError(f"boxes are not adjacent along axis {i}")
    if w.dim != b1.dim:
        raise ValueError(f"form of dim {w.dim} over boxes of dim {b1.dim}")
    f = signed_coeff(w, i)
    upper = face_integral(f, b1, i, b1.hi[i], order, max_dim=max_dim)
    lower = face_integral(f, b2, i, b2.lo[i], order, max_dim=max_dim)
    return abs(upper - lower)


def merge_boxes(b1: BoxDomain, b2: BoxDomain, i: int) -> BoxDomain:
    """The union box of two boxes adjacent along axis i."""
    if not boxes_adjacent(b1, b2, i):
        raise ValueError(f"boxes are not adjacent along axis {i}")
    hi = list(b1.hi)
    hi[i] = b2.hi[i]
    return BoxDomain(b1.lo, tuple(hi))
