"""Forward-mode dual numbers and the generic scalar carrier.

Every smooth-field body in this package is written once against a small
arithmetic contract (+, -, *, /, integer **, and the functions below) and
then evaluated over whichever carrier the caller supplies:

* plain floats for point evaluation,
* numpy arrays for vectorized evaluation on quadrature grids,
* ``Dual`` values for derivatives, with components that may themselves be
  floats, arrays, or further ``Dual``s (nested duals give exact higher
  derivatives).

Only globally smooth primitives are provided; there is deliberately no abs,
floor, or comparison on carriers.
"""

from __future__ import annotations

import math
from typing import Union

import numpy as np

Scalar = Union[float, np.ndarray, "Dual"]


class Dual:
    """A value plus one perturbation slot per seeded input direction.

    Arithmetic applies the product/quotient/chain rules slot by slot. The
    value lane performs exactly the same primitive operations as plain
    evaluation, so a zero-seeded dual reproduces real arithmetic bit for
    bit.
    """

    __slots__ = ("value", "pert")
    # Keep numpy from trying to broadcast over us in mixed expressions;
    # with this set, ndarray <op> Dual defers to our reflected methods.
    __array_ufunc__ = None

    def __init__(self, value: Scalar, pert: tuple[Scalar, ...]):
        self.value = value
        self.pert = tuple(pert)

    @property
    def width(self) -> int:
        return len(self.pert)

    def __repr__(self) -> str:
        return f"Dual({self.value!r}, {self.pert!r})"

    def __add__(self, other):
        if isinstance(other, Dual):
            return Dual(self.value + other.value,
                        tuple(a + b for a, b in zip(self.pert, other.pert, strict=True)))
        return Dual(self.value + other, self.pert)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.value, tuple(-p for p in self.pert))

    def __sub__(self, other):
        if isinstance(other, Dual):
            return Dual(self.value - other.value,
                        tuple(a - b for a, b in zip(self.pert, other.pert, strict=True)))
        return Dual(self.value - other, self.pert)

    def __rsub__(self, other):
        return Dual(other - self.value, tuple(-p for p in self.pert))

    def __mul__(self, other):
        if isinstance(other, Dual):
            return Dual(self.value * other.value,
                        tuple(self.value * q + p * other.value
                              for p, q in zip(self.pert, other.pert, strict=True)))
        return Dual(self.value * other, tuple(p * other for p in self.pert))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Dual):
            inv2 = other.value * other.value
            return Dual(self.value / other.value,
                        tuple((p * other.value - self.value * q) / inv2
                              for p, q in zip(self.pert, other.pert, strict=True)))
        return Dual(self.value / other, tuple(p / other for p in self.pert))

    def __rtruediv__(self, other):
        inv2 = self.value * self.value
        return Dual(other / self.value,
                    tuple((-other * q) / inv2 for q in self.pert))

    def __pow__(self, n):
        if not isinstance(n, int) or isinstance(n, bool):
            raise TypeError("carrier exponent must be a plain int")
        if n < 0:
            raise ValueError("carrier exponent must be nonnegative")
        if n == 0:
            return Dual(self.value ** 0, tuple(p * 0.0 for p in self.pert))
        scale = n * self.value ** (n - 1)
        return Dual(self.value ** n, tuple(scale * p for p in self.pert))


def _lift(name: str, np_fn, math_fn, deriv):
    """Build a carrier function: Dual -> chain rule, ndarray -> numpy, float -> math."""

    def fn(x: Scalar) -> Scalar:
        if isinstance(x, Dual):
            scale = deriv(x.value)
            return Dual(fn(x.value), tuple(scale * p for p in x.pert))
        if isinstance(x, np.ndarray):
            return np_fn(x)
        return math_fn(x)

    fn.__name__ = name
    return fn


sin = _lift("sin", np.sin, math.sin, lambda v: cos(v))
cos = _lift("cos", np.cos, math.cos, lambda v: -sin(v))
exp = _lift("exp", np.exp, math.exp, lambda v: exp(v))
log = _lift("log", np.log, math.log, lambda v: 1.0 / v)
sqrt = _lift("sqrt", np.sqrt, math.sqrt, lambda v: 0.5 / sqrt(v))

FUNCTIONS = {"sin": sin, "cos": cos, "exp": exp, "log": log, "sqrt": sqrt}


def seed_all(coords) -> list[Dual]:
    """Wrap every coordinate with its own perturbation slot (full gradient)."""
    d = len(coords)
    return [Dual(c, tuple(1.0 if s == t else 0.0 for s in range(d)))
            for t, c in enumerate(coords)]


def seed_one(coords, j: int) -> list[Dual]:
    """Single-slot seed along coordinate j (one partial derivative)."""
    return [Dual(c, (1.0,)) if t == j else Dual(c, (0.0,))
            for t, c in enumerate(coords)]


def seed_direction(coords, direction) -> list[Dual]:
    """Single-slot seed along an arbitrary direction vector."""
    return [Dual(c, (float(v),)) for c, v in zip(coords, direction, strict=True)]
