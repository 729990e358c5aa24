"""Exact index arithmetic for faces of faces.

Deleting coordinate i from a box renumbers the remaining axes; these
helpers track that renumbering with plain integers. ``succ_above(i, k)``
is the original axis behind slot k after axis i is gone; ``pred_above``
is the companion adjustment for the second deletion. Everything here is
exact integer arithmetic, which is what makes the boundary-of-boundary
cancellation verifiable with no tolerance at all.
"""

from __future__ import annotations

from .quadrature import BoxDomain


def succ_above(i: int, k: int) -> int:
    """Original axis behind slot k of a box whose axis i was deleted."""
    _check_nonneg(i, k)
    return k if k < i else k + 1


def pred_above(j: int, i: int) -> int:
    """Slot of original axis i after axis j was deleted (j == i shifts up)."""
    _check_nonneg(j, i)
    return i - 1 if j < i else i


def _check_nonneg(*values: int):
    for v in values:
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise ValueError(f"indices must be nonnegative integers, got {v!r}")


def sign_cancel(i: int, j: int, eps: int, eta: int) -> int:
    """The paired boundary-of-boundary sign sum; identically zero.

    The face (i, eps) followed by (j, eta) and the face hitting the same
    coordinates in the other order carry opposite signs:

        (-1)^(i+eps) (-1)^(j+eta)
      + (-1)^(succ_above(i, j)+eta) (-1)^(pred_above(j, i)+eps)  ==  0
    """
    if eps not in (0, 1) or eta not in (0, 1):
        raise ValueError("face sides must be 0 or 1")
    first = (-1) ** (i + eps) * (-1) ** (j + eta)
    second = (-1) ** (succ_above(i, j) + eta) * (-1) ** (pred_above(j, i) + eps)
    return first + second


def parity_distinct(i: int, j: int) -> bool:
    """succ_above(i, j) + pred_above(j, i) never matches i + j mod 2."""
    return (succ_above(i, j) + pred_above(j, i)) % 2 != (i + j) % 2


def face_of_face_box(box: BoxDomain, i: int, j: int) -> tuple[BoxDomain, BoxDomain]:
    """Both deletion orders for a pair of axes of a box.

    Path one deletes axis i, then slot j of the result; path two deletes
    the axes in the other order using the adjusted indices. The two boxes
    are equal componentwise.
    """
    d = box.dim
    if not (0 <= i < d and 0 <= j < d - 1):
        raise ValueError(f"need 0 <= i < {d} and 0 <= j < {d - 1}")
    path_one = box.delete_coord(i).delete_coord(j)
    path_two = box.delete_coord(succ_above(i, j)).delete_coord(pred_above(j, i))
    return path_one, path_two
