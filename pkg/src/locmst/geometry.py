"""Unit-square tilings and the snake cell order.

The experiments partition [0,1]^2 into an s-by-s grid of congruent square
cells and walk them in boustrophedon ("snake") order: column-major starting
at the top-left cell, alternating direction so that consecutive cells always
share an edge.  Cell indices are 1-based; ``cell 1`` is the top-left cell.

The grid resolution is tied to the sample size: for ``n`` points we pick a
side parameter ``a_n`` in ``[a_target, a_target + 1/log(n)]`` such that
``sqrt(n) / a_n`` is an integer ``s``, giving cells of side ``a_n / sqrt(n)
= 1/s``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class NoAdmissibleAError(ValueError):
    """No grid resolution exists in the admissible side-parameter window."""


def dist(p, q) -> float:
    """Euclidean distance between two points given as (x, y) pairs."""
    return math.hypot(p[0] - q[0], p[1] - q[1])


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle, half-open: [xmin, xmax) x [ymin, ymax)."""

    xmin: float
    ymin: float
    xmax: float
    ymax: float

    def __post_init__(self):
        if not (self.xmin < self.xmax and self.ymin < self.ymax):
            raise ValueError(f"degenerate rectangle {self}")

    @property
    def area(self) -> float:
        return (self.xmax - self.xmin) * (self.ymax - self.ymin)

    def contains(self, x: float, y: float) -> bool:
        return self.xmin <= x < self.xmax and self.ymin <= y < self.ymax

    def contains_closed(self, x: float, y: float) -> bool:
        """Closed membership; boundary points count as inside."""
        return self.xmin <= x <= self.xmax and self.ymin <= y <= self.ymax

    def intersects(self, other: "Rect") -> bool:
        """Half-open overlap test; rectangles touching along an edge or at a
        corner do not intersect."""
        return (
            self.xmin < other.xmax
            and other.xmin < self.xmax
            and self.ymin < other.ymax
            and other.ymin < self.ymax
        )

    def intersection_area(self, other: "Rect") -> float:
        w = min(self.xmax, other.xmax) - max(self.xmin, other.xmin)
        h = min(self.ymax, other.ymax) - max(self.ymin, other.ymin)
        if w <= 0.0 or h <= 0.0:
            return 0.0
        return w * h


@dataclass(frozen=True)
class Tiling:
    """An s x s grid of square cells over the unit square.

    ``a_n`` is the realized side parameter; the cell side is ``a_n /
    sqrt(n)``, which equals ``1/s`` exactly.
    """

    n: int
    a_target: float
    a_n: float
    s: int

    @property
    def cell_side(self) -> float:
        return 1.0 / self.s

    @property
    def n_cells(self) -> int:
        return self.s * self.s

    @classmethod
    def from_grid(cls, n: int, s: int) -> "Tiling":
        """Build a tiling directly from a grid resolution (a_n = sqrt(n)/s)."""
        if s < 1:
            raise ValueError("s must be >= 1")
        a = math.sqrt(n) / s
        return cls(n=n, a_target=a, a_n=a, s=s)


def build_tiling(n: int, a_target: float = 1.0) -> Tiling:
    """Pick the smallest admissible side parameter >= ``a_target``.

    Admissible means: a_n = sqrt(n)/s for an integer s, with
    a_target <= a_n <= a_target + 1/log(n).  Equivalently s is the largest
    integer <= sqrt(n)/a_target that still satisfies the upper bracket.

    Raises NoAdmissibleAError when the window contains no integer ratio;
    the message names the nearest n for which it does.
    """
    if n < 3:
        raise ValueError("need n >= 3 so that log(n) > 1")
    if a_target <= 0:
        raise ValueError("a_target must be positive")
    root = math.sqrt(n)
    hi = a_target + 1.0 / math.log(n)
    s = int(math.floor(root / a_target))
    # Guard against floating error when sqrt(n)/a_target is an exact integer.
    while s >= 1 and root / s < a_target:
        s -= 1
    if s >= 1 and root / s <= hi:
        return Tiling(n=n, a_target=a_target, a_n=root / s, s=s)
    near = _nearest_admissible_n(n, a_target)
    raise NoAdmissibleAError(
        f"no admissible side parameter for n={n}, a_target={a_target}; "
        f"nearest admissible n is {near}"
    )


def _nearest_admissible_n(n: int, a_target: float) -> int | None:
    for d in range(1, 10000):
        for cand in (n - d, n + d):
            if cand < 3:
                continue
            root = math.sqrt(cand)
            s = int(math.floor(root / a_target))
            while s >= 1 and root / s < a_target:
                s -= 1
            if s >= 1 and root / s <= a_target + 1.0 / math.log(cand):
                return cand
    return None


def snake_index(s: int, col: int, row: int) -> int:
    """1-based snake index of the cell at 0-based (col, row-from-top).

    Even columns (0-based) run top to bottom, odd columns bottom to top, so
    consecutive indices always share an edge.
    """
    if col % 2 == 0:
        return col * s + row + 1
    return col * s + (s - 1 - row) + 1


def snake_order(s: int) -> np.ndarray:
    """All cells as (col, row-from-top) pairs, listed in snake order.

    Returns an (s*s, 2) int array; position k holds the cell with snake
    index k+1.
    """
    out = np.empty((s * s, 2), dtype=np.int64)
    k = 0
    for col in range(s):
        rows = range(s) if col % 2 == 0 else range(s - 1, -1, -1)
        for row in rows:
            out[k, 0] = col
            out[k, 1] = row
            k += 1
    return out


def cell_of(tiling: Tiling, x: float, y: float) -> int:
    """Snake index (1-based) of the cell containing (x, y).

    Points on a shared cell boundary belong to the neighbouring cell with
    the larger snake index.
    """
    s = tiling.s
    if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
        raise ValueError(f"point ({x}, {y}) outside the unit square")
    cols = _axis_candidates(x, s)
    # Row from top; y on a horizontal boundary yields two candidate rows.
    rows = [s - 1 - b for b in _axis_candidates(y, s)]
    return max(snake_index(s, c, r) for c in cols for r in rows)


def _axis_candidates(t: float, s: int) -> list[int]:
    v = t * s
    k = int(math.floor(v))
    if k >= s:  # t == 1.0
        return [s - 1]
    if v == k and k > 0:
        return [k - 1, k]
    return [k]


def cells_of(tiling: Tiling, coords: np.ndarray) -> np.ndarray:
    """Vectorized `cell_of` for an (n, 2) coordinate array.

    The fast path assigns strict interior points with floor(); exact
    boundary hits are rare and re-routed through the scalar rule.
    """
    coords = np.asarray(coords, dtype=float)
    s = tiling.s
    v = coords * s
    cr = np.floor(v).astype(np.int64)
    np.clip(cr, 0, s - 1, out=cr)
    col = cr[:, 0]
    row = s - 1 - cr[:, 1]
    idx = np.where(col % 2 == 0, col * s + row + 1, col * s + (s - 1 - row) + 1)
    on_boundary = np.any((v == np.floor(v)) & (v > 0) & (v < s), axis=1)
    if on_boundary.any():
        for k in np.nonzero(on_boundary)[0]:
            idx[k] = cell_of(tiling, coords[k, 0], coords[k, 1])
    return idx


def cell_rect(tiling: Tiling, index: int) -> Rect:
    """Rectangle of the cell with the given 1-based snake index."""
    s = tiling.s
    if not 1 <= index <= s * s:
        raise ValueError(f"cell index {index} out of range for s={s}")
    col, row = snake_order(s)[index - 1]
    side = tiling.cell_side
    x0 = col * side
    y0 = (s - 1 - row) * side
    return Rect(x0, y0, x0 + side, y0 + side)


def occupancy_grid(tiling: Tiling, coords: np.ndarray) -> np.ndarray:
    """Boolean (s, s) array indexed [col, row-from-top], True where occupied."""
    s = tiling.s
    grid = np.zeros((s, s), dtype=bool)
    if len(coords):
        idx = cells_of(tiling, coords) - 1
        order = snake_order(s)
        grid[order[idx, 0], order[idx, 1]] = True
    return grid


def occupied_cells(tiling: Tiling, coords: np.ndarray) -> np.ndarray:
    """Sorted unique snake indices of occupied cells."""
    if len(coords) == 0:
        return np.empty(0, dtype=np.int64)
    return np.unique(cells_of(tiling, coords))
