"""Edge weight functions equivalent to the Euclidean metric.

Every weight ``h`` handled here is symmetric and sandwiched between
``c1 * d`` and ``c2 * d`` for the Euclidean distance ``d`` and constants
``0 < c1 <= c2``.  Spanning trees are then scored by ``h(e)**alpha``; the
minimizing edge set does not depend on alpha, so all tree algorithms
compare plain base weights.

Three weight kinds:

* ``euclidean`` -- h = d, c1 = c2 = 1.
* ``shifted`` -- h(u, v) = d(u, v) + |d(u, O) - d(v, O)| / 2 with O the
  origin corner of the unit square; a metric with d <= h <= 1.5 d, and
  1-homogeneous under scaling about O.
* ``hotspot`` -- h = c1 * d when either endpoint lies in one of a family
  of tiny "discount" cells, else c2 * d.  The cell family is a fixed
  multi-scale layout (below) designed so that, on a suitable occupancy
  event, the cheap cells force a high-degree star into the tree.

Hotspot layout geometry, per level i >= 1 (all quantities shrink with the
level size n_i = D * i**3):

* a big square of side 10 * q_i with q_i = (2K-1) / sqrt(n_i), packed
  corner-to-corner along the main diagonal from (0, 0); D is chosen as
  the smallest integer with sum_i 10 * q_i * sqrt(2) <= sqrt(2), i.e.
  D = ceil((10 * (2K-1) * zeta(3/2))**2), so the whole family fits inside
  the unit square;
* an inner square of side q_i co-centered with the big square;
* 4K-4 boundary cells of side 1/sqrt(n_i) tiling the inner square's
  four sides in an alternating cell/gap pattern (K per side, corner
  cells shared), plus one central cell, also of side 1/sqrt(n_i),
  co-centered with the inner square.  Only the central cells carry the
  c1 discount.

The defaults c2 = 1, c1 = c2 / (16K) satisfy the requirement
c1 < c2 / (8K), which makes every central-to-boundary edge strictly
cheaper than any boundary-to-boundary edge on the occupancy event.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import zeta

from .geometry import Rect


class EquivalenceViolationError(AssertionError):
    """A sampled weight ratio escaped the declared [c1, c2] band."""


class DegenerateEdgeError(ValueError):
    """Weight requested for a zero-length edge (u = v)."""


@dataclass(frozen=True)
class HotspotLevel:
    index: int
    n_level: int
    q: float
    cell_side: float
    big: Rect
    inner: Rect
    cells: tuple[Rect, ...]  # cells[0] is the central cell

    @property
    def central(self) -> Rect:
        return self.cells[0]

    @property
    def boundary_cells(self) -> tuple[Rect, ...]:
        return self.cells[1:]


@dataclass(frozen=True)
class HotspotLayout:
    K: int
    D: int
    levels: tuple[HotspotLevel, ...]

    def level(self, i: int) -> HotspotLevel:
        if not 1 <= i <= len(self.levels):
            raise ValueError(f"level {i} not built (have 1..{len(self.levels)})")
        return self.levels[i - 1]

    def central_cells(self) -> list[Rect]:
        return [lv.central for lv in self.levels]

    def to_jsonable(self) -> dict:
        def rect(r: Rect) -> list[float]:
            return [r.xmin, r.ymin, r.xmax, r.ymax]

        return {
            "K": self.K,
            "D": self.D,
            "levels": [
                {
                    "index": lv.index,
                    "n_level": lv.n_level,
                    "q": lv.q,
                    "cell_side": lv.cell_side,
                    "big": rect(lv.big),
                    "inner": rect(lv.inner),
                    "cells": [rect(c) for c in lv.cells],
                }
                for lv in self.levels
            ],
        }


def level_scale_constant(K: int) -> int:
    """Smallest integer D with 10*(2K-1)*zeta(3/2)/sqrt(D) <= 1."""
    return math.ceil((10.0 * (2 * K - 1) * float(zeta(1.5))) ** 2)


@lru_cache(maxsize=None)
def build_hotspot_layout(K: int, n_levels: int = 3) -> HotspotLayout:
    if K < 2:
        raise ValueError("K must be >= 2")
    if n_levels < 1:
        raise ValueError("need at least one level")
    D = level_scale_constant(K)
    levels = []
    t = 0.0
    for i in range(1, n_levels + 1):
        n_i = D * i**3
        x = 1.0 / math.sqrt(n_i)
        q = (2 * K - 1) * x
        big = Rect(t, t, t + 10 * q, t + 10 * q)
        c = t + 5 * q
        inner = Rect(c - q / 2, c - q / 2, c + q / 2, c + q / 2)
        cells = [Rect(c - x / 2, c - x / 2, c + x / 2, c + x / 2)]
        # Boundary cells sit at even lattice offsets (cell, gap, cell, ...)
        # along the inner square's perimeter; corners are shared by two
        # sides, so dedupe on the integer offsets.
        slots = set()
        for m in range(K):
            g = 2 * m
            slots.update({(g, 0), (g, 2 * K - 2), (0, g), (2 * K - 2, g)})
        for gx, gy in sorted(slots, key=lambda p: (p[1], p[0])):
            x0 = inner.xmin + gx * x
            y0 = inner.ymin + gy * x
            cells.append(Rect(x0, y0, x0 + x, y0 + x))
        assert len(cells) == 4 * K - 3
        levels.append(
            HotspotLevel(
                index=i, n_level=n_i, q=q, cell_side=x, big=big, inner=inner,
                cells=tuple(cells),
            )
        )
        t += 10 * q
    if t > 1.0 + 1e-12:
        raise ValueError("levels overflow the unit square; D too small")
    return HotspotLayout(K=K, D=D, levels=tuple(levels))


@dataclass(frozen=True)
class WeightSpec:
    """Which weight function to use, together with its equivalence band."""

    kind: str
    c1: float = 1.0
    c2: float = 1.0
    layout: HotspotLayout | None = field(default=None, compare=False)
    origin: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if self.kind not in ("euclidean", "shifted", "hotspot"):
            raise ValueError(f"unknown weight kind {self.kind!r}")
        if not 0 < self.c1 <= self.c2:
            raise ValueError("need 0 < c1 <= c2")
        if self.kind == "hotspot":
            if self.layout is None:
                raise ValueError("hotspot weights need a layout")
            if not self.c1 < self.c2 / (8 * self.layout.K):
                raise ValueError("hotspot weights require c1 < c2 / (8K)")

    @property
    def homogeneous(self) -> bool:
        """True when h(a*u, a*v) = a * h(u, v) about the origin."""
        return self.kind in ("euclidean", "shifted")

    @property
    def h0(self) -> float | None:
        """Translation constant: h(u+b, v+b) <= h0 * h(u, v) for all shifts b.

        Exactly 1 for the translation-invariant Euclidean metric, 3/2 for
        the shifted metric (h <= (3/2) d <= (3/2) h), absent for hotspot
        weights, whose cell layout is pinned in absolute coordinates.
        """
        if self.kind == "euclidean":
            return 1.0
        if self.kind == "shifted":
            return 1.5
        return None


def euclidean_spec() -> WeightSpec:
    return WeightSpec(kind="euclidean", c1=1.0, c2=1.0)


def shifted_spec() -> WeightSpec:
    # |d(u,O) - d(v,O)| <= d(u,v) pins the band at [1, 3/2].
    return WeightSpec(kind="shifted", c1=1.0, c2=1.5)


def hotspot_spec(K: int = 2, n_levels: int = 3, c2: float = 1.0) -> WeightSpec:
    layout = build_hotspot_layout(K, n_levels)
    return WeightSpec(kind="hotspot", c1=c2 / (16 * K), c2=c2, layout=layout)


def spec_from_kind(kind: str) -> WeightSpec:
    if kind == "euclidean":
        return euclidean_spec()
    if kind == "shifted":
        return shifted_spec()
    if kind == "hotspot":
        return hotspot_spec()
    raise ValueError(f"unknown weight kind {kind!r}")


def in_central_cells(spec: WeightSpec, coords: np.ndarray) -> np.ndarray:
    """Boolean mask of points lying in any discount cell (closed membership)."""
    coords = np.asarray(coords, dtype=float)
    mask = np.zeros(len(coords), dtype=bool)
    if spec.kind != "hotspot":
        return mask
    for cell in spec.layout.central_cells():
        mask |= (
            (coords[:, 0] >= cell.xmin)
            & (coords[:, 0] <= cell.xmax)
            & (coords[:, 1] >= cell.ymin)
            & (coords[:, 1] <= cell.ymax)
        )
    return mask


def _dist(ax, ay, bx, by) -> float:
    # sqrt(dx*dx + dy*dy) in exactly this operation order; the vectorized
    # paths use the same ops so every solver sees bit-identical weights
    dx = ax - bx
    dy = ay - by
    return math.sqrt(dx * dx + dy * dy)


def pair_weight(spec: WeightSpec, u, v) -> float:
    """Base weight h(u, v) of a single pair of distinct points."""
    d = _dist(u[0], u[1], v[0], v[1])
    if d == 0.0:
        raise DegenerateEdgeError(f"zero-length edge at {tuple(u)}")
    if spec.kind == "euclidean":
        return d
    if spec.kind == "shifted":
        ox, oy = spec.origin
        ru = _dist(u[0], u[1], ox, oy)
        rv = _dist(v[0], v[1], ox, oy)
        return d + 0.5 * abs(ru - rv)
    cheap = in_central_cells(spec, np.asarray([u, v]))
    return (spec.c1 if cheap.any() else spec.c2) * d


def weight_matrix(spec: WeightSpec, coords: np.ndarray) -> np.ndarray:
    """Dense (n, n) base-weight matrix with a zero diagonal."""
    coords = np.asarray(coords, dtype=float)
    diff = coords[:, None, :] - coords[None, :, :]
    d = np.sqrt((diff * diff).sum(axis=2))
    if spec.kind == "euclidean":
        return d
    if spec.kind == "shifted":
        r = _radii(spec, coords)
        w = d + 0.5 * np.abs(r[:, None] - r[None, :])
        np.fill_diagonal(w, 0.0)
        return w
    cheap = in_central_cells(spec, coords)
    factor = np.where(cheap[:, None] | cheap[None, :], spec.c1, spec.c2)
    return d * factor


def _radii(spec: WeightSpec, coords: np.ndarray) -> np.ndarray:
    px = coords[:, 0] - spec.origin[0]
    py = coords[:, 1] - spec.origin[1]
    return np.sqrt(px * px + py * py)


def _dist_rows(xs: np.ndarray, ys: np.ndarray, k: int) -> np.ndarray:
    dx = xs - xs[k]
    dy = ys - ys[k]
    return np.sqrt(dx * dx + dy * dy)


def row_weight_fn(spec: WeightSpec, coords: np.ndarray):
    """Callable k -> base-weight row h(x_k, .), for matrix-free tree growth."""
    coords = np.asarray(coords, dtype=float)
    xs, ys = coords[:, 0].copy(), coords[:, 1].copy()
    if spec.kind == "euclidean":

        def row(k: int) -> np.ndarray:
            return _dist_rows(xs, ys, k)

    elif spec.kind == "shifted":
        r = _radii(spec, coords)

        def row(k: int) -> np.ndarray:
            return _dist_rows(xs, ys, k) + 0.5 * np.abs(r - r[k])

    else:
        cheap = in_central_cells(spec, coords)
        c1, c2 = spec.c1, spec.c2

        def row(k: int) -> np.ndarray:
            d = _dist_rows(xs, ys, k)
            if cheap[k]:
                return d * c1
            return d * np.where(cheap, c1, c2)

    return row


def equivalence_audit(
    spec: WeightSpec,
    samples: int = 1000,
    seed: int = 0,
    coords: np.ndarray | None = None,
) -> tuple[float, float]:
    """Sample weight/distance ratios over random distinct pairs.

    Pairs come from ``coords`` when given, otherwise from fresh uniform
    points in the unit square.  Returns the observed (min, max) ratio.
    Raises EquivalenceViolationError with the witness pair if any ratio
    leaves [c1, c2] by more than a relative 1e-12.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    rng = np.random.default_rng(seed)
    lo, hi = math.inf, -math.inf
    if coords is not None:
        coords = np.asarray(coords, dtype=float)
        if len(coords) < 2:
            raise ValueError("need at least two points to audit")
    for _ in range(samples):
        if coords is None:
            u, v = rng.random(2), rng.random(2)
        else:
            i, j = rng.choice(len(coords), size=2, replace=False)
            u, v = coords[i], coords[j]
        d = math.hypot(u[0] - v[0], u[1] - v[1])
        if d == 0.0:
            continue
        ratio = pair_weight(spec, u, v) / d
        if ratio < spec.c1 * (1 - 1e-12) or ratio > spec.c2 * (1 + 1e-12):
            raise EquivalenceViolationError(
                f"pair {tuple(u)}, {tuple(v)} has ratio {ratio}, outside "
                f"[{spec.c1}, {spec.c2}]"
            )
        lo, hi = min(lo, ratio), max(hi, ratio)
    return lo, hi
