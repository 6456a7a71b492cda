"""Pixel-position scrambling: apply a validated map as a permutation of the grid.

Coordinate convention (frozen; the golden-matrix tests lock it in):
x is the row index, y is the column index, both zero-based, and the pixel at
(x, y) MOVES TO (x', y') = (a*x + b*y, c*x + d*y) mod N. Multi-iteration
scrambling collapses t applications into a single matrix power, then performs
one permutation pass, which is identical to t sequential passes.
"""

from dataclasses import dataclass

import numpy as np

from .errors import GridShapeError, PeriodCapError
from .maps import IDENTITY, Entries, TransformMap, ValidatedMap, inverse_mod, mat_mul_mod, power_mod, validate


@dataclass(frozen=True, eq=False)
class ImageGrid:
    """Square N x N grid of 8-bit pixels, grayscale (N, N) or RGB (N, N, 3)."""

    pixels: np.ndarray

    def __post_init__(self):
        px = np.asarray(self.pixels)
        if px.dtype != np.uint8:
            raise GridShapeError(f"pixels must be uint8, got {px.dtype}")
        if px.ndim == 2:
            h, w = px.shape
        elif px.ndim == 3 and px.shape[2] == 3:
            h, w = px.shape[:2]
        else:
            raise GridShapeError(f"pixels must be (N, N) or (N, N, 3), got {px.shape}")
        if h != w:
            raise GridShapeError(f"image is {h} rows x {w} columns; a square image is required")
        px = px.copy()
        px.flags.writeable = False
        object.__setattr__(self, "pixels", px)

    @property
    def side(self) -> int:
        return self.pixels.shape[0]

    @property
    def channels(self) -> int:
        return 1 if self.pixels.ndim == 2 else 3

    def tobytes(self) -> bytes:
        return self.pixels.tobytes()

    def __eq__(self, other) -> bool:
        if not isinstance(other, ImageGrid):
            return NotImplemented
        return self.pixels.shape == other.pixels.shape and bool(
            np.array_equal(self.pixels, other.pixels)
        )


@dataclass(frozen=True)
class ScrambleKey:
    """Full (de)scrambling credential: map, modulus and iteration count."""

    map: TransformMap
    n: int
    iterations: int

    def __post_init__(self):
        if self.iterations < 0:
            raise ValueError(f"iterations must be >= 0, got {self.iterations}")

    def validated(self) -> ValidatedMap:
        return validate(self.map, self.n)

    __hash__ = None


@dataclass(frozen=True)
class PeriodReport:
    label: str
    n: int
    period: int
    iteration_cap_hit: bool = False


@dataclass(frozen=True)
class RoutePlan:
    """The two decryption routes and which one costs fewer nominal iterations."""

    period: int
    forward_steps: int
    inverse_steps: int
    chosen: str  # "forward" | "inverse"


def apply_point(vm: ValidatedMap, x: int, y: int) -> tuple[int, int]:
    """Destination of the single point (x, y) under one application of the map."""
    n = vm.n
    if not (0 <= x < n and 0 <= y < n):
        raise ValueError(f"point ({x}, {y}) outside the {n}x{n} grid")
    a, b, c, d = vm.reduced
    return (a * x + b * y) % n, (c * x + d * y) % n


def _permute(grid: ImageGrid, matrix: Entries, n: int) -> ImageGrid:
    """One vectorized permutation pass: out[x', y'] = in[x, y]."""
    if matrix == IDENTITY:
        return grid
    a, b, c, d = matrix
    x = np.arange(n, dtype=np.int64).reshape(n, 1)
    y = np.arange(n, dtype=np.int64).reshape(1, n)
    xp = (a * x + b * y) % n
    yp = (c * x + d * y) % n
    out = np.empty_like(grid.pixels)
    out[xp, yp] = grid.pixels
    return ImageGrid(out)


def _check_key(img: ImageGrid, key: ScrambleKey) -> ValidatedMap:
    if img.side != key.n:
        raise GridShapeError(
            f"key modulus {key.n} does not match image side {img.side}"
        )
    return key.validated()


def scramble(img: ImageGrid, key: ScrambleKey) -> ImageGrid:
    vm = _check_key(img, key)
    return _permute(img, power_mod(vm, key.iterations), key.n)


def period(vm: ValidatedMap, cap: int | None = None) -> PeriodReport:
    """Smallest p >= 1 with map^p = identity mod n, by iterated multiplication.

    The cap (default 6*n^2, comfortably above every observed order) turns a
    runaway search into a PeriodCapError rather than a hang.
    """
    n = vm.n
    if cap is None:
        cap = 6 * n * n
    acc = vm.reduced
    p = 1
    while acc != IDENTITY:
        if p >= cap:
            raise PeriodCapError(vm.label, n, cap)
        acc = mat_mul_mod(acc, vm.reduced, n)
        p += 1
    return PeriodReport(vm.label, n, p)


def plan_unscramble(vm: ValidatedMap, iterations: int) -> RoutePlan:
    """Compare the forward (period - t) route against the inverse-map (t) route."""
    p = period(vm).period
    t = iterations % p
    forward = (p - t) % p
    chosen = "inverse" if t <= forward else "forward"
    return RoutePlan(p, forward, t, chosen)


def unscramble(img: ImageGrid, key: ScrambleKey, route: str | None = None) -> ImageGrid:
    """Exact inverse of scramble with the same key.

    route None picks whichever of "forward" (iterate the map period - t more
    times) and "inverse" (iterate the inverse map t times) is cheaper; both
    produce bit-identical output.
    """
    vm = _check_key(img, key)
    plan = plan_unscramble(vm, key.iterations)
    if route is None:
        route = plan.chosen
    if route == "forward":
        matrix = power_mod(vm, plan.forward_steps)
    elif route == "inverse":
        matrix = power_mod(inverse_mod(vm), plan.inverse_steps)
    else:
        raise ValueError(f"route must be 'forward' or 'inverse', got {route!r}")
    return _permute(img, matrix, key.n)
