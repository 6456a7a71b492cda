"""Robustness harness: noise, cropping and a blockwise-DCT compression surrogate.

Scrambling is a pure pixel permutation, so any attack that changes pixel
values in place damages the recovered image by exactly the same error
multiset as it damaged the scrambled image. That isometry (checked with
exact integer MSE sums) is the quantitative form of the robustness claim.

Stochastic attacks draw from numpy's default PCG64 generator seeded with the
spec's 64-bit seed: identical (image, spec) inputs reproduce identical output
across runs. Gaussian variance is on the 0..255 pixel scale; speckle variance
is on the dimensionless multiplicative factor.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import GridShapeError
from .scramble import ImageGrid, ScrambleKey, scramble, unscramble


@dataclass(frozen=True)
class SaltPepper:
    """Set ceil(density * N^2) distinct pixels to 0 or 255, equal probability."""

    density: float
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.density <= 1.0:
            raise ValueError(f"density must be in [0, 1], got {self.density}")

    kind = "salt-pepper"


@dataclass(frozen=True)
class GaussianNoise:
    """Add rounded, clamped normal noise per channel (0..255 scale)."""

    mean: float = 0.0
    variance: float = 100.0
    seed: int = 0

    def __post_init__(self):
        if self.variance < 0:
            raise ValueError(f"variance must be >= 0, got {self.variance}")

    kind = "gaussian"


@dataclass(frozen=True)
class Speckle:
    """Multiply by (1 + noise), noise ~ N(0, variance), then round and clamp."""

    variance: float = 0.05
    seed: int = 0

    def __post_init__(self):
        if self.variance < 0:
            raise ValueError(f"variance must be >= 0, got {self.variance}")

    kind = "speckle"


@dataclass(frozen=True)
class Crop:
    """Overwrite the rectangle rows row0..row0+height, cols col0..col0+width with fill."""

    row0: int
    col0: int
    height: int
    width: int
    fill: int = 0

    def __post_init__(self):
        if min(self.row0, self.col0, self.height, self.width) < 0:
            raise ValueError("crop rectangle fields must be >= 0")
        if not 0 <= self.fill <= 255:
            raise ValueError(f"fill must be a byte value, got {self.fill}")

    kind = "crop"


#: Base luminance quantization table used by the compression surrogate.
QUANT_TABLE = np.array(
    [
        [16, 11, 10, 16, 24, 40, 51, 61],
        [12, 12, 14, 19, 26, 58, 60, 55],
        [14, 13, 16, 24, 40, 57, 69, 56],
        [14, 17, 22, 29, 51, 87, 80, 62],
        [18, 22, 37, 56, 68, 109, 103, 77],
        [24, 35, 55, 64, 81, 104, 113, 92],
        [49, 64, 78, 87, 103, 121, 120, 101],
        [72, 92, 95, 98, 112, 100, 103, 99],
    ],
    dtype=np.float64,
)


@dataclass(frozen=True)
class CompressSurrogate:
    """8x8 blockwise DCT, quality-scaled quantization, rounding, reconstruction.

    Not a container codec: it reproduces quantization loss only. The quality
    knob follows the usual rule scale = 5000/q (q < 50) else 200 - 2q, with
    table entries floor((base*scale + 50)/100) clamped to 1..255; quality 100
    therefore quantizes with an all-ones table and only rounding loss remains.
    """

    quality: int

    def __post_init__(self):
        if not 1 <= self.quality <= 100:
            raise ValueError(f"quality must be 1..100, got {self.quality}")

    kind = "compress"

    def scaled_table(self) -> np.ndarray:
        q = self.quality
        scale = 5000 / q if q < 50 else 200 - 2 * q
        return np.clip(np.floor((QUANT_TABLE * scale + 50) / 100), 1, 255)


AttackSpec = SaltPepper | GaussianNoise | Speckle | Crop | CompressSurrogate


def _as_float(img: ImageGrid) -> np.ndarray:
    return img.pixels.astype(np.float64)


def _to_grid(arr: np.ndarray) -> ImageGrid:
    return ImageGrid(np.clip(np.rint(arr), 0, 255).astype(np.uint8))


def _salt_pepper(img: ImageGrid, spec: SaltPepper) -> ImageGrid:
    n = img.side
    count = math.ceil(spec.density * n * n)
    out = img.pixels.copy()
    if count:
        rng = np.random.default_rng(spec.seed)
        flat = rng.choice(n * n, size=count, replace=False)
        values = rng.integers(0, 2, size=count, dtype=np.uint8) * 255
        rows, cols = flat // n, flat % n
        if img.channels == 1:
            out[rows, cols] = values
        else:
            out[rows, cols] = values[:, None]
    return ImageGrid(out)


def _gaussian(img: ImageGrid, spec: GaussianNoise) -> ImageGrid:
    rng = np.random.default_rng(spec.seed)
    noise = rng.normal(spec.mean, math.sqrt(spec.variance), img.pixels.shape)
    return _to_grid(_as_float(img) + noise)


def _speckle(img: ImageGrid, spec: Speckle) -> ImageGrid:
    rng = np.random.default_rng(spec.seed)
    noise = rng.normal(0.0, math.sqrt(spec.variance), img.pixels.shape)
    return _to_grid(_as_float(img) * (1.0 + noise))


def _crop(img: ImageGrid, spec: Crop) -> ImageGrid:
    n = img.side
    if spec.row0 + spec.height > n or spec.col0 + spec.width > n:
        raise ValueError(
            f"crop rectangle {spec.row0},{spec.col0} size {spec.height}x{spec.width} "
            f"exceeds the {n}x{n} grid"
        )
    out = img.pixels.copy()
    out[spec.row0 : spec.row0 + spec.height, spec.col0 : spec.col0 + spec.width] = spec.fill
    return ImageGrid(out)


def _dct_matrix(size: int = 8) -> np.ndarray:
    k = np.arange(size).reshape(size, 1)
    j = np.arange(size).reshape(1, size)
    m = np.cos((2 * j + 1) * k * np.pi / (2 * size)) * math.sqrt(2 / size)
    m[0, :] = 1 / math.sqrt(size)
    return m


_DCT8 = _dct_matrix(8)


def _compress_plane(plane: np.ndarray, table: np.ndarray) -> np.ndarray:
    n = plane.shape[0]
    pad = (-n) % 8
    padded = np.pad(plane, ((0, pad), (0, pad)), mode="edge").astype(np.float64) - 128.0
    out = np.empty_like(padded)
    for r in range(0, padded.shape[0], 8):
        for c in range(0, padded.shape[1], 8):
            block = padded[r : r + 8, c : c + 8]
            coeffs = _DCT8 @ block @ _DCT8.T
            coeffs = np.round(coeffs / table) * table
            out[r : r + 8, c : c + 8] = _DCT8.T @ coeffs @ _DCT8
    return out[:n, :n] + 128.0


def _compress(img: ImageGrid, spec: CompressSurrogate) -> ImageGrid:
    table = spec.scaled_table()
    if img.channels == 1:
        return _to_grid(_compress_plane(img.pixels, table))
    planes = [_compress_plane(img.pixels[:, :, c], table) for c in range(3)]
    return _to_grid(np.stack(planes, axis=2))


def apply_attack(img: ImageGrid, spec: AttackSpec) -> ImageGrid:
    """Deterministic given (img, spec); stochastic kinds draw from spec.seed."""
    if isinstance(spec, SaltPepper):
        return _salt_pepper(img, spec)
    if isinstance(spec, GaussianNoise):
        return _gaussian(img, spec)
    if isinstance(spec, Speckle):
        return _speckle(img, spec)
    if isinstance(spec, Crop):
        return _crop(img, spec)
    if isinstance(spec, CompressSurrogate):
        return _compress(img, spec)
    raise TypeError(f"not an attack spec: {spec!r}")


def _check_same_shape(a: ImageGrid, b: ImageGrid) -> None:
    if a.pixels.shape != b.pixels.shape:
        raise GridShapeError(
            f"image shapes differ: {a.pixels.shape} vs {b.pixels.shape}"
        )


def sse(a: ImageGrid, b: ImageGrid) -> int:
    """Exact integer sum of squared per-channel differences."""
    _check_same_shape(a, b)
    diff = a.pixels.astype(np.int64) - b.pixels.astype(np.int64)
    return int(np.sum(diff * diff, dtype=np.int64))


def mse(a: ImageGrid, b: ImageGrid) -> float:
    return sse(a, b) / a.pixels.size


def psnr(a: ImageGrid, b: ImageGrid) -> float:
    """10*log10(255^2 / MSE) in dB; +inf for identical images."""
    err = mse(a, b)
    if err == 0:
        return math.inf
    return 10.0 * math.log10(255.0**2 / err)


def changed_pixels(a: ImageGrid, b: ImageGrid) -> int:
    """Number of pixel POSITIONS that differ (any channel counts once)."""
    _check_same_shape(a, b)
    diff = a.pixels != b.pixels
    if a.channels == 3:
        diff = diff.any(axis=2)
    return int(np.count_nonzero(diff))


def spec_to_dict(spec: AttackSpec) -> dict:
    d = {"kind": spec.kind}
    for name in spec.__dataclass_fields__:
        d[name] = getattr(spec, name)
    return d


@dataclass(frozen=True)
class RecoveryReport:
    """Damage metrics on both sides of the unscramble, plus the images themselves."""

    attack: AttackSpec
    mse_on_scrambled: float
    mse_on_recovered: float
    psnr_recovered: float
    changed_on_scrambled: int
    changed_on_recovered: int
    attacked: ImageGrid = field(repr=False, compare=False)
    recovered: ImageGrid = field(repr=False, compare=False)

    def to_json_dict(self) -> dict:
        return {
            "attack": spec_to_dict(self.attack),
            "mse_on_scrambled": self.mse_on_scrambled,
            "mse_on_recovered": self.mse_on_recovered,
            # JSON has no Infinity; null means lossless recovery
            "psnr_recovered_db": None if math.isinf(self.psnr_recovered) else self.psnr_recovered,
            "changed_on_scrambled": self.changed_on_scrambled,
            "changed_on_recovered": self.changed_on_recovered,
        }

    def to_text(self) -> str:
        p = "inf" if math.isinf(self.psnr_recovered) else f"{self.psnr_recovered:.2f}"
        return "\n".join(
            [
                f"attack:               {spec_to_dict(self.attack)}",
                f"mse scrambled/attacked: {self.mse_on_scrambled:.6f}",
                f"mse original/recovered: {self.mse_on_recovered:.6f}",
                f"psnr recovered (dB):    {p}",
                f"changed pixels (scrambled side): {self.changed_on_scrambled}",
                f"changed pixels (recovered side): {self.changed_on_recovered}",
            ]
        )


def recovery_experiment(img: ImageGrid, key: ScrambleKey, spec: AttackSpec) -> RecoveryReport:
    """scramble -> attack -> unscramble, with exact damage metrics on both sides."""
    scrambled = scramble(img, key)
    attacked = apply_attack(scrambled, spec)
    recovered = unscramble(attacked, key)
    return RecoveryReport(
        attack=spec,
        mse_on_scrambled=mse(scrambled, attacked),
        mse_on_recovered=mse(img, recovered),
        psnr_recovered=psnr(img, recovered),
        changed_on_scrambled=changed_pixels(scrambled, attacked),
        changed_on_recovered=changed_pixels(img, recovered),
        attacked=attacked,
        recovered=recovered,
    )
