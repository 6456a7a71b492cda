"""Exception hierarchy, split by CLI exit-code category."""


class ModScrambleError(Exception):
    """Base class for all library errors."""


class DataError(ModScrambleError):
    """Bad input data or formats (CLI exit code 2)."""


class MathError(ModScrambleError):
    """Arithmetic guards and map-validity failures (CLI exit code 3)."""


class IntegerOverflowError(MathError, OverflowError):
    """An exact computation left the signed 64-bit range."""


class SequenceOverflowError(IntegerOverflowError):
    """A sequence term is not representable in 64 bits.

    Carries ``max_index``, the largest index whose term still fits.
    """

    def __init__(self, family_name: str, n: int, max_index: int):
        self.family_name = family_name
        self.n = n
        self.max_index = max_index
        super().__init__(
            f"term {n} of {family_name} exceeds the 64-bit signed range; "
            f"largest representable index for {family_name} is {max_index}"
        )


class InvalidScramblerError(MathError):
    """The map is not a bijection mod N (det shares a factor with N)."""

    def __init__(self, label: str, n: int, det_mod: int, gcd: int):
        self.label = label
        self.n = n
        self.det_mod = det_mod
        self.gcd = gcd
        super().__init__(
            f"map {label} is not invertible mod {n}: "
            f"det = {det_mod} (mod {n}), gcd(det, {n}) = {gcd}"
        )


class PeriodCapError(MathError):
    """Period search exhausted its iteration cap."""

    def __init__(self, label: str, n: int, cap: int):
        self.label = label
        self.n = n
        self.cap = cap
        super().__init__(
            f"period of {label} mod {n} exceeds the safety cap of {cap} iterations"
        )


class WorkBoundError(MathError):
    """An exhaustive search would exceed its documented work bound."""


class GridShapeError(DataError):
    """Image is not square, or sizes disagree between operands."""


class PnmFormatError(DataError):
    """Malformed or unsupported PNM stream."""


class KeyFormatError(DataError):
    """Key file violates the documented JSON schema."""
