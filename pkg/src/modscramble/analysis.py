"""Security analysis: orbit signatures, pattern equivalence, map enumeration, surveys.

Two maps are pattern-equivalent when iterating them from the same reference
grid visits exactly the same set of grid states; a message scrambled by one
can then be recovered by iterating the other. Surveys and the unimodular
enumeration are the desk-scale reproductions of the reference period tables.
"""

import json
from dataclasses import dataclass

import numpy as np

from .errors import InvalidScramblerError, PeriodCapError, WorkBoundError
from .maps import (
    TransformMap,
    ValidatedMap,
    make_arnold,
    make_fibonacci_q,
    make_flt,
    make_generalized_arnold,
    make_gft,
    make_triangular,
    validate,
)
from .scramble import ImageGrid, ScrambleKey, period, scramble
from .sequences import SequenceFamily

#: Published reference count of unimodular 2x2 matrices with entries in 0..99.
UNIMODULAR_REFERENCE_COUNT_0_99 = 24030

#: Exhaustive-enumeration guard: candidate tuples examined, (hi-lo+1)^4.
ENUMERATION_WORK_BOUND = 10**9


@dataclass(frozen=True)
class OrbitSignature:
    """Grid states visited through one full period, excluding the final return."""

    label: str
    n: int
    states: tuple[ImageGrid, ...]

    @property
    def state_set(self) -> frozenset[bytes]:
        return frozenset(g.tobytes() for g in self.states)

    __hash__ = None


@dataclass(frozen=True)
class EnumerationReport:
    lo: int
    hi: int
    count: int
    det_plus: int
    det_minus: int
    matrices: tuple[tuple[int, int, int, int], ...] | None = None

    def to_json_dict(self) -> dict:
        d = {
            "lo": self.lo,
            "hi": self.hi,
            "criterion": "|det| == 1",
            "count": self.count,
            "det_plus_one": self.det_plus,
            "det_minus_one": self.det_minus,
        }
        if self.matrices is not None:
            d["matrices"] = [list(m) for m in self.matrices]
        return d


@dataclass(frozen=True)
class SurveyReport:
    """One row per family, one period per parameter value; errors stay in-cell."""

    n: int
    params: tuple[int, ...]
    rows: tuple[tuple[str, tuple], ...]  # (family, cells); cell int or "ERROR: ..."

    @property
    def error_count(self) -> int:
        return sum(
            1 for _, cells in self.rows for c in cells if not isinstance(c, int)
        )

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "params": list(self.params),
            "rows": [
                {
                    "family": fam,
                    "periods": [c if isinstance(c, int) else None for c in cells],
                    "errors": [c if not isinstance(c, int) else None for c in cells],
                }
                for fam, cells in self.rows
            ],
        }

    def to_text(self) -> str:
        head = ["family"] + [str(p) for p in self.params]
        table = [head] + [
            [fam] + [str(c) if isinstance(c, int) else "ERROR" for c in cells]
            for fam, cells in self.rows
        ]
        widths = [max(len(r[i]) for r in table) for i in range(len(head))]
        return "\n".join(
            "  ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in table
        )


@dataclass(frozen=True)
class EquivalenceReport:
    """Pattern-equivalence classes over a set of maps; size > 1 means avoid."""

    n: int
    classes: tuple[tuple[str, ...], ...]

    @property
    def flagged(self) -> tuple[tuple[str, ...], ...]:
        return tuple(c for c in self.classes if len(c) > 1)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "classes": [
                {"maps": list(c), "flagged": len(c) > 1} for c in self.classes
            ],
        }

    def to_text(self) -> str:
        lines = []
        for c in self.classes:
            mark = "AVOID (shared pattern)" if len(c) > 1 else "ok"
            lines.append(f"[{mark}] {', '.join(c)}")
        return "\n".join(lines)


def orbit_signature(vm: ValidatedMap, reference: ImageGrid) -> OrbitSignature:
    """All states scramble(reference, t) for 1 <= t < period, in visit order."""
    p = period(vm).period
    states = []
    key = ScrambleKey(vm.map, vm.n, 1)
    grid = reference
    for _ in range(p - 1):
        grid = scramble(grid, key)
        states.append(grid)
    return OrbitSignature(vm.label, vm.n, tuple(states))


def pattern_equivalent(a: ValidatedMap, b: ValidatedMap, reference: ImageGrid) -> bool:
    """True when both maps visit the same state set from the reference grid."""
    if a.n != b.n:
        raise ValueError(f"maps validated for different moduli: {a.n} vs {b.n}")
    sig_a = orbit_signature(a, reference)
    sig_b = orbit_signature(b, reference)
    return sig_a.state_set == sig_b.state_set


def enumerate_unimodular(
    lo: int, hi: int, collect: bool = False, work_bound: int = ENUMERATION_WORK_BOUND
) -> EnumerationReport:
    """Exhaustively count matrices with entries in [lo, hi] and |det| = 1.

    Every (a, b, c, d) candidate is examined (vectorized in chunks); the
    breakdown by determinant sign is reported alongside the total.
    """
    if lo > hi:
        raise ValueError(f"empty entry range: lo {lo} > hi {hi}")
    span = hi - lo + 1
    work = span**4
    if work > work_bound:
        raise WorkBoundError(
            f"range [{lo}, {hi}] needs {work} candidate tuples, "
            f"above the work bound of {work_bound}"
        )
    entries = np.arange(lo, hi + 1, dtype=np.int64)
    bc = np.multiply.outer(entries, entries).ravel()
    plus = 0
    minus = 0
    matrices: list[tuple[int, int, int, int]] = []
    for a in entries:
        dets = (a * entries)[:, None] - bc[None, :]  # d-major rows, (b,c)-major cols
        plus += int(np.count_nonzero(dets == 1))
        minus += int(np.count_nonzero(dets == -1))
        if collect:
            for d_idx, bc_idx in zip(*np.nonzero(np.abs(dets) == 1)):
                matrices.append(
                    (
                        int(a),
                        int(entries[bc_idx // span]),
                        int(entries[bc_idx % span]),
                        int(entries[d_idx]),
                    )
                )
    return EnumerationReport(
        lo, hi, plus + minus, plus, minus, tuple(matrices) if collect else None
    )


#: Parameterized families a survey row can be built from. The generalized
#: Arnold row uses the (k, k+1 / 1, 1) form and triangular the (0, 1 / 1, k)
#: form; other variants are reachable through key files, not surveys.
SURVEY_FAMILIES = {
    "gft": make_gft,
    "gat": lambda i: make_generalized_arnold(i, variant=1),
    "f11lt": lambda i: make_flt(SequenceFamily.FIB11, i),
    "f32lt": lambda i: make_flt(SequenceFamily.FIB32, i),
    "f31lt": lambda i: make_flt(SequenceFamily.FIB31, i),
    "triangular": lambda k: make_triangular(k, variant=0),
}


def period_survey(families: list[str], params, n: int) -> SurveyReport:
    """Period of every (family, parameter) pair mod n; per-cell failures recorded."""
    unknown = [f for f in families if f not in SURVEY_FAMILIES]
    if unknown:
        raise ValueError(
            f"not a surveyable family: {unknown} (choose from {sorted(SURVEY_FAMILIES)})"
        )
    params = tuple(params)
    rows = []
    for fam in families:
        build = SURVEY_FAMILIES[fam]
        cells = []
        for p in params:
            try:
                cells.append(period(validate(build(p), n)).period)
            except (InvalidScramblerError, PeriodCapError, ValueError) as exc:
                cells.append(f"ERROR: {exc}")
        rows.append((fam, tuple(cells)))
    return SurveyReport(n, params, tuple(rows))


def standard_family_maps(lo: int, hi: int, include_fixed: bool = True) -> list[TransformMap]:
    """The canonical map set used by property suites and equivalence reports:
    both fixed maps plus every surveyable family over parameters lo..hi."""
    maps: list[TransformMap] = []
    if include_fixed:
        maps.append(make_arnold())
        maps.append(make_fibonacci_q())
    for i in range(lo, hi + 1):
        for fam in ("gft", "gat", "f11lt", "f32lt", "f31lt", "triangular"):
            maps.append(SURVEY_FAMILIES[fam](i))
    return maps


def equivalence_classes(
    maps: list[TransformMap], reference: ImageGrid, n: int
) -> EquivalenceReport:
    """Group maps by identical orbit signature on the reference grid."""
    groups: dict[frozenset, list[str]] = {}
    for m in maps:
        sig = orbit_signature(validate(m, n), reference)
        groups.setdefault(sig.state_set, []).append(m.label)
    classes = tuple(tuple(labels) for labels in groups.values())
    return EquivalenceReport(n, classes)


def dumps_report(obj: dict) -> str:
    """Stable JSON rendering for survey/enumeration/equivalence reports."""
    return json.dumps(obj, indent=2, sort_keys=True)
