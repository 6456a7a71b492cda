"""Command-line surface: scramble/unscramble PNM files, periods, surveys,
unimodular enumeration and attack experiments.

Exit codes: 0 success, 1 usage error, 2 data/format error, 3 math error
(map not invertible mod N, period cap or work bound exceeded, overflow).
Results go to stdout, diagnostics to stderr.
"""

import argparse
import json
import sys

from . import analysis, attacks, keyfile, pnm
from .errors import DataError, MathError
from .maps import build_map
from .scramble import ScrambleKey, period, plan_unscramble, scramble, unscramble


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="modscramble", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scramble", help="permute a square PNM image with a key file")
    p.add_argument("input", help="source image (binary PGM/PPM)")
    p.add_argument("key", help="JSON key file")
    p.add_argument("output", help="destination image")

    p = sub.add_parser("unscramble", help="invert a scramble with the same key file")
    p.add_argument("input")
    p.add_argument("key")
    p.add_argument("output")
    p.add_argument("--route", choices=["forward", "inverse"], default=None,
                   help="force a decryption route (default: cheaper one)")
    p.add_argument("--verbose", action="store_true",
                   help="report the chosen route and both route costs")

    p = sub.add_parser("period", help="period of a map mod N")
    p.add_argument("--key", help="read the map from a JSON key file")
    p.add_argument("--family", help="map family tag (see README)")
    p.add_argument("--n", type=int, help="modulus (image side)")
    p.add_argument("--i", type=int, help="series index for gft/f11lt/f32lt/f31lt")
    p.add_argument("--k", type=int, help="parameter for gat/triangular")
    p.add_argument("--variant", type=int, help="variant for gat (0..7) / triangular (0..3)")
    p.add_argument("--entries", help="a,b,c,d for --family raw")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("survey", help="period table over families and parameters")
    p.add_argument("--families", required=True,
                   help=f"comma list from {sorted(analysis.SURVEY_FAMILIES)}")
    p.add_argument("--range", required=True, dest="param_range", metavar="LO..HI",
                   help="parameter range, e.g. 1..16 (LO > HI means empty)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=["table", "json"], default="table")

    p = sub.add_parser("enumerate", help="count unimodular 2x2 maps with entries in a range")
    p.add_argument("--lo", type=int, required=True)
    p.add_argument("--hi", type=int, required=True)
    p.add_argument("--list", action="store_true", help="also print every matrix")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("attack", help="scramble, attack, unscramble, report recovery metrics")
    p.add_argument("input")
    p.add_argument("key")
    p.add_argument("--attack", required=True,
                   choices=["salt-pepper", "gaussian", "speckle", "crop", "compress"])
    p.add_argument("--density", type=float, default=0.05, help="salt-pepper pixel fraction")
    p.add_argument("--mean", type=float, default=0.0, help="gaussian mean")
    p.add_argument("--variance", type=float, default=None,
                   help="gaussian variance (0..255 scale) or speckle variance")
    p.add_argument("--rect", help="crop rectangle row0,col0,height,width")
    p.add_argument("--fill", type=int, default=0, help="crop fill value")
    p.add_argument("--quality", type=int, default=50, help="compression surrogate quality 1..100")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report", help="write the JSON report here")
    p.add_argument("--attacked-out", help="write the attacked scrambled image here")
    p.add_argument("--recovered-out", help="write the recovered image here")
    p.add_argument("--format", choices=["text", "json"], default="text")

    return parser


def _parse_ints(text: str, count: int, what: str) -> list[int]:
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != count:
        raise UsageError(f"{what} needs {count} comma-separated integers, got {text!r}")
    try:
        return [int(s) for s in parts]
    except ValueError:
        raise UsageError(f"{what} needs integers, got {text!r}") from None


def _key_from_args(args) -> ScrambleKey:
    if args.key:
        return keyfile.read_key_file(args.key)
    if not args.family:
        raise UsageError("period needs either --key or --family")
    if args.n is None:
        raise UsageError("period needs --n with --family")
    params = {}
    if args.i is not None:
        params["i"] = args.i
    if args.k is not None:
        params["k"] = args.k
    if args.variant is not None:
        params["variant"] = args.variant
    if args.entries is not None:
        params["entries"] = _parse_ints(args.entries, 4, "--entries")
    try:
        m = build_map(args.family, params)
    except DataError as exc:
        raise UsageError(str(exc)) from exc
    return ScrambleKey(m, args.n, 0)


def _cmd_scramble(args) -> int:
    key = keyfile.read_key_file(args.key)
    img = pnm.load_pnm(args.input)
    pnm.save_pnm(args.output, scramble(img, key))
    return 0


def _cmd_unscramble(args) -> int:
    key = keyfile.read_key_file(args.key)
    img = pnm.load_pnm(args.input)
    if args.verbose:
        plan = plan_unscramble(key.validated(), key.iterations)
        print(
            f"period {plan.period}: forward route {plan.forward_steps} steps, "
            f"inverse route {plan.inverse_steps} steps; using {args.route or plan.chosen}"
        )
    pnm.save_pnm(args.output, unscramble(img, key, route=args.route))
    return 0


def _cmd_period(args) -> int:
    key = _key_from_args(args)
    report = period(key.validated())
    if args.format == "json":
        print(json.dumps({
            "label": report.label,
            "n": report.n,
            "period": report.period,
            "iteration_cap_hit": report.iteration_cap_hit,
        }))
    else:
        print(f"{report.label} mod {report.n}: period {report.period}")
    return 0


def _parse_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise UsageError(f"--range must look like LO..HI, got {text!r}")
    try:
        return range(int(lo), int(hi) + 1)
    except ValueError:
        raise UsageError(f"--range bounds must be integers, got {text!r}") from None


def _cmd_survey(args) -> int:
    families = [f.strip() for f in args.families.split(",") if f.strip()]
    try:
        report = analysis.period_survey(families, _parse_range(args.param_range), args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "json":
        print(analysis.dumps_report(report.to_json_dict()))
    else:
        print(report.to_text())
    if report.error_count:
        print(f"warning: {report.error_count} cell(s) failed", file=sys.stderr)
    return 0


def _cmd_enumerate(args) -> int:
    report = analysis.enumerate_unimodular(args.lo, args.hi, collect=args.list)
    if args.format == "json":
        doc = report.to_json_dict()
        if (args.lo, args.hi) == (0, 99):
            doc["reference_count"] = analysis.UNIMODULAR_REFERENCE_COUNT_0_99
            doc["matches_reference"] = report.count == analysis.UNIMODULAR_REFERENCE_COUNT_0_99
        print(analysis.dumps_report(doc))
    else:
        print(
            f"unimodular maps with entries in [{args.lo}, {args.hi}]: {report.count} "
            f"(det +1: {report.det_plus}, det -1: {report.det_minus})"
        )
        if (args.lo, args.hi) == (0, 99):
            ref = analysis.UNIMODULAR_REFERENCE_COUNT_0_99
            verdict = "matches" if report.count == ref else "DIFFERS FROM"
            print(f"reference count {ref}: computed value {verdict} the reference")
        if report.matrices is not None:
            for a, b, c, d in report.matrices:
                print(f"({a}, {b} / {c}, {d})")
    return 0


def _attack_spec_from_args(args) -> attacks.AttackSpec:
    kind = args.attack
    try:
        if kind == "salt-pepper":
            return attacks.SaltPepper(args.density, seed=args.seed)
        if kind == "gaussian":
            var = 100.0 if args.variance is None else args.variance
            return attacks.GaussianNoise(args.mean, var, seed=args.seed)
        if kind == "speckle":
            var = 0.05 if args.variance is None else args.variance
            return attacks.Speckle(var, seed=args.seed)
        if kind == "crop":
            if not args.rect:
                raise UsageError("crop needs --rect row0,col0,height,width")
            r0, c0, h, w = _parse_ints(args.rect, 4, "--rect")
            return attacks.Crop(r0, c0, h, w, fill=args.fill)
        return attacks.CompressSurrogate(args.quality)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _cmd_attack(args) -> int:
    key = keyfile.read_key_file(args.key)
    img = pnm.load_pnm(args.input)
    spec = _attack_spec_from_args(args)
    try:
        report = attacks.recovery_experiment(img, key, spec)
    except ValueError as exc:  # e.g. crop rectangle out of bounds
        raise UsageError(str(exc)) from exc
    if args.format == "json":
        print(analysis.dumps_report(report.to_json_dict()))
    else:
        print(report.to_text())
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(analysis.dumps_report(report.to_json_dict()) + "\n")
    if args.attacked_out:
        pnm.save_pnm(args.attacked_out, report.attacked)
    if args.recovered_out:
        pnm.save_pnm(args.recovered_out, report.recovered)
    return 0


_COMMANDS = {
    "scramble": _cmd_scramble,
    "unscramble": _cmd_unscramble,
    "period": _cmd_period,
    "survey": _cmd_survey,
    "enumerate": _cmd_enumerate,
    "attack": _cmd_attack,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MathError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
