"""Command-line interface: ``randcrn {analyze,threshold,classify,generate,sweep}``."""

from __future__ import annotations

import argparse
import os
import re
import sys
from fractions import Fraction

from .deficiency import deficiency, quick_positive_deficiency
from .harness import ExperimentConfig, run_sweep, write_csv
from .model import EDGE_CLASSES
from .netio import NetworkSyntaxError, format_network, parse_network
from .sbm import Alpha, BlockModelParams, ProbabilityError, edge_probability, sample_network
from .threshold import classify_regime, threshold_components, threshold_exponent

EXIT_INPUT = 1
EXIT_IO = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Accepts ``-7/2`` as a value and exits 1 on usage errors (2 is reserved for I/O)."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q`` or an integer; decimals are rejected to keep inputs exact."""
    text = text.strip()
    num, sep, den = text.partition("/")
    try:
        if sep:
            value = Fraction(int(num), int(den))
        else:
            value = Fraction(int(num))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"malformed rational {text!r} (expected p/q or an integer)") from None
    return value


def parse_alpha(text: str) -> Alpha:
    parts = text.split(",")
    if len(parts) != 4:
        raise UsageError(f"--alpha needs four comma-separated rationals, got {text!r}")
    return Alpha(*(parse_rational(p) for p in parts))


def _fmt_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def cmd_analyze(args) -> int:
    try:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        g = parse_network(text)
    except NetworkSyntaxError as exc:
        print(f"{args.input}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = deficiency(g)
    print(f"species: {g.n_species}")
    print(f"reactions: {len(g.reactions)}")
    print(f"complexes: {report.complex_count}")
    print(f"linkage_classes: {report.linkage_classes}")
    print(f"stoich_dim: {report.stoich_dim}")
    print(f"deficiency: {report.deficiency}, weakly_reversible: {str(report.weakly_reversible).lower()}")
    print(f"complex_bound: {quick_positive_deficiency(g).value}")
    return 0


def cmd_threshold(args) -> int:
    alpha = parse_alpha(args.alpha)
    beta = threshold_exponent(alpha)
    print(_fmt_fraction(beta))
    print(f"decimal: {float(beta):.12g}")
    for i, b in enumerate(threshold_components(alpha), start=1):
        print(f"beta_{i}: {_fmt_fraction(b)}")
    return 0


def cmd_classify(args) -> int:
    alpha = parse_alpha(args.alpha)
    gamma = parse_rational(args.gamma)
    verdict = classify_regime(alpha, gamma, cap_inflow=args.cap_inflow)
    print(verdict.verdict.value)
    print("conditions: " + (" ".join(verdict.triggered_conditions) or "none"))
    print(f"threshold: {_fmt_fraction(threshold_exponent(alpha))}")
    return 0


def _p_from_args(args, n: int) -> float:
    if args.p is not None:
        return args.p
    return args.c * float(n) ** float(parse_rational(args.gamma))


def cmd_generate(args) -> int:
    alpha = parse_alpha(args.alpha)
    p = _p_from_args(args, args.n)
    if args.permissive:
        p = min(p, 1.0)
    try:
        params = BlockModelParams(args.n, p, alpha, args.permissive)
        g, counts = sample_network(params, args.seed)
    except ProbabilityError as exc:
        print(f"error: {exc} (use --permissive to clamp)", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out = [
        f"# n={args.n} p={p!r} alpha={alpha} seed={args.seed}",
        "# M " + " ".join(f"{c.name}={counts.m[c]}" for c in EDGE_CLASSES),
        "# K " + " ".join(f"{c.name}={counts.k[c]!r}" for c in EDGE_CLASSES),
        "# clamped " + (" ".join(c.name for c in params.clamped_classes()) or "none"),
    ]
    sys.stdout.write("\n".join(out) + "\n" + format_network(g))
    return 0


_CONFIG_KEYS = {"alpha", "gamma", "c", "n_grid", "trials", "seed", "permissive", "threads"}


def _read_config(path: str) -> dict[str, str]:
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key = key.strip().replace("-", "_")
            if not sep or key not in _CONFIG_KEYS:
                raise UsageError(f"{path}:{lineno}: expected key=value with key in {sorted(_CONFIG_KEYS)}")
            values[key] = value.strip()
    return values


def _sweep_config(args) -> tuple[ExperimentConfig, int]:
    settings: dict[str, str] = {}
    if args.config:
        settings.update(_read_config(args.config))
    for key in ("alpha", "gamma", "c", "n_grid", "trials", "seed", "threads"):
        value = getattr(args, key)
        if value is not None:
            settings[key] = str(value)
    if args.permissive:
        settings["permissive"] = "true"
    if "n_grid" not in settings:
        raise UsageError("sweep needs --n-grid (or n_grid in the config file)")
    try:
        n_grid = tuple(int(x) for x in settings["n_grid"].split(",") if x.strip())
        trials = int(settings.get("trials", "100"))
        seed = int(settings.get("seed", "0"))
        c = float(settings.get("c", "1"))
        threads = int(settings.get("threads", str(os.cpu_count() or 1)))
    except ValueError as exc:
        raise UsageError(f"invalid sweep setting: {exc}") from None
    permissive = settings.get("permissive", "false").lower() in ("1", "true", "yes")
    try:
        config = ExperimentConfig(
            alpha=parse_alpha(settings.get("alpha", "0,0,0,0")),
            gamma=parse_rational(settings.get("gamma", "-3")),
            c=c,
            n_grid=n_grid,
            trials=trials,
            master_seed=seed,
            permissive=permissive,
        )
        for n in config.n_grid:
            params = config.params(n)
            for cls in EDGE_CLASSES:
                edge_probability(cls, params)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return config, max(1, threads)


def cmd_sweep(args) -> int:
    try:
        config, threads = _sweep_config(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO

    def progress(row):
        print(f"n={row.n} estimate={row.estimate:.4f} [{row.ci_low:.4f}, {row.ci_high:.4f}]",
              file=sys.stderr)

    try:
        result = run_sweep(config, threads=threads, progress=progress)
    except ProbabilityError as exc:
        raise UsageError(f"{exc} (use --permissive to clamp)") from None
    try:
        if args.out == "-":
            write_csv(result, sys.stdout, timing=args.timing)
        else:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                write_csv(result, fh, timing=args.timing)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="randcrn",
        description="Deficiency of random binary reaction networks under a stochastic block model.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="report |C|, linkage classes, rank and deficiency of a network file")
    p.add_argument("--input", "-i", required=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("threshold", help="exact threshold exponent for control exponents alpha")
    p.add_argument("--alpha", required=True, help="a01,a02,a11,a12 as integers or p/q")
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("classify", help="asymptotic regime for p_n ~ n^gamma")
    p.add_argument("--alpha", required=True)
    p.add_argument("--gamma", required=True)
    p.add_argument("--cap-inflow", action="store_true",
                   help="cap the inflow count exponent at 1 (clamped-probability sampler)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("generate", help="sample one network and print it")
    p.add_argument("--n", type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--p", type=float)
    group.add_argument("--gamma")
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--alpha", default="0,0,0,0")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--permissive", action="store_true", help="clamp probabilities above 1 instead of failing")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("sweep", help="Monte Carlo estimate of P(deficiency = 0) over n")
    p.add_argument("--config", help="file of key=value lines mirroring the flags")
    p.add_argument("--alpha")
    p.add_argument("--gamma")
    p.add_argument("--c", type=float)
    p.add_argument("--n-grid", dest="n_grid", help="comma-separated ascending species counts")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--threads", type=int)
    p.add_argument("--permissive", action="store_true")
    p.add_argument("--timing", action="store_true", help="fill the ms_per_trial column (not reproducible)")
    p.add_argument("--out", default="-", help="CSV path, '-' for standard output")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
