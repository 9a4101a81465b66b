"""CLI entry-point for bfnml.

Usage examples:

    # Every evidence variant for one data set
    python -m bfnml evidence --n 25 --y 19 --z 0.8

    # Per-y weights over the whole sample space, as CSV
    python -m bfnml sweep --n 20 --z 0.5

    # Convergence of the weights towards 1/(1+z)
    python -m bfnml converge --z 0.5 --fraction 0.6 --n-min 10 --n-max 1000 --steps 20

    # Data sets on which Bayes and LNML disagree
    python -m bfnml divergence --z 0.8 --n 25
    python -m bfnml divergence --z 0.8 --n-min 5 --n-max 100 --workers 4
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from bfnml.analysis import Analyzer, build_n_grid
from bfnml.config import MAX_PRECISION, MIN_PRECISION, AnalysisConfig, OutputConfig, load_settings
from bfnml.models import (
    BinomialData,
    Boundary,
    Method,
    OutputFormat,
    Pairing,
    RoundingMode,
    ValidationError,
)
from bfnml.report import (
    render_convergence,
    render_divergence,
    render_evidence,
    render_independence,
    render_region,
    render_sweep,
)
from bfnml.utils import write_output

logger = logging.getLogger("bfnml")

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_VALIDATION = 2

# Subcommands whose natural shape is one record rather than a table
_JSON_BY_DEFAULT = {"evidence", "independence"}


def _setup_logging(verbose: bool = False) -> None:
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(asctime)s  %(levelname)-8s  %(name)s — %(message)s",
        datefmt="%H:%M:%S",
        stream=sys.stderr,
    )


# ---------------------------------------------------------------------------
# Requests
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OutputSpec:
    format: OutputFormat
    destination: Path | None = None
    precision: int = OutputConfig().precision

    def __post_init__(self) -> None:
        if not MIN_PRECISION <= self.precision <= MAX_PRECISION:
            raise ValidationError(
                f"--precision must lie in [{MIN_PRECISION}, {MAX_PRECISION}], got {self.precision}"
            )


@dataclass(frozen=True)
class CommandRequest:
    """A fully validated subcommand; built before anything is computed."""

    subcommand: str
    output: OutputSpec
    params: dict[str, Any] = field(default_factory=dict)


def _data(n: int, y: int) -> BinomialData:
    if n < 1:
        raise ValidationError(f"--n must be at least 1, got {n}")
    if not 0 <= y <= n:
        raise ValidationError(f"--y must lie in 0..{n} (the value of --n), got {y}")
    return BinomialData(n, y)


def _boundary(z: float) -> Boundary:
    if not 0.0 < z < 1.0:
        raise ValidationError(f"--z must lie strictly between 0 and 1, got {z}")
    return Boundary(z)


def _positive(flag: str, value: int) -> int:
    if value < 1:
        raise ValidationError(f"{flag} must be at least 1, got {value}")
    return value


def _build_request(args: argparse.Namespace) -> CommandRequest:
    command = args.command
    params: dict[str, Any] = {}
    single = True

    if command == "evidence":
        params["data"] = _data(args.n, args.y)
        params["boundary"] = _boundary(args.z)
        params["method"] = Method(args.method)

    elif command == "sweep":
        params["n"] = _positive("--n", args.n)
        params["boundary"] = _boundary(args.z)
        params["method"] = Method(args.method)
        single = False

    elif command == "converge":
        boundary = _boundary(args.z)
        target = args.fraction * boundary.z
        if args.fraction <= 0 or not 0.0 < target < 1.0:
            raise ValidationError(
                f"--fraction times --z must lie strictly between 0 and 1, got {args.fraction}·{args.z}"
            )
        _positive("--n-min", args.n_min)
        if args.n_max < args.n_min:
            raise ValidationError(f"--n-max must be at least --n-min ({args.n_min}), got {args.n_max}")
        _positive("--steps", args.steps)
        params["boundary"] = boundary
        params["fraction"] = args.fraction
        params["n_grid"] = build_n_grid(args.n_min, args.n_max, args.steps, args.spacing)
        params["rounding"] = RoundingMode(args.rounding)
        single = False

    elif command == "divergence":
        params["boundary"] = _boundary(args.z)
        params["pairing"] = Pairing(args.pairing)
        if args.workers is not None:
            params["workers"] = _positive("--workers", args.workers)
        if args.n is not None:
            if args.n_max is not None:
                raise ValidationError("--n-max only applies to a range given with --n-min, not to --n")
            params["n"] = _positive("--n", args.n)
        else:
            if args.n_max is None:
                raise ValidationError("--n-max is required together with --n-min")
            _positive("--n-min", args.n_min)
            if args.n_max < args.n_min:
                raise ValidationError(
                    f"--n-max must be at least --n-min ({args.n_min}), got {args.n_max}"
                )
            params["n_range"] = (args.n_min, args.n_max)
            single = False

    elif command == "independence":
        params["n"] = _positive("--n", args.n)
        params["boundary"] = _boundary(args.z)

    if args.format is not None:
        fmt = OutputFormat(args.format)
    elif command in _JSON_BY_DEFAULT or (command == "divergence" and single):
        fmt = OutputFormat.JSON
    else:
        fmt = OutputFormat.CSV
    output = OutputSpec(
        format=fmt,
        destination=Path(args.out) if args.out else None,
        precision=args.precision,
    )
    return CommandRequest(subcommand=command, output=output, params=params)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def run_evidence(request: CommandRequest, analyzer: Analyzer) -> str:
    p, out = request.params, request.output
    summary = analyzer.evidence(p["data"], p["boundary"])
    return render_evidence(summary, out.format.value, out.precision, p["method"])


def run_sweep(request: CommandRequest, analyzer: Analyzer) -> str:
    p, out = request.params, request.output
    rows = analyzer.sweep_weights(p["n"], p["boundary"])
    return render_sweep(rows, out.format.value, out.precision, p["method"])


def run_converge(request: CommandRequest, analyzer: Analyzer) -> str:
    p, out = request.params, request.output
    points = analyzer.convergence_curve(p["boundary"], p["fraction"], p["n_grid"], p["rounding"])
    return render_convergence(points, out.format.value, out.precision)


def run_divergence(request: CommandRequest, analyzer: Analyzer) -> str:
    p, out = request.params, request.output
    if "n" in p:
        report = analyzer.divergence_scan(p["n"], p["boundary"], p["pairing"])
        return render_divergence(report, out.format.value, out.precision)
    n_min, n_max = p["n_range"]
    rows = analyzer.divergence_region(p["boundary"], n_min, n_max, p["pairing"])
    return render_region(rows, out.format.value, out.precision)


def run_independence(request: CommandRequest, analyzer: Analyzer) -> str:
    p, out = request.params, request.output
    report = analyzer.data_independence_check(p["n"], p["boundary"])
    return render_independence(report, out.format.value, out.precision)


_COMMANDS = {
    "evidence": run_evidence,
    "sweep": run_sweep,
    "converge": run_converge,
    "divergence": run_divergence,
    "independence": run_independence,
}


# ---------------------------------------------------------------------------
# Argument parser
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bfnml",
        description="Bayes factor versus luckiness NML for the order-constrained binomial model θ ≤ z.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Enable debug logging")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=[f.value for f in OutputFormat], help="Output format")
    common.add_argument("--out", type=str, help="Output file (default: standard output)")
    common.add_argument(
        "--precision", type=int, default=OutputConfig().precision,
        help=f"Decimal digits for real numbers, {MIN_PRECISION}..{MAX_PRECISION} (default: 12)",
    )

    sub = parser.add_subparsers(dest="command", required=True)
    methods = [m.value for m in Method]

    # ---- evidence ---------------------------------------------------------
    p_evidence = sub.add_parser("evidence", parents=[common], help="Evidence for one data set")
    p_evidence.add_argument("--n", type=int, required=True, help="Number of trials")
    p_evidence.add_argument("--y", type=int, required=True, help="Number of successes")
    p_evidence.add_argument("--z", type=float, required=True, help="Boundary of θ ≤ z")
    p_evidence.add_argument("--method", choices=methods, default=Method.ALL.value)

    # ---- sweep ------------------------------------------------------------
    p_sweep = sub.add_parser("sweep", parents=[common], help="Model weights for every y = 0..n")
    p_sweep.add_argument("--n", type=int, required=True)
    p_sweep.add_argument("--z", type=float, required=True)
    p_sweep.add_argument("--method", choices=methods, default=Method.ALL.value)

    # ---- converge ---------------------------------------------------------
    p_converge = sub.add_parser("converge", parents=[common], help="Weights along a grid of n")
    p_converge.add_argument("--z", type=float, required=True)
    p_converge.add_argument("--fraction", type=float, required=True, help="Target estimate as a fraction of z")
    p_converge.add_argument("--n-min", type=int, required=True)
    p_converge.add_argument("--n-max", type=int, required=True)
    p_converge.add_argument("--steps", type=int, default=20)
    p_converge.add_argument("--spacing", choices=["geometric", "linear"], default="geometric")
    p_converge.add_argument(
        "--rounding", choices=[r.value for r in RoundingMode], default=RoundingMode.NEAREST.value
    )

    # ---- divergence -------------------------------------------------------
    p_div = sub.add_parser("divergence", parents=[common], help="Data sets where Bayes and NML disagree")
    p_div.add_argument("--z", type=float, required=True)
    sizes = p_div.add_mutually_exclusive_group(required=True)
    sizes.add_argument("--n", type=int, help="Single sample size (JSON report)")
    sizes.add_argument("--n-min", type=int, help="Smallest sample size of a range (CSV table)")
    p_div.add_argument("--n-max", type=int, help="Largest sample size of a range")
    p_div.add_argument(
        "--pairing", choices=[p.value for p in Pairing], default=Pairing.UNIFORM_LNML.value
    )
    p_div.add_argument("--workers", type=int, help="Threads for range scans (default: BFNML_WORKERS or 1)")

    # ---- independence -----------------------------------------------------
    p_ind = sub.add_parser("independence", parents=[common], help="Check the LNML weight plateau")
    p_ind.add_argument("--n", type=int, required=True)
    p_ind.add_argument("--z", type=float, required=True)

    return parser


# ---------------------------------------------------------------------------
# Main
# ---------------------------------------------------------------------------

def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    _setup_logging(args.verbose)

    try:
        request = _build_request(args)
        settings = load_settings()
        workers = request.params.get("workers", settings.analysis.workers)
        analyzer = Analyzer(AnalysisConfig(workers=workers))
        text = _COMMANDS[request.subcommand](request, analyzer)
        write_output(text, request.output.destination)
    except ValidationError as exc:
        print(f"bfnml {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except Exception:
        logger.exception("bfnml %s failed", args.command)
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
