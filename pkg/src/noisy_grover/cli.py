"""Command-line harness: ``pmin``, ``sweep`` and ``threshold`` tables as CSV or JSON."""

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from .analysis import (
    DEFAULT_CONFIDENCE,
    DEFAULT_RESOLUTION,
    alpha_grid,
    alpha_threshold,
    complexity_budget,
    sweep,
)
from .channel import NoiseKind
from .state import DensityValidationError

MAX_QUBITS = 12
FIELDS = ("n", "N", "family", "alpha", "p", "p_min", "k", "confidence")
THRESHOLD_FIELDS = FIELDS + ("status",)

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    qubits: tuple[int, int]
    families: tuple[NoiseKind, ...]
    confidence: float = DEFAULT_CONFIDENCE
    alpha_grid: tuple[float, float, float] = (0.0, 1.0, 0.01)
    resolution: float = DEFAULT_RESOLUTION
    marked: int | None = None
    output: str | None = None
    fmt: str = "csv"
    jobs: int = 1

    def __post_init__(self):
        lo, hi = self.qubits
        if not 1 <= lo <= hi <= MAX_QUBITS:
            raise ConfigError(f"qubit range {lo}..{hi} must lie within 1..{MAX_QUBITS}")
        if not 0.0 < self.confidence < 1.0:
            raise ConfigError(f"confidence {self.confidence} must lie in (0, 1)")
        start, stop, step = self.alpha_grid
        if step <= 0:
            raise ConfigError("alpha grid step must be positive")
        if not 0.0 <= start <= stop <= 1.0:
            raise ConfigError("alpha grid must satisfy 0 <= start <= stop <= 1")
        if self.resolution <= 0:
            raise ConfigError("resolution must be positive")
        if self.marked is not None and not 0 <= self.marked < 2**lo:
            raise ConfigError(f"marked index {self.marked} outside [0, 2^{lo})")
        if self.fmt not in ("csv", "json"):
            raise ConfigError(f"unknown format {self.fmt!r}")
        if self.jobs < 1:
            raise ConfigError("jobs must be at least 1")

    @property
    def sizes(self) -> range:
        return range(self.qubits[0], self.qubits[1] + 1)


def format_number(value) -> str:
    """Six significant digits; scientific notation only below 1e-4."""
    if isinstance(value, int):
        return str(value)
    v = float(value)
    if v == 0.0:
        return "0.00000"
    sci = f"{v:.5e}"
    if abs(float(sci)) < 1e-4:
        return sci
    exponent = int(sci.split("e")[1])
    return f"{float(sci):.{max(5 - exponent, 0)}f}"


def _format_row(row: dict) -> dict:
    return {
        key: (val if isinstance(val, str) else format_number(val))
        for key, val in row.items()
        if val is not None
    }


def render(rows, fields, fmt: str) -> str:
    formatted = [_format_row(r) for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fields, restval="", lineterminator="\n")
        writer.writeheader()
        writer.writerows(formatted)
        return buf.getvalue()
    # Numbers are written as their formatted literal so JSON matches CSV digits.
    objects = []
    for row in formatted:
        items = []
        for key in fields:
            if key not in row:
                continue
            val = row[key]
            token = json.dumps(val) if key in ("family", "status") else val
            items.append(f"{json.dumps(key)}: {token}")
        objects.append("  {" + ", ".join(items) + "}")
    return "[\n" + ",\n".join(objects) + ("\n" if objects else "") + "]\n"


def cmd_pmin(config: ExperimentConfig) -> list[dict]:
    rows = []
    for n in config.sizes:
        b = complexity_budget(2**n, config.confidence)
        rows.append({"n": n, "N": b.N, "p_min": b.p_min, "k": b.reruns_k,
                     "confidence": config.confidence})
    return rows


def cmd_sweep(config: ExperimentConfig) -> list[dict]:
    grid = alpha_grid(*config.alpha_grid)
    rows = []
    for n in config.sizes:
        for kind in config.families:
            res = sweep(n, kind, config.confidence, grid, xi=config.marked,
                        workers=config.jobs)
            for alpha, p in res.points:
                rows.append({"n": n, "N": 2**n, "family": kind.value, "alpha": alpha,
                             "p": p, "p_min": res.p_min, "k": res.k,
                             "confidence": config.confidence})
    return rows


def cmd_threshold(config: ExperimentConfig) -> list[dict]:
    rows = []
    for n in config.sizes:
        for kind in config.families:
            res = alpha_threshold(n, kind, config.confidence, config.resolution,
                                  xi=config.marked, workers=config.jobs)
            rows.append({"n": n, "N": res.N, "family": kind.value, "alpha": res.alpha,
                         "p": res.p_at_alpha, "p_min": res.p_min, "k": res.k,
                         "confidence": config.confidence, "status": res.status})
            if res.warning:
                print(f"warning: n={n} {kind.value}: {res.warning}", file=sys.stderr)
    return rows


COMMANDS = {
    "pmin": (cmd_pmin, FIELDS),
    "sweep": (cmd_sweep, FIELDS),
    "threshold": (cmd_threshold, THRESHOLD_FIELDS),
}


def parse_qubits(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        return int(text), int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected <min..max> or <n>, got {text!r}")


def parse_grid(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    try:
        if len(parts) != 3:
            raise ValueError
        return tuple(float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected <start:stop:step>, got {text!r}")


def parse_families(text: str) -> tuple[NoiseKind, ...]:
    if text == "all":
        return tuple(NoiseKind)
    try:
        return tuple(NoiseKind(name.strip()) for name in text.split(","))
    except ValueError:
        names = ", ".join(k.value for k in NoiseKind)
        raise argparse.ArgumentTypeError(f"unknown family in {text!r}; choose from {names} or all")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--qubits", type=parse_qubits, default=(3, 8),
                        help="qubit count or range min..max (default 3..8)")
    common.add_argument("--family", type=parse_families, default=tuple(NoiseKind),
                        help="noise family name, comma list, or 'all' (default all)")
    common.add_argument("--confidence", type=float, default=DEFAULT_CONFIDENCE)
    common.add_argument("--alpha-grid", type=parse_grid, default=(0.0, 1.0, 0.01),
                        help="sweep grid start:stop:step, stop inclusive (default 0:1:0.01)")
    common.add_argument("--resolution", type=float, default=DEFAULT_RESOLUTION,
                        help="threshold bisection resolution (default 1e-4)")
    common.add_argument("--marked", type=int, default=None,
                        help="marked element index (default 2^(n-1))")
    common.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    common.add_argument("--output", default=None, help="output path (default stdout)")
    common.add_argument("--jobs", type=int, default=1,
                        help="worker threads for grid evaluation (default 1)")

    parser = argparse.ArgumentParser(
        prog="noisy-grover",
        description="Noisy Grover search: rerun budgets, noise sweeps and thresholds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("pmin", parents=[common], help="rerun budget k and p_min per size")
    sub.add_parser("sweep", parents=[common], help="success probability over an alpha grid")
    sub.add_parser("threshold", parents=[common], help="largest competitive alpha per family")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = ExperimentConfig(
            qubits=args.qubits, families=args.family, confidence=args.confidence,
            alpha_grid=args.alpha_grid, resolution=args.resolution, marked=args.marked,
            output=args.output, fmt=args.fmt, jobs=args.jobs,
        )
    except ConfigError as exc:
        print(f"noisy-grover: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    command, fields = COMMANDS[args.command]
    try:
        rows = command(config)
    except DensityValidationError as exc:
        print(f"noisy-grover: numerical validation failed: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    text = render(rows, fields, config.fmt)
    if config.output is None:
        sys.stdout.write(text)
    else:
        with open(config.output, "w", newline="") as fh:
            fh.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
