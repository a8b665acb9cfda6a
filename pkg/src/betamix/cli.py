"""Command-line interface.

Every command except ``simulate`` prints one record::

    {"schema_version": 1, "command": ..., "version": ..., "params": {...},
     "input_digest": "sha256:..." | null, "results": [...]}

or, with ``--format csv``, a header row of result field names followed by
one row per result.  Exit codes: 0 success, 2 input error, 3 insufficient
data, 4 domain or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import re
import sys
from dataclasses import asdict, dataclass, field

from . import __version__
from .bounds import BoundInputs, thm_main_bound, thm_one_bound
from .errors import BetaMixError, InsufficientDataError
from .estimator import estimate_curve
from .markov import beta_d_exact, beta_exact, read_chain
from .schedule import make_schedule
from .synth import sample_ar1, sample_iid_uniform, sample_markov

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INSUFFICIENT = 3
EXIT_DOMAIN = 4

_FIELD_SPLIT = re.compile(r"[,;\t ]+")


class InputError(Exception):
    """Unreadable or ill-formed input file."""


@dataclass
class RunRecord:
    command: str
    params: dict
    results: list = field(default_factory=list)
    input_digest: str | None = None
    version: str = __version__
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "version": self.version,
            "params": self.params,
            "input_digest": self.input_digest,
            "results": self.results,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, allow_nan=False)

    def write(self, stream, fmt="json"):
        if fmt == "csv":
            if not self.results:
                return
            writer = csv.DictWriter(stream, fieldnames=list(self.results[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows(self.results)
        else:
            stream.write(self.to_json() + "\n")


def read_series(path: str, column: int | None = None) -> tuple[list[float], str]:
    """Parse one finite number per line, skipping blanks and ``#`` comments.

    With ``column`` (1-based), each line is split on commas, semicolons, tabs
    or spaces and that field is used.  Returns the values and a SHA-256
    digest of the raw bytes.
    """
    try:
        if path == "-":
            raw = sys.stdin.buffer.read()
        else:
            with open(path, "rb") as fh:
                raw = fh.read()
        text = raw.decode("utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    values = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        token = line
        if column is not None:
            fields = _FIELD_SPLIT.split(line)
            if column > len(fields):
                raise InputError(f"{path}:{lineno}: no column {column} in {line!r}")
            token = fields[column - 1]
        try:
            value = float(token)
        except ValueError:
            raise InputError(f"{path}:{lineno}: not a number: {token!r}") from None
        if not math.isfinite(value):
            raise InputError(f"{path}:{lineno}: value is not finite: {token!r}")
        values.append(value)
    return values, "sha256:" + hashlib.sha256(raw).hexdigest()


def _file_digest(path):
    try:
        with open(path, "rb") as fh:
            return "sha256:" + hashlib.sha256(fh.read()).hexdigest()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _lag_list(text: str) -> list[int]:
    try:
        lags = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"lags must be comma-separated integers: {text!r}")
    if not lags or min(lags) < 1:
        raise argparse.ArgumentTypeError(f"lags must be positive integers: {text!r}")
    return lags


def cmd_estimate(args) -> RunRecord:
    values, digest = read_series(args.input, args.column)
    estimates = estimate_curve(values, args.lag, d=args.dim, h=args.bandwidth)
    params = {
        "input": args.input,
        "column": args.column,
        "lags": args.lag,
        "dim": args.dim,
        "bandwidth": args.bandwidth,
    }
    return RunRecord("estimate", params, [e.to_dict() for e in estimates], digest)


def cmd_schedule(args) -> RunRecord:
    s = make_schedule(args.n)
    result = {"n": args.n, "d": s.d, "k": s.k, "h": s.h, "bins_per_axis": s.bins_per_axis}
    return RunRecord("schedule", {"n": args.n}, [result])


def cmd_oracle(args) -> RunRecord:
    digest = _file_digest(args.chain)
    chain = read_chain(args.chain)
    results = []
    for a in args.lag:
        row = {"a": a, "beta": beta_exact(chain, a)}
        if args.dim is not None:
            row["d"] = args.dim
            row["beta_d"] = beta_d_exact(chain, a, args.dim)
        results.append(row)
    params = {"chain": args.chain, "lags": args.lag, "dim": args.dim}
    return RunRecord("oracle", params, results, digest)


def cmd_simulate(args, stream) -> None:
    if args.process == "markov":
        if args.chain is None:
            raise InputError("--process markov requires --chain")
        series = sample_markov(read_chain(args.chain), args.n, args.seed)
    elif args.process == "ar1":
        series = sample_ar1(args.phi, args.sigma, args.n, args.seed)
    else:
        series = sample_iid_uniform(args.n, args.seed)
    stream.writelines(f"{v:.17g}\n" for v in series)


def cmd_bound(args) -> RunRecord:
    if args.kind == "main":
        inputs = BoundInputs(
            mu=args.mu,
            m=args.m,
            epsilon=args.epsilon,
            expected_l1_marginal=args.l1_marginal,
            expected_l1_joint=args.l1_joint,
            beta_m=args.beta_m,
        )
        bound = thm_main_bound(inputs)
        extra = {"epsilon_1": inputs.epsilon_1, "epsilon_2": inputs.epsilon_2}
    else:
        l1 = args.l1 if args.l1 is not None else args.l1_marginal
        bound = thm_one_bound(args.mu, args.m, args.epsilon, l1, args.beta_m)
        extra = {"epsilon_1": args.epsilon - l1}
    params = {
        k: getattr(args, k)
        for k in ("kind", "mu", "m", "epsilon", "l1_marginal", "l1_joint", "l1", "beta_m")
    }
    return RunRecord("bound", params, [{"kind": args.kind, **asdict(bound), **extra}])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="betamix", description="Estimate beta-mixing coefficients of a time series."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", help="estimate mixing coefficients from a data file")
    p.add_argument("--input", required=True, help="one value per line; '-' for stdin")
    p.add_argument("--lag", type=_lag_list, required=True, help="lag or comma-separated lags")
    p.add_argument("--dim", type=int, help="block length d (default: schedule)")
    p.add_argument("--bandwidth", type=float, help="histogram bandwidth h (default: schedule)")
    p.add_argument("--column", type=int, help="1-based field of a delimited file")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("schedule", help="dimension and bandwidth for a sample size")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("oracle", help="exact coefficients of a finite Markov chain")
    p.add_argument("--chain", required=True, help="chain file: S, then S rows of P")
    p.add_argument("--lag", type=_lag_list, required=True)
    p.add_argument("--dim", type=int, help="also enumerate the d-block coefficient")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("simulate", help="print a synthetic series, one value per line")
    p.add_argument("--process", choices=("markov", "ar1", "iid"), required=True)
    p.add_argument("--chain")
    p.add_argument("--phi", type=float, default=0.5)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)

    p = sub.add_parser("bound", help="evaluate a finite-sample deviation bound")
    p.add_argument("--kind", choices=("main", "one"), required=True)
    p.add_argument("--mu", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--l1-marginal", type=float, default=0.0)
    p.add_argument("--l1-joint", type=float, default=0.0)
    p.add_argument("--l1", type=float, help="expected L1 error for --kind one")
    p.add_argument("--beta-m", type=float, default=0.0)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "simulate":
            cmd_simulate(args, stdout)
            return EXIT_OK
        handler = {
            "estimate": cmd_estimate,
            "schedule": cmd_schedule,
            "oracle": cmd_oracle,
            "bound": cmd_bound,
        }[args.command]
        handler(args).write(stdout, args.format)
    except InputError as exc:
        print(f"betamix: {exc}", file=stderr)
        return EXIT_INPUT
    except InsufficientDataError as exc:
        print(f"betamix: insufficient data: {exc}", file=stderr)
        return EXIT_INSUFFICIENT
    except BetaMixError as exc:
        print(f"betamix: {exc}", file=stderr)
        return EXIT_DOMAIN
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
