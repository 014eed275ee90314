"""Command line entry point.

Exit codes: 0 success, 1 failed verification / discrepancy / invalid input,
2 usage or parse error.  Errors are reported on stderr as one JSON record.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import registry
from .bench import DEFAULT_SIZES, bench, deterministic_record, format_table
from .chordal import InvalidPeo
from .classes import GenerationFailed, InvalidInstance
from .core import STRONG_FLAGS, CycleDetected, DimensionMismatch, orientation_to_dot, graph_to_dot, verify_orientation
from .fuzz import fuzz_compare
from .solver import PreconditionFailed, TooLarge, max_weight_chain, mwis, oracle_mwis


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    cls: str | None = None
    n: int | None = None
    seed: int = 0
    trials: int | None = None
    nmax: int = 12
    weights: tuple = (0, 100)
    inp: str | None = None
    out: str | None = None
    dot: str | None = None
    skip_verify: bool = False
    require_first_type: bool = False
    parallel: int = 0
    sizes: tuple = DEFAULT_SIZES

    def __post_init__(self):
        if self.seed < 0 or (self.n is not None and self.n < 0):
            raise UsageError("seed and n must be nonnegative")
        if self.inp and self.out and self.inp == self.out:
            raise UsageError("--in and --out must differ")


def _weight_range(text: str) -> tuple:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}")
    if lo < 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad weight range {text!r}")
    return lo, hi


def _sizes(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated sizes, got {text!r}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pseudotransitive", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text, *flags):
        p = sub.add_parser(name, help=help_text)
        for flag in flags:
            flag(p)
        p.add_argument("--out", help="output path (default stdout)")
        return p

    def cls(p, default=None):
        p.add_argument("--class", dest="cls", default=default, required=default is None, help=", ".join(registry.FAMILIES))

    def inp(p):
        p.add_argument("--in", dest="inp", help="input JSON path (default stdin)")

    seed = lambda p: p.add_argument("--seed", type=int, default=0)
    weights = lambda p: p.add_argument("--weights", type=_weight_range, default=(0, 100), metavar="LO:HI")
    skip = lambda p: p.add_argument("--skip-verify", action="store_true")
    parallel = lambda p: p.add_argument("--parallel", type=int, default=0, metavar="WORKERS")

    add("generate", "write a seeded random instance", cls, lambda p: p.add_argument("--n", type=int, required=True), seed, weights)
    add("build", "intersection graph and complement orientation of an instance", inp,
        lambda p: p.add_argument("--dot", help="also write DOT rendering to this path"))
    add("verify", "check the orientation axioms", inp,
        lambda p: p.add_argument("--require-first-type", action="store_true"))
    add("solve", "maximum weight independent set via the chain solver", inp, skip)
    add("oracle", "exact maximum weight independent set (n <= 30)", inp)
    add("fuzz", "cross-check solver and oracle on seeded instances", cls, seed, weights, parallel,
        lambda p: p.add_argument("--trials", type=int, default=100),
        lambda p: p.add_argument("--nmax", type=int, default=12))
    add("bench", "solver timing table and log-log slope", lambda p: cls(p, "filaments"), seed, parallel,
        lambda p: p.add_argument("--trials", type=int, default=3, help="instances per size"),
        lambda p: p.add_argument("--sizes", type=_sizes, default=DEFAULT_SIZES))
    return parser


def parse_config(argv) -> RunConfig:
    ns = make_parser().parse_args(argv)
    fields = {k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__}
    return RunConfig(**fields)


def _read_json(path):
    try:
        if path and path != "-":
            with open(path, encoding="utf-8") as fh:
                return json.load(fh)
        return json.load(sys.stdin)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON: {exc}")
    except OSError as exc:
        raise UsageError(str(exc))


def _write(path, text: str) -> None:
    if path and path != "-":
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _load_built(doc):
    """Graph and orientation from build output, or from an instance (built on the fly)."""
    try:
        if "graph" in doc and "orientation" in doc:
            return registry.build_from_json(doc)
        return registry.build(registry.instance_from_json(doc))
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed input: {exc!r}")


def run(cfg: RunConfig) -> int:
    if cfg.command == "generate":
        inst = registry.generate(cfg.cls, cfg.n, cfg.seed, weights=cfg.weights)
        _write(cfg.out, _dumps(registry.instance_to_json(inst)))
        return 0

    if cfg.command == "build":
        doc = _read_json(cfg.inp)
        try:
            inst = registry.instance_from_json(doc)
        except (KeyError, TypeError) as exc:
            raise UsageError(f"malformed instance: {exc!r}")
        g, o = registry.build(inst)
        _write(cfg.out, _dumps(registry.build_to_json(g, o)))
        if cfg.dot:
            with open(cfg.dot, "w", encoding="utf-8") as fh:
                fh.write(graph_to_dot(g) + orientation_to_dot(o))
        return 0

    if cfg.command == "verify":
        g, o = _load_built(_read_json(cfg.inp))
        report = verify_orientation(g, o, check_cover=True)
        _write(cfg.out, _dumps(report.to_dict()))
        gate = STRONG_FLAGS + ("covers_complement",)
        if cfg.require_first_type:
            gate += ("first_type",)
        return 0 if report.passed(gate) else 1

    if cfg.command == "solve":
        g, o = _load_built(_read_json(cfg.inp))
        if cfg.skip_verify:
            result = max_weight_chain(o, g.weights, verify=False)
        else:
            result = mwis(g, o)
        _write(cfg.out, _dumps(result.to_dict(verified=not cfg.skip_verify)))
        return 0

    if cfg.command == "oracle":
        g, _ = _load_built(_read_json(cfg.inp))
        value, members = oracle_mwis(g)
        _write(cfg.out, _dumps({"value": value, "members": list(members)}))
        return 0

    if cfg.command == "fuzz":
        if not 1 <= cfg.nmax <= 30:
            raise UsageError("--nmax must be in 1..30")
        report = fuzz_compare(cfg.cls, cfg.trials, cfg.nmax, cfg.seed, cfg.weights, parallel=cfg.parallel)
        _write(cfg.out, _dumps(report))
        return 1 if report["failures"] else 0

    if cfg.command == "bench":
        result = bench(cfg.cls, cfg.sizes, cfg.trials, cfg.seed)
        print(format_table(result))
        if cfg.out:
            _write(cfg.out, _dumps(deterministic_record(result)))
        return 0

    raise UsageError(f"unknown command {cfg.command!r}")


def _error(kind: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    return code


def main(argv=None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
        return run(cfg)
    except (UsageError, registry.UnknownClass) as exc:
        return _error("usage", str(exc), 2)
    except TooLarge as exc:
        return _error("too_large", str(exc), 2)
    except PreconditionFailed as exc:
        sys.stderr.write(json.dumps({"error": "precondition", "message": str(exc), "report": exc.report.to_dict()}) + "\n")
        return 1
    except (InvalidInstance, InvalidPeo, CycleDetected, GenerationFailed, DimensionMismatch, ValueError) as exc:
        return _error(type(exc).__name__, str(exc), 1)


if __name__ == "__main__":
    sys.exit(main())
