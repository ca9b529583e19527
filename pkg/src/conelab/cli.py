"""Command-line front end.

::

    conelab verify --suite GyoeNormIdentities,Thm36Equivalences:2 --dims 2,3 --trials 500 --seed 1
    conelab witness --kind nonadditivity --element a.json --budget 2000 --seed 3
    conelab elem random --dims 2,3 --class PositiveInvertible --seed 0 --out a.json

Exit codes: 0 all Pass, 1 any Fail, 2 usage error, 3 any Inconclusive (no Fail).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .algebra import AlgebraShape, ElementClass, classify, random_element
from .errors import ConeLabError, Inconclusive, UsageError
from .io import IoError, dumps, dumps_fixed, element_to_json, load
from .suites import DEFAULT_TOL, DEFAULT_TRIALS, SuiteId, SuiteReport, run_suite
from .witnesses import (
    DEFAULT_BUDGET,
    Witness,
    search_nonadditivity_witness,
    search_seminorm_gap_witness,
    search_squaring_witness,
)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3
WITNESS_KINDS = {
    "nonadditivity": search_nonadditivity_witness,
    "squaring": search_squaring_witness,
    "seminorm-gap": search_seminorm_gap_witness,
}


@dataclass
class RunConfig:
    suites: list[SuiteId]
    shape: AlgebraShape
    trials: int = DEFAULT_TRIALS
    seed: int = 0
    tol: float = DEFAULT_TOL
    out_path: str | None = None
    format: str = "json"


@dataclass
class WitnessCommand:
    kind: str
    element: str
    budget: int = DEFAULT_BUDGET
    seed: int = 0
    out_path: str | None = None


@dataclass
class ElemCommand:
    shape: AlgebraShape
    cls: ElementClass
    seed: int = 0
    spectrum_range: tuple[float, float] | None = None
    out_path: str | None = None
    extra: dict = field(default_factory=dict)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _dims(text: str) -> AlgebraShape:
    try:
        return AlgebraShape(int(t) for t in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad --dims {text!r}: {exc}") from exc


def _suites(text: str) -> list[SuiteId]:
    # commas separate suites; a comma never appears inside one id
    out = []
    for part in text.split(","):
        try:
            out.append(SuiteId.parse(part))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    return out


def _range(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(t) for t in text.split(","))
    except ValueError as exc:
        raise UsageError(f"--range needs lo,hi; got {text!r}") from exc
    return lo, hi


def _build_parser() -> _Parser:
    p = _Parser(prog="conelab", description="Property suites for maps between positive cones.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    v = sub.add_parser("verify", help="run property suites")
    v.add_argument("--suite", required=True, help="comma-separated suite ids, e.g. Thm36Equivalences:2")
    v.add_argument("--dims", required=True, help="block sizes, e.g. 2,3")
    v.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", type=float, default=DEFAULT_TOL)
    v.add_argument("--out")
    v.add_argument("--format", choices=("json", "text"), default="json")

    w = sub.add_parser("witness", help="search a counterexample for one element")
    w.add_argument("--kind", required=True, choices=sorted(WITNESS_KINDS))
    w.add_argument("--element", required=True, help="element JSON file")
    w.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    w.add_argument("--seed", type=int, default=0)
    w.add_argument("--out")

    e = sub.add_parser("elem", help="element utilities")
    esub = e.add_subparsers(dest="action", parser_class=_Parser)
    esub.required = True
    r = esub.add_parser("random", help="draw a random element")
    r.add_argument("--dims", required=True)
    r.add_argument("--class", dest="cls", required=True,
                   choices=[c.value for c in ElementClass])
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--range", help="spectrum range lo,hi")
    r.add_argument("--out")
    return p


def parse_cli(argv: list[str]):
    """Parse arguments into a :class:`RunConfig`, :class:`WitnessCommand` or :class:`ElemCommand`.

    Raises :class:`UsageError` on anything malformed, including unknown flags.
    """
    ns = _build_parser().parse_args(argv)
    if ns.command == "verify":
        if ns.trials < 1:
            raise UsageError("--trials must be >= 1")
        if not ns.tol > 0:
            raise UsageError("--tol must be positive")
        return RunConfig(_suites(ns.suite), _dims(ns.dims), ns.trials, ns.seed, ns.tol, ns.out, ns.format)
    if ns.command == "witness":
        if ns.budget < 1:
            raise UsageError("--budget must be >= 1")
        return WitnessCommand(ns.kind, ns.element, ns.budget, ns.seed, ns.out)
    rng = _range(ns.range) if ns.range else None
    return ElemCommand(_dims(ns.dims), ElementClass.parse(ns.cls), ns.seed, rng, ns.out)


def _fmt(x: float) -> str:
    return f"{x:.3e}"


def report_text(report: SuiteReport) -> str:
    lines = [
        f"{report.suite} on {list(report.shape.dims)}: {report.verdict}",
        f"  trials={report.trials} seed={report.seed} tol={report.tol:g} max_violation={_fmt(report.max_violation)}",
    ]
    if report.reason:
        lines.append(f"  reason: {report.reason}")
    for name, c in report.checks.items():
        mark = "ok " if c.passed else "BAD"
        lines.append(f"  [{mark}] {name:32s} {_fmt(c.max_violation)}  (tol {c.tol:.0e})")
    for w in report.witnesses:
        lines.append(f"  witness {w.kind}: margin {_fmt(w.margin)} ({', '.join(w.elements)})")
    return "\n".join(lines) + "\n"


def emit_report(report: SuiteReport | list[SuiteReport], format: str = "json") -> bytes:
    """Serialise one report (or a list) as fixed-precision JSON or as text."""
    reports = report if isinstance(report, list) else [report]
    if format == "json":
        obj = [r.to_json() for r in reports]
        text = dumps_fixed(obj[0] if not isinstance(report, list) else obj) + "\n"
    elif format == "text":
        text = "".join(report_text(r) for r in reports)
    else:
        raise UsageError(f"unknown format {format!r}")
    return text.encode()


def exit_code(verdicts) -> int:
    verdicts = list(verdicts)
    if "Fail" in verdicts:
        return EXIT_FAIL
    if "Inconclusive" in verdicts:
        return EXIT_INCONCLUSIVE
    return EXIT_PASS


def _write(data: bytes, out_path: str | None) -> None:
    if out_path:
        try:
            Path(out_path).write_bytes(data)
        except OSError as exc:
            raise IoError(str(exc)) from exc
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def witness_json(w: Witness | None, kind: str) -> dict:
    if w is None:
        return {"kind": kind, "found": False, "central": True}
    return {
        "kind": kind,
        "found": True,
        "margin": w.margin,
        "quantity_lhs": w.quantity_lhs,
        "quantity_rhs": w.quantity_rhs,
        "elements": {k: element_to_json(v) for k, v in w.elements.items()},
    }


def _run_verify(cfg: RunConfig) -> int:
    reports = [run_suite(s, cfg.shape, cfg.trials, cfg.seed, cfg.tol) for s in cfg.suites]
    data = emit_report(reports if len(reports) > 1 else reports[0], cfg.format)
    _write(data, cfg.out_path)
    return exit_code(r.verdict for r in reports)


def _run_witness(cmd: WitnessCommand) -> int:
    a = load(cmd.element)
    if not hasattr(a, "blocks"):
        raise UsageError("--element must hold an element, not a Jordan map")
    if ElementClass.POSITIVE_INVERTIBLE not in classify(a):
        raise UsageError("witness searches need a positive invertible element")
    try:
        w = WITNESS_KINDS[cmd.kind](a, cmd.budget, cmd.seed)
    except Inconclusive as exc:
        _write((dumps_fixed({"kind": cmd.kind, "found": False, "central": False,
                             "reason": str(exc)}) + "\n").encode(), cmd.out_path)
        return EXIT_INCONCLUSIVE
    _write((dumps_fixed(witness_json(w, cmd.kind)) + "\n").encode(), cmd.out_path)
    return EXIT_PASS


def _run_elem(cmd: ElemCommand) -> int:
    defaults = {
        ElementClass.GENERAL: (1.0, 1.0),
        ElementClass.SELF_ADJOINT: (-1.0, 1.0),
        ElementClass.POSITIVE: (0.0, 1.0),
        ElementClass.POSITIVE_INVERTIBLE: (0.5, 2.0),
        ElementClass.EFFECT: (0.0, 1.0),
    }
    rng = cmd.spectrum_range or defaults[cmd.cls]
    x = random_element(cmd.shape, cmd.cls, rng, cmd.seed)
    _write(dumps(x).encode(), cmd.out_path)
    return EXIT_PASS


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cmd = parse_cli(argv)
        if isinstance(cmd, RunConfig):
            return _run_verify(cmd)
        if isinstance(cmd, WitnessCommand):
            return _run_witness(cmd)
        return _run_elem(cmd)
    except UsageError as exc:
        print(f"conelab: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConeLabError as exc:
        print(f"conelab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE if isinstance(exc, ValueError) else EXIT_FAIL


if __name__ == "__main__":
    raise SystemExit(main())
