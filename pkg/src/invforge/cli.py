"""The ``invforge`` command line."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, TextIO

from . import goldens, groupenum, hilbert
from . import invariants as inv
from .polyring import PolyError, PolyMatrix, Polynomial, SizeLimitExceeded

SCHEMA = 1
EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 1, 2
GROUP_CHOICES = ("sp", "o-odd", "o-plus", "o-minus")
COMPUTE_TARGETS = ("xi", "dickson", "lambda", "lambda-i", "omega", "omega-pm",
                   "chern", "eta", "ke", "jf", "relations")
_SPACE_OF_GROUP = {"sp": "odd", "o-odd": "odd", "o-plus": "even_plus", "o-minus": "even_minus"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class CommandSpec:
    verb: str
    target: str
    n: int | None
    flags: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.n is not None and self.n < 1:
            raise UsageError("--n must be at least 1")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="invforge", description="Invariants of orthogonal and symplectic groups over F2.")
    verbs = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    compute = verbs.add_parser("compute", help="compute an invariant or matrix")
    compute.add_argument("target", choices=COMPUTE_TARGETS)
    compute.add_argument("--n", type=int, required=True)
    compute.add_argument("--sign", choices=("+", "-"))
    compute.add_argument("--i", type=int)
    compute.add_argument("--group", choices=GROUP_CHOICES)
    compute.add_argument("--json", action="store_true")
    compute.add_argument("--allow-slow", action="store_true")

    verify = verbs.add_parser("verify", help="check catalogued identities")
    verify.add_argument("target", nargs="?", choices=("identity",))
    verify.add_argument("--name")
    verify.add_argument("--n", type=int)
    verify.add_argument("--all", action="store_true")
    verify.add_argument("--list", action="store_true")
    verify.add_argument("--json", action="store_true")
    verify.add_argument("--allow-slow", action="store_true")

    enum = verbs.add_parser("enumerate", help="enumerate a finite classical group")
    enum.add_argument("target", choices=("group",))
    enum.add_argument("--group", choices=GROUP_CHOICES, required=True)
    enum.add_argument("--n", type=int, required=True)
    enum.add_argument("--transvections", action="store_true")

    hil = verbs.add_parser("hilbert", help="Hilbert series of an invariant ring")
    hil.add_argument("--group", choices=GROUP_CHOICES, required=True)
    hil.add_argument("--n", type=int, required=True)
    hil.add_argument("--expand", type=int, metavar="D")

    gold = verbs.add_parser("goldens", help="check or rewrite the golden files")
    gold.add_argument("target", choices=("check", "regenerate"))
    gold.add_argument("--dir", type=Path, help="golden tree to use instead of the packaged one")
    return parser


def parse(argv: list[str]) -> CommandSpec:
    args = build_parser().parse_args(argv)
    flags = {k: v for k, v in vars(args).items() if k not in ("verb", "target", "n")}
    return CommandSpec(args.verb, getattr(args, "target", None) or "", getattr(args, "n", None), flags)


# ---------------------------------------------------------------------------
# output helpers


def _matrix_rows(m: PolyMatrix) -> list[list[str]]:
    return m.to_strings()


def _jsonable(value):
    if isinstance(value, Polynomial):
        return value.to_string()
    if isinstance(value, PolyMatrix):
        return _matrix_rows(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else str(value)
    return value


def _text_lines(value, label: str = "") -> list[str]:
    prefix = f"{label} = " if label else ""
    if isinstance(value, Polynomial):
        return [prefix + value.to_string()]
    if isinstance(value, PolyMatrix):
        rows = _matrix_rows(value)
        return [f"{label}:"] + ["  [" + ", ".join(row) + "]" for row in rows]
    if isinstance(value, dict):
        return [line for k, v in value.items() for line in _text_lines(v, k)]
    if isinstance(value, (list, tuple)):
        return [line for k, v in enumerate(value) for line in _text_lines(v, f"{label}[{k}]")]
    return [prefix + str(value)]


def _emit(out: TextIO, payload: dict, as_json: bool) -> None:
    if as_json:
        out.write(json.dumps({"schema": SCHEMA, **_jsonable(payload)}, sort_keys=False) + "\n")
        return
    result = payload["result"]
    lines = _text_lines(result) if not isinstance(result, Polynomial) else [result.to_string()]
    out.write("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# compute


def _require(spec: CommandSpec, flag: str):
    value = spec.flags.get(flag)
    if value is None:
        raise UsageError(f"compute {spec.target} needs --{flag}")
    return value


def _compute(spec: CommandSpec):
    n, slow = spec.n, spec.flags["allow_slow"]
    group = spec.flags.get("group")
    if spec.target == "xi":
        ctx = inv.xi_sequence(n, _SPACE_OF_GROUP[group or "o-odd"])
        return {f"xi{i}": p for i, p in enumerate(ctx.xi)}
    if spec.target == "dickson":
        data = inv.dickson(n)
        return {"D": data.D} | {f"c{j}": c for j, c in enumerate(data.c)}
    if spec.target == "lambda":
        return inv.lambda_(n)
    if spec.target == "lambda-i":
        return inv.lambda_i(n, _require(spec, "i"))
    if spec.target == "omega":
        return inv.omega(n, slow)
    if spec.target == "omega-pm":
        return inv.omega_pm(n, _require(spec, "sign"), slow).omega
    if spec.target == "chern":
        ch = inv.chern(n, _SPACE_OF_GROUP[group or "o-odd"], slow)
        signs = [spec.flags["sign"]] if spec.flags.get("sign") else ["+", "-"]
        out = {}
        for s in signs:
            out[f"P{s}"] = ch.P(s)
            out[f"Q{s}"] = ch.Q(s)
        return out | {f"d{j}": ch.dj(j) for j in range(n, 2 * n)}
    if spec.target == "eta":
        return inv.eta(n)
    if spec.target == "ke":
        K, E = inv.ke_matrices(n, slow)
        return {"K": K, "E": E}
    if spec.target == "jf":
        jf = inv.jf_matrices(n, slow)
        return {"J": jf.J, "F": jf.F}
    system = inv.relation_system(n, _require(spec, "group"), slow)
    result = {"relators": list(system.relators)}
    if system.defining is not None:
        result["defining"] = system.defining
    result["determinants"] = {f"det {k}": v for k, v in system.claimed_dets.items()}
    return result


def _run_compute(spec: CommandSpec, out: TextIO) -> int:
    result = _compute(spec)
    payload = {"target": spec.target, "n": spec.n, "result": result}
    _emit(out, payload, spec.flags["json"])
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def _run_verify(spec: CommandSpec, out: TextIO, err: TextIO) -> int:
    flags = spec.flags
    if flags["list"]:
        for name in inv.identity_names():
            out.write(f"{name}\t{inv.IDENTITIES[name].summary}\n")
        return EXIT_OK
    if spec.target != "identity":
        raise UsageError("expected 'verify identity', 'verify identity --all' or 'verify --list'")
    if flags["all"] == bool(flags["name"]):
        raise UsageError("give exactly one of --name and --all")
    names = inv.identity_names() if flags["all"] else [flags["name"]]
    if flags["name"] and spec.n is None:
        raise UsageError("verify identity --name needs --n")
    levels = [spec.n] if spec.n is not None else [1, 2]
    reports, skipped = [], []
    for name in names:
        for n in levels:
            try:
                reports.append(inv.verify_identity(name, n, flags["allow_slow"]))
            except inv.UnknownIdentity:
                raise UsageError(f"unknown identity {name!r}; see 'verify --list'") from None
            except inv.SlowPathRequired as exc:
                if not flags["all"]:
                    raise
                skipped.append(f"SKIP {name} n={n}: {exc}")
            except (SizeLimitExceeded, ValueError) as exc:
                if not flags["all"]:
                    raise
                skipped.append(f"SKIP {name} n={n}: {exc}")
    failed = [r for r in reports if not r.passed]
    if flags["json"]:
        out.write(json.dumps({"schema": SCHEMA, "reports": [
            {"name": r.name, "n": r.n, "passed": r.passed, "checks": r.checks, "failures": r.failures}
            for r in reports], "skipped": skipped}) + "\n")
    else:
        for r in reports:
            out.write(r.summary() + "\n")
            for line in r.failures:
                out.write(f"  {line}\n")
        for line in skipped:
            out.write(line + "\n")
    for r in failed:
        err.write(f"{r.summary()}: " + "; ".join(r.failures) + "\n")
    return EXIT_FAILED if failed else EXIT_OK


# ---------------------------------------------------------------------------
# enumerate, hilbert, goldens


def _run_enumerate(spec: CommandSpec, out: TextIO) -> int:
    kind = groupenum.group_kind(spec.flags["group"])
    group = groupenum.standard_group(spec.n, kind)
    report = {"schema": SCHEMA, "group": kind.value, "n": spec.n, "dim": group.dim,
              "order": group.order, "order_formula": groupenum.order_formula(kind, spec.n),
              "generators": len(group.generators)}
    if spec.flags["transvections"]:
        total, per = groupenum.count_transvections(group)
        report["transvections"] = total
        report["transvection_formula"] = groupenum.transvection_formula(kind, spec.n)
        report["per_hyperplane"] = {format(k, f"0{group.dim}b")[::-1]: v for k, v in sorted(per.items())}
    out.write(json.dumps(report) + "\n")
    return EXIT_OK


def _run_hilbert(spec: CommandSpec, out: TextIO) -> int:
    series = hilbert.series_for_group(spec.n, spec.flags["group"])
    order, reflections = hilbert.laurent_leading(series)
    report = {"schema": SCHEMA, "series": series.to_json(), "order": order, "reflections": reflections}
    if series.note:
        report["note"] = series.note
    if spec.flags["expand"] is not None:
        report["coefficients"] = hilbert.expand_coeffs(series, spec.flags["expand"])
    out.write(json.dumps(_jsonable(report)) + "\n")
    return EXIT_OK


def _run_goldens(spec: CommandSpec, out: TextIO, err: TextIO) -> int:
    directory = spec.flags["dir"]
    if spec.target == "check":
        if directory is not None and not Path(directory).is_dir():
            raise UsageError(f"no golden tree at {directory}")
        try:
            paths = goldens.check(directory)
        except goldens.GoldenMismatch as exc:
            for path in exc.files:
                err.write(f"MISMATCH {path}\n")
            return EXIT_FAILED
        out.write(f"{len(paths)} golden files match\n")
        return EXIT_OK
    stat = goldens.regenerate(directory)
    for path, state in stat.items():
        if state != "unchanged":
            out.write(f"{state:9} {path}\n")
    counts = {s: sum(1 for v in stat.values() if v == s) for s in ("created", "changed", "unchanged")}
    out.write(", ".join(f"{v} {k}" for k, v in counts.items()) + "\n")
    return EXIT_OK


_HANDLERS: dict[str, Callable] = {
    "compute": lambda spec, out, err: _run_compute(spec, out),
    "verify": _run_verify,
    "enumerate": lambda spec, out, err: _run_enumerate(spec, out),
    "hilbert": lambda spec, out, err: _run_hilbert(spec, out),
    "goldens": _run_goldens,
}


def run(argv: list[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        spec = parse(list(sys.argv[1:] if argv is None else argv))
        return _HANDLERS[spec.verb](spec, out, err)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    except inv.SlowPathRequired as exc:
        err.write(f"{exc}; rerun with --allow-slow\n")
        return EXIT_USAGE
    except inv.InvariantError as exc:
        err.write(f"verification failed: {exc}\n")
        return EXIT_FAILED
    except (PolyError, ValueError, IndexError, KeyError) as exc:
        err.write(f"invforge: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
