"""Command-line interface: group ingestion, certificates, verification runs.

Exit codes: 0 all checks pass, 1 a check failed, 2 input error.
JSON reports are deterministic for identical inputs (timing is text-only).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import dataclass, field

from . import artin as artin_mod
from . import brauer as brauer_mod
from .exact import GcdNotOne, NotIntegral
from .groups import (
    DEFAULT_ORDER_CAP,
    Group,
    GroupError,
    subgroup_lattice,
    parse_group,
)
from .characters import CharacterError
from .lie import LieDataError, load_phi_data, order_n_lie, power
from .marks import NotInImage, indicator, marks_table, solve_ghost
from .restriction import (
    DirectoryTables,
    MissingTable,
    RestrictionError,
    TableProvider,
    verify_artin_restriction,
    verify_brauer_restriction,
)


@dataclass
class Report:
    command: str
    inputs: dict
    results: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)  # (name, ok) pairs
    timing: float = 0.0

    @property
    def status(self) -> str:
        return "pass" if all(ok for _, ok in self.checks) else "fail"

    def add_check(self, name: str, ok: bool) -> None:
        self.checks.append((name, bool(ok)))

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "checks": [{"name": n, "ok": ok} for n, ok in self.checks],
            "status": self.status,
        }
        return json.dumps(payload, sort_keys=True, indent=2)

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        for key, value in self.inputs.items():
            lines.append(f"  {key}: {value}")
        for key, value in self.results.items():
            if isinstance(value, list) and value and isinstance(value[0], list):
                lines.append(f"{key}:")
                for row in value:
                    lines.append("  " + " ".join(f"{v:>5}" for v in row))
            else:
                lines.append(f"{key}: {value}")
        for name, ok in self.checks:
            lines.append(f"[{'ok' if ok else 'FAIL'}] {name}")
        lines.append(f"status: {self.status} ({self.timing:.3f}s)")
        return "\n".join(lines)


def _parse_n(text: str) -> int | float:
    if text.strip().lower() in ("inf", "infinity"):
        return math.inf
    value = int(text)
    if value < 0:
        raise ValueError("n must be nonnegative or inf")
    return value


def _format_n(n: int | float) -> str:
    return "inf" if n == math.inf else str(n)


def _load_group(args) -> Group:
    cap = args.cap or DEFAULT_ORDER_CAP
    if getattr(args, "file", None):
        with open(args.file, "r", encoding="utf-8") as handle:
            return parse_group(handle.read(), cap=cap)
    if getattr(args, "group", None):
        return parse_group(args.group, cap=cap)
    raise GroupError("specify --group or --file")


def cmd_marks(args) -> Report:
    group = _load_group(args)
    lattice = subgroup_lattice(group)
    table = marks_table(lattice)
    report = Report("marks", {"group": group.name or "file", "order": group.order})
    report.results["classes"] = [
        {"label": cls.label, "order": cls.order, "weyl": cls.weyl_order,
         "abelian": cls.is_abelian, "generators": cls.min_generators}
        for cls in lattice.classes
    ]
    report.results["matrix"] = table.matrix.to_lists()
    report.add_check("marks computed", True)
    return report


def cmd_artin(args) -> Report:
    group = _load_group(args)
    table = marks_table(subgroup_lattice(group))
    cert = artin_mod.artin_certificate(table, args.n)
    report = Report("artin", {"group": group.name or "file", "n": _format_n(args.n)})
    report.results.update(artin_mod.certificate_payload(cert, table))
    report.add_check("certificate verified", cert.verified)
    return report


def cmd_brauer(args) -> Report:
    group = _load_group(args)
    table = marks_table(subgroup_lattice(group))
    cert = brauer_mod.brauer_certificate(table, args.n)
    report = Report("brauer", {"group": group.name or "file", "n": _format_n(args.n)})
    report.results.update(brauer_mod.certificate_payload(cert, table))
    report.add_check("certificate verified", cert.verified)
    return report


def cmd_equalizer(args) -> Report:
    group = _load_group(args)
    lattice = subgroup_lattice(group)
    table = marks_table(lattice)
    provider = DirectoryTables(group, lattice, args.tables) if args.tables \
        else TableProvider(group, lattice)
    report = Report("equalizer", {
        "group": group.name or "file", "n": _format_n(args.n), "mode": args.mode,
    })
    if args.mode == "artin":
        result = verify_artin_restriction(table, args.n, provider)
        report.results["order"] = result.order
        report.results["rank"] = result.rank
        report.add_check("psi o res = order * id", result.psi_res_ok)
        report.add_check("res o psi = order * id", result.res_psi_ok)
    else:
        result = verify_brauer_restriction(table, args.n, provider)
        report.results["rank"] = result.rank
        report.results["elementary_divisors"] = list(result.elementary_divisors)
        report.add_check("restriction is a lattice isomorphism", result.verified)
    return report


def cmd_lie(args) -> Report:
    data = load_phi_data(args.file)
    if args.power and args.power > 1:
        data = power(data, args.power)
    value = order_n_lie(data, args.n)
    report = Report("lie", {
        "file": args.file, "power": args.power or 1, "n": _format_n(args.n),
    })
    report.results["name"] = data.name
    report.results["order"] = value
    report.add_check("order computed", True)
    return report


def cmd_verify(args) -> Report:
    group = _load_group(args)
    lattice = subgroup_lattice(group)
    table = marks_table(lattice)
    report = Report("verify", {"group": group.name or "file", "order": group.order})

    triangular = all(
        table.mark(h, k) == 0 or lattice.leq(k, h)
        for h in range(table.size) for k in range(table.size)
    )
    report.add_check("marks triangular", triangular)
    report.add_check("diagonal equals Weyl orders", all(
        table.mark(i, i) == lattice.classes[i].weyl_order for i in range(table.size)
    ))
    report.add_check("Weyl order divides row", all(
        table.mark(h, k) % lattice.classes[h].weyl_order == 0
        for h in range(table.size) for k in range(table.size)
    ))

    tom_dieck = True
    for idx in range(table.size):
        try:
            solve_ghost(indicator(idx, table).scale(group.order), table)
        except NotInImage:
            tom_dieck = False
    report.add_check("order * indicator solves integrally", tom_dieck)

    for n in (1, 2, math.inf):
        cert = artin_mod.artin_certificate(table, n)
        report.add_check(f"Artin certificate n={_format_n(n)}", cert.verified)
    cert0 = artin_mod.artin_certificate(table, 0)
    report.add_check("Artin ghost certificate n=0", cert0.verified)

    bcert = brauer_mod.brauer_certificate(table, 1)
    report.add_check("Brauer certificate n=1", bcert.verified)

    report.results["subgroup_classes"] = table.size
    report.results["order_n"] = cert.order_n
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="burnside",
        description="Exact Burnside-ring computations and induction certificates",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_n=True):
        p.add_argument("--group", help="builtin fixture name")
        p.add_argument("--file", help="group definition file")
        p.add_argument("--cap", type=int, default=None, help="element enumeration cap")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if with_n:
            p.add_argument("--n", type=_parse_n, default=1, help="generator bound (0, 1, 2, ..., inf)")

    p_marks = sub.add_parser("marks", help="subgroup lattice and table of marks")
    common(p_marks, with_n=False)
    p_marks.set_defaults(func=cmd_marks)

    p_artin = sub.add_parser("artin", help="Artin induction certificate")
    common(p_artin)
    p_artin.set_defaults(func=cmd_artin)

    p_brauer = sub.add_parser("brauer", help="Brauer induction certificate")
    common(p_brauer)
    p_brauer.set_defaults(func=cmd_brauer)

    p_eq = sub.add_parser("equalizer", help="restriction-theorem verification")
    common(p_eq)
    p_eq.add_argument("--mode", choices=["artin", "brauer"], default="artin")
    p_eq.add_argument("--tables", help="directory of character table files")
    p_eq.set_defaults(func=cmd_equalizer)

    p_lie = sub.add_parser("lie", help="orders from compact-group class data")
    p_lie.add_argument("--file", required=True, help="class data JSON file")
    p_lie.add_argument("--power", type=int, default=1, help="cartesian power of the data")
    p_lie.add_argument("--n", type=_parse_n, default=1)
    p_lie.add_argument("--json", action="store_true")
    p_lie.set_defaults(func=cmd_lie)

    p_verify = sub.add_parser("verify", help="full invariant suite for one group")
    common(p_verify, with_n=False)
    p_verify.set_defaults(func=cmd_verify)

    return parser


INPUT_ERRORS = (
    GroupError,
    LieDataError,
    CharacterError,
    MissingTable,
    GcdNotOne,
    NotIntegral,
    OSError,
    ValueError,
    json.JSONDecodeError,
)


def _emit_error(kind: str, exc: Exception, as_json: bool) -> None:
    if as_json:
        payload = {"error": {"kind": kind, "type": type(exc).__name__, "message": str(exc)}}
        print(json.dumps(payload, sort_keys=True), file=sys.stderr)
    else:
        print(f"{kind}: {exc}", file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.monotonic()
    try:
        report: Report = args.func(args)
    except INPUT_ERRORS as exc:
        _emit_error("error", exc, getattr(args, "json", False))
        return 2
    except (NotInImage, RestrictionError) as exc:
        _emit_error("check failed", exc, getattr(args, "json", False))
        return 1
    report.timing = time.monotonic() - start
    if getattr(args, "json", False):
        print(report.to_json())
    else:
        print(report.to_text())
    return 0 if report.status == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
