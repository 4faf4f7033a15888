"""Command-line driver for the check suites."""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import contact as ct
from . import extender as ex
from . import fincat as fc
from . import finboole as fbool
from . import fintop as ft
from .errors import ContactDualError
from .suites import SUITES, Check, CheckReport, Collector, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="contactdual", description="Exhaustive finite checks for contact algebras and their dualities.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("suite", help="run a named check suite")
    s.add_argument("name", choices=["all", *SUITES])
    s.add_argument("--max-atoms", type=int)
    s.add_argument("--max-points", type=int)
    s.add_argument("--json", type=Path, help="also write the report as JSON")

    e = sub.add_parser("enumerate", help="enumerate finite structures")
    e.add_argument("what", choices=["topologies"])
    e.add_argument("--points", type=int, required=True)
    e.add_argument("--sample", action="store_true", help="sample instead of listing (needed for 5 points)")

    c = sub.add_parser("check", help="check a single instance")
    csub = c.add_subparsers(dest="target", required=True, parser_class=_Parser)
    cc = csub.add_parser("contact")
    cc.add_argument("--atoms", type=int, required=True)
    cc.add_argument("--kernel", default="", help='atom pairs in contact, e.g. "1-2,2-3"')
    cc.add_argument("--json", type=Path)
    ce = csub.add_parser("extension")
    ce.add_argument("--fixture", required=True, help="syncat1, syncat2, topcat or a fixture file")
    ce.add_argument("--json", type=Path)

    r = sub.add_parser("report", help="print a saved JSON report")
    r.add_argument("--json", type=Path, required=True)
    return p


def parse_kernel(n: int, text: str) -> tuple:
    rows = [1 << i for i in range(n)]
    for item in filter(None, (t.strip() for t in text.split(","))):
        try:
            i, j = (int(x) for x in item.split("-"))
        except ValueError:
            raise UsageError(f"bad kernel pair {item!r}") from None
        if not (1 <= i <= n and 1 <= j <= n):
            raise UsageError(f"kernel pair {item!r} outside 1..{n}")
        rows[i - 1] |= 1 << (j - 1)
        rows[j - 1] |= 1 << (i - 1)
    return tuple(rows)


def check_contact(n: int, kernel_text: str) -> list[Check]:
    A = fbool.new_algebra(n)
    C = ct.ContactRelation(A, parse_kernel(n, kernel_text))
    col = Collector(f"contact[{C!r}]")
    rep = ct.check_axioms(A, C)
    normal = rep.is_nca
    for name, ok in sorted(rep.flags().items()):
        w = rep.witnesses.get(name, rep.witnesses.get(name.replace("<<", "ll")))
        if ok:
            col.expect(name, None)
        elif name in ("C5", "C6", "<<5", "<<6", "is_NCA"):
            # a contact algebra need not be normal
            col.finding(name, w if w is not None else "does not hold")
        else:
            col.expect(name, w if w is not None else "does not hold")
    note = None if normal else ct.OUTSIDE_SCOPE
    cls = ct.clusters(A, C)
    col.finding("clusters", f"{len(cls)}: {cls}", note=note)
    R = ct.r_relation(A, C)
    if R.is_equivalence:
        col.expect("R_equivalence", None, note=note)
    elif normal:
        col.expect("R_equivalence", f"R = {sorted(R.pairs())}")
    else:
        col.finding("R_equivalence", f"R = {sorted(R.pairs())}", note=note)
    return list(col.checks.values())


def load_extension_fixture(source: str) -> ex.ExtensionFixture:
    if source in ("syncat1", "syncat2", "topcat"):
        return ex.extension_fixture(source)
    path = Path(source)
    if not path.is_file():
        raise UsageError(f"no fixture named {source!r} and no such file")
    fx = fc.parse_fixture(path.read_text(encoding="utf-8"), path.stem)
    K = fx.covering_class()
    return ex.ExtensionFixture(path.stem, fc.self_duality(K.B), K)


def check_extension(source: str) -> list[Check]:
    fx = load_extension_fixture(source)
    col = Collector(fx.name)
    rep = fc.check_covering_class(fx.covering)
    for k, v in sorted(rep.flags.items()):
        col.expect(f"covering.{k}", None if v else rep.witnesses.get(k, "does not hold"))
    needed = ("P1", "P2", "P3", "P4", "P4*", "P5")
    missing = [k for k in needed if not rep.flags.get(k)]
    if missing:
        col.skipped("extension", f"covering conditions fail: {', '.join(missing)}")
        return list(col.checks.values())
    ext = ex.run_extension(fx)
    for k, v in sorted(ext.flags.items()):
        col.expect(k, None if v else ext.witnesses.get(k, "does not hold"))
    rt = ex.check_functorial_round_trip(fx.covering, rep)
    for k, v in sorted(rt.flags.items()):
        col.expect(f"round_trip.{k}", None if v else rt.witnesses.get(k, "does not hold"))
    return list(col.checks.values())


def _emit(report: CheckReport, json_path, out) -> int:
    report.sort()
    for line in report.lines():
        print(line, file=out)
    if json_path is not None:
        Path(json_path).write_text(report.to_json() + "\n", encoding="utf-8")
    return EXIT_OK if report.ok else EXIT_FAIL


def _timed(suite: str, fn, *args) -> CheckReport:
    start = time.perf_counter()
    checks = fn(*args)
    return CheckReport(suite, checks, round(time.perf_counter() - start, 3))


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if args.command == "suite":
            report = run_suite(args.name, max_atoms=args.max_atoms, max_points=args.max_points)
            return _emit(report, args.json, out)
        if args.command == "enumerate":
            if args.points < 0:
                raise UsageError("--points must be non-negative")
            spaces = list(ft.enumerate_topologies(args.points, sample=args.sample))
            print(f"topologies on {args.points} points: {len(spaces)}", file=out)
            return EXIT_OK
        if args.command == "check":
            if args.target == "contact":
                if args.atoms < 1:
                    raise UsageError("--atoms must be at least 1")
                report = _timed("check-contact", check_contact, args.atoms, args.kernel)
            else:
                report = _timed("check-extension", check_extension, args.fixture)
            return _emit(report, args.json, out)
        if args.command == "report":
            report = CheckReport.from_json(Path(args.json).read_text(encoding="utf-8"))
            return _emit(report, None, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ContactDualError, OSError, ValueError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


def main() -> None:
    sys.exit(run())
