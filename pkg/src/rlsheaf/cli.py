"""Command-line interface.

Exit status: 0 when every check passes, 1 when a check fails, 2 on input
errors. Output is deterministic for fixed input and flags.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

from .algebra import InvalidLattice, MalformedTables, ResiduatedLattice, ValidationReport, validate
from .bits import members
from .checks import theorem_suite
from .explorer import MAX_SIZE, enumerate_lattices, footer, survey
from .filters import all_filters, o_of_p, spec
from .latfile import dump, load_raw, names_of, to_document
from .sheaf import DEFAULT_BUDGET, build_sheaf, represent
from .spaces import load_space, space_checks
from .spectrum import stone_topology

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


class Output:
    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: list[str] = []
        self.doc: dict[str, Any] = {}
        self.failed = False

    def text(self, line: str = "") -> None:
        self.lines.append(line)

    def check(self, name: str, report: ValidationReport, render=None) -> None:
        render = render or (lambda w: "(" + ", ".join(map(str, w)) + ")")
        status = "PASS" if report.passed else "FAIL"
        self.lines.append(f"{name}: {status}")
        for v in report.violations:
            self.lines.append(f"  {v.axiom}: {render(v.witness)}")
        self.doc.setdefault("checks", []).append(
            {
                "name": name,
                "passed": report.passed,
                "violations": [
                    {"axiom": v.axiom, "witness": list(v.witness)} for v in report.violations
                ],
            }
        )
        if not report.passed:
            self.failed = True

    def emit(self, stream) -> None:
        if self.fmt == "json":
            stream.write(json.dumps(self.doc, indent=2, ensure_ascii=False) + "\n")
        else:
            stream.write("\n".join(self.lines) + "\n")


def _load_lattice(path: str, out: Output) -> Optional[ResiduatedLattice]:
    raw = _read_raw(path)
    report = validate(raw)
    if not report.passed:
        out.doc["elements"] = list(raw.names)
        out.check("residuated lattice axioms", report, _namer(raw.names))
        return None
    return ResiduatedLattice.from_raw(raw)


def _read_raw(path: str):
    try:
        return load_raw(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None


def _namer(names: Sequence[str]) -> Callable:
    return lambda w: "(" + ", ".join(names[i] for i in w) + ")"


def _set(L: ResiduatedLattice, mask: int) -> str:
    return "{" + ", ".join(names_of(L, mask)) + "}"


def cmd_validate(args, out: Output) -> None:
    raw = _read_raw(args.file)
    report = validate(raw)
    out.doc.update(command="validate", file=args.file, elements=list(raw.names))
    out.text(f"lattice: {args.file} ({raw.n} elements)")
    out.check("residuated lattice axioms", report, _namer(raw.names))
    if report.passed and raw.residuum is None:
        out.text("residuum: derived")


def cmd_filters(args, out: Output) -> None:
    L = _load_lattice(args.file, out)
    if L is None:
        return
    fs = all_filters(L)
    primes = spec(L)
    out.doc.update(
        command="filters",
        file=args.file,
        filters=[names_of(L, F) for F in fs],
        primes=[names_of(L, P.mask) for P in primes],
        o_of_p=[names_of(L, o_of_p(L, P)) for P in primes],
    )
    out.text(f"filters ({len(fs)}):")
    for F in fs:
        out.text(f"  {_set(L, F)}")
    out.text(f"prime filters ({len(primes)}):")
    for P in primes:
        out.text(f"  P{P.index} = {_set(L, P.mask)}  O({_set(L, P.mask)})={_set(L, o_of_p(L, P))}")


def cmd_spec(args, out: Output) -> None:
    L = _load_lattice(args.file, out)
    if L is None:
        return
    primes = spec(L)
    out.doc.update(command="spec", file=args.file, spec=[names_of(L, P.mask) for P in primes])
    out.text(f"Spec ({len(primes)} prime filters):")
    for P in primes:
        out.text(f"  P{P.index} = {_set(L, P.mask)}")


def cmd_topology(args, out: Output) -> None:
    from .topology import verify_topology

    L = _load_lattice(args.file, out)
    if L is None:
        return
    T = stone_topology(L)
    out.doc.update(
        command="topology",
        file=args.file,
        points=len(spec(L)),
        opens=[members(U) for U in T.opens],
        base=[{"element": L.names[a], "primes": members(D)} for a, D in T.base],
    )
    out.text(f"points: {T.point_count}")
    out.text(f"opens ({len(T.opens)}):")
    for U in T.opens:
        out.text(f"  {members(U)}")
    out.text("base D(a):")
    for a, D in T.base:
        out.text(f"  {L.names[a]} -> {members(D)}")
    out.check("Stone topology and its base", verify_topology(T))


def _point_label(S, e: int) -> str:
    P, c = S.points[e]
    return f"P{P}:{S.stalks[P].algebra.names[c]}"


def _verdict_block(rep) -> dict:
    return {
        "injective": rep.injective,
        "surjective": rep.verdict,
        "gamma": rep.gamma_size if rep.gamma_size is not None else "unknown",
        "image": rep.image_size,
        "budget": rep.budget,
    }


def _verdict_text(out: Output, rep) -> None:
    yn = {True: "yes", False: "no"}
    out.text("representation:")
    out.text(f"  injective: {yn[rep.injective]}")
    out.text(f"  surjective: {rep.verdict}")
    out.text(f"  |Gamma| = {rep.gamma_size if rep.gamma_size is not None else 'unknown'}")
    out.text(f"  |phi(L)| = {rep.image_size}")


def cmd_sheaf(args, out: Output) -> None:
    text = _read_text(args.file)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedTables(f"not a JSON document: {exc}") from None
    if isinstance(doc, dict) and doc.get("kind") == "space":
        return _space_report(args, doc, out)
    L = _load_lattice(args.file, out)
    if L is None:
        return
    S = build_sheaf(L)
    rep = represent(L, args.budget, S=S)
    out.doc.update(
        command="sheaf",
        file=args.file,
        stalks=[
            {"prime": names_of(L, P.mask), "o_of_p": names_of(L, Q.filter),
             "lattice": to_document(Q.algebra)}
            for P, Q in zip(S.primes, S.stalks)
        ],
        points=[[p.prime_index, p.class_index] for p in S.points],
        total_base=[
            {"filter": names_of(L, b.filter), "element": L.names[b.element],
             "points": members(b.points)}
            for b in S.total_base
        ],
        sections=None if rep.sections is None else [list(s.classes) for s in rep.sections.sections],
        representation=_verdict_block(rep),
    )
    out.text(f"stalks ({len(S.stalks)}):")
    for P, Q in zip(S.primes, S.stalks):
        classes = " ".join(Q.algebra.names)
        out.text(f"  P{P.index} = {_set(L, P.mask)}  O(P) = {_set(L, Q.filter)}  classes: {classes}")
    out.text(f"points: {len(S.points)}")
    out.text(f"basic opens D(F,a) ({len(S.total_base)}):")
    for b in S.total_base:
        pts = " ".join(_point_label(S, e) for e in members(b.points))
        out.text(f"  D({_set(L, b.filter)}, {L.names[b.element]}) = [{pts}]")
    if rep.sections is None:
        out.text("global sections: unknown (budget exceeded)")
    else:
        out.text(f"global sections ({len(rep.sections)}):")
        for s in rep.sections.sections:
            out.text(f"  {list(s.classes)}")
    _verdict_text(out, rep)
    for name, report in theorem_suite(L, args.budget, sheaf=S, representation=rep):
        out.check(name, report)


def _space_report(args, doc, out: Output) -> None:
    space = load_space(doc)
    out.doc.update(command="sheaf", file=args.file, kind="space")
    out.text(f"space: {args.file} ({len(space.point_names)} points over "
             f"{len(space.base_names)} base points)")
    for name, report in space_checks(space):
        render = None
        if report.check == "local homeomorphism":
            render = lambda w: ", ".join(space.point_names[i] for i in w)  # noqa: E731
        out.check(name, report, render)


def cmd_represent(args, out: Output) -> None:
    L = _load_lattice(args.file, out)
    if L is None:
        return
    rep = represent(L, args.budget)
    out.doc.update(
        command="represent",
        file=args.file,
        phi={L.names[a]: list(s.classes) for a, s in enumerate(rep.phi)},
        representation=_verdict_block(rep),
    )
    out.text("phi:")
    for a, s in enumerate(rep.phi):
        out.text(f"  {L.names[a]} -> {list(s.classes)}")
    _verdict_text(out, rep)
    from .sheaf import morphism_report

    out.check("representation morphism", morphism_report(rep.sheaf, rep.phi))


SURVEY_COLUMNS = ("index", "id", "duplicate_of", "n", "filters", "primes", "o_sizes",
                  "stalk_sizes", "gamma", "image", "verdict", "checks")


def _row_values(r) -> dict:
    return {
        "index": r.index,
        "id": r.lattice_id,
        "duplicate_of": r.duplicate_of,
        "n": r.n,
        "filters": r.filters,
        "primes": r.primes,
        "o_sizes": list(r.o_sizes),
        "stalk_sizes": list(r.stalk_sizes),
        "gamma": r.gamma if r.gamma is not None else "unknown",
        "image": r.image,
        "verdict": r.verdict,
        "checks": "PASS" if r.checks_passed else "FAIL:" + ",".join(r.failed_checks),
    }


def cmd_survey(args, out: Output) -> None:
    if not 2 <= args.size <= args.max_size:
        raise InputError(f"--size must be between 2 and {args.max_size}")
    gens = list(enumerate_lattices(args.size, args.jobs, max_size=args.max_size))
    rows = survey(args.size, args.budget, args.jobs, lattices=gens)
    foot = footer(rows)
    if args.emit_lattices:
        target = Path(args.emit_lattices)
        target.mkdir(parents=True, exist_ok=True)
        for g, r in zip(gens, rows):
            stem = g.canonical_hash if r.duplicate_of is None else f"{g.canonical_hash}-dup{g.index}"
            dump(g.lattice, target / f"{stem}.lat")
    records = []
    for r in rows:
        v = _row_values(r)
        if args.timings:
            v["wall_time"] = round(r.wall_time, 6)
        records.append(v)
    out.doc.update(command="survey", size=args.size, budget=args.budget, rows=records, footer=foot)
    header = list(SURVEY_COLUMNS) + (["wall_time"] if args.timings else [])
    out.text("\t".join(header))
    for v in records:
        out.text("\t".join(_cell(v[c]) for c in header))
    out.text("# " + " ".join(f"{k}={v}" for k, v in foot.items()))
    if foot["check_failures"]:
        out.failed = True


def _cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, list):
        return ",".join(map(str, v)) or "-"
    return str(v)


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS, metavar="K")

    parser = argparse.ArgumentParser(
        prog="rlsheaf",
        description="Filters, spectra and sheaf representations of finite residuated lattices.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    for name, func, helptext in (
        ("validate", cmd_validate, "check the residuated lattice axioms"),
        ("filters", cmd_filters, "list filters, prime filters and O(P)"),
        ("spec", cmd_spec, "list the prime spectrum"),
        ("topology", cmd_topology, "Stone topology on the spectrum"),
        ("sheaf", cmd_sheaf, "build the sheaf space and run every check"),
        ("represent", cmd_represent, "representation by global sections"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("file")
        if name in ("sheaf", "represent"):
            p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        p.set_defaults(func=func)

    p = sub.add_parser("survey", parents=[common], help="survey all lattices of one size")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--emit-lattices", metavar="DIR")
    p.add_argument("--max-size", type=int, default=MAX_SIZE)
    p.add_argument("--timings", action="store_true", help="add a wall_time column")
    p.set_defaults(func=cmd_survey)
    return parser


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    # set here rather than on the parser: parent actions are shared with subcommands
    for key, default in (("format", "text"), ("jobs", 1)):
        if not hasattr(args, key):
            setattr(args, key, default)
    if args.jobs < 1:
        stderr.write("rlsheaf: --jobs must be positive\n")
        return EXIT_INPUT
    out = Output(args.format)
    try:
        args.func(args, out)
    except (InputError, MalformedTables) as exc:
        stderr.write(f"rlsheaf: {exc}\n")
        return EXIT_INPUT
    except InvalidLattice as exc:
        stderr.write(f"rlsheaf: invalid lattice: {exc}\n")
        return EXIT_FAIL
    out.emit(stdout)
    return EXIT_FAIL if out.failed else EXIT_OK


def main() -> None:
    sys.exit(run())
