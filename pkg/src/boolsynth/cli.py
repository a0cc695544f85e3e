"""Command-line interface.

Exit codes: 0 success, 1 the checked property fails, 2 usage error, 3 invalid
input, 4 search budget exceeded. Output depends only on the inputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

from . import codecs
from .classify import classify_type
from .cnf import CnfError, CnfInstance, NotAModel, TooLarge, one_in_three_bruteforce
from .direct import build_direct_ts, direct_witness
from .feasibility import Budget, FeasibilityReport, OutOfScope, decide_feasibility
from .interactions import Interaction, all_types, format_type, parse_type
from .nets import CapExceeded, check_isomorphic, state_graph
from .oracle import DEFAULT_NODE_BUDGET, DEFAULT_TIME_BUDGET
from .regions import WrongFamily, validate_region
from .scheme import Switch, build_reduction, combine_witness
from .synthesis import net_from_regions, verify_net
from .ts import InvalidTransitionSystem, JoinUndefined, TransitionSystem, modesty

OK, FAILS, USAGE, INVALID, BUDGET = 0, 1, 2, 3, 4
SCHEMA = "v1"


class InputError(Exception):
    """Unreadable or malformed input; exit code 3."""


class UsageError(Exception):
    """Arguments that parse but make no sense together; exit code 2."""


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _load(path: str, parser: Callable[[str], Any]) -> Any:
    try:
        return parser(_read(path))
    except (codecs.FormatError, InvalidTransitionSystem, CnfError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _type(text: str) -> frozenset[Interaction]:
    try:
        return parse_type(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return value


class _Output:
    """Collects report lines or a JSON document and writes it once at the end."""

    def __init__(self, args: argparse.Namespace, command: str):
        self.json = getattr(args, "format", "text") == "json"
        self.doc: dict[str, Any] = {"schema": SCHEMA, "command": command}
        self.lines: list[str] = []

    def field(self, key: str, value: Any, text: Optional[str] = None) -> None:
        self.doc[key] = value
        if text is not None:
            self.lines.append(text)

    def emit(self) -> None:
        if self.json:
            sys.stdout.write(json.dumps(self.doc, indent=2, sort_keys=True) + "\n")
        elif self.lines:
            sys.stdout.write("\n".join(self.lines) + "\n")


def _write_or_print(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        try:
            Path(path).write_text(text)
        except OSError as exc:
            raise InputError(f"{path}: {exc.strerror}") from None


def _emit_with_artifact(out: _Output, text: str, path: Optional[str], key: str) -> None:
    """The artifact goes to ``path`` and the report to stdout; without a path the
    artifact takes stdout, embedded in the JSON document or ahead of a report on stderr."""
    if path is not None and path != "-":
        _write_or_print(path, text)
        out.emit()
    elif out.json:
        out.field(key, text)
        out.emit()
    else:
        sys.stdout.write(text)
        sys.stderr.write("".join(line + "\n" for line in out.lines))


def _budget(args: argparse.Namespace) -> Budget:
    return Budget(args.budget_nodes, args.budget_secs)


def _report_fields(out: _Output, report: FeasibilityReport) -> None:
    out.field("strategy", report.strategy, f"strategy: {report.strategy}")
    out.field("regions", len(report.regions), f"regions: {len(report.regions)}")
    unsolved = [str(a) for a in report.unsolved]
    out.field("unsolved", unsolved, "\n".join(f"unsolved: {a}" for a in unsolved) or None)
    if report.budget_exceeded is not None:
        out.field("budget_exceeded", str(report.budget_exceeded), f"budget exceeded at: {report.budget_exceeded}")
    else:
        out.field("budget_exceeded", None)


# commands -----------------------------------------------------------------

def _detect_kind(text: str) -> str:
    heads = [line.split("#", 1)[0].split()[:1] for line in text.splitlines()]
    words = [h[0] for h in heads if h]
    if not words or words[0] not in ("ts", "net", "cnf", codecs.UNION_SEPARATOR):
        return "ts"
    if words[0] == "ts" and (codecs.UNION_SEPARATOR in words or words.count("ts") > 1):
        return "union"
    return "union" if words[0] == codecs.UNION_SEPARATOR else words[0]


def cmd_validate(args: argparse.Namespace) -> int:
    out = _Output(args, "validate")
    text = _read(args.file)
    kind = _detect_kind(text) if args.kind == "auto" else args.kind
    try:
        if kind == "ts":
            ts = codecs.parse_ts(text)
        elif kind == "union":
            union = codecs.parse_union(text)
        elif kind == "net":
            net = codecs.parse_net(text)
        else:
            phi = codecs.parse_cnf(text)
    except (codecs.FormatError, InvalidTransitionSystem, CnfError, ValueError) as exc:
        out.field("valid", False, "valid: false")
        problems = [str(p) for p in getattr(exc, "problems", [])] or [str(exc)]
        out.field("problems", problems, "\n".join(f"problem: {p}" for p in problems))
        out.emit()
        return INVALID
    out.field("kind", kind, f"kind: {kind}")
    out.field("valid", True, "valid: true")
    if kind == "ts":
        out.field("states", len(ts.states), f"states: {len(ts.states)}")
        out.field("events", len(ts.events), f"events: {len(ts.events)}")
        report = modesty(ts)
        out.field("modesty", {"simple": report.simple, "loop_free": report.loop_free, "reduced": report.reduced},
                  f"modest: {str(report.modest).lower()} (simple={str(report.simple).lower()}, "
                  f"loop_free={str(report.loop_free).lower()}, reduced={str(report.reduced).lower()})")
    elif kind == "union":
        out.field("components", len(union), f"components: {len(union)}")
    elif kind == "net":
        out.field("places", len(net.places), f"places: {len(net.places)}")
        out.field("transitions", len(net.transitions), f"transitions: {len(net.transitions)}")
    else:
        out.field("clauses", phi.m, f"clauses: {phi.m}")
    status = OK
    if args.region is not None:
        if kind != "ts" or args.type is None:
            raise UsageError("--region needs a ts file and --type")
        region = _load(args.region, codecs.parse_region)
        violations = [str(v) for v in validate_region(ts, args.type, region)]
        out.field("region_valid", not violations, f"region valid: {str(not violations).lower()}")
        out.field("violations", violations, "\n".join(f"violation: {v}" for v in violations) or None)
        status = FAILS if violations else OK
    out.emit()
    return status


def cmd_classify(args: argparse.Namespace) -> int:
    out = _Output(args, "classify")
    if args.all:
        rows, lines = [], []
        totals: dict[str, int] = {}
        for tau in all_types(with_nop=True):
            c = classify_type(tau)
            totals[c.complexity.value] = totals.get(c.complexity.value, 0) + 1
            rows.append({"type": format_type(tau), "class": c.complexity.value, "source": c.source, "note": c.note})
            lines.append(f"{format_type(tau)}: {c.describe()}")
        out.field("types", rows, "\n".join(lines))
        out.field("totals", totals, "\n".join(f"total {k}: {v}" for k, v in sorted(totals.items())))
        out.emit()
        return OK
    if args.type is None:
        raise UsageError("classify needs --type or --all")
    c = classify_type(args.type)
    out.field("type", format_type(args.type))
    out.field("class", c.complexity.value)
    out.field("source", c.source)
    out.field("note", c.note, c.describe())
    out.emit()
    return OK


def _decide(args: argparse.Namespace, ts: TransitionSystem, **flags: bool) -> FeasibilityReport:
    try:
        return decide_feasibility(ts, args.type, args.strategy, _budget(args), jobs=args.jobs, **flags)
    except OutOfScope as exc:
        raise UsageError(str(exc)) from None


def cmd_check(args: argparse.Namespace) -> int:
    ts = _load(args.file, codecs.parse_ts)
    flags = {"essp": {"essp_only": True}, "ssp": {"ssp_only": True}, "feasibility": {}}[args.property]
    report = _decide(args, ts, **flags)
    out = _Output(args, "check")
    out.field("type", format_type(args.type), f"type: {format_type(args.type)}")
    out.field("property", args.property, f"property: {args.property}")
    holds = report.feasible
    verdict = "budget exceeded" if report.budget_exceeded is not None else ("holds" if holds else "fails")
    out.field("result", verdict, f"result: {verdict}")
    _report_fields(out, report)
    out.emit()
    if args.witness is not None and report.regions:
        _write_or_print(args.witness, codecs.format_regions(report.regions, ts))
    if report.budget_exceeded is not None:
        return BUDGET
    return OK if holds else FAILS


def cmd_synth(args: argparse.Namespace) -> int:
    ts = _load(args.file, codecs.parse_ts)
    report = _decide(args, ts)
    out = _Output(args, "synth")
    out.field("type", format_type(args.type), f"type: {format_type(args.type)}")
    if report.budget_exceeded is not None or not report.feasible:
        verdict = "budget exceeded" if report.budget_exceeded is not None else "infeasible"
        out.field("result", verdict, f"result: {verdict}")
        _report_fields(out, report)
        out.emit()
        return BUDGET if report.budget_exceeded is not None else FAILS
    net = net_from_regions(ts, report.regions)
    text = codecs.format_net(net)
    status = OK
    if args.verify:
        verified = verify_net(ts, net)
        out.field("verified", verified)
        status = OK if verified else FAILS
    if args.witness is not None:
        _write_or_print(args.witness, codecs.format_regions(report.regions, ts))
    out.field("result", "feasible", "result: feasible")
    _report_fields(out, report)
    out.field("places", len(net.places), f"places: {len(net.places)}")
    if args.verify:
        out.lines.append(f"verified: {str(out.doc['verified']).lower()}")
    _emit_with_artifact(out, text, args.output, "net")
    return status


def cmd_stategraph(args: argparse.Namespace) -> int:
    net = _load(args.file, codecs.parse_net)
    try:
        graph = state_graph(net, cap=args.cap)
    except CapExceeded as exc:
        sys.stderr.write(f"{exc}\n")
        return BUDGET
    out = _Output(args, "stategraph")
    out.field("states", len(graph.states), f"states: {len(graph.states)}")
    out.field("arcs", len(graph.arcs), f"arcs: {len(graph.arcs)}")
    _emit_with_artifact(out, codecs.format_ts(graph), args.output, "ts")
    return OK


def cmd_iso(args: argparse.Namespace) -> int:
    a = _load(args.first, codecs.parse_ts)
    b = _load(args.second, codecs.parse_ts)
    mapping = check_isomorphic(a, b)
    out = _Output(args, "iso")
    out.field("isomorphic", mapping is not None, f"isomorphic: {str(mapping is not None).lower()}")
    if mapping is not None:
        ordered = [[s, mapping[s]] for s in a.states]
        out.field("mapping", ordered, "\n".join(f"map {s} {t}" for s, t in ordered))
    out.emit()
    return OK if mapping is not None else FAILS


def _model(args: argparse.Namespace, phi: CnfInstance) -> tuple[Optional[frozenset[str]], bool]:
    """The requested model and whether one was requested at all."""
    if args.model is None:
        return None, False
    if args.model == "auto":
        try:
            return one_in_three_bruteforce(phi), True
        except TooLarge as exc:
            raise UsageError(str(exc)) from None
    chosen = frozenset(v.strip() for v in args.model.split(",") if v.strip())
    if not phi.is_model(chosen):
        return None, True
    return chosen, True


def _generate(args: argparse.Namespace, phi: CnfInstance, scheme: str, command: str) -> int:
    out = _Output(args, command)
    if args.witness is not None and args.model is None:
        raise UsageError("--witness needs --model")
    try:
        if scheme.startswith("t2:"):
            tau = _type(scheme[3:]) if args.type is None else args.type
            ts, key_event, key_state = build_direct_ts(phi, tau)
            witness = lambda model: direct_witness(phi, tau, model)  # noqa: E731
            components = None
        else:
            reduction = build_reduction(phi, Switch(scheme), args.type)
            tau, ts = reduction.tau, reduction.joined
            key_event, key_state = reduction.key_event, reduction.key_state
            witness = lambda model: combine_witness(reduction, model)  # noqa: E731
            components = len(reduction.union)
    except (WrongFamily, JoinUndefined, argparse.ArgumentTypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    out.field("scheme", scheme, f"scheme: {scheme}")
    out.field("type", format_type(tau), f"type: {format_type(tau)}")
    if components is not None:
        out.field("components", components, f"components: {components}")
    out.field("states", len(ts.states), f"states: {len(ts.states)}")
    out.field("events", len(ts.events), f"events: {len(ts.events)}")
    out.field("key_event", key_event, f"key event: {key_event}")
    out.field("key_state", key_state, f"key state: {key_state}")
    model, requested = _model(args, phi)
    status = OK
    if requested:
        names = sorted(model) if model is not None else None
        out.field("model", names, f"model: {','.join(names) if names is not None else 'none'}")
        status = OK if model is not None else FAILS
    if args.witness is not None and model is not None:
        try:
            region = witness(model)
        except NotAModel as exc:
            raise UsageError(str(exc)) from None
        _write_or_print(args.witness, codecs.format_region(region, ts, "witness"))
    _emit_with_artifact(out, codecs.format_ts(ts), args.output, "ts")
    return status


def cmd_reduce(args: argparse.Namespace) -> int:
    phi = _load(args.file, codecs.parse_cnf)
    return _generate(args, phi, args.scheme, "reduce")


def cmd_t2gen(args: argparse.Namespace) -> int:
    phi = _load(args.file, codecs.parse_cnf)
    if args.type is None:
        raise UsageError("t2gen needs --type")
    return _generate(args, phi, "t2:" + format_type(args.type), "t2gen")


# parser -------------------------------------------------------------------

def _scheme(text: str) -> str:
    if text.startswith("t2:"):
        _type(text[3:])
        return text
    try:
        return Switch(text).value
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown scheme {text!r}; expected sigma1..sigma6 or t2:<type>") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="boolsynth", description="Boolean Petri net synthesis toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("text", "json"), default="text", help="report format")

    def search(p: argparse.ArgumentParser) -> None:
        p.add_argument("--type", type=_type, required=True, help="comma separated interactions, e.g. nop,inp,out")
        p.add_argument("--strategy", choices=("auto", "oracle"), default="auto")
        p.add_argument("--budget-nodes", type=_positive, default=DEFAULT_NODE_BUDGET)
        p.add_argument("--budget-secs", type=float, default=DEFAULT_TIME_BUDGET)
        p.add_argument("--jobs", type=_positive, default=1, help="worker processes for atom solving")
        p.add_argument("--witness", metavar="FILE", help="write the computed regions to FILE")

    p = sub.add_parser("validate", help="check a ts, union, net or cnf file")
    p.add_argument("file")
    p.add_argument("--kind", choices=("auto", "ts", "union", "net", "cnf"), default="auto",
                   help="file kind; auto reads the header keyword")
    p.add_argument("--region", metavar="FILE", help="also validate this region against the ts")
    p.add_argument("--type", type=_type, help="type for --region")
    common(p)
    p.set_defaults(run=cmd_validate)

    p = sub.add_parser("classify", help="complexity of synthesis for a type")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--type", type=_type)
    group.add_argument("--all", action="store_true", help="every type containing nop")
    common(p)
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("synth", help="synthesize a net for a ts")
    p.add_argument("file")
    search(p)
    p.add_argument("-o", "--output", metavar="FILE")
    p.add_argument("--verify", action="store_true", help="compare the state graph of the net with the input")
    common(p)
    p.set_defaults(run=cmd_synth)

    p = sub.add_parser("check", help="decide a separation property")
    p.add_argument("file")
    search(p)
    p.add_argument("--property", choices=("feasibility", "essp", "ssp"), default="feasibility")
    common(p)
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("stategraph", help="reachability graph of a net")
    p.add_argument("file")
    p.add_argument("-o", "--output", metavar="FILE")
    p.add_argument("--cap", type=_positive, default=1 << 20, help="maximum number of markings")
    common(p)
    p.set_defaults(run=cmd_stategraph)

    p = sub.add_parser("iso", help="isomorphism of two transition systems")
    p.add_argument("first")
    p.add_argument("second")
    common(p)
    p.set_defaults(run=cmd_iso)

    def generator(p: argparse.ArgumentParser) -> None:
        p.add_argument("file", help="cnf file")
        p.add_argument("-o", "--output", metavar="FILE", help="write the ts here; stdout otherwise")
        p.add_argument("--model", help="'auto' for brute force, or a comma separated variable list")
        p.add_argument("--witness", metavar="FILE", help="write the region built from the model")
        common(p)

    p = sub.add_parser("reduce", help="hardness instance from a cubic monotone cnf")
    generator(p)
    p.add_argument("--scheme", type=_scheme, required=True, help="sigma1..sigma6 or t2:<type>")
    p.add_argument("--type", type=_type, help="type managed by the scheme (default: its smallest)")
    p.set_defaults(run=cmd_reduce)

    p = sub.add_parser("t2gen", help="direct hardness instance for one of the seven direct types")
    generator(p)
    p.add_argument("--type", type=_type, required=True)
    p.set_defaults(run=cmd_t2gen)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.run(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return INVALID
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
