"""Line-oriented text formats for transition systems, unions, nets, regions and CNF instances.

Every format ignores blank lines and ``#`` comments. Serializers emit a canonical
form, so writing a parsed file twice yields identical bytes.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional

from .cnf import CnfInstance, validate_cnf
from .interactions import NOP, Interaction
from .nets import BooleanNet
from .regions import Region
from .ts import InvalidTransitionSystem, TransitionSystem, TsUnion, make_union, validate_ts

UNION_SEPARATOR = "---"


class FormatError(ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield number, body.split()


def _interaction(token: str, line: int) -> Interaction:
    try:
        return Interaction(token)
    except ValueError:
        raise FormatError(line, f"unknown interaction {token!r}") from None


# transition systems -------------------------------------------------------

def _parse_ts_block(lines: list[tuple[int, list[str]]], first_line: int) -> TransitionSystem:
    name: Optional[str] = None
    initial: Optional[str] = None
    states: list[str] = []
    events: list[str] = []
    arcs: list[tuple[str, str, str]] = []
    for number, words in lines:
        key, args = words[0], words[1:]
        if key == "ts":
            if name is not None or len(args) > 1:
                raise FormatError(number, "malformed or repeated ts header")
            name = args[0] if args else "A"
        elif key == "initial":
            if initial is not None:
                raise FormatError(number, "duplicate initial line")
            if len(args) != 1:
                raise FormatError(number, "initial takes one state")
            initial = args[0]
        elif key == "state":
            if not args:
                raise FormatError(number, "state takes at least one identifier")
            states.extend(args)
        elif key == "event":
            if not args:
                raise FormatError(number, "event takes at least one identifier")
            events.extend(args)
        elif key == "arc":
            if len(args) != 3:
                raise FormatError(number, "arc takes source, event and target")
            arcs.append((args[0], args[1], args[2]))
        else:
            raise FormatError(number, f"unexpected keyword {key!r}")
    if name is None:
        raise FormatError(first_line, "missing ts header")
    if initial is None:
        raise FormatError(first_line, "missing initial line")
    return validate_ts(initial, arcs, states, events, name)


def parse_ts(text: str) -> TransitionSystem:
    """Parse one transition system; raises FormatError or InvalidTransitionSystem."""
    lines = list(_lines(text))
    if not lines:
        raise FormatError(1, "empty input")
    return _parse_ts_block(lines, lines[0][0])


def _implicit_order(ts: TransitionSystem) -> tuple[list[str], list[str]]:
    states = list(dict.fromkeys([ts.initial] + [x for s, _, t in ts.arcs for x in (s, t)]))
    events = list(dict.fromkeys(e for _, e, _ in ts.arcs))
    return states, events


def format_ts(ts: TransitionSystem) -> str:
    """Canonical text; ``state``/``event`` lines appear only when arcs alone would lose information."""
    out = [f"ts {ts.name}", f"initial {ts.initial}"]
    states, events = _implicit_order(ts)
    if states != list(ts.states):
        out.extend(f"state {s}" for s in ts.states)
    if events != list(ts.events):
        out.extend(f"event {e}" for e in ts.events)
    out.extend(f"arc {s} {e} {t}" for s, e, t in ts.arcs)
    return "\n".join(out) + "\n"


def parse_union(text: str) -> TsUnion:
    blocks: list[list[tuple[int, list[str]]]] = [[]]
    for number, words in _lines(text):
        if words == [UNION_SEPARATOR]:
            blocks.append([])
        else:
            blocks[-1].append((number, words))
    if len(blocks) == 1 and not blocks[0]:
        return make_union([])
    components = []
    for block in blocks:
        if not block:
            raise FormatError(1, "empty union component")
        components.append(_parse_ts_block(block, block[0][0]))
    return make_union(components)


def format_union(union: TsUnion) -> str:
    return f"{UNION_SEPARATOR}\n".join(format_ts(c) for c in union.components)


# nets ---------------------------------------------------------------------

def parse_net(text: str) -> BooleanNet:
    name: Optional[str] = None
    transitions: Optional[list[str]] = None
    places: list[str] = []
    marking: list[str] = []
    flow: dict[tuple[str, str], Interaction] = {}
    for number, words in _lines(text):
        key, args = words[0], words[1:]
        if key == "net":
            if name is not None or len(args) > 1:
                raise FormatError(number, "malformed or repeated net header")
            name = args[0] if args else "N"
        elif key == "transitions":
            if transitions is not None:
                raise FormatError(number, "duplicate transitions line")
            transitions = list(args)
        elif key == "place":
            if transitions is None:
                raise FormatError(number, "place before transitions line")
            if not args:
                raise FormatError(number, "place needs a name")
            p = args[0]
            if p in places:
                raise FormatError(number, f"duplicate place {p!r}")
            places.append(p)
            for item in args[1:]:
                k, sep, v = item.partition("=")
                if not sep:
                    raise FormatError(number, f"expected key=value, got {item!r}")
                if k == "initial":
                    if v not in ("0", "1"):
                        raise FormatError(number, "initial must be 0 or 1")
                    if v == "1":
                        marking.append(p)
                elif k in transitions:
                    flow[(p, k)] = _interaction(v, number)
                else:
                    raise FormatError(number, f"unknown transition {k!r}")
        else:
            raise FormatError(number, f"unexpected keyword {key!r}")
    if name is None:
        raise FormatError(1, "missing net header")
    if transitions is None:
        raise FormatError(1, "missing transitions line")
    try:
        return BooleanNet.build(places, transitions, marking, flow, name)
    except ValueError as exc:
        raise FormatError(1, str(exc)) from None


def format_net(net: BooleanNet) -> str:
    out = [f"net {net.name}", " ".join(["transitions", *net.transitions])]
    for p, row in zip(net.places, net.flow):
        items = [f"place {p}", f"initial={int(p in net.initial_marking)}"]
        items.extend(f"{t}={i.value}" for t, i in zip(net.transitions, row) if i != NOP)
        out.append(" ".join(items))
    return "\n".join(out) + "\n"


# regions ------------------------------------------------------------------

def parse_regions(text: str) -> list[tuple[str, Region]]:
    """All ``region`` blocks as (name, region) pairs; unnamed blocks get their index."""
    result: list[tuple[str, dict, dict]] = []
    for number, words in _lines(text):
        key, args = words[0], words[1:]
        if key == "region":
            if len(args) > 1:
                raise FormatError(number, "region takes at most a name")
            result.append((args[0] if args else str(len(result)), {}, {}))
            continue
        if not result:
            raise FormatError(number, "expected region header")
        _, sup, sig = result[-1]
        if key == "sup":
            if len(args) != 2 or args[1] not in ("0", "1"):
                raise FormatError(number, "sup takes a state and 0 or 1")
            if args[0] in sup:
                raise FormatError(number, f"duplicate sup entry for {args[0]!r}")
            sup[args[0]] = int(args[1])
        elif key == "sig":
            if len(args) != 2:
                raise FormatError(number, "sig takes an event and an interaction")
            if args[0] in sig:
                raise FormatError(number, f"duplicate sig entry for {args[0]!r}")
            sig[args[0]] = _interaction(args[1], number)
        else:
            raise FormatError(number, f"unexpected keyword {key!r}")
    return [(name, Region(sup, sig)) for name, sup, sig in result]


def parse_region(text: str) -> Region:
    regions = parse_regions(text)
    if len(regions) != 1:
        raise FormatError(1, f"expected one region, found {len(regions)}")
    return regions[0][1]


def format_region(region: Region, ts: Optional[TransitionSystem] = None, name: Optional[str] = None) -> str:
    """States and events follow ``ts`` order when given, insertion order otherwise."""
    states = ts.states if ts is not None else tuple(region.sup)
    events = ts.events if ts is not None else tuple(region.sig)
    out = ["region" if name is None else f"region {name}"]
    out.extend(f"sup {s} {region.sup[s]}" for s in states)
    out.extend(f"sig {e} {region.sig[e].value}" for e in events)
    return "\n".join(out) + "\n"


def format_regions(regions: Iterable[Region], ts: Optional[TransitionSystem] = None) -> str:
    return "".join(format_region(r, ts, f"r{i}") for i, r in enumerate(regions))


# CNF ----------------------------------------------------------------------

def parse_cnf(text: str) -> CnfInstance:
    header = False
    clauses: list[tuple[str, ...]] = []
    for number, words in _lines(text):
        key, args = words[0], words[1:]
        if key == "cnf":
            if header:
                raise FormatError(number, "duplicate cnf header")
            header = True
        elif key == "clause":
            if not header:
                raise FormatError(number, "clause before cnf header")
            clauses.append(tuple(args))
        else:
            raise FormatError(number, f"unexpected keyword {key!r}")
    if not header:
        raise FormatError(1, "missing cnf header")
    return validate_cnf(clauses)


def format_cnf(phi: CnfInstance) -> str:
    return "cnf\n" + "".join(f"clause {a} {b} {c}\n" for a, b, c in phi.clauses)


__all__ = [
    "FormatError", "InvalidTransitionSystem", "parse_ts", "format_ts", "parse_union", "format_union",
    "parse_net", "format_net", "parse_regions", "parse_region", "format_region", "format_regions",
    "parse_cnf", "format_cnf",
]
