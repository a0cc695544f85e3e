"""Deterministic, initially rooted transition systems, their unions and joinings."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence, Union

from .interactions import FREE, INP, OUT, SET, SWAP, USED, Interaction

Arc = tuple[str, str, str]

BOT_PREFIX = "__bot"
ODOT_PREFIX = "__odot"
OMINUS_PREFIX = "__ominus"
RESERVED_PREFIXES = (BOT_PREFIX, ODOT_PREFIX, OMINUS_PREFIX)


@dataclass(frozen=True)
class Problem:
    kind: str
    state: Optional[str] = None
    event: Optional[str] = None

    def __str__(self) -> str:
        if self.kind == "NonDeterministic":
            return f"NonDeterministic({self.state}, {self.event})"
        if self.kind == "Unreachable":
            return f"Unreachable({self.state})"
        return f"{self.kind}({self.state or ''})"


class InvalidTransitionSystem(ValueError):
    def __init__(self, problems: Sequence[Problem]):
        self.problems = list(problems)
        super().__init__("; ".join(str(p) for p in self.problems))


class StateCollision(ValueError):
    def __init__(self, state: str):
        self.state = state
        super().__init__(f"StateCollision({state})")


class JoinUndefined(ValueError):
    pass


class PreconditionViolated(ValueError):
    def __init__(self, event: str):
        self.event = event
        super().__init__(f"PreconditionViolated({event}): event occurs at every state")


class PlusShapeViolated(ValueError):
    def __init__(self, component: int):
        self.component = component
        super().__init__(f"PlusShapeViolated(component {component})")


@dataclass(frozen=True)
class TransitionSystem:
    """A deterministic labeled graph in which every state is reachable from ``initial``.

    ``states``, ``events`` and ``arcs`` keep their declaration order, which makes
    serialization reproducible. Instances should be created with :meth:`build`.
    """

    initial: str
    states: tuple[str, ...]
    events: tuple[str, ...]
    arcs: tuple[Arc, ...]
    name: str = "A"

    @classmethod
    def build(
        cls,
        initial: Optional[str],
        arcs: Iterable[Sequence[str]],
        states: Iterable[str] = (),
        events: Iterable[str] = (),
        name: str = "A",
    ) -> "TransitionSystem":
        return validate_ts(initial, arcs, states, events, name)

    @cached_property
    def delta(self) -> dict[tuple[str, str], str]:
        return {(s, e): t for s, e, t in self.arcs}

    @cached_property
    def outgoing(self) -> dict[str, list[tuple[str, str]]]:
        out: dict[str, list[tuple[str, str]]] = {s: [] for s in self.states}
        for s, e, t in self.arcs:
            out[s].append((e, t))
        return out

    @cached_property
    def incoming(self) -> dict[str, list[tuple[str, str]]]:
        inc: dict[str, list[tuple[str, str]]] = {s: [] for s in self.states}
        for s, e, t in self.arcs:
            inc[t].append((s, e))
        return inc

    @cached_property
    def arcs_by_event(self) -> dict[str, list[tuple[str, str]]]:
        by: dict[str, list[tuple[str, str]]] = {e: [] for e in self.events}
        for s, e, t in self.arcs:
            by[e].append((s, t))
        return by

    @cached_property
    def state_index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.states)}

    @cached_property
    def event_index(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.events)}

    def enabled(self, state: str, event: str) -> bool:
        return (state, event) in self.delta

    def rename(self, state_map: Mapping[str, str] = None, event_map: Mapping[str, str] = None,
               name: Optional[str] = None) -> "TransitionSystem":
        sm = state_map or {}
        em = event_map or {}
        return TransitionSystem(
            initial=sm.get(self.initial, self.initial),
            states=tuple(sm.get(s, s) for s in self.states),
            events=tuple(em.get(e, e) for e in self.events),
            arcs=tuple((sm.get(s, s), em.get(e, e), sm.get(t, t)) for s, e, t in self.arcs),
            name=self.name if name is None else name,
        )

    def __len__(self) -> int:
        return len(self.states)


def validate_ts(
    initial: Optional[str],
    arcs: Iterable[Sequence[str]],
    states: Iterable[str] = (),
    events: Iterable[str] = (),
    name: str = "A",
) -> TransitionSystem:
    """Check determinism and reachability; states and events may be implied by arcs."""
    problems: list[Problem] = []
    declared = list(dict.fromkeys(states))
    arc_list = [tuple(a) for a in arcs]
    if initial is None or (declared and initial not in declared):
        problems.append(Problem("UnknownInitial", initial))
        raise InvalidTransitionSystem(problems)

    state_order = list(declared)
    seen = set(state_order)
    event_order = list(dict.fromkeys(events))
    seen_events = set(event_order)

    def note_state(s: str) -> None:
        if s not in seen:
            seen.add(s)
            state_order.append(s)

    note_state(initial)
    delta: dict[tuple[str, str], str] = {}
    unique_arcs: list[Arc] = []
    reported: set[tuple[str, str]] = set()
    for arc in arc_list:
        if len(arc) != 3:
            raise ValueError(f"malformed arc {arc!r}")
        s, e, t = arc
        note_state(s)
        note_state(t)
        if e not in seen_events:
            seen_events.add(e)
            event_order.append(e)
        key = (s, e)
        if key in delta:
            if delta[key] != t and key not in reported:
                reported.add(key)
                problems.append(Problem("NonDeterministic", s, e))
            continue
        delta[key] = t
        unique_arcs.append((s, e, t))

    succ: dict[str, list[str]] = {s: [] for s in state_order}
    for s, _, t in unique_arcs:
        succ[s].append(t)
    reached = {initial}
    queue = deque([initial])
    while queue:
        s = queue.popleft()
        for t in succ[s]:
            if t not in reached:
                reached.add(t)
                queue.append(t)
    for s in state_order:
        if s not in reached:
            problems.append(Problem("Unreachable", s))
    if problems:
        raise InvalidTransitionSystem(problems)
    return TransitionSystem(initial, tuple(state_order), tuple(event_order), tuple(unique_arcs), name)


@dataclass(frozen=True)
class ModestyReport:
    simple: bool
    loop_free: bool
    reduced: bool

    @property
    def modest(self) -> bool:
        return self.simple and self.loop_free and self.reduced


def modesty(ts: TransitionSystem) -> ModestyReport:
    labels: dict[tuple[str, str], set[str]] = {}
    for s, e, t in ts.arcs:
        labels.setdefault((s, t), set()).add(e)
    simple = all(len(v) == 1 for v in labels.values())
    loop_free = all(s != t for s, _, t in ts.arcs)
    reduced = all(ts.arcs_by_event[e] for e in ts.events)
    return ModestyReport(simple, loop_free, reduced)


@dataclass(frozen=True)
class TsUnion:
    """An ordered collection of transition systems with pairwise disjoint states."""

    components: tuple[TransitionSystem, ...] = field(default_factory=tuple)

    @cached_property
    def states(self) -> tuple[str, ...]:
        return tuple(s for c in self.components for s in c.states)

    @cached_property
    def events(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(e for c in self.components for e in c.events))

    @cached_property
    def arcs(self) -> tuple[Arc, ...]:
        return tuple(a for c in self.components for a in c.arcs)

    @cached_property
    def event_count(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for _, e, _ in self.arcs:
            counts[e] = counts.get(e, 0) + 1
        return counts

    @cached_property
    def flat(self) -> TransitionSystem:
        """All components as one unrooted system, for computing regions of the union."""
        initial = self.components[0].initial if self.components else ""
        return TransitionSystem(initial, self.states, self.events, self.arcs, "union")

    def __len__(self) -> int:
        return len(self.components)


def make_union(items: Iterable[Union[TransitionSystem, TsUnion]]) -> TsUnion:
    flat: list[TransitionSystem] = []
    for item in items:
        if isinstance(item, TsUnion):
            flat.extend(item.components)
        else:
            flat.append(item)
    owner: set[str] = set()
    for comp in flat:
        for s in comp.states:
            if s in owner:
                raise StateCollision(s)
            owner.add(s)
    return TsUnion(tuple(flat))


def bot(i: int) -> str:
    return f"{BOT_PREFIX}{i}"


def odot(i: int) -> str:
    return f"{ODOT_PREFIX}{i}"


def ominus(i: int) -> str:
    return f"{OMINUS_PREFIX}{i}"


def join_condition(tau: Iterable[Interaction]) -> Optional[int]:
    """1 or 2 when the respective joining condition holds for ``tau`` (shape aside)."""
    t = set(tau)
    if INP in t and t & {OUT, SET, SWAP}:
        return 1
    if SWAP in t and t & {USED, FREE}:
        return 2
    return None


def _plus_shape_ok(comp: TransitionSystem, union: TsUnion) -> bool:
    s0 = comp.initial
    outs = comp.outgoing[s0]
    ins = comp.incoming[s0]
    if len(outs) != 1 or len(ins) != 1 or outs[0][0] != ins[0][1]:
        return False
    return union.event_count[outs[0][0]] == 2


def join(union: TsUnion, tau: Iterable[Interaction], name: str = "joined") -> TransitionSystem:
    """Link the components of ``union`` into one transition system via connector states."""
    tau = frozenset(tau)
    cond = join_condition(tau)
    if cond is None:
        raise JoinUndefined(f"JoinUndefined({','.join(sorted(i.value for i in tau))})")
    sources: dict[str, set[str]] = {e: set() for e in union.events}
    for s, e, _ in union.arcs:
        sources[e].add(s)
    for e in union.events:
        if len(sources[e]) == len(union.states):
            raise PreconditionViolated(e)
    if cond == 2:
        for i, comp in enumerate(union.components):
            if not _plus_shape_ok(comp, union):
                raise PlusShapeViolated(i)
    taken = set(union.states) | set(union.events)
    for ident in taken:
        if ident.startswith(RESERVED_PREFIXES):
            raise StateCollision(ident)

    n = len(union.components)
    connectors = [bot(i) for i in range(max(n, 1))]
    arcs: list[Arc] = []
    for i, comp in enumerate(union.components):
        arcs.append((bot(i), odot(i), comp.initial))
        if cond == 2:
            arcs.append((comp.initial, odot(i), bot(i)))
        if i + 1 < n:
            arcs.append((bot(i), ominus(i + 1), bot(i + 1)))
            if cond == 2:
                arcs.append((bot(i + 1), ominus(i + 1), bot(i)))
    arcs.extend(union.arcs)
    events = [odot(i) for i in range(n)] + [ominus(i) for i in range(1, n)] + list(union.events)
    states = connectors + list(union.states)
    return TransitionSystem(bot(0), tuple(states), tuple(events), tuple(arcs), name)
