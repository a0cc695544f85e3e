"""Boolean Petri nets: firing, reachability graphs and isomorphism of rooted systems."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional

from .interactions import NOP, Interaction
from .ts import TransitionSystem


class CapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class BooleanNet:
    places: tuple[str, ...]
    transitions: tuple[str, ...]
    initial_marking: frozenset[str]
    flow: tuple[tuple[Interaction, ...], ...]  # flow[place index][transition index]
    name: str = "N"

    @classmethod
    def build(
        cls,
        places: Iterable[str],
        transitions: Iterable[str],
        initial_marking: Iterable[str],
        flow: Mapping[tuple[str, str], Interaction],
        name: str = "N",
    ) -> "BooleanNet":
        """Entries missing from ``flow`` default to nop."""
        places = tuple(places)
        transitions = tuple(transitions)
        marking = frozenset(initial_marking)
        if len(set(places)) != len(places) or len(set(transitions)) != len(transitions):
            raise ValueError("duplicate place or transition")
        unknown = marking - set(places)
        if unknown:
            raise ValueError(f"initial marking names unknown places {sorted(unknown)}")
        for p, t in flow:
            if p not in places or t not in transitions:
                raise ValueError(f"flow entry for unknown place/transition ({p}, {t})")
        table = tuple(
            tuple(Interaction(flow.get((p, t), NOP)) for t in transitions) for p in places
        )
        return cls(places, transitions, marking, table, name)

    def f(self, place: str, transition: str) -> Interaction:
        return self.flow[self.place_index[place]][self.transition_index[transition]]

    @cached_property
    def place_index(self) -> dict[str, int]:
        return {p: i for i, p in enumerate(self.places)}

    @cached_property
    def transition_index(self) -> dict[str, int]:
        return {t: i for i, t in enumerate(self.transitions)}

    @cached_property
    def _masks(self) -> list[tuple[int, int, int, int]]:
        # per transition: places that must be marked, places that must be empty,
        # places staying marked when marked, places becoming marked when empty
        masks = []
        for j in range(len(self.transitions)):
            need1 = need0 = keep1 = make1 = 0
            for i, row in enumerate(self.flow):
                low, high = row[j].apply(0), row[j].apply(1)
                bit = 1 << i
                if low is None:
                    need1 |= bit
                if high is None:
                    need0 |= bit
                if high == 1:
                    keep1 |= bit
                if low == 1:
                    make1 |= bit
            masks.append((need1, need0, keep1, make1))
        return masks

    def encode(self, marking: Iterable[str]) -> int:
        code = 0
        for p in marking:
            code |= 1 << self.place_index[p]
        return code

    def decode(self, code: int) -> frozenset[str]:
        return frozenset(p for i, p in enumerate(self.places) if code >> i & 1)

    def fire_code(self, code: int, j: int) -> Optional[int]:
        need1, need0, keep1, make1 = self._masks[j]
        if code & need1 != need1 or code & need0:
            return None
        return (code & keep1) | (~code & make1)


def fire(net: BooleanNet, marking: Iterable[str], transition: str) -> Optional[frozenset[str]]:
    """The marking reached by firing ``transition``, or None when it is not enabled."""
    marking = frozenset(marking)
    if not marking <= set(net.places):
        raise ValueError("marking names unknown places")
    result = net.fire_code(net.encode(marking), net.transition_index[transition])
    return None if result is None else net.decode(result)


def marking_name(net: BooleanNet, code: int) -> str:
    return "{" + ",".join(sorted(p for i, p in enumerate(net.places) if code >> i & 1)) + "}"


def state_graph(net: BooleanNet, cap: int = 1 << 20) -> TransitionSystem:
    """Breadth-first expansion of the reachable markings of ``net``."""
    if cap < 1:
        raise ValueError("cap must be positive")
    start = net.encode(net.initial_marking)
    order = [start]
    seen = {start}
    arcs = []
    queue = deque([start])
    while queue:
        code = queue.popleft()
        for j, t in enumerate(net.transitions):
            nxt = net.fire_code(code, j)
            if nxt is None:
                continue
            if nxt not in seen:
                if len(seen) >= cap:
                    raise CapExceeded(f"more than {cap} reachable markings")
                seen.add(nxt)
                order.append(nxt)
                queue.append(nxt)
            arcs.append((marking_name(net, code), t, marking_name(net, nxt)))
    names = tuple(marking_name(net, c) for c in order)
    return TransitionSystem(names[0], names, net.transitions, tuple(arcs), f"A({net.name})")


def check_isomorphic(a: TransitionSystem, b: TransitionSystem) -> Optional[dict[str, str]]:
    """The label preserving bijection mapping ``a`` onto ``b``, if there is one.

    Both systems are deterministic and rooted, so the only candidate is the map
    propagated from the initial states.
    """
    if len(a.states) != len(b.states) or len(a.arcs) != len(b.arcs):
        return None
    if set(a.events) != set(b.events):
        return None
    mapping = {a.initial: b.initial}
    image = {b.initial}
    queue = deque([a.initial])
    while queue:
        s = queue.popleft()
        t = mapping[s]
        a_out = a.outgoing[s]
        if len(a_out) != len(b.outgoing[t]):
            return None
        for e, s2 in a_out:
            t2 = b.delta.get((t, e))
            if t2 is None:
                return None
            known = mapping.get(s2)
            if known is None:
                if t2 in image:
                    return None
                mapping[s2] = t2
                image.add(t2)
                queue.append(s2)
            elif known != t2:
                return None
    if len(mapping) != len(a.states):
        return None
    return mapping
