"""Regions, separation atoms and support growing."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Mapping, Optional

from .interactions import FREE, INP, NOP, OUT, RES, SET, SWAP, USED, Interaction, sorted_type
from .ts import TransitionSystem

# nop first, then by increasing strength
NEUTRAL_ORDER: tuple[Interaction, ...] = (NOP, INP, OUT, SET, RES, SWAP, USED, FREE)
# the preferred signature of the event an ESSP atom is about
TARGET_ORDER: tuple[Interaction, ...] = (INP, OUT, USED, FREE, RES, SET, SWAP, NOP)


class WrongFamily(ValueError):
    pass


@dataclass(frozen=True)
class Region:
    sup: Mapping[str, int]
    sig: Mapping[str, Interaction]

    def key(self, ts: TransitionSystem) -> tuple[tuple[int, ...], tuple[str, ...]]:
        return (
            tuple(self.sup[s] for s in ts.states),
            tuple(self.sig[e].value for e in ts.events),
        )

    def support(self) -> frozenset[str]:
        return frozenset(s for s, b in self.sup.items() if b)

    def __hash__(self) -> int:
        return hash((tuple(sorted(self.sup.items())), tuple(sorted(self.sig.items()))))


@dataclass(frozen=True, order=True)
class Atom:
    """``SSP(first, second)`` for two states, or ``ESSP(first=event, second=state)``."""

    kind: str
    first: str
    second: str

    @staticmethod
    def ssp(s: str, t: str) -> "Atom":
        if s == t:
            raise ValueError("an SSP atom needs two distinct states")
        return Atom("SSP", s, t)

    @staticmethod
    def essp(event: str, state: str) -> "Atom":
        return Atom("ESSP", event, state)

    def __str__(self) -> str:
        return f"{self.kind}({self.first}, {self.second})"


@dataclass(frozen=True)
class Violation:
    kind: str  # "arc", "signature", "support" or "unknown"
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


def enumerate_atoms(ts: TransitionSystem) -> list[Atom]:
    """All SSP atoms (state pairs in declaration order), then all ESSP atoms by event."""
    states = ts.states
    atoms = [Atom.ssp(states[i], states[j]) for i in range(len(states)) for j in range(i + 1, len(states))]
    for e in ts.events:
        atoms.extend(Atom.essp(e, s) for s in states if (s, e) not in ts.delta)
    return atoms


def validate_region(ts: TransitionSystem, tau: Iterable[Interaction], region: Region) -> list[Violation]:
    """Every reason why ``region`` is not a region of ``ts`` for ``tau``; empty when it is one."""
    tau = frozenset(tau)
    problems: list[Violation] = []
    for s in ts.states:
        if region.sup.get(s) not in (0, 1):
            problems.append(Violation("support", f"state {s} has no support value"))
    for e in ts.events:
        i = region.sig.get(e)
        if i is None:
            problems.append(Violation("signature", f"event {e} has no signature"))
        elif i not in tau:
            problems.append(Violation("signature", f"sig({e})={i.value} is not in the type"))
    if problems:
        return problems
    for s, e, t in ts.arcs:
        i = region.sig[e]
        if i.apply(region.sup[s]) != region.sup[t]:
            problems.append(Violation(
                "arc", f"{s} -{e}-> {t}: {i.value}({region.sup[s]}) != {region.sup[t]}"))
    return problems


def satisfies_atom(region: Region, atom: Atom) -> bool:
    if atom.kind == "SSP":
        return region.sup[atom.first] != region.sup[atom.second]
    return region.sig[atom.first].apply(region.sup[atom.second]) is None


def signature_candidates(
    ts: TransitionSystem, tau: Iterable[Interaction], sup: Mapping[str, int], event: str
) -> list[Interaction]:
    """Members of ``tau`` consistent with every ``event`` arc under ``sup``."""
    arcs = ts.arcs_by_event[event]
    pairs = {(sup[s], sup[t]) for s, t in arcs}
    return [i for i in sorted_type(tau) if all(i.apply(a) == b for a, b in pairs)]


def support_map(ts: TransitionSystem, support: Iterable[str]) -> dict[str, int]:
    chosen = set(support)
    return {s: int(s in chosen) for s in ts.states}


def region_from_support(
    ts: TransitionSystem,
    tau: Iterable[Interaction],
    sup: Mapping[str, int],
    fixed: Optional[Mapping[str, Interaction]] = None,
) -> Optional[Region]:
    """Complete ``sup`` with nop-first signatures; ``fixed`` pins chosen events."""
    tau = frozenset(tau)
    fixed = fixed or {}
    sig: dict[str, Interaction] = {}
    for e in ts.events:
        cands = signature_candidates(ts, tau, sup, e)
        if e in fixed:
            if fixed[e] not in cands:
                return None
            sig[e] = fixed[e]
            continue
        choice = next((i for i in NEUTRAL_ORDER if i in cands), None)
        if choice is None:
            return None
        sig[e] = choice
    return Region(dict(sup), sig)


def grow_support(ts: TransitionSystem, q: Iterable[str]) -> frozenset[str]:
    """Smallest superset of ``q`` closed under the rules of the support growing algorithm.

    A state is added when it has an arc into the set, or when it is reached from the
    set by an event that already has an arc lying entirely inside the set.
    """
    sup = set(q)
    stack = list(sup)
    inside: set[str] = set()

    def add(x: str) -> None:
        if x not in sup:
            sup.add(x)
            stack.append(x)

    def mark_inside(e: str) -> None:
        if e not in inside:
            inside.add(e)
            for s, t in ts.arcs_by_event[e]:
                if s in sup:
                    add(t)

    while stack:
        x = stack.pop()
        for w, e in ts.incoming[x]:
            add(w)
            mark_inside(e)
        for e, y in ts.outgoing[x]:
            if e in inside:
                add(y)
    return frozenset(sup)


def mirror_region(region: Region) -> Region:
    """Complement the support and mirror every signature."""
    return Region(
        {s: 1 - b for s, b in region.sup.items()},
        {e: i.mirror for e, i in region.sig.items()},
    )


def enumerate_regions(ts: TransitionSystem, tau: Iterable[Interaction]) -> Iterator[Region]:
    """Every region of ``ts`` for ``tau``, by brute force over all supports. Small inputs only."""
    tau = frozenset(tau)
    states = ts.states
    for bits in product((0, 1), repeat=len(states)):
        sup = dict(zip(states, bits))
        options = [signature_candidates(ts, tau, sup, e) for e in ts.events]
        for choice in product(*options):
            yield Region(sup, dict(zip(ts.events, choice)))
