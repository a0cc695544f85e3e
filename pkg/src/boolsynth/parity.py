"""Spanning-tree parities and chord equations for types containing swap."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union

from .gf2 import Gf2System, parity, solve_rows
from .interactions import FREE, INP, NOP, OUT, SWAP, USED, Interaction
from .regions import Atom, Region, WrongFamily
from .ts import Arc, TransitionSystem


class ChordViolation(ValueError):
    pass


@dataclass(frozen=True)
class ParityIndex:
    """BFS spanning tree rooted at the initial state.

    ``psi[s]`` packs the parity of every event along the tree path to ``s``; bit ``i``
    belongs to ``ts.events[i]``.
    """

    tree: tuple[Arc, ...]
    psi: Mapping[str, int]
    chords: tuple[Arc, ...]
    events: tuple[str, ...]

    def psi_dict(self, state: str) -> dict[str, int]:
        code = self.psi[state]
        return {e: 1 for i, e in enumerate(self.events) if code >> i & 1}


def build_parity_index(ts: TransitionSystem) -> ParityIndex:
    bit = {e: 1 << i for i, e in enumerate(ts.events)}
    psi = {ts.initial: 0}
    tree: list[Arc] = []
    tree_set: set[Arc] = set()
    queue = deque([ts.initial])
    while queue:
        s = queue.popleft()
        for e, t in ts.outgoing[s]:
            if t not in psi:
                psi[t] = psi[s] ^ bit[e]
                tree.append((s, e, t))
                tree_set.add((s, e, t))
                queue.append(t)
    chords = tuple(a for a in ts.arcs if a not in tree_set)
    return ParityIndex(tuple(tree), psi, chords, ts.events)


def build_chord_system(idx: ParityIndex) -> Gf2System:
    system = Gf2System(list(idx.events))
    position = {e: i for i, e in enumerate(idx.events)}
    for s, e, t in idx.chords:
        system.add_row((1 << position[e]) ^ idx.psi[s] ^ idx.psi[t], 0)
    return system


def _as_vector(rho: Union[int, Mapping[str, int]], events: tuple[str, ...]) -> int:
    if isinstance(rho, int):
        return rho
    return sum(1 << i for i, e in enumerate(events) if rho.get(e, 0) & 1)


def abstract_to_region(
    ts: TransitionSystem,
    tau: Iterable[Interaction],
    rho: Union[int, Mapping[str, int]],
    complement: bool = False,
    idx: Optional[ParityIndex] = None,
) -> Region:
    """Lift an abstract region to a region whose signatures are swap and nop."""
    tau = frozenset(tau)
    if not {NOP, SWAP} <= tau:
        raise WrongFamily("abstract regions need nop and swap")
    idx = idx or build_parity_index(ts)
    vec = _as_vector(rho, ts.events)
    position = {e: i for i, e in enumerate(ts.events)}
    for s, e, t in idx.chords:
        if parity(((1 << position[e]) ^ idx.psi[s] ^ idx.psi[t]) & vec):
            raise ChordViolation(f"chord {s} -{e}-> {t} is violated")
    c = int(complement)
    sup = {s: parity(idx.psi[s] & vec) ^ c for s in ts.states}
    sig = {e: SWAP if vec >> i & 1 else NOP for i, e in enumerate(ts.events)}
    return Region(sup, sig)


SWAP_FAMILY_MAX = frozenset({NOP, SWAP, INP, OUT, USED, FREE})


class ParityMethod:
    """Decides separation atoms for ``{nop, swap}`` extended by inp, out, used and free."""

    def __init__(self, ts: TransitionSystem, tau: Iterable[Interaction]):
        tau = frozenset(tau)
        if not ({NOP, SWAP} <= tau <= SWAP_FAMILY_MAX):
            raise WrongFamily(f"WrongFamily({','.join(sorted(i.value for i in tau))})")
        self.ts = ts
        self.tau = tau
        self.idx = build_parity_index(ts)
        self.base = build_chord_system(self.idx).rows
        self.position = {e: i for i, e in enumerate(ts.events)}

    def _solve(self, extra: list[tuple[int, int]]) -> Optional[int]:
        return solve_rows(self.base + extra, len(self.ts.events))

    def _region(self, vec: int, state: str, want: int, target: Optional[tuple[str, Interaction]]) -> Region:
        base_value = parity(self.idx.psi[state] & vec)
        region = abstract_to_region(self.ts, self.tau, vec, complement=bool(base_value ^ want), idx=self.idx)
        if target is not None:
            sig = dict(region.sig)
            sig[target[0]] = target[1]
            region = Region(region.sup, sig)
        return region

    def solve(self, atom: Atom) -> Optional[Region]:
        psi = self.idx.psi
        if atom.kind == "SSP":
            vec = self._solve([(psi[atom.first] ^ psi[atom.second], 1)])
            if vec is None:
                return None
            return self._region(vec, atom.first, 0, None)
        e, s = atom.first, atom.second
        ebit = 1 << self.position[e]
        arc_rows = [(psi[s] ^ psi[z], 1) for z, _ in self.ts.arcs_by_event[e]]
        if self.tau & {INP, OUT}:
            vec = self._solve([(ebit, 1)] + arc_rows)
            if vec is not None:
                # inp wants the state outside the support, out wants it inside
                inter = INP if INP in self.tau else OUT
                return self._region(vec, s, 0 if inter is INP else 1, (e, inter))
        if self.tau & {USED, FREE}:
            vec = self._solve([(ebit, 0)] + arc_rows)
            if vec is not None:
                inter = USED if USED in self.tau else FREE
                return self._region(vec, s, 0 if inter is USED else 1, (e, inter))
        return None


def solve_atom_gf2(ts: TransitionSystem, tau: Iterable[Interaction], atom: Atom) -> Optional[Region]:
    return ParityMethod(ts, tau).solve(atom)
