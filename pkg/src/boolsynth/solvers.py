"""Polynomial atom solvers for the tractable families and a dispatcher over all of them."""

from __future__ import annotations

from typing import Iterable, Optional, Protocol

from .classify import polytime_schema
from .interactions import FREE, INP, NOP, RES, USED, Interaction, mirror_type
from .parity import ParityMethod
from .regions import (
    Atom, Region, WrongFamily, grow_support, mirror_region, region_from_support, support_map,
)
from .ts import TransitionSystem

RES_FAMILY_MAX = frozenset({NOP, RES, INP, USED, FREE})
TRIVIAL_FAMILY_MAX = frozenset({NOP, USED, FREE})


class AtomSolver(Protocol):
    def solve(self, atom: Atom) -> Optional[Region]: ...


def _family_error(tau: frozenset[Interaction]) -> WrongFamily:
    return WrongFamily(f"WrongFamily({','.join(sorted(i.value for i in tau))})")


class SupportGrowing:
    """Atoms for ``{nop, res}`` extended by inp, used and free.

    Without an interaction that sends 0 to 1, supports are closed under predecessors,
    so the grown support of the states that must be inside is the smallest candidate.
    """

    def __init__(self, ts: TransitionSystem, tau: Iterable[Interaction]):
        tau = frozenset(tau)
        if not ({NOP, RES} <= tau <= RES_FAMILY_MAX):
            raise _family_error(tau)
        self.ts = ts
        self.tau = tau

    def _region(self, support: frozenset[str], fixed: Optional[dict] = None) -> Optional[Region]:
        return region_from_support(self.ts, self.tau, support_map(self.ts, support), fixed)

    def solve(self, atom: Atom) -> Optional[Region]:
        ts = self.ts
        if atom.kind == "SSP":
            s, t = atom.first, atom.second
            for inside, outside in ((s, t), (t, s)):
                grown = grow_support(ts, {inside})
                if outside not in grown:
                    return self._region(grown)
            return None
        e, s = atom.first, atom.second
        arcs = ts.arcs_by_event[e]
        if INP in self.tau:
            grown = grow_support(ts, {z for z, _ in arcs})
            if s not in grown and not any(t in grown for _, t in arcs):
                return self._region(grown, {e: INP})
        if USED in self.tau:
            grown = grow_support(ts, {z for arc in arcs for z in arc})
            if s not in grown:
                return self._region(grown, {e: USED})
        if FREE in self.tau:
            grown = grow_support(ts, {s})
            if not any(z in grown for arc in arcs for z in arc):
                return self._region(grown, {e: FREE})
        return None


class MirroredSolver:
    """Solve on the mirrored type and mirror the regions back."""

    def __init__(self, inner: AtomSolver):
        self.inner = inner

    def solve(self, atom: Atom) -> Optional[Region]:
        region = self.inner.solve(atom)
        return None if region is None else mirror_region(region)


class ConstantSupport:
    """Atoms for nop extended by used and free: every region has a constant support."""

    def __init__(self, ts: TransitionSystem, tau: Iterable[Interaction]):
        tau = frozenset(tau)
        if not ({NOP} <= tau <= TRIVIAL_FAMILY_MAX):
            raise _family_error(tau)
        self.ts = ts
        self.tau = tau

    def solve(self, atom: Atom) -> Optional[Region]:
        if atom.kind == "SSP":
            return None
        e = atom.first
        if self.ts.arcs_by_event[e]:
            return None
        for inter, value in ((USED, 0), (FREE, 1)):
            if inter in self.tau:
                sup = {s: value for s in self.ts.states}
                sig = {x: NOP for x in self.ts.events}
                sig[e] = inter
                return Region(sup, sig)
        return None


def polytime_solver(ts: TransitionSystem, tau: Iterable[Interaction]) -> AtomSolver:
    tau = frozenset(tau)
    family = polytime_schema(tau)
    if family == "res":
        return SupportGrowing(ts, tau)
    if family == "set":
        return MirroredSolver(SupportGrowing(ts, mirror_type(tau)))
    if family == "swap":
        return ParityMethod(ts, tau)
    if family == "nop":
        return ConstantSupport(ts, tau)
    raise _family_error(tau)


def solve_atom_res_family(ts: TransitionSystem, tau: Iterable[Interaction], atom: Atom) -> Optional[Region]:
    return SupportGrowing(ts, tau).solve(atom)


def solve_atom_trivial(ts: TransitionSystem, tau: Iterable[Interaction], atom: Atom) -> Optional[Region]:
    return ConstantSupport(ts, tau).solve(atom)
