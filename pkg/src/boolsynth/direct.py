"""Direct one-in-three reductions for the seven types outside the switch scheme.

One transition system per CNF, with key event ``k`` and key state ``q``: ``k`` can
be inhibited at ``q`` by a region exactly when the CNF has a one-in-three model.
The inp family ({nop,inp,free} and {nop,inp,used,free}) uses the basic system; the
set/res family uses the extended system with a self-loop added at the target of
every arc. Types that mirror the inp family reuse its system and mirror the witness.
"""

from __future__ import annotations

from typing import Iterable

from .classify import DIRECT_REDUCTION_TYPES
from .cnf import CnfInstance, NotAModel
from .interactions import FREE, INP, RES, SET, USED, Interaction, mirror_type
from .regions import Region, WrongFamily, mirror_region, region_from_support
from .ts import Arc, TransitionSystem

KEY_EVENT = "k"
KEY_STATE = "q"

# per clause (X0, X1, X2): source, position, target inside the clause compartment
_CLAUSE_ARCS = (
    (0, 0, 1), (0, 2, 3), (0, 1, 7), (1, 1, 2), (1, 2, 4), (2, 2, 5),
    (3, 0, 4), (3, 1, 6), (4, 1, 5), (6, 0, 5), (7, 0, 2), (7, 2, 6),
)

_INP_FAMILY = frozenset(t for t in DIRECT_REDUCTION_TYPES if INP in t)
_SET_RES_FAMILY = frozenset(t for t in DIRECT_REDUCTION_TYPES if {SET, RES} <= t)


def direct_family(tau: Iterable[Interaction]) -> str:
    """``inp``, ``out`` (mirror of inp) or ``setres``; raises WrongFamily otherwise."""
    tau = frozenset(tau)
    if tau in _INP_FAMILY:
        return "inp"
    if mirror_type(tau) in _INP_FAMILY:
        return "out"
    if tau in _SET_RES_FAMILY:
        return "setres"
    raise WrongFamily(f"type {sorted(i.value for i in tau)} has no direct reduction")


def _clause_state(i: int, n: int) -> str:
    return f"t_{i}_{n}"


def _variable_arcs(phi: CnfInstance) -> list[Arc]:
    arcs = []
    for i, clause in enumerate(phi.clauses):
        for a, pos, b in _CLAUSE_ARCS:
            arcs.append((_clause_state(i, a), f"X_{phi.index(clause[pos])}", _clause_state(i, b)))
    return arcs


def _basic_arcs(phi: CnfInstance) -> list[Arc]:
    arcs: list[Arc] = [("s0", KEY_EVENT, "s1"), ("s0", "h", KEY_STATE)]
    for i in range(phi.m):
        arcs += [
            ("s0", f"r_{i}", _clause_state(i, 0)),
            ("s1", f"r_{i}", _clause_state(i, 8)),
            (KEY_STATE, f"h_{i}", _clause_state(i, 5)),
            (_clause_state(i, 0), KEY_EVENT, _clause_state(i, 8)),
        ]
    return arcs + _variable_arcs(phi)


def _extended_arcs(phi: CnfInstance) -> list[Arc]:
    arcs = _basic_arcs(phi)
    arcs += [(t, "x" + e[1:], s) for s, e, t in _variable_arcs(phi)]
    arcs += [
        ("m0", KEY_EVENT, "m1"), ("m0", "c", "m3"), ("m0", "u", "m4"), ("m1", "v", "m2"),
        ("m3", KEY_EVENT, "m2"), ("m3", "h", "m4"), ("s0", "a", "m0"),
    ]
    for i in range(phi.m):
        p = [f"p_{i}_{n}" for n in range(4)]
        arcs += [
            (p[0], "v", p[1]), (p[0], f"h_{i}", p[3]), (p[1], f"b_{i}", p[2]), (p[2], "u", p[3]),
            ("s0", f"a_{i}", p[0]),
        ]
    return arcs


def basic_ts(phi: CnfInstance) -> TransitionSystem:
    return TransitionSystem.build("s0", _basic_arcs(phi), name="basic")


def extended_ts(phi: CnfInstance) -> TransitionSystem:
    return TransitionSystem.build("s0", _extended_arcs(phi), name="extended")


def loop_enhanced_ts(phi: CnfInstance) -> TransitionSystem:
    arcs = _extended_arcs(phi)
    loops = list(dict.fromkeys((t, e, t) for _, e, t in arcs))
    return TransitionSystem.build("s0", arcs + loops, name="loop_enhanced")


def build_direct_ts(phi: CnfInstance, tau: Iterable[Interaction]) -> tuple[TransitionSystem, str, str]:
    """The system for ``tau`` with its key event and key state."""
    family = direct_family(tau)
    ts = loop_enhanced_ts(phi) if family == "setres" else basic_ts(phi)
    return ts, KEY_EVENT, KEY_STATE


def direct_witness(phi: CnfInstance, tau: Iterable[Interaction], model: Iterable[str]) -> Region:
    """A region of :func:`build_direct_ts` inhibiting ``k`` at ``q``, built from a model."""
    tau = frozenset(tau)
    family = direct_family(tau)
    model = frozenset(model)
    if not phi.is_model(model):
        raise NotAModel(f"{sorted(model)} is not a one-in-three model")
    ts, _, _ = build_direct_ts(phi, tau)
    chosen = {f"X_{phi.index(v)}" for v in model}
    support = {"s0"} | {s for s, e, t in _basic_arcs(phi) if e in chosen}

    if family == "inp":
        fixed = {KEY_EVENT: INP, **{e: INP for e in chosen}}
    elif family == "out":
        # the mirrored witness of the mirrored type
        return mirror_region(direct_witness(phi, mirror_type(tau), model))
    elif USED in tau:
        support |= {"s1", "m0", "m1", "m2", "m3"} | {_clause_state(i, 8) for i in range(phi.m)}
        fixed = {KEY_EVENT: USED, **{e: RES for e in chosen}, **{"x" + e[1:]: SET for e in chosen}}
    else:
        support |= {"s1", "m0", "m1", "m2", "m3"} | {_clause_state(i, 8) for i in range(phi.m)}
        support = set(ts.states) - support
        fixed = {KEY_EVENT: FREE, **{e: SET for e in chosen}, **{"x" + e[1:]: RES for e in chosen}}
    sup = {s: int(s in support) for s in ts.states}
    region = region_from_support(ts, tau, sup, fixed)
    if region is None:
        raise AssertionError("the model-derived support admits no region")
    return region


__all__ = [
    "KEY_EVENT", "KEY_STATE", "direct_family", "basic_ts", "extended_ts", "loop_enhanced_ts",
    "build_direct_ts", "direct_witness",
]
