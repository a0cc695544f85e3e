"""Complexity of synthesis for every type of nets that contains nop."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable, Optional

from .interactions import (
    FREE, INP, NOP, OUT, RES, SET, SWAP, USED, Interaction, mirror_type,
)


class ComplexityClass(str, Enum):
    POLY_TIME = "PolyTime"
    NP_COMPLETE = "NPComplete"
    OPEN = "Open"
    OUT_OF_SCOPE = "OutOfScopeNopFree"


@dataclass(frozen=True)
class Classification:
    complexity: ComplexityClass
    source: Optional[str] = None  # what settles the type
    note: Optional[str] = None

    def describe(self) -> str:
        label = {
            ComplexityClass.POLY_TIME: "polynomial time",
            ComplexityClass.NP_COMPLETE: "NP-complete",
            ComplexityClass.OPEN: "open",
            ComplexityClass.OUT_OF_SCOPE: "out of scope (nop-free type)",
        }[self.complexity]
        text = f"{label} ({self.source})" if self.source else label
        if self.note:
            text += f" [{self.note}]"
        return text


GENERAL_INPUT_NOTE = "NP-hardness shown for general transition systems, not for modest ones"


def _subsets(items: Iterable[Interaction]) -> list[frozenset[Interaction]]:
    items = list(items)
    return [frozenset(c) for r in range(len(items) + 1) for c in combinations(items, r)]


def _fs(*items: Interaction) -> frozenset[Interaction]:
    return frozenset(items)


UF = _fs(USED, FREE)


def _condition1(tau: frozenset[Interaction]) -> bool:
    bases = (_fs(NOP, INP, OUT), _fs(NOP, INP, RES, SWAP), _fs(NOP, OUT, SET, SWAP))
    return any(base <= tau and tau - base <= UF for base in bases)


def _condition2(tau: frozenset[Interaction]) -> bool:
    return _fs(NOP, INP, SET) <= tau or _fs(NOP, OUT, RES) <= tau


def _condition3(tau: frozenset[Interaction]) -> bool:
    bases = (_fs(NOP, SET, SWAP), _fs(NOP, RES, SWAP), _fs(NOP, SET, RES, SWAP))
    return any(base <= tau and tau - base and tau - base <= UF for base in bases)


def modest_hardness_conditions(tau: frozenset[Interaction]) -> set[int]:
    """The hardness conditions for modest inputs met by ``tau``, numbered 1 to 3."""
    checks = (_condition1, _condition2, _condition3)
    return {n for n, check in enumerate(checks, start=1) if check(tau)}


DIRECT_REDUCTION_TYPES: tuple[frozenset[Interaction], ...] = (
    _fs(NOP, INP, FREE),
    _fs(NOP, INP, USED, FREE),
    _fs(NOP, OUT, USED),
    _fs(NOP, OUT, USED, FREE),
    _fs(NOP, SET, RES, USED),
    _fs(NOP, SET, RES, FREE),
    _fs(NOP, SET, RES, USED, FREE),
)
GENERAL_INPUT_ONLY = frozenset(t for t in DIRECT_REDUCTION_TYPES if _fs(SET, RES) <= t)


def polytime_schema(tau: frozenset[Interaction]) -> Optional[str]:
    """The tractable family of ``tau``: ``set``, ``res``, ``swap`` or ``nop``."""
    if NOP not in tau:
        return None
    rest = tau - {NOP}
    if SET in rest and rest - {SET} <= _fs(OUT, USED, FREE):
        return "set"
    if RES in rest and rest - {RES} <= _fs(INP, USED, FREE):
        return "res"
    if SWAP in rest and rest - {SWAP} <= _fs(INP, OUT, USED, FREE):
        return "swap"
    if rest <= UF:
        return "nop"
    return None


FAMILY_ALGORITHM = {
    "res": "support growing",
    "set": "mirrored support growing",
    "swap": "GF(2) chord equations",
    "nop": "constant supports",
}

OPEN_TYPES: tuple[frozenset[Interaction], ...] = (
    _fs(NOP, INP),
    _fs(NOP, INP, USED),
    _fs(NOP, OUT),
    _fs(NOP, OUT, FREE),
    _fs(NOP, SET, RES),
) + tuple(_fs(NOP, SWAP) | s for s in _subsets((SET, RES)) if s)


def classify_type(tau: Iterable[Interaction]) -> Classification:
    tau = frozenset(tau)
    if NOP not in tau:
        return Classification(ComplexityClass.OUT_OF_SCOPE)
    if polytime_schema(tau) is not None:
        return Classification(ComplexityClass.POLY_TIME, FAMILY_ALGORITHM[polytime_schema(tau)])
    conds = modest_hardness_conditions(tau)
    if conds:
        return Classification(ComplexityClass.NP_COMPLETE, f"modest inputs, condition {min(conds)}")
    if tau in DIRECT_REDUCTION_TYPES or mirror_type(tau) in DIRECT_REDUCTION_TYPES:
        note = GENERAL_INPUT_NOTE if tau in GENERAL_INPUT_ONLY else None
        return Classification(ComplexityClass.NP_COMPLETE, "direct one-in-three reduction", note)
    if tau in OPEN_TYPES:
        return Classification(ComplexityClass.OPEN)
    raise AssertionError(f"type {sorted(i.value for i in tau)} escapes the classification")
