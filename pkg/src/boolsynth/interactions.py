"""The eight boolean interactions and types of nets built from them."""

from __future__ import annotations

from enum import Enum
from itertools import combinations
from typing import Iterable, Iterator, Optional


class Interaction(str, Enum):
    NOP = "nop"
    INP = "inp"
    OUT = "out"
    SET = "set"
    RES = "res"
    SWAP = "swap"
    USED = "used"
    FREE = "free"

    def __str__(self) -> str:
        return self.value

    def apply(self, bit: int) -> Optional[int]:
        return _TABLE[self][bit]

    def allowed_pairs(self) -> tuple[tuple[int, int], ...]:
        """(source, target) support pairs this interaction accepts on an arc."""
        return tuple((b, r) for b, r in enumerate(_TABLE[self]) if r is not None)

    @property
    def mirror(self) -> "Interaction":
        return _MIRROR[self]


NOP, INP, OUT, SET, RES, SWAP, USED, FREE = tuple(Interaction)
ALL_INTERACTIONS: tuple[Interaction, ...] = tuple(Interaction)

# value on input 0, value on input 1; None marks an undefined cell
_TABLE: dict[Interaction, tuple[Optional[int], Optional[int]]] = {
    NOP: (0, 1),
    INP: (None, 0),
    OUT: (1, None),
    SET: (1, 1),
    RES: (0, 0),
    SWAP: (1, 0),
    USED: (None, 1),
    FREE: (0, None),
}

_MIRROR = {NOP: NOP, SWAP: SWAP, INP: OUT, OUT: INP, SET: RES, RES: SET, USED: FREE, FREE: USED}

ENTER = frozenset({OUT, SET, SWAP})
EXIT = frozenset({INP, RES, SWAP})
KEEP_PLUS = frozenset({NOP, SET, USED})
KEEP_MINUS = frozenset({NOP, RES, FREE})

# interactions that are undefined on some input, i.e. able to inhibit an event
INHIBITORS = frozenset(i for i in ALL_INTERACTIONS if None in _TABLE[i])

NetType = frozenset  # frozenset[Interaction]


class EmptyType(ValueError):
    pass


def apply_interaction(i: Interaction, bit: int) -> Optional[int]:
    return _TABLE[Interaction(i)][bit]


def inhibiting_value(i: Interaction) -> Optional[int]:
    """The support value at which ``i`` is undefined, or None for total interactions."""
    cells = _TABLE[i]
    if cells[0] is None:
        return 0
    if cells[1] is None:
        return 1
    return None


def mirror_type(tau: Iterable[Interaction]) -> frozenset[Interaction]:
    return frozenset(_MIRROR[Interaction(i)] for i in tau)


def parse_type(text: str) -> frozenset[Interaction]:
    """Parse a comma separated interaction list such as ``nop,inp,out``."""
    names = [part.strip() for part in text.split(",") if part.strip()]
    if not names:
        raise ValueError("empty type")
    members = []
    for name in names:
        try:
            members.append(Interaction(name.lower()))
        except ValueError:
            raise ValueError(f"unknown interaction {name!r}") from None
    if len(set(members)) != len(members):
        raise ValueError(f"duplicate interaction in type {text!r}")
    return frozenset(members)


def format_type(tau: Iterable[Interaction]) -> str:
    members = set(tau)
    return ",".join(i.value for i in ALL_INTERACTIONS if i in members)


def sorted_type(tau: Iterable[Interaction]) -> list[Interaction]:
    members = set(tau)
    return [i for i in ALL_INTERACTIONS if i in members]


def all_types(with_nop: Optional[bool] = None) -> Iterator[frozenset[Interaction]]:
    """All 256 subsets of the interactions, in a fixed order."""
    for size in range(len(ALL_INTERACTIONS) + 1):
        for combo in combinations(ALL_INTERACTIONS, size):
            tau = frozenset(combo)
            if with_nop is None or (NOP in tau) == with_nop:
                yield tau


def type_template(tau: Iterable[Interaction]) -> list[tuple[int, Interaction, int]]:
    """The arcs of the two-state template of ``tau``: one arc per defined cell."""
    members = sorted_type(tau)
    if not members:
        raise EmptyType("empty type has no template")
    return [(b, i, r) for i in members for b, r in i.allowed_pairs()]
