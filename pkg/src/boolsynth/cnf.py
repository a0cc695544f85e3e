"""Cubic monotone 3-CNF instances and one-in-three satisfiability by enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

MAX_BRUTEFORCE_VARIABLES = 25


class CnfError(ValueError):
    pass


class VariableArity(CnfError):
    def __init__(self, variable: str, count: int):
        self.variable = variable
        self.count = count
        super().__init__(f"VariableArity({variable}, {count})")


class ClauseArity(CnfError):
    def __init__(self, index: int, size: int):
        self.index = index
        self.size = size
        super().__init__(f"ClauseArity(clause {index} has {size} literals)")


class DuplicateVarInClause(CnfError):
    def __init__(self, index: int, variable: str):
        self.index = index
        self.variable = variable
        super().__init__(f"DuplicateVarInClause(clause {index}, {variable})")


class TooLarge(CnfError):
    pass


class NotAModel(ValueError):
    pass


@dataclass(frozen=True)
class CnfInstance:
    """Clauses are ordered triples; variables are listed in order of first appearance."""

    variables: tuple[str, ...]
    clauses: tuple[tuple[str, str, str], ...]

    @property
    def m(self) -> int:
        return len(self.clauses)

    def index(self, variable: str) -> int:
        return self.variables.index(variable)

    def is_model(self, model: Iterable[str]) -> bool:
        chosen = set(model)
        return chosen <= set(self.variables) and all(
            sum(v in chosen for v in clause) == 1 for clause in self.clauses
        )


def validate_cnf(clauses: Iterable[Sequence[str]]) -> CnfInstance:
    """Check the monotone cubic shape: three distinct variables per clause, three clauses per variable."""
    checked: list[tuple[str, str, str]] = []
    counts: dict[str, int] = {}
    for i, clause in enumerate(clauses):
        clause = tuple(clause)
        if len(clause) != 3:
            raise ClauseArity(i, len(clause))
        seen: set[str] = set()
        for v in clause:
            if v in seen:
                raise DuplicateVarInClause(i, v)
            seen.add(v)
            counts[v] = counts.get(v, 0) + 1
        checked.append(clause)  # type: ignore[arg-type]
    for v, c in counts.items():
        if c != 3:
            raise VariableArity(v, c)
    return CnfInstance(tuple(counts), tuple(checked))


def one_in_three_bruteforce(phi: CnfInstance) -> Optional[frozenset[str]]:
    """The lexicographically first one-in-three model, or None.

    Models are compared as membership vectors in variable order with "included"
    ranking first, so the search tries including each variable before excluding it.
    """
    n = len(phi.variables)
    if n > MAX_BRUTEFORCE_VARIABLES:
        raise TooLarge(f"{n} variables exceed the enumeration limit of {MAX_BRUTEFORCE_VARIABLES}")
    pos = {v: i for i, v in enumerate(phi.variables)}
    touching: list[list[tuple[int, ...]]] = [[] for _ in range(n)]
    for clause in phi.clauses:
        idx = tuple(pos[v] for v in clause)
        for j in idx:
            touching[j].append(idx)
    bits = [0] * n

    def consistent(i: int) -> bool:
        # a clause may hold at most one chosen variable, and exactly one once fully decided
        for clause in touching[i]:
            chosen = sum(bits[j] for j in clause if j <= i)
            if chosen > 1 or (chosen == 0 and max(clause) <= i):
                return False
        return True

    def search(i: int) -> bool:
        if i == n:
            return True
        for b in (1, 0):
            bits[i] = b
            if consistent(i) and search(i + 1):
                return True
        bits[i] = 0
        return False

    if not search(0):
        return None
    return frozenset(v for v, b in zip(phi.variables, bits) if b)
