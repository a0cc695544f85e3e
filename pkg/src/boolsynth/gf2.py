"""Linear systems over GF(2) with rows packed into Python integers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence


@dataclass
class Gf2System:
    """Equations ``sum(coeff_i * x_i) = rhs``; bit ``i`` of a row refers to ``variables[i]``."""

    variables: list[str]
    rows: list[tuple[int, int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.index = {v: i for i, v in enumerate(self.variables)}
        if len(self.index) != len(self.variables):
            raise ValueError("duplicate variable")
        for coeffs, _ in self.rows:
            self._check(coeffs)

    def _check(self, coeffs: int) -> None:
        if coeffs < 0 or coeffs >> len(self.variables):
            raise ValueError("row refers to a variable outside the system")

    def add_row(self, coeffs: int, rhs: int) -> None:
        self._check(coeffs)
        self.rows.append((coeffs, rhs & 1))

    def add_equation(self, names: Iterable[str], rhs: int) -> None:
        """Add ``sum of names = rhs``; repeated names cancel."""
        coeffs = 0
        for v in names:
            coeffs ^= 1 << self.index[v]
        self.add_row(coeffs, rhs)

    def vector(self, values: Mapping[str, int]) -> int:
        code = 0
        for v, bit in values.items():
            if bit & 1:
                code |= 1 << self.index[v]
        return code

    def copy(self) -> "Gf2System":
        return Gf2System(list(self.variables), list(self.rows))

    def satisfied_by(self, assignment: Mapping[str, int]) -> bool:
        x = self.vector(assignment)
        return all(parity(coeffs & x) == rhs for coeffs, rhs in self.rows)


def parity(x: int) -> int:
    return bin(x).count("1") & 1


def solve_rows(rows: Sequence[tuple[int, int]], n: int) -> Optional[int]:
    """Gauss-Jordan elimination; returns the solution with free variables set to 0."""
    pivots: list[tuple[int, int, int]] = []  # (pivot bit, row, rhs)
    for coeffs, rhs in rows:
        for bit, prow, prhs in pivots:
            if coeffs >> bit & 1:
                coeffs ^= prow
                rhs ^= prhs
        if coeffs == 0:
            if rhs:
                return None
            continue
        bit = coeffs.bit_length() - 1
        # keep earlier pivot rows reduced with respect to the new pivot
        pivots = [
            (b, r ^ coeffs, h ^ rhs) if r >> bit & 1 else (b, r, h) for b, r, h in pivots
        ]
        pivots.append((bit, coeffs, rhs))
    x = 0
    for bit, _, rhs in pivots:
        if rhs:
            x |= 1 << bit
    return x


def solve_gf2(system: Gf2System) -> Optional[dict[str, int]]:
    """One solution of ``system`` as a variable assignment, or None when inconsistent."""
    x = solve_rows(system.rows, len(system.variables))
    if x is None:
        return None
    return {v: x >> i & 1 for i, v in enumerate(system.variables)}
