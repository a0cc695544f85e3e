"""Complete backtracking search over signatures, the reference decision procedure.

Fixing the signature of an event turns each of its arcs into parity constraints
between the support bits of the arc's endpoints, or between one endpoint and the
constant 0. Such constraints are decided exactly by a union-find structure that
tracks parities, so the search only branches on signatures.
"""

from __future__ import annotations

import time
from typing import Iterable, Iterator, Optional

from .interactions import INHIBITORS, NOP, Interaction, inhibiting_value
from .regions import NEUTRAL_ORDER, TARGET_ORDER, Atom, Region
from .ts import TransitionSystem

DEFAULT_NODE_BUDGET = 10_000_000
DEFAULT_TIME_BUDGET = 600.0


class BudgetExceeded(RuntimeError):
    def __init__(self, nodes: int, seconds: float):
        self.nodes = nodes
        self.seconds = seconds
        super().__init__(f"search budget exceeded after {nodes} nodes, {seconds:.1f} s")


Equation = tuple[int, int, int]  # x_a + x_b = c over GF(2)


def _arc_equations(inter: Interaction, s: int, t: int, zero: int) -> list[Equation]:
    pairs = inter.allowed_pairs()
    if len(pairs) == 2:
        (a0, b0), (a1, b1) = pairs
        if a0 != a1 and b0 != b1:
            return [(s, t, a0 ^ b0)]
        if a0 == a1:
            return [(s, zero, a0)]
        return [(t, zero, b0)]
    ((a, b),) = pairs
    return [(s, zero, a), (t, zero, b)]


class ParityUnionFind:
    """Union by rank without path compression, so every union can be undone."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.parity = [0] * n
        self.rank = [0] * n
        self.log: list[tuple[int, int, bool]] = []

    def find(self, x: int) -> tuple[int, int]:
        p = 0
        parent = self.parent
        while parent[x] != x:
            p ^= self.parity[x]
            x = parent[x]
        return x, p

    def union(self, a: int, b: int, c: int) -> bool:
        ra, pa = self.find(a)
        rb, pb = self.find(b)
        if ra == rb:
            return (pa ^ pb) == c
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        bump = self.rank[ra] == self.rank[rb]
        self.parent[rb] = ra
        self.parity[rb] = pa ^ pb ^ c
        if bump:
            self.rank[ra] += 1
        self.log.append((rb, ra, bump))
        return True

    def apply(self, equations: list[Equation]) -> bool:
        for a, b, c in equations:
            if not self.union(a, b, c):
                return False
        return True

    def undo(self, mark: int) -> None:
        log = self.log
        while len(log) > mark:
            rb, ra, bump = log.pop()
            self.parent[rb] = rb
            self.parity[rb] = 0
            if bump:
                self.rank[ra] -= 1


class SignatureSearch:
    """Exhaustive search for a region satisfying one atom.

    Branches on the event with the fewest signatures still consistent with the
    constraints fixed so far.
    """

    def __init__(
        self,
        ts: TransitionSystem,
        tau: Iterable[Interaction],
        max_nodes: int = DEFAULT_NODE_BUDGET,
        max_seconds: float = DEFAULT_TIME_BUDGET,
    ):
        self.ts = ts
        self.tau = frozenset(tau)
        if NOP not in self.tau:
            raise ValueError("the search expects nop in the type")
        self.max_nodes = max_nodes
        self.max_seconds = max_seconds
        self.nodes = 0
        n = len(ts.states)
        self.zero = n
        index = ts.state_index
        self.order = [i for i in NEUTRAL_ORDER if i in self.tau]
        self.equations: dict[str, dict[Interaction, list[Equation]]] = {}
        for e in ts.events:
            arcs = [(index[s], index[t]) for s, t in ts.arcs_by_event[e]]
            self.equations[e] = {
                i: [eq for s, t in arcs for eq in _arc_equations(i, s, t, n)] for i in self.order
            }
        self.active = [e for e in ts.events if ts.arcs_by_event[e]]

    def _check_budget(self) -> None:
        self.nodes += 1
        if self.nodes > self.max_nodes or (
            self.nodes % 1024 == 0 and time.monotonic() - self.started > self.max_seconds
        ):
            raise BudgetExceeded(self.nodes, time.monotonic() - self.started)

    def _setup(self, atom: Optional[Atom]) -> tuple[ParityUnionFind, dict[str, list[tuple[Interaction, list[Equation]]]]]:
        uf = ParityUnionFind(len(self.ts.states) + 1)
        domains = {e: [(i, self.equations[e][i]) for i in self.order] for e in self.ts.events}
        if atom is not None and atom.kind == "SSP":
            index = self.ts.state_index
            uf.union(index[atom.first], index[atom.second], 1)
        elif atom is not None:
            e, s = atom.first, self.ts.state_index[atom.second]
            domains[e] = [
                (i, [(s, self.zero, inhibiting_value(i))] + self.equations[e][i])
                for i in TARGET_ORDER
                if i in self.tau and i in INHIBITORS
            ]
        return uf, domains

    def _solutions(self, atom: Optional[Atom]) -> Iterator[Region]:
        self.started = time.monotonic()
        self.nodes = 0
        uf, domains = self._setup(atom)
        pending = list(self.active)
        if atom is not None and atom.kind == "ESSP" and atom.first not in pending:
            pending.append(atom.first)
        chosen: dict[str, Interaction] = {}
        yield from self._search(uf, domains, pending, chosen)

    def _search(self, uf, domains, pending, chosen) -> Iterator[Region]:
        self._check_budget()
        if not pending:
            yield self._region(uf, domains, chosen)
            return
        best = None
        best_options: list = []
        for e in pending:
            options = []
            for inter, eqs in domains[e]:
                mark = len(uf.log)
                if uf.apply(eqs):
                    options.append((inter, eqs))
                uf.undo(mark)
            if best is None or len(options) < len(best_options):
                best, best_options = e, options
                if not options:
                    return
        rest = [e for e in pending if e != best]
        for inter, eqs in best_options:
            mark = len(uf.log)
            uf.apply(eqs)
            chosen[best] = inter
            yield from self._search(uf, domains, rest, chosen)
            del chosen[best]
            uf.undo(mark)

    def _region(self, uf: ParityUnionFind, domains, chosen: dict[str, Interaction]) -> Region:
        zero_root, zero_parity = uf.find(self.zero)
        sup = {}
        for s in self.ts.states:
            root, p = uf.find(self.ts.state_index[s])
            # components not tied to the constant take the value 0 at their root
            sup[s] = p ^ zero_parity if root == zero_root else p
        sig = {}
        for e in self.ts.events:
            sig[e] = chosen[e] if e in chosen else domains[e][0][0]
        return Region(sup, sig)

    def solve(self, atom: Atom) -> Optional[Region]:
        """A region satisfying ``atom``, or None; raises BudgetExceeded when out of budget."""
        return next(self._solutions(atom), None)

    def iter_regions(self, atom: Optional[Atom] = None) -> Iterator[Region]:
        """One region per consistent signature assignment of the events that have arcs."""
        return self._solutions(atom)


def solve_atom_oracle(
    ts: TransitionSystem,
    tau: Iterable[Interaction],
    atom: Atom,
    max_nodes: int = DEFAULT_NODE_BUDGET,
    max_seconds: float = DEFAULT_TIME_BUDGET,
) -> Optional[Region]:
    return SignatureSearch(ts, tau, max_nodes, max_seconds).solve(atom)
