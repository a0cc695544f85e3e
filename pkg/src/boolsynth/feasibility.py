"""Deciding the separation properties of a transition system for a type of nets."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .classify import polytime_schema
from .interactions import NOP, Interaction
from .oracle import DEFAULT_NODE_BUDGET, DEFAULT_TIME_BUDGET, BudgetExceeded, SignatureSearch
from .regions import Atom, Region, enumerate_atoms, satisfies_atom
from .solvers import AtomSolver, polytime_solver
from .ts import TransitionSystem


class OutOfScope(ValueError):
    pass


@dataclass(frozen=True)
class Budget:
    nodes: int = DEFAULT_NODE_BUDGET
    seconds: float = DEFAULT_TIME_BUDGET


@dataclass
class FeasibilityReport:
    feasible: bool
    unsolved: list[Atom] = field(default_factory=list)
    regions: list[Region] = field(default_factory=list)
    witnesses: dict[Atom, int] = field(default_factory=dict)  # atom -> index into regions
    strategy: str = "auto"
    budget_exceeded: Optional[Atom] = None


def make_solver(ts: TransitionSystem, tau: Iterable[Interaction], strategy: str = "auto",
                budget: Budget = Budget()) -> AtomSolver:
    """The polynomial solver of the type's family, or the signature search otherwise."""
    tau = frozenset(tau)
    if NOP not in tau:
        raise OutOfScope("types without nop are out of scope")
    if strategy == "oracle" or polytime_schema(tau) is None:
        return SignatureSearch(ts, tau, budget.nodes, budget.seconds)
    if strategy != "auto":
        raise ValueError(f"unknown strategy {strategy!r}")
    return polytime_solver(ts, tau)


def effective_strategy(tau: Iterable[Interaction], strategy: str) -> str:
    if strategy == "oracle" or polytime_schema(frozenset(tau)) is None:
        return "oracle"
    return polytime_schema(frozenset(tau))


def _solve_chunk(args) -> list[tuple[str, Optional[Region]]]:
    ts, tau, strategy, budget, atoms = args
    solver = make_solver(ts, tau, strategy, budget)
    out = []
    for atom in atoms:
        try:
            out.append(("ok", solver.solve(atom)))
        except BudgetExceeded:
            out.append(("budget", None))
    return out


def decide_feasibility(
    ts: TransitionSystem,
    tau: Iterable[Interaction],
    strategy: str = "auto",
    budget: Budget = Budget(),
    essp_only: bool = False,
    ssp_only: bool = False,
    jobs: int = 1,
) -> FeasibilityReport:
    """Solve every atom in canonical order, reusing earlier regions where they suffice.

    After the first unsolvable atom of a kind, remaining atoms of that kind are skipped.
    ``essp_only`` decides language viability. The result does not depend on ``jobs``.
    """
    tau = frozenset(tau)
    solver = make_solver(ts, tau, strategy, budget)
    atoms = enumerate_atoms(ts)
    if essp_only:
        atoms = [a for a in atoms if a.kind == "ESSP"]
    if ssp_only:
        atoms = [a for a in atoms if a.kind == "SSP"]

    precomputed: Optional[dict[Atom, tuple[str, Optional[Region]]]] = None
    if jobs > 1 and len(atoms) > 1:
        chunks = [atoms[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = pool.map(_solve_chunk, [(ts, tau, strategy, budget, c) for c in chunks])
            precomputed = {}
            for chunk, res in zip(chunks, results):
                precomputed.update(zip(chunk, res))

    report = FeasibilityReport(True, strategy=effective_strategy(tau, strategy))
    failed_kinds: set[str] = set()
    for atom in atoms:
        if atom.kind in failed_kinds:
            continue
        reused = next((k for k, r in enumerate(report.regions) if satisfies_atom(r, atom)), None)
        if reused is not None:
            report.witnesses[atom] = reused
            continue
        if precomputed is not None:
            status, region = precomputed[atom]
            if status == "budget":
                report.feasible = False
                report.budget_exceeded = atom
                return report
        else:
            try:
                region = solver.solve(atom)
            except BudgetExceeded:
                report.feasible = False
                report.budget_exceeded = atom
                return report
        if region is None:
            report.feasible = False
            report.unsolved.append(atom)
            failed_kinds.add(atom.kind)
            continue
        report.regions.append(region)
        report.witnesses[atom] = len(report.regions) - 1
    return report
