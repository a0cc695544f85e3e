"""Building boolean nets from regions and checking them against their input."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .feasibility import Budget, FeasibilityReport, decide_feasibility
from .interactions import Interaction
from .nets import BooleanNet, CapExceeded, check_isomorphic, state_graph
from .regions import Atom, Region
from .ts import TransitionSystem


@dataclass
class SynthesisResult:
    net: Optional[BooleanNet]
    regions: list[Region] = field(default_factory=list)
    verified: bool = False
    report: Optional[FeasibilityReport] = None

    @property
    def feasible(self) -> bool:
        return self.net is not None

    @property
    def unsolved(self) -> list[Atom]:
        return [] if self.report is None else self.report.unsolved


def net_from_regions(ts: TransitionSystem, regions: Iterable[Region], name: Optional[str] = None) -> BooleanNet:
    """Places ``r0, r1, ...`` for the distinct regions, in the given order."""
    unique: list[Region] = []
    seen = set()
    for r in regions:
        key = r.key(ts)
        if key not in seen:
            seen.add(key)
            unique.append(r)
    places = [f"r{i}" for i in range(len(unique))]
    flow = {(p, e): r.sig[e] for p, r in zip(places, unique) for e in ts.events}
    marking = [p for p, r in zip(places, unique) if r.sup[ts.initial] == 1]
    return BooleanNet.build(places, ts.events, marking, flow, name or ts.name)


def verify_net(ts: TransitionSystem, net: BooleanNet) -> bool:
    """True iff the reachability graph of ``net`` is isomorphic to ``ts``."""
    try:
        graph = state_graph(net, cap=max(len(ts.states), 1))
    except CapExceeded:
        return False
    return check_isomorphic(graph, ts) is not None


def synthesize(
    ts: TransitionSystem,
    tau: Iterable[Interaction],
    strategy: str = "auto",
    budget: Budget = Budget(),
    jobs: int = 1,
    verify: bool = True,
) -> SynthesisResult:
    report = decide_feasibility(ts, tau, strategy, budget, jobs=jobs)
    if not report.feasible:
        return SynthesisResult(None, report=report)
    net = net_from_regions(ts, report.regions)
    verified = verify_net(ts, net) if verify else False
    return SynthesisResult(net, list(report.regions), verified, report)
