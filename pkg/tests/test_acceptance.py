"""Acceptance suite: one test and one printed verdict line per criterion.

Criteria 3 and 4 ask for every system with at most four states and three events.
The four-state, three-event class holds 23,846,125 canonical tables, far beyond a
ten-minute budget for a Python oracle on one core. By default the suite covers all
smaller classes exhaustively plus a seeded sample of that class, checks exactness
on this scope, and reports the full criterion as failed. Setting
``BOOLSYNTH_FULL_ENUMERATION=1`` runs the complete class instead (hours).
"""

from __future__ import annotations

import os
import random
import subprocess
import sys
import time
from functools import lru_cache
from itertools import combinations, product

import pytest

from acceptance_log import record
from enumeration import exhaustive, random_reduced_ts, random_tables, to_ts
from boolsynth.classify import ComplexityClass, classify_type, modest_hardness_conditions
from boolsynth.cnf import one_in_three_bruteforce, validate_cnf
from boolsynth.direct import build_direct_ts, direct_witness
from boolsynth.feasibility import decide_feasibility
from boolsynth.interactions import (
    ALL_INTERACTIONS, FREE, INP, NOP, OUT, RES, SET, SWAP, USED, all_types, apply_interaction, mirror_type,
)
from boolsynth.oracle import SignatureSearch
from boolsynth.parity import ParityMethod, build_chord_system
from boolsynth.regions import (
    Atom, enumerate_atoms, enumerate_regions, grow_support, satisfies_atom, signature_candidates, validate_region,
)
from boolsynth.scheme import (
    Switch, build_reduction, combine_witness, generator_property_holds, generator_template, model_from_region,
)
from boolsynth.solvers import SupportGrowing
from boolsynth.synthesis import synthesize
from boolsynth.ts import modesty

FULL = os.environ.get("BOOLSYNTH_FULL_ENUMERATION") == "1"
SAMPLE_4X3 = 10_000
SAMPLE_SEED = 2024

PHI3 = validate_cnf([("x", "y", "z")] * 3)
PHI4 = validate_cnf([("a", "b", "c"), ("a", "b", "d"), ("a", "c", "d"), ("b", "c", "d")])
PHI6 = validate_cnf([
    ("X0", "X1", "X2"), ("X2", "X0", "X3"), ("X1", "X3", "X0"),
    ("X2", "X4", "X5"), ("X1", "X5", "X4"), ("X4", "X3", "X5"),
])


def _subsets(items):
    return [frozenset(c) for r in range(len(items) + 1) for c in combinations(items, r)]


RES_TYPES = [frozenset({NOP, RES}) | w for w in _subsets((INP, USED, FREE))]
SWAP_TYPES = [frozenset({NOP, SWAP}) | w for w in _subsets((INP, OUT, USED, FREE))]
TRIVIAL_TYPES = [frozenset({NOP}) | w for w in _subsets((USED, FREE))]
POLY_TYPES = [t for t in all_types(with_nop=True) if classify_type(t).complexity == ComplexityClass.POLY_TIME]


@lru_cache(maxsize=None)
def family_scope():
    """(states, events, tables) groups checked by criteria 3 and 4."""
    groups = [(n, k, exhaustive(n, k)) for n in range(1, 4) for k in range(1, 4)]
    groups += [(4, k, exhaustive(4, k)) for k in (1, 2)]
    groups.append((4, 3, exhaustive(4, 3) if FULL else random_tables(4, 3, SAMPLE_4X3, SAMPLE_SEED)))
    return tuple(groups)


def _scope_text():
    exhaustive_count = sum(len(t) for n, k, t in family_scope() if (n, k) != (4, 3))
    sample = len(family_scope()[-1][2])
    kind = "exhaustive" if FULL else f"seeded sample (seed {SAMPLE_SEED})"
    return f"{exhaustive_count} systems exhaustive up to 3x3 and 4x2, {sample} of 4x3 {kind}"


def _scope_systems():
    for n, k, tables in family_scope():
        for table in tables:
            yield to_ts(table, n, k)


def _valid_supports(ts, tau):
    supports = []
    for bits in product((0, 1), repeat=len(ts.states)):
        sup = dict(zip(ts.states, bits))
        if all(signature_candidates(ts, tau, sup, e) for e in ts.events):
            supports.append(frozenset(s for s, b in sup.items() if b))
    return supports


@lru_cache(maxsize=None)
def res_family_run():
    stats = {"systems": 0, "atoms": 0, "mismatch": [], "minimality": [], "feasible": []}
    for ts in _scope_systems():
        stats["systems"] += 1
        atoms = enumerate_atoms(ts)
        queries = [q for q in _subsets(ts.states) if q]
        for tau in RES_TYPES:
            oracle, fast = SignatureSearch(ts, tau), SupportGrowing(ts, tau)
            feasible = True
            for atom in atoms:
                stats["atoms"] += 1
                expected = oracle.solve(atom) is not None
                region = fast.solve(atom)
                ok = (region is not None) == expected
                if region is not None:
                    ok = ok and satisfies_atom(region, atom) and not validate_region(ts, tau, region)
                if not ok:
                    stats["mismatch"].append((ts.arcs, tau, atom))
                feasible = feasible and expected
            if feasible:
                stats["feasible"].append((ts, tau))
            supports = _valid_supports(ts, tau)
            for q in queries:
                grown = grow_support(ts, q)
                if any(q <= s and not grown <= s for s in supports):
                    stats["minimality"].append((ts.arcs, tau, q))
    return stats


def _abstract_value(interaction):
    # the value change an interaction forces in this family: 1 for inp, out and swap
    return int(interaction in (INP, OUT, SWAP))


@lru_cache(maxsize=None)
def swap_family_run():
    stats = {"systems": 0, "atoms": 0, "mismatch": [], "chords": [], "feasible": []}
    for ts in _scope_systems():
        stats["systems"] += 1
        atoms = enumerate_atoms(ts)
        for tau in SWAP_TYPES:
            oracle, fast = SignatureSearch(ts, tau), ParityMethod(ts, tau)
            chords = build_chord_system(fast.idx)
            feasible = True
            for atom in atoms:
                stats["atoms"] += 1
                expected = oracle.solve(atom) is not None
                region = fast.solve(atom)
                ok = (region is not None) == expected
                if region is not None:
                    ok = ok and satisfies_atom(region, atom) and not validate_region(ts, tau, region)
                    rho = {e: _abstract_value(i) for e, i in region.sig.items()}
                    if not chords.satisfied_by(rho):
                        stats["chords"].append((ts.arcs, tau, atom))
                if not ok:
                    stats["mismatch"].append((ts.arcs, tau, atom))
                feasible = feasible and expected
            if feasible:
                stats["feasible"].append((ts, tau))
    return stats


@lru_cache(maxsize=None)
def trivial_family_run():
    rng = random.Random(5)
    systems = [random_reduced_ts(rng, 8) for _ in range(200)]
    wrong, feasible = [], []
    for ts in systems:
        for tau in TRIVIAL_TYPES:
            verdict = decide_feasibility(ts, tau).feasible
            if verdict != (len(ts.states) == 1):
                wrong.append((ts.arcs, tau))
            if verdict:
                feasible.append((ts, tau))
    return systems, wrong, feasible


# criteria -----------------------------------------------------------------

INTERACTION_TABLE = {
    NOP: (0, 1), INP: (None, 0), OUT: (1, None), SET: (1, 1),
    RES: (0, 0), SWAP: (1, 0), USED: (None, 1), FREE: (0, None),
}


def test_criterion_01_interaction_fidelity():
    start = time.perf_counter()
    cells = [(i, x) for i in ALL_INTERACTIONS for x in (0, 1)]
    wrong = [(i.value, x) for i, x in cells if apply_interaction(i, x) != INTERACTION_TABLE[i][x]]
    undefined = sum(apply_interaction(i, x) is None for i, x in cells)
    passed = not wrong and len(cells) == 16 and undefined == 4
    record(1, passed, f"{len(cells)} cells, {undefined} undefined, {len(wrong)} wrong", time.perf_counter() - start)
    assert passed, wrong


def test_criterion_02_classification_partition():
    start = time.perf_counter()
    counts = {}
    for tau in all_types(with_nop=True):
        c = classify_type(tau).complexity
        counts[c] = counts.get(c, 0) + 1
    conditions = [modest_hardness_conditions(t) for t in all_types(with_nop=True)]
    covered = sum(bool(c) for c in conditions)
    disjoint = all(len(c) <= 1 for c in conditions)
    mirror_closed = all(
        classify_type(t).complexity == classify_type(mirror_type(t)).complexity for t in all_types()
    )
    want = {ComplexityClass.NP_COMPLETE: 84, ComplexityClass.POLY_TIME: 36, ComplexityClass.OPEN: 8}
    passed = counts == want and covered == 77 and disjoint and mirror_closed
    detail = (f"NP {counts.get(ComplexityClass.NP_COMPLETE)}, poly {counts.get(ComplexityClass.POLY_TIME)}, "
              f"open {counts.get(ComplexityClass.OPEN)}; conditions cover {covered}, disjoint={disjoint}; "
              f"mirror closed={mirror_closed}")
    record(2, passed, detail, time.perf_counter() - start)
    assert passed


def _family_verdict(number, stats, extra_key, extra_label):
    exact = not stats["mismatch"] and not stats[extra_key]
    detail = (f"scope: {_scope_text()}; {stats['atoms']} atom checks, {len(stats['mismatch'])} verdict "
              f"mismatches, {len(stats[extra_key])} {extra_label}")
    if not FULL:
        detail += "; full 4x3 class not enumerated, criterion unmet as stated"
    return exact, detail


def test_criterion_03_support_growing_exactness():
    start = time.perf_counter()
    stats = res_family_run()
    exact, detail = _family_verdict(3, stats, "minimality", "minimality violations")
    record(3, exact and FULL, detail, time.perf_counter() - start)
    assert exact, (stats["mismatch"][:3], stats["minimality"][:3])
    if not FULL:
        pytest.xfail("exhaustive 4-state, 3-event class not covered; see module docstring")


def test_criterion_04_parity_exactness():
    start = time.perf_counter()
    stats = swap_family_run()
    exact, detail = _family_verdict(4, stats, "chords", "chord equation failures")
    record(4, exact and FULL, detail, time.perf_counter() - start)
    assert exact, (stats["mismatch"][:3], stats["chords"][:3])
    if not FULL:
        pytest.xfail("exhaustive 4-state, 3-event class not covered; see module docstring")


def test_criterion_05_trivial_family():
    start = time.perf_counter()
    systems, wrong, _ = trivial_family_run()
    singles = sum(len(ts.states) == 1 for ts in systems)
    passed = not wrong and len(systems) == 200
    record(5, passed, f"{len(systems)} random reduced systems ({singles} with one state) x "
                      f"{len(TRIVIAL_TYPES)} types, {len(wrong)} wrong verdicts", time.perf_counter() - start)
    assert passed, wrong[:3]


def test_criterion_06_synthesis_round_trip():
    start = time.perf_counter()
    instances = res_family_run()["feasible"] + swap_family_run()["feasible"] + trivial_family_run()[2]
    rng = random.Random(6)
    randoms = [random_reduced_ts(rng, 6) for _ in range(500)]
    failures, checked, from_random = [], 0, 0
    for ts, tau in instances:
        result = synthesize(ts, tau)
        checked += 1
        if not (result.feasible and result.verified):
            failures.append((ts.arcs, tau))
    for ts in randoms:
        for tau in POLY_TYPES:
            result = synthesize(ts, tau)
            if result.feasible:
                checked += 1
                from_random += 1
                if not result.verified:
                    failures.append((ts.arcs, tau))
    passed = not failures and len(POLY_TYPES) == 36
    record(6, passed, f"{checked} feasible instances ({len(instances)} from criteria 3-5, {from_random} from "
                      f"500 random systems x {len(POLY_TYPES)} types), {len(failures)} not isomorphic",
           time.perf_counter() - start)
    assert passed, failures[:3]


def test_criterion_07_reduction_census():
    start = time.perf_counter()
    reduction = build_reduction(PHI6, Switch.SIGMA4)
    components = len(reduction.union)
    modest = modesty(reduction.joined).modest
    last_connector = "__bot97" in reduction.joined.states and "__bot98" not in reduction.joined.states
    one, two = build_reduction(PHI6, Switch.SIGMA1).joined, build_reduction(PHI6, Switch.SIGMA2).joined
    identical = (one.states, one.events, one.arcs, one.initial) == (two.states, two.events, two.arcs, two.initial)
    heads = {
        (s.value, phi.m): len(build_reduction(phi, s).union.components[0].states)
        for s in (Switch.SIGMA1, Switch.SIGMA2, Switch.SIGMA3, Switch.SIGMA4) for phi in (PHI3, PHI6)
    }
    heads_ok = all(size == 42 * m for (_, m), size in heads.items())
    passed = components == 98 and modest and last_connector and identical and heads_ok
    record(7, passed, f"sigma4 components {components}, modest={modest}, last connector __bot97={last_connector}, "
                      f"sigma1==sigma2: {identical}, head 42m for all: {heads_ok}", time.perf_counter() - start)
    assert passed


def test_criterion_08_witness_validity():
    start = time.perf_counter()
    failures, checked = [], 0
    for phi in (PHI3, PHI6):
        model = one_in_three_bruteforce(phi)
        for sigma in Switch:
            reduction = build_reduction(phi, sigma)
            region = combine_witness(reduction, model)
            checked += 1
            valid = not validate_region(reduction.joined, reduction.tau, region)
            inhibits = apply_interaction(region.sig["k"], region.sup[reduction.key_state]) is None
            back = model_from_region(phi, region)
            if not (valid and inhibits and phi.is_model(back) and back == model):
                failures.append((sigma.value, phi.m))
    passed = not failures and checked == 12
    record(8, passed, f"{checked} witnesses (6 switches x 2 instances), {len(failures)} failures; models "
                      f"{sorted(one_in_three_bruteforce(PHI3))} and {sorted(one_in_three_bruteforce(PHI6))}",
           time.perf_counter() - start)
    assert passed, failures


def test_criterion_09_direct_reduction_equivalence():
    start = time.perf_counter()
    tau = frozenset({NOP, INP, FREE})
    pos_ts, k, q = build_direct_ts(PHI3, tau)
    atom = Atom.essp(k, q)
    positive = SignatureSearch(pos_ts, tau).solve(atom) is not None
    witness = direct_witness(PHI3, tau, one_in_three_bruteforce(PHI3))
    witness_ok = not validate_region(pos_ts, tau, witness) and satisfies_atom(witness, atom)
    shape_pos = (len(pos_ts.states), len(pos_ts.events)) == (30, 11)

    neg_ts, k, q = build_direct_ts(PHI4, tau)
    search = SignatureSearch(neg_ts, tau, max_nodes=10**7, max_seconds=600)
    negative = search.solve(Atom.essp(k, q)) is None
    shape_neg = (len(neg_ts.states), len(neg_ts.events)) == (39, 14)

    enumerated, not_models = 0, 0
    for region in SignatureSearch(pos_ts, tau).iter_regions(atom):
        enumerated += 1
        chosen = {v for v in PHI3.variables if region.sig[f"X_{PHI3.index(v)}"] != NOP}
        not_models += not PHI3.is_model(chosen)
    passed = positive and witness_ok and shape_pos and negative and shape_neg and not not_models
    record(9, passed, f"(a) 30x11 key atom solvable={positive}, witness valid={witness_ok}; (b) 39x14 key atom "
                      f"unsolvable={negative} after {search.nodes} nodes; {enumerated} enumerated key regions, "
                      f"{not_models} without a model", time.perf_counter() - start)
    assert passed


def test_criterion_10_generator_gadget():
    start = time.perf_counter()
    gadget = generator_template("a", "b")
    regions = list(enumerate_regions(gadget, ALL_INTERACTIONS))
    broken = [r for r in regions if not generator_property_holds(r, "a", "b")]
    keyed = {r.sig["k"] for r in regions} & {INP, OUT, USED, FREE}
    passed = not broken and keyed == {INP, OUT, USED, FREE}
    record(10, passed, f"{len(regions)} regions of the gadget, all four key signatures present={len(keyed) == 4}, "
                       f"{len(broken)} violations", time.perf_counter() - start)
    assert passed, broken[:3]


CYCLE = "ts cycle\ninitial s0\narc s0 a s1\narc s1 b s0\n"
PATH = "ts path\ninitial s0\narc s0 a s1\narc s1 b s2\narc s2 a s3\n"
CNF6 = "cnf\n" + "".join(f"clause {a} {b} {c}\n" for a, b, c in PHI6.clauses)


def _cli(args, cwd):
    proc = subprocess.run([sys.executable, "-m", "boolsynth", *args], cwd=cwd, capture_output=True)
    return proc.returncode, proc.stdout, proc.stderr


def test_criterion_11_cli_determinism(tmp_path):
    start = time.perf_counter()
    (tmp_path / "cycle.ts").write_text(CYCLE)
    (tmp_path / "path.ts").write_text(PATH)
    (tmp_path / "phi.cnf").write_text(CNF6)
    commands = [
        ["validate", "path.ts"],
        ["validate", "phi.cnf", "--format", "json"],
        ["classify", "--type", "nop,inp,out"],
        ["classify", "--all", "--format", "json"],
        ["check", "--type", "nop,swap", "--property", "essp", "cycle.ts"],
        ["check", "--type", "nop,inp,out", "path.ts", "--format", "json", "--jobs", "{jobs}"],
        ["synth", "--type", "nop,inp,out", "path.ts", "--verify", "--jobs", "{jobs}", "-o", "out{run}.net"],
        ["synth", "--type", "nop,swap,inp", "cycle.ts", "--format", "json", "--jobs", "{jobs}"],
        ["stategraph", "out{run}.net"],
        ["iso", "path.ts", "path.ts"],
        ["reduce", "phi.cnf", "--scheme", "sigma4", "--model", "auto", "--witness", "w{run}.region",
         "-o", "r{run}.ts"],
        ["reduce", "phi.cnf", "--scheme", "sigma5", "--format", "json"],
        ["t2gen", "phi.cnf", "--type", "nop,set,res,used", "--model", "auto", "--witness", "t{run}.region"],
    ]
    differing = []
    for command in commands:
        outputs = []
        for run, jobs in ((0, 1), (1, 2), (2, 1)):
            argv = [a.format(run=run, jobs=jobs) for a in command]
            code, out, err = _cli(argv, tmp_path)
            files = tuple((tmp_path / a.format(run=run)).read_bytes() for a in command if "{run}" in a)
            outputs.append((code, out, err, files))
        if len(set(map(repr, outputs))) != 1:
            differing.append(" ".join(command))
    passed = not differing
    record(11, passed, f"{len(commands)} commands x 3 runs (jobs 1, 2, 1), {len(differing)} with differing "
                       f"bytes", time.perf_counter() - start)
    assert passed, differing
