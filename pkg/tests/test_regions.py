import random

import pytest
from hypothesis import given, settings, strategies as st

from boolsynth.interactions import ALL_INTERACTIONS, FREE, INP, NOP, OUT, RES, SET, SWAP, USED, mirror_type
from boolsynth.oracle import BudgetExceeded, SignatureSearch, solve_atom_oracle
from boolsynth.parity import (
    ChordViolation, ParityMethod, abstract_to_region, build_chord_system, build_parity_index, solve_atom_gf2,
)
from boolsynth.regions import (
    Atom, Region, WrongFamily, enumerate_atoms, enumerate_regions, grow_support, mirror_region,
    region_from_support, satisfies_atom, signature_candidates, validate_region,
)
from boolsynth.solvers import MirroredSolver, SupportGrowing, polytime_solver, solve_atom_res_family, solve_atom_trivial
from boolsynth.ts import validate_ts
from enumeration import random_reduced_ts

ARC = validate_ts("a", [("a", "e", "b")])
CYCLE = validate_ts("a", [("a", "e", "b"), ("b", "f", "a")])
LOOP = validate_ts("a", [("a", "e", "a")])
EVERYTHING = frozenset(ALL_INTERACTIONS)


def small_systems():
    return st.builds(lambda seed: random_reduced_ts(random.Random(seed), 4), st.integers(0, 10**6))


class TestAtoms:
    def test_loop_has_none(self):
        assert enumerate_atoms(LOOP) == []

    def test_single_arc(self):
        assert enumerate_atoms(ARC) == [Atom.ssp("a", "b"), Atom.essp("e", "b")]

    def test_essp_count(self):
        ts = validate_ts("a", [("a", "e", "b"), ("b", "f", "c")])
        assert sum(a.kind == "ESSP" for a in enumerate_atoms(ts)) == 4

    def test_ssp_needs_distinct_states(self):
        with pytest.raises(ValueError):
            Atom.ssp("a", "a")


class TestValidation:
    def test_constant_nop(self):
        assert validate_region(CYCLE, {NOP}, Region({"a": 1, "b": 1}, {"e": NOP, "f": NOP})) == []

    def test_inp_on_zero(self):
        problems = validate_region(ARC, {NOP, INP}, Region({"a": 0, "b": 0}, {"e": INP}))
        assert [p.kind for p in problems] == ["arc"]

    def test_swap_needs_a_change(self):
        problems = validate_region(ARC, {NOP, SWAP}, Region({"a": 1, "b": 1}, {"e": SWAP}))
        assert [p.kind for p in problems] == ["arc"]

    def test_signature_outside_type(self):
        problems = validate_region(ARC, {NOP}, Region({"a": 1, "b": 0}, {"e": INP}))
        assert [p.kind for p in problems] == ["signature"]

    def test_missing_values(self):
        kinds = {p.kind for p in validate_region(ARC, {NOP}, Region({"a": 1}, {}))}
        assert kinds == {"support", "signature"}


class TestGrowSupport:
    def test_source_stays_alone(self):
        assert grow_support(ARC, {"a"}) == {"a"}

    def test_target_pulls_source(self):
        assert grow_support(ARC, {"b"}) == {"a", "b"}

    def test_empty(self):
        assert grow_support(ARC, set()) == frozenset()

    def test_event_inside_pulls_other_targets(self):
        ts = validate_ts("a", [("a", "e", "b"), ("b", "f", "c"), ("c", "e", "d")])
        assert grow_support(ts, {"b"}) == {"a", "b"}
        assert grow_support(ts, {"a", "b", "c"}) == {"a", "b", "c", "d"}

    @settings(max_examples=80, deadline=None)
    @given(small_systems(), st.data())
    def test_contained_in_every_res_region(self, ts, data):
        q = set(data.draw(st.lists(st.sampled_from(ts.states), max_size=2)))
        grown = grow_support(ts, q)
        tau = {NOP, RES, INP, USED, FREE}
        for region in enumerate_regions(ts, tau):
            if q <= region.support():
                assert grown <= region.support()


class TestSignatureCandidates:
    def test_keep_plus(self):
        assert set(signature_candidates(ARC, EVERYTHING, {"a": 1, "b": 1}, "e")) == {NOP, SET, USED}

    def test_exit(self):
        assert set(signature_candidates(ARC, EVERYTHING, {"a": 1, "b": 0}, "e")) == {INP, RES, SWAP}

    def test_mixed(self):
        ts = validate_ts("a", [("a", "e", "b"), ("b", "f", "c"), ("c", "e", "d")])
        sup = {"a": 1, "b": 1, "c": 0, "d": 0}
        assert signature_candidates(ts, EVERYTHING, sup, "e") == [NOP]

    def test_event_without_arcs(self):
        ts = validate_ts("a", [("a", "e", "b")], events=["e", "f"])
        assert set(signature_candidates(ts, EVERYTHING, {"a": 0, "b": 1}, "f")) == EVERYTHING

    def test_nop_first_completion(self):
        region = region_from_support(CYCLE, EVERYTHING, {"a": 1, "b": 0})
        assert region.sig == {"e": INP, "f": OUT}
        assert region_from_support(CYCLE, {NOP}, {"a": 1, "b": 0}) is None


class TestResFamily:
    def test_inp_witness(self):
        region = solve_atom_res_family(ARC, {NOP, RES, INP}, Atom.essp("e", "b"))
        assert region.sup == {"a": 1, "b": 0} and region.sig["e"] == INP

    def test_cycle_is_unsolvable(self):
        assert solve_atom_res_family(CYCLE, {NOP, RES, INP}, Atom.essp("e", "b")) is None

    def test_no_inhibitor(self):
        assert solve_atom_res_family(ARC, {NOP, RES}, Atom.essp("e", "b")) is None

    def test_ssp(self):
        region = solve_atom_res_family(ARC, {NOP, RES}, Atom.ssp("a", "b"))
        assert region.sup == {"a": 1, "b": 0} and region.sig["e"] == RES

    def test_wrong_family(self):
        with pytest.raises(WrongFamily):
            SupportGrowing(ARC, {NOP, SWAP})
        with pytest.raises(WrongFamily):
            SupportGrowing(ARC, {NOP, INP})

    def test_mirrored_set_family(self):
        tau = {NOP, SET, OUT}
        solver = MirroredSolver(SupportGrowing(ARC, mirror_type(tau)))
        region = solver.solve(Atom.essp("e", "b"))
        assert not validate_region(ARC, tau, region)
        assert region.sig["e"] == OUT and region.sup["b"] == 1


class TestMirror:
    @settings(max_examples=60, deadline=None)
    @given(small_systems(), st.frozensets(st.sampled_from(ALL_INTERACTIONS)))
    def test_mirror_keeps_validity(self, ts, tau):
        tau = tau | {NOP}
        for region in list(enumerate_regions(ts, tau))[:20]:
            mirrored = mirror_region(region)
            assert not validate_region(ts, mirror_type(tau), mirrored)
            assert mirror_region(mirrored) == region


class TestParity:
    def test_index_of_an_arc(self):
        idx = build_parity_index(ARC)
        assert idx.tree == (("a", "e", "b"),) and idx.psi_dict("b") == {"e": 1} and idx.chords == ()

    def test_index_of_a_cycle(self):
        idx = build_parity_index(CYCLE)
        assert idx.tree == (("a", "e", "b"),) and idx.chords == (("b", "f", "a"),)

    def test_index_of_a_loop(self):
        idx = build_parity_index(LOOP)
        assert idx.tree == () and idx.chords == (("a", "e", "a"),)

    def test_chord_equations(self):
        assert build_chord_system(build_parity_index(CYCLE)).rows == [(0b11, 0)]
        assert build_chord_system(build_parity_index(LOOP)).rows == [(0b1, 0)]
        assert build_chord_system(build_parity_index(ARC)).rows == []

    def test_abstract_regions(self):
        tau = {NOP, SWAP}
        zero = abstract_to_region(CYCLE, tau, {})
        assert zero.sup == {"a": 0, "b": 0} and set(zero.sig.values()) == {NOP}
        both = abstract_to_region(CYCLE, tau, {"e": 1, "f": 1})
        assert both.sup == {"a": 0, "b": 1} and both.sig == {"e": SWAP, "f": SWAP}
        flipped = abstract_to_region(CYCLE, tau, {"e": 1, "f": 1}, complement=True)
        assert flipped.sup == {"a": 1, "b": 0}
        with pytest.raises(ChordViolation):
            abstract_to_region(CYCLE, tau, {"e": 1})
        with pytest.raises(WrongFamily):
            abstract_to_region(CYCLE, {NOP, INP}, {})

    def test_solver_examples(self):
        region = solve_atom_gf2(CYCLE, {NOP, SWAP}, Atom.ssp("a", "b"))
        assert region.sup["a"] != region.sup["b"] and region.sig == {"e": SWAP, "f": SWAP}
        assert solve_atom_gf2(CYCLE, {NOP, SWAP}, Atom.essp("e", "b")) is None
        region = solve_atom_gf2(ARC, {NOP, INP, OUT, SWAP}, Atom.essp("e", "b"))
        assert region.sig["e"] == INP and region.sup["b"] == 0

    def test_wrong_family(self):
        with pytest.raises(WrongFamily):
            ParityMethod(ARC, {NOP, SWAP, RES})

    @settings(max_examples=60, deadline=None)
    @given(small_systems())
    def test_chord_soundness_both_ways(self, ts):
        idx = build_parity_index(ts)
        rows = build_chord_system(idx).rows
        for region in enumerate_regions(ts, {NOP, SWAP}):
            rho = {e: int(region.sig[e] is SWAP) for e in ts.events}
            vec = sum(1 << i for i, e in enumerate(ts.events) if rho[e])
            assert all(bin(c & vec).count("1") % 2 == r for c, r in rows)
            lifted = abstract_to_region(ts, {NOP, SWAP}, rho, idx=idx)
            assert not validate_region(ts, {NOP, SWAP}, lifted)
            comp = abstract_to_region(ts, {NOP, SWAP}, rho, complement=True, idx=idx)
            assert comp.sup == {s: 1 - b for s, b in lifted.sup.items()}


class TestTrivial:
    def test_ssp_is_unsolvable(self):
        assert solve_atom_trivial(ARC, {NOP, USED, FREE}, Atom.ssp("a", "b")) is None

    def test_essp_on_an_arc(self):
        assert solve_atom_trivial(ARC, {NOP, USED}, Atom.essp("e", "b")) is None

    def test_unused_event(self):
        ts = validate_ts("a", [("a", "e", "b")], events=["e", "f"])
        region = solve_atom_trivial(ts, {NOP, USED}, Atom.essp("f", "a"))
        assert region.sig["f"] == USED and not validate_region(ts, {NOP, USED}, region)
        assert solve_atom_trivial(ts, {NOP}, Atom.essp("f", "a")) is None

    def test_wrong_family(self):
        with pytest.raises(WrongFamily):
            solve_atom_trivial(ARC, {NOP, INP}, Atom.essp("e", "b"))


class TestOracle:
    def test_agrees_on_examples(self):
        assert solve_atom_oracle(ARC, {NOP, INP}, Atom.essp("e", "b")) is not None
        assert solve_atom_oracle(CYCLE, {NOP, INP}, Atom.essp("e", "b")) is None
        assert solve_atom_oracle(ARC, {NOP}, Atom.ssp("a", "b")) is None

    def test_budget_is_distinct(self):
        ts = validate_ts("s0", [(f"s{i}", f"e{i}", f"s{i + 1}") for i in range(12)])
        with pytest.raises(BudgetExceeded):
            SignatureSearch(ts, EVERYTHING, max_nodes=3).solve(Atom.essp("e0", "s12"))

    def test_requires_nop(self):
        with pytest.raises(ValueError):
            SignatureSearch(ARC, {INP})

    def test_iter_regions_covers_every_signature(self):
        tau = {NOP, INP, OUT, SWAP}
        found = [r.key(CYCLE)[1] for r in SignatureSearch(CYCLE, tau).iter_regions()]
        assert len(found) == len(set(found))
        assert set(found) == {r.key(CYCLE)[1] for r in enumerate_regions(CYCLE, tau)}

    @settings(max_examples=60, deadline=None)
    @given(small_systems(), st.sampled_from([
        frozenset({NOP, RES, INP}), frozenset({NOP, RES, USED, FREE}), frozenset({NOP, SET, OUT}),
        frozenset({NOP, SWAP, INP}), frozenset({NOP, SWAP, USED, OUT}), frozenset({NOP, USED, FREE}),
    ]))
    def test_polytime_solvers_agree_with_oracle(self, ts, tau):
        fast = polytime_solver(ts, tau)
        for atom in enumerate_atoms(ts):
            region = fast.solve(atom)
            expected = solve_atom_oracle(ts, tau, atom)
            assert (region is None) == (expected is None), atom
            if region is not None:
                assert not validate_region(ts, tau, region) and satisfies_atom(region, atom)
