"""The six-position reduction scheme from cubic monotone one-in-three 3-SAT.

For a CNF with ``m`` clauses and a switch position, a key union of gadgets supplies
the key event ``k`` and the key state, and a translator union encodes the clauses.
Joining both gives one transition system in which ``k`` can be inhibited at the key
state exactly when the CNF has a one-in-three model. From a model the key region
and the indicator region are built explicitly and merged into a witness.

Naming: gadget states flatten their subscripts with underscores (``h_0_6``,
``t_2_1_4``); primed gadgets keep the prime (``h'_0_2``); generator gadgets carry
their two event families in brackets (``g[c,c]_3_0``, ``_`` for an anonymous event).
Variable ``j`` of the CNF becomes event ``X_j`` with helper event ``x_j``.
Anonymous events are ``__blank<n>``, numbered in construction order.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable, Mapping, Optional

from .cnf import CnfInstance, NotAModel
from .interactions import (
    FREE, INP, KEEP_MINUS, KEEP_PLUS, NOP, OUT, RES, SET, SWAP, USED, Interaction,
)
from .regions import Region, region_from_support, validate_region
from .ts import (
    TransitionSystem, TsUnion, bot, join, join_condition, make_union, odot, ominus,
)

KEY_EVENT = "k"


class Switch(str, Enum):
    SIGMA1 = "sigma1"
    SIGMA2 = "sigma2"
    SIGMA3 = "sigma3"
    SIGMA4 = "sigma4"
    SIGMA5 = "sigma5"
    SIGMA6 = "sigma6"

    @property
    def uses_head_rows(self) -> bool:
        """True for the first four positions, which share the single head gadget."""
        return self in _ROW_SWITCHES


S1, S2, S3, S4, S5, S6 = tuple(Switch)
_ROW_SWITCHES = frozenset({S1, S2, S3, S4})


def _fs(*items: Interaction) -> frozenset[Interaction]:
    return frozenset(items)


def _family(base: frozenset[Interaction], optional: Iterable[Interaction]) -> tuple[frozenset[Interaction], ...]:
    optional = list(optional)
    return tuple(
        base | frozenset(c) for r in range(len(optional) + 1) for c in combinations(optional, r)
    )


TAU1 = _fs(NOP, INP, OUT)
TAU2 = _fs(NOP, INP, RES, SWAP)
TAU3 = _fs(NOP, INP, SET)
TAU4 = _fs(NOP, SET, SWAP)

SWITCH_TYPES: dict[Switch, tuple[frozenset[Interaction], ...]] = {
    S1: _family(TAU1, (USED, FREE)),
    S2: _family(TAU3, (OUT, RES, USED, FREE)),
    S3: _family(TAU2, (USED, FREE)),
    S4: _family(TAU3 | {SWAP}, (OUT, RES, USED, FREE)),
    S5: (TAU4 | {FREE},),
    S6: _family(TAU4 | {USED}, (RES, FREE)),
}

REPRESENTATIVE: dict[Switch, frozenset[Interaction]] = {s: types[0] for s, types in SWITCH_TYPES.items()}


def switches_for(tau: Iterable[Interaction]) -> list[Switch]:
    tau = frozenset(tau)
    return [s for s, types in SWITCH_TYPES.items() if tau in types]


@dataclass(frozen=True)
class Operations:
    """Signatures the witness gives to the key event, model variables, ``v`` events,
    helpers of model variables, the ``q_2``/``q_3`` pair and ``n_0``."""

    k: Interaction
    model: Interaction
    v: Interaction
    x: Interaction
    q: Optional[Interaction] = None
    n: Optional[Interaction] = None


OPERATIONS: dict[Switch, Operations] = {
    S1: Operations(INP, INP, OUT, OUT, n=OUT),
    S2: Operations(INP, INP, SET, SET, n=SET),
    S3: Operations(INP, SWAP, SWAP, RES, n=SWAP),
    S4: Operations(INP, SWAP, SWAP, SET, n=SET),
    S5: Operations(FREE, SWAP, SWAP, SET, q=SWAP),
    S6: Operations(USED, SWAP, SWAP, SET),
}


class InterfaceMismatch(RuntimeError):
    """Key and indicator regions disagree on a shared event; signals a construction bug."""


class WitnessInvalid(RuntimeError):
    """A constructed region fails validation; signals a construction bug."""


def _check_switch_type(sigma: Switch, tau: Iterable[Interaction]) -> frozenset[Interaction]:
    tau = frozenset(tau)
    if tau not in SWITCH_TYPES[sigma]:
        raise ValueError(f"type {sorted(i.value for i in tau)} is not managed by {sigma.value}")
    return tau


# gadget helpers -----------------------------------------------------------

class _Blanks:
    def __init__(self, start: int = 0):
        self.next = start

    def __call__(self) -> str:
        name = f"__blank{self.next}"
        self.next += 1
        return name


def _fb(a: str, e: str, b: str) -> list[tuple[str, str, str]]:
    return [(a, e, b), (b, e, a)]


def _line(states: list[str], events: list[str], both_ways: bool) -> list[tuple[str, str, str]]:
    arcs: list[tuple[str, str, str]] = []
    for a, e, b in zip(states, events, states[1:]):
        arcs.extend(_fb(a, e, b) if both_ways else [(a, e, b)])
    return arcs


def _gadget(name: str, initial: str, arcs: list[tuple[str, str, str]]) -> TransitionSystem:
    return TransitionSystem.build(initial, arcs, name=name)


def generator_template(first: str, second: str, prefix: str = "g", key: str = KEY_EVENT) -> TransitionSystem:
    """Square ``g_0 -first-> g_1 -key-> g_3`` and ``g_0 -key-> g_2 -second-> g_3``.

    In every region where the key event has signature inp, out, used or free, the
    two other events are pushed into keep+ or keep- in a fixed pattern; see
    :func:`generator_property_holds`.
    """
    g = [f"{prefix}_{n}" for n in range(4)]
    arcs = [(g[0], first, g[1]), (g[0], key, g[2]), (g[2], second, g[3]), (g[1], key, g[3])]
    return _gadget(prefix, g[0], arcs)


def generator_property_holds(region: Region, first: str, second: str, key: str = KEY_EVENT) -> bool:
    """The keep+/keep- pattern forced on ``first`` and ``second`` by the key signature."""
    rules = {
        INP: (KEEP_PLUS, KEEP_MINUS),
        OUT: (KEEP_MINUS, KEEP_PLUS),
        USED: (KEEP_PLUS, KEEP_PLUS),
        FREE: (KEEP_MINUS, KEEP_MINUS),
    }
    sig_k = region.sig[key]
    if sig_k not in rules:
        return True
    want_first, want_second = rules[sig_k]
    return region.sig[first] in want_first and region.sig[second] in want_second


def _generator(eta: Optional[str], rho: Optional[str], j: int, blanks: _Blanks) -> TransitionSystem:
    prefix = f"g[{eta or '_'},{rho or '_'}]_{j}"
    first = f"{eta}_{j}" if eta else blanks()
    second = f"{rho}_{j}" if rho else blanks()
    return generator_template(first, second, prefix)


# key union ----------------------------------------------------------------

def _head(m: int) -> TransitionSystem:
    rows = 6 * m
    arcs: list[tuple[str, str, str]] = []
    for j in range(rows):
        h = [f"h_{j}_{n}" for n in range(7)]
        if j < 3 * m:
            labels = ["k", f"z_{j}", f"v_{j}", "k", f"q_{j}", f"z_{j}"]
        else:
            i = j - 3 * m
            labels = ["k", f"w_{i}", f"p_{i}", "k", f"y_{i}", f"w_{i}"]
        arcs.extend(_line(h, labels, both_ways=False))
        if j + 1 < rows:
            arcs.append((h[6], f"r_{j}", f"h_{j + 1}_0"))
            arcs.append((h[6], f"c_{j}", f"h_{j + 1}_6"))
    return _gadget("H", "h_0_0", arcs)


def _f0() -> TransitionSystem:
    f = [f"f_0_{n}" for n in range(5)]
    return _gadget("F0", f[0], _line(f, ["k", "n_0", "z_0", "k"], both_ways=False))


def _f1() -> TransitionSystem:
    f = [f"f_1_{n}" for n in range(3)]
    return _gadget("F1", f[0], _line(f, ["q_0", "k"], both_ways=False))


def _f2(blanks: _Blanks) -> TransitionSystem:
    f = [f"f_2_{n}" for n in range(4)]
    arcs = [(f[0], "n_0", f[1]), (f[0], "k", f[2]), (f[2], blanks(), f[3]), (f[3], "k", f[1])]
    return _gadget("F2", f[0], arcs)


def _fb_line_gadget(name: str, prefix: str, labels: list[str]) -> TransitionSystem:
    """A line of forward-backward arcs whose last state, behind an anonymous event, is initial."""
    states = [f"{prefix}_{n}" for n in range(len(labels) + 1)]
    return _gadget(name, states[-1], _line(states, labels, both_ways=True))


def _head_prime(j: int, blanks: _Blanks) -> TransitionSystem:
    return _fb_line_gadget(f"H'{j}", f"h'_{j}", ["k", "m", f"v_{j}", "k", blanks()])


def _freezers_prime(blanks: _Blanks) -> list[TransitionSystem]:
    return [
        _fb_line_gadget("F'0", "f'_0", ["k", "m", "q_0", "k", "m", "q_1", "k", blanks()]),
        _fb_line_gadget("F'1", "f'_1", ["k", "q_2", "q_3", "k", blanks()]),
        _fb_line_gadget("F'2", "f'_2", ["k", "q_2", "q_0", "z", "q_1", "z", "q_3", "k", blanks()]),
    ]


def _z_ladder(name: str, prefix: str, inner: str, outer: str, blanks: _Blanks) -> TransitionSystem:
    # states 0..2 and 4..8 are forward-backward lines; z leads from 4 to 3 to 2
    s = [f"{prefix}_{n}" for n in range(9)]
    arcs = _line(s[0:3], ["k", inner], both_ways=True)
    arcs += [(s[4], "z", s[3]), (s[3], "z", s[2])]
    arcs += _line(s[4:9], [inner, outer, "k", blanks()], both_ways=True)
    return _gadget(name, s[8], arcs)


def build_key_union(m: int, sigma: Switch) -> TsUnion:
    blanks = _Blanks()
    return _key_union(m, sigma, blanks)


def _key_union(m: int, sigma: Switch, blanks: _Blanks) -> TsUnion:
    if m < 1:
        raise ValueError("the key union needs at least one clause")
    if sigma.uses_head_rows:
        head = [_head(m)]
        duplicator = [_generator("c", "c", j, blanks) for j in range(6 * m - 1)]
        if sigma in (S1, S2):
            freezer = [_f0(), _f1()]
        else:
            freezer = [_f0()]
            if sigma == S3:
                freezer.append(_f2(blanks))
            else:
                freezer.append(_generator("n", None, 0, blanks))
            freezer += [_generator(None, "q", j, blanks) for j in range(3 * m)]
            freezer += [_generator(None, "y", j, blanks) for j in range(3 * m)]
        return make_union(head + duplicator + freezer)
    head = [_head_prime(j, blanks) for j in range(3 * m)]
    duplicator = [_z_ladder(f"D{j}", f"d_{j}", f"p_{j}", f"a_{j}", blanks) for j in range(18 * m)]
    generator = [_z_ladder(f"G{j}", f"g_{j}", f"y_{j}", f"w_{j}", blanks) for j in range(3 * m)]
    freezer = _freezers_prime(blanks)
    return make_union(head + duplicator + generator + freezer)


def key_state(sigma: Switch) -> str:
    return "h_0_6" if sigma.uses_head_rows else "h'_0_2"


# translator union ---------------------------------------------------------

def variable_event(phi: CnfInstance, variable: str) -> str:
    return f"X_{phi.index(variable)}"


def helper_event(phi: CnfInstance, variable: str) -> str:
    return f"x_{phi.index(variable)}"


def _materializers(sigma: Switch, n: int) -> tuple[str, str]:
    v, w = f"v_{n}", f"w_{n}"
    return (w, v) if sigma in (S3, S6) else (v, w)


def _translator(phi: CnfInstance, sigma: Switch, i: int, alpha: int) -> TransitionSystem:
    clause = phi.clauses[i]
    order = [clause[(alpha + d) % 3] for d in range(3)]
    big = [variable_event(phi, v) for v in order]
    small = [helper_event(phi, v) for v in order]
    xi, theta = _materializers(sigma, 3 * i + alpha)
    t = [f"t_{i}_{alpha}_{n}" for n in range(6)]
    arcs = [(t[0], "k", t[1]), (t[1], xi, t[2]), (t[1], theta, t[5])]
    arcs += _line(t[2:6], big, both_ways=False)
    arcs += [(t[3], small[0], t[2]), (t[4], small[1], t[3]), (t[5], small[2], t[4])]
    return _gadget(f"T{i},{alpha}", t[0], arcs)


def _translator_prime(phi: CnfInstance, sigma: Switch, i: int, alpha: int, blanks: _Blanks) -> TransitionSystem:
    clause = phi.clauses[i]
    order = [clause[(alpha + d) % 3] for d in range(3)]
    big = [variable_event(phi, v) for v in order]
    small = [helper_event(phi, v) for v in order]
    acc = [f"a_{18 * i + 6 * alpha + n}" for n in range(6)]
    xi, theta = _materializers(sigma, 3 * i + alpha)
    t = {n: f"t'_{i}_{alpha}_{n}" for n in range(21)}
    start = f"t'_{i}_{alpha}_s"
    arcs = _fb(start, blanks(), t[0]) + _fb(t[0], "k", t[1]) + _fb(t[1], xi, t[2]) + _fb(t[1], theta, t[11])
    main = [t[n] for n in range(2, 12)]
    arcs += _line(main, [acc[0], big[0], acc[0], acc[1], big[1], acc[1], acc[2], big[2], acc[2]], both_ways=True)
    # one detour per variable position: hub -acc-> a -helper<->- b <-helper- c -acc- next hub
    for n, (hub, nxt) in enumerate(((2, 5), (5, 8), (8, 11))):
        a, b, c = 12 + 3 * n, 13 + 3 * n, 14 + 3 * n
        arcs += _fb(t[hub], acc[3 + n], t[a]) + _fb(t[a], small[n], t[b]) + [(t[c], small[n], t[b])]
        arcs += _fb(t[c], acc[3 + n], t[nxt])
    return _gadget(f"T'{i},{alpha}", start, arcs)


def _translator_freezer(phi: CnfInstance, sigma: Switch, blanks: _Blanks) -> list[TransitionSystem]:
    n = len(phi.variables)
    if sigma == S3:
        return [_generator(None, "x", j, blanks) for j in range(n)]
    if sigma == S4:
        return [_generator("x", None, j, blanks) for j in range(n)]
    if sigma == S5:
        return [
            _fb_line_gadget(f"B'{j}", f"b'_{j}", ["k", "q_2", f"x_{j}", "q_3", "k", blanks()])
            for j in range(n)
        ]
    if sigma == S6:
        return [_fb_line_gadget(f"B{j}", f"b_{j}", ["k", f"x_{j}", "k", blanks()]) for j in range(n)]
    return []


def _translator_union(phi: CnfInstance, sigma: Switch, blanks: _Blanks) -> TsUnion:
    parts: list[TransitionSystem] = []
    for i in range(phi.m):
        for alpha in range(3):
            if sigma.uses_head_rows:
                parts.append(_translator(phi, sigma, i, alpha))
            else:
                parts.append(_translator_prime(phi, sigma, i, alpha, blanks))
    parts += _translator_freezer(phi, sigma, blanks)
    return make_union(parts)


def _key_blank_count(m: int, sigma: Switch) -> int:
    blanks = _Blanks()
    _key_union(m, sigma, blanks)
    return blanks.next


def build_translator_union(phi: CnfInstance, sigma: Switch) -> TsUnion:
    """Anonymous events continue the numbering of the key union, as in the full reduction."""
    return _translator_union(phi, sigma, _Blanks(_key_blank_count(phi.m, sigma)))


# the reduction ------------------------------------------------------------

@dataclass(frozen=True)
class ReductionOutput:
    union: TsUnion
    joined: TransitionSystem
    key_event: str
    key_state: str
    sigma: Switch
    tau: frozenset[Interaction]
    phi: CnfInstance
    key_size: int  # number of leading components that form the key union

    @property
    def key_union(self) -> TsUnion:
        return TsUnion(self.union.components[: self.key_size])

    @property
    def translator_union(self) -> TsUnion:
        return TsUnion(self.union.components[self.key_size:])


def build_reduction(phi: CnfInstance, sigma: Switch, tau: Optional[Iterable[Interaction]] = None) -> ReductionOutput:
    """The union of key and translator gadgets and its joining for ``tau``.

    ``tau`` defaults to the smallest type managed by ``sigma``.
    """
    tau = REPRESENTATIVE[sigma] if tau is None else _check_switch_type(sigma, tau)
    blanks = _Blanks()
    key = _key_union(phi.m, sigma, blanks)
    translator = _translator_union(phi, sigma, blanks)
    union = make_union([key, translator])
    joined = join(union, tau, name=f"{sigma.value}")
    return ReductionOutput(union, joined, KEY_EVENT, key_state(sigma), sigma, tau, phi, len(key))


# witnesses ----------------------------------------------------------------

def _selectors(phi: CnfInstance, model: Iterable[str]) -> list[int]:
    chosen = set(model)
    if not phi.is_model(chosen):
        raise NotAModel(f"{sorted(chosen)} is not a one-in-three model")
    return [next(a for a in range(3) if phi.clauses[i][a] in chosen) for i in range(phi.m)]


def _complete(union: TsUnion, tau: frozenset[Interaction], support: set[str],
              fixed: Mapping[str, Interaction], what: str) -> Region:
    flat = union.flat
    sup = {s: int(s in support) for s in flat.states}
    fixed = {e: i for e, i in fixed.items() if e in flat.events}
    region = region_from_support(flat, tau, sup, fixed)
    if region is None:
        raise WitnessInvalid(f"the {what} support admits no signature with the required entries")
    return region


def construct_key_region(m: int, sigma: Switch, tau: Optional[Iterable[Interaction]] = None) -> Region:
    """A region of the key union inhibiting ``k`` at the key state."""
    tau = REPRESENTATIVE[sigma] if tau is None else _check_switch_type(sigma, tau)
    union = build_key_union(m, sigma)
    ops = OPERATIONS[sigma]
    fixed: dict[str, Interaction] = {KEY_EVENT: ops.k}
    if sigma.uses_head_rows:
        support = {f"h_{j}_{n}" for j in range(6 * m) for n in (0, 3)}
        for fam in ("g[_,q]", "g[_,y]"):
            support |= {f"{fam}_{j}_{n}" for j in range(3 * m) for n in (0, 1)}
        support |= {f"g[c,c]_{j}_{n}" for j in range(6 * m - 1) for n in (0, 1)}
        support |= {"g[n,_]_0_0", "g[n,_]_0_1", "f_0_0", "f_0_2", "f_0_3", "f_1_0", "f_1_1", "f_2_0", "f_2_3"}
        fixed.update({f"v_{j}": ops.v for j in range(3 * m)})
        fixed["n_0"] = ops.n  # type: ignore[assignment]
    else:
        support = {f"h'_{j}_{n}" for j in range(3 * m) for n in (2, 5)}
        support |= {"f'_0_2", "f'_0_5", "f'_0_8", "f'_1_2", "f'_1_5", "f'_2_2", "f'_2_5", "f'_2_6", "f'_2_9"}
        support |= {f"d_{j}_{n}" for j in range(18 * m) for n in (2, 3, 4, 8)}
        support |= {f"g_{j}_{n}" for j in range(3 * m) for n in (2, 3, 4, 8)}
        if sigma == S6:
            support = set(union.states) - support
        swapped = [f"v_{j}" for j in range(3 * m)] + ["m", "q_0", "q_1", "q_2", "q_3"]
        swapped += [f"p_{j}" for j in range(18 * m)] + [f"y_{j}" for j in range(3 * m)]
        fixed.update({e: SWAP for e in swapped})
    support &= set(union.states)
    return _complete(union, tau, support, fixed, "key")


def construct_indicator_region(phi: CnfInstance, sigma: Switch, model: Iterable[str],
                               tau: Optional[Iterable[Interaction]] = None) -> Region:
    """A region of the translator union whose non-nop variable events are exactly ``model``."""
    tau = REPRESENTATIVE[sigma] if tau is None else _check_switch_type(sigma, tau)
    model = frozenset(model)
    selectors = _selectors(phi, model)
    union = build_translator_union(phi, sigma)
    ops = OPERATIONS[sigma]
    support: set[str] = set()
    for i, a in enumerate(selectors):
        b, c = (a + 1) % 3, (a + 2) % 3
        if sigma in (S1, S2, S4, S3):
            support |= {f"t_{i}_{x}_0" for x in range(3)}
        if sigma in (S1, S2, S4):
            picks = [(a, 2), (b, 2), (b, 3), (b, 4), (c, 2), (c, 3)]
            support |= {f"t_{i}_{x}_{n}" for x, n in picks}
        elif sigma == S3:
            picks = [(a, 3), (a, 4), (a, 5), (b, 5), (c, 4), (c, 5)]
            support |= {f"t_{i}_{x}_{n}" for x, n in picks}
        else:
            if sigma == S6:
                support |= {f"t'_{i}_{x}_{n}" for x in range(3) for n in (0, 1)}
            support |= {f"t'_{i}_{a}_{n}" for n in (2, 3, 12, 13)}
            support |= {f"t'_{i}_{b}_{n}" for n in [*range(2, 10), *range(12, 20)]}
            support |= {f"t'_{i}_{c}_{n}" for n in [*range(2, 7), *range(12, 17)]}
    n_vars = len(phi.variables)
    if sigma == S3:
        support |= {f"g[_,x]_{j}_{n}" for j in range(n_vars) for n in (0, 1)}
    elif sigma == S4:
        support |= {f"g[x,_]_{j}_{n}" for j in range(n_vars) for n in (0, 1)}
    elif sigma == S5:
        support |= {f"b'_{j}_{n}" for j in range(n_vars) for n in (2, 3)}
    elif sigma == S6:
        support |= {f"b_{j}_{n}" for j in range(n_vars) for n in range(5)}
    fixed: dict[str, Interaction] = {KEY_EVENT: ops.k}
    fixed.update({f"v_{j}": ops.v for j in range(3 * phi.m)})
    for v in model:
        fixed[variable_event(phi, v)] = ops.model
        fixed[helper_event(phi, v)] = ops.x
    for v in set(phi.variables) - model:
        fixed[variable_event(phi, v)] = NOP
    if ops.q is not None:
        fixed["q_2"] = fixed["q_3"] = ops.q
    return _complete(union, tau, support, fixed, "indicator")


def _enter_exit(tau: frozenset[Interaction]) -> tuple[Interaction, Interaction]:
    if join_condition(tau) == 1:
        enter = next(i for i in (OUT, SET, SWAP) if i in tau)
        return enter, INP
    return SWAP, SWAP


def extend_to_joined(union: TsUnion, tau: Iterable[Interaction], region: Region, anchor: str) -> Region:
    """Carry a region of ``union`` over to its joining.

    Connector states copy the support of ``anchor`` (the state of the atom being
    witnessed); each link event moves from that value to the initial state's value.
    """
    tau = frozenset(tau)
    enter, exit_ = _enter_exit(tau)
    base = region.sup[anchor]
    n = len(union.components)
    sup = dict(region.sup)
    sig = dict(region.sig)
    for i in range(max(n, 1)):
        sup[bot(i)] = base
    for i in range(1, n):
        sig[ominus(i)] = NOP
    for i, comp in enumerate(union.components):
        diff = region.sup[comp.initial] - base
        sig[odot(i)] = NOP if diff == 0 else enter if diff > 0 else exit_
    return Region(sup, sig)


def _merge(key: Region, indicator: Region) -> Region:
    for e, i in indicator.sig.items():
        if e in key.sig and key.sig[e] != i:
            raise InterfaceMismatch(f"shared event {e}: key region has {key.sig[e].value}, indicator has {i.value}")
    return Region({**key.sup, **indicator.sup}, {**key.sig, **indicator.sig})


def combine_witness(reduction: ReductionOutput, model: Iterable[str]) -> Region:
    """The region of the joined system that inhibits the key event at the key state."""
    sigma, tau, phi = reduction.sigma, reduction.tau, reduction.phi
    key = construct_key_region(phi.m, sigma, tau)
    indicator = construct_indicator_region(phi, sigma, model, tau)
    merged = _merge(key, indicator)
    problems = validate_region(reduction.union.flat, tau, merged)
    if problems:
        raise WitnessInvalid(f"merged region is invalid: {problems[0]}")
    region = extend_to_joined(reduction.union, tau, merged, reduction.key_state)
    problems = validate_region(reduction.joined, tau, region)
    if problems:
        raise WitnessInvalid(f"joined region is invalid: {problems[0]}")
    return region


def model_from_region(phi: CnfInstance, region: Region) -> frozenset[str]:
    """The variables whose events do not have signature nop."""
    return frozenset(v for v in phi.variables if region.sig[variable_event(phi, v)] != NOP)
