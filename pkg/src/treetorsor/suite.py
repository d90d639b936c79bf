"""Theorem suite, torsor comparisons, and the rotation-system search.

The suite runs every documented invariant of every module against a corpus of
graphs and reports line-oriented JSON records (deterministic, machine
diffable).  A failing record always carries a witness with enough data to
replay the failure through the corresponding single-operation CLI command.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import combinations
from math import factorial
from typing import Callable, Mapping

from . import breakdiv as bk
from . import divisors as dv
from . import duality as du
from . import rotor as rt
from .bernardi import (
    bernardi_act,
    bernardi_beta,
    bernardi_tour,
    alpha_left,
    alpha_right,
    shift_difference_check,
)
from .corpus import rotation_systems
from .errors import NotSimple
from .ribbon import (
    RibbonGraph,
    face_successor,
    fundamental_cycle,
    spanning_trees,
    trace_faces,
)


@dataclass(frozen=True)
class CheckRecord:
    check: str
    graph: str
    params: dict
    ok: bool
    witness: dict | None = None

    def to_json(self) -> str:
        body = {
            "check": self.check,
            "graph": self.graph,
            "params": self.params,
            "ok": self.ok,
        }
        if not self.ok:
            body["witness"] = self.witness or {}
        return json.dumps(body, sort_keys=True)


@dataclass
class SuiteReport:
    records: list[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(1 for r in self.records if r.ok)

    @property
    def failed(self) -> int:
        return sum(1 for r in self.records if not r.ok)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def add(
        self,
        check: str,
        graph: str,
        params: dict,
        ok: bool,
        witness: dict | None = None,
    ) -> None:
        self.records.append(CheckRecord(check, graph, params, bool(ok), witness))

    def dump(self) -> str:
        lines = [r.to_json() for r in self.records]
        lines.append(
            json.dumps(
                {"summary": {"passed": self.passed, "failed": self.failed}},
                sort_keys=True,
            )
        )
        return "\n".join(lines)


def _tree_key(T: frozenset) -> list[str]:
    return sorted(T)


def _generators(G: RibbonGraph) -> list[tuple[str, dict]]:
    """The classes [(u) - (q)] for u != q, as (u, divisor) pairs."""
    q = G.vertices[0]
    return [(u, {u: 1, q: -1}) for u in G.vertices[1:]]


# -- torsor comparisons ------------------------------------------------------


def compare_bernardi_vertices(
    G: RibbonGraph, v1: str, v2: str
) -> tuple[bool, dict | None]:
    """Whether the tree actions based at v1 and v2 coincide.

    Agreement on generator classes at every tree suffices: a general class is
    a sum of generators and both actions are additive.
    """
    for u, gamma in _generators(G):
        for T in spanning_trees(G):
            if bernardi_act(G, v1, gamma, T) != bernardi_act(G, v2, gamma, T):
                return False, {"gamma": gamma, "tree": _tree_key(T)}
    return True, None


def compare_torsors(G: RibbonGraph, v: str) -> tuple[bool, dict | None]:
    """Whether the Bernardi and rotor-routing actions at v coincide."""
    for u, gamma in _generators(G):
        for T in spanning_trees(G):
            if bernardi_act(G, v, gamma, T) != rt.rotor_act(G, v, gamma, T):
                return False, {"gamma": gamma, "tree": _tree_key(T)}
    return True, None


# -- per-module check batteries ----------------------------------------------


def _check_ribbon(report: SuiteReport, name: str, G: RibbonGraph) -> None:
    fd = trace_faces(G)
    ok = True
    for face in fd.faces:
        d = face[0]
        for _ in range(len(face)):
            d = face_successor(G, d)
        if d != face[0]:
            ok = False
    report.add("face-permutation-closure", name, {}, ok)

    euler = len(G.vertices) - len(G.edges) + len(fd.faces)
    report.add(
        "euler-consistency",
        name,
        {"faces": len(fd.faces)},
        euler == 2 - 2 * fd.topological_genus and fd.topological_genus >= 0,
    )

    trees = spanning_trees(G)
    det = dv.tree_count_determinant(G)
    pic = dv.picard_group(G).order
    breaks = len(bk.enumerate_break_divisors(G))
    report.add(
        "counting",
        name,
        {"trees": len(trees), "det": det, "pic": pic, "breaks": breaks},
        len(trees) == det == pic == breaks,
    )

    ok, witness = True, None
    for T in trees:
        for e in G.edge_ids:
            if e in T:
                continue
            cyc = fundamental_cycle(G, T, e)
            if cyc[0].edge != e or any(d.edge not in T for d in cyc[1:]):
                ok, witness = False, {"tree": _tree_key(T), "edge": e}
    report.add("fundamental-cycle", name, {}, ok, witness)


def _check_divisors(report: SuiteReport, name: str, G: RibbonGraph) -> None:
    group = dv.picard_group(G)
    rng = random.Random(7)
    samples = [dv.tuple_to_divisor(G, c) for c in group.elements[:12]]
    for _ in range(6):
        samples.append({v: rng.randint(-4, 4) for v in G.vertices})

    ok, witness = True, None
    for D in samples:
        red = dv.q_reduce(G, D)
        if dv.q_reduce(G, red) != red:
            ok, witness = False, {"divisor": D}
        f = {v: rng.randint(-3, 3) for v in G.vertices}
        shifted = dv.add(D, dv.laplacian_of(G, f))
        if dv.q_reduce(G, shifted) != red:
            ok, witness = False, {"divisor": D, "function": f}
    report.add("q-reduce-canonical", name, {}, ok, witness)

    if group.order <= 36:
        ok, witness = True, None
        els = group.elements
        for a in els:
            if group.add(a, group.zero) != a:
                ok, witness = False, {"element": list(a)}
            for b in els:
                if group.add(a, b) != group.add(b, a):
                    ok, witness = False, {"a": list(a), "b": list(b)}
                for c in els:
                    if group.add(group.add(a, b), c) != group.add(a, group.add(b, c)):
                        ok, witness = False, {"a": list(a), "b": list(b), "c": list(c)}
        report.add("group-axioms", name, {"order": group.order}, ok, witness)

    ok, witness = True, None
    for u, gamma in _generators(G):
        g = group.class_of(gamma)
        image = {group.add(g, c) for c in group.elements}
        if image != set(group.elements):
            ok, witness = False, {"gamma": gamma}
    report.add("class-translation-bijection", name, {}, ok, witness)


def _check_break(report: SuiteReport, name: str, G: RibbonGraph) -> None:
    breaks = bk.enumerate_break_divisors(G)
    ok, witness = True, None
    for bd in breaks:
        rep = bk.break_representative(G, bd.divisor)
        if rep.divisor != bd.divisor:
            ok, witness = False, {"divisor": bd.divisor}
    report.add("break-representative-identity", name, {}, ok, witness)

    ok, witness = True, None
    keys = {dv._q_reduce(G, bd.coeffs(G), G.vertices[0]) for bd in breaks}
    if len(keys) != len(breaks):
        ok, witness = False, {"count": len(breaks), "classes": len(keys)}
    report.add("break-pairwise-inequivalent", name, {}, ok, witness)


def _check_bernardi(report: SuiteReport, name: str, G: RibbonGraph) -> None:
    trees = spanning_trees(G)
    break_set = {bd.coeffs(G) for bd in bk.enumerate_break_divisors(G)}

    ok, witness = True, None
    for v in G.vertices:
        for e in G.incident[v]:
            image = {}
            for T in trees:
                beta = bernardi_beta(G, v, e, T)
                image[beta.coeffs(G)] = T
                if alpha_right(G, v, e, beta.divisor) != T:
                    ok, witness = False, {"vertex": v, "edge": e, "tree": _tree_key(T)}
                if alpha_left(G, v, e, beta.divisor) != T:
                    ok, witness = False, {"vertex": v, "edge": e, "tree": _tree_key(T)}
            if set(image) != break_set:
                ok, witness = False, {"vertex": v, "edge": e}
    report.add("bernardi-bijectivity", name, {}, ok, witness)

    ok, witness = True, None
    for T in trees:
        seqs = []
        for v in G.vertices:
            for e in G.incident[v]:
                tour = bernardi_tour(G, v, e, T)
                if len(tour.steps) != 2 * len(G.edges):
                    ok, witness = False, {"vertex": v, "edge": e, "tree": _tree_key(T)}
                cuts = [s for s in tour.steps if s.action == "cut"]
                for f in G.edge_ids:
                    if f in T:
                        continue
                    ends = sorted(s.at_vertex for s in cuts if s.edge == f)
                    if ends != sorted(G.ends[f]):
                        ok, witness = False, {"edge": f, "tree": _tree_key(T)}
                seqs.append(list(tour.steps))
        base = seqs[0] + seqs[0]
        for seq in seqs[1:]:
            if not any(base[i : i + len(seq)] == seq for i in range(len(seq))):
                ok, witness = False, {"tree": _tree_key(T)}
    report.add("tour-structure", name, {}, ok, witness)

    _check_torsor_axioms(report, name, G, "bernardi-torsor", bernardi_act)

    ok, witness = True, None
    for v in G.vertices:
        for u, gamma in _generators(G):
            for T in trees:
                results = {
                    bernardi_act(G, v, gamma, T, e=e) for e in G.incident[v]
                }
                if len(results) != 1:
                    ok, witness = False, {
                        "vertex": v,
                        "gamma": gamma,
                        "tree": _tree_key(T),
                    }
    report.add("edge-independence", name, {}, ok, witness)

    ok, witness = True, None
    for v in G.vertices:
        for e1 in G.incident[v]:
            for e2 in G.incident[v]:
                for T in trees:
                    _, _, equal = shift_difference_check(G, v, e1, e2, T)
                    if not equal:
                        ok, witness = False, {
                            "vertex": v,
                            "edge1": e1,
                            "edge2": e2,
                            "tree": _tree_key(T),
                        }
    report.add("shift-formula", name, {}, ok, witness)


def _check_torsor_axioms(
    report: SuiteReport,
    name: str,
    G: RibbonGraph,
    check: str,
    act: Callable[[RibbonGraph, str, Mapping[str, int], frozenset], frozenset],
) -> None:
    """Identity, additivity on generators, and simple transitivity of an action."""
    trees = spanning_trees(G)
    group = dv.picard_group(G)
    v = G.vertices[0]

    ok, witness = True, None
    for T in trees:
        if act(G, v, {}, T) != T:
            ok, witness = False, {"axiom": "identity", "tree": _tree_key(T)}

    # additivity on generators suffices: every class is a sum of generators
    for u, gamma in _generators(G):
        for c in group.elements:
            gamma2 = dv.tuple_to_divisor(G, c)
            combined = dv.add(gamma, gamma2)
            for T in trees:
                if act(G, v, combined, T) != act(G, v, gamma, act(G, v, gamma2, T)):
                    ok, witness = False, {
                        "axiom": "additivity",
                        "gamma1": gamma,
                        "gamma2": gamma2,
                        "tree": _tree_key(T),
                    }

    for T in trees:
        image = {act(G, v, dv.tuple_to_divisor(G, c), T) for c in group.elements}
        if len(image) != group.order or image != set(trees):
            ok, witness = False, {"axiom": "transitivity", "tree": _tree_key(T)}
    report.add(check, name, {"vertex": v}, ok, witness)


def _check_rotor(report: SuiteReport, name: str, G: RibbonGraph) -> None:
    trees = spanning_trees(G)
    gtop = trace_faces(G).topological_genus

    ok, witness = True, None
    for T in trees[:4]:
        for x in G.vertices[1:]:
            result = rt.rotor_move(G, T, x, G.vertices[0])
            if result not in set(trees):
                ok, witness = False, {"tree": _tree_key(T), "from": x}
    report.add("rotor-move-tree", name, {}, ok, witness)

    rng = random.Random(11)
    ok, witness = True, None
    v = G.vertices[0]
    for T in trees[:3]:
        for u, gamma in _generators(G):
            f = {w: rng.randint(-2, 2) for w in G.vertices}
            shifted = dv.add(gamma, dv.laplacian_of(G, f))
            if rt.rotor_act(G, v, gamma, T) != rt.rotor_act(G, v, shifted, T):
                ok, witness = False, {"gamma": gamma, "function": f, "tree": _tree_key(T)}
    report.add("rotor-representative-independence", name, {}, ok, witness)

    _check_torsor_axioms(report, name, G, "rotor-torsor", rt.rotor_act)

    ok, witness = True, None
    for C in rt.simple_cycles(G)[:6]:
        rotor = {d.tail: d.edge for d in C}
        reached = set(rotor)
        while len(reached) < len(G.vertices):
            for w in G.vertices:
                if w not in reached:
                    e = next(
                        (f for f in G.incident[w] if G.other_end(f, w) in reached),
                        None,
                    )
                    if e is not None:
                        rotor[w] = e
                        reached.add(w)
        chip = C[0].tail
        states, darts = rt.unicycle_orbit(G, rotor, chip)
        if states[-1] != states[0] or len(set(darts)) != 2 * len(G.edges):
            ok, witness = False, {"cycle": [list(d) for d in C]}
    report.add("unicycle-periodicity", name, {}, ok, witness)

    reversible = rt.all_cycles_reversible(G)
    report.add(
        "planarity-criterion",
        name,
        {"genus": gtop, "all_reversible": reversible},
        reversible == (gtop == 0),
    )

    ok, witness = True, None
    for C in rt.simple_cycles(G)[:4]:
        if rt.cycle_is_reversible(G, C, "bfs") != rt.cycle_is_reversible(G, C, "dfs"):
            ok, witness = False, {"cycle": [list(d) for d in C]}
    report.add("reversibility-orientation-independence", name, {}, ok, witness)


def _check_duality(
    report: SuiteReport, name: str, G: RibbonGraph, mirror_dual: bool = False
) -> None:
    fd = trace_faces(G)
    if fd.topological_genus != 0:
        return
    if any(not G.is_connected(without=e) for e in G.edge_ids):
        return
    corr = du.dual_graph(G, mirror=mirror_dual)
    Gd = corr.dual
    dual_fd = trace_faces(Gd)
    report.add(
        "euler-duality",
        name,
        {"faces": len(fd.faces)},
        len(Gd.vertices) == len(fd.faces)
        and len(Gd.edges) == len(G.edges)
        and dual_fd.topological_genus == 0
        and len(dual_fd.faces) == len(G.vertices),
    )

    group = dv.picard_group(G)
    dual_group = dv.picard_group(Gd)
    image = {
        c: dv.divisor_to_tuple(Gd, du.psi_class(corr, dv.tuple_to_divisor(G, c)))
        for c in group.elements
    }
    ok, witness = True, None
    if len(set(image.values())) != group.order or group.order != dual_group.order:
        ok, witness = False, {"order": group.order, "dual_order": dual_group.order}
    else:
        for a in group.elements:
            for b in group.elements:
                if dual_group.add(image[a], image[b]) != image[group.add(a, b)]:
                    ok, witness = False, {"a": list(a), "b": list(b)}
    report.add("psi-isomorphism", name, {}, ok, witness)

    trees = spanning_trees(G)
    duals = {du.dual_tree(corr, T) for T in trees}
    report.add(
        "dual-tree-bijection",
        name,
        {},
        duals == set(spanning_trees(Gd))
        and all(len(T) == len(Gd.vertices) - 1 for T in duals),
    )

    v = G.vertices[0]
    ok, witness = True, None
    for c in group.elements:
        gamma = dv.tuple_to_divisor(G, c)
        for T in trees:
            if not du.duality_square_check(corr, v, gamma, T):
                ok, witness = False, {"gamma": gamma, "tree": _tree_key(T)}
    report.add("duality-square", name, {"vertex": v}, ok, witness)


def _check_comparisons(report: SuiteReport, name: str, G: RibbonGraph) -> None:
    gtop = trace_faces(G).topological_genus
    agree_all = True
    first_witness = None
    for v1, v2 in combinations(G.vertices, 2):
        same, witness = compare_bernardi_vertices(G, v1, v2)
        if not same:
            agree_all = False
            if first_witness is None:
                first_witness = {"v1": v1, "v2": v2, **(witness or {})}
    if gtop == 0:
        report.add(
            "vertex-independence", name, {"genus": 0}, agree_all, first_witness
        )
    else:
        report.add(
            "vertex-dependence",
            name,
            {"genus": gtop},
            not agree_all,
            {"note": "no vertex pair distinguishes the actions"} if agree_all else None,
        )

    if gtop == 0:
        ok, witness = True, None
        for v in G.vertices:
            same, w = compare_torsors(G, v)
            if not same:
                ok, witness = False, {"vertex": v, **(w or {})}
        report.add("torsor-agreement", name, {"genus": 0}, ok, witness)


def run_theorem_suite(
    corpus: list[tuple[str, RibbonGraph]], mirror_dual: bool = False
) -> SuiteReport:
    """Run every module's documented invariants against every corpus graph.

    ``mirror_dual`` deliberately flips the dual-graph dart convention so the
    commuting-square checks fail with witnesses (a self-test of the suite).
    """
    report = SuiteReport()
    for name, G in corpus:
        _check_ribbon(report, name, G)
        _check_divisors(report, name, G)
        _check_break(report, name, G)
        _check_bernardi(report, name, G)
        _check_rotor(report, name, G)
        _check_duality(report, name, G, mirror_dual=mirror_dual)
        _check_comparisons(report, name, G)
    return report


# -- conjecture search ---------------------------------------------------------


def rotation_system_count(G: RibbonGraph) -> int:
    out = 1
    for v in G.vertices:
        out *= factorial(len(G.incident[v]) - 1)
    return out


def search_conjecture(G: RibbonGraph) -> dict:
    """Exhaustive rotation-system search for the planarity/agreement conjecture.

    For each rotation system of the underlying simple graph: genus 0 must give
    agreement of the two actions at every vertex (a hard assertion); for
    positive genus, whether some vertex distinguishes them is recorded.  A
    positive-genus system where no vertex distinguishes them would be a
    counterexample and is listed as a finding.
    """
    pairs = {tuple(sorted(pair)) for _, pair in G.edges}
    if len(pairs) != len(G.edges):
        raise NotSimple("the conjecture concerns graphs without multiple edges")

    systems = []
    counterexamples = []
    for i, sys in enumerate(rotation_systems(G)):
        genus = trace_faces(sys).topological_genus
        disagreeing = []
        for v in sys.vertices:
            same, _ = compare_torsors(sys, v)
            if not same:
                disagreeing.append(v)
        record = {
            "index": i,
            "rotation": {v: list(sys.rotation[v]) for v in sys.vertices},
            "genus": genus,
            "disagreeing_vertices": disagreeing,
        }
        if genus == 0:
            assert not disagreeing, (
                "genus-0 rotation system where the torsors disagree "
                f"(index {i}, vertices {disagreeing})"
            )
        elif not disagreeing:
            counterexamples.append(record)
        systems.append(record)

    expected = rotation_system_count(G)
    assert len(systems) == expected, "rotation-system enumeration is incomplete"
    return {
        "base_vertices": list(G.vertices),
        "system_count": len(systems),
        "systems": systems,
        "counterexamples": counterexamples,
    }
