"""Rotor-routing: tree rotors, the chip step, the tree action, and unicycles.

A rotor configuration assigns each non-sink vertex an outgoing edge.  One step
rotates the rotor at the chip vertex to the next edge in the rotation and
moves the chip across that edge.  Sink-free dynamics on unicycle states drive
the cycle reversibility test behind the planarity criterion.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Mapping

from . import divisors as dv
from .errors import ChipAtSink, NotACycle
from .ribbon import Dart, RibbonGraph, _UnionFind, is_spanning_tree, tree_path


def rotors_from_tree(G: RibbonGraph, T: frozenset, root: str) -> dict:
    """Each non-root vertex points along its unique tree path toward the root."""
    out = {}
    for z in G.vertices:
        if z != root:
            out[z] = tree_path(G, T, z, root)[0].edge
    return out


def rotor_step(G: RibbonGraph, rotor: Mapping[str, str], chip: str) -> tuple[dict, str]:
    """Advance the rotor at the chip and move the chip; pure."""
    if chip not in rotor:
        raise ChipAtSink(f"chip is at the sink vertex {chip!r}")
    new_edge = G.next_edge(chip, rotor[chip])
    nxt = dict(rotor)
    nxt[chip] = new_edge
    return nxt, G.other_end(new_edge, chip)


@lru_cache(maxsize=None)
def rotor_move(G: RibbonGraph, T: frozenset, x: str, y: str) -> frozenset:
    """The tree ((x) - (y))_y applied to T: route a chip from x to the sink y."""
    rotor = rotors_from_tree(G, T, y)
    chip = x
    budget = 10**6
    while chip != y:
        rotor, chip = rotor_step(G, rotor, chip)
        budget -= 1
        if budget < 0:  # pragma: no cover - rotor walks with a sink always halt
            raise AssertionError("rotor walk failed to reach the sink")
    result = frozenset(rotor.values())
    assert is_spanning_tree(G, result), "terminal rotor state must be a spanning tree"
    return result


def rotor_act(
    G: RibbonGraph, v: str, gamma: Mapping[str, int], T: frozenset
) -> frozenset:
    """The rotor-routing action of the degree-0 class of ``gamma`` on ``T``.

    The v-reduced representative keeps all coefficients away from v small and
    non-negative, so the action is a short product of single-chip moves; any
    residual multiple of the group order is dropped, since n copies of a
    generator act trivially.
    """
    n = dv.picard_group(G).order
    reduced = dv.q_reduce(G, gamma, v)
    result = T
    for u in G.vertices:
        if u == v:
            continue
        for _ in range(reduced.get(u, 0) % n):
            result = rotor_move(G, result, u, v)
    return result


def unicycle_orbit(
    G: RibbonGraph, rotor: Mapping[str, str], chip: str
) -> tuple[list[tuple[tuple, str]], list[Dart]]:
    """Run 2|E| sink-free steps; return visited states and traversed darts.

    States are (sorted rotor items, chip) tuples; the state after the last
    step closes the orbit back to the start.
    """
    def key(r: Mapping[str, str], c: str) -> tuple[tuple, str]:
        return tuple(sorted(r.items())), c

    states = [key(rotor, chip)]
    darts = []
    r, c = dict(rotor), chip
    for _ in range(2 * len(G.edges)):
        prev = c
        r, c = rotor_step(G, r, c)
        darts.append(Dart(r[prev], prev))
        states.append(key(r, c))
    return states, darts


def _validate_cycle(G: RibbonGraph, C: tuple[Dart, ...]) -> None:
    if not C:
        raise NotACycle("empty dart sequence")
    for d in C:
        if d.edge not in G.ends or d.tail not in (G.ends[d.edge]):
            raise NotACycle(f"dart {d} is not a dart of the graph")
    for d, nxt in zip(C, C[1:] + C[:1]):
        if G.head(d) != nxt.tail:
            raise NotACycle("darts do not chain head-to-tail")
    tails = [d.tail for d in C]
    if len(set(tails)) != len(tails):
        raise NotACycle("cycle revisits a vertex")


def cycle_is_reversible(G: RibbonGraph, C: tuple[Dart, ...], orientation: str = "bfs") -> bool:
    """Whether the directed simple cycle ``C`` is reversible.

    Builds a unicycle with rotors along C (all other vertices oriented toward
    the cycle) and asks whether the reversed-cycle state appears in the
    2|E|-step orbit.  ``orientation`` picks how off-cycle vertices point at
    the cycle ("bfs" or "dfs", file-order ties); the verdict is independent
    of that choice, which the suite spot-checks.
    """
    C = tuple(C)
    _validate_cycle(G, C)
    on_cycle = {d.tail for d in C}
    rotor = {d.tail: d.edge for d in C}
    if orientation == "bfs":
        frontier = [v for v in G.vertices if v in on_cycle]
        seen = set(on_cycle)
        while frontier:
            nxt = []
            for v in frontier:
                for e in G.incident[v]:
                    w = G.other_end(e, v)
                    if w not in seen:
                        seen.add(w)
                        rotor[w] = e
                        nxt.append(w)
            frontier = nxt
    elif orientation == "dfs":
        seen = set(on_cycle)
        stack = [v for v in G.vertices if v in on_cycle]
        while stack:
            v = stack.pop()
            for e in G.incident[v]:
                w = G.other_end(e, v)
                if w not in seen:
                    seen.add(w)
                    rotor[w] = e
                    stack.append(w)
    else:
        raise ValueError(f"unknown orientation {orientation!r}")
    chip = min(on_cycle, key=G.vertex_pos)

    reversed_rotor = dict(rotor)
    for d in C:
        reversed_rotor[G.head(d)] = d.edge
    target = (tuple(sorted(reversed_rotor.items())), chip)

    states, _ = unicycle_orbit(G, rotor, chip)
    assert states[-1] == states[0], "unicycle orbit must close after 2|E| steps"
    return target in states


@lru_cache(maxsize=None)
def simple_cycles(G: RibbonGraph) -> tuple[tuple[Dart, ...], ...]:
    """One orientation of every simple cycle: connected 2-regular edge subsets."""
    out = []
    for k in range(2, len(G.edges) + 1):
        for combo in combinations(G.edge_ids, k):
            deg: dict[str, int] = {}
            for e in combo:
                a, b = G.ends[e]
                deg[a] = deg.get(a, 0) + 1
                deg[b] = deg.get(b, 0) + 1
            if any(c != 2 for c in deg.values()):
                continue
            uf = _UnionFind(deg)
            if sum(0 if uf.union(*G.ends[e]) else 1 for e in combo) != 1:
                continue
            # orient: walk from the first endpoint of the first edge
            e0 = combo[0]
            start = G.ends[e0][0]
            darts = [Dart(e0, start)]
            used = {e0}
            v = G.other_end(e0, start)
            while v != start:
                e = next(
                    f for f in G.incident[v] if f in combo and f not in used
                )
                darts.append(Dart(e, v))
                used.add(e)
                v = G.other_end(e, v)
            out.append(tuple(darts))
    return tuple(out)


def reverse_cycle(G: RibbonGraph, C: tuple[Dart, ...]) -> tuple[Dart, ...]:
    return tuple(G.reverse(d) for d in reversed(C))


def all_cycles_reversible(G: RibbonGraph) -> bool:
    """The planarity criterion predicate (both orientations of each cycle)."""
    for C in simple_cycles(G):
        if not cycle_is_reversible(G, C):
            return False
        if not cycle_is_reversible(G, reverse_cycle(G, C)):
            return False
    return True
