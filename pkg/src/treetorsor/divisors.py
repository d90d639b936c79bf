"""Divisors, the Laplacian, q-reduced forms, and the Picard group.

A divisor is an integer chip count per vertex, handled as a plain dict
(missing vertices mean 0).  Canonical class representatives are q-reduced
divisors computed by a burning (Dhar) procedure; the designated base q is
the first vertex in file order.
"""

from __future__ import annotations

import json
from collections import deque
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .errors import MissingVertex, ParseError
from .ribbon import RibbonGraph

Divisor = dict  # vertex id -> int

COEFF_BOUND = 10**6


def divisor_to_tuple(G: RibbonGraph, D: Mapping[str, int]) -> tuple[int, ...]:
    for v in D:
        if v not in G.rotation:
            raise MissingVertex(f"divisor mentions unknown vertex {v!r}")
    return tuple(int(D.get(v, 0)) for v in G.vertices)


def tuple_to_divisor(G: RibbonGraph, t: tuple[int, ...]) -> Divisor:
    return {v: c for v, c in zip(G.vertices, t)}


def degree(D: Mapping[str, int]) -> int:
    return sum(D.values())


def add(D1: Mapping[str, int], D2: Mapping[str, int]) -> Divisor:
    out = dict(D1)
    for v, c in D2.items():
        out[v] = out.get(v, 0) + c
    return out


def sub(D1: Mapping[str, int], D2: Mapping[str, int]) -> Divisor:
    out = dict(D1)
    for v, c in D2.items():
        out[v] = out.get(v, 0) - c
    return out


def parse_divisor(G: RibbonGraph, text: str) -> Divisor:
    """Parse the JSON divisor format: {vertex: chips, ...}."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ParseError("divisor file must be a JSON object")
    out: Divisor = {}
    for v, c in obj.items():
        if v not in G.rotation:
            raise MissingVertex(f"divisor mentions unknown vertex {v!r}")
        if not isinstance(c, int):
            raise ParseError(f"coefficient of {v!r} must be an integer")
        if abs(c) > COEFF_BOUND:
            raise ParseError(f"coefficient of {v!r} exceeds bound {COEFF_BOUND}")
        out[v] = c
    return out


def laplacian_of(G: RibbonGraph, f: Mapping[str, int]) -> Divisor:
    """The Laplacian of the vertex function ``f``, as a degree-0 divisor."""
    for v in G.vertices:
        if v not in f:
            raise MissingVertex(f"function is undefined at {v!r}")
    out = {v: 0 for v in G.vertices}
    for _, (a, b) in G.edges:
        d = f[a] - f[b]
        out[a] += d
        out[b] -= d
    return out


def _bfs_order(G: RibbonGraph, q: str) -> list[str]:
    order = [q]
    seen = {q}
    queue = deque([q])
    while queue:
        v = queue.popleft()
        for e in G.incident[v]:
            w = G.other_end(e, v)
            if w not in seen:
                seen.add(w)
                order.append(w)
                queue.append(w)
    return order


def _burn(G: RibbonGraph, coeff: dict, q: str) -> set:
    """Dhar's burning from q; returns the set of unburnt vertices."""
    unburnt = set(G.vertices) - {q}
    changed = True
    while changed:
        changed = False
        for v in list(unburnt):
            burnt_edges = sum(
                1 for e in G.incident[v] if G.other_end(e, v) not in unburnt
            )
            if burnt_edges > coeff[v]:
                unburnt.discard(v)
                changed = True
    return unburnt


@lru_cache(maxsize=None)
def _q_reduce(G: RibbonGraph, dt: tuple[int, ...], q: str) -> tuple[int, ...]:
    coeff = {v: c for v, c in zip(G.vertices, dt)}
    order = _bfs_order(G, q)
    pos = {v: i for i, v in enumerate(order)}

    # Bring every vertex except q to a non-negative count, working from the
    # farthest vertex inward: firing the set of strictly closer vertices only
    # adds chips at the vertex being fixed.
    for i in range(len(order) - 1, 0, -1):
        v = order[i]
        closer = set(order[:i])
        while coeff[v] < 0:
            for w in closer:
                out = sum(
                    1
                    for e in G.incident[w]
                    if pos[G.other_end(e, w)] >= i
                )
                coeff[w] -= out
            for j in range(i, len(order)):
                u = order[j]
                coeff[u] += sum(
                    1 for e in G.incident[u] if pos[G.other_end(e, u)] < i
                )

    # Superstabilize: while some nonempty subset of V - q can fire without
    # going negative, fire the maximal such set (the unburnt set).
    while True:
        unburnt = _burn(G, coeff, q)
        if not unburnt:
            break
        for v in unburnt:
            out = sum(
                1 for e in G.incident[v] if G.other_end(e, v) not in unburnt
            )
            coeff[v] -= out
        for v in G.vertices:
            if v not in unburnt:
                coeff[v] += sum(
                    1 for e in G.incident[v] if G.other_end(e, v) in unburnt
                )
    return tuple(coeff[v] for v in G.vertices)


def q_reduce(G: RibbonGraph, D: Mapping[str, int], q: str | None = None) -> Divisor:
    """The unique q-reduced divisor linearly equivalent to ``D``."""
    if q is None:
        q = G.vertices[0]
    return tuple_to_divisor(G, _q_reduce(G, divisor_to_tuple(G, D), q))


def is_q_reduced(G: RibbonGraph, D: Mapping[str, int], q: str | None = None) -> bool:
    if q is None:
        q = G.vertices[0]
    coeff = {v: D.get(v, 0) for v in G.vertices}
    if any(coeff[v] < 0 for v in G.vertices if v != q):
        return False
    return not _burn(G, coeff, q)


def are_equivalent(G: RibbonGraph, D1: Mapping[str, int], D2: Mapping[str, int]) -> bool:
    """Whether D1 - D2 is a principal divisor."""
    if degree(D1) != degree(D2):
        return False
    diff = divisor_to_tuple(G, sub(D1, D2))
    return all(c == 0 for c in _q_reduce(G, diff, G.vertices[0]))


def tree_count_determinant(G: RibbonGraph) -> int:
    """Kirchhoff count: determinant of the reduced Laplacian, exact."""
    idx = {v: i for i, v in enumerate(G.vertices[1:])}
    n = len(idx)
    mat = [[Fraction(0)] * n for _ in range(n)]
    for _, (a, b) in G.edges:
        for v, w in ((a, b), (b, a)):
            if v in idx:
                mat[idx[v]][idx[v]] += 1
                if w in idx:
                    mat[idx[v]][idx[w]] -= 1
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if mat[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            det = -det
        det *= mat[col][col]
        for r in range(col + 1, n):
            factor = mat[r][col] / mat[col][col]
            if factor:
                for c in range(col, n):
                    mat[r][c] -= factor * mat[col][c]
    assert det.denominator == 1
    return int(det)


class PicardGroup:
    """The group of degree-0 divisor classes, with q-reduced representatives.

    Elements are coefficient tuples in vertex file order; the identity is the
    all-zero tuple.
    """

    def __init__(self, G: RibbonGraph):
        self.graph = G
        self.q = G.vertices[0]
        self.elements = _picard_elements(G)
        self.order = len(self.elements)
        self.zero = (0,) * len(G.vertices)
        self._index = {c: i for i, c in enumerate(self.elements)}

    def class_of(self, D: Mapping[str, int]) -> tuple[int, ...]:
        return _q_reduce(self.graph, divisor_to_tuple(self.graph, D), self.q)

    def add(self, c1: tuple[int, ...], c2: tuple[int, ...]) -> tuple[int, ...]:
        return _q_reduce(self.graph, tuple(a + b for a, b in zip(c1, c2)), self.q)

    def neg(self, c: tuple[int, ...]) -> tuple[int, ...]:
        return _q_reduce(self.graph, tuple(-a for a in c), self.q)

    def generators(self) -> dict[str, tuple[int, ...]]:
        """Class of (u) - (q) for each vertex u != q."""
        out = {}
        for u in self.graph.vertices[1:]:
            out[u] = self.class_of({u: 1, self.q: -1})
        return out

    def contains(self, c: tuple[int, ...]) -> bool:
        return c in self._index


@lru_cache(maxsize=None)
def _picard_elements(G: RibbonGraph) -> tuple[tuple[int, ...], ...]:
    # A q-reduced degree-0 divisor has 0 <= D(v) < deg(v) for v != q, so the
    # product of those ranges is a finite search space; the burn test filters
    # it down to exactly the q-reduced ones.
    q = G.vertices[0]
    others = G.vertices[1:]
    out = []

    def rec(i: int, coeff: dict):
        if i == len(others):
            coeff = dict(coeff)
            coeff[q] = -sum(coeff.values())
            if not _burn(G, coeff, q):
                out.append(tuple(coeff[v] for v in G.vertices))
            return
        v = others[i]
        for c in range(len(G.incident[v])):
            coeff[v] = c
            rec(i + 1, coeff)
        del coeff[v]

    rec(0, {})
    out.sort()
    return tuple(out)


@lru_cache(maxsize=None)
def picard_group(G: RibbonGraph) -> PicardGroup:
    return PicardGroup(G)
