"""Tree-like quivers: the reduced graph, good colorings and their paths b_theta.

A coloring picks loops at vertices and parallel arrows along edges of the
reduced graph; since every arrow is either a loop or parallel to exactly one
reduced edge, a coloring is the same thing as a subset of arrows.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator

import networkx as nx

from .enumeration import (
    DEFAULT_ARROW_CAP,
    GeneratorSet,
    branch_of,
    is_tree_path,
    minimal_generating_set,
)
from .quiver import Letter, Multidegree, PathWord, Quiver, QuiverError, canonical_form, mdeg, validate_quiver
from .symalg import FieldSpec

Edge = frozenset  # frozenset({u, v}) with u != v


@dataclass(frozen=True)
class HatGraph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    backrefs: dict = field(hash=False)  # Edge -> tuple of arrow names
    loops: dict = field(hash=False)  # vertex -> tuple of loop names

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(tuple(sorted(e)) for e in self.edges)
        return g

    def edge_of(self, q: Quiver, arrow: str) -> Edge | None:
        a = q.arrow(arrow)
        return None if a.is_loop else Edge((a.head, a.tail))


def hat_graph(q: Quiver) -> HatGraph:
    """Underlying graph with loops removed and parallel edges merged."""
    back: dict[Edge, list[str]] = {}
    loops: dict[str, list[str]] = {v: [] for v in q.vertices}
    for a in sorted(q.arrows):
        if a.is_loop:
            loops[a.head].append(a.name)
        else:
            back.setdefault(Edge((a.head, a.tail)), []).append(a.name)
    edges = tuple(sorted(back, key=lambda e: sorted(e)))
    return HatGraph(tuple(q.vertices), edges, {e: tuple(v) for e, v in back.items()},
                    {v: tuple(n) for v, n in loops.items()})


def is_tree_like(q: Quiver) -> bool:
    """Every cycle of the underlying graph has at most two edges (the hat graph is a forest)."""
    return nx.is_forest(hat_graph(q).graph())


@dataclass(frozen=True)
class Coloring:
    """theta_v (loops per vertex) and theta_x (parallel arrows per hat edge)."""

    at_vertex: dict = field(hash=False)  # vertex -> frozenset of loop names
    at_edge: dict = field(hash=False)  # Edge -> frozenset of arrow names

    @classmethod
    def from_arrows(cls, q: Quiver, names: Iterable[str]) -> Coloring:
        h = hat_graph(q)
        chosen = set(names)
        at_v = {v: frozenset(n for n in h.loops[v] if n in chosen) for v in h.vertices}
        at_e = {e: frozenset(n for n in h.backrefs[e] if n in chosen) for e in h.edges}
        return cls(at_v, at_e)

    def arrows(self) -> set[str]:
        out: set[str] = set()
        for s in self.at_vertex.values():
            out |= s
        for s in self.at_edge.values():
            out |= s
        return out

    def is_empty(self) -> bool:
        return not self.arrows()

    def colored_graph(self) -> nx.Graph:
        """Colored edges plus vertices carrying colored loops."""
        g = nx.Graph()
        for e, s in self.at_edge.items():
            if s:
                g.add_edge(*sorted(e))
        for v, s in self.at_vertex.items():
            if s:
                g.add_node(v)
        return g

    def __str__(self) -> str:
        return "{" + ",".join(sorted(self.arrows())) + "}"


def _require_tree_like(q: Quiver) -> None:
    if not is_tree_like(q):
        raise QuiverError("quiver is not tree-like")


def is_good_coloring(q: Quiver, theta: Coloring) -> bool:
    _require_tree_like(q)
    if theta.is_empty():
        return False
    g = theta.colored_graph()
    if not nx.is_connected(g):
        return False
    if any(len(s) % 2 and len(s) != 1 for s in theta.at_edge.values()):
        return False
    for e, s in theta.at_edge.items():
        if len(s) != 1:
            continue
        for v in e:
            if g.degree(v) == 1 and not theta.at_vertex[v]:
                return False
    return True


def good_colorings(q: Quiver, cap: int = DEFAULT_ARROW_CAP) -> Iterator[Coloring]:
    _require_tree_like(q)
    if len(q.arrows) > cap:
        raise QuiverError(f"quiver has {len(q.arrows)} arrows, above the enumeration cap {cap}")
    names = q.arrow_names
    for r in range(1, len(names) + 1):
        for subset in itertools.combinations(names, r):
            theta = Coloring.from_arrows(q, subset)
            if is_good_coloring(q, theta):
                yield theta


def b_theta_multidegree(q: Quiver, theta: Coloring) -> Multidegree:
    counts = {n: 1 for s in theta.at_vertex.values() for n in s}
    for s in theta.at_edge.values():
        for n in s:
            counts[n] = 2 if len(s) == 1 else 1
    return Multidegree(counts)


def b_theta(q: Quiver, theta: Coloring) -> PathWord:
    """A closed path through the colored arrows with the prescribed degrees.

    Loops and arrows of even parallel classes appear once, the lone arrow of a
    class of size one twice (as a and a*).  Built as an Euler circuit.
    """
    if not is_good_coloring(q, theta):
        raise QuiverError(f"coloring {theta} is not good")
    g = nx.MultiGraph()
    for s in theta.at_vertex.values():
        for n in sorted(s):
            a = q.arrow(n)
            g.add_edge(a.head, a.tail, key=(n, 0))
    for s in theta.at_edge.values():
        for n in sorted(s):
            a = q.arrow(n)
            g.add_edge(a.head, a.tail, key=(n, 0))
            if len(s) == 1:
                g.add_edge(a.head, a.tail, key=(n, 1))
    start = min(g.nodes)
    letters = []
    for u, _, (n, _k) in nx.eulerian_circuit(g, source=start, keys=True):
        a = q.arrow(n)
        letters.append(Letter(n, starred=(a.head != u)))
    w = PathWord(tuple(letters))
    if not is_tree_path(q, w) or mdeg(q, w) != b_theta_multidegree(q, theta):
        raise QuiverError(f"internal error: b_theta for {theta} is not a tree path")
    return w


def satisfies_not2_conditions(q: Quiver, theta: Coloring) -> bool:
    """Conditions a) or b) selecting the admissible b_theta in characteristic != 2."""
    colored = {e: s for e, s in theta.at_edge.items() if s}
    loops = {v: s for v, s in theta.at_vertex.items() if s}
    if len(colored) == 1 and not loops and len(next(iter(colored.values()))) == 4:
        return True
    if any(len(s) > 2 for s in colored.values()):
        return False
    for v in theta.at_vertex:
        incident = sum(1 for e in colored if v in e)
        if len(theta.at_vertex[v]) + incident > 3:
            return False
    return True


def tree_like_generating_set(q: Quiver, fs: FieldSpec, cap: int = DEFAULT_ARROW_CAP) -> GeneratorSet:
    """dets plus tr(b_theta) over good colorings (restricted when char != 2)."""
    traces = {}
    for theta in good_colorings(q, cap):
        if fs.characteristic != 2 and not satisfies_not2_conditions(q, theta):
            continue
        w = canonical_form(b_theta(q, theta))
        traces[mdeg(q, w)] = w
    return GeneratorSet(tuple(q.arrow_names), dict(sorted(traces.items())), branch_of(fs))


# ---------- two vertices ----------

def two_vertex_quiver(p: int, q: int, l: int) -> Quiver:
    """Loops x1..xp at u, y1..yq at v, arrows z1..zl from v to u."""
    arrows = [(f"x{i}", "u", "u") for i in range(1, p + 1)]
    arrows += [(f"y{j}", "v", "v") for j in range(1, q + 1)]
    arrows += [(f"z{k}", "u", "v") for k in range(1, l + 1)]
    return validate_quiver(["u", "v"], arrows)


def _subsets(names: list[str], min_size: int, max_size: int | None = None):
    top = len(names) if max_size is None else min(max_size, len(names))
    for r in range(min_size, top + 1):
        yield from itertools.combinations(names, r)


def two_vertex_paths(p: int, q: int, l: int, char2: bool) -> list[PathWord]:
    """Families a)-d); with ``char2`` False the size constraints are applied."""
    xs = [f"x{i}" for i in range(1, p + 1)]
    ys = [f"y{j}" for j in range(1, q + 1)]
    zs = [f"z{k}" for k in range(1, l + 1)]
    lim3 = None if char2 else 3
    lim2 = None if char2 else 2

    def word(*groups) -> PathWord:
        return PathWord(tuple(x for g in groups for x in g))

    def plain(ns) -> list[Letter]:
        return [Letter(n) for n in ns]

    out = []
    for xi in _subsets(xs, 1, lim3):
        out.append(word(plain(xi)))
    for yj in _subsets(ys, 1, lim3):
        out.append(word(plain(yj)))
    for z in zs:
        for xi in _subsets(xs, 1, lim2):
            for yj in _subsets(ys, 1, lim2):
                out.append(word(plain(xi), [Letter(z)], plain(yj), [Letter(z, True)]))
    for t in range(1, l // 2 + 1):
        if not char2 and t > 2:
            break
        rs_lim = None if char2 else (2 if t == 1 else 0)
        for ks in itertools.combinations(zs, 2 * t):
            tail = []
            for k in range(1, t):
                tail += [Letter(ks[2 * k]), Letter(ks[2 * k + 1], True)]
            for xi in _subsets(xs, 0, rs_lim):
                for yj in _subsets(ys, 0, rs_lim):
                    out.append(word(plain(xi), [Letter(ks[0])], plain(yj),
                                    [Letter(ks[1], True)], tail))
    return out


def two_vertex_closed_form(p: int, q: int, l: int) -> int:
    """Size of the characteristic-2 generating set."""
    P, Qv = 2**p - 1, 2**q - 1
    even = sum(comb(l, 2 * t) for t in range(1, l // 2 + 1))
    return P + Qv + l * P * Qv + even * 2**p * 2**q + (p + q + l)


@dataclass(frozen=True)
class TwoVertexResult:
    generators: GeneratorSet
    count: int
    closed_form: int | None


def two_vertex_generating_set(p: int, q: int, l: int, fs: FieldSpec) -> TwoVertexResult:
    if min(p, q, l) < 0:
        raise ValueError("p, q, l must be natural numbers")
    quiver = two_vertex_quiver(p, q, l)
    char2 = fs.characteristic == 2
    traces = {}
    for w in two_vertex_paths(p, q, l, char2):
        traces[mdeg(quiver, w)] = canonical_form(w)
    gs = GeneratorSet(tuple(quiver.arrow_names), dict(sorted(traces.items())), branch_of(fs))
    return TwoVertexResult(gs, len(gs), two_vertex_closed_form(p, q, l) if char2 else None)


def tree_quiver_gens(q: Quiver, fs: FieldSpec) -> GeneratorSet:
    """For a tree quiver SI(Q) is generated freely by the determinants."""
    if not nx.is_tree(q.underlying_graph()):
        raise QuiverError("quiver is not a tree")
    gs = minimal_generating_set(q, fs)
    if gs.traces:
        raise AssertionError("a tree quiver produced trace generators")
    return gs
