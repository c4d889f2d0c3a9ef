"""Tree paths, admissible paths and minimal generating sets of SI(Q).

Two independent routes produce tree paths:

* :func:`closed_multilinear_paths` walks Q* depth-first and keeps every
  closed walk using each letter at most once (exponential; small quivers).
* :func:`enumerate_tree_paths` works support by support.  A set S of arrows
  carries a tree path iff S is connected, its bridges are non-loop arrows
  with arrows on both sides, and the remaining arrows have even degree at
  every vertex.  Bridges become the double arrows x, x*; the tree paths on S
  are then exactly the Euler circuits of S with bridges doubled, and the
  least one is built greedily.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import networkx as nx

from .quiver import (
    Letter,
    Multidegree,
    PathWord,
    Quiver,
    QuiverError,
    canonical_form,
    is_closed,
    mdeg,
    require_closed,
    vertices_of,
)
from .symalg import CapExceeded, FieldSpec

DEFAULT_ARROW_CAP = 14


# ---------- predicates on words ----------

def is_multilinear(q: Quiver, w: PathWord) -> bool:
    require_closed(q, w)
    return len(set(w.letters)) == len(w.letters)


def _double_splits(w: PathWord):
    """For each x with x and x* in w: (x, c, d) where w ~ x c x* d."""
    letters = w.letters
    pos = {x: i for i, x in enumerate(letters)}
    n = len(letters)
    for i, x in enumerate(letters):
        if x.starred or x.star() not in pos:
            continue
        j = pos[x.star()]
        rot = letters[i:] + letters[:i]
        k = (j - i) % n
        yield x, rot[1:k], rot[k + 1:]


def is_tree_path(q: Quiver, w: PathWord) -> bool:
    if not is_multilinear(q, w):
        return False
    for _, c, d in _double_splits(w):
        if not c or not d:
            return False
        if vertices_of(q, c) & vertices_of(q, d):
            return False
    return True


def is_simple_tree_path(q: Quiver, w: PathWord) -> bool:
    """A tree path whose single (non-doubled) arrows are all loops."""
    if not is_tree_path(q, w):
        return False
    names = Counter(x.name for x in w.letters)
    return all(q.arrow(n).is_loop for n, c in names.items() if c == 1)


# ---------- brute-force walk enumeration ----------

def closed_multilinear_paths(q: Quiver, bound: Multidegree | None = None,
                             max_len: int | None = None) -> list[PathWord]:
    """Canonical forms of all closed multilinear paths of Q*.

    ``bound`` limits each arrow's multidegree; ``max_len`` the word length.
    Depth-first over letters in the global order; every walk is generated
    once from its least letter.
    """
    letters = q.letters()
    by_head: dict[str, list[Letter]] = defaultdict(list)
    for x in letters:
        by_head[q.head(x)].append(x)
    limit = dict(bound.items) if bound is not None else None
    found: set[tuple[Letter, ...]] = set()

    def allowed(x: Letter, counts: Counter) -> bool:
        if limit is None:
            return True
        return counts[x.name] < limit.get(x.name, 0)

    for first in letters:
        counts: Counter = Counter()
        if not allowed(first, counts):
            continue
        start = q.head(first)
        counts[first.name] += 1
        stack = [first]
        used = {first}

        def dfs(cur: str) -> None:
            if cur == start:
                found.add(canonical_form(PathWord(tuple(stack))).letters)
            if max_len is not None and len(stack) >= max_len:
                return
            for x in by_head[cur]:
                if x <= first or x in used or not allowed(x, counts):
                    continue
                used.add(x)
                counts[x.name] += 1
                stack.append(x)
                dfs(q.tail(x))
                stack.pop()
                counts[x.name] -= 1
                used.discard(x)

        dfs(q.tail(first))
    return [PathWord(t) for t in sorted(found)]


def brute_force_tree_paths(q: Quiver) -> dict[Multidegree, PathWord]:
    """Least canonical tree path per multidegree, by exhaustive walk enumeration."""
    out: dict[Multidegree, PathWord] = {}
    for w in closed_multilinear_paths(q):
        if is_tree_path(q, w):
            d = mdeg(q, w)
            if d not in out or w.letters < out[d].letters:
                out[d] = w
    return dict(sorted(out.items()))


# ---------- structural enumeration ----------

def _components(nodes: Iterable[str], edges: Iterable[tuple[str, str]]) -> list[set[str]]:
    adj: dict[str, set[str]] = {v: set() for v in nodes}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen: set[str] = set()
    comps = []
    for s in adj:
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in comp:
                    comp.add(v)
                    stack.append(v)
        seen |= comp
        comps.append(comp)
    return comps


@dataclass(frozen=True)
class TreeShape:
    """Arrow support of a tree path: single arrows and double (bridge) arrows."""

    singles: tuple[str, ...]
    doubles: tuple[str, ...]

    @property
    def multidegree(self) -> Multidegree:
        return Multidegree([(n, 1) for n in self.singles] + [(n, 2) for n in self.doubles])


def tree_shape(q: Quiver, support: Iterable[str]) -> TreeShape | None:
    """The tree-path shape on ``support``, or None if no tree path uses exactly it."""
    names = sorted(set(support))
    if not names:
        return None
    arrows = [q.arrow(n) for n in names]
    verts = {v for a in arrows for v in (a.head, a.tail)}
    edges = [(a.head, a.tail) for a in arrows]
    if len(_components(verts, edges)) != 1:
        return None
    bridges = []
    for k, a in enumerate(arrows):
        if a.is_loop:
            continue
        rest = edges[:k] + edges[k + 1:]
        comps = _components(verts, rest)
        if len(comps) == 1:
            continue
        side = next(c for c in comps if a.head in c)
        n_side = sum(1 for e in rest if e[0] in side)
        if n_side == 0 or n_side == len(rest):
            return None
        bridges.append(a.name)
    deg: Counter = Counter()
    for a in arrows:
        if a.name in bridges or a.is_loop:
            continue
        deg[a.head] += 1
        deg[a.tail] += 1
    if any(c % 2 for c in deg.values()):
        return None
    bset = set(bridges)
    return TreeShape(tuple(n for n in names if n not in bset), tuple(bridges))


def tree_shapes(q: Quiver, cap: int = DEFAULT_ARROW_CAP) -> list[TreeShape]:
    if len(q.arrows) > cap:
        raise CapExceeded(f"quiver has {len(q.arrows)} arrows, above the enumeration cap {cap}")
    names = q.arrow_names
    out = []
    for r in range(1, len(names) + 1):
        for support in itertools.combinations(names, r):
            s = tree_shape(q, support)
            if s is not None:
                out.append(s)
    return out


def least_euler_word(q: Quiver, tokens: list[tuple[Letter, ...]]) -> PathWord:
    """Lexicographically least closed walk realizing every token exactly once.

    A token is a tuple of interchangeable letters (``(a, a*)`` for an arrow
    whose direction is free, ``(x,)`` for a fixed letter).  A letter is taken
    greedily when the unused tokens stay connected to where it leads.
    """
    ends = []
    for opts in tokens:
        a = q.arrow(opts[0].name)
        ends.append((a.head, a.tail))
    n = len(tokens)
    used = [False] * n

    def feasible(nxt: str, start: str) -> bool:
        rest = [k for k in range(n) if not used[k]]
        if not rest:
            return nxt == start
        adj: dict[str, list[str]] = defaultdict(list)
        for k in rest:
            u, v = ends[k]
            adj[u].append(v)
            adj[v].append(u)
        if nxt not in adj:
            return False
        seen = {nxt}
        stack = [nxt]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == len(adj)

    first, k0 = min((x, k) for k, opts in enumerate(tokens) for x in opts)
    used[k0] = True
    start = q.head(first)
    cur = q.tail(first)
    out = [first]
    while len(out) < n:
        cands = sorted((x, k) for k in range(n) if not used[k]
                       for x in tokens[k] if q.head(x) == cur)
        for x, k in cands:
            used[k] = True
            if feasible(q.tail(x), start):
                out.append(x)
                cur = q.tail(x)
                break
            used[k] = False
        else:
            raise QuiverError("tokens do not form a closed walk")
    if cur != start:
        raise QuiverError("tokens do not form a closed walk")
    return PathWord(tuple(out))


def shape_tokens(shape: TreeShape) -> list[tuple[Letter, ...]]:
    toks: list[tuple[Letter, ...]] = [(Letter(n), Letter(n, True)) for n in shape.singles]
    for n in shape.doubles:
        toks += [(Letter(n),), (Letter(n, True),)]
    return toks


def least_tree_path(q: Quiver, shape: TreeShape) -> PathWord:
    return least_euler_word(q, shape_tokens(shape))


def enumerate_tree_paths(q: Quiver, cap: int = DEFAULT_ARROW_CAP) -> dict[Multidegree, PathWord]:
    """The set S_II: least canonical tree path for every realized multidegree."""
    out = {s.multidegree: least_tree_path(q, s) for s in tree_shapes(q, cap)}
    return dict(sorted(out.items()))


# ---------- decompositions and diagrams ----------

@dataclass(frozen=True)
class Decomposition:
    """Arrow-disjoint primitive closed paths covering a multilinear path."""

    parts: tuple[PathWord, ...]

    def letter_sets(self) -> list[frozenset[Letter]]:
        return [frozenset(p.letters) for p in self.parts]

    def __str__(self) -> str:
        return "{" + ", ".join(f"({p})" for p in self.parts) + "}"


def _cycles_through(q: Quiver, first: Letter, pool: set[Letter], by_head) -> Iterator[tuple[Letter, ...]]:
    start = q.head(first)
    if q.tail(first) == start:
        yield (first,)
        return
    path = [first]
    visited = {start, q.tail(first)}

    def dfs(cur: str):
        for x in by_head[cur]:
            if x not in pool or x in path:
                continue
            nxt = q.tail(x)
            if nxt == start:
                yield tuple(path) + (x,)
            elif nxt not in visited:
                visited.add(nxt)
                path.append(x)
                yield from dfs(nxt)
                path.pop()
                visited.discard(nxt)

    yield from dfs(q.tail(first))


def iter_letter_set_decompositions(q: Quiver, letters: Iterable[Letter]) -> Iterator[Decomposition]:
    pool = set(letters)
    by_head: dict[str, list[Letter]] = defaultdict(list)
    for x in sorted(pool):
        by_head[q.head(x)].append(x)
    seen: set[frozenset] = set()

    def rec(remaining: set[Letter], acc: list[tuple[Letter, ...]]):
        if not remaining:
            key = frozenset(frozenset(c) for c in acc)
            if key not in seen:
                seen.add(key)
                yield Decomposition(tuple(PathWord(c) for c in sorted(acc)))
            return
        first = min(remaining)
        for cyc in _cycles_through(q, first, remaining, by_head):
            acc.append(cyc)
            yield from rec(remaining - set(cyc), acc)
            acc.pop()

    yield from rec(pool, [])


def enumerate_decompositions(q: Quiver, w: PathWord) -> list[Decomposition]:
    if not is_multilinear(q, w):
        raise QuiverError(f"{w} is not multilinear")
    return list(iter_letter_set_decompositions(q, w.letters))


@dataclass(frozen=True)
class Diagram:
    """Intersection graph of decomposition parts; ``edges[(i, j)]`` is the mark, i < j."""

    n: int
    edges: dict = field(hash=False)

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        for (i, j), m in self.edges.items():
            g.add_edge(i, j, mark=m)
        return g

    def mark(self, i: int, j: int) -> int:
        return self.edges.get((min(i, j), max(i, j)), 0)

    def __str__(self) -> str:
        es = ", ".join(f"{i}-{j}:{m}" for (i, j), m in sorted(self.edges.items()))
        return f"nodes {self.n}; edges [{es}]"


def part_vertices(q: Quiver, d: Decomposition) -> list[set[str]]:
    return [vertices_of(q, p.letters) for p in d.parts]


def type_diagram(q: Quiver, d: Decomposition) -> Diagram:
    vs = part_vertices(q, d)
    edges = {}
    for i, j in itertools.combinations(range(len(vs)), 2):
        t = len(vs[i] & vs[j])
        if t:
            edges[(i, j)] = t
    return Diagram(len(vs), edges)


def diagram_admissible(D: Diagram) -> bool:
    """Marks in {1, 2}; every cycle of D is a triangle with all marks 1."""
    if any(m not in (1, 2) for m in D.edges.values()):
        return False
    g = D.graph()
    for comp in nx.biconnected_component_edges(g):
        if len(comp) == 1:
            continue
        nodes = {v for e in comp for v in e}
        if len(comp) != 3 or len(nodes) != 3:
            return False
        if any(D.mark(i, j) != 1 for i, j in comp):
            return False
    return True


def _triangles(D: Diagram) -> list[tuple[int, int, int]]:
    g = D.graph()
    out = []
    for comp in nx.biconnected_component_edges(g):
        if len(comp) == 3:
            out.append(tuple(sorted({v for e in comp for v in e})))
    return out


def _cycle_vertex_order(q: Quiver, part: PathWord) -> list[str]:
    return [q.head(x) for x in part.letters]


def _chain_ok(q: Quiver, bi: set[str], bj: PathWord, bk: set[str]) -> bool:
    shared = [v for v in _cycle_vertex_order(q, bj) if v in bi]
    if len(shared) != 2:
        return False
    order = _cycle_vertex_order(q, bj)
    p, r = order.index(shared[0]), order.index(shared[1])
    arc1 = set(order[p:r + 1])
    arc2 = set(order[r:] + order[:p + 1])
    return not (arc1 & bk) or not (arc2 & bk)


def decomposition_admissible(q: Quiver, d: Decomposition) -> bool:
    D = type_diagram(q, d)
    if not diagram_admissible(D):
        return False
    vs = part_vertices(q, d)
    for i, j, k in _triangles(D):
        common = vs[i] & vs[j]
        if not (common == vs[i] & vs[k] == vs[j] & vs[k]) or len(common) != 1:
            return False
    twos = defaultdict(list)
    for (i, j), m in D.edges.items():
        if m == 2:
            twos[i].append(j)
            twos[j].append(i)
    for j, nbrs in twos.items():
        for i, k in itertools.permutations(nbrs, 2):
            if not _chain_ok(q, vs[i], d.parts[j], vs[k]):
                return False
    return True


def admissible_witness(q: Quiver, letters: Iterable[Letter]) -> Decomposition | None:
    for d in iter_letter_set_decompositions(q, letters):
        if decomposition_admissible(q, d):
            return d
    return None


def path_admissible(q: Quiver, w: PathWord) -> tuple[bool, Decomposition | None]:
    """Admissibility of a multilinear path together with a witness decomposition."""
    if not is_multilinear(q, w):
        raise QuiverError(f"{w} is not multilinear")
    wit = admissible_witness(q, w.letters)
    return wit is not None, wit


def _balanced_orientations(q: Quiver, shape: TreeShape) -> Iterator[list[Letter]]:
    """Letter sets with in-degree = out-degree everywhere; loops unstarred, doubles as x, x*."""
    loops = [n for n in shape.singles if q.arrow(n).is_loop]
    free = [q.arrow(n) for n in shape.singles if not q.arrow(n).is_loop]
    fixed = [Letter(n) for n in loops]
    for n in shape.doubles:
        fixed += [Letter(n), Letter(n, True)]
    left: Counter = Counter()
    for a in free:
        left[a.head] += 1
        left[a.tail] += 1
    bal: Counter = Counter()
    chosen: list[Letter] = []

    def rec(k: int) -> Iterator[list[Letter]]:
        if k == len(free):
            yield fixed + chosen
            return
        a = free[k]
        left[a.head] -= 1
        left[a.tail] -= 1
        for starred in (False, True):
            h, t = (a.tail, a.head) if starred else (a.head, a.tail)
            bal[h] += 1
            bal[t] -= 1
            if abs(bal[h]) <= left[h] and abs(bal[t]) <= left[t]:
                chosen.append(Letter(a.name, starred))
                yield from rec(k + 1)
                chosen.pop()
            bal[h] -= 1
            bal[t] += 1
        left[a.head] += 1
        left[a.tail] += 1

    yield from rec(0)


def least_admissible_tree_path(q: Quiver, shape: TreeShape) -> PathWord | None:
    best = None
    verdicts: dict[frozenset, bool] = {}
    for letters in _balanced_orientations(q, shape):
        key = frozenset(letters)
        dual = frozenset(x.star() for x in letters if not q.arrow(x.name).is_loop) | \
            frozenset(x for x in letters if q.arrow(x.name).is_loop)
        if key in verdicts:
            ok = verdicts[key]
        elif dual in verdicts:
            ok = verdicts[dual]
        else:
            ok = verdicts[key] = admissible_witness(q, letters) is not None
        if not ok:
            continue
        w = least_euler_word(q, [(x,) for x in letters])
        if best is None or w.letters < best.letters:
            best = w
    return best


def enumerate_admissible_tree_paths(q: Quiver, cap: int = DEFAULT_ARROW_CAP) -> dict[Multidegree, PathWord]:
    """The set S_I: least admissible tree path for every multidegree that has one."""
    out = {}
    for s in tree_shapes(q, cap):
        w = least_admissible_tree_path(q, s)
        if w is not None:
            out[s.multidegree] = w
    return dict(sorted(out.items()))


# ---------- generating sets ----------

def branch_of(fs: FieldSpec | int) -> str:
    p = fs.characteristic if isinstance(fs, FieldSpec) else fs
    return "char2" if p == 2 else "not2"


@dataclass(frozen=True)
class GeneratorSet:
    dets: tuple[str, ...]
    traces: dict = field(hash=False)  # Multidegree -> PathWord
    branch: str = "char2"

    def __len__(self) -> int:
        return len(self.dets) + len(self.traces)

    def multidegrees(self) -> list[Multidegree]:
        return [Multidegree({a: 2}) for a in self.dets] + list(self.traces)

    def entries(self) -> list[tuple[Multidegree, str, object]]:
        rows = [(Multidegree({a: 2}), "det", a) for a in self.dets]
        rows += [(d, "tr", w) for d, w in self.traces.items()]
        return sorted(rows, key=lambda r: (r[0].sort_key(), r[1]))

    def lines(self) -> list[str]:
        out = []
        for d, kind, obj in self.entries():
            out.append(f"det {obj}" if kind == "det" else f"tr {obj} | mdeg {d}")
        return out

    def serialize(self) -> str:
        return "\n".join(self.lines()) + ("\n" if len(self) else "")


def parse_generator_set(text: str, branch: str = "char2") -> GeneratorSet:
    from .quiver import parse_path

    dets, traces = [], {}
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("det "):
            dets.append(line[4:].strip())
        elif line.startswith("tr "):
            body, _, md = line[3:].partition("| mdeg")
            w = parse_path(body)
            counts = {}
            inner = md.strip().strip("{}")
            for item in filter(None, inner.split(",")):
                k, v = item.split(":")
                counts[k.strip()] = int(v)
            traces[Multidegree(counts)] = w
        else:
            raise ValueError(f"cannot parse generator line {line!r}")
    return GeneratorSet(tuple(sorted(dets)), traces, branch)


def minimal_generating_set(q: Quiver, fs: FieldSpec, cap: int = DEFAULT_ARROW_CAP) -> GeneratorSet:
    """dets of all arrows plus traces over S_II (characteristic 2) or S_I (otherwise)."""
    if fs.characteristic == 2:
        traces = enumerate_tree_paths(q, cap)
    else:
        traces = enumerate_admissible_tree_paths(q, cap)
    return GeneratorSet(tuple(q.arrow_names), traces, branch_of(fs))
