"""Quivers, the doubled quiver Q*, path words and their combinatorics.

Conventions follow matrix-product order: a word ``a1 a2 ... as`` is a path
when ``tail(a_i) == head(a_{i+1})``.  The head of the word is the head of its
first letter, the tail is the tail of its last letter.  A starred letter
``a*`` runs against ``a``: ``head(a*) = tail(a)`` and ``tail(a*) = head(a)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

import networkx as nx


class QuiverError(ValueError):
    """Malformed quiver, path word or an operation applied outside its domain."""


class Arrow(NamedTuple):
    name: str
    head: str
    tail: str

    @property
    def is_loop(self) -> bool:
        return self.head == self.tail


class Letter(NamedTuple):
    """An arrow of Q*: a base arrow of Q, possibly starred.

    Tuple order gives the global letter order: by name, unstarred first.
    """

    name: str
    starred: bool = False

    def star(self) -> Letter:
        return Letter(self.name, not self.starred)

    def __str__(self) -> str:
        return self.name + ("*" if self.starred else "")


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    _by_name: Mapping[str, Arrow] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_by_name", {a.name: a for a in self.arrows})

    def arrow(self, name: str) -> Arrow:
        try:
            return self._by_name[name]
        except KeyError:
            raise QuiverError(f"unknown arrow {name!r}") from None

    def has_arrow(self, name: str) -> bool:
        return name in self._by_name

    @property
    def arrow_names(self) -> list[str]:
        return sorted(self._by_name)

    def head(self, letter: Letter) -> str:
        a = self.arrow(letter.name)
        return a.tail if letter.starred else a.head

    def tail(self, letter: Letter) -> str:
        a = self.arrow(letter.name)
        return a.head if letter.starred else a.tail

    def letters(self) -> list[Letter]:
        """All arrows of Q* in the global letter order."""
        return [Letter(n, s) for n in self.arrow_names for s in (False, True)]

    def doubled(self) -> Quiver:
        """Q* as an ordinary quiver; starred arrows are named ``a*``."""
        arrows = list(self.arrows)
        arrows += [Arrow(a.name + "*", a.tail, a.head) for a in self.arrows]
        return Quiver(self.vertices, tuple(arrows))

    def underlying_graph(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(self.vertices)
        for a in self.arrows:
            g.add_edge(a.head, a.tail, key=a.name)
        return g

    def to_text(self) -> str:
        lines = [f"vertex {v}" for v in self.vertices]
        lines += [f"arrow {a.name} {a.head} {a.tail}" for a in self.arrows]
        return "\n".join(lines) + "\n"


def validate_quiver(vertices: Iterable[str], arrows: Iterable[tuple[str, str, str]]) -> Quiver:
    """Build a Quiver from raw vertex names and ``(name, head, tail)`` triples."""
    vs = list(vertices)
    dup = [v for v, c in Counter(vs).items() if c > 1]
    if dup:
        raise QuiverError(f"duplicate vertex {dup[0]!r}")
    known = set(vs)
    out = []
    seen = set()
    for name, head, tail in arrows:
        if name in seen:
            raise QuiverError(f"duplicate arrow {name!r}")
        seen.add(name)
        for v in (head, tail):
            if v not in known:
                raise QuiverError(f"undeclared vertex {v!r} in arrow {name!r}")
        if not name or name.endswith("*") or name.startswith("1@"):
            raise QuiverError(f"invalid arrow name {name!r}")
        out.append(Arrow(name, head, tail))
    return Quiver(tuple(vs), tuple(out))


def parse_quiver(text: str) -> Quiver:
    """Parse the line format ``vertex <name>`` / ``arrow <name> <head> <tail>``."""
    vertices: list[str] = []
    arrows: list[tuple[str, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertex" and len(parts) == 2:
            vertices.append(parts[1])
        elif parts[0] == "arrow" and len(parts) == 4:
            arrows.append((parts[1], parts[2], parts[3]))
        else:
            raise QuiverError(f"line {lineno}: cannot parse {raw.strip()!r}")
    return validate_quiver(vertices, arrows)


@dataclass(frozen=True)
class PathWord:
    letters: tuple[Letter, ...]
    basepoint: str | None = None

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return f"1@{self.basepoint}"
        return " ".join(str(x) for x in self.letters)

    @classmethod
    def of(cls, letters: Iterable[Letter]) -> PathWord:
        return cls(tuple(letters))

    @property
    def is_empty(self) -> bool:
        return not self.letters

    def rotate(self, k: int) -> PathWord:
        if not self.letters:
            return self
        k %= len(self.letters)
        return PathWord(self.letters[k:] + self.letters[:k])


def parse_path(text: str) -> PathWord:
    """Parse ``"x y* z"``; the empty path at ``v`` is written ``1@v``."""
    tokens = text.split()
    if len(tokens) == 1 and tokens[0].startswith("1@"):
        v = tokens[0][2:]
        if not v:
            raise QuiverError("empty path needs a vertex: 1@<vertex>")
        return PathWord((), v)
    if not tokens:
        raise QuiverError("empty path word; write 1@<vertex> for the empty path")
    letters = []
    for tok in tokens:
        starred = tok.endswith("*")
        name = tok[:-1] if starred else tok
        if not name or "*" in name:
            raise QuiverError(f"bad letter {tok!r}")
        letters.append(Letter(name, starred))
    return PathWord(tuple(letters))


def word(text: str) -> PathWord:
    return parse_path(text)


def _check_letters(q: Quiver, w: PathWord) -> None:
    for x in w.letters:
        q.arrow(x.name)
    if w.is_empty and w.basepoint not in q.vertices:
        raise QuiverError(f"unknown vertex {w.basepoint!r}")


def is_path(q: Quiver, w: PathWord) -> bool:
    _check_letters(q, w)
    return all(q.tail(a) == q.head(b) for a, b in zip(w.letters, w.letters[1:]))


def path_kind(q: Quiver, w: PathWord) -> str:
    """One of ``not-a-path``, ``open-path``, ``closed-path``, ``empty-path``."""
    if not is_path(q, w):
        return "not-a-path"
    if w.is_empty:
        return "empty-path"
    return "closed-path" if word_head(q, w) == word_tail(q, w) else "open-path"


def is_closed(q: Quiver, w: PathWord) -> bool:
    return path_kind(q, w) == "closed-path"


def word_head(q: Quiver, w: PathWord) -> str:
    return w.basepoint if w.is_empty else q.head(w.letters[0])


def word_tail(q: Quiver, w: PathWord) -> str:
    return w.basepoint if w.is_empty else q.tail(w.letters[-1])


def require_closed(q: Quiver, w: PathWord) -> None:
    if not is_closed(q, w):
        raise QuiverError(f"{w} is not a closed path")


def star_path(w: PathWord) -> PathWord:
    """``(a1 ... as)* = as* ... a1*``."""
    return PathWord(tuple(x.star() for x in reversed(w.letters)), w.basepoint)


def vertices_of(q: Quiver, letters: Iterable[Letter]) -> set[str]:
    out: set[str] = set()
    for x in letters:
        a = q.arrow(x.name)
        out.add(a.head)
        out.add(a.tail)
    return out


class Multidegree:
    """Per-arrow counts ``deg_a + deg_{a*}``; stored sparsely, zero entries dropped."""

    __slots__ = ("items", "_hash")

    def __init__(self, counts: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        pairs = counts.items() if isinstance(counts, Mapping) else counts
        acc: dict[str, int] = {}
        for k, v in pairs:
            if v < 0:
                raise ValueError("multidegree entries are natural numbers")
            if v:
                acc[k] = acc.get(k, 0) + v
        self.items: tuple[tuple[str, int], ...] = tuple(sorted(acc.items()))
        self._hash = hash(self.items)

    def __getitem__(self, name: str) -> int:
        return dict(self.items).get(name, 0)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Multidegree) and self.items == other.items

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: Multidegree) -> bool:
        return self.sort_key() < other.sort_key()

    def __add__(self, other: Multidegree) -> Multidegree:
        return Multidegree(self.items + other.items)

    def __sub__(self, other: Multidegree) -> Multidegree:
        d = dict(self.items)
        for k, v in other.items:
            d[k] = d.get(k, 0) - v
        return Multidegree(d)

    def __mul__(self, t: int) -> Multidegree:
        return Multidegree({k: v * t for k, v in self.items})

    __rmul__ = __mul__

    def __le__(self, other: Multidegree) -> bool:
        o = dict(other.items)
        return all(v <= o.get(k, 0) for k, v in self.items)

    def __bool__(self) -> bool:
        return bool(self.items)

    @property
    def total(self) -> int:
        return sum(v for _, v in self.items)

    def as_dict(self) -> dict[str, int]:
        return dict(self.items)

    def sort_key(self):
        return (self.total, self.items)

    def vector(self, names: Iterable[str]) -> tuple[int, ...]:
        d = dict(self.items)
        return tuple(d.get(n, 0) for n in names)

    def __repr__(self) -> str:
        return "Multidegree({" + ",".join(f"{k}:{v}" for k, v in self.items) + "})"

    def __str__(self) -> str:
        return "{" + ",".join(f"{k}:{v}" for k, v in self.items) + "}"


def mdeg(q: Quiver, w: PathWord) -> Multidegree:
    _check_letters(q, w)
    return Multidegree(Counter(x.name for x in w.letters))


def canonicalize(q: Quiver, w: PathWord) -> PathWord:
    """Least word among all rotations of ``w`` and of ``star_path(w)``."""
    require_closed(q, w)
    return canonical_form(w)


def canonical_form(w: PathWord) -> PathWord:
    """Same as :func:`canonicalize` without the closedness check."""
    best = None
    for cand in (w.letters, star_path(w).letters):
        n = len(cand)
        for k in range(n):
            r = cand[k:] + cand[:k]
            if best is None or r < best:
                best = r
    return PathWord(best)


def glue_vertices(q: Quiver, keep: str, drop: str) -> Quiver:
    """Identify ``drop`` with ``keep``; arrow names are preserved."""
    for v in (keep, drop):
        if v not in q.vertices:
            raise QuiverError(f"unknown vertex {v!r}")
    if keep == drop:
        raise QuiverError("cannot glue a vertex with itself")

    def sub(v: str) -> str:
        return keep if v == drop else v

    arrows = tuple(Arrow(a.name, sub(a.head), sub(a.tail)) for a in q.arrows)
    return Quiver(tuple(v for v in q.vertices if v != drop), arrows)


def glue_many(q: Quiver, groups: Iterable[Iterable[str]]) -> Quiver:
    """Glue every group of vertices into its least member."""
    for group in groups:
        members = sorted(set(group))
        for v in members[1:]:
            q = glue_vertices(q, members[0], v)
    return q


def flip_arrows(q: Quiver, subset: Iterable[str]) -> Quiver:
    """Swap head and tail of the named arrows."""
    names = set(subset)
    for n in names:
        q.arrow(n)
    arrows = tuple(Arrow(a.name, a.tail, a.head) if a.name in names else a for a in q.arrows)
    return Quiver(q.vertices, arrows)


@dataclass(frozen=True)
class BlockDecomposition:
    double_arrows: tuple[str, ...]
    blocks: tuple[Quiver, ...]
    tree: nx.Graph = field(compare=False)

    def leaf_blocks(self) -> list[int]:
        if self.tree.number_of_nodes() == 1:
            return [0]
        return [j for j in self.tree.nodes if self.tree.degree(j) == 1]


def blocks_and_tree(q: Quiver, w: PathWord) -> BlockDecomposition:
    """Blocks of a tree path and the tree they form along its double arrows.

    Raises QuiverError if ``w`` is not a tree path.
    """
    require_closed(q, w)
    letters = w.letters
    if len(set(letters)) != len(letters):
        raise QuiverError(f"{w} is not multilinear")
    names = Counter(x.name for x in letters)
    doubles = sorted(n for n, c in names.items() if c == 2)
    singles = sorted(n for n, c in names.items() if c == 1)

    g = nx.Graph()
    g.add_nodes_from(vertices_of(q, letters))
    for n in singles:
        a = q.arrow(n)
        g.add_edge(a.head, a.tail)
    comps = sorted((sorted(c) for c in nx.connected_components(g)), key=lambda c: c[0])
    where = {v: j for j, comp in enumerate(comps) for v in comp}

    tree = nx.MultiGraph()
    tree.add_nodes_from(range(len(comps)))
    for n in doubles:
        a = q.arrow(n)
        if where[a.head] == where[a.tail]:
            raise QuiverError(f"{w} is not a tree path: {n} stays inside one block")
        tree.add_edge(where[a.head], where[a.tail], key=n)
    if not nx.is_tree(tree):
        raise QuiverError(f"{w} is not a tree path: blocks do not form a tree")
    tree = nx.Graph(tree)

    blocks = []
    for comp in comps:
        arrows = tuple(q.arrow(n) for n in singles if q.arrow(n).head in comp)
        blocks.append(Quiver(tuple(comp), arrows))
    bd = BlockDecomposition(tuple(doubles), tuple(blocks), tree)
    if len(blocks) > 1 and any(not blocks[j].arrows for j in bd.leaf_blocks()):
        raise QuiverError(f"{w} is not a tree path: a leaf block has no arrows")
    return bd
