"""Strategies and small constructors shared by the test modules."""

from __future__ import annotations

from hypothesis import strategies as st

from quiversi import load_fixture, validate_quiver
from quiversi.quiver import Letter, PathWord

VERTS = ("u", "v", "w")


@st.composite
def quivers(draw, max_vertices: int = 3, max_arrows: int = 4, min_arrows: int = 1):
    n = draw(st.integers(1, max_vertices))
    vs = list(VERTS[:n])
    k = draw(st.integers(min_arrows, max_arrows))
    arrows = []
    for i in range(k):
        h = draw(st.sampled_from(vs))
        t = draw(st.sampled_from(vs))
        arrows.append((f"a{i}", h, t))
    return validate_quiver(vs, arrows)


@st.composite
def closed_walks(draw, q, max_len: int = 6):
    """A random closed walk in Q*, or None when the random walk fails to close."""
    letters = q.letters()
    first = draw(st.sampled_from(letters))
    start = q.head(first)
    word = [first]
    cur = q.tail(first)
    steps = draw(st.integers(0, max_len - 1))
    for _ in range(steps):
        nxt = [x for x in letters if q.head(x) == cur]
        x = draw(st.sampled_from(nxt))
        word.append(x)
        cur = q.tail(x)
    if cur != start:
        back = [x for x in letters if q.head(x) == cur and q.tail(x) == start]
        if not back:
            return None
        word.append(draw(st.sampled_from(back)))
    return PathWord(tuple(word))


def fixture(name: str):
    return load_fixture(name)


def loops(*names: str):
    return validate_quiver(["v"], [(n, "v", "v") for n in names])


def W(text: str) -> PathWord:
    from quiversi.quiver import parse_path

    return parse_path(text)


__all__ = ["quivers", "closed_walks", "fixture", "loops", "W", "Letter"]
