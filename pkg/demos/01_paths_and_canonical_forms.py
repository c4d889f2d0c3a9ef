"""
Quivers, paths and canonical forms
==================================

A quiver is a directed multigraph. Words are read in matrix-product order,
so ``x y`` is composable when the tail of ``x`` is the head of ``y``.
"""

from __future__ import annotations

from quiversi import load_fixture, parse_path, parse_quiver
from quiversi.quiver import canonicalize, mdeg, path_kind, star_path

# a quiver from text: a loop at u, a loop at v and one arrow z1 with head u, tail v
q = parse_quiver("""
vertex u
vertex v
arrow a u u
arrow b v v
arrow z1 u v
""")
print(q.to_text())

# the doubled quiver adds z1* going the other way
for text in ["a z1 b z1*", "z1 z1", "z1", "1@v"]:
    print(f"{text:12s} -> {path_kind(q, parse_path(text))}")

# star reverses a word and stars every letter
w = parse_path("a z1 b z1*")
print("star:", star_path(w))

# rotations and the star give the same trace, so they share one canonical form
print("canonical:", canonicalize(q, w), "=", canonicalize(q, star_path(w).rotate(2)))
print("multidegree:", mdeg(q, w))

# fixtures ship with the package
print(load_fixture("kronecker_loops").to_text())
