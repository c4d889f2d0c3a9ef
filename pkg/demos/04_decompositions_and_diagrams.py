"""
Decompositions and type diagrams
================================

A multilinear closed path splits into primitive cycles, usually in several
ways. The intersection graph of the parts, marked by the number of shared
vertices, decides admissibility.
"""

from __future__ import annotations

from quiversi import load_fixture, parse_path
from quiversi.enumeration import (
    decomposition_admissible,
    enumerate_decompositions,
    path_admissible,
    type_diagram,
)

q = load_fixture("ex_decomp")
h = parse_path("a1 a2 b4 b1 b2 c4 c1 c2 d4 d1 d2 d3 c3 b3 a3 a4")
for k, d in enumerate(enumerate_decompositions(q, h), 1):
    print(f"{k}: {d}")
    print(f"   {type_diagram(q, d)}  admissible={decomposition_admissible(q, d)}")

# four loops at one vertex: the only decomposition has four parts through one vertex
four = load_fixture("four_loops")
print(path_admissible(four, parse_path("a b c d")))

ok, witness = path_admissible(load_fixture("ex1b"),
                              parse_path("y1 x1 x2 y2 a1 a2 b1 b2 y3 c1 c2 d1 d2 y4 z2 z1"))
print("ex1b admissible:", ok, "with", witness)
