"""
Tree-like quivers and colorings
===============================

When loops and parallel classes collapse to a forest, generators come from
good colorings: every good coloring yields one closed path by an Euler
circuit.
"""

from __future__ import annotations

from quiversi import load_fixture
from quiversi.enumeration import minimal_generating_set
from quiversi.symalg import GF2, QQ
from quiversi.treelike import Coloring, b_theta, good_colorings, hat_graph, tree_like_generating_set

q = load_fixture("ex_treelike")
h = hat_graph(q)
print("hat edges:", [sorted(e) for e in h.edges])

theta = Coloring.from_arrows(q, ["a", "b1", "c1", "c2", "d1", "d2"])
print("b_theta:", b_theta(q, theta))
print("good colorings:", sum(1 for _ in good_colorings(q)))

for fs in (GF2, QQ):
    same = set(tree_like_generating_set(q, fs).traces) == set(minimal_generating_set(q, fs).traces)
    print(f"{fs}: colorings agree with general enumeration: {same}")
