"""
Minimal generating sets
=======================

In characteristic 2 the traces run over one tree path per multidegree; in
any other characteristic only admissible tree paths are kept.
"""

from __future__ import annotations

import time

from quiversi import load_fixture
from quiversi.enumeration import minimal_generating_set
from quiversi.symalg import GF2, QQ
from quiversi.treelike import two_vertex_generating_set, two_vertex_quiver

four = load_fixture("four_loops")
g2 = minimal_generating_set(four, GF2)
g0 = minimal_generating_set(four, QQ)
print(f"four loops: {len(g2)} generators in characteristic 2, {len(g0)} otherwise")
print("only in characteristic 2:", [str(g2.traces[d]) for d in set(g2.traces) - set(g0.traces)])
print(minimal_generating_set(load_fixture("two_loops"), QQ).serialize())

# the path quiver u <- v <- w <- s is a tree: determinants only
print(minimal_generating_set(load_fixture("path3"), QQ).serialize())

# two vertices with 4 loops each and 4 parallel arrows
t = time.perf_counter()
for fs in (GF2, QQ):
    r = two_vertex_generating_set(4, 4, 4, fs)
    general = len(minimal_generating_set(two_vertex_quiver(4, 4, 4), fs))
    print(f"{fs}: families {r.count}, general enumeration {general}, closed form {r.closed_form}")
print(f"{time.perf_counter() - t:.2f}s")
