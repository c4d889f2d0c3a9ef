"""
The decomposability oracle
==========================

An element is decomposable when it lies in the span of products of lower
degree invariants. The oracle builds each graded component from
determinants and traces of multilinear paths and answers with a certificate.
"""

from __future__ import annotations

from quiversi import load_fixture, parse_path
from quiversi.symalg import GF2, QQ, trace_poly
from quiversi.verify import Oracle, relation_suite, verify_minimality, verify_spanning

four = load_fixture("four_loops")
w = parse_path("a b c d")
for fs in (QQ, GF2):
    r = Oracle(four, fs).is_decomposable(trace_poly(four, w, fs))
    print(f"tr(abcd) over {fs}: {r.verdict}, witness terms {len(r.witness)}, round trip {r.round_trip()}")

two = load_fixture("two_loops")
r = Oracle(two, QQ).is_decomposable(trace_poly(two, parse_path("a a b")))
for term in r.witness:
    print("  ", term)

print("\n".join(verify_minimality(two, QQ).lines()))
print("spanning ok:", verify_spanning(two, GF2).ok)
print("relations ok:", relation_suite(QQ).ok, relation_suite(GF2).ok)
