"""
Traces, determinants and semi-invariance
========================================

Every arrow gets a generic 2x2 matrix; a starred letter gets the adjugate.
Traces of closed paths and determinants of arrows are fixed by SL(2) at
every vertex, which we check exactly with elementary matrices.
"""

from __future__ import annotations

from quiversi import load_fixture, parse_path
from quiversi.symalg import GF2, QQ, Mat2, adjoint_star, det_poly, format_poly, generic_matrix, trace_poly
from quiversi.verify import check_semi_invariance

m = generic_matrix("a")
print("X_a* =", adjoint_star(m))
print("X_a X_a* = det(X_a) E:", m * adjoint_star(m) == m.det() * Mat2.identity(QQ))

q = load_fixture("one_arrow")
# tr(z1 z1*) is twice the determinant, so it vanishes in characteristic 2
print("tr(z1 z1*) =", format_poly(trace_poly(q, parse_path("z1 z1*"))))
print("det(z1)    =", format_poly(det_poly("z1")))
print("over GF(2):", format_poly(trace_poly(q, parse_path("z1 z1*"), GF2)))

k = load_fixture("kronecker_loops")
f = trace_poly(k, parse_path("z1 y1 z2* x1"))
print("terms in tr(z1 y1 z2* x1):", len(f))
print("semi-invariant:", check_semi_invariance(f, k))
