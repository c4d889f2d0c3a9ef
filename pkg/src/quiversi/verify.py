"""Exact verification: semi-invariance, relation identities and a graded oracle.

The oracle works one multidegree at a time.  The component ``A_e`` of
SI(Q) is spanned by the classical generators of multidegree e (determinants
of arrows, traces of multilinear closed paths) together with all products
``A_{e1} A_{e2}`` with ``e1 + e2 = e``.  The products alone span the
decomposable part, so decomposability is a linear membership question with
an exact certificate.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Iterable, NamedTuple

from .enumeration import (
    GeneratorSet,
    closed_multilinear_paths,
    is_tree_path,
    minimal_generating_set,
)
from .linalg import EchelonSpan
from .quiver import (
    Letter,
    Multidegree,
    PathWord,
    Quiver,
    QuiverError,
    canonical_form,
    mdeg,
    parse_path,
    validate_quiver,
)
from .symalg import (
    GF2,
    QQ,
    CapExceeded,
    FieldSpec,
    Mat2,
    MatrixAssignment,
    Poly,
    adjoint_star,
    det_poly,
    elementary_action,
    generic_matrix,
    param,
    sigma,
    word_matrix,
    xvar,
)

DEFAULT_DEGREE_CAP = 8


class Check(NamedTuple):
    ok: bool
    check_id: str
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.check_id} {self.detail}".rstrip()


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)

    def add(self, ok: bool, check_id: str, detail: str = "") -> bool:
        self.checks.append(Check(bool(ok), check_id, detail))
        return bool(ok)

    def extend(self, other: Report) -> None:
        self.checks.extend(other.checks)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]

    def __str__(self) -> str:
        return "\n".join(self.lines())


# ---------- semi-invariance ----------

def _fresh_param(f: Poly) -> object:
    used = {v.name for v in f.variables() if v.kind == 1}
    k = 0
    while f"t{k}" in used:
        k += 1
    return param(f"t{k}")


def check_semi_invariance(f: Poly, q: Quiver) -> bool:
    """Exact SL(2)^{Q_0}-invariance via both elementary generators at every vertex."""
    t = _fresh_param(f)
    for v in q.vertices:
        for kind in ("upper", "lower"):
            if elementary_action(f, q, v, kind, t) != f:
                return False
    return True


# ---------- graded components ----------

@dataclass(frozen=True)
class GradedComponent:
    multidegree: Multidegree
    basis: tuple
    field: FieldSpec

    def __len__(self) -> int:
        return len(self.basis)


def _multisets(vars_: list, k: int) -> list[tuple]:
    return list(itertools.combinations_with_replacement(vars_, k))


def component_basis(q: Quiver, d: Multidegree, fs: FieldSpec = QQ,
                    cap: int = DEFAULT_DEGREE_CAP) -> GradedComponent:
    """Every monomial in the x[a][i][j] whose per-arrow degree is ``d``."""
    if d.total > cap:
        raise CapExceeded(f"total degree {d.total} exceeds the cap {cap}")
    per_arrow = []
    for name, k in d.items:
        q.arrow(name)
        vs = [xvar(name, i, j) for i in (1, 2) for j in (1, 2)]
        per_arrow.append(_multisets(vs, k))
    monos = []
    for choice in itertools.product(*per_arrow):
        cnt: dict = defaultdict(int)
        for group in choice:
            for v in group:
                cnt[v] += 1
        monos.append(tuple(sorted(cnt.items())))
    monos.sort()
    return GradedComponent(d, tuple(monos), fs)


def component_dimension_bound(d: Multidegree) -> int:
    out = 1
    for _, k in d.items:
        out *= comb(k + 3, 3)
    return out


def poly_multidegree(f: Poly) -> Multidegree:
    degs = f.arrow_degrees()
    if len(degs) > 1:
        raise QuiverError("polynomial is not multihomogeneous")
    return Multidegree(next(iter(degs)) if degs else ())


def _sub_multidegrees(e: Multidegree) -> list[Multidegree]:
    names = [k for k, _ in e.items]
    ranges = [range(v + 1) for _, v in e.items]
    out = [Multidegree(dict(zip(names, c))) for c in itertools.product(*ranges)]
    return [d for d in out if d and d != e]


class Element(NamedTuple):
    label: str
    poly: Poly


class WitnessTerm(NamedTuple):
    coef: object
    left: Element
    right: Element

    def __str__(self) -> str:
        return f"{self.coef} * [{self.left.label}] * [{self.right.label}]"


@dataclass
class DecomposabilityReport:
    target: Poly
    decomposable: bool
    witness: list[WitnessTerm] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "decomposable" if self.decomposable else "indecomposable"

    def expand(self) -> Poly:
        out = Poly(self.target.field)
        for t in self.witness:
            out = out + t.left.poly * t.right.poly * t.coef
        return out

    def round_trip(self) -> bool:
        return not self.decomposable or self.expand() == self.target


class GradedSubalgebra:
    """Multidegree components of the subalgebra generated by a family of elements.

    ``generators(e)`` returns the generating elements of multidegree exactly e.
    For each component two spans are kept: products of lower components only
    (the decomposable part) and products plus generators (the whole component).
    """

    def __init__(self, fs: FieldSpec, generators: Callable[[Multidegree], list[Element]],
                 cap: int = DEFAULT_DEGREE_CAP):
        self.field = fs
        self.generators = generators
        self.cap = cap
        self._basis: dict[Multidegree, list[Element]] = {}
        self._products: dict[Multidegree, tuple[EchelonSpan, list[WitnessTerm]]] = {}
        self._full: dict[Multidegree, tuple[EchelonSpan, list[Element]]] = {}
        self._product_polys: dict[Multidegree, list[Poly]] = {}

    def _check_cap(self, e: Multidegree) -> None:
        if e.total > self.cap:
            raise CapExceeded(f"multidegree {e} has total degree above the cap {self.cap}")

    def products(self, e: Multidegree) -> tuple[EchelonSpan, list[WitnessTerm]]:
        """Span of products of lower components, tagged by factor pairs."""
        if e in self._products:
            return self._products[e]
        self._check_cap(e)
        span = EchelonSpan(self.field)
        terms: list[WitnessTerm] = []
        polys: list[Poly] = []
        for e1 in sorted(_sub_multidegrees(e)):
            e2 = e - e1
            if e2 < e1:
                continue
            b1, b2 = self.basis(e1), self.basis(e2)
            for i, g in enumerate(b1):
                for j, h in enumerate(b2):
                    if e1 == e2 and j < i:
                        continue
                    p = g.poly * h.poly
                    span.add(p.terms, len(terms))
                    terms.append(WitnessTerm(1, g, h))
                    polys.append(p)
        self._products[e] = (span, terms)
        self._product_polys[e] = polys
        return span, terms

    def basis(self, e: Multidegree) -> list[Element]:
        """Independent elements spanning the component: products first, then generators."""
        if e in self._basis:
            return self._basis[e]
        self._check_cap(e)
        _, terms = self.products(e)
        span = EchelonSpan(self.field)
        basis: list[Element] = []
        for t, p in zip(terms, self._product_polys[e]):
            if span.add(p.terms, len(basis)):
                basis.append(Element(f"{t.left.label} * {t.right.label}", p))
        for g in self.generators(e):
            if span.add(g.poly.terms, len(basis)):
                basis.append(g)
        self._basis[e] = basis
        self._full[e] = (span, basis)
        return basis

    def dimension(self, e: Multidegree) -> int:
        return len(self.basis(e))

    def decomposition(self, f: Poly, e: Multidegree | None = None) -> DecomposabilityReport:
        if not f:
            return DecomposabilityReport(f, True)
        if e is None:
            e = poly_multidegree(f)
        if not e:
            return DecomposabilityReport(f, False)
        span, terms = self.products(e)
        combo = span.express(f.terms)
        if combo is None:
            return DecomposabilityReport(f, False)
        wit = [WitnessTerm(c, terms[k].left, terms[k].right) for k, c in sorted(combo.items())]
        return DecomposabilityReport(f, True, wit)

    def membership(self, f: Poly, e: Multidegree | None = None) -> list[tuple[object, Element]] | None:
        """Coefficients over component basis elements reproducing f, or None."""
        if e is None:
            e = poly_multidegree(f)
        if not e:
            return [] if not f else None
        self.basis(e)
        span, basis = self._full[e]
        combo = span.express(f.terms)
        if combo is None:
            return None
        return [(c, basis[k]) for k, c in sorted(combo.items())]


class Oracle:
    """Graded components of SI(Q) built from determinants and multilinear traces."""

    def __init__(self, q: Quiver, fs: FieldSpec = QQ, cap: int = DEFAULT_DEGREE_CAP):
        self.q = q
        self.field = fs
        self.cap = cap
        self._walks: dict[Multidegree, list[PathWord]] | None = None
        self.algebra = GradedSubalgebra(fs, self.classical_generators, cap)

    def multilinear_paths(self) -> dict[Multidegree, list[PathWord]]:
        if self._walks is None:
            groups: dict[Multidegree, list[PathWord]] = defaultdict(list)
            for w in closed_multilinear_paths(self.q, max_len=self.cap):
                groups[mdeg(self.q, w)].append(w)
            self._walks = dict(groups)
        return self._walks

    def trace(self, w: PathWord) -> Poly:
        return sigma(1, self.q, w, self.field, cap=max(self.cap, len(w)))

    def classical_generators(self, e: Multidegree) -> list[Element]:
        out = []
        if len(e.items) == 1 and e.items[0][1] == 2:
            a = e.items[0][0]
            out.append(Element(f"det({a})", det_poly(a, self.field)))
        for w in self.multilinear_paths().get(e, []):
            out.append(Element(f"tr({w})", self.trace(w)))
        return out

    def is_decomposable(self, f: Poly) -> DecomposabilityReport:
        return self.algebra.decomposition(f)


def spanning_generators(q: Quiver, d: Multidegree, fs: FieldSpec = QQ,
                        cap: int = DEFAULT_DEGREE_CAP) -> list[Poly]:
    """Products of classical generators whose multidegrees add up to ``d``."""
    if d.total > cap:
        raise CapExceeded(f"total degree {d.total} exceeds the cap {cap}")
    orc = Oracle(q, fs, cap)
    gens_by_deg: dict[Multidegree, list[Element]] = {}
    for e in [*_sub_multidegrees(d), d] if d else []:
        g = orc.classical_generators(e)
        if g:
            gens_by_deg[e] = g
    degs = sorted(gens_by_deg)
    out: list[Poly] = []

    def rec(start: int, remaining: Multidegree, acc: Poly | None):
        if not remaining:
            if acc is not None:
                out.append(acc)
            return
        for k in range(start, len(degs)):
            e = degs[k]
            if not e <= remaining:
                continue
            for g in gens_by_deg[e]:
                rec(k, remaining - e, g.poly if acc is None else acc * g.poly)

    rec(0, d, None)
    return out


def is_decomposable(f: Poly, q: Quiver, fs: FieldSpec | None = None,
                    cap: int = DEFAULT_DEGREE_CAP) -> DecomposabilityReport:
    fs = fs or f.field
    if fs != f.field:
        raise ValueError(f"characteristic mismatch: {fs} vs {f.field}")
    e = poly_multidegree(f)
    if e.total > cap:
        raise CapExceeded(f"total degree {e.total} exceeds the cap {cap}")
    return Oracle(q, fs, cap).is_decomposable(f)


# ---------- relation identities ----------

def _quiver(vertices, arrows) -> Quiver:
    return validate_quiver(vertices, arrows)


def _loops(*names: str) -> Quiver:
    return _quiver(["v"], [(n, "v", "v") for n in names])


def relation_quivers() -> dict[str, Quiver]:
    return {
        "loops": _loops("a", "b", "c", "d"),
        # composite closed paths at u: p = y1 y2, together with a loop c
        "composite": _quiver(["u", "v"], [("y1", "u", "v"), ("y2", "v", "u"), ("c", "u", "u")]),
        # x, x1, x2, y1, y2 all with head u and tail v; loop a at u
        "bundle": _quiver(["u", "v"], [(n, "u", "v") for n in ("x", "x1", "x2", "y1", "y2")]
                          + [("a", "u", "u")]),
        # a = x1 y1 and b = x2 y2 meet at w != v; loop c at v
        "r2": _quiver(["v", "w"], [("x1", "v", "w"), ("x2", "v", "w"), ("y1", "w", "v"),
                                   ("y2", "w", "v"), ("c", "v", "v")]),
    }


def _tr(q: Quiver, text: str, fs: FieldSpec, assign: MatrixAssignment | None = None) -> Poly:
    w = parse_path(text)
    if assign is None:
        return sigma(1, q, w, fs)
    return word_matrix(w.letters, assign).trace()


def _det(q: Quiver, text: str, fs: FieldSpec, assign: MatrixAssignment | None = None) -> Poly:
    w = parse_path(text)
    return word_matrix(w.letters, assign or MatrixAssignment(fs)).det()


def _bidegree_part(f: Poly, first: str, second: str) -> Poly:
    def keep(m) -> bool:
        d1 = sum(e for v, e in m if v.kind == 0 and v.name == first)
        d2 = sum(e for v, e in m if v.kind == 0 and v.name == second)
        return d1 == 1 and d2 == 1

    return f.filter(keep)


def _linearized(fs: FieldSpec, target: str, first: str, second: str) -> MatrixAssignment:
    m = generic_matrix(first, fs) + generic_matrix(second, fs)
    return MatrixAssignment(fs, {target: m})


def exact_identity_checks(fs: FieldSpec) -> Report:
    """The identities behind relations (0), (A)-(E) and their linearizations."""
    qs = relation_quivers()
    L, C, B = qs["loops"], qs["composite"], qs["bundle"]
    rep = Report()
    tag = f"[{fs}]"

    # (0)
    for t in (1, 2):
        rep.add(sigma(t, C, parse_path("y1 y2 c*"), fs) == sigma(t, C, parse_path("c y2* y1*"), fs),
                f"rel-0-star-sigma{t}", tag)
        rep.add(sigma(t, C, parse_path("y1 y2 c"), fs) == sigma(t, C, parse_path("c y1 y2"), fs),
                f"rel-0-rotate-sigma{t}", tag)
    rep.add(_det(L, "a b", fs) == _det(L, "a", fs) * _det(L, "b", fs), "rel-0-det-product", tag)

    # (A) on loops and on a composite closed path p = y1 y2
    for q, a, b in ((L, "a", "b"), (C, "y1 y2", "c")):
        lhs = _tr(q, f"{a} {a} {b}", fs)
        rhs = _tr(q, a, fs) * _tr(q, f"{a} {b}", fs) - _det(q, a, fs) * _tr(q, b, fs)
        rep.add(lhs == rhs, "rel-A", f"{tag} a={a!r} b={b!r}")

    # (A'): linearize (A) in a, read the (1,1) part
    lin = _linearized(fs, "a", "b", "c")
    lhs_sub = _bidegree_part(_tr(L, "a a d", fs, lin), "b", "c")
    rhs_sub = _bidegree_part(_tr(L, "a", fs, lin) * _tr(L, "a d", fs, lin)
                             - _det(L, "a", fs, lin) * _tr(L, "d", fs), "b", "c")
    primed = _tr(L, "d b c", fs) + _tr(L, "d c b", fs)
    correction = (_tr(L, "b", fs) * _tr(L, "d c", fs) + _tr(L, "c", fs) * _tr(L, "d b", fs)
                  - (_tr(L, "b", fs) * _tr(L, "c", fs) - _tr(L, "b c", fs)) * _tr(L, "d", fs))
    rep.add(lhs_sub == primed, "rel-A'-linearization", tag)
    rep.add(rhs_sub == correction and primed == correction, "rel-A'", tag)

    # (B)
    for q, a, b in ((L, "a", "b"), (C, "y1 y2", "c")):
        a_star = " ".join(str(x) for x in reversed([Letter(y.name, not y.starred)
                                                    for y in parse_path(a).letters]))
        lhs = _tr(q, f"{a} {b}", fs)
        rhs = -_tr(q, f"{a_star} {b}", fs) + _tr(q, a, fs) * _tr(q, b, fs)
        rep.add(lhs == rhs, "rel-B", f"{tag} a={a!r} b={b!r}")

    # (C)
    rep.add(_tr(B, "x x* a", fs) == _det(B, "x", fs) * _tr(B, "a", fs), "rel-C", tag)

    # (C'): linearize (C) in x
    lin = _linearized(fs, "x", "x1", "x2")
    lhs_sub = _bidegree_part(_tr(B, "x x* a", fs, lin), "x1", "x2")
    rhs_sub = _bidegree_part(_det(B, "x", fs, lin) * _tr(B, "a", fs), "x1", "x2")
    primed = _tr(B, "x1 x2* a", fs) + _tr(B, "x2 x1* a", fs)
    correction = _tr(B, "x1 x2*", fs) * _tr(B, "a", fs)
    rep.add(lhs_sub == primed, "rel-C'-linearization", tag)
    rep.add(rhs_sub == correction and primed == correction, "rel-C'", tag)

    # (D)
    lhs = _tr(B, "x* y1 x* y2", fs)
    rhs = -_det(B, "x", fs) * _tr(B, "y1* y2", fs) + _tr(B, "x* y1", fs) * _tr(B, "x* y2", fs)
    rep.add(lhs == rhs, "rel-D", tag)

    # (D'): linearize (D) in x
    lhs_sub = _bidegree_part(_tr(B, "x* y1 x* y2", fs, lin), "x1", "x2")
    rhs_sub = _bidegree_part(-_det(B, "x", fs, lin) * _tr(B, "y1* y2", fs)
                             + _tr(B, "x* y1", fs, lin) * _tr(B, "x* y2", fs, lin), "x1", "x2")
    primed = _tr(B, "x1* y1 x2* y2", fs) + _tr(B, "x2* y1 x1* y2", fs)
    correction = (-_tr(B, "x1 x2*", fs) * _tr(B, "y1* y2", fs)
                  + _tr(B, "x1* y1", fs) * _tr(B, "x2* y2", fs)
                  + _tr(B, "x2* y1", fs) * _tr(B, "x1* y2", fs))
    rep.add(lhs_sub == primed, "rel-D'-linearization", tag)
    rep.add(rhs_sub == correction and primed == correction, "rel-D'", tag)

    # (E)
    rep.add(_tr(B, "x x*", fs) == _det(B, "x", fs) * 2, "rel-E", tag)
    return rep


def congruence_checks(fs: FieldSpec, cap: int = DEFAULT_DEGREE_CAP) -> Report:
    """Decomposability of the relations themselves, certified by the oracle."""
    qs = relation_quivers()
    L, B, R2 = qs["loops"], qs["bundle"], qs["r2"]
    rep = Report()
    tag = f"[{fs}]"
    oracles = {name: Oracle(q, fs, cap) for name, q in (("L", L), ("B", B), ("R2", R2))}

    def expect(name: str, f: Poly, want: bool, check_id: str) -> None:
        r = oracles[name].is_decomposable(f)
        ok = r.decomposable == want and r.round_trip()
        rep.add(ok, check_id, f"{tag} {r.verdict} witness-terms={len(r.witness)}")

    def tr(q, s):
        return _tr(q, s, fs)

    expect("L", _det(L, "a b", fs), True, "cong-0-det")
    expect("L", tr(L, "a a b"), True, "cong-A")
    expect("L", tr(L, "a b c") + tr(L, "a c b"), True, "cong-A'")
    expect("L", tr(L, "a* b") + tr(L, "a b"), True, "cong-B")
    expect("B", tr(B, "x x* a"), True, "cong-C")
    expect("B", tr(B, "x1 x2* a") + tr(B, "x2 x1* a"), True, "cong-C'")
    expect("B", tr(B, "x* y1 x* y2"), True, "cong-D")
    expect("B", tr(B, "x1* y1 x2* y2") + tr(B, "x2* y1 x1* y2"), True, "cong-D'")
    odd = fs.characteristic != 2
    expect("L", tr(L, "a b c d"), odd, "cong-R1")
    expect("R2", tr(R2, "x1 y1 x2 y2 c"), odd, "cong-R2")
    return rep


def relation_suite(fs: FieldSpec, oracle: bool = True, cap: int = DEFAULT_DEGREE_CAP) -> Report:
    rep = exact_identity_checks(fs)
    if oracle:
        rep.extend(congruence_checks(fs, cap))
    return rep


def adjugate_checks(q: Quiver, fs: FieldSpec = QQ) -> Report:
    rep = Report()
    for name in q.arrow_names:
        m = generic_matrix(name, fs)
        e = Mat2.identity(fs) * m.det()
        rep.add(m * adjoint_star(m) == e and adjoint_star(m) * m == e, "adjugate", f"[{fs}] {name}")
    return rep


# ---------- generator checks ----------

def generator_polys(q: Quiver, gs: GeneratorSet, fs: FieldSpec,
                    cap: int | None = None) -> list[tuple[str, Multidegree, Poly | None]]:
    """(label, multidegree, polynomial) per generator; None beyond ``cap``."""
    out = []
    for d, kind, obj in gs.entries():
        if cap is not None and d.total > cap:
            out.append((f"{kind}({obj})", d, None))
        elif kind == "det":
            out.append((f"det({obj})", d, det_poly(obj, fs)))
        else:
            out.append((f"tr({obj})", d, sigma(1, q, obj, fs, cap=max(12, len(obj)))))
    return out


def verify_invariance(q: Quiver, fs: FieldSpec = QQ, gs: GeneratorSet | None = None,
                      max_deg: int = DEFAULT_DEGREE_CAP) -> Report:
    gs = gs or minimal_generating_set(q, fs)
    rep = Report()
    for label, d, f in generator_polys(q, gs, fs, max_deg):
        if f is None:
            rep.add(True, "invariance-skipped", f"[{fs}] {label} total degree {d.total}")
            continue
        rep.add(check_semi_invariance(f, q), "invariance", f"[{fs}] {label}")
    return rep


class MinimalSetAlgebra(GradedSubalgebra):
    """Subalgebra generated by a GeneratorSet."""

    def __init__(self, q: Quiver, gs: GeneratorSet, fs: FieldSpec, cap: int = DEFAULT_DEGREE_CAP):
        self.q = q
        by_deg: dict[Multidegree, list[Element]] = defaultdict(list)
        for label, d, f in generator_polys(q, gs, fs, cap):
            if f is not None:
                by_deg[d].append(Element(label, f))
        self.by_degree = dict(by_deg)
        super().__init__(fs, lambda e: self.by_degree.get(e, []), cap)


def verify_minimality(q: Quiver, fs: FieldSpec = QQ, max_deg: int = DEFAULT_DEGREE_CAP,
                      gs: GeneratorSet | None = None) -> Report:
    """Every generator is indecomposable in SI(Q) and not produced by the others."""
    gs = gs or minimal_generating_set(q, fs)
    orc = Oracle(q, fs, max_deg)
    sub = MinimalSetAlgebra(q, gs, fs, max_deg)
    rep = Report()
    seen: set[Multidegree] = set()
    for label, d, f in generator_polys(q, gs, fs, max_deg):
        if f is None:
            rep.add(True, "minimality-skipped", f"[{fs}] {label} total degree {d.total}")
            continue
        rep.add(d not in seen, "distinct-multidegree", f"[{fs}] {label} {d}")
        seen.add(d)
        r = orc.is_decomposable(f)
        rep.add(not r.decomposable, "indecomposable", f"[{fs}] {label} {d}")
        others = sub.decomposition(f, d)
        rep.add(not others.decomposable, "non-redundant", f"[{fs}] {label} {d}")
    return rep


def closed_paths(q: Quiver, max_len: int) -> list[PathWord]:
    """Canonical representatives of all closed paths of Q* up to ``max_len`` letters."""
    by_head: dict[str, list[Letter]] = defaultdict(list)
    for x in q.letters():
        by_head[q.head(x)].append(x)
    found: set[tuple] = set()
    for first in q.letters():
        start = q.head(first)
        stack = [first]

        def dfs(cur: str) -> None:
            if cur == start:
                found.add(canonical_form(PathWord(tuple(stack))).letters)
            if len(stack) >= max_len:
                return
            for x in by_head[cur]:
                if x < first:
                    continue
                stack.append(x)
                dfs(q.tail(x))
                stack.pop()

        dfs(q.tail(first))
    return [PathWord(t) for t in sorted(found, key=lambda t: (len(t), t))]


def _is_xx_star(w: PathWord) -> bool:
    return len(w) == 2 and w.letters[0].name == w.letters[1].name and \
        w.letters[0].starred != w.letters[1].starred


def verify_spanning(q: Quiver, fs: FieldSpec = QQ, max_deg: int = DEFAULT_DEGREE_CAP,
                    gs: GeneratorSet | None = None, walk_len: int = 4) -> Report:
    """Traces of closed paths lie in the subalgebra of the minimal set, plus two congruence checks.

    * every multilinear closed path and every determinant within ``max_deg``
      is a member of the subalgebra generated by ``gs`` (certificate checked);
    * tr(a) -/+ tr(b) is decomposable for closed paths with equal multidegree;
    * tr(a) is decomposable when a is multilinear but neither a tree path
      nor ~ x x*.

    The congruence checks use multilinear paths and all closed paths of at most
    ``walk_len`` letters.
    """
    gs = gs or minimal_generating_set(q, fs)
    orc = Oracle(q, fs, max_deg)
    sub = MinimalSetAlgebra(q, gs, fs, max_deg)
    rep = Report()

    def member(label: str, f: Poly) -> None:
        combo = sub.membership(f)
        ok = combo is not None
        if ok:
            back = Poly(fs)
            for c, el in combo:
                back = back + el.poly * c
            ok = back == f
        rep.add(ok, "span", f"[{fs}] {label} certificate-terms={len(combo or [])}")

    for name in q.arrow_names:
        if 2 <= max_deg:
            member(f"det({name})", det_poly(name, fs))
    multi = [w for ws in orc.multilinear_paths().values() for w in ws]
    multi.sort(key=lambda w: (len(w), w.letters))
    for w in multi:
        if len(w) <= max_deg:
            member(f"tr({w})", orc.trace(w))

    pool = {w.letters: w for w in multi if len(w) <= max_deg}
    for w in closed_paths(q, min(walk_len, max_deg)):
        pool.setdefault(w.letters, w)
    words = sorted(pool.values(), key=lambda w: (len(w), w.letters))

    groups: dict[Multidegree, list[PathWord]] = defaultdict(list)
    for w in words:
        groups[mdeg(q, w)].append(w)
    for d, ws in sorted(groups.items()):
        ref = ws[0]
        tref = orc.trace(ref)
        for w in ws[1:]:
            tw = orc.trace(w)
            signs = []
            for s, name in ((1, "-"), (-1, "+")):
                r = orc.is_decomposable(tw - tref * s)
                if r.decomposable and r.round_trip():
                    signs.append(name)
            detail = f"[{fs}] tr({w}) {'/'.join(signs) or 'none'} tr({ref})"
            rep.add(bool(signs), "mdeg-tr", detail)

    for w in words:
        if len(set(w.letters)) != len(w.letters) or _is_xx_star(w) or is_tree_path(q, w):
            continue
        r = orc.is_decomposable(orc.trace(w))
        rep.add(r.decomposable and r.round_trip(), "not-tree-path", f"[{fs}] tr({w})")
    return rep


SUITES = ("relations", "minimality", "spanning", "invariance")


def run_suite(name: str, q: Quiver | None, fs: FieldSpec, max_deg: int = DEFAULT_DEGREE_CAP) -> Report:
    if name == "relations":
        return relation_suite(fs, cap=max_deg)
    if q is None:
        raise QuiverError(f"suite {name!r} needs a quiver")
    if name == "minimality":
        return verify_minimality(q, fs, max_deg)
    if name == "spanning":
        return verify_spanning(q, fs, max_deg)
    if name == "invariance":
        rep = adjugate_checks(q, fs)
        rep.extend(verify_invariance(q, fs, max_deg=max_deg))
        return rep
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")


__all__ = [
    "Check", "Report", "check_semi_invariance", "GradedComponent", "component_basis",
    "spanning_generators", "DecomposabilityReport", "is_decomposable", "Oracle",
    "GradedSubalgebra", "relation_suite", "exact_identity_checks", "congruence_checks",
    "adjugate_checks", "verify_invariance", "verify_minimality", "verify_spanning",
    "closed_paths", "run_suite", "SUITES", "GF2", "QQ",
]
