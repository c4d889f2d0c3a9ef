"""Acceptance criteria 1-10.  Each test prints one ``PASS|FAIL criterion N`` line.

Run on its own with ``pytest tests/test_acceptance.py -s`` or
``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import random
import re
import sys
import time
from collections import Counter

import networkx as nx
import pytest

from conftest import ACCEPTANCE_LINES
from quiversi import fixture_names, load_fixture
from quiversi.enumeration import (
    enumerate_decompositions,
    minimal_generating_set,
    path_admissible,
    type_diagram,
)
from quiversi.quiver import Quiver, flip_arrows, parse_path, validate_quiver
from quiversi.symalg import GF2, QQ, trace_poly
from quiversi.treelike import (
    is_tree_like,
    tree_like_generating_set,
    tree_quiver_gens,
    two_vertex_generating_set,
    two_vertex_quiver,
)
from quiversi.verify import (
    Oracle,
    adjugate_checks,
    exact_identity_checks,
    verify_invariance,
    verify_minimality,
    verify_spanning,
)

FIELDS = (QQ, GF2)
SEED = 20240517


def report(n: int, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def small_quivers(max_arrows: int = 3) -> list[Quiver]:
    """Connected quivers with 1..max_arrows arrows, one per isomorphism class."""
    out: list[Quiver] = []
    seen: list[nx.MultiDiGraph] = []
    for k in range(1, max_arrows + 1):
        for n in range(1, k + 2):
            vs = [f"v{i}" for i in range(n)]
            pairs = [(h, t) for h in vs for t in vs]
            for combo in itertools.combinations_with_replacement(pairs, k):
                g = nx.MultiDiGraph()
                g.add_nodes_from(vs)
                g.add_edges_from(combo)
                if not nx.is_weakly_connected(g) or any(nx.is_isomorphic(g, h) for h in seen):
                    continue
                seen.append(g)
                out.append(validate_quiver(vs, [(f"a{i}", h, t) for i, (h, t) in enumerate(combo)]))
    return out


def random_tree_quiver(rng: random.Random, arrows: int) -> Quiver:
    vs = [f"v{i}" for i in range(arrows + 1)]
    edges = []
    for i in range(1, len(vs)):
        j = rng.randrange(i)
        h, t = (vs[i], vs[j]) if rng.random() < 0.5 else (vs[j], vs[i])
        edges.append((f"a{i}", h, t))
    return validate_quiver(vs, edges)


def random_quiver(rng: random.Random, arrows: int) -> Quiver:
    n = rng.randint(1, 3)
    vs = [f"v{i}" for i in range(n)]
    return validate_quiver(vs, [(f"a{k}", rng.choice(vs), rng.choice(vs)) for k in range(arrows)])


# ---------- 1 ----------

def test_criterion_1_flagship_counts():
    start = time.perf_counter()
    c2 = two_vertex_generating_set(4, 4, 4, GF2).count
    c0 = two_vertex_generating_set(4, 4, 4, QQ).count
    q = two_vertex_quiver(4, 4, 4)
    g2 = len(minimal_generating_set(q, GF2))
    g0 = len(minimal_generating_set(q, QQ))
    elapsed = time.perf_counter() - start
    ok = (c2, c0, g2, g0) == (2734, 1167, 2734, 1167) and elapsed < 10
    report(1, ok, f"twovertex 4 4 4 -> char2 {c2}, not2 {c0}; general enumeration {g2}/{g0}; "
                  f"{elapsed:.2f}s")


# ---------- 2 ----------

def test_criterion_2_exact_identities():
    start = time.perf_counter()
    fails, total = [], 0
    for fs in FIELDS:
        rep = exact_identity_checks(fs)
        total += len(rep.checks)
        fails += rep.failures
    elapsed = time.perf_counter() - start
    report(2, not fails and elapsed < 5,
           f"{total} exact identity checks over Q and GF(2), {len(fails)} failures, {elapsed:.2f}s")


# ---------- 3 ----------

def test_criterion_3_adjugate_law():
    fails, total = [], 0
    for name in fixture_names():
        for fs in FIELDS:
            rep = adjugate_checks(load_fixture(name), fs)
            total += len(rep.checks)
            fails += rep.failures
    report(3, not fails, f"M * adjoint_star(M) = det(M) E on {total} fixture arrows, {len(fails)} failures")


# ---------- 4 ----------

def test_criterion_4_invariance():
    fails, total, used = [], 0, []
    for name in fixture_names():
        q = load_fixture(name)
        if len(q.arrows) > 6:
            continue
        used.append(name)
        for fs in FIELDS:
            rep = verify_invariance(q, fs, max_deg=99)
            total += len(rep.checks)
            fails += rep.failures
    report(4, not fails and total > 0,
           f"{total} generators invariant at every vertex ({', '.join(used)}), {len(fails)} failures")


# ---------- 5 and 6 ----------

@pytest.fixture(scope="module")
def small():
    return small_quivers(3)


def test_criterion_5_indecomposability(small):
    fails, counts = [], Counter()
    for q in small:
        for fs in FIELDS:
            rep = verify_minimality(q, fs, max_deg=8)
            fails += rep.failures
            counts.update(c.check_id for c in rep.checks)
    four = load_fixture("four_loops")
    w = parse_path("a b c d")
    r0 = Oracle(four, QQ).is_decomposable(trace_poly(four, w, QQ))
    r2 = Oracle(four, GF2).is_decomposable(trace_poly(four, w, GF2))
    dichotomy = r0.decomposable and r0.round_trip() and not r2.decomposable
    report(5, not fails and dichotomy and not counts["minimality-skipped"],
           f"{len(small)} quivers with <= 3 arrows, {counts['indecomposable']} indecomposable and "
           f"{counts['non-redundant']} non-redundant certificates, {len(fails)} failures; "
           f"tr(abcd) {r0.verdict} over Q, {r2.verdict} over GF(2)")


def test_criterion_6_spanning(small):
    fails, counts = [], Counter()
    signs = Counter()
    for q in small:
        for fs in FIELDS:
            rep = verify_spanning(q, fs, max_deg=8)
            fails += rep.failures
            counts.update(c.check_id for c in rep.checks)
            for c in rep.checks:
                if c.check_id == "mdeg-tr":
                    signs[re.search(r"\) (\S+) tr\(", c.detail).group(1)] += 1
    ok = not fails and counts["span"] > 0 and counts["mdeg-tr"] > 0 and counts["not-tree-path"] > 0
    report(6, ok, f"{counts['span']} membership certificates, {counts['mdeg-tr']} mdeg congruences "
                  f"(signs {dict(sorted(signs.items()))}), {counts['not-tree-path']} non-tree traces "
                  f"decomposable, {len(fails)} failures")


# ---------- 7 ----------

def _diagram(edges, n):
    g = nx.Graph()
    g.add_nodes_from(range(n))
    for i, j, m in edges:
        g.add_edge(i, j, mark=m)
    return g


def _same(D, g):
    return nx.is_isomorphic(D.graph(), g, edge_match=lambda x, y: x["mark"] == y["mark"])


def test_criterion_7_reference_fixtures():
    q = load_fixture("ex_decomp")
    h = parse_path("a1 a2 b4 b1 b2 c4 c1 c2 d4 d1 d2 d3 c3 b3 a3 a4")
    ds = {frozenset(d.letter_sets()): d for d in enumerate_decompositions(q, h)}

    def key(words):
        return frozenset(frozenset(parse_path(w).letters) for w in words)

    star = ds.get(key(["a1 b1 c1 d1 d2 d3 c3 b3 a3 a4", "a2 b4", "b2 c4", "c2 d4"]))
    path = ds.get(key(["a1 a2 a3 a4", "b1 b2 b3 b4", "c1 c2 c3 c4", "d1 d2 d3 d4"]))
    found = star is not None and path is not None
    diag_b = found and _same(type_diagram(q, star), _diagram([(0, 1, 2), (0, 2, 2), (0, 3, 2)], 4))
    diag_d = found and _same(type_diagram(q, path), _diagram([(0, 1, 2), (1, 2, 2), (2, 3, 2)], 4))
    adm = {
        "ex_decomp": path_admissible(q, h)[0],
        "ex1": path_admissible(load_fixture("ex1"),
                               parse_path("a2 a3 x2 x3 x4 x1 a1 b1 b2 c2 c3 y2 y1 c1"))[0],
        "ex1b": path_admissible(load_fixture("ex1b"),
                                parse_path("y1 x1 x2 y2 a1 a2 b1 b2 y3 c1 c2 d1 d2 y4 z2 z1"))[0],
    }
    four = path_admissible(load_fixture("four_loops"), parse_path("a b c d"))[0]
    ok = found and diag_b and diag_d and all(adm.values()) and not four
    report(7, ok, f"both decompositions found: {found}; diagrams B/D: {diag_b}/{diag_d}; "
                  f"admissible {adm}; four loops admissible: {four}")


# ---------- 8 ----------

def test_criterion_8_tree_quivers():
    rng = random.Random(SEED)
    results = []
    for _ in range(5):
        q = random_tree_quiver(rng, rng.randint(2, 8))
        for fs in FIELDS:
            gs = minimal_generating_set(q, fs)
            names = tuple(q.arrow_names)
            ok = not gs.traces and gs.dets == names and tree_quiver_gens(q, fs).dets == names
            results.append((len(q.arrows), ok))
    report(8, all(ok for _, ok in results),
           f"random trees with {sorted({n for n, _ in results})} arrows give determinants only, both branches")


# ---------- 9 ----------

def _profile(q: Quiver, fs) -> Counter:
    return Counter(minimal_generating_set(q, fs).multidegrees())


def test_criterion_9_orientation_invariance():
    rng = random.Random(SEED + 1)
    done = []
    for _ in range(5):
        q = random_quiver(rng, rng.randint(1, 5))
        subset = [a for a in q.arrow_names if rng.random() < 0.5] or [q.arrow_names[0]]
        f = flip_arrows(q, subset)
        same = all(_profile(q, fs) == _profile(f, fs) for fs in FIELDS)
        done.append((len(q.arrows), len(subset), same))
    report(9, all(s for *_, s in done),
           f"5 random quivers, flipped subsets {[(n, k) for n, k, _ in done]} (arrows, flipped): "
           f"per-multidegree counts unchanged")


# ---------- 10 ----------

def test_criterion_10_cross_validation():
    mismatches = []
    triples = [(p, q, l) for p in range(7) for q in range(7) for l in range(7) if p + q + l <= 6]
    for p, q, l in triples:
        quiver = two_vertex_quiver(p, q, l)
        for fs in FIELDS:
            if two_vertex_generating_set(p, q, l, fs).count != len(minimal_generating_set(quiver, fs)):
                mismatches.append((p, q, l, str(fs)))
    c222 = [two_vertex_generating_set(2, 2, 2, fs).count for fs in FIELDS]
    tree_like = [n for n in fixture_names() if is_tree_like(load_fixture(n)) and len(load_fixture(n).arrows) <= 6]
    tl_bad = [n for n in tree_like for fs in FIELDS
              if set(tree_like_generating_set(load_fixture(n), fs).traces)
              != set(minimal_generating_set(load_fixture(n), fs).traces)]
    # the ex_treelike fixture has 9 arrows; it is checked too, beyond the required range
    extra = all(set(tree_like_generating_set(load_fixture("ex_treelike"), fs).traces)
                == set(minimal_generating_set(load_fixture("ex_treelike"), fs).traces) for fs in FIELDS)
    ok = not mismatches and c222 == [46, 46] and not tl_bad and extra
    report(10, ok, f"{len(triples)} (p,q,l) triples agree in both branches ({len(mismatches)} mismatches); "
                   f"(2,2,2) -> {c222}; colorings agree on {tree_like} and ex_treelike")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
