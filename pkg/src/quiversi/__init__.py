"""Minimal generating sets of semi-invariants of quivers in dimension (2,...,2).

Submodules: :mod:`quiver` (combinatorics of paths), :mod:`symalg` (exact
polynomials and 2x2 matrices), :mod:`enumeration` (tree paths, admissibility,
generating sets), :mod:`verify` (exact checks and the decomposability
oracle), :mod:`treelike` (colorings and two-vertex quivers), :mod:`cli`.
"""

from __future__ import annotations

from importlib import resources

from .enumeration import (
    Decomposition,
    Diagram,
    GeneratorSet,
    diagram_admissible,
    enumerate_admissible_tree_paths,
    enumerate_decompositions,
    enumerate_tree_paths,
    is_multilinear,
    is_tree_path,
    minimal_generating_set,
    path_admissible,
    type_diagram,
)
from .quiver import (
    Arrow,
    Letter,
    Multidegree,
    PathWord,
    Quiver,
    QuiverError,
    blocks_and_tree,
    canonicalize,
    flip_arrows,
    glue_vertices,
    mdeg,
    parse_path,
    parse_quiver,
    path_kind,
    star_path,
    validate_quiver,
)
from .symalg import GF2, QQ, CapExceeded, FieldSpec, Poly, adjoint_star, generic_matrix, path_matrix, sigma

__version__ = "0.1.0"


def fixture_names() -> list[str]:
    root = resources.files(__name__) / "fixtures"
    return sorted(p.name[: -len(".quiver")] for p in root.iterdir() if p.name.endswith(".quiver"))


def load_fixture(name: str) -> Quiver:
    """One of the bundled example quivers, e.g. ``load_fixture("ex1")``."""
    path = resources.files(__name__) / "fixtures" / f"{name}.quiver"
    return parse_quiver(path.read_text(encoding="utf-8"))


def fixture_path(name: str) -> str:
    return str(resources.files(__name__) / "fixtures" / f"{name}.quiver")


__all__ = [
    "Arrow", "Letter", "Multidegree", "PathWord", "Quiver", "QuiverError", "blocks_and_tree",
    "canonicalize", "flip_arrows", "glue_vertices", "mdeg", "parse_path", "parse_quiver",
    "path_kind", "star_path", "validate_quiver", "GF2", "QQ", "CapExceeded", "FieldSpec", "Poly",
    "adjoint_star", "generic_matrix", "path_matrix", "sigma", "Decomposition", "Diagram",
    "GeneratorSet", "diagram_admissible", "enumerate_admissible_tree_paths",
    "enumerate_decompositions", "enumerate_tree_paths", "is_multilinear", "is_tree_path",
    "minimal_generating_set", "path_admissible", "type_diagram", "fixture_names",
    "load_fixture", "fixture_path",
]
