"""Exact incremental row echelon form over Q or GF(p) on sparse vectors.

Vectors are dicts ``coordinate -> coefficient``; coordinates only need a total
order (``order_key``).  Every stored row remembers how it was combined from the
tagged input vectors, so membership tests return a certificate.
"""

from __future__ import annotations

from typing import Callable, Hashable, Mapping

from .symalg import FieldSpec


class EchelonSpan:
    def __init__(self, field: FieldSpec, order_key: Callable = lambda m: m):
        self.field = field
        self.key = order_key
        # pivot -> (row, combination over tags); rows are monic at the pivot
        self.rows: dict = {}
        self.tags: list[Hashable] = []

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _axpy(self, vec: dict, row: Mapping, c) -> None:
        norm = self.field.norm
        for m, r in row.items():
            s = norm(vec.get(m, 0) - c * r)
            if s:
                vec[m] = s
            else:
                vec.pop(m, None)

    def _reduce(self, vec: Mapping, combo: dict | None = None) -> tuple[dict, dict]:
        vec = dict(vec)
        combo = dict(combo or {})
        done: dict = {}
        norm = self.field.norm
        while vec:
            m = max(vec, key=self.key)
            c = vec[m]
            if m in self.rows:
                row, rc = self.rows[m]
                self._axpy(vec, row, c)
                for t, a in rc.items():
                    s = norm(combo.get(t, 0) - c * a)
                    if s:
                        combo[t] = s
                    else:
                        combo.pop(t, None)
            else:
                done[m] = c
                del vec[m]
        return done, combo

    def add(self, vec: Mapping, tag: Hashable) -> bool:
        """Insert a tagged vector; returns True if it raised the rank."""
        self.tags.append(tag)
        rest, combo = self._reduce(vec, {tag: 1})
        if not rest:
            return False
        pivot = max(rest, key=self.key)
        inv = self.field.inv(rest[pivot])
        norm = self.field.norm
        row = {m: norm(c * inv) for m, c in rest.items()}
        combo = {t: norm(c * inv) for t, c in combo.items()}
        self.rows[pivot] = (row, combo)
        return True

    def express(self, vec: Mapping) -> dict | None:
        """Coefficients over tags reproducing ``vec``, or None if outside the span."""
        rest, combo = self._reduce(vec, {})
        if rest:
            return None
        norm = self.field.norm
        return {t: norm(-c) for t, c in combo.items() if norm(-c)}

    def contains(self, vec: Mapping) -> bool:
        return self.express(vec) is not None
