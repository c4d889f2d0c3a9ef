"""Exact sparse polynomials and symbolic 2x2 matrices over Q or GF(p).

Variables are the coordinate functions ``x[a][i][j]`` of the representation
space plus auxiliary parameters (``t`` of an elementary group element).
Monomials are tuples of ``(Var, exponent)`` pairs sorted by the global
variable order: matrix coordinates by (arrow, i, j), then parameters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, NamedTuple

from .quiver import Letter, PathWord, Quiver, QuiverError, is_closed, is_path

DEFAULT_WORD_CAP = 12


class CapExceeded(QuiverError):
    """An expansion would exceed a configured size guardrail."""


@dataclass(frozen=True)
class FieldSpec:
    """Characteristic 0 means Q; a prime p means GF(p)."""

    characteristic: int = 0

    def __post_init__(self) -> None:
        p = self.characteristic
        if p < 0 or p == 1 or (p > 1 and any(p % d == 0 for d in range(2, int(p**0.5) + 1))):
            raise ValueError(f"characteristic must be 0 or a prime, got {p}")

    def __str__(self) -> str:
        return "Q" if self.characteristic == 0 else f"GF({self.characteristic})"

    def norm(self, c):
        p = self.characteristic
        if p:
            if isinstance(c, Fraction):
                return c.numerator * pow(c.denominator, -1, p) % p
            return c % p
        if isinstance(c, Fraction) and c.denominator == 1:
            return c.numerator
        return c

    def inv(self, c):
        p = self.characteristic
        if p:
            if c % p == 0:
                raise ZeroDivisionError("inverse of zero")
            return pow(c, -1, p)
        return self.norm(Fraction(1) / c)


QQ = FieldSpec(0)
GF2 = FieldSpec(2)


class Var(NamedTuple):
    kind: int  # 0: matrix coordinate, 1: auxiliary parameter
    name: str
    i: int = 0
    j: int = 0

    def __str__(self) -> str:
        if self.kind == 0:
            return f"x[{self.name}][{self.i}][{self.j}]"
        return self.name


def xvar(arrow: str, i: int, j: int) -> Var:
    return Var(0, arrow, i, j)


def param(name: str) -> Var:
    return Var(1, name)


_LAST = (Var(2, ""),)

Monomial = tuple  # tuple[tuple[Var, int], ...]


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def grlex_key(m: Monomial):
    """Sort key putting monomials in descending graded-lex order."""
    return (-mono_degree(m), tuple((v, -e) for v, e in m) + (_LAST,))


class Poly:
    """Immutable sparse polynomial; ``terms`` maps monomials to non-zero coefficients."""

    __slots__ = ("field", "terms")

    def __init__(self, field: FieldSpec, terms: Mapping[Monomial, object] | None = None):
        self.field = field
        clean = {}
        if terms:
            for m, c in terms.items():
                c = field.norm(c)
                if c:
                    clean[m] = c
        self.terms: dict[Monomial, object] = clean

    @classmethod
    def _raw(cls, field: FieldSpec, terms: dict) -> Poly:
        p = cls.__new__(cls)
        p.field = field
        p.terms = terms
        return p

    @classmethod
    def const(cls, field: FieldSpec, c) -> Poly:
        return cls(field, {(): c})

    @classmethod
    def var(cls, field: FieldSpec, v: Var) -> Poly:
        return cls._raw(field, {((v, 1),): 1})

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.field != self.field:
                raise ValueError(f"field mismatch: {self.field} vs {other.field}")
            return other
        return Poly.const(self.field, other)

    def __add__(self, other) -> Poly:
        other = self._coerce(other)
        f = self.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = f.norm(out.get(m, 0) + c)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(f, out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        f = self.field
        return Poly._raw(f, {m: f.norm(-c) for m, c in self.terms.items()})

    def __sub__(self, other) -> Poly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Poly:
        return self._coerce(other) - self

    def __mul__(self, other) -> Poly:
        f = self.field
        if isinstance(other, Mat2):
            return NotImplemented
        if not isinstance(other, Poly):
            c0 = f.norm(other)
            if not c0:
                return Poly._raw(f, {})
            return Poly._raw(f, {m: f.norm(c * c0) for m, c in self.terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(f, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        out = Poly.const(self.field, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            other = self._coerce(other)
        return self.field == other.field and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def variables(self) -> set[Var]:
        return {v for m in self.terms for v, _ in m}

    def is_homogeneous(self) -> bool:
        return len({self.multidegree_of(m) for m in self.terms}) <= 1

    @staticmethod
    def multidegree_of(m: Monomial) -> tuple:
        d: dict[str, int] = {}
        for v, e in m:
            if v.kind == 0:
                d[v.name] = d.get(v.name, 0) + e
        return tuple(sorted(d.items()))

    def arrow_degrees(self) -> set[tuple]:
        return {self.multidegree_of(m) for m in self.terms}

    def filter(self, keep: Callable[[Monomial], bool]) -> Poly:
        return Poly._raw(self.field, {m: c for m, c in self.terms.items() if keep(m)})

    def substitute(self, mapping: Mapping[Var, Poly]) -> Poly:
        """Ring homomorphism sending each mapped variable to a polynomial."""
        f = self.field
        cache: dict[tuple[Var, int], Poly] = {}

        def power(v: Var, e: int) -> Poly:
            key = (v, e)
            if key not in cache:
                cache[key] = mapping[v] if e == 1 else power(v, e - 1) * mapping[v]
            return cache[key]

        out: dict = {}
        for m, c in self.terms.items():
            fixed = tuple((v, e) for v, e in m if v not in mapping)
            part = Poly._raw(f, {fixed: c})
            for v, e in m:
                if v in mapping:
                    part = part * power(v, e)
            for mm, cc in part.terms.items():
                out[mm] = out.get(mm, 0) + cc
        return Poly(f, out)

    def evaluate(self, point: Mapping[Var, object]):
        f = self.field
        total = 0
        for m, c in self.terms.items():
            term = c
            for v, e in m:
                if v not in point:
                    raise KeyError(f"no value for variable {v}")
                term = term * f.norm(point[v]) ** e
            total = f.norm(total + term)
        return f.norm(total)

    def sorted_terms(self) -> list[tuple[Monomial, object]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]))

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly<{self.field}>({format_poly(self)})"


def format_poly(p: Poly) -> str:
    """Byte-stable rendering ``coef * x[a][i][j]^e * ...`` in descending grlex order."""
    if not p.terms:
        return "0"
    parts = []
    for k, (m, c) in enumerate(p.sorted_terms()):
        factors = [str(v) if e == 1 else f"{v}^{e}" for v, e in m]
        neg = p.field.characteristic == 0 and c < 0
        mag = -c if neg else c
        body = " * ".join([str(mag)] + factors)
        if k == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def evaluate_at_point(f: Poly, point: Mapping[Var, object], field: FieldSpec | None = None):
    """Exact value of ``f`` at ``point``; ``field`` guards against mixing characteristics."""
    if field is not None and field != f.field:
        raise ValueError(f"characteristic mismatch: {field} vs {f.field}")
    return f.evaluate(point)


class Mat2:
    """2x2 matrix of polynomials, entries row-major."""

    __slots__ = ("field", "e")

    def __init__(self, field: FieldSpec, entries: Iterable[Poly]):
        self.field = field
        self.e: tuple[Poly, Poly, Poly, Poly] = tuple(entries)  # type: ignore[assignment]
        if len(self.e) != 4:
            raise ValueError("a 2x2 matrix has four entries")

    @classmethod
    def from_scalars(cls, field: FieldSpec, rows) -> Mat2:
        (a, b), (c, d) = rows
        return cls(field, [Poly.const(field, x) for x in (a, b, c, d)])

    @classmethod
    def identity(cls, field: FieldSpec) -> Mat2:
        return cls.from_scalars(field, ((1, 0), (0, 1)))

    def __getitem__(self, ij: tuple[int, int]) -> Poly:
        i, j = ij
        return self.e[2 * (i - 1) + (j - 1)]

    def __mul__(self, other) -> Mat2:
        if not isinstance(other, Mat2):
            return Mat2(self.field, [x * other for x in self.e])
        a, b, c, d = self.e
        p, q, r, s = other.e
        return Mat2(self.field, [a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s])

    __matmul__ = __mul__

    def __rmul__(self, other) -> Mat2:
        return Mat2(self.field, [x * other for x in self.e])

    def __add__(self, other: Mat2) -> Mat2:
        return Mat2(self.field, [x + y for x, y in zip(self.e, other.e)])

    def __sub__(self, other: Mat2) -> Mat2:
        return Mat2(self.field, [x - y for x, y in zip(self.e, other.e)])

    def __neg__(self) -> Mat2:
        return Mat2(self.field, [-x for x in self.e])

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat2) and self.e == other.e

    def transpose(self) -> Mat2:
        a, b, c, d = self.e
        return Mat2(self.field, [a, c, b, d])

    def trace(self) -> Poly:
        return self.e[0] + self.e[3]

    def det(self) -> Poly:
        a, b, c, d = self.e
        return a * d - b * c

    def __str__(self) -> str:
        return "[[{}, {}], [{}, {}]]".format(*self.e)


def j2(field: FieldSpec) -> Mat2:
    return Mat2.from_scalars(field, ((0, 1), (-1, 0)))


def adjoint_star(m: Mat2) -> Mat2:
    """``-J2 M^T J2``, which for 2x2 matrices is the adjugate."""
    j = j2(m.field)
    return -(j * m.transpose() * j)


def generic_matrix(arrow: str, field: FieldSpec = QQ, q: Quiver | None = None) -> Mat2:
    if q is not None:
        q.arrow(arrow)
    return Mat2(field, [Poly.var(field, xvar(arrow, i, j)) for i in (1, 2) for j in (1, 2)])


def det_poly(arrow: str, field: FieldSpec = QQ) -> Poly:
    return generic_matrix(arrow, field).det()


class MatrixAssignment:
    """Assigns a 2x2 matrix to each base arrow; starred letters get the adjugate.

    Defaults to generic matrices; ``overrides`` replaces chosen arrows, e.g. by
    sums ``X1 + X2`` for linearization or by group-transformed matrices.
    """

    def __init__(self, field: FieldSpec, overrides: Mapping[str, Mat2] | None = None):
        self.field = field
        self.overrides = dict(overrides or {})
        self._cache: dict[Letter, Mat2] = {}

    def __call__(self, x: Letter) -> Mat2:
        if x not in self._cache:
            base = self.overrides.get(x.name)
            if base is None:
                base = generic_matrix(x.name, self.field)
            self._cache[x] = adjoint_star(base) if x.starred else base
        return self._cache[x]


def word_matrix(letters: Iterable[Letter], assign: MatrixAssignment) -> Mat2:
    out = Mat2.identity(assign.field)
    for x in letters:
        out = out * assign(x)
    return out


def path_matrix(q: Quiver, w: PathWord, field: FieldSpec = QQ, cap: int = DEFAULT_WORD_CAP,
                assign: MatrixAssignment | None = None) -> Mat2:
    """``X_{a1} ... X_{as}`` with adjugates for starred letters; E for the empty path."""
    if not is_path(q, w):
        raise QuiverError(f"{w} is not a path")
    if len(w) > cap:
        raise CapExceeded(f"word of length {len(w)} exceeds the expansion cap {cap}")
    return word_matrix(w.letters, assign or MatrixAssignment(field))


def sigma(t: int, q: Quiver, w: PathWord, field: FieldSpec = QQ, cap: int = DEFAULT_WORD_CAP) -> Poly:
    """sigma_1 = trace, sigma_2 = determinant of the path matrix of a closed word."""
    if t not in (1, 2):
        raise ValueError("sigma_t is defined for t in {1, 2} on 2x2 matrices")
    if not is_closed(q, w):
        raise QuiverError(f"{w} is not a closed path")
    m = path_matrix(q, w, field, cap)
    return m.trace() if t == 1 else m.det()


def trace_poly(q: Quiver, w: PathWord, field: FieldSpec = QQ, cap: int = DEFAULT_WORD_CAP) -> Poly:
    return sigma(1, q, w, field, cap)


def elementary(field: FieldSpec, kind: str, t: Poly) -> tuple[Mat2, Mat2]:
    """Elementary unipotent g and its inverse; ``kind`` is ``upper`` or ``lower``."""
    one, zero = Poly.const(field, 1), Poly.const(field, 0)
    if kind == "upper":
        g = Mat2(field, [one, t, zero, one])
        gi = Mat2(field, [one, -t, zero, one])
    elif kind == "lower":
        g = Mat2(field, [one, zero, t, one])
        gi = Mat2(field, [one, zero, -t, one])
    else:
        raise ValueError(f"kind must be 'upper' or 'lower', got {kind!r}")
    return g, gi


def acted_matrices(q: Quiver, v: str, kind: str, t: Var, field: FieldSpec) -> dict[str, Mat2]:
    """``X_a -> g^{-1} X_a`` for arrows with head v, ``X_a -> X_a g`` for tail v."""
    if v not in q.vertices:
        raise QuiverError(f"unknown vertex {v!r}")
    g, gi = elementary(field, kind, Poly.var(field, t))
    out = {}
    for a in q.arrows:
        if v not in (a.head, a.tail):
            continue
        m = generic_matrix(a.name, field)
        if a.head == v:
            m = gi * m
        if a.tail == v:
            m = m * g
        out[a.name] = m
    return out


def elementary_action(f: Poly, q: Quiver, v: str, kind: str, t: Var | str = "t") -> Poly:
    """Apply the elementary matrix at vertex ``v`` (parameter ``t``) to ``f``.

    ``f`` is SL(2)-invariant at ``v`` iff the result equals ``f`` for both kinds.
    """
    if isinstance(t, str):
        t = param(t)
    if t in f.variables():
        raise ValueError(f"parameter {t} is not fresh for this polynomial")
    acted = acted_matrices(q, v, kind, t, f.field)
    mapping = {}
    for name, m in acted.items():
        for i in (1, 2):
            for j in (1, 2):
                mapping[xvar(name, i, j)] = m[i, j]
    return f.substitute(mapping)
