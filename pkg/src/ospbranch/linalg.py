"""Exact sparse vectors and echelon reduction over the rationals.

Vectors are ``dict[int, int | Fraction]`` with no stored zeros.  Echelon rows are
kept as primitive integer vectors (gcd 1, positive pivot), with the pivot at the
largest support index, so no rational arithmetic happens inside elimination.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vec = dict


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def primitive(v: Vec) -> dict[int, int]:
    """Positive multiple of v with coprime integer entries (empty for zero)."""
    v = {i: x for i, x in v.items() if x}
    if not v:
        return {}
    den = 1
    for x in v.values():
        if isinstance(x, Fraction):
            den = _lcm(den, x.denominator)
    ints = {i: int(x * den) for i, x in v.items()}
    g = 0
    for x in ints.values():
        g = gcd(g, x)
        if g == 1:
            break
    if g != 1:
        ints = {i: x // g for i, x in ints.items()}
    return ints


def add_scaled(u: Vec, v: Vec, c=1) -> Vec:
    """u + c v, dropping zeros."""
    out = dict(u)
    for i, x in v.items():
        y = out.get(i, 0) + c * x
        if y:
            out[i] = y
        else:
            out.pop(i, None)
    return out


def scale(v: Vec, c) -> Vec:
    if not c:
        return {}
    return {i: c * x for i, x in v.items()}


def dot(u: Vec, v: Vec, weights: Sequence | None = None):
    if len(u) > len(v):
        u, v = v, u
    if weights is None:
        return sum((x * v[i] for i, x in u.items() if i in v), 0)
    return sum((x * v[i] * weights[i] for i, x in u.items() if i in v), 0)


def linear_combination(coeffs: Vec, vectors: Sequence[Vec]) -> Vec:
    out: Vec = {}
    for j, c in coeffs.items():
        out = add_scaled(out, vectors[j], c)
    return out


class Echelon:
    """Row-echelon basis of a subspace, keyed by pivot (largest support index).

    Rows may carry a companion "tag" vector transformed alongside them, which is
    how linear relations among inserted vectors are tracked.
    """

    def __init__(self, vectors: Iterable[Vec] = ()):
        self.rows: dict[int, dict[int, int]] = {}
        self.tags: dict[int, dict[int, int]] = {}
        for v in vectors:
            self.insert(v)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def copy(self) -> "Echelon":
        e = Echelon()
        e.rows = dict(self.rows)
        e.tags = dict(self.tags)
        return e

    def _reduce(self, v: dict[int, int], tag: dict[int, int] | None):
        """Eliminate all pivot positions from integer vector v (scaling v as needed)."""
        rows = self.rows
        hits = sorted((i for i in v if i in rows), reverse=True)
        while hits:
            p = hits[0]
            row = rows[p]
            a = row[p]
            b = v[p]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            # v <- fa*v - fb*row
            out = {i: fa * x for i, x in v.items()} if fa != 1 else dict(v)
            for i, x in row.items():
                y = out.get(i, 0) - fb * x
                if y:
                    out[i] = y
                else:
                    out.pop(i, None)
            if tag is not None:
                t = {i: fa * x for i, x in tag.items()} if fa != 1 else dict(tag)
                for i, x in self.tags.get(p, {}).items():
                    y = t.get(i, 0) - fb * x
                    if y:
                        t[i] = y
                    else:
                        t.pop(i, None)
                tag = t
            v = out
            hits = sorted((i for i in v if i in rows and i < p), reverse=True)
        return v, tag

    def reduce(self, v: Vec) -> dict[int, int]:
        """Integer representative of v modulo the span (zero iff v is in the span)."""
        r, _ = self._reduce(primitive(v), None)
        return r

    def __contains__(self, v: Vec) -> bool:
        return not self.reduce(v)

    def contains_all(self, vectors: Iterable[Vec]) -> bool:
        return all(v in self for v in vectors)

    def insert(self, v: Vec) -> dict[int, int] | None:
        """Add v to the span; returns the new row, or None if v was dependent."""
        r, _ = self._reduce(primitive(v), None)
        if not r:
            return None
        return self._store(r, None)[0]

    def insert_tagged(self, v: Vec, tag: dict[int, int]):
        """Insert integer vector v carrying an integer tag.

        Returns ``(row, tag)``; a dependent v gives ``(None, relation)``.
        """
        den = _denominator(v)
        r, t = self._reduce(_integral(v, den), {i: den * x for i, x in tag.items()})
        if not r:
            g = 0
            for x in t.values():
                g = gcd(g, x)
            if g > 1:
                t = {i: x // g for i, x in t.items()}
            return None, t
        return self._store(r, t)

    def _store(self, r: dict[int, int], t: dict[int, int] | None):
        g = 0
        for x in r.values():
            g = gcd(g, x)
        for x in (t or {}).values():
            g = gcd(g, x)
        p = max(r)
        if r[p] < 0:
            g = -g
        if g not in (0, 1):
            r = {i: x // g for i, x in r.items()}
            if t is not None:
                t = {i: x // g for i, x in t.items()}
        self.rows[p] = r
        if t is not None:
            self.tags[p] = t
        return r, t

    def vectors(self) -> list[dict[int, int]]:
        return [self.rows[p] for p in sorted(self.rows)]

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def issubset(self, other: "Echelon") -> bool:
        return all(r in other for r in self.rows.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Echelon):
            return NotImplemented
        return self.dim == other.dim and self.issubset(other)

    __hash__ = None


def relations(vectors: Sequence[Vec]) -> list[dict[int, int]]:
    """Basis (as integer coefficient vectors) of {x : sum_j x_j vectors[j] = 0}."""
    ech = Echelon()
    rels: list[dict[int, int]] = []
    for j, v in enumerate(vectors):
        row, tag = ech.insert_tagged(v, {j: 1})
        if row is None:
            rels.append(tag)
    return rels


def _denominator(v: Vec) -> int:
    den = 1
    for x in v.values():
        if isinstance(x, Fraction):
            den = _lcm(den, x.denominator)
    return den


def _integral(v: Vec, den: int) -> dict[int, int]:
    return {i: int(x * den) for i, x in v.items() if x}


def kernel(images: Sequence[Vec], sources: Sequence[Vec]) -> list[Vec]:
    """Vectors sum_j x_j sources[j] for every relation x among images."""
    return [linear_combination(rel, sources) for rel in relations(images)]


def rank(vectors: Iterable[Vec]) -> int:
    return Echelon(vectors).dim


def gram_rank(vectors: Sequence[Vec], diag: Sequence) -> tuple[int, list[Vec]]:
    """Rank of the restricted diagonal form and a basis of its radical (as combos)."""
    rows = []
    index: dict[int, list[int]] = {}
    for j, v in enumerate(vectors):
        for i in v:
            index.setdefault(i, []).append(j)
    for j, v in enumerate(vectors):
        row = {}
        partners = set()
        for i in v:
            partners.update(index[i])
        for l in partners:
            val = dot(v, vectors[l], diag)
            if val:
                row[l] = val
        rows.append(row)
    rad = relations(rows)
    return len(vectors) - len(rad), rad
