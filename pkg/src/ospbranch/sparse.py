"""Exact sparse matrices between Fock sectors.

A ``SparseOperator`` stores an int64 CSR numerator matrix and a positive integer
denominator.  Every product and sum is guarded against int64 overflow by an a
priori bound, so results are either exact or an ``OverflowError``.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import TYPE_CHECKING

import numpy as np
import scipy.sparse as sp

if TYPE_CHECKING:
    from .fock import SectorBasis

_LIMIT = 2 ** 62


class BasisMismatch(ValueError):
    pass


def _maxabs(mat: sp.csr_matrix) -> int:
    return int(abs(mat.data).max()) if mat.nnz else 0


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class SparseOperator:
    """Linear map ``domain -> codomain`` with exact rational entries.

    ``parity`` is the Z2 grade (0 even, 1 odd) or None for an inhomogeneous sum.
    """

    __slots__ = ("domain", "codomain", "num", "den", "parity", "name", "_cols")

    def __init__(self, domain: "SectorBasis", codomain: "SectorBasis", num, den: int = 1,
                 parity: int | None = 0, name: str = "", trusted: bool = False):
        if trusted:
            # num is a freshly computed int64 CSR of the right shape
            num.eliminate_zeros()
        else:
            num = sp.csr_matrix(num, dtype=np.int64, shape=(codomain.dim, domain.dim))
            num.eliminate_zeros()
            num.sort_indices()
        if den <= 0:
            raise ValueError("denominator must be positive")
        if den != 1 and num.nnz:
            g = den
            for x in np.unique(np.abs(num.data)).tolist():
                g = gcd(g, int(x))
                if g == 1:
                    break
            if g > 1:
                num = num.copy()
                num.data //= g
                den //= g
        elif not num.nnz:
            den = 1
        self.domain = domain
        self.codomain = codomain
        self.num = num
        self.den = int(den)
        self.parity = parity
        self.name = name
        self._cols = None

    # -- constructors ----------------------------------------------------------
    @classmethod
    def zero(cls, domain, codomain=None, parity: int | None = 0, name: str = "0") -> "SparseOperator":
        codomain = domain if codomain is None else codomain
        return cls(domain, codomain, sp.csr_matrix((codomain.dim, domain.dim), dtype=np.int64), 1, parity, name)

    @classmethod
    def identity(cls, basis, name: str = "I") -> "SparseOperator":
        return cls(basis, basis, sp.identity(basis.dim, dtype=np.int64, format="csr"), 1, 0, name)

    @classmethod
    def diagonal(cls, basis, values, parity: int | None = 0, name: str = "") -> "SparseOperator":
        values = [Fraction(v) for v in values]
        den = 1
        for v in values:
            den = _lcm(den, v.denominator)
        ints = np.array([int(v * den) for v in values], dtype=np.int64)
        return cls(basis, basis, sp.diags(ints, format="csr", dtype=np.int64), den, parity, name)

    @classmethod
    def from_entries(cls, domain, codomain, entries, parity: int | None = 0, name: str = "") -> "SparseOperator":
        """From (row, col, value) triples; repeated positions are summed."""
        rows, cols, vals = [], [], []
        for r, c, v in entries:
            rows.append(r)
            cols.append(c)
            vals.append(v)
        if any(isinstance(v, Fraction) and v.denominator != 1 for v in vals):
            den = 1
            for v in vals:
                den = _lcm(den, Fraction(v).denominator)
            vals = [int(Fraction(v) * den) for v in vals]
        else:
            den = 1
            vals = [int(v) for v in vals]
        if vals and max(abs(v) for v in vals) * max(1, len(vals)) >= _LIMIT:
            raise OverflowError("entries too large for exact int64 storage")
        mat = sp.coo_matrix((np.array(vals, dtype=np.int64), (np.array(rows, dtype=np.int64), np.array(cols, dtype=np.int64))),
                            shape=(codomain.dim, domain.dim)).tocsr()
        return cls(domain, codomain, mat, den, parity, name)

    # -- basic properties ------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.num.shape

    @property
    def nnz(self) -> int:
        return self.num.nnz

    def is_zero(self) -> bool:
        return self.num.nnz == 0

    def is_square(self) -> bool:
        return self.domain.key == self.codomain.key

    def entries(self) -> list[tuple[int, int, int, int]]:
        """Sorted (row, col, numerator, denominator) quadruples."""
        coo = self.num.tocoo()
        out = []
        for r, c, v in zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()):
            f = Fraction(int(v), self.den)
            out.append((r, c, f.numerator, f.denominator))
        out.sort()
        return out

    def entry(self, row: int, col: int) -> Fraction:
        return Fraction(int(self.num[row, col]), self.den)

    def to_fraction_dense(self) -> list[list[Fraction]]:
        dense = self.num.toarray().tolist()
        return [[Fraction(x, self.den) for x in r] for r in dense]

    def is_diagonal(self) -> bool:
        if not self.is_square():
            return False
        coo = self.num.tocoo()
        return bool(np.all(coo.row == coo.col))

    def diagonal_values(self) -> list[Fraction]:
        return [Fraction(int(x), self.den) for x in self.num.diagonal().tolist()]

    def __repr__(self) -> str:
        return (f"SparseOperator({self.name or '?'}: {self.domain.key} -> {self.codomain.key}, "
                f"nnz={self.nnz}, den={self.den}, parity={self.parity})")

    # -- arithmetic -----------------------------------------------------------
    def _compatible(self, other: "SparseOperator") -> None:
        if self.domain.key != other.domain.key or self.codomain.key != other.codomain.key:
            raise BasisMismatch(f"cannot combine {self.domain.key}->{self.codomain.key} with "
                                f"{other.domain.key}->{other.codomain.key}")

    @staticmethod
    def _sum_parity(p, q, a: "SparseOperator", b: "SparseOperator"):
        if a.is_zero():
            return q
        if b.is_zero():
            return p
        return p if p == q else None

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        self._compatible(other)
        parity = self._sum_parity(self.parity, other.parity, self, other)
        if other.is_zero():
            return SparseOperator._copy(self, parity)
        if self.is_zero():
            return SparseOperator._copy(other, parity)
        den = _lcm(self.den, other.den)
        fa, fb = den // self.den, den // other.den
        if (_maxabs(self.num) * fa + _maxabs(other.num) * fb) >= _LIMIT:
            raise OverflowError("sum exceeds exact int64 range")
        num = (self.num if fa == 1 else self.num * fa) + (other.num if fb == 1 else other.num * fb)
        return SparseOperator(self.domain, self.codomain, num, den, parity, trusted=True)

    @staticmethod
    def _copy(op: "SparseOperator", parity) -> "SparseOperator":
        out = SparseOperator.__new__(SparseOperator)
        out.domain, out.codomain, out.num, out.den = op.domain, op.codomain, op.num, op.den
        out.parity, out.name, out._cols = parity, "", None
        return out

    def __neg__(self) -> "SparseOperator":
        return SparseOperator(self.domain, self.codomain, -self.num, self.den, self.parity, self.name, trusted=True)

    def __sub__(self, other: "SparseOperator") -> "SparseOperator":
        return self + (-other)

    def scale(self, c) -> "SparseOperator":
        c = Fraction(c)
        if c == 0:
            return SparseOperator.zero(self.domain, self.codomain, self.parity)
        if c == 1:
            return SparseOperator._copy(self, self.parity)
        if c == -1:
            return -self
        if _maxabs(self.num) * abs(c.numerator) >= _LIMIT:
            raise OverflowError("scaling exceeds exact int64 range")
        return SparseOperator(self.domain, self.codomain, self.num * c.numerator, self.den * c.denominator, self.parity)

    def __mul__(self, c) -> "SparseOperator":
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "SparseOperator") -> "SparseOperator":
        """Composition: apply ``other`` first, then ``self``."""
        if other.codomain.key != self.domain.key:
            raise BasisMismatch(f"cannot compose {other.domain.key}->{other.codomain.key} then "
                                f"{self.domain.key}->{self.codomain.key}")
        if self.num.nnz and other.num.nnz:
            inner = min(int(np.diff(self.num.indptr).max()), int(np.diff(other.num.tocsc().indptr).max()))
            if _maxabs(self.num) * _maxabs(other.num) * max(inner, 1) >= _LIMIT:
                raise OverflowError("product exceeds exact int64 range")
        if self.parity is None or other.parity is None:
            parity = None
        else:
            parity = (self.parity + other.parity) % 2
        if self.is_zero() or other.is_zero():
            return SparseOperator.zero(other.domain, self.codomain, parity)
        return SparseOperator(other.domain, self.codomain, sp.csr_matrix(self.num @ other.num), self.den * other.den,
                              parity, trusted=True)

    def transpose(self) -> "SparseOperator":
        return SparseOperator(self.codomain, self.domain, self.num.T.tocsr(), self.den, self.parity)

    def equals(self, other: "SparseOperator") -> bool:
        self._compatible(other)
        if self.den == other.den:
            if self.nnz != other.nnz:
                return False
            return (self.num != other.num).nnz == 0
        return (self - other).is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseOperator):
            return NotImplemented
        if self.domain.key != other.domain.key or self.codomain.key != other.codomain.key:
            return False
        return (self - other).is_zero()

    __hash__ = None

    # -- action on sparse vectors --------------------------------------------
    def _columns(self):
        if self._cols is None:
            csc = self.num.tocsc()
            csc.sort_indices()
            self._cols = (csc.indptr.tolist(), csc.indices.tolist(), csc.data.tolist())
        return self._cols

    def apply(self, vec: dict) -> dict:
        """Image of a sparse vector ``{index: coefficient}``; exact."""
        indptr, indices, data = self._columns()
        out: dict = {}
        for j, c in vec.items():
            for t in range(indptr[j], indptr[j + 1]):
                i = indices[t]
                y = out.get(i, 0) + c * data[t]
                if y:
                    out[i] = y
                else:
                    del out[i]
        if self.den != 1:
            out = {i: Fraction(x, self.den) for i, x in out.items()}
        return out

    def apply_numerator(self, vec: dict) -> dict:
        """Image under ``den * self`` (same span, integer arithmetic)."""
        indptr, indices, data = self._columns()
        out: dict = {}
        for j, c in vec.items():
            for t in range(indptr[j], indptr[j + 1]):
                i = indices[t]
                y = out.get(i, 0) + c * data[t]
                if y:
                    out[i] = y
                else:
                    del out[i]
        return out


def graded_commutator(a: SparseOperator, b: SparseOperator, anti: bool = False) -> SparseOperator:
    """``[A, B] = AB - (-1)^{|A||B|} BA`` (or the graded anticommutator with ``anti``).

    Both operators must be square on the same sector.
    """
    if a.parity is None or b.parity is None:
        raise ValueError("graded bracket needs operators of definite parity")
    if not (a.is_square() and b.is_square()) or a.domain.key != b.domain.key:
        raise BasisMismatch("graded bracket needs square operators on one sector")
    sign = -1 if (a.parity * b.parity) % 2 else 1
    if anti:
        sign = -sign
    out = a @ b - (b @ a).scale(sign)
    out.parity = (a.parity + b.parity) % 2
    return out
