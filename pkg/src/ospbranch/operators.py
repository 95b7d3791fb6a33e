"""Exact matrices of the gl(m|n), osp(m|n), quasi-spin and spin generators.

Every generator is assembled from ordered products of single-mode creation and
annihilation operators acting on monomial states.  Operators that change the
particle number are rectangular maps between two named sectors.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from typing import Callable, Sequence

from .algebra import AlgebraSpec
from .fock import (DEFAULT_DIM_CAP, Mode, ModeLayout, SectorBasis, annihilate, create,
                   empty_sector, enumerate_sector, gram_diagonal)
from .sparse import BasisMismatch, SparseOperator, graded_commutator

# A term is (coefficient, ops) with ops written left to right as in the operator
# product; each op is ("+", mode) for a creator or ("-", mode) for an annihilator.
Term = tuple[int, Sequence[tuple[str, Mode]]]


def _term_parity(terms: Sequence[Term]) -> int:
    parities = {sum(0 if mode.fermionic else 1 for _, mode in ops) % 2 for _, ops in terms}
    if len(parities) > 1:
        raise ValueError("mixed-parity terms in one operator")
    return parities.pop() if parities else 0


def _term_shift(terms: Sequence[Term]) -> int:
    shifts = {sum(1 if kind == "+" else -1 for kind, _ in ops) for _, ops in terms}
    if len(shifts) > 1:
        raise ValueError("terms change particle number by different amounts")
    return shifts.pop() if shifts else 0


def assemble(domain: SectorBasis, codomain: SectorBasis, terms: Sequence[Term], name: str = "",
             parity: int | None = None) -> SparseOperator:
    """Matrix of sum_t coef_t * (product of ops_t) from ``domain`` to ``codomain``."""
    entries: dict[tuple[int, int], int] = {}
    index = codomain.index
    for col, state in enumerate(domain.states):
        for coef, ops in terms:
            c, st = coef, state
            for kind, mode in reversed(ops):
                sgn, st = (create if kind == "+" else annihilate)(st, mode)
                if st is None:
                    break
                c *= sgn
            if st is None:
                continue
            row = index[st]
            val = entries.get((row, col), 0) + c
            if val:
                entries[(row, col)] = val
            else:
                del entries[(row, col)]
    if parity is None:
        parity = _term_parity(terms)
    return SparseOperator.from_entries(domain, codomain, ((r, c, v) for (r, c), v in entries.items()),
                                       parity=parity, name=name)


class OperatorAlgebra:
    """Memoized generator matrices for one (spec, spin-label count).

    Generators are functions of the domain particle number N.  Building is
    lock-protected, so concurrent first requests build each matrix once.
    """

    def __init__(self, spec: AlgebraSpec, spins: int = 2, dim_cap: int | None = DEFAULT_DIM_CAP,
                 cache=None):
        self.spec = spec
        self.spins = spins
        self.layout = ModeLayout(spec, spins)
        self.dim_cap = dim_cap
        self.cache = cache
        self._memo: dict = {}
        self._lock = threading.RLock()

    # -- sectors ----------------------------------------------------------------
    def sector(self, N: int) -> SectorBasis:
        if N < 0:
            return empty_sector(self.spec, self.spins, N)
        return enumerate_sector(self.spec, self.spins, N, self.dim_cap)

    def gram(self, N: int) -> list[int]:
        return self._get(("gram", N), lambda: gram_diagonal(self.sector(N)))

    def _get(self, key, build: Callable):
        with self._lock:
            if key in self._memo:
                return self._memo[key]
            val = None
            if self.cache is not None and isinstance(key[0], str) and key[0] not in ("gram",):
                val = self.cache.load_operator(self, key)
            if val is None:
                val = build()
                if self.cache is not None and isinstance(val, SparseOperator):
                    self.cache.store_operator(self, key, val)
            self._memo[key] = val
            return val

    def _build(self, key, terms_fn: Callable[[], list[Term]], N: int, name: str) -> SparseOperator:
        def build():
            terms = terms_fn()
            dom = self.sector(N)
            cod = self.sector(N + _term_shift(terms)) if terms else dom
            return assemble(dom, cod, terms, name=name)
        return self._get(key, build)

    def _mode(self, a: int, alpha=0) -> Mode:
        return self.layout.mode(a, alpha)

    def _spin_range(self):
        return range(self.spins)

    def _need_two(self) -> None:
        if self.spins != 2:
            raise ValueError("this operator needs the two-spin-label Fock space")

    # -- single modes ------------------------------------------------------------
    def c_dag(self, a: int, alpha, N: int) -> SparseOperator:
        return self._build(("cdag", a, alpha, N), lambda: [(1, [("+", self._mode(a, alpha))])], N, f"c+_{a}{alpha}")

    def c(self, a: int, alpha, N: int) -> SparseOperator:
        if N == 0:
            return SparseOperator.zero(self.sector(0), self.sector(-1),
                                       parity=self.spec.parity(a), name=f"c_{a}{alpha}")
        return self._build(("c", a, alpha, N), lambda: [(1, [("-", self._mode(a, alpha))])], N, f"c_{a}{alpha}")

    # -- gl(m|n) and gl(2m|2n) ---------------------------------------------------
    def E(self, a: int, b: int, N: int) -> SparseOperator:
        """E^a_b = sum over spin of c†_{a alpha} c_{b alpha}."""
        terms = lambda: [(1, [("+", self._mode(a, s)), ("-", self._mode(b, s))]) for s in self._spin_range()]
        return self._build(("E", a, b, N), terms, N, f"E^{a}_{b}")

    def E_spinful(self, a: int, alpha, b: int, beta, N: int) -> SparseOperator:
        self._need_two()
        terms = lambda: [(1, [("+", self._mode(a, alpha)), ("-", self._mode(b, beta))])]
        return self._build(("Es", a, alpha, b, beta, N), terms, N, f"E^{a}{alpha}_{b}{beta}")

    def number(self, N: int, part: str = "all") -> SparseOperator:
        """N-hat, or its even ("0") or odd ("1") orbital part."""
        basis = self.sector(N)
        F = self.layout.n_fermionic
        if part == "all":
            vals = [N] * basis.dim
        elif part == "0":
            vals = [sum(s[:F]) for s in basis.states]
        elif part == "1":
            vals = [sum(s[F:]) for s in basis.states]
        else:
            raise ValueError(f"unknown number-operator part {part!r}")
        return SparseOperator.diagonal(basis, vals, name=f"N{'' if part == 'all' else part}")

    # -- osp(m|n) --------------------------------------------------------------
    def _sigma_lower_terms(self, a: int, b: int, literal: bool) -> list[tuple[int, int, int]]:
        """sigma_{ab} as a list of (coef, c, d) meaning coef * E^c_d."""
        sp = self.spec
        sgn = -1 if sp.parity(a) * sp.parity(b) else 1
        first = (sp.xi(a), sp.bar(a), b)
        if literal:
            second = (-sgn * sp.xi(a), sp.bar(a), a)
        else:
            second = (-sgn * sp.xi(b), sp.bar(b), a)
        return [first, second]

    def _combine(self, parts: list[tuple[int, int, int]], N: int, name: str) -> SparseOperator:
        out = None
        for coef, c, d in parts:
            term = self.E(c, d, N).scale(coef)
            out = term if out is None else out + term
        out.name = name
        return out

    def sigma(self, a: int, b: int, N: int, literal: bool = False) -> SparseOperator:
        """sigma_{ab} = g_{ac} E^c_b - (-1)^{[a][b]} g_{bc} E^c_a.

        ``literal=True`` uses g_{ac} in the second term instead, which breaks
        graded antisymmetry and is kept only to demonstrate that.
        """
        key = ("sigma_lit" if literal else "sigma", a, b, N)
        return self._get(key, lambda: self._combine(self._sigma_lower_terms(a, b, literal), N, f"sigma_{a}{b}"))

    def sigma_cw(self, a: int, b: int, N: int) -> SparseOperator:
        """sigma^a_b = g^{ac} sigma_{cb} = E^a_b - (-1)^{[a][b]} xi_{bar a} xi_b E^{bar b}_{bar a}."""
        sp = self.spec

        def build():
            sgn = -1 if sp.parity(a) * sp.parity(b) else 1
            parts = [(1, a, b), (-sgn * sp.xi(sp.bar(a)) * sp.xi(b), sp.bar(b), sp.bar(a))]
            return self._combine(parts, N, f"sigma^{a}_{b}")
        return self._get(("sigma_cw", a, b, N), build)

    def T(self, a: int, b: int, N: int) -> SparseOperator:
        """T_{ab} = g_{ac} E^c_b + (-1)^{[a][b]} g_{bc} E^c_a."""
        sp = self.spec

        def build():
            sgn = -1 if sp.parity(a) * sp.parity(b) else 1
            return self._combine([(sp.xi(a), sp.bar(a), b), (sgn * sp.xi(b), sp.bar(b), a)], N, f"T_{a}{b}")
        return self._get(("T", a, b, N), build)

    # -- quasi-spin -------------------------------------------------------------
    def _pair_orbitals(self, part: str) -> list[int]:
        sp = self.spec
        if part == "all":
            return list(sp.orbitals)
        if part == "0":
            return list(range(1, sp.m + 1))
        if part == "1":
            return list(range(sp.m + 1, sp.m + sp.n + 1))
        raise ValueError(f"unknown quasi-spin part {part!r}")

    def Q_plus(self, N: int, part: str = "all") -> SparseOperator:
        """sum_d xi_d c†_{d+} c†_{bar d -}, mapping N to N+2."""
        self._need_two()
        sp = self.spec
        terms = lambda: [(sp.xi(d), [("+", self._mode(d, 0)), ("+", self._mode(sp.bar(d), 1))])
                         for d in self._pair_orbitals(part)]
        return self._build(("Q+", part, N), terms, N, f"Q+{'' if part == 'all' else part}")

    def Q_minus(self, N: int, part: str = "all") -> SparseOperator:
        """sum_d xi_d c_{d-} c_{bar d +}, mapping N to N-2."""
        self._need_two()
        sp = self.spec
        if N < 2:
            return SparseOperator.zero(self.sector(N), self.sector(N - 2), name="Q-")
        terms = lambda: [(sp.xi(d), [("-", self._mode(d, 1)), ("-", self._mode(sp.bar(d), 0))])
                         for d in self._pair_orbitals(part)]
        return self._build(("Q-", part, N), terms, N, f"Q-{'' if part == 'all' else part}")

    def Q_zero(self, N: int, part: str = "all") -> SparseOperator:
        """(N - m + n)/2, or (N0 - m)/2 and (N1 + n)/2 for the splits."""
        self._need_two()
        basis = self.sector(N)
        sp = self.spec
        if part == "all":
            return SparseOperator.diagonal(basis, [Fraction(N - sp.m + sp.n, 2)] * basis.dim, name="Q0")
        num = self.number(N, part)
        shift = -sp.m if part == "0" else sp.n
        return SparseOperator.diagonal(basis, [Fraction(v + shift, 2) for v in num.diagonal_values()], name=f"Q0{part}")

    def Q_squared(self, N: int) -> SparseOperator:
        """Q0(Q0 - 1) + Q+ Q-, which only involves sectors N and N-2."""
        q0 = self.Q_zero(N)
        ident = SparseOperator.identity(self.sector(N))
        out = q0 @ (q0 - ident)
        if N >= 2:
            out = out + self.Q_plus(N - 2) @ self.Q_minus(N)
        out.name = "Q^2"
        return out

    # -- spin -------------------------------------------------------------------
    def _spin_orbitals(self, part: str) -> list[int]:
        return self._pair_orbitals(part)

    def S_plus(self, N: int, part: str = "all") -> SparseOperator:
        self._need_two()
        terms = lambda: [(1, [("+", self._mode(a, 0)), ("-", self._mode(a, 1))]) for a in self._spin_orbitals(part)]
        return self._build(("S+", part, N), terms, N, "S+")

    def S_minus(self, N: int, part: str = "all") -> SparseOperator:
        self._need_two()
        terms = lambda: [(1, [("+", self._mode(a, 1)), ("-", self._mode(a, 0))]) for a in self._spin_orbitals(part)]
        return self._build(("S-", part, N), terms, N, "S-")

    def S_zero(self, N: int, part: str = "all") -> SparseOperator:
        self._need_two()
        basis = self.sector(N)
        F = self.layout.n_fermionic
        lo, hi = {"all": (0, None), "0": (0, F), "1": (F, None)}[part]
        vals = [Fraction(sum(s[lo:hi][0::2]) - sum(s[lo:hi][1::2]), 2) for s in basis.states]
        return SparseOperator.diagonal(basis, vals, name="S0")

    # -- Casimirs ---------------------------------------------------------------
    def casimir_gl(self, N: int) -> SparseOperator:
        """sum_{a,b} (-1)^{[b]} E^a_b E^b_a."""
        def build():
            sp = self.spec
            out = SparseOperator.zero(self.sector(N))
            for a in sp.orbitals:
                for b in sp.orbitals:
                    out = out + (self.E(a, b, N) @ self.E(b, a, N)).scale(-1 if sp.parity(b) else 1)
            out.name = "C_gl"
            out.parity = 0
            return out
        return self._get(("C_gl", N), build)

    def casimir_osp(self, N: int) -> SparseOperator:
        """(1/2) sum_{a,b} (-1)^{[b]} sigma^a_b sigma^b_a."""
        def build():
            sp = self.spec
            out = SparseOperator.zero(self.sector(N))
            for a in sp.orbitals:
                for b in sp.orbitals:
                    out = out + (self.sigma_cw(a, b, N) @ self.sigma_cw(b, a, N)).scale(-1 if sp.parity(b) else 1)
            out = out.scale(Fraction(1, 2))
            out.name = "C_osp"
            out.parity = 0
            return out
        return self._get(("C_osp", N), build)

    # -- generator lists ---------------------------------------------------------
    def osp_generators(self, N: int) -> list[SparseOperator]:
        return [self.sigma_cw(a, b, N) for a in self.spec.orbitals for b in self.spec.orbitals]

    def osp_raising(self, N: int) -> list[SparseOperator]:
        """sigma^a_b whose osp weight is a positive root (one per root)."""
        return [self.sigma_cw(a, b, N) for a, b in osp_raising_pairs(self.spec)]

    def gl_raising(self, N: int) -> list[SparseOperator]:
        sp = self.spec
        return [self.E(a, b, N) for a in sp.orbitals for b in sp.orbitals if a < b]

    def osp_cartan_keys(self) -> list[tuple[int, int]]:
        sp = self.spec
        return [(i, i) for i in range(1, sp.h + 1)] + [(sp.m + mu, sp.m + mu) for mu in range(1, sp.k + 1)]

    def adjoint(self, A: SparseOperator) -> SparseOperator:
        return adjoint(A, self.gram(A.domain.N), self.gram(A.codomain.N))


def osp_raising_pairs(spec: AlgebraSpec) -> list[tuple[int, int]]:
    """Index pairs (a, b) with sigma^a_b raising, deduplicated by root."""
    from .algebra import Weight, positive_roots
    even, odd = positive_roots(spec)
    positive = set(even) | set(odd)
    seen = set()
    pairs = []
    for a in spec.orbitals:
        for b in spec.orbitals:
            w = spec.orbital_weight(a) - spec.orbital_weight(b)
            if w in positive and w not in seen:
                seen.add(w)
                pairs.append((a, b))
    return pairs


def cross_bracket(A: Callable[[int], SparseOperator], B: Callable[[int], SparseOperator],
                  N: int, shift_a: int, shift_b: int, anti: bool = False) -> SparseOperator:
    """Graded bracket of two operator families at domain particle number N.

    ``A(N)`` maps sector N to N + shift_a, similarly for B.  The result is
    ``A B - (-1)^{|A||B|} B A`` (sign flipped for ``anti``) from N to N + shift_a + shift_b.
    """
    ab = A(N + shift_b) @ B(N)
    ba = B(N + shift_a) @ A(N)
    pa, pb = A(N).parity, B(N).parity
    sign = -1 if (pa * pb) % 2 else 1
    if anti:
        sign = -sign
    out = ab - ba.scale(sign)
    out.parity = (pa + pb) % 2
    return out


def adjoint(A: SparseOperator, gram_domain: Sequence[int], gram_codomain: Sequence[int]) -> SparseOperator:
    """The grade-* adjoint of A with respect to the diagonal invariant form.

    Defined by <v, A w> = (-1)^{[A][w]} <A* v, w> for homogeneous w, where [w]
    is the boson-number parity of w.
    """
    if A.parity is None:
        raise ValueError("adjoint needs an operator of definite parity")
    if any(g == 0 for g in gram_domain) or any(g == 0 for g in gram_codomain):
        raise ZeroDivisionError("singular form")
    dom, cod = A.domain, A.codomain
    F = dom.layout.n_fermionic
    entries = []
    for r, c, num, den in A.entries():
        # A*[c, r] = s_c * g_cod[r] * A[r, c] / g_dom[c]
        w_grade = sum(dom.states[c][F:]) % 2
        s = -1 if (A.parity * w_grade) % 2 else 1
        entries.append((c, r, Fraction(s * gram_codomain[r] * num, den * gram_domain[c])))
    return SparseOperator.from_entries(cod, dom, entries, parity=A.parity, name=f"{A.name}*")


__all__ = ["OperatorAlgebra", "SparseOperator", "BasisMismatch", "graded_commutator", "cross_bracket",
           "adjoint", "assemble", "osp_raising_pairs"]
