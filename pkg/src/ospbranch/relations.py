"""Exact matrix checks of the defining relations on a single Fock sector.

Each ``check_*`` function returns a list of ``Check`` records; the witness of a
failing check is the first index tuple at which the identity broke.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from .fock import SectorTooLarge
from .linalg import Echelon
from .operators import OperatorAlgebra, cross_bracket
from .report import Check
from .sparse import SparseOperator, graded_commutator


def _run(name: str, cases: Iterable[tuple]) -> Check:
    """Cases are (label, lhs, rhs) or (label, thunk) with thunk() -> (lhs, rhs).

    A thunk that needs a sector above the dimension cap is skipped and counted.
    """
    count = skipped = 0
    for case in cases:
        if len(case) == 2:
            label, thunk = case
            try:
                lhs, rhs = thunk()
            except SectorTooLarge:
                skipped += 1
                continue
        else:
            label, lhs, rhs = case
        count += 1
        if not lhs.equals(rhs):
            return Check(name, False, {"at": list(label), "checked": count, "skipped": skipped})
    return Check(name, True, {"checked": count, "skipped": skipped})


def _sgn(x: int) -> int:
    return -1 if x % 2 else 1


def _zero(alg: OperatorAlgebra, N: int, shift: int = 0) -> SparseOperator:
    return SparseOperator.zero(alg.sector(N), alg.sector(N + shift))


def _sector_tag(alg: OperatorAlgebra, N: int) -> str:
    return f"m={alg.spec.m} n={alg.spec.n} spins={alg.spins} N={N}"


# --- gl(m|n) -------------------------------------------------------------------

def check_gl(alg: OperatorAlgebra, N: int) -> list[Check]:
    sp = alg.spec
    orb = list(sp.orbitals)
    zero = _zero(alg, N)

    def cases():
        for a, b, c, d in itertools.product(orb, repeat=4):
            lhs = graded_commutator(alg.E(a, b, N), alg.E(c, d, N))
            rhs = zero
            if b == c:
                rhs = rhs + alg.E(a, d, N)
            if a == d:
                s = _sgn((sp.parity(a) + sp.parity(b)) * (sp.parity(c) + sp.parity(d)))
                rhs = rhs - alg.E(c, b, N).scale(s)
            yield (a, b, c, d), lhs, rhs

    number = zero
    for a in orb:
        number = number + alg.E(a, a, N)
    return [_run(f"gl(m|n) brackets [{_sector_tag(alg, N)}]", cases()),
            Check(f"sum of E^a_a is the number operator [{_sector_tag(alg, N)}]", number.equals(alg.number(N)))]


# --- osp(m|n) ------------------------------------------------------------------

def check_osp(alg: OperatorAlgebra, N: int) -> list[Check]:
    sp = alg.spec
    orb = list(sp.orbitals)
    zero = _zero(alg, N)
    tag = _sector_tag(alg, N)
    p = sp.parity

    def closure():
        for a, b, c, d in itertools.product(orb, repeat=4):
            lhs = graded_commutator(alg.sigma(a, b, N), alg.sigma(c, d, N))
            s = _sgn((p(a) + p(b)) * (p(c) + p(d)))
            rhs = zero
            for coef, x, y in ((sp.metric(c, b), a, d), (-s * sp.metric(a, d), c, b),
                               (-_sgn(p(c) * p(d)) * sp.metric(d, b), a, c),
                               (_sgn(p(c) * p(d)) * s * sp.metric(a, c), d, b)):
                if coef:
                    rhs = rhs + alg.sigma(x, y, N).scale(coef)
            yield (a, b, c, d), lhs, rhs

    def antisym():
        for a, b in itertools.product(orb, repeat=2):
            yield (a, b), alg.sigma(a, b, N), alg.sigma(b, a, N).scale(-_sgn(p(a) * p(b)))

    def reflection():
        for a, b in itertools.product(orb, repeat=2):
            s = -_sgn(p(a) * (p(a) + p(b))) * sp.xi(a) * sp.xi(b)
            yield (a, b), alg.sigma_cw(a, b, N), alg.sigma_cw(sp.bar(b), sp.bar(a), N).scale(s)

    def lower_vs_upper():
        for a, b in itertools.product(orb, repeat=2):
            ab = sp.bar(a)
            yield (a, b), alg.sigma_cw(a, b, N), alg.sigma(ab, b, N).scale(sp.inverse_metric(a, ab))

    def gl_k_block():
        for mu, nu in itertools.product(range(1, sp.k + 1), repeat=2):
            a, b = sp.odd(mu), sp.odd(nu)
            rhs = alg.E(a, b, N) - alg.E(sp.bar(b), sp.bar(a), N).scale(_sgn(mu + nu))
            yield (mu, nu), alg.sigma_cw(a, b, N), rhs

    def cartan():
        for a in orb:
            yield (a,), alg.sigma_cw(a, a, N), alg.E(a, a, N) - alg.E(sp.bar(a), sp.bar(a), N)

    return [_run(f"osp closure of sigma_ab [{tag}]", closure()),
            _run(f"graded antisymmetry of sigma_ab [{tag}]", antisym()),
            _run(f"reflection identity for sigma^a_b [{tag}]", reflection()),
            _run(f"sigma^a_b equals g^ac sigma_cb [{tag}]", lower_vs_upper()),
            _run(f"gl(k) block of sigma^mu_nu [{tag}]", gl_k_block()),
            _run(f"Cartan form sigma^a_a = E^a_a - E^abar_abar [{tag}]", cartan())]


def literal_sigma_antisymmetry(alg: OperatorAlgebra, N: int) -> Check:
    """Antisymmetry for the variant using g_ac in both terms; expected to fail."""
    sp = alg.spec
    p = sp.parity

    def cases():
        for a, b in itertools.product(sp.orbitals, repeat=2):
            yield (a, b), alg.sigma(a, b, N, literal=True), alg.sigma(b, a, N, literal=True).scale(-_sgn(p(a) * p(b)))
    c = _run(f"graded antisymmetry with g_ac in the second term [{_sector_tag(alg, N)}]", cases())
    c.expected_fail = True
    return c


def check_T(alg: OperatorAlgebra, N: int, bracket_pairs: int | None = None) -> list[Check]:
    """T_ab symmetry, sigma + T = 2 g E, and [T, T] inside the sigma span."""
    sp = alg.spec
    orb = list(sp.orbitals)
    tag = _sector_tag(alg, N)
    p = sp.parity

    def sym():
        for a, b in itertools.product(orb, repeat=2):
            yield (a, b), alg.T(a, b, N), alg.T(b, a, N).scale(_sgn(p(a) * p(b)))

    def total():
        for a, b in itertools.product(orb, repeat=2):
            yield (a, b), alg.sigma(a, b, N) + alg.T(a, b, N), alg.E(sp.bar(a), b, N).scale(2 * sp.xi(a))

    spans = {0: Echelon(), 1: Echelon()}
    for a, b in itertools.product(orb, repeat=2):
        s = alg.sigma(a, b, N)
        spans[s.parity].insert(_flatten(s))
    pairs = list(itertools.product(itertools.product(orb, repeat=2), repeat=2))
    if bracket_pairs is not None:
        pairs = pairs[:bracket_pairs]
    bad = None
    for (a, b), (c, d) in pairs:
        br = graded_commutator(alg.T(a, b, N), alg.T(c, d, N))
        if br.is_zero():
            continue
        if _flatten(br) not in spans[br.parity]:
            bad = [a, b, c, d]
            break
    return [_run(f"graded symmetry of T_ab [{tag}]", sym()),
            _run(f"sigma_ab + T_ab = 2 g_ac E^c_b [{tag}]", total()),
            Check(f"[T, T] lies in the osp span with matching parity [{tag}]", bad is None,
                  {"at": bad} if bad else {"checked": len(pairs)})]


def _flatten(op: SparseOperator) -> dict:
    ncol = op.shape[1]
    out = {}
    for r, c, num, den in op.entries():
        out[r * ncol + c] = Fraction(num, den)
    return out


# --- oscillators ---------------------------------------------------------------

def check_oscillators(alg: OperatorAlgebra, N: int) -> list[Check]:
    """Graded anticommutators of c, c† and the gl action on them, from sector N."""
    sp = alg.spec
    tag = _sector_tag(alg, N)
    modes = [(a, s) for a in sp.orbitals for s in range(alg.spins)]

    def anticomm():
        for (a, s), (b, t) in itertools.product(modes, repeat=2):
            ca = lambda M, a=a, s=s: alg.c(a, s, M)
            cb = lambda M, b=b, t=t: alg.c(b, t, M)
            da = lambda M, a=a, s=s: alg.c_dag(a, s, M)
            db = lambda M, b=b, t=t: alg.c_dag(b, t, M)
            yield (a, s, b, t, "cc"), lambda: (cross_bracket(ca, cb, N, -1, -1, anti=True), _zero(alg, N, -2))
            yield (a, s, b, t, "dd"), lambda: (cross_bracket(da, db, N, 1, 1, anti=True), _zero(alg, N, 2))
            ident = SparseOperator.identity(alg.sector(N)) if (a, s) == (b, t) else _zero(alg, N)
            yield (a, s, b, t, "cd"), lambda: (cross_bracket(ca, db, N, -1, 1, anti=True), ident)

    def action():
        for a, b in itertools.product(sp.orbitals, repeat=2):
            for d, g in modes:
                e = lambda M, a=a, b=b: alg.E(a, b, M)

                def dag(a=a, b=b, d=d, g=g, e=e):
                    rhs = alg.c_dag(a, g, N) if b == d else _zero(alg, N, 1)
                    return cross_bracket(e, lambda M: alg.c_dag(d, g, M), N, 0, 1), rhs
                yield (a, b, d, g, "dag"), dag
                if N == 0:
                    continue
                s = _sgn((sp.parity(a) + sp.parity(b)) * sp.parity(d))
                rhs = alg.c(b, g, N).scale(-s) if a == d else _zero(alg, N, -1)
                yield (a, b, d, g, "ann"), cross_bracket(e, lambda M: alg.c(d, g, M), N, 0, -1), rhs

    return [_run(f"graded anticommutators of c and c+ [{tag}]", anticomm()),
            _run(f"gl(m|n) action on c and c+ [{tag}]", action())]


class _Monomial:
    """An operator with at most one nonzero per column, as (target, coefficient) arrays."""

    __slots__ = ("tgt", "coef")

    def __init__(self, op: SparseOperator):
        csc = op.num.tocsc()
        if op.den != 1 or (op.nnz and np.diff(csc.indptr).max() > 1):
            raise ValueError("not a monomial integer operator")
        ncol = op.shape[1]
        self.tgt = np.full(ncol, -1, dtype=np.int64)
        self.coef = np.zeros(ncol, dtype=np.int64)
        cols = np.repeat(np.arange(ncol), np.diff(csc.indptr))
        self.tgt[cols] = csc.indices
        self.coef[cols] = csc.data

    def after(self, other: "_Monomial") -> tuple[np.ndarray, np.ndarray]:
        """self composed with other (other applied first)."""
        live = other.tgt >= 0
        tgt = np.where(live, self.tgt[np.where(live, other.tgt, 0)], -1)
        coef = np.where(tgt >= 0, other.coef * self.coef[np.where(live, other.tgt, 0)], 0)
        return tgt, coef


def _pieces_vanish(dim: int, pieces: list[tuple[np.ndarray, np.ndarray, int]]) -> bool:
    """Whether sum_k scale_k * (monomial map k) is the zero matrix."""
    keys, vals = [], []
    cols = np.arange(dim, dtype=np.int64)
    for tgt, coef, scale in pieces:
        live = (tgt >= 0) & (coef != 0)
        keys.append(tgt[live] * dim + cols[live])
        vals.append(coef[live] * scale)
    if not keys:
        return True
    k = np.concatenate(keys)
    if not k.size:
        return True
    v = np.concatenate(vals)
    order = np.argsort(k, kind="stable")
    ks, vs = k[order], v[order]
    starts = np.flatnonzero(np.r_[True, ks[1:] != ks[:-1]])
    return not np.add.reduceat(vs, starts).any()


def check_gl_spinful(alg: OperatorAlgebra, N: int) -> list[Check]:
    """The gl(2m|2n) relations and the spin-averaging identity."""
    sp = alg.spec
    tag = _sector_tag(alg, N)
    modes = [(a, s) for a in sp.orbitals for s in (0, 1)]
    zero = _zero(alg, N)
    p = sp.parity
    dim = alg.sector(N).dim
    mono = {(x, y): _Monomial(alg.E_spinful(x[0], x[1], y[0], y[1], N)) for x in modes for y in modes}

    bad = None
    count = 0
    for (a, al), (b, be), (c, ga), (d, de) in itertools.product(modes, repeat=4):
        count += 1
        A, B = mono[(a, al), (b, be)], mono[(c, ga), (d, de)]
        s_ab = _sgn((p(a) + p(b)) * (p(c) + p(d)))
        pieces = [(*A.after(B), 1), (*B.after(A), -s_ab)]
        if (b, be) == (c, ga):
            m = mono[(a, al), (d, de)]
            pieces.append((m.tgt, m.coef, -1))
        if (a, al) == (d, de):
            m = mono[(c, ga), (b, be)]
            pieces.append((m.tgt, m.coef, s_ab))
        if not _pieces_vanish(dim, pieces):
            bad = [a, al, b, be, c, ga, d, de]
            break

    def averaging():
        for a, b in itertools.product(sp.orbitals, repeat=2):
            yield (a, b), alg.E_spinful(a, 0, b, 0, N) + alg.E_spinful(a, 1, b, 1, N), alg.E(a, b, N)

    s_plus = zero
    for a in sp.orbitals:
        s_plus = s_plus + alg.E_spinful(a, 0, a, 1, N)
    return [Check(f"gl(2m|2n) brackets [{tag}]", bad is None, {"at": bad, "checked": count} if bad else {"checked": count}),
            _run(f"spin average of E^(a alpha)_(b alpha) is E^a_b [{tag}]", averaging()),
            Check(f"sum of E^(a+)_(a-) is S+ [{tag}]", s_plus.equals(alg.S_plus(N)))]


# --- quasi-spin and spin ---------------------------------------------------------

def _sl2_cases(alg: OperatorAlgebra, N: int, plus: Callable, minus: Callable, zero_op: Callable, shift: int):
    """[X+, X-] = 2 X0 and [X0, X±] = ±X± from sector N (X± change N by ±shift)."""
    yield ("[+,-]",), lambda: (cross_bracket(plus, minus, N, shift, -shift), zero_op(N).scale(2))
    yield ("[0,+]",), lambda: (cross_bracket(zero_op, plus, N, 0, shift), plus(N))
    yield ("[0,-]",), lambda: (cross_bracket(zero_op, minus, N, 0, -shift), minus(N).scale(-1))


def check_quasi_spin(alg: OperatorAlgebra, N: int, with_osp: bool = True) -> list[Check]:
    """sl(2) relations of Q and commutation of Q with osp, using sectors N-2, N, N+2."""
    tag = _sector_tag(alg, N)
    checks = []
    for part in ("all", "0", "1"):
        plus = lambda M, part=part: alg.Q_plus(M, part)
        minus = lambda M, part=part: alg.Q_minus(M, part)
        zero_op = lambda M, part=part: alg.Q_zero(M, part)
        name = {"all": "quasi-spin", "0": "even quasi-spin", "1": "odd quasi-spin"}[part]
        checks.append(_run(f"{name} sl(2) relations [{tag}]", _sl2_cases(alg, N, plus, minus, zero_op, 2)))
    if with_osp:
        sp = alg.spec

        def cases():
            for a, b in itertools.product(sp.orbitals, repeat=2):
                s = lambda M, a=a, b=b: alg.sigma_cw(a, b, M)
                yield (a, b, "+"), lambda s=s: (cross_bracket(alg.Q_plus, s, N, 2, 0), _zero(alg, N, 2))
                if N >= 2:
                    yield (a, b, "-"), lambda s=s: (cross_bracket(alg.Q_minus, s, N, -2, 0), _zero(alg, N, -2))
        checks.append(_run(f"quasi-spin commutes with osp [{tag}]", cases()))
    checks.append(_run(f"Q+Q- - Q-Q+ = 2 Q0 as compositions [{tag}]", [(
        ("N",), lambda: (cross_bracket(alg.Q_plus, alg.Q_minus, N, 2, -2), alg.Q_zero(N).scale(2)))]))
    return checks


def check_spin(alg: OperatorAlgebra, N: int) -> list[Check]:
    sp = alg.spec
    tag = _sector_tag(alg, N)
    checks = []
    for part in ("all", "0", "1"):
        name = {"all": "spin", "0": "even spin", "1": "odd spin"}[part]
        checks.append(_run(f"{name} sl(2) relations [{tag}]", _sl2_cases(
            alg, N, lambda M, part=part: alg.S_plus(M, part), lambda M, part=part: alg.S_minus(M, part),
            lambda M, part=part: alg.S_zero(M, part), 0)))

    def with_gl():
        for a, b in itertools.product(sp.orbitals, repeat=2):
            for name, S in (("+", alg.S_plus), ("-", alg.S_minus), ("0", alg.S_zero)):
                yield (a, b, name), graded_commutator(S(N), alg.E(a, b, N)), _zero(alg, N)
    checks.append(_run(f"spin commutes with gl(m|n) [{tag}]", with_gl()))

    def with_q():
        for name, S in (("+", alg.S_plus), ("-", alg.S_minus), ("0", alg.S_zero)):
            yield (name, "Q+"), lambda S=S: (cross_bracket(S, alg.Q_plus, N, 0, 2), _zero(alg, N, 2))
            yield (name, "Q-"), lambda S=S: (cross_bracket(S, alg.Q_minus, N, 0, -2), _zero(alg, N, -2))
    checks.append(_run(f"spin commutes with quasi-spin [{tag}]", with_q()))
    return checks


def check_splits(alg: OperatorAlgebra, N: int) -> list[Check]:
    """The even/odd quasi-spin and spin algebras commute pairwise."""
    fams = {}
    for part in ("0", "1"):
        fams[f"Q{part}"] = [(lambda M, p=part: alg.Q_plus(M, p), 2), (lambda M, p=part: alg.Q_minus(M, p), -2),
                            (lambda M, p=part: alg.Q_zero(M, p), 0)]
        fams[f"S{part}"] = [(lambda M, p=part: alg.S_plus(M, p), 0), (lambda M, p=part: alg.S_minus(M, p), 0),
                            (lambda M, p=part: alg.S_zero(M, p), 0)]

    def cases():
        for x, y in itertools.combinations(sorted(fams), 2):
            for i, (A, sa) in enumerate(fams[x]):
                for j, (B, sb) in enumerate(fams[y]):
                    if N + sa + sb < 0 or N + sa < 0 or N + sb < 0:
                        continue
                    yield (x, i, y, j), lambda A=A, B=B, sa=sa, sb=sb: (
                        cross_bracket(A, B, N, sa, sb), _zero(alg, N, sa + sb))
    return [_run(f"split quasi-spin and spin algebras commute [{_sector_tag(alg, N)}]", cases())]


# --- Casimirs and the invariant form ---------------------------------------------

def check_casimir(alg: OperatorAlgebra, N: int, centrality: bool = True) -> list[Check]:
    sp = alg.spec
    tag = _sector_tag(alg, N)
    m, n = sp.m, sp.n
    basis = alg.sector(N)
    ident = SparseOperator.identity(basis)
    nhat = alg.number(N)
    rhs = ((ident.scale(m - n + 2) - nhat.scale(Fraction(1, 2))) @ nhat
           - ident.scale(Fraction((n - m) * (n - m - 2), 2)) + alg.Q_squared(N).scale(2))
    checks = [Check(f"C_gl - C_osp in terms of N-hat and Q^2 [{tag}]", (alg.casimir_gl(N) - alg.casimir_osp(N)).equals(rhs))]

    def q2_alt():
        alt = alg.Q_zero(N) @ (alg.Q_zero(N) + ident) + alg.Q_minus(N + 2) @ alg.Q_plus(N)
        return alt, alg.Q_squared(N)
    checks.append(_run(f"two expressions of Q^2 agree [{tag}]", [(("N",), q2_alt)]))
    if centrality:
        def cases():
            for a, b in itertools.product(sp.orbitals, repeat=2):
                yield (a, b, "gl"), graded_commutator(alg.casimir_gl(N), alg.E(a, b, N)), _zero(alg, N)
                yield (a, b, "osp"), graded_commutator(alg.casimir_osp(N), alg.sigma_cw(a, b, N)), _zero(alg, N)
        checks.append(_run(f"Casimirs commute with their algebras [{tag}]", cases()))
    return checks


def check_invariance(alg: OperatorAlgebra, N: int) -> list[Check]:
    """grade-* rules for E, sigma and Q on sector N."""
    sp = alg.spec
    tag = _sector_tag(alg, N)
    p = sp.parity

    def e_rule():
        for a, b in itertools.product(sp.orbitals, repeat=2):
            s = _sgn(p(a) * (p(a) + p(b)))
            yield (a, b), alg.adjoint(alg.E(a, b, N)), alg.E(b, a, N).scale(s)

    def sigma_rule():
        for a, b in itertools.product(sp.orbitals, repeat=2):
            s = _sgn(p(a) * (p(a) + p(b)))
            yield (a, b), alg.adjoint(alg.sigma_cw(a, b, N)), alg.sigma_cw(b, a, N).scale(s)

    def c_rule():
        for a in sp.orbitals:
            for s in range(alg.spins):
                yield (a, s), lambda a=a, s=s: (alg.adjoint(alg.c_dag(a, s, N)), alg.c(a, s, N + 1).scale(_sgn(p(a))))

    checks = [_run(f"(E^a_b)* rule [{tag}]", e_rule()),
              _run(f"(sigma^a_b)* rule [{tag}]", sigma_rule()),
              _run(f"(c+_a)* = (-1)^[a] c_a [{tag}]", c_rule())]
    if alg.spins == 2:
        checks.append(_run(f"Q+* = Q- and Q0* = Q0 [{tag}]", [
            (("Q+",), lambda: (alg.adjoint(alg.Q_plus(N)), alg.Q_minus(N + 2))),
            (("Q0",), alg.adjoint(alg.Q_zero(N)), alg.Q_zero(N))]))
    return checks


def full_suite(alg: OperatorAlgebra, N: int, heavy: bool = True) -> list[Check]:
    """Every single-sector family; ``heavy`` adds the gl(2m|2n) and [T, T] sweeps."""
    checks = check_gl(alg, N) + check_osp(alg, N) + check_oscillators(alg, N) + check_invariance(alg, N)
    if alg.spins == 2:
        checks += check_quasi_spin(alg, N) + check_spin(alg, N) + check_splits(alg, N) + check_casimir(alg, N)
        if heavy:
            checks += check_gl_spinful(alg, N)
    if heavy:
        checks += check_T(alg, N)
    if N >= 1:
        checks.append(literal_sigma_antisymmetry(alg, N))
    return checks
