"""Structure data for gl(m|n) and its orthosymplectic subalgebra osp(m|n=2k).

Orbitals are labelled ``1..m+n``.  Orbitals ``a <= m`` are even (fermionic
oscillators), orbitals ``a > m`` are odd (bosonic oscillators); an odd orbital
``a`` is also addressed by its local label ``mu = a - m`` in ``1..n``.

Weights of osp(m|n) are stored as ``(eps_1..eps_h | delta_1..delta_k)`` with
``eps_{bar i} = -eps_i`` and, for odd m, ``eps_{h+1} = 0``.  The invariant form
on weights is ``(eps_i, eps_j) = delta_ij``, ``(delta_mu, delta_nu) = -delta_mu_nu``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

GL = "GL"
OSP = "OSP"


class SpecError(ValueError):
    """Raised when (m, n) violates the standing assumptions of the construction."""


@dataclass(frozen=True)
class AlgebraSpec:
    m: int
    n: int

    def __post_init__(self):
        m, n = self.m, self.n
        if not isinstance(m, int) or not isinstance(n, int):
            raise SpecError(f"m and n must be integers, got m={m!r}, n={n!r}")
        if n % 2 != 0:
            raise SpecError(f"n must be even (n = 2k); got n={n}")
        if n <= 2:
            raise SpecError(f"n must exceed 2 (the n = 2 case is excluded); got n={n}")
        if m < 1:
            raise SpecError(f"m must be at least 1; got m={m}")
        if m > n:
            raise SpecError(f"m must not exceed n (m <= n is assumed throughout); got m={m}, n={n}")

    @property
    def h(self) -> int:
        return self.m // 2

    @property
    def k(self) -> int:
        return self.n // 2

    @property
    def dim(self) -> int:
        return self.m + self.n

    @property
    def orbitals(self) -> range:
        return range(1, self.m + self.n + 1)

    def parity(self, a: int) -> int:
        self._check(a)
        return 0 if a <= self.m else 1

    def bar(self, a: int) -> int:
        self._check(a)
        if a <= self.m:
            return self.m + 1 - a
        mu = a - self.m
        return self.m + self.n + 1 - mu

    def xi(self, a: int) -> int:
        self._check(a)
        if a <= self.m:
            return 1
        return -1 if (a - self.m) % 2 else 1

    def metric(self, a: int, b: int) -> int:
        """Lower-index metric g_{ab} = xi_a delta_{a, bar b}."""
        return self.xi(a) if a == self.bar(b) else 0

    def inverse_metric(self, a: int, b: int) -> int:
        """Upper-index metric g^{ab} = xi_b delta_{a, bar b}."""
        return self.xi(b) if a == self.bar(b) else 0

    def odd(self, mu: int) -> int:
        """Global orbital label of the odd orbital with local label mu."""
        if not 1 <= mu <= self.n:
            raise IndexError(f"odd label {mu} outside 1..{self.n}")
        return self.m + mu

    def orbital_weight(self, a: int) -> "Weight":
        """osp weight carried by one particle in orbital a."""
        eps = [0] * self.h
        delta = [0] * self.k
        if a <= self.m:
            if a <= self.h:
                eps[a - 1] = 1
            elif self.bar(a) <= self.h:
                eps[self.bar(a) - 1] = -1
        else:
            mu = a - self.m
            if mu <= self.k:
                delta[mu - 1] = 1
            else:
                delta[self.n - mu] = -1
        return Weight.osp(self, eps, delta)

    def _check(self, a: int) -> None:
        if not 1 <= a <= self.m + self.n:
            raise IndexError(f"orbital {a} outside 1..{self.m + self.n}")

    def __str__(self) -> str:
        return f"gl({self.m}|{self.n}) > osp({self.m}|{self.n})"


def make_spec(m: int, n: int) -> AlgebraSpec:
    return AlgebraSpec(m, n)


def _frac_tuple(xs: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in xs)


@dataclass(frozen=True, order=True)
class Weight:
    """A weight in either the gl(m|n) basis or the osp(m|n) basis.

    For ``GL`` the two parts are the m even and n odd Cartan eigenvalues; for
    ``OSP`` they are the h epsilon and k delta components.
    """

    basis_tag: str
    even: tuple[Fraction, ...]
    odd: tuple[Fraction, ...]
    mn: tuple[int, int] = field(compare=True)

    @classmethod
    def gl(cls, spec: AlgebraSpec, even: Sequence, odd: Sequence) -> "Weight":
        if len(even) != spec.m or len(odd) != spec.n:
            raise ValueError(f"gl weight needs {spec.m}|{spec.n} coordinates, got {len(even)}|{len(odd)}")
        return cls(GL, _frac_tuple(even), _frac_tuple(odd), (spec.m, spec.n))

    @classmethod
    def osp(cls, spec: AlgebraSpec, eps: Sequence, delta: Sequence) -> "Weight":
        if len(eps) != spec.h or len(delta) != spec.k:
            raise ValueError(f"osp weight needs {spec.h}|{spec.k} coordinates, got {len(eps)}|{len(delta)}")
        return cls(OSP, _frac_tuple(eps), _frac_tuple(delta), (spec.m, spec.n))

    @classmethod
    def zero(cls, spec: AlgebraSpec, basis_tag: str = OSP) -> "Weight":
        if basis_tag == GL:
            return cls.gl(spec, [0] * spec.m, [0] * spec.n)
        return cls.osp(spec, [0] * spec.h, [0] * spec.k)

    @classmethod
    def parse(cls, spec: AlgebraSpec, text: str, basis_tag: str = OSP) -> "Weight":
        """Parse ``"e1,e2|d1,d2"``; missing trailing coordinates are zero, surplus ones must be."""
        if text.count("|") != 1:
            raise ValueError(f"weight {text!r} must contain exactly one '|'")
        left, right = text.split("|")
        ev = [Fraction(x.strip()) for x in left.split(",") if x.strip()]
        od = [Fraction(x.strip()) for x in right.split(",") if x.strip()]
        ne, no = (spec.m, spec.n) if basis_tag == GL else (spec.h, spec.k)
        # surplus coordinates are tolerated only when they are zero
        if not any(ev[ne:]) and not any(od[no:]):
            ev, od = ev[:ne], od[:no]
        if len(ev) > ne or len(od) > no:
            raise ValueError(f"weight {text!r} has too many coordinates for {ne}|{no}")
        ev += [Fraction(0)] * (ne - len(ev))
        od += [Fraction(0)] * (no - len(od))
        return cls(basis_tag, tuple(ev), tuple(od), (spec.m, spec.n))

    def _same_space(self, other: "Weight") -> None:
        if self.basis_tag != other.basis_tag or self.mn != other.mn:
            raise ValueError(f"weights live in different spaces: {self.basis_tag}{self.mn} vs {other.basis_tag}{other.mn}")
        if len(self.even) != len(other.even) or len(self.odd) != len(other.odd):
            raise ValueError("weight coordinate lengths differ")

    def __add__(self, other: "Weight") -> "Weight":
        self._same_space(other)
        return Weight(self.basis_tag, tuple(x + y for x, y in zip(self.even, other.even)),
                      tuple(x + y for x, y in zip(self.odd, other.odd)), self.mn)

    def __sub__(self, other: "Weight") -> "Weight":
        return self + other.scale(-1)

    def __neg__(self) -> "Weight":
        return self.scale(-1)

    def scale(self, c) -> "Weight":
        c = Fraction(c)
        return Weight(self.basis_tag, tuple(c * x for x in self.even), tuple(c * x for x in self.odd), self.mn)

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return self.even + self.odd

    def is_zero(self) -> bool:
        return not any(self.coords)

    def sort_key(self):
        return (self.even, self.odd)

    def __str__(self) -> str:
        def fmt(xs):
            return ",".join(str(x) for x in xs)
        return f"({fmt(self.even)}|{fmt(self.odd)})"


@dataclass(frozen=True)
class LabelPair:
    """Two-column labels: N = 2a + b particles with total spin s = b/2."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError(f"labels must be non-negative, got a={self.a}, b={self.b}")

    @property
    def N(self) -> int:
        return 2 * self.a + self.b

    @property
    def spin(self) -> Fraction:
        return Fraction(self.b, 2)

    def __str__(self) -> str:
        return f"({self.a},{self.b})"


@dataclass(frozen=True)
class Component:
    label: LabelPair
    weight: Weight
    exceptional: bool = False
    composition_factors: tuple[tuple[Weight, int], ...] = ()


@dataclass(frozen=True)
class BranchingPrediction:
    source: LabelPair
    spec: AlgebraSpec
    components: tuple[Component, ...]

    @property
    def exceptional(self) -> bool:
        return any(c.exceptional for c in self.components)


# --- roots -------------------------------------------------------------------

def _osp_unit(spec: AlgebraSpec, eps: dict[int, int] | None = None, delta: dict[int, int] | None = None) -> Weight:
    e = [0] * spec.h
    d = [0] * spec.k
    for i, v in (eps or {}).items():
        e[i - 1] += v
    for mu, v in (delta or {}).items():
        d[mu - 1] += v
    return Weight.osp(spec, e, d)


def _eps_signed(spec: AlgebraSpec, i: int) -> dict[int, int]:
    """epsilon_i for i in 1..m under the eps_{bar i} = -eps_i convention."""
    if i <= spec.h:
        return {i: 1}
    j = spec.m + 1 - i
    if j <= spec.h:
        return {j: -1}
    return {}


def positive_roots(spec: AlgebraSpec) -> tuple[list[Weight], list[Weight]]:
    h, k = spec.h, spec.k
    even: list[Weight] = []
    for i, j in itertools.combinations(range(1, h + 1), 2):
        even.append(_osp_unit(spec, {i: 1, j: -1}))
        even.append(_osp_unit(spec, {i: 1, j: 1}))
    if spec.m % 2 == 1:
        for i in range(1, h + 1):
            even.append(_osp_unit(spec, {i: 1}))
    for mu, nu in itertools.combinations(range(1, k + 1), 2):
        even.append(_osp_unit(spec, delta={mu: 1, nu: -1}))
        even.append(_osp_unit(spec, delta={mu: 1, nu: 1}))
    for mu in range(1, k + 1):
        even.append(_osp_unit(spec, delta={mu: 2}))
    odd = [_osp_unit(spec, _eps_signed(spec, i), {mu: 1})
           for mu in range(1, k + 1) for i in range(1, spec.m + 1)]
    return even, odd


def is_positive_root(spec: AlgebraSpec, w: Weight) -> bool:
    even, odd = positive_roots(spec)
    return w in set(even) or w in set(odd)


def simple_roots(spec: AlgebraSpec) -> list[Weight]:
    """Simple roots of o(m) + gl(k) followed by the odd simple root delta_k - eps_1."""
    h, k = spec.h, spec.k
    roots = [_osp_unit(spec, {i: 1, i + 1: -1}) for i in range(1, h)]
    if spec.m % 2 == 0 and h >= 2:
        roots.append(_osp_unit(spec, {h - 1: 1, h: 1}))
    elif spec.m % 2 == 1 and h >= 1:
        roots.append(_osp_unit(spec, {h: 1}))
    roots += [_osp_unit(spec, delta={mu: 1, mu + 1: -1}) for mu in range(1, k)]
    roots.append(_osp_unit(spec, {1: -1} if h >= 1 else {}, {k: 1}))
    return roots


def rho(spec: AlgebraSpec) -> Weight:
    m, n = spec.m, spec.n
    eps = [Fraction(m - 2 * i, 2) for i in range(1, spec.h + 1)]
    delta = [Fraction(n - m + 2 - 2 * mu, 2) for mu in range(1, spec.k + 1)]
    return Weight.osp(spec, eps, delta)


def rho_from_roots(spec: AlgebraSpec) -> Weight:
    """Half of (sum of even positive roots - sum of odd positive roots)."""
    even, odd = positive_roots(spec)
    total = Weight.zero(spec)
    for r in even:
        total = total + r
    for r in odd:
        total = total - r
    return total.scale(Fraction(1, 2))


def weight_form(x: Weight, y: Weight) -> Fraction:
    x._same_space(y)
    if x.basis_tag != OSP:
        raise ValueError("weight_form is defined on osp weights only")
    return sum((a * b for a, b in zip(x.even, y.even)), Fraction(0)) - \
        sum((a * b for a, b in zip(x.odd, y.odd)), Fraction(0))


# --- Casimir eigenvalues -----------------------------------------------------

def casimir_eigenvalue_osp(lam: Weight, spec: AlgebraSpec) -> Fraction:
    """(lambda, lambda + 2 rho)."""
    return weight_form(lam, lam + rho(spec).scale(2))


def lambda_ab(a: int, b: int, spec: AlgebraSpec) -> Weight:
    """osp highest weight (0..0 | a+b, a, 0..0)."""
    delta = [0] * spec.k
    delta[0] = a + b
    delta[1] = a
    return Weight.osp(spec, [0] * spec.h, delta)


def casimir_closed_form(a: int, b: int, spec: AlgebraSpec) -> int:
    m, n = spec.m, spec.n
    return -(a + b) * (a + b + n - m) - a * (a + n - m - 2)


def weight_from_labels(c: int, d: int, e: int, f: int, spec: AlgebraSpec) -> Weight:
    """The osp weight (2..2 [c], 1..1 [d], 0.. | e, f, 0..)."""
    _check_cdef(c, d, e, f, spec)
    eps = [2] * c + [1] * d + [0] * (spec.h - c - d)
    delta = [e, f] + [0] * (spec.k - 2)
    return Weight.osp(spec, eps, delta)


def casimir_from_labels(c: int, d: int, e: int, f: int, spec: AlgebraSpec) -> int:
    """Expanded polynomial form of (lambda, lambda + 2 rho) for labelled lambda."""
    m, n = spec.m, spec.n
    return (m * (2 * c + d) - c * (c + 1) - (c + d) * (c + d + 1)
            - (n - m) * (e + f) + 4 * c + d + 2 * f - e * e - f * f)


def _check_cdef(c: int, d: int, e: int, f: int, spec: AlgebraSpec) -> None:
    if min(c, d, e, f) < 0:
        raise ValueError(f"labels must be non-negative: c={c}, d={d}, e={e}, f={f}")
    if c + d > spec.h:
        raise ValueError(f"c + d = {c + d} exceeds h = {spec.h}")
    if f > e:
        raise ValueError(f"f = {f} exceeds e = {e}; not dominant")


def gap_first_form(c: int, d: int, e: int, f: int, a: int, b: int, spec: AlgebraSpec) -> int:
    m, n = spec.m, spec.n
    return (2 * c * n + d * (m - d) + 2 * c * (2 * a + b - 2 * c - d)
            + (a + b - c - e) * (a + b - c + e + n - m)
            + (a - c - f) * (a - c + f + n - m - 2))


def gap_second_form(c: int, d: int, e: int, f: int, a: int, b: int, spec: AlgebraSpec) -> int:
    m, n = spec.m, spec.n
    return ((2 * c * (n + 1) + 2 * f - 2 * a) + d * (m - d) + 2 * c * (2 * a + b - 2 * c - d)
            + (a + b - c - e) * (a + b - c + e + n - m)
            + (a - c - f) * (a - c + f + n - m))


def casimir_gap(c: int, d: int, e: int, f: int, a: int, b: int, spec: AlgebraSpec) -> int:
    """chi_lambda(C) - chi_{lambda_ab}(C), evaluated by both closed forms."""
    _check_cdef(c, d, e, f, spec)
    LabelPair(a, b)
    g1 = gap_first_form(c, d, e, f, a, b, spec)
    g2 = gap_second_form(c, d, e, f, a, b, spec)
    if g1 != g2:
        raise ArithmeticError(f"closed forms disagree at {(c, d, e, f, a, b)}: {g1} != {g2}")
    return g1


# --- highest weights and predictions -----------------------------------------

def gl_highest_weight(p: LabelPair, spec: AlgebraSpec) -> Weight:
    a, b, m, n = p.a, p.b, spec.m, spec.n
    if a + b <= m:
        even = [2] * a + [1] * b + [0] * (m - a - b)
        odd = [0] * n
    elif a <= m:
        even = [2] * a + [1] * (m - a)
        odd = [a + b - m] + [0] * (n - 1)
    else:
        even = [2] * m
        odd = [a + b - m, a - m] + [0] * (n - 2)
    return Weight.gl(spec, even, odd)


def is_exceptional(p: LabelPair, spec: AlgebraSpec) -> bool:
    return spec.m == spec.n and p.b == 0 and p.a >= 1


def predict_branching(p: LabelPair, spec: AlgebraSpec) -> BranchingPrediction:
    a, b = p.a, p.b
    comps = []
    if is_exceptional(p, spec):
        zero = Weight.zero(spec)
        comps.append(Component(LabelPair(1, 0), lambda_ab(1, 0, spec), exceptional=True,
                               composition_factors=((zero, 1), (lambda_ab(1, 0, spec), 1), (zero, 1))))
        comps += [Component(LabelPair(c, 0), lambda_ab(c, 0, spec)) for c in range(2, a + 1)]
    else:
        comps = [Component(LabelPair(c, b), lambda_ab(c, b, spec)) for c in range(a + 1)]
    return BranchingPrediction(p, spec, tuple(comps))


def quasi_spin_top(N: int, spec: AlgebraSpec) -> Fraction:
    """Q_0 eigenvalue on the N-particle sector, (N - m + n)/2."""
    return Fraction(N - spec.m + spec.n, 2)


# --- positivity scan of the Casimir gap --------------------------------------

@dataclass(frozen=True)
class ScanPoint:
    even_shape: tuple[int, int]   # (a', b'): gl(m) weight (2^a', 1^b')
    odd_shape: tuple[int, int]    # (c', d'): gl(n) weight (c', d')
    labels: tuple[int, int, int, int]  # (c, d, e, f)
    gap: int
    gap_first: int
    gap_second: int
    gap_direct: Fraction

    @property
    def weight_labels(self):
        return self.labels


def scan_domain(a: int, b: int, spec: AlgebraSpec) -> Iterable[tuple[tuple[int, int], tuple[int, int], tuple[int, int, int, int]]]:
    """Candidate (gl0 weight, contracted osp0 weight) pairs inside the (a, b) block.

    Only the particle-count, spin-triangle and contraction constraints are imposed;
    no supplementary dominance conditions for n > 4.
    """
    m, h = spec.m, spec.h
    N = 2 * a + b
    for ap in range(N // 2 + 1):
        for bp in range(N - 2 * ap + 1):
            if ap + bp > m:
                continue
            rest = N - 2 * ap - bp
            for dp in range(rest // 2 + 1):
                cp = rest - dp
                s_odd = cp - dp
                if not (b <= bp + s_odd and bp <= b + s_odd and s_odd <= b + bp):
                    continue
                for c in range(ap + 1):
                    d = min(bp, m - 2 * c - bp)
                    if d < 0 or c + d > h:
                        continue
                    for f in range((cp + dp - s_odd) // 2 + 1):
                        e = f + s_odd
                        if e + f > cp + dp:
                            continue
                        yield (ap, bp), (cp, dp), (c, d, e, f)


def gap_scan(a: int, b: int, spec: AlgebraSpec) -> list[ScanPoint]:
    chi_ab = casimir_closed_form(a, b, spec)
    points = []
    for even_shape, odd_shape, (c, d, e, f) in scan_domain(a, b, spec):
        g1 = gap_first_form(c, d, e, f, a, b, spec)
        g2 = gap_second_form(c, d, e, f, a, b, spec)
        direct = casimir_eigenvalue_osp(weight_from_labels(c, d, e, f, spec), spec) - chi_ab
        points.append(ScanPoint(even_shape, odd_shape, (c, d, e, f), g1, g1, g2, direct))
    return points


def allowed_zero(labels: tuple[int, int, int, int], a: int, b: int, spec: AlgebraSpec) -> bool:
    """Whether a vanishing gap at these labels is the one the branching theorems allow."""
    if labels == (0, 0, a + b, a):
        return True
    return spec.m == spec.n and (a, b) == (1, 0) and labels == (0, 0, 0, 0)
