"""Graded-fermion Fock sectors.

Modes are pairs (orbital, spin).  The global mode order is orbital-major and
spin-minor, so all fermionic modes (even orbitals) precede the bosonic ones.
A state is its occupation vector in that order, read as the ordered monomial of
creation operators applied to the vacuum.

Fermionic and bosonic oscillators anticommute with each other.  Consequently
``c_p`` and ``c†_p`` pick up ``(-1)`` per occupied fermionic mode preceding p,
for bosonic p as well as fermionic p.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import NamedTuple

from .algebra import AlgebraSpec
from .sparse import SparseOperator

DEFAULT_DIM_CAP = 50_000
SPIN_LABELS = ("+", "-")

FockState = tuple  # occupation vector in global mode order


class SectorTooLarge(RuntimeError):
    def __init__(self, key: tuple, dim: int, cap: int):
        self.key = key
        self.dim = dim
        self.cap = cap
        m, n, spins, N = key
        super().__init__(f"sector (m={m}, n={n}, spins={spins}, N={N}) has dimension {dim}, above the cap {cap}")


@dataclass(frozen=True)
class Mode:
    orbital: int
    spin: int          # 0 for '+' (or the single label), 1 for '-'
    index: int         # position in the global mode order
    fermionic: bool
    n_fermionic: int   # number of fermionic modes in the layout

    @property
    def label(self) -> str:
        return f"{self.orbital}{SPIN_LABELS[self.spin]}"


class SignedState(NamedTuple):
    coefficient: int
    state: FockState | None


def _spin_index(alpha) -> int:
    if alpha in (0, "+"):
        return 0
    if alpha in (1, "-"):
        return 1
    raise ValueError(f"unknown spin label {alpha!r}")


@dataclass(frozen=True)
class ModeLayout:
    spec: AlgebraSpec
    spins: int

    def __post_init__(self):
        if self.spins not in (1, 2):
            raise ValueError(f"spin_labels must be 1 or 2, got {self.spins}")

    @property
    def n_modes(self) -> int:
        return self.spec.dim * self.spins

    @property
    def n_fermionic(self) -> int:
        return self.spec.m * self.spins

    @property
    def n_bosonic(self) -> int:
        return self.spec.n * self.spins

    def mode(self, orbital: int, spin=0) -> Mode:
        s = _spin_index(spin)
        if s >= self.spins:
            raise ValueError("spin '-' requested on a single-label layout")
        self.spec._check(orbital)
        idx = (orbital - 1) * self.spins + s
        return Mode(orbital, s, idx, orbital <= self.spec.m, self.n_fermionic)

    def modes(self) -> list[Mode]:
        return [self.mode(a, s) for a in self.spec.orbitals for s in range(self.spins)]


def sector_dimension(spec: AlgebraSpec, spins: int, N: int) -> int:
    """sum_j C(F, j) * multiset(B, N - j)."""
    if N < 0:
        return 0
    F, B = spec.m * spins, spec.n * spins
    return sum(comb(F, j) * comb(B + N - j - 1, N - j) for j in range(min(F, N) + 1))


class SectorBasis:
    """All N-particle states, ordered lexicographically (ascending) by occupation vector."""

    def __init__(self, spec: AlgebraSpec, spins: int, N: int, states: tuple):
        self.spec = spec
        self.spins = spins
        self.N = N
        self.layout = ModeLayout(spec, spins)
        self.states = states
        self.index = {s: i for i, s in enumerate(states)}
        self._grading: dict[str, list[tuple]] = {}

    @property
    def dim(self) -> int:
        return len(self.states)

    @property
    def key(self) -> tuple[int, int, int, int]:
        return (self.spec.m, self.spec.n, self.spins, self.N)

    def __len__(self) -> int:
        return len(self.states)

    def __repr__(self) -> str:
        return f"SectorBasis(m={self.spec.m}, n={self.spec.n}, spins={self.spins}, N={self.N}, dim={self.dim})"

    # per-state data
    def bosons(self, i: int) -> int:
        return sum(self.states[i][self.layout.n_fermionic:])

    def grade(self, i: int) -> int:
        return self.bosons(i) % 2

    def orbital_occupations(self, i: int) -> tuple[int, ...]:
        """gl(m|n) weight: eigenvalues of E^a_a, a = 1..m+n."""
        st, s = self.states[i], self.spins
        return tuple(sum(st[(a - 1) * s:a * s]) for a in self.spec.orbitals)

    def osp_weight_key(self, i: int) -> tuple[int, ...]:
        """osp weight coordinates (eps | delta) as a flat integer tuple."""
        occ = self.orbital_occupations(i)
        spec = self.spec
        m, h, k = spec.m, spec.h, spec.k
        eps = tuple(occ[j - 1] - occ[m - j] for j in range(1, h + 1))
        delta = tuple(occ[m + mu - 1] - occ[m + spec.n - mu] for mu in range(1, k + 1))
        return eps + delta

    def twice_spin_z(self, i: int) -> int:
        """Eigenvalue of 2 S_0 (two-label layouts only)."""
        st = self.states[i]
        return sum(st[0::2]) - sum(st[1::2])

    def grading(self, kind: str = "osp") -> list[tuple]:
        """Per-state grading keys: osp weight (or gl weight), plus 2 S_0 for two labels."""
        if kind not in self._grading:
            if kind == "osp":
                keys = [self.osp_weight_key(i) for i in range(self.dim)]
            elif kind == "gl":
                keys = [self.orbital_occupations(i) for i in range(self.dim)]
            else:
                raise ValueError(f"unknown grading {kind!r}")
            if self.spins == 2:
                keys = [k + (self.twice_spin_z(i),) for i, k in enumerate(keys)]
            self._grading[kind] = keys
        return self._grading[kind]

    def fingerprint(self) -> dict:
        return {"m": self.spec.m, "n": self.spec.n, "spins": self.spins, "N": self.N, "dim": self.dim}


def _occupations(F: int, B: int, N: int):
    """Occupation vectors of F fermionic then B bosonic modes with N particles, lex ascending."""
    total = F + B
    vec = [0] * total

    def rec(pos: int, left: int):
        if pos == total - 1:
            if pos < F and left > 1:
                return
            vec[pos] = left
            yield tuple(vec)
            vec[pos] = 0
            return
        top = min(left, 1) if pos < F else left
        for o in range(top + 1):
            vec[pos] = o
            yield from rec(pos + 1, left - o)
        vec[pos] = 0

    if total == 0:
        return
    yield from rec(0, N)


@lru_cache(maxsize=None)
def _enumerate(spec: AlgebraSpec, spins: int, N: int) -> SectorBasis:
    layout = ModeLayout(spec, spins)
    states = tuple(_occupations(layout.n_fermionic, layout.n_bosonic, N)) if N >= 0 else ()
    return SectorBasis(spec, spins, N, states)


def enumerate_sector(spec: AlgebraSpec, spins: int, N: int, dim_cap: int | None = DEFAULT_DIM_CAP) -> SectorBasis:
    """The N-particle sector; refuses sectors above ``dim_cap`` before enumerating."""
    if spins not in (1, 2):
        raise ValueError(f"spin_labels must be 1 or 2, got {spins}")
    if N < 0:
        raise ValueError(f"particle number must be non-negative, got {N}")
    dim = sector_dimension(spec, spins, N)
    if dim_cap is not None and dim > dim_cap:
        raise SectorTooLarge((spec.m, spec.n, spins, N), dim, dim_cap)
    basis = _enumerate(spec, spins, N)
    assert basis.dim == dim, "enumeration disagrees with the closed-form count"
    return basis


def empty_sector(spec: AlgebraSpec, spins: int, N: int) -> SectorBasis:
    """Zero-dimensional stand-in for a negative particle number."""
    return _enumerate(spec, spins, N) if N < 0 else enumerate_sector(spec, spins, N)


def _sign(state: FockState, mode: Mode) -> int:
    return -1 if sum(state[:min(mode.index, mode.n_fermionic)]) % 2 else 1


def create(state: FockState, mode: Mode) -> SignedState:
    occ = state[mode.index]
    if mode.fermionic and occ:
        return SignedState(0, None)
    new = state[:mode.index] + (occ + 1,) + state[mode.index + 1:]
    return SignedState(_sign(state, mode), new)


def annihilate(state: FockState, mode: Mode) -> SignedState:
    occ = state[mode.index]
    if not occ:
        return SignedState(0, None)
    new = state[:mode.index] + (occ - 1,) + state[mode.index + 1:]
    return SignedState(_sign(state, mode) * occ, new)


def norm_of_state(state: FockState, n_fermionic: int) -> int:
    """<s, s> for a monomial state: (-1)^{r(r+1)/2} prod o!, r the boson count."""
    bos = state[n_fermionic:]
    r = sum(bos)
    val = 1
    for o in bos:
        val *= factorial(o)
    return -val if (r * (r + 1) // 2) % 2 else val


def gram_diagonal(basis: SectorBasis) -> list[int]:
    F = basis.layout.n_fermionic
    return [norm_of_state(s, F) for s in basis.states]


def gram_matrix(basis: SectorBasis) -> SparseOperator:
    """The invariant form on the monomial basis (diagonal and nondegenerate)."""
    return SparseOperator.diagonal(basis, gram_diagonal(basis), name="gram")
