"""Module structure of the two-column blocks under osp(m|n).

Every subspace is stored weight by weight: vectors are homogeneous for the osp
weight and for S_0, so all eliminations stay inside small weight pieces.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import (AlgebraSpec, BranchingPrediction, LabelPair, Weight, casimir_closed_form,
                      is_exceptional, lambda_ab, predict_branching, quasi_spin_top)
from .fock import SectorBasis
from .linalg import Echelon, dot, gram_rank, kernel, primitive, relations
from .operators import OperatorAlgebra
from .report import Check, CheckList, exact
from .sparse import SparseOperator


class Subspace:
    """Subspace of one sector, graded by (osp weight, 2 S_0)."""

    def __init__(self, basis: SectorBasis, vectors: Iterable[dict] = (), grading: str = "osp"):
        self.basis = basis
        self.grading = grading
        self._keys = basis.grading(grading)
        self.pieces: dict[tuple, Echelon] = {}
        for v in vectors:
            self.insert(v)

    def key_of(self, v: dict) -> tuple:
        keys = {self._keys[i] for i in v}
        if len(keys) != 1:
            raise ValueError("vector is not homogeneous for the grading")
        return keys.pop()

    def insert(self, v: dict):
        """Add v (homogeneous); returns the new echelon row or None."""
        if not v:
            return None
        key = self.key_of(v)
        ech = self.pieces.setdefault(key, Echelon())
        return ech.insert(v)

    def __contains__(self, v: dict) -> bool:
        if not v:
            return True
        parts: dict[tuple, dict] = {}
        for i, x in v.items():
            parts.setdefault(self._keys[i], {})[i] = x
        return all(k in self.pieces and p in self.pieces[k] for k, p in parts.items())

    @property
    def dim(self) -> int:
        return sum(e.dim for e in self.pieces.values())

    def vectors(self) -> list[dict]:
        return [v for k in sorted(self.pieces) for v in self.pieces[k].vectors()]

    def piece_vectors(self) -> list[tuple[tuple, list[dict]]]:
        return [(k, self.pieces[k].vectors()) for k in sorted(self.pieces) if self.pieces[k].dim]

    def weights(self) -> dict[tuple, int]:
        return {k: e.dim for k, e in sorted(self.pieces.items()) if e.dim}

    def issubset(self, other: "Subspace") -> bool:
        return all(v in other for v in self.vectors())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.dim == other.dim and self.issubset(other)

    __hash__ = None

    def copy(self) -> "Subspace":
        out = Subspace(self.basis, grading=self.grading)
        out.pieces = {k: e.copy() for k, e in self.pieces.items()}
        return out

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim} in {self.basis!r})"


def whole_sector(basis: SectorBasis, grading: str = "osp") -> Subspace:
    return Subspace(basis, ({i: 1} for i in range(basis.dim)), grading)


def _osp_weight(spec: AlgebraSpec, key: tuple) -> Weight:
    return Weight.osp(spec, key[:spec.h], key[spec.h:spec.h + spec.k])


def weight_spaces(space: Subspace, cartan: Sequence[SparseOperator] | None = None) -> dict[tuple, Subspace]:
    """Joint eigenspaces of diagonal Cartan operators (default: the stored grading).

    The space must be stable under the Cartan operators; otherwise the projected
    pieces would not fit and a ValueError is raised.
    """
    basis = space.basis
    if cartan is None:
        keys = basis.grading(space.grading)
    else:
        for op in cartan:
            if not op.is_diagonal():
                raise ValueError(f"{op.name or 'operator'} is not diagonal in the occupation basis")
        diags = [op.diagonal_values() for op in cartan]
        keys = [tuple(d[i] for d in diags) for i in range(basis.dim)]
    out: dict[tuple, list[dict]] = {}
    for v in space.vectors():
        parts: dict[tuple, dict] = {}
        for i, x in v.items():
            parts.setdefault(keys[i], {})[i] = x
        for k, p in parts.items():
            out.setdefault(k, []).append(p)
    result = {}
    for k, vecs in sorted(out.items()):
        sub = Subspace(basis, grading=space.grading)
        for p in vecs:
            sub.insert(p)
        result[k] = sub
    if sum(s.dim for s in result.values()) != space.dim:
        raise ValueError("space is not stable under the Cartan operators")
    return result


def singular_vectors(space: Subspace, raising: Sequence[SparseOperator]) -> Subspace:
    """Vectors of ``space`` killed by every operator in ``raising``."""
    out = Subspace(space.basis, grading=space.grading)
    for _, vecs in space.piece_vectors():
        images = []
        for v in vecs:
            img = {}
            for t, op in enumerate(raising):
                for i, x in op.apply_numerator(v).items():
                    img[t * op.shape[0] + i] = x
            images.append(img)
        for w in kernel(images, vecs):
            out.insert(w)
    return out


def singular_modulo(space: Subspace, raising: Sequence[SparseOperator], sub: Subspace) -> Subspace:
    """Vectors of ``space`` sent into ``sub`` by every raising operator (singular in the quotient)."""
    out = Subspace(space.basis, grading=space.grading)
    for _, vecs in space.piece_vectors():
        for w in _relative_kernel(vecs, raising, sub):
            out.insert(w)
    return out


def _relative_kernel(vecs: list[dict], raising: Sequence[SparseOperator], sub: Subspace) -> list[dict]:
    """Combinations x of vecs with op(sum x_j v_j) in sub for every op."""
    rows = []
    n = len(vecs)
    sub_vecs = sub.vectors()
    for v in vecs:
        img = {}
        for t, op in enumerate(raising):
            for i, x in op.apply_numerator(v).items():
                img[t * op.shape[0] + i] = x
        rows.append(img)
    for t, op in enumerate(raising):
        for u in sub_vecs:
            rows.append({t * op.shape[0] + i: x for i, x in u.items()})
    out = []
    for rel in relations(rows):
        head = {j: c for j, c in rel.items() if j < n}
        if head:
            w = {}
            for j, c in head.items():
                for i, x in vecs[j].items():
                    y = w.get(i, 0) + c * x
                    if y:
                        w[i] = y
                    else:
                        w.pop(i, None)
            if w:
                out.append(w)
    return out


def cyclic_span(seed: Subspace | Iterable[dict], generators: Sequence[SparseOperator],
                basis: SectorBasis | None = None, max_dim: int | None = None) -> Subspace:
    """Smallest generator-stable subspace containing the seed (breadth-first closure)."""
    if isinstance(seed, Subspace):
        basis = seed.basis
        seed_vecs = seed.vectors()
        grading = seed.grading
    else:
        seed_vecs = list(seed)
        grading = "osp"
    out = Subspace(basis, grading=grading)
    frontier = [r for r in (out.insert(v) for v in seed_vecs) if r is not None]
    while frontier:
        nxt = []
        for v in frontier:
            for g in generators:
                w = g.apply_numerator(v)
                if w:
                    r = out.insert(w)
                    if r is not None:
                        nxt.append(r)
                        if max_dim is not None and out.dim > max_dim:
                            raise RuntimeError(f"cyclic span exceeded {max_dim} dimensions")
        frontier = nxt
    return out


def image(space: Subspace, op: SparseOperator, grading: str | None = None) -> Subspace:
    out = Subspace(op.codomain, grading=grading or space.grading)
    for v in space.vectors():
        out.insert(op.apply_numerator(v))
    return out


def restricted_gram(space: Subspace, diag: Sequence[int]) -> tuple[int, list[dict]]:
    """Rank of the invariant form on ``space`` and its radical (as vectors)."""
    rank_total = 0
    radical = []
    for _, vecs in space.piece_vectors():
        r, rels = gram_rank(vecs, diag)
        rank_total += r
        for rel in rels:
            w = {}
            for j, c in rel.items():
                for i, x in vecs[j].items():
                    y = w.get(i, 0) + c * x
                    if y:
                        w[i] = y
                    else:
                        w.pop(i, None)
            radical.append(primitive(w))
    return rank_total, radical


def pairing_vanishes(u: Subspace, v: Subspace, diag: Sequence[int]) -> bool:
    for key, us in u.piece_vectors():
        if key not in v.pieces:
            continue
        for x in us:
            for y in v.pieces[key].vectors():
                if dot(x, y, diag):
                    return False
    return True


def _generators(alg: OperatorAlgebra, N: int) -> list[SparseOperator]:
    """Non-Cartan osp generators, one of each proportional pair sigma^a_b ~ sigma^bbar_abar."""
    sp = alg.spec
    gens = []
    for a in sp.orbitals:
        for b in sp.orbitals:
            if a == b or (a, b) > (sp.bar(b), sp.bar(a)):
                continue
            op = alg.sigma_cw(a, b, N)
            if not op.is_zero():
                gens.append(op)
    return gens


# --- blocks ----------------------------------------------------------------------

def spin_block(alg: OperatorAlgebra, a: int, b: int) -> Subspace:
    """V-hat(a, b): Ker S+ inside the S_0 = b/2 eigenspace of sector 2a + b."""
    N = 2 * a + b

    def build():
        basis = alg.sector(N)
        s_plus = alg.S_plus(N)
        gl_keys = basis.grading("gl")
        groups: dict[tuple, list[int]] = {}
        for i, k in enumerate(gl_keys):
            if k[-1] == b:
                groups.setdefault(k, []).append(i)
        out = Subspace(basis)
        for k in sorted(groups):
            sources = [{i: 1} for i in groups[k]]
            images = [s_plus.apply_numerator(v) for v in sources]
            for w in kernel(images, sources):
                out.insert(w)
        return out
    return alg._get(("block", a, b), build)


def spin_isotypic_blocks(alg: OperatorAlgebra, N: int) -> list[tuple[LabelPair, Subspace]]:
    """All blocks of sector N, ordered by increasing spin."""
    return [(LabelPair((N - b) // 2, b), spin_block(alg, (N - b) // 2, b)) for b in range(N % 2, N + 1, 2)]


def even_part(alg: OperatorAlgebra, a: int, b: int) -> Subspace:
    """The part of V-hat(a, b) with every particle in an odd (bosonic) orbital."""
    N = 2 * a + b
    basis = alg.sector(N)
    F = alg.layout.n_fermionic
    s_plus = alg.S_plus(N)
    groups: dict[tuple, list[int]] = {}
    for i, k in enumerate(basis.grading("gl")):
        if k[-1] == b and not any(basis.states[i][:F]):
            groups.setdefault(k, []).append(i)
    out = Subspace(basis)
    for k in sorted(groups):
        sources = [{i: 1} for i in groups[k]]
        for w in kernel([s_plus.apply_numerator(v) for v in sources], sources):
            out.insert(w)
    return out


def kernel_Qminus(alg: OperatorAlgebra, block: Subspace, N: int) -> tuple[Subspace, Check]:
    """K = Ker Q- on the block, with the check Ker Q- = Ker Q+Q- there."""
    q_minus = alg.Q_minus(N)
    out = Subspace(block.basis, grading=block.grading)
    other = Subspace(block.basis, grading=block.grading)
    q_plus = alg.Q_plus(N - 2) if N >= 2 else None
    for _, vecs in block.piece_vectors():
        imgs = [q_minus.apply_numerator(v) for v in vecs]
        for w in kernel(imgs, vecs):
            out.insert(w)
        if q_plus is not None:
            imgs2 = [q_plus.apply_numerator(x) for x in imgs]
        else:
            imgs2 = [{} for _ in vecs]
        for w in kernel(imgs2, vecs):
            other.insert(w)
    return out, Check("Ker Q- equals Ker Q+Q- on the block", out == other, {"dim_ker_Q-": out.dim, "dim_ker_Q+Q-": other.dim})


# --- reports --------------------------------------------------------------------

@dataclass
class FoundComponent:
    label: LabelPair
    highest_weight: Weight | None
    dimension: int
    quasi_spin: Fraction
    casimir: Fraction | None
    irreducible: bool
    exceptional: bool = False
    composition_factors: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"label": [self.label.a, self.label.b],
                "highest_weight": str(self.highest_weight) if self.highest_weight is not None else None,
                "dimension": self.dimension, "quasi_spin": exact(self.quasi_spin),
                "casimir": exact(self.casimir), "irreducible": self.irreducible,
                "exceptional": self.exceptional,
                "composition_factors": [[str(w), d] for w, d in self.composition_factors]}


@dataclass
class DecompositionReport:
    spec: AlgebraSpec
    source: LabelPair
    sector: tuple
    predicted: BranchingPrediction
    found: list[FoundComponent] = field(default_factory=list)
    checks: CheckList = field(default_factory=CheckList)
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.checks.all_ok

    def to_json(self) -> dict:
        pred = [{"label": [c.label.a, c.label.b], "weight": str(c.weight), "exceptional": c.exceptional,
                 "composition_factors": [[str(w), mult] for w, mult in c.composition_factors]}
                for c in self.predicted.components]
        return {"m": self.spec.m, "n": self.spec.n, "a": self.source.a, "b": self.source.b,
                "sector": list(self.sector), "predicted": pred,
                "found": [f.to_json() for f in self.found],
                "checks": [c.to_json() for c in self.checks], **exact(self.extra)}


def _scalar_action(op: SparseOperator, vecs: list[dict]) -> tuple[bool, Fraction | None]:
    """Whether op acts on every vector as one common scalar, and that scalar."""
    value = None
    for v in vecs:
        w = op.apply(v)
        i = next(iter(v))
        lam = Fraction(w.get(i, 0)) / v[i]
        if any(Fraction(w.get(j, 0)) != lam * x for j, x in v.items()) or any(j not in v for j in w):
            return False, None
        if value is None:
            value = lam
        elif lam != value:
            return False, None
    return True, value


def _polynomial_kills(op: SparseOperator, roots: Sequence[Fraction], vecs: list[dict]) -> bool:
    """prod_r (op - r) v = 0 for every v."""
    for v in vecs:
        w = dict(v)
        for r in roots:
            img = op.apply(w)
            for i, x in w.items():
                y = img.get(i, 0) - r * x
                if y:
                    img[i] = y
                else:
                    img.pop(i, None)
            w = img
            if not w:
                break
        if w:
            return False
    return True


def certify_irreducible(alg: OperatorAlgebra, space: Subspace, N: int, expected: Weight | None = None,
                        label: str = "") -> tuple[bool, Weight | None, CheckList]:
    """Unique singular line, cyclic generation from it, nondegenerate restricted form."""
    checks = CheckList()
    sing = singular_vectors(space, alg.osp_raising(N))
    weights = [_osp_weight(alg.spec, k) for k in sing.weights()]
    unique = sing.dim == 1
    hw = weights[0] if unique else None
    checks.add(f"unique osp singular line{label}", unique and (expected is None or hw == expected),
               {"singular_dim": sing.dim, "weights": [str(w) for w in weights]})
    generated = unique and cyclic_span(sing, _generators(alg, N)) == space
    checks.add(f"singular line generates the component{label}", generated)
    rank, _ = restricted_gram(space, alg.gram(N))
    checks.add(f"invariant form nondegenerate on the component{label}", rank == space.dim,
               {"rank": rank, "dim": space.dim})
    return all(c.passed for c in checks), hw, checks


def verify_branching(p: LabelPair, spec: AlgebraSpec, alg: OperatorAlgebra | None = None) -> DecompositionReport:
    """Decompose V-hat(a, b) under osp(m|n) and check it against the prediction."""
    if alg is None:
        alg = OperatorAlgebra(spec, 2)
    a, b = p.a, p.b
    N = p.N
    report = DecompositionReport(spec, p, (spec.m, spec.n, 2, N), predict_branching(p, spec))
    chk = report.checks
    exc = is_exceptional(p, spec)
    m, n = spec.m, spec.n

    blocks = [spin_block(alg, c, b) for c in range(a + 1)]
    kernels = []
    for c in range(a + 1):
        Nc = 2 * c + b
        tag = f" [(c,b)=({c},{b})]"
        block = blocks[c]
        K, ker_check = kernel_Qminus(alg, block, Nc)
        ker_check.name += tag
        chk.checks.append(ker_check)
        kernels.append(K)
        exc_level = exc and c == 1

        # Casimir scalar on K
        ok, val = _scalar_action(alg.casimir_osp(Nc), K.vectors())
        chi = casimir_closed_form(c, b, spec)
        chk.add(f"C_osp acts on K as the closed-form scalar{tag}", ok and val == chi,
                {"found": val, "expected": chi})

        # quasi-spin range on the block
        q_top = quasi_spin_top(Nc, spec)
        roots = [q * (q - 1) for q in (q_top - j for j in range(c + 1))]
        chk.add(f"Q^2 spectrum within the quasi-spin range{tag}",
                _polynomial_kills(alg.Q_squared(Nc), roots, block.vectors()), {"roots": roots})

        if c >= 1:
            prev = blocks[c - 1]
            q_plus = alg.Q_plus(Nc - 2)
            up = image(prev, q_plus)
            # Q- maps the block onto the previous block
            down = image(block, alg.Q_minus(Nc))
            chk.add(f"Q- maps V-hat(c,b) onto V-hat(c-1,b){tag}", down == prev, {"image_dim": down.dim, "target_dim": prev.dim})
            chk.add(f"Q+ is injective on V-hat(c-1,b){tag}", up.dim == prev.dim, {"image_dim": up.dim})
            qq = image(up, alg.Q_minus(Nc))
            singular_case = m == n and c - 1 == 0 and b == 0
            chk.add(f"Q-Q+ is nonsingular on V-hat(c-1,b){tag}", qq.dim == prev.dim,
                    {"rank": qq.dim, "dim": prev.dim}, expected_fail=singular_case)
            direct = Subspace(block.basis)
            for v in K.vectors() + up.vectors():
                direct.insert(v)
            ortho = pairing_vanishes(K, up, alg.gram(Nc))
            rank_up, rad = restricted_gram(up, alg.gram(Nc))
            chk.add(f"orthogonal decomposition V-hat = K + Q+ V-hat(c-1,b){tag}",
                    K.dim + up.dim == block.dim and direct.dim == block.dim and ortho and up.issubset(block),
                    {"dim_K": K.dim, "dim_Q+image": up.dim, "dim_block": block.dim, "dim_sum": direct.dim,
                     "orthogonal": ortho}, expected_fail=exc_level)
            chk.add(f"form nondegenerate on Q+ V-hat(c-1,b){tag}", rank_up == up.dim,
                    {"radical_dim": up.dim - rank_up}, expected_fail=exc_level)
        if c == 0:
            chk.add(f"K is the whole block when c = 0{tag}", K == block)

        # irreducibility of K
        if not (exc and c in (0, 1)):
            irr, hw, cl = certify_irreducible(alg, K, Nc, lambda_ab(c, b, spec), tag)
            chk.extend(cl)
            report.found.append(FoundComponent(LabelPair(c, b), hw, K.dim, q_top, chi, irr))
        dims_ok = K.dim == block.dim - (blocks[c - 1].dim if c else 0)
        if not exc_level:
            chk.add(f"dim V(c,b) = dim V-hat(c,b) - dim V-hat(c-1,b){tag}", dims_ok,
                    {"dim_K": K.dim, "dim_block": block.dim})

    if not exc:
        chk.add("component dimensions sum to dim V-hat(a,b)", sum(k.dim for k in kernels) == blocks[a].dim,
                {"dims": [k.dim for k in kernels], "block": blocks[a].dim})
    else:
        series = exceptional_composition_series(spec, alg)
        chk.extend(series.checks)
        report.extra["composition_series"] = series.extra
        factors = [(w, 1) for w in series.extra["factor_weights_obj"]]
        del series.extra["factor_weights_obj"]
        report.found.insert(0, FoundComponent(LabelPair(1, 0), lambda_ab(1, 0, spec), blocks[1].dim,
                                              quasi_spin_top(2, spec), casimir_closed_form(1, 0, spec), False,
                                              exceptional=True, composition_factors=factors))
    found = sorted((f.label.a, f.label.b, f.exceptional) for f in report.found)
    predicted = sorted((c.label.a, c.label.b, c.exceptional) for c in report.predicted.components)
    chk.add("found components match the prediction", found == predicted, {"found": found, "predicted": predicted})
    report.found.sort(key=lambda f: (f.label.a, f.label.b))

    # the block is generated by its all-bosonic part
    ev = even_part(alg, a, b)
    sp = alg.spec
    lowering = [alg.E(mu, i, N) for mu in range(sp.m + 1, sp.dim + 1) for i in range(1, sp.m + 1)]
    chk.add("all-bosonic part killed by the odd lowering operators E^mu_i",
            all(not op.apply_numerator(v) for op in lowering for v in ev.vectors()), {"dim": ev.dim})
    gen = cyclic_span(ev, _generators(alg, N)) if ev.dim else Subspace(blocks[a].basis)
    chk.add("block generated by its all-bosonic part", gen == blocks[a], {"seed_dim": ev.dim, "span_dim": gen.dim})
    return report


# --- the exceptional block at m = n ------------------------------------------------

def _state(alg: OperatorAlgebra, terms: list[tuple[int, list[tuple[int, int]]]], N: int) -> dict:
    """sum coef * c+_{x1} c+_{x2} ... |0> with modes (orbital, spin) listed left to right."""
    from .operators import assemble
    basis0 = alg.sector(0)
    out: dict = {}
    for coef, ops in terms:
        t = [(1, [("+", alg.layout.mode(a, s)) for a, s in ops])]
        op = assemble(basis0, alg.sector(N), t)
        for i, x in op.apply({0: coef}).items():
            y = out.get(i, 0) + x
            if y:
                out[i] = y
            else:
                out.pop(i, None)
    return out


def listed_states(alg: OperatorAlgebra) -> list[tuple[str, dict, bool]]:
    """Named N=2 states with their expected membership in the maximal submodule."""
    sp = alg.spec
    m, n, k = sp.m, sp.n, sp.k
    def ev(i):
        return i

    def od(mu):
        return m + mu

    def obar(mu):
        return n + 1 - mu

    def ebar(i):
        return m + 1 - i

    out = []

    def pair(x, y, sign):
        return _state(alg, [(1, [(x, 0), (y, 1)]), (sign, [(y, 0), (x, 1)])], 2)

    for mu in range(1, n + 1):
        for nu in range(1, n + 1):
            if nu != mu and nu != obar(mu):
                out.append((f"odd antisymmetric pair mu={mu} nu={nu}", pair(od(mu), od(nu), -1), True))
    def omega_odd(mu):
        return pair(od(mu), od(obar(mu)), -1)

    def omega_even(i):
        return pair(ev(i), ev(ebar(i)), 1)
    def combo(u, v, c):
        w = {i: u.get(i, 0) + c * v.get(i, 0) for i in set(u) | set(v)}
        return {i: x for i, x in w.items() if x}

    # the odd singlets enter with their metric signs xi_mu
    for mu in range(1, k):
        v = combo(omega_odd(mu), omega_odd(mu + 1), -sp.xi(od(mu)) * sp.xi(od(mu + 1)))
        out.append((f"signed difference of odd singlet pairs mu={mu}", v, True))
    for i in range(1, sp.h + 1):
        for mu in range(1, k + 1):
            out.append((f"even plus signed odd singlet i={i} mu={mu}", combo(omega_even(i), omega_odd(mu), sp.xi(od(mu))), True))
    for i in range(1, m + 1):
        for mu in range(1, n + 1):
            out.append((f"mixed symmetric pair i={i} mu={mu}", pair(ev(i), od(mu), 1), True))
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            if j != ebar(i):
                out.append((f"even symmetric pair i={i} j={j}", pair(ev(i), ev(j), 1), True))
    for i in range(1, sp.h):
        out.append((f"difference of even singlet pairs i={i}", combo(omega_even(i), omega_even(i + 1), -1), True))
    out.append(("Q+ on the vacuum", alg.Q_plus(0).apply({0: 1}), True))
    out.append(("odd quasi-spin Q+ on the vacuum", alg.Q_plus(0, "1").apply({0: 1}), False))
    out.append(("even quasi-spin Q+ on the vacuum", alg.Q_plus(0, "0").apply({0: 1}), False))
    return [(name, v, want) for name, v, want in out if v]


def exceptional_composition_series(spec: AlgebraSpec, alg: OperatorAlgebra | None = None) -> DecompositionReport:
    """Composition series of V-hat(1, 0) under osp(n|n)."""
    if spec.m != spec.n:
        raise ValueError(f"the exceptional block needs m = n, got m={spec.m}, n={spec.n}")
    if spec.m % 2:
        raise ValueError(f"the exceptional block needs even m, got m={spec.m}")
    if alg is None:
        alg = OperatorAlgebra(spec, 2)
    m = spec.m
    N = 2
    report = DecompositionReport(spec, LabelPair(1, 0), (spec.m, spec.n, 2, N), predict_branching(LabelPair(1, 0), spec))
    chk = report.checks
    gram = alg.gram(N)
    gens = _generators(alg, N)
    block = spin_block(alg, 1, 0)

    omega = _state(alg, [(1, [(m + 1, 0), (m + 2, 1)]), (-1, [(m + 2, 0), (m + 1, 1)])], N)
    hw_vec = Subspace(block.basis, [omega])
    tilde = cyclic_span(hw_vec, gens)
    vac_pair = alg.Q_plus(0).apply({0: 1})
    triv = cyclic_span(Subspace(block.basis, [vac_pair]), gens)

    chk.add("highest weight vector lies in the block", omega in block)
    chk.add("highest weight vector is osp singular", all(not op.apply(omega) for op in alg.osp_raising(N)))
    chk.add("Q+|0> spans a one-dimensional submodule", triv.dim == 1)
    chk.add("Q+|0> lies in the cyclic module", vac_pair in tilde)
    chain = [block.dim, tilde.dim, triv.dim, 0]
    chk.add("chain of submodules strictly decreases", tilde.issubset(block) and triv.issubset(tilde)
            and chain[0] > chain[1] > chain[2] > chain[3], {"dims": chain})
    chk.add("cyclic module has codimension one", tilde.dim == block.dim - 1, {"dims": chain})

    # singular vectors of the whole block: exactly the two lines
    sing = singular_vectors(block, alg.osp_raising(N))
    sw = sorted(sing.weights().items())
    zero_key = (0,) * (spec.h + spec.k) + (0,)
    top_key = tuple(lambda_ab(1, 0, spec).coords) + (0,)
    top_key = tuple(int(x) for x in top_key)
    chk.add("block has exactly two singular lines, of weights delta1+delta2 and 0",
            sing.dim == 2 and dict(sw) == {zero_key: 1, top_key: 1}, {"weights": [[list(k), d] for k, d in sw]})
    chk.add("Q+|0> is the weight-zero singular line", vac_pair in sing)
    # every nonzero submodule holds a singular line; Q+|0> lies in the only other one's span
    chk.add("trivial submodule is the unique minimal submodule", sing.dim == 2 and omega in sing
            and vac_pair in sing and triv.issubset(tilde))
    quot = singular_modulo(tilde, alg.osp_raising(N), triv)
    expect = Subspace(block.basis, [omega, vac_pair])
    chk.add("middle factor has a unique singular line, of weight delta1+delta2", quot == expect,
            {"dim": quot.dim})

    # duality: the perpendicular of the trivial submodule is the cyclic module
    perp = Subspace(block.basis)
    for _, vecs in block.piece_vectors():
        funcs = [{0: dot(vac_pair, v, gram)} if dot(vac_pair, v, gram) else {} for v in vecs]
        for w in kernel(funcs, vecs):
            perp.insert(w)
    chk.add("cyclic module equals the perpendicular of the trivial submodule", perp == tilde,
            {"perp_dim": perp.dim})
    # submodules W <-> W^perp reverses inclusion, so the minimal one is dual to the maximal one
    chk.add("cyclic module is the unique maximal submodule", perp == tilde and sing.dim == 2)
    rank_t, rad_t = restricted_gram(tilde, gram)
    rad_space = Subspace(block.basis, rad_t)
    chk.add("radical of the form on the cyclic module is the trivial submodule", rad_space == triv,
            {"rank": rank_t, "radical_dim": rad_space.dim})
    top_mult = tilde.weights().get(top_key, 0)
    chk.add("top weight of the cyclic module has multiplicity one", top_mult == 1)
    rank_b, _ = restricted_gram(block, gram)
    chk.add("form nondegenerate on the block", rank_b == block.dim)

    # the one degenerate case: the form on Q+ V-hat(0,0)
    up = image(spin_block(alg, 0, 0), alg.Q_plus(0))
    r_up, _ = restricted_gram(up, gram)
    chk.add("form on Q+ V-hat(0,0) has a one-dimensional radical", up.dim - r_up == 1,
            {"dim": up.dim, "rank": r_up})

    # Casimir: nilpotent and nonzero
    cas = alg.casimir_osp(N)
    imgs = [cas.apply_numerator(v) for v in block.vectors()]
    nonzero = any(imgs)
    square_zero = all(not cas.apply_numerator(w) for w in imgs if w)
    chk.add("C_osp on the block is nonzero with square zero", nonzero and square_zero,
            {"nonzero": nonzero, "square_zero": square_zero})

    table = []
    for name, v, want in listed_states(alg):
        inside = v in tilde
        table.append({"state": name, "in_block": v in block, "in_cyclic_module": inside, "expected": want})
    chk.add("listed basis states lie where expected", all(r["in_block"] and r["in_cyclic_module"] == r["expected"]
                                                          for r in table),
            {"failures": [r["state"] for r in table if not (r["in_block"] and r["in_cyclic_module"] == r["expected"])]})

    zero_w = Weight.zero(spec)
    report.extra.update({
        "chain_dims": chain,
        "factor_dims": [block.dim - tilde.dim, tilde.dim - triv.dim, triv.dim],
        "factor_weights": [str(zero_w), str(lambda_ab(1, 0, spec)), str(zero_w)],
        "factor_weights_obj": [zero_w, lambda_ab(1, 0, spec), zero_w],
        "membership": table,
    })
    report.found.append(FoundComponent(LabelPair(1, 0), lambda_ab(1, 0, spec), block.dim, quasi_spin_top(N, spec),
                                       casimir_closed_form(1, 0, spec), False, True,
                                       [(zero_w, 1), (lambda_ab(1, 0, spec), 1), (zero_w, 1)]))
    return report
