"""Acceptance suite: one test per criterion, summarized at the end of the run.

Run alone with ``pytest tests/test_acceptance.py``; the terminal summary prints
one pass/FAIL line per criterion.
"""
import json
import subprocess
import sys

import pytest

from ospbranch.algebra import (LabelPair, casimir_closed_form, gap_scan, lambda_ab, make_spec, quasi_spin_top,
                               rho, rho_from_roots, weight_from_labels)
from ospbranch.decompose import (exceptional_composition_series, image, kernel_Qminus, restricted_gram,
                                 spin_block, verify_branching)
from ospbranch.fock import sector_dimension
from ospbranch.operators import OperatorAlgebra
from ospbranch.relations import check_casimir, check_quasi_spin, full_suite

from conftest import algebra

CAP = 2000
GRID = [(m, n, spins, N) for m, n in [(1, 4), (2, 4), (4, 4)] for spins in (1, 2) for N in range(5)
        if sector_dimension(make_spec(m, n), spins, N) <= CAP]
OK = ("pass", "expected-fail")


def criterion(num, title):
    return pytest.mark.criterion(num, title)


@pytest.fixture(scope="module")
def grid():
    """Full relation suite on every sector of the grid."""
    return {key: full_suite(algebra(*key[:3], dim_cap=CAP), key[3]) for key in GRID}


@criterion(1, "graded structure relations on all sectors with dim <= 2000")
def test_structure_constant_suite(grid):
    assert len(GRID) == 29
    bad = {key: [c.to_json() for c in checks if c.status not in OK] for key, checks in grid.items()}
    assert not any(bad.values()), {k: v for k, v in bad.items() if v}
    families = ("gl(m|n) brackets", "osp closure of sigma_ab", "gl(2m|2n) brackets", "sl(2) relations")
    for fam in families:
        assert any(fam in c.name for checks in grid.values() for c in checks), fam
    # every sector ran the gl and osp relations
    for checks in grid.values():
        names = " ".join(c.name for c in checks)
        assert "gl(m|n) brackets" in names and "osp closure" in names


@criterion(2, "quasi-spin sl(2) relations and commutation with osp")
@pytest.mark.parametrize("m", [1, 2, 4])
def test_quasi_spin_algebra(m):
    # domain sectors are those of the grid; N + 2 targets may exceed the cap, so build them uncapped
    alg = OperatorAlgebra(make_spec(m, 4), 2, dim_cap=None)
    sectors = [key[3] for key in GRID if key[:3] == (m, 4, 2)]
    assert sectors == [0, 1, 2, 3, 4][:len(sectors)] and len(sectors) >= 4
    for N in sectors:
        checks = check_quasi_spin(alg, N)
        assert len(checks) == 5
        assert all(c.passed for c in checks), [c.to_json() for c in checks if not c.passed]
        assert all(c.witness["checked"] > 0 and c.witness["skipped"] == 0 for c in checks)


@criterion(3, "Casimir identity as matrices and closed-form eigenvalue on each K")
@pytest.mark.parametrize("m", [2, 4])
def test_casimir_identity(m):
    alg = OperatorAlgebra(make_spec(m, 4), 2, dim_cap=None)
    for N in range(5):
        checks = check_casimir(alg, N)
        assert all(c.passed for c in checks), [c.to_json() for c in checks if not c.passed]
    for a in range(3):
        for b in range(5 - 2 * a):
            N = 2 * a + b
            K, _ = kernel_Qminus(alg, spin_block(alg, a, b), N)
            chi = casimir_closed_form(a, b, alg.spec)
            cas = alg.casimir_osp(N)
            for v in K.vectors():
                assert cas.apply(v) == {i: chi * x for i, x in v.items() if chi}


@criterion(4, "branching of V-hat(a,b) for m=2, n=4, 2a+b <= 4")
def test_branching_m2_n4():
    spec = make_spec(2, 4)
    alg = algebra(2, 4)
    for a in range(3):
        for b in range(5 - 2 * a):
            rep = verify_branching(LabelPair(a, b), spec, alg)
            assert rep.passed, (a, b, [c.to_json() for c in rep.checks.failures()])
            assert [f.label for f in rep.found] == [LabelPair(c, b) for c in range(a + 1)]
            blocks = [spin_block(alg, c, b).dim for c in range(a + 1)]
            assert [f.dimension for f in rep.found] == [blocks[c] - (blocks[c - 1] if c else 0)
                                                       for c in range(a + 1)]
            names = [c.name for c in rep.checks if c.status == "pass"]
            for c in range(1, a + 1):
                tag = f"[(c,b)=({c},{b})]"
                assert f"Q- maps V-hat(c,b) onto V-hat(c-1,b) {tag}" in names
                assert f"orthogonal decomposition V-hat = K + Q+ V-hat(c-1,b) {tag}" in names
    assert verify_branching(LabelPair(1, 0), spec, alg).found[1].dimension == 16
    assert verify_branching(LabelPair(0, 2), spec, alg).found[0].dimension == 19


def product_kills(q2, roots, v):
    """Apply prod (Q^2 - r) to v with exact arithmetic."""
    w = dict(v)
    for r in roots:
        qw = q2.apply(w)
        out = dict(qw)
        for i, x in w.items():
            y = out.get(i, 0) - r * x
            if y:
                out[i] = y
            else:
                out.pop(i, None)
        w = out
    return not w


@criterion(5, "Q^2 spectrum on each block lies in the quasi-spin range")
@pytest.mark.parametrize("m", [1, 2, 4])
def test_quasi_spin_range(m):
    alg = OperatorAlgebra(make_spec(m, 4), 2, dim_cap=None)
    for a in range(3):
        for b in range(5 - 2 * a):
            N = 2 * a + b
            q2 = alg.Q_squared(N)
            top = quasi_spin_top(N, alg.spec)
            roots = [q * (q - 1) for q in (top - j for j in range(a + 1))]
            vecs = spin_block(alg, a, b).vectors()
            assert vecs
            assert all(product_kills(q2, roots, v) for v in vecs), (a, b)
            # the range is sharp: dropping the lowest value fails once a >= 1 (except m = n, b = 0)
            if a >= 1 and not (m == 4 and b == 0):
                assert not all(product_kills(q2, roots[:-1], v) for v in vecs)


@criterion(6, "exceptional composition series at m = n = 4")
def test_exceptional_case():
    spec = make_spec(4, 4)
    alg = algebra(4, 4)
    rep = exceptional_composition_series(spec, alg)
    assert rep.passed, [c.to_json() for c in rep.checks.failures()]
    assert rep.extra["chain_dims"] == [32, 31, 1, 0]
    assert rep.extra["factor_dims"] == [1, 30, 1]
    zero = lambda_ab(0, 0, spec)
    assert rep.extra["factor_weights_obj"] == [zero, lambda_ab(1, 0, spec), zero]
    up = image(spin_block(alg, 0, 0), alg.Q_plus(0))
    r, rad = restricted_gram(up, alg.gram(2))
    assert up.dim - r == 1 and len(rad) == 1
    cas = alg.casimir_osp(2)
    imgs = [cas.apply(v) for v in spin_block(alg, 1, 0).vectors()]
    assert any(imgs) and all(not cas.apply(w) for w in imgs)


@criterion(7, "Casimir gap non-negative, zero only where allowed, both forms agree")
@pytest.mark.parametrize("m", [2, 4])
def test_gap_scan(m):
    spec = make_spec(m, 4)
    for a in range(3):
        for b in range(5 - 2 * a):
            pts = gap_scan(a, b, spec)
            assert pts
            for p in pts:
                assert p.gap_first == p.gap_second == p.gap_direct
                assert p.gap >= 0
                if p.gap == 0:
                    w = weight_from_labels(*p.labels, spec)
                    exceptional_zero = m == 4 and (a, b) == (1, 0) and w == lambda_ab(0, 0, spec)
                    assert w == lambda_ab(a, b, spec) or exceptional_zero, (a, b, p.labels)
            assert any(p.gap == 0 and weight_from_labels(*p.labels, spec) == lambda_ab(a, b, spec) for p in pts)


@criterion(8, "rho from roots for m <= n <= 8; middle Cartan generator vanishes for odd m")
def test_root_data():
    specs = [make_spec(m, n) for n in (4, 6, 8) for m in range(1, n + 1)]
    assert len(specs) == 18
    for sp in specs:
        assert rho(sp) == rho_from_roots(sp)
    for sp in specs:
        if sp.m % 2:
            alg = OperatorAlgebra(sp, 1)
            for N in (1, 2):
                assert alg.sigma_cw(sp.h + 1, sp.h + 1, N).is_zero()


def _no_floats(obj):
    if isinstance(obj, float):
        return False
    if isinstance(obj, dict):
        return all(_no_floats(v) for v in obj.values())
    if isinstance(obj, list):
        return all(_no_floats(v) for v in obj)
    return True


COMMANDS = [
    ["verify", "--m", "2", "--n", "4", "--max-N", "2", "--spins", "1"],
    ["branch", "--m", "2", "--n", "4", "--a", "1", "--b", "1", "--verify"],
    ["branch", "--m", "4", "--n", "4", "--a", "1", "--b", "0", "--verify"],
    ["casimir", "--m", "2", "--n", "4", "--a", "1", "--b", "1", "--lambda", "0|2,1", "--scan"],
    ["exceptional", "--n", "4"],
]


@criterion(9, "byte-identical json across runs with no floating-point values")
@pytest.mark.parametrize("argv", COMMANDS, ids=["verify", "branch-m2", "branch-m4", "casimir", "exceptional"])
def test_determinism(argv):
    cmd = [sys.executable, "-m", "ospbranch.cli", *argv, "--format", "json"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second
    rec = json.loads(first)
    assert _no_floats(rec)
    assert rec["provenance"]["conventions_version"]
    assert all(c["status"] in OK for c in rec["checks"])
