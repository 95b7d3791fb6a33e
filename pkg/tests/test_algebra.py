from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ospbranch.algebra import (GL, LabelPair, SpecError, Weight, allowed_zero, casimir_closed_form,
                               casimir_eigenvalue_osp, casimir_from_labels, casimir_gap, gap_first_form,
                               gap_scan, gap_second_form, gl_highest_weight, is_exceptional, lambda_ab, make_spec,
                               positive_roots, predict_branching, rho, rho_from_roots, simple_roots,
                               weight_form, weight_from_labels)

VALID = [(m, n) for n in (4, 6, 8) for m in range(1, n + 1)]
specs = st.sampled_from(VALID).map(lambda t: make_spec(*t))


@pytest.mark.parametrize("m,n", [(2, 3), (1, 2), (5, 4), (0, 4), (3, 5)])
def test_invalid_specs_rejected(m, n):
    with pytest.raises(SpecError):
        make_spec(m, n)


def test_bar_and_xi_values():
    sp = make_spec(3, 4)
    assert sp.bar(1) == 3
    assert sp.h == 1 and sp.k == 2
    sp = make_spec(2, 4)
    assert sp.xi(sp.odd(2)) == 1
    assert sp.xi(sp.odd(1)) == -1
    assert [sp.bar(a) for a in sp.orbitals] == [2, 1, 6, 5, 4, 3]


@given(specs)
def test_metric_identities(sp):
    for a in sp.orbitals:
        assert sp.bar(sp.bar(a)) == a
        assert sp.xi(a) ** 2 == 1
        assert sp.xi(a) * sp.xi(sp.bar(a)) == (-1) ** sp.parity(a)
        assert sp.parity(sp.bar(a)) == sp.parity(a)
        # g_ab g^bc = delta_a^c
        for c in sp.orbitals:
            s = sum(sp.metric(a, b) * sp.inverse_metric(b, c) for b in sp.orbitals)
            assert s == (1 if a == c else 0)


def test_odd_positive_roots_m2_n4():
    sp = make_spec(2, 4)
    _, odd = positive_roots(sp)
    want = {Weight.osp(sp, [s], [1, 0]) for s in (1, -1)} | {Weight.osp(sp, [s], [0, 1]) for s in (1, -1)}
    assert set(odd) == want and len(odd) == 4


def test_m1_has_no_eps_roots():
    sp = make_spec(1, 4)
    even, odd = positive_roots(sp)
    assert sp.h == 0
    assert all(not r.even for r in even)
    # sp(4) has 4 positive roots
    assert len(even) == 4


@pytest.mark.parametrize("m,n,eps,delta", [(2, 4, [0], [1, 0]), (4, 4, [1, 0], [0, -1])])
def test_rho_values(m, n, eps, delta):
    sp = make_spec(m, n)
    assert rho(sp) == Weight.osp(sp, eps, delta)


@given(specs)
def test_rho_is_half_graded_root_sum(sp):
    assert rho(sp) == rho_from_roots(sp)


@given(specs)
def test_simple_roots_are_positive(sp):
    even, odd = positive_roots(sp)
    roots = set(even) | set(odd)
    simple = simple_roots(sp)
    # o(2) is abelian, so for m = 2 the listed simple roots fall one short of the rank
    assert len(simple) == (sp.k if sp.m == 2 else sp.h + sp.k)
    assert all(r in roots for r in simple)


def test_weight_form_values():
    sp = make_spec(2, 4)
    d1 = Weight.osp(sp, [0], [1, 0])
    assert weight_form(d1, d1) == -1
    assert weight_form(Weight.zero(sp), d1) == 0
    lam = lambda_ab(1, 1, sp)
    assert weight_form(lam, lam + rho(sp).scale(2)) == -9


def test_casimir_values():
    assert casimir_closed_form(1, 1, make_spec(2, 4)) == -9
    assert casimir_closed_form(1, 0, make_spec(4, 4)) == 0
    assert casimir_eigenvalue_osp(Weight.zero(make_spec(2, 4)), make_spec(2, 4)) == 0


@given(specs, st.integers(0, 5), st.integers(0, 5))
def test_closed_form_matches_weight_form(sp, a, b):
    assert casimir_closed_form(a, b, sp) == casimir_eigenvalue_osp(lambda_ab(a, b, sp), sp)


@st.composite
def labelled(draw):
    sp = draw(specs)
    c = draw(st.integers(0, sp.h))
    d = draw(st.integers(0, sp.h - c))
    e = draw(st.integers(0, 6))
    f = draw(st.integers(0, e))
    a = draw(st.integers(0, 4))
    b = draw(st.integers(0, 4))
    return sp, (c, d, e, f), (a, b)


@given(labelled())
def test_expanded_casimir_matches_weight_form(data):
    sp, labels, _ = data
    assert casimir_from_labels(*labels, sp) == casimir_eigenvalue_osp(weight_from_labels(*labels, sp), sp)


@given(labelled())
def test_gap_forms_agree(data):
    sp, labels, (a, b) = data
    direct = casimir_eigenvalue_osp(weight_from_labels(*labels, sp), sp) - casimir_closed_form(a, b, sp)
    assert gap_first_form(*labels, a, b, sp) == gap_second_form(*labels, a, b, sp) == direct


def test_gap_zero_cases():
    sp = make_spec(2, 4)
    for a, b in [(1, 1), (2, 0), (0, 3)]:
        assert casimir_gap(0, 0, a + b, a, a, b, sp) == 0
    assert casimir_gap(0, 0, 0, 0, 1, 0, make_spec(4, 4)) == 0
    # lambda = (0|1,0), (a,b) = (1,1): 1*5 + 1*1
    assert gap_first_form(0, 0, 1, 0, 1, 1, sp) == gap_second_form(0, 0, 1, 0, 1, 1, sp) == 6
    with pytest.raises(ValueError):
        casimir_gap(0, 0, 1, 2, 1, 1, sp)


@pytest.mark.parametrize("a,b,even,odd", [(1, 1, [2, 1], [0, 0, 0, 0]), (1, 2, [2, 1], [1, 0, 0, 0]),
                                          (3, 0, [2, 2], [1, 1, 0, 0])])
def test_gl_highest_weight(a, b, even, odd):
    sp = make_spec(2, 4)
    w = gl_highest_weight(LabelPair(a, b), sp)
    assert w.basis_tag == GL and w == Weight.gl(sp, even, odd)


def test_predictions():
    sp = make_spec(2, 4)
    p = predict_branching(LabelPair(2, 1), sp)
    assert [c.weight for c in p.components] == [lambda_ab(c, 1, sp) for c in range(3)]
    assert not p.exceptional
    for spec in (make_spec(1, 4), make_spec(4, 6), make_spec(6, 6)):
        p = predict_branching(LabelPair(0, 3), spec)
        assert [c.label for c in p.components] == [LabelPair(0, 3)] and not p.exceptional
    sp = make_spec(4, 4)
    p = predict_branching(LabelPair(2, 0), sp)
    assert p.exceptional
    exc = [c for c in p.components if c.exceptional]
    assert len(exc) == 1
    zero = Weight.zero(sp)
    assert sorted(w for w, _ in exc[0].composition_factors) == sorted([zero, zero, lambda_ab(1, 0, sp)])
    assert [c.label for c in p.components if not c.exceptional] == [LabelPair(2, 0)]


@given(specs, st.integers(0, 4), st.integers(0, 4))
def test_exceptional_detection(sp, a, b):
    assert is_exceptional(LabelPair(a, b), sp) == (sp.m == sp.n and b == 0 and a >= 1)


def test_weight_parse():
    sp = make_spec(4, 6)
    assert Weight.parse(sp, "1|2,1") == Weight.osp(sp, [1, 0], [2, 1, 0])
    assert Weight.parse(sp, "1/2,0|0") == Weight.osp(sp, [Fraction(1, 2), 0], [0, 0, 0])
    assert Weight.parse(make_spec(2, 4), "0,0|2,1") == lambda_ab(1, 1, make_spec(2, 4))
    for bad in ("1,2", "1|2|3", "1,1,1|0", "x|1"):
        with pytest.raises(ValueError):
            Weight.parse(sp, bad)


def test_weight_spaces_do_not_mix():
    with pytest.raises(ValueError):
        _ = Weight.zero(make_spec(2, 4)) + Weight.zero(make_spec(4, 4))


@pytest.mark.parametrize("m,n", [(2, 4), (4, 4), (1, 4), (4, 6)])
def test_gap_scan_nonnegative(m, n):
    sp = make_spec(m, n)
    for a in range(3):
        for b in range(5 - 2 * a):
            pts = gap_scan(a, b, sp)
            assert pts
            for p in pts:
                assert p.gap >= 0
                assert p.gap_first == p.gap_second == p.gap_direct
                c, d, e, f = p.labels
                assert e <= a + b - c and f <= a - c
                if p.gap == 0:
                    assert allowed_zero(p.labels, a, b, sp)
