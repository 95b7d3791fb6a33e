import itertools

import pytest
from hypothesis import given, settings, strategies as st

from ospbranch.algebra import make_spec
from ospbranch.fock import (ModeLayout, SectorTooLarge, annihilate, create, enumerate_sector, gram_diagonal,
                            norm_of_state, sector_dimension)


def brute_states(m: int, n: int, spins: int, N: int) -> list[tuple]:
    """All occupation vectors by exhaustive product (independent oracle)."""
    F, B = m * spins, n * spins
    ranges = [range(2)] * F + [range(N + 1)] * B
    return sorted(s for s in itertools.product(*ranges) if sum(s) == N)


@pytest.mark.parametrize("m,n,spins,dims", [
    (2, 4, 2, [1, 12, 74, 316, 1059]),
    (1, 4, 2, [1, 10, 53]),
    (4, 4, 2, [1, 16, 128, 688]),
    (2, 4, 1, [1, 6, 19, 44]),
])
def test_sector_dimensions(m, n, spins, dims):
    sp = make_spec(m, n)
    for N, d in enumerate(dims):
        assert sector_dimension(sp, spins, N) == d
        if 2 ** (m * spins) * (N + 1) ** (n * spins) <= 200_000:
            assert len(brute_states(m, n, spins, N)) == d


@given(st.sampled_from([(1, 4), (2, 4), (3, 4), (4, 4), (2, 6)]), st.sampled_from([1, 2]), st.integers(0, 3))
@settings(max_examples=30, deadline=None)
def test_enumeration_matches_brute_force(mn, spins, N):
    m, n = mn
    if 2 ** (m * spins) * (N + 1) ** (n * spins) > 200_000:
        return
    basis = enumerate_sector(make_spec(m, n), spins, N)
    assert list(basis.states) == brute_states(m, n, spins, N)
    assert all(basis.index[s] == i for i, s in enumerate(basis.states))


def test_dimension_cap():
    with pytest.raises(SectorTooLarge) as exc:
        enumerate_sector(make_spec(4, 4), 2, 4, dim_cap=2000)
    assert exc.value.dim == 2816
    assert "2816" in str(exc.value)


def test_layout_order():
    lay = ModeLayout(make_spec(2, 4), 2)
    modes = lay.modes()
    assert [m.index for m in modes] == list(range(12))
    assert [m.fermionic for m in modes] == [True] * 4 + [False] * 8
    assert lay.mode(3, "-").label == "3-"
    with pytest.raises(ValueError):
        ModeLayout(make_spec(2, 4), 1).mode(1, "-")


def test_create_and_annihilate_basics():
    lay = ModeLayout(make_spec(2, 4), 2)
    vac = (0,) * 12
    for md in lay.modes():
        c, s = create(vac, md)
        assert c == 1 and s[md.index] == 1
        assert annihilate(vac, md).state is None
    f = lay.mode(1, 0)
    once = create(vac, f).state
    assert create(once, f).state is None
    assert annihilate(once, f) == (1, vac)
    b = lay.mode(3, 0)
    st3 = tuple(3 if i == b.index else 0 for i in range(12))
    c, s = annihilate(st3, b)
    assert c == 3 and s[b.index] == 2


def test_fermionic_creators_anticommute():
    lay = ModeLayout(make_spec(2, 4), 2)
    vac = (0,) * 12
    p, q = lay.mode(1, 1), lay.mode(2, 0)
    c1, s1 = create(vac, q)
    c2, s12 = create(s1, p)
    d1, t1 = create(vac, p)
    d2, t12 = create(t1, q)
    assert s12 == t12 and c1 * c2 == -(d1 * d2)


def test_boson_passes_fermions_with_sign():
    # c+_mu c+_i |0> = - c+_i c+_mu |0>: bosons and fermions anticommute
    lay = ModeLayout(make_spec(2, 4), 1)
    vac = (0,) * 6
    i, mu = lay.mode(1), lay.mode(3)
    c1, s = create(vac, i)
    c2, s = create(s, mu)
    d1, t = create(vac, mu)
    d2, t = create(t, i)
    assert s == t and c1 * c2 == -(d1 * d2)


def test_norms():
    lay = ModeLayout(make_spec(2, 4), 2)
    F = lay.n_fermionic
    vac = (0,) * 12
    assert norm_of_state(vac, F) == 1
    assert norm_of_state(create(vac, lay.mode(1, 0)).state, F) == 1
    assert norm_of_state(create(vac, lay.mode(3, 0)).state, F) == -1
    two = tuple(2 if i == lay.mode(3, 0).index else 0 for i in range(12))
    assert norm_of_state(two, F) == -2
    basis = enumerate_sector(make_spec(2, 4), 2, 3)
    assert all(d != 0 for d in gram_diagonal(basis))


def test_grading_keys():
    basis = enumerate_sector(make_spec(2, 4), 1, 1)
    assert sorted(basis.grading("gl")) == sorted(tuple(int(a == b) for b in range(6)) for a in range(6))
    b2 = enumerate_sector(make_spec(2, 4), 2, 1)
    assert {k[-1] for k in b2.grading("osp")} == {1, -1}
    with pytest.raises(ValueError):
        basis.grading("sl2")
