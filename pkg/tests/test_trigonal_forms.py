# tests/test_trigonal_forms.py
import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.characteristic_orbits import is_characteristic
from core.lattice_core import (
    BasisChange,
    GramLattice,
    NotUnimodularError,
    change_basis,
    determinant,
    diagonal,
    direct_sum,
    e8,
    hyperbolic_plane,
    is_even,
    norm,
    signature,
)
from core.trigonal_forms import (
    MAX_REDUCTION_RANK,
    Canonical,
    NotSpecialError,
    SignatureOutOfScope,
    SpecialPair,
    TrigonalForm,
    TrigonalFormError,
    TrigonalVerdict,
    check_trigonal_family,
    corner_omega,
    exists_small_entry,
    expand,
    extend_to_corner_family,
    is_trigonal_lattice,
    move_insert,
    move_slide,
    move_split,
    random_special_pair,
    reduce_even,
    reduce_special,
    special_norm,
    special_pair_from_trigonal,
    trig_determinants,
    trig_direct_sum,
)


# ========== Forms ==========

def test_expand():
    assert expand([2, 0, -3]).gram == ((2, 1, 0), (1, 0, 1), (0, 1, -3))
    assert TrigonalForm((1, 1)).to_json() == {"trig": [1, 1]}


@pytest.mark.parametrize(
    "a, expected",
    [
        ([0, 0], [1, 0, -1]),
        ([2, 0, -3], [1, 2, -1, 1]),
        ([-1, -1, -1], [1, -1, 0, 1]),
        ([1, 1], [1, 1, 0]),
    ],
)
def test_trig_determinants(a, expected):
    assert trig_determinants(a) == expected


def test_special_pair_from_trigonal():
    S = special_pair_from_trigonal([1])
    assert S.omega == (-3,)
    S = special_pair_from_trigonal([0, 0])
    assert S.omega == (-2, -2)
    S = special_pair_from_trigonal([1, 0])
    assert S.omega == (-2, -1)


def test_special_pair_needs_unimodular():
    with pytest.raises(NotUnimodularError):
        special_pair_from_trigonal([2, 2])


def test_special_pair_checks_omega():
    with pytest.raises(NotSpecialError):
        SpecialPair(expand([1]), (3,), BasisChange.identity(1))


# ========== Families ==========

def test_trigonal_family_report():
    report = check_trigonal_family(diagonal([1]), [(1,), (1,)])
    assert report.trigonal and report.unimodular and report.basis
    assert report.diag == [1, 1]
    assert not check_trigonal_family(diagonal([1]), [(1,), (2,)]).trigonal


@pytest.mark.parametrize(
    "a, omega",
    [([1], (-3,)), ([0, 0], (-2, -2)), ([-1], (1,)), ([1, 0], (-2, -1))],
)
def test_corner_family_sums_to_minus_omega(a, omega):
    S = special_pair_from_trigonal(a)
    family = extend_to_corner_family(S.lattice, S.basis.columns())
    assert len(family) == len(a) + 2
    assert corner_omega(family) == omega


# ========== Moves ==========

def test_slide_transfers_through_zero():
    S = special_pair_from_trigonal([2, 0, -3])
    out = move_slide(S, 2, 1)
    assert out.trigonal().diag == (0, 0, -1)
    assert out.omega == S.omega


def test_slide_at_end_and_bad_entry():
    S = special_pair_from_trigonal([0, 0])
    assert move_slide(S, 1, 1).trigonal().diag == (0, 2)
    with pytest.raises(TrigonalFormError):
        move_slide(special_pair_from_trigonal([2, 0, -3]), 1, 1)
    with pytest.raises(TrigonalFormError):
        move_slide(S, 2, 1)


def test_split_and_insert_are_inverse():
    S = special_pair_from_trigonal([0, -1, -1])
    minus_one, rest = move_split(S, 2)
    assert minus_one.current_gram() == diagonal([-1])
    assert rest.trigonal().diag == (1, 0)

    joined = trig_direct_sum([rest, minus_one])
    assert move_insert(joined, 2).trigonal().diag == (0, -1, -1)
    assert move_insert(joined, 1).trigonal().diag == (-1, 0, 0)
    assert move_insert(joined, 3).trigonal().diag == (1, -1, -1)


def test_split_at_end():
    S = special_pair_from_trigonal([0, 0, -1])
    _, rest = move_split(S, 3)
    assert rest.trigonal().diag == (0, 1)


def test_split_needs_minus_one():
    with pytest.raises(TrigonalFormError):
        move_split(special_pair_from_trigonal([0, 0]), 1)


def test_insert_needs_orthogonal_minus_one():
    S = special_pair_from_trigonal([1, 0])
    with pytest.raises(TrigonalFormError):
        move_insert(S, 1)


# ========== Reductions ==========

@pytest.mark.parametrize("a", [[0, 0], [0, 0, 0, 0], [2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 0, 0, 0, 0]])
def test_reduce_even(a):
    S = special_pair_from_trigonal(a)
    result = reduce_even(S)
    assert result.m == len(a) // 2
    U_m = hyperbolic_plane()
    for _ in range(result.m - 1):
        U_m = direct_sum(U_m, hyperbolic_plane())
    assert change_basis(S.lattice, result.basis) == U_m
    assert change_basis(S.lattice, result.trigonal_basis) == expand([0] * len(a))


def test_reduce_even_rejects_odd():
    with pytest.raises(TrigonalFormError):
        reduce_even(special_pair_from_trigonal([1, 0]))


def test_reduce_special_small_cases():
    r = reduce_special(special_pair_from_trigonal([1]))
    assert r.canonical is Canonical.DIAG and r.omega == (-3,)
    r = reduce_special(special_pair_from_trigonal([0, 0]))
    assert r.canonical is Canonical.HYPERBOLIC and r.omega == (-2, -2)
    r = reduce_special(special_pair_from_trigonal([1, 0]))
    assert r.canonical is Canonical.DIAG and r.omega == (-3, 1)
    assert [step["move"] for step in r.trace] == ["reverse", "slide", "split"]


def test_reduce_special_slide_targets():
    r = reduce_special(special_pair_from_trigonal([0, 3]))
    slides = [step for step in r.trace if step["move"] == "slide"]
    assert slides == [{"move": "slide", "position": 1, "x": -2, "result": [0, -1]}]
    assert r.canonical is Canonical.DIAG and r.omega == (-3, 1)

    # the nearest odd entry is on the left, so the block is reversed first
    r = reduce_special(special_pair_from_trigonal([-3, 0, 2]))
    assert [step["move"] for step in r.trace][:2] == ["reverse", "slide"]
    assert r.trace[1] == {"move": "slide", "position": 2, "x": 1, "result": [0, 0, -1]}


def test_reduce_special_rejects_signature():
    with pytest.raises(SignatureOutOfScope):
        reduce_special(special_pair_from_trigonal([2, 1]))


def test_reduce_special_rank_cap():
    S = special_pair_from_trigonal([-1] + [-2] * MAX_REDUCTION_RANK)
    with pytest.raises(SignatureOutOfScope):
        reduce_special(S)


@settings(deadline=None, max_examples=150)
@given(
    st.sampled_from([(1,), (-1,), (0, 0)]),
    st.integers(0, 10),
    st.integers(0, 2 ** 32),
    st.integers(1, 4),
)
def test_reduce_special_random_pairs(core, inserts, seed, slides):
    S = random_special_pair(core, inserts, random.Random(seed), slides=slides, max_shift=3)
    n = S.rank
    sig = signature(S.lattice)
    assert norm(S.lattice, S.omega) == special_norm(sig.n_plus, sig.n_minus)

    result = reduce_special(S)
    for step in result.trace:
        if step["move"] == "slide":
            assert step["result"][step["position"]] in (0, -1)
    G = change_basis(S.lattice, result.basis)
    if core == (-1,):
        assert result.canonical is Canonical.NEGATIVE
        assert G == diagonal((-1,) * n)
        assert result.omega == (1,) * n
    elif core == (0, 0) and inserts == 0:
        assert result.canonical is Canonical.HYPERBOLIC
        assert result.omega == (-2, -2)
    else:
        assert result.canonical is Canonical.DIAG
        assert G == diagonal((1,) + (-1,) * (n - 1))
        assert result.omega == (-3,) + (1,) * (n - 1)


@settings(deadline=None, max_examples=80)
@given(
    st.sampled_from([(1,), (-1,), (0, 0), (1, 2), (1, 3, 1)]),
    st.integers(0, 8),
    st.integers(0, 2 ** 32),
)
def test_special_norm_on_random_pairs(core, inserts, seed):
    S = random_special_pair(core, inserts, random.Random(seed), slides=3)
    S.trigonal()
    sig = signature(S.lattice)
    assert sig.n_plus == signature(expand(core)).n_plus
    assert sig.n_minus == S.rank - sig.n_plus
    assert is_characteristic(S.lattice, S.omega)
    assert norm(S.lattice, S.omega) == special_norm(sig.n_plus, sig.n_minus)


def test_special_norm():
    assert special_norm(1, 0) == 9
    assert special_norm(1, 1) == 8
    assert special_norm(0, 5) == -5
    assert special_norm(1, 9) == 0


# ========== Recognition ==========

def test_exists_small_entry():
    assert exists_small_entry([2, 0, -3]) == 2
    assert exists_small_entry([2, 0, -3], lorentzian=True) == 2
    assert exists_small_entry([-1]) == 1
    with pytest.raises(TrigonalFormError):
        exists_small_entry([2, 2])
    with pytest.raises(SignatureOutOfScope):
        exists_small_entry([2, 1], lorentzian=True)


@pytest.mark.parametrize(
    "n",
    [1, 2, 3, 4, pytest.param(5, marks=pytest.mark.slow), pytest.param(6, marks=pytest.mark.slow)],
)
def test_determinants_and_small_entries_in_a_box(n):
    """Every trigonal form with entries in [-4, 4]."""
    for a in itertools.product(range(-4, 5), repeat=n):
        d = trig_determinants(a)[-1]
        assert d == determinant(expand(a)), a
        if abs(d) != 1:
            continue
        assert abs(a[exists_small_entry(a) - 1]) < 2, a
        if n >= 2 and tuple(signature(expand(a))) == (1, n - 1, 0):
            assert a[exists_small_entry(a, lorentzian=True) - 1] in (-1, 0), a


@pytest.mark.parametrize(
    "L, verdict",
    [
        (diagonal([1, -1]), TrigonalVerdict.YES),
        (hyperbolic_plane(), TrigonalVerdict.YES),
        (direct_sum(hyperbolic_plane(), hyperbolic_plane()), TrigonalVerdict.YES),
        (direct_sum(hyperbolic_plane(), e8(-1)), TrigonalVerdict.NO),
        (diagonal([-1, -1, -1]), TrigonalVerdict.YES),
        (GramLattice([[2, 1], [1, 1]]), TrigonalVerdict.YES),
    ],
)
def test_is_trigonal_lattice(L, verdict):
    assert is_trigonal_lattice(L) is verdict


def test_e8_is_not_known_trigonal():
    assert is_trigonal_lattice(e8(-1)) in (TrigonalVerdict.NO, TrigonalVerdict.UNKNOWN)


def test_random_special_pair_is_trigonal():
    S = random_special_pair((0, 0), 3, random.Random(7))
    assert len(S.trigonal().diag) == 5
    assert not is_even(S.current_gram())
