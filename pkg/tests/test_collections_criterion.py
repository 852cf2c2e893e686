# tests/test_collections_criterion.py
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.characteristic_orbits import Case, NotCharacteristicError, standard_lattice
from core.collections_criterion import (
    LatticeObstruction,
    ProgressionError,
    WitnessUnavailable,
    construct_witness,
    criterion,
    necessary_conditions,
    picard_rank_one_analysis,
)
from core.lattice_core import LatticeError, change_basis, diagonal, transform_vector
from core.riemann_roch import SurfaceData, exceptionality_defects
from core.surface_models import blown_up_plane, hirzebruch
from tests.helpers import scrambled_surface, unimodular_changes


# ========== Necessary conditions ==========

def test_necessary_conditions():
    report = necessary_conditions(diagonal([2]), b1=0, b2=1)
    assert not report.unimodular and report.determinant == 2
    assert report.mod8_ok
    report = necessary_conditions(diagonal([1]), rho=1, b1=0, b2=2)
    assert report.unimodular and report.zero_cycle
    assert report.mod8_ok is False


# ========== Criterion ==========

def test_criterion_cases(plane, quadric, plane_blown_up_once, enriques_lattice):
    assert criterion(plane).case is Case.RANK1
    assert criterion(quadric).case is Case.HYPERBOLIC
    assert criterion(plane_blown_up_once).case is Case.ODD
    result = criterion(SurfaceData(enriques_lattice, (0,) * 10))
    assert not result.admits and result.case is Case.NONE


def test_criterion_wrong_K2():
    result = criterion(SurfaceData(diagonal([1]), (1,)))
    assert not result.admits
    assert "K^2 = 1" in result.reason


def test_criterion_obstructions():
    with pytest.raises(LatticeObstruction) as info:
        criterion(SurfaceData(diagonal([2]), (0,)))
    assert info.value.report.determinant == 2
    with pytest.raises(LatticeObstruction):
        criterion(SurfaceData(diagonal([-1]), (1,)))
    with pytest.raises(NotCharacteristicError):
        criterion(SurfaceData(diagonal([1]), (2,)))
    with pytest.raises(LatticeError):
        criterion(SurfaceData(diagonal([1]), (-3,), chiO=2))


@settings(deadline=None, max_examples=40)
@given(unimodular_changes(4))
def test_criterion_is_basis_invariant(M):
    S = blown_up_plane(3).surface
    moved = SurfaceData(change_basis(S.ns, M), transform_vector(M, S.K))
    assert criterion(moved).to_json() == criterion(S).to_json()


# ========== Witness ==========

def test_witness_on_the_plane(plane):
    w = construct_witness(plane)
    assert [E.c1 for E in w.classes] == [(0,), (1,), (2,)]
    assert w.trigonal.diag == (1, 1)
    assert w.certificate == [[1, 3, 6], [0, 1, 3], [0, 0, 1]]


def test_witness_on_the_quadric(quadric):
    w = construct_witness(quadric)
    assert len(w.classes) == 4
    assert w.trigonal.diag == (0, -2, 0)
    assert exceptionality_defects(quadric, w.classes) == []


@pytest.mark.parametrize("r", range(1, 10))
def test_odd_witness_shape(r):
    S = blown_up_plane(r).surface
    w = construct_witness(S)
    n = S.rank
    assert w.case is Case.ODD
    assert len(w.classes) == n + 2
    assert exceptionality_defects(S, w.classes) == []
    assert w.trigonal.diag == (-1,) + (-2,) * (n - 2) + (0, 1)


def test_witness_on_hirzebruch_surfaces():
    for k in range(0, 4):
        S = hirzebruch(k).surface
        w = construct_witness(S)
        assert exceptionality_defects(S, w.classes) == []


SURFACES = [blown_up_plane(r).surface for r in range(1, 10)] + [hirzebruch(k).surface for k in range(4)]


@settings(deadline=None, max_examples=60)
@given(st.sampled_from(SURFACES), st.randoms(use_true_random=False))
def test_witness_in_a_scrambled_basis(S, rng):
    moved = scrambled_surface(S, rng)
    w = construct_witness(moved)
    assert len(w.classes) == moved.rank + 2
    assert exceptionality_defects(moved, w.classes) == []
    if w.case is Case.ODD:
        assert w.trigonal.diag == (-1,) + (-2,) * (moved.rank - 2) + (0, 1)


@pytest.mark.parametrize("r", [3, 6, pytest.param(9, marks=pytest.mark.slow)])
@pytest.mark.parametrize("seed", range(3))
def test_witness_after_heavy_scrambling(r, seed):
    S = scrambled_surface(blown_up_plane(r).surface, random.Random(100 * r + seed), moves=40, coeff=3)
    w = construct_witness(S)
    assert w.case is Case.ODD
    assert exceptionality_defects(S, w.classes) == []


def test_witness_unavailable(enriques_lattice):
    with pytest.raises(WitnessUnavailable):
        construct_witness(SurfaceData(enriques_lattice, (0,) * 10))
    L = standard_lattice(11)
    with pytest.raises(WitnessUnavailable):
        construct_witness(SurfaceData(L, (-3,) + (1,) * 10))


# ========== Picard rank one ==========

@pytest.mark.parametrize(
    "n, a, expected",
    [
        (2, (0, 1, 2), {"progression": [0, 1], "degHn": 1, "c1_coeff": 3}),
        (1, (0, 1), {"progression": [0, 1], "degHn": 1, "c1_coeff": 2}),
        (3, (4, 5, 6, 7), {"progression": [4, 1], "degHn": 1, "c1_coeff": 4}),
    ],
)
def test_picard_rank_one(n, a, expected):
    assert picard_rank_one_analysis(n, a).to_json() == expected


def test_picard_rank_one_step_two():
    with pytest.raises(ProgressionError) as info:
        picard_rank_one_analysis(3, (5, 7, 9, 11))
    assert info.value.k == 2
    assert info.value.degree == Fraction(1, 8)


@pytest.mark.parametrize("n, a", [(2, (0, 0, 1)), (2, (0, 1, 3)), (2, (0, 1)), (0, (0,))])
def test_picard_rank_one_rejects(n, a):
    with pytest.raises(ProgressionError):
        picard_rank_one_analysis(n, a)
