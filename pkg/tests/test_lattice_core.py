# tests/test_lattice_core.py
import math

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from core.lattice_core import (
    BasisChange,
    DimensionMismatch,
    GramLattice,
    InvalidBasisChange,
    LatticeError,
    NonIntegralSolution,
    NotUnimodularError,
    as_vector,
    blowup,
    blowup_chain,
    change_basis,
    complete_to_basis,
    content,
    determinant,
    diagonal,
    direct_sum,
    dual_vector,
    e8,
    egcd,
    gram_of,
    hyperbolic_plane,
    image,
    is_definite,
    is_even,
    is_unimodular,
    mod8_obstruction,
    noether_K2,
    norm,
    orthogonal_components,
    pair,
    pairings,
    signature,
    solve_exact,
    transform_vector,
)
from tests.helpers import unimodular_changes


# ========== Construction ==========

def test_gram_must_be_symmetric():
    with pytest.raises(LatticeError):
        GramLattice([[1, 2], [0, 1]])


def test_gram_must_be_square():
    with pytest.raises(DimensionMismatch):
        GramLattice([[1, 0], [0]])


@pytest.mark.parametrize("bad", [[True, 0], [1.5, 0]])
def test_as_vector_rejects_non_integers(bad):
    with pytest.raises(LatticeError):
        as_vector(bad)


def test_basis_change_needs_determinant_one():
    with pytest.raises(InvalidBasisChange):
        BasisChange([[2, 0], [0, 1]])


def test_basis_change_inverse_and_compose():
    M = BasisChange.from_columns([(1, 1), (0, 1)])
    assert M.then(M.inverse()) == BasisChange.identity(2)
    assert M.column(0) == (1, 1)


# ========== Invariants ==========

def test_e8_invariants():
    L = e8(-1)
    assert determinant(L) == 1
    assert tuple(signature(L)) == (0, 8, 0)
    assert is_even(L) and is_definite(L)


def test_enriques_lattice_invariants(enriques_lattice):
    L = enriques_lattice
    assert is_unimodular(L)
    assert is_even(L)
    assert tuple(signature(L)) == (1, 9, 0)
    assert not is_definite(L)


@pytest.mark.parametrize(
    "gram, expected",
    [
        ([[0, 1], [1, 0]], (1, 1, 0)),
        ([[0, 0], [0, 0]], (0, 0, 2)),
        ([[1, 0, 0], [0, -1, 0], [0, 0, -1]], (1, 2, 0)),
        ([[2, 1], [1, 1]], (2, 0, 0)),
        ([[1, 0, 0], [0, 0, 0], [0, 0, -1]], (1, 1, 1)),
        ([[1, 1], [1, 1]], (1, 0, 1)),
        ([[-2, 1, 0], [1, -2, 1], [0, 1, -2]], (0, 3, 0)),
        ([], (0, 0, 0)),
    ],
)
def test_signature(gram, expected):
    assert tuple(signature(GramLattice(gram))) == expected


@settings(deadline=None, max_examples=80)
@given(st.integers(1, 5), st.lists(st.integers(-4, 4), min_size=15, max_size=15))
def test_signature_matches_eigenvalues(n, entries):
    it = iter(entries)
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = next(it)
    # nonzero eigenvalues of these matrices are far above 1e-9 in size
    eig = np.linalg.eigvalsh(np.array(rows, dtype=float))
    sig = signature(GramLattice(rows))
    assert sig.n_zero == n - sympy.Matrix(rows).rank()
    assert sig.n_plus == int(np.sum(eig > 1e-9))
    assert sig.n_minus == int(np.sum(eig < -1e-9))


@settings(deadline=None, max_examples=60)
@given(st.lists(st.integers(-4, 4), min_size=6, max_size=6))
def test_determinant_matches_sympy(entries):
    a, b, c, d, e, f = entries
    rows = [[a, b, c], [b, d, e], [c, e, f]]
    assert determinant(GramLattice(rows)) == sympy.Matrix(rows).det()


@settings(deadline=None, max_examples=40)
@given(unimodular_changes(3))
def test_change_basis_preserves_invariants(M):
    L = GramLattice([[1, 1, 0], [1, 0, 1], [0, 1, -3]])
    L2 = change_basis(L, M)
    assert determinant(L2) == determinant(L)
    assert signature(L2) == signature(L)
    x = (1, -2, 3)
    assert norm(L2, transform_vector(M, x)) == norm(L, x)
    assert image(M, transform_vector(M, x)) == x


def test_pair_and_pairings():
    L = GramLattice([[0, 1], [1, -2]])
    assert pair(L, (1, 0), (0, 1)) == 1
    assert norm(L, (1, 1)) == 0
    assert pairings(L, (1, 1)) == (1, -1)
    with pytest.raises(DimensionMismatch):
        pair(L, (1,), (0, 1))


def test_gram_of_family():
    L = diagonal([1, -1])
    assert gram_of(L, [(1, 0), (1, 1)]).gram == ((1, 1), (1, 0))


# ========== Exact solving ==========

def test_egcd():
    g, s, t = egcd(240, 46)
    assert g == 2 and 240 * s + 46 * t == 2
    assert egcd(-4, 6)[0] == 2
    for a, b in [(0, -5), (-7, 3), (12, -18), (0, 0)]:
        g, s, t = egcd(a, b)
        assert g == math.gcd(a, b)
        assert s * a + t * b == g


def test_solve_exact_rejects_fractions():
    with pytest.raises(NonIntegralSolution):
        solve_exact(diagonal([2]), (1,))
    assert solve_exact(diagonal([2]), (4,)) == (2,)


def test_dual_vector_needs_unimodular():
    with pytest.raises(NotUnimodularError):
        dual_vector(diagonal([2, 1]), (1, 0))
    assert dual_vector(hyperbolic_plane(), (1, 0)) == (0, 1)


@pytest.mark.parametrize("v", [(2, 3), (3, 5, 7), (1, 0, 0), (0, -1), (6, 10, 15)])
def test_complete_to_basis(v):
    M = complete_to_basis(v)
    assert M.column(0) == v


def test_complete_to_basis_needs_primitive():
    assert content((4, 6)) == 2
    with pytest.raises(LatticeError):
        complete_to_basis((4, 6))


# ========== Constructors ==========

def test_direct_sum_and_components():
    L = direct_sum(diagonal([1, -1]), hyperbolic_plane())
    assert L.rank == 4
    assert orthogonal_components(L) == [[0], [1], [2, 3]]


def test_blowup_adds_minus_d():
    L, K = blowup(diagonal([1]), (-3,))
    assert L == diagonal([1, -1]) and K == (-3, 1)
    L, K = blowup_chain(diagonal([1]), (-3,), [1, 2])
    assert L.diagonal() == (1, -1, -2) and K == (-3, 1, 1)
    with pytest.raises(LatticeError):
        blowup(diagonal([1]), (-3,), 0)


def test_noether_and_mod8():
    assert noether_K2(0, 1) == 9
    assert noether_K2(0, 10) == 0
    assert mod8_obstruction(1, 0, 1)
    assert not mod8_obstruction(1, 0, 2)
    with pytest.raises(LatticeError):
        noether_K2(-1, 1)
