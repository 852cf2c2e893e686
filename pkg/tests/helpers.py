# tests/helpers.py
"""Strategies and builders shared by the test modules."""

from hypothesis import strategies as st

from core.lattice_core import BasisChange, change_basis, transform_vector
from core.riemann_roch import SurfaceData


def elementary_product(n, ops):
    """Columns of a product of elementary moves e_j <- e_j + c e_i and sign flips."""
    cols = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    for i, j, c in ops:
        if n < 2:
            break
        i, j = i % n, j % n
        if i == j:
            cols[j] = [-a for a in cols[j]]
        else:
            cols[j] = [a + c * b for a, b in zip(cols[j], cols[i])]
    return BasisChange.from_columns(cols)


def unimodular_changes(n, max_ops=6):
    ops = st.lists(
        st.tuples(st.integers(0, 9), st.integers(0, 9), st.integers(-2, 2)),
        max_size=max_ops,
    )
    return ops.map(lambda o: elementary_product(n, o))


def random_change(n, rng, moves, coeff):
    """``moves`` elementary moves with coefficients in [-coeff, coeff], drawn from ``rng``."""
    ops = [(rng.randrange(n), rng.randrange(n), rng.randint(-coeff, coeff)) for _ in range(moves)]
    return elementary_product(n, ops)


def scrambled_surface(S, rng, moves=12, coeff=2):
    """The same surface written in a random unimodular basis."""
    M = random_change(S.rank, rng, moves, coeff)
    return SurfaceData(change_basis(S.ns, M), transform_vector(M, S.K), S.chiO)
