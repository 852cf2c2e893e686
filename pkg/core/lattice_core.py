# core/lattice_core.py
"""
Exact integer linear algebra on Gram lattices.

Every lattice is an integer symmetric bilinear form given by its Gram matrix
in a distinguished basis. Entries are Python ints (arbitrary precision);
determinants and characteristic polynomials go through sympy's DomainMatrix
over ZZ, and numpy is only used with ``dtype=object``.
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Sequence, Tuple

import networkx as nx
import numpy as np
import sympy
from sympy import ZZ
from sympy.core.intfunc import igcdex
from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger(__name__)


LatticeVector = Tuple[int, ...]


# ========== Errors ==========

class LatticeError(Exception):
    """Base class for every typed failure raised by the nslat core."""


class DimensionMismatch(LatticeError):
    """Raised when a vector or matrix does not match the rank of its lattice."""


class NotUnimodularError(LatticeError):
    """Raised when an operation needs a unimodular lattice and gets another one."""


class NonIntegralSolution(NotUnimodularError):
    """Raised when an exact linear solve has no integral solution."""


class InvalidBasisChange(LatticeError):
    """Raised when a proposed basis change does not have determinant ±1."""


class SearchExhausted(LatticeError):
    """Raised when a bounded search runs out of box or budget without a decision."""


# ========== Types ==========

def as_vector(x: Iterable[int]) -> LatticeVector:
    """Normalize any integer sequence to a ``LatticeVector`` tuple."""
    out = []
    for c in x:
        if isinstance(c, bool) or int(c) != c:
            raise LatticeError(f"non-integer coordinate {c!r}")
        out.append(int(c))
    return tuple(out)


def _as_rows(rows) -> Tuple[Tuple[int, ...], ...]:
    return tuple(as_vector(r) for r in rows)


class Signature(NamedTuple):
    n_plus: int
    n_minus: int
    n_zero: int

    def as_list(self) -> List[int]:
        return [self.n_plus, self.n_minus, self.n_zero]


@dataclass(frozen=True)
class GramLattice:
    """Integer symmetric bilinear form on Z^n, stored as its Gram matrix."""

    gram: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = _as_rows(self.gram)
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise DimensionMismatch(f"Gram row {i} has length {len(row)}, expected {n}")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise LatticeError(f"Gram matrix is not symmetric at ({i}, {j})")
        object.__setattr__(self, "gram", rows)

    @classmethod
    def zero(cls) -> "GramLattice":
        return cls(())

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def matrix(self) -> np.ndarray:
        m = np.empty((self.rank, self.rank), dtype=object)
        for i, row in enumerate(self.gram):
            for j, v in enumerate(row):
                m[i, j] = v
        return m

    def entry(self, i: int, j: int) -> int:
        return self.gram[i][j]

    def diagonal(self) -> LatticeVector:
        return tuple(self.gram[i][i] for i in range(self.rank))

    def to_json(self) -> List[List[int]]:
        return [list(r) for r in self.gram]


@dataclass(frozen=True)
class BasisChange:
    """
    Unimodular change of basis. Columns are the new basis vectors written in
    old coordinates, so the Gram matrix transforms as ``M^T G M``.
    """

    matrix: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = _as_rows(self.matrix)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionMismatch("basis change must be a square matrix")
        det = _det(rows)
        if abs(det) != 1:
            raise InvalidBasisChange(f"basis change has determinant {det}")
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def identity(cls, n: int) -> "BasisChange":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> "BasisChange":
        n = len(columns)
        return cls(tuple(tuple(int(columns[j][i]) for j in range(n)) for i in range(n)))

    @property
    def size(self) -> int:
        return len(self.matrix)

    def columns(self) -> List[LatticeVector]:
        n = self.size
        return [tuple(self.matrix[i][j] for i in range(n)) for j in range(n)]

    def column(self, j: int) -> LatticeVector:
        return tuple(row[j] for row in self.matrix)

    def then(self, other: "BasisChange") -> "BasisChange":
        """Compose: first ``self``, then ``other`` expressed in the new basis."""
        return BasisChange(matmul(self.matrix, other.matrix))

    def inverse(self) -> "BasisChange":
        inv = sympy.Matrix(self.matrix).inv()
        return BasisChange(tuple(tuple(int(inv[i, j]) for j in range(self.size)) for i in range(self.size)))

    def to_json(self) -> List[List[int]]:
        return [list(r) for r in self.matrix]


# ========== Exact helpers ==========

def matmul(a, b) -> Tuple[Tuple[int, ...], ...]:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m))
        for i in range(n)
    )


def integer_matrix(rows: Sequence[Sequence[int]]) -> DomainMatrix:
    """Square integer rows as a sympy DomainMatrix over ZZ."""
    n = len(rows)
    return DomainMatrix([[ZZ(int(v)) for v in r] for r in rows], (n, n), ZZ)


def _det(rows: Sequence[Sequence[int]]) -> int:
    if not rows:
        return 1
    return int(integer_matrix(rows).det())


def egcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s, t, g = (int(v) for v in igcdex(a, b))
    if g < 0:
        g, s, t = -g, -s, -t
    return g, s, t


def _sign_changes(coeffs: Sequence[int]) -> int:
    signs = [c > 0 for c in coeffs if c != 0]
    return sum(1 for x, y in zip(signs, signs[1:]) if x != y)


# ========== Operations ==========

def _check_vector(L: GramLattice, x: Sequence[int], name: str = "vector") -> LatticeVector:
    v = as_vector(x)
    if len(v) != L.rank:
        raise DimensionMismatch(f"{name} has length {len(v)}, lattice has rank {L.rank}")
    return v


def pair(L: GramLattice, x: Sequence[int], y: Sequence[int]) -> int:
    """b(x, y) = x^T G y."""
    x = _check_vector(L, x, "x")
    y = _check_vector(L, y, "y")
    total = 0
    for i, xi in enumerate(x):
        if xi == 0:
            continue
        row = L.gram[i]
        total += xi * sum(row[j] * y[j] for j in range(L.rank) if y[j])
    return total


def norm(L: GramLattice, x: Sequence[int]) -> int:
    return pair(L, x, x)


def pairings(L: GramLattice, x: Sequence[int]) -> LatticeVector:
    """(b(x, e_1), ..., b(x, e_n))."""
    x = _check_vector(L, x)
    return tuple(sum(L.gram[i][j] * x[i] for i in range(L.rank)) for j in range(L.rank))


def determinant(L: GramLattice) -> int:
    return _det(L.gram)


def signature(L: GramLattice) -> Signature:
    """
    Sylvester signature from the characteristic polynomial.

    A symmetric matrix has only real eigenvalues, so Descartes' rule of signs
    counts the positive roots exactly; the negative ones are the positive
    roots of p(-x).
    """
    n = L.rank
    if n == 0:
        return Signature(0, 0, 0)
    coeffs = [int(c) for c in integer_matrix(L.gram).charpoly()]
    n_zero = 0
    while n_zero < n and coeffs[n - n_zero] == 0:
        n_zero += 1
    live = coeffs[: n + 1 - n_zero]
    n_plus = _sign_changes(live)
    # coefficient i belongs to x^(n - i)
    n_minus = _sign_changes([c if (n - i) % 2 == 0 else -c for i, c in enumerate(live)])
    return Signature(n_plus, n_minus, n_zero)


def is_unimodular(L: GramLattice) -> bool:
    return abs(determinant(L)) == 1


def is_even(L: GramLattice) -> bool:
    return all(L.gram[i][i] % 2 == 0 for i in range(L.rank))


def is_definite(L: GramLattice) -> bool:
    sig = signature(L)
    return sig.n_zero == 0 and (sig.n_plus == 0 or sig.n_minus == 0)


def content(x: Sequence[int]) -> int:
    g = 0
    for c in x:
        g = math.gcd(g, int(c))
    return g


def is_primitive(x: Sequence[int]) -> bool:
    return content(x) == 1


def solve_exact(L: GramLattice, t: Sequence[int]) -> LatticeVector:
    """Integral solution of G x = t; raises if the solution is not integral."""
    t = _check_vector(L, t, "t")
    if L.rank == 0:
        return ()
    if determinant(L) == 0:
        raise NotUnimodularError("Gram matrix is singular")
    sol = sympy.Matrix(L.gram).LUsolve(sympy.Matrix(t))
    out = []
    for v in sol:
        if not v.is_integer:
            raise NonIntegralSolution(f"no integral solution to G x = {list(t)}")
        out.append(int(v))
    return tuple(out)


def dual_vector(L: GramLattice, t: Sequence[int]) -> LatticeVector:
    """The x with b(x, e_i) = t_i; needs a unimodular lattice."""
    if not is_unimodular(L):
        raise NotUnimodularError(f"dual vector needs a unimodular lattice (det {determinant(L)})")
    return solve_exact(L, t)


def direct_sum(A: GramLattice, B: GramLattice) -> GramLattice:
    n, m = A.rank, B.rank
    rows = [list(r) + [0] * m for r in A.gram]
    rows += [[0] * n + list(r) for r in B.gram]
    return GramLattice(rows)


def change_basis(L: GramLattice, M: BasisChange) -> GramLattice:
    if M.size != L.rank:
        raise DimensionMismatch(f"basis change of size {M.size} on a lattice of rank {L.rank}")
    mt = tuple(zip(*M.matrix))
    return GramLattice(matmul(matmul(mt, L.gram), M.matrix))


def image(M: BasisChange, coords: Sequence[int]) -> LatticeVector:
    """Old coordinates of the vector whose new coordinates are ``coords``."""
    coords = as_vector(coords)
    return tuple(sum(M.matrix[i][j] * coords[j] for j in range(M.size)) for i in range(M.size))


def transform_vector(M: BasisChange, x: Sequence[int]) -> LatticeVector:
    """New coordinates of the vector whose old coordinates are ``x``."""
    return image(M.inverse(), x)


def gram_of(L: GramLattice, vectors: Sequence[Sequence[int]]) -> GramLattice:
    """Pairwise Gram matrix of a family of vectors."""
    vs = [_check_vector(L, v) for v in vectors]
    return GramLattice([[pair(L, u, v) for v in vs] for u in vs])


# ========== Constructors ==========

def diagonal(entries: Sequence[int]) -> GramLattice:
    entries = as_vector(entries)
    n = len(entries)
    return GramLattice([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])


def hyperbolic_plane() -> GramLattice:
    return GramLattice([[0, 1], [1, 0]])


# Dynkin diagram: chain 0-1-2-3-4-5-6 with node 7 attached to node 4
_E8_EDGES = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)]


def e8(sign: int = -1) -> GramLattice:
    """The E8 root lattice scaled by ``sign`` (negative definite by default)."""
    rows = [[2 * sign if i == j else 0 for j in range(8)] for i in range(8)]
    for i, j in _E8_EDGES:
        rows[i][j] = rows[j][i] = -sign
    return GramLattice(rows)


def unit_vector(n: int, i: int) -> LatticeVector:
    return tuple(1 if k == i else 0 for k in range(n))


def complete_to_basis(v: Sequence[int]) -> BasisChange:
    """
    Unimodular basis change whose first column is the primitive vector v.
    Built from 2x2 extended-Euclid steps acting on adjacent coordinates.
    """
    w = list(as_vector(v))
    n = len(w)
    if content(w) != 1:
        raise LatticeError(f"vector {list(v)} is not primitive")
    # columns of the inverse of the accumulated row operations
    cols = [list(unit_vector(n, j)) for j in range(n)]
    for i in range(n - 1, 0, -1):
        p, q = w[i - 1], w[i]
        if q == 0:
            continue
        g, s, t = egcd(p, q)
        pp, qq = p // g, q // g
        w[i - 1], w[i] = g, 0
        ci, cj = cols[i - 1], cols[i]
        cols[i - 1] = [pp * a + qq * b for a, b in zip(ci, cj)]
        cols[i] = [-t * a + s * b for a, b in zip(ci, cj)]
    if w[0] == -1:
        cols[0] = [-a for a in cols[0]]
    return BasisChange.from_columns(cols)


def orthogonal_components(L: GramLattice) -> List[List[int]]:
    """Index blocks of the graph whose edges are the nonzero off-diagonal entries."""
    g = nx.Graph()
    g.add_nodes_from(range(L.rank))
    for i in range(L.rank):
        for j in range(i + 1, L.rank):
            if L.gram[i][j] != 0:
                g.add_edge(i, j)
    return sorted(sorted(c) for c in nx.connected_components(g))


def restrict(L: GramLattice, indices: Sequence[int]) -> GramLattice:
    return GramLattice([[L.gram[i][j] for j in indices] for i in indices])


# ========== Surfaces bookkeeping ==========

def blowup(L: GramLattice, K: Sequence[int], d: int = 1) -> Tuple[GramLattice, LatticeVector]:
    """Blow up a closed point of degree d: N' = N + <-d>, K' = (K, 1)."""
    if d < 1:
        raise LatticeError(f"blow-up degree must be positive, got {d}")
    K = _check_vector(L, K, "K")
    return direct_sum(L, GramLattice([[-d]])), K + (1,)


def blowup_chain(L: GramLattice, K: Sequence[int], degrees: Sequence[int]) -> Tuple[GramLattice, LatticeVector]:
    K = as_vector(K)
    for d in degrees:
        L, K = blowup(L, K, d)
    return L, K


def noether_K2(b1: int, b2: int) -> int:
    """K^2 from Noether's formula with chi(O_S) = 1 and b0 = 1."""
    if b1 < 0 or b2 < 1:
        raise LatticeError(f"invalid Betti numbers b1={b1}, b2={b2}")
    return 10 + 2 * b1 - b2


def mod8_obstruction(rho: int, b1: int, b2: int) -> bool:
    """True iff rho = b2 - 2 b1 (mod 8); False rules out a full-length collection."""
    return (rho - (b2 - 2 * b1)) % 8 == 0
