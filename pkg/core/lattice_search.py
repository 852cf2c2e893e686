# core/lattice_search.py
"""
Bounded exact searches on Gram lattices.

Nothing here uses floating point for a decision: candidate vectors are
enumerated with numpy int64 only while the entries are small enough, every
hit is re-checked with exact Python integers, and positive definite
enumeration (Fincke-Pohst) runs over ``fractions.Fraction`` on sympy's exact
LDL factorization. Floats only steer the choice of basis in the majorant
LLL step; the basis change itself is unimodular and checked exactly.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
import sympy
from sympy.polys.matrices.exceptions import DMError

from core.lattice_core import (
    BasisChange,
    GramLattice,
    LatticeError,
    LatticeVector,
    SearchExhausted,
    change_basis,
    complete_to_basis,
    content,
    integer_matrix,
    is_even,
    norm,
    pair,
    pairings,
    signature,
    unit_vector,
)

logger = logging.getLogger(__name__)

_INT64_SAFE = 2 ** 28


@dataclass(frozen=True)
class SearchLimits:
    diagonalization_box: int = 6
    trigonal_search_box: int = 4
    max_search_vectors: int = 2_000_000


DEFAULT_LIMITS = SearchLimits()


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self, k: int):
        self.used += k
        if self.used > self.limit:
            raise SearchExhausted(f"search budget of {self.limit} candidate vectors exhausted")


# ========== Gram descent ==========

def gram_descent(L: GramLattice, max_rounds: int = 200) -> Tuple[GramLattice, BasisChange]:
    """
    Greedy moves e_j <- e_j + c e_i (c = +-1) accepted while the sum of
    absolute Gram entries strictly decreases.
    """
    n = L.rank
    g = [list(r) for r in L.gram]
    cols = [list(unit_vector(n, j)) for j in range(n)]

    def delta(i, j, c):
        d = 0
        for k in range(n):
            if k == j:
                continue
            d += 2 * (abs(g[j][k] + c * g[i][k]) - abs(g[j][k]))
        new_jj = g[j][j] + 2 * c * g[i][j] + g[i][i]
        return d + abs(new_jj) - abs(g[j][j])

    for _ in range(max_rounds):
        improved = False
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                for c in (1, -1):
                    if delta(i, j, c) < 0:
                        new_jj = g[j][j] + 2 * c * g[i][j] + g[i][i]
                        for k in range(n):
                            if k != j:
                                g[j][k] += c * g[i][k]
                                g[k][j] = g[j][k]
                        g[j][j] = new_jj
                        cols[j] = [a + c * b for a, b in zip(cols[j], cols[i])]
                        improved = True
        if not improved:
            break
    M = BasisChange.from_columns(cols)
    return GramLattice(g), M


# ========== Majorant reduction ==========

def _positive_vector(L: GramLattice) -> Optional[LatticeVector]:
    """Smallest positive norm among e_i and e_i +- e_j."""
    n = L.rank
    candidates = [unit_vector(n, i) for i in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        for s in (1, -1):
            x = [0] * n
            x[i], x[j] = 1, s
            candidates.append(tuple(x))
    positive = [(norm(L, x), x) for x in candidates if norm(L, x) > 0]
    return min(positive)[1] if positive else None


def lll_on_majorant(L: GramLattice, scale_bits: int = 40) -> Optional[BasisChange]:
    """
    LLL-reduce the basis against the positive definite majorant
    P = 2 (Gh)(Gh)^T - b(h, h) G of a signature (1, k) lattice, h a short
    positive vector. The Cholesky factor of P is rounded to integers and
    reduced by sympy; only the unimodular transform is kept, so rounding
    never reaches the Gram matrix. ``None`` when no majorant is available.
    """
    n = L.rank
    if n < 2:
        return None
    h = _positive_vector(L)
    if h is None:
        return None
    u = pairings(L, h)
    hh = norm(L, h)
    P = np.array(
        [[2 * u[i] * u[j] - hh * L.gram[i][j] for j in range(n)] for i in range(n)],
        dtype=float,
    )
    try:
        C = np.linalg.cholesky(P)
    except np.linalg.LinAlgError:
        logger.debug("🔍 majorant is numerically singular for h=%s", h)
        return None
    top = float(np.max(np.abs(C)))
    rows = [[int(round(v)) for v in row] for row in C * (2.0 ** scale_bits / top)]
    try:
        _, T = integer_matrix(rows).lll_transform()
        M = BasisChange.from_columns([[int(c) for c in row] for row in T.to_Matrix().tolist()])
    except (DMError, LatticeError) as exc:
        logger.debug("🔍 majorant LLL skipped: %s", exc)
        return None
    return M


def _gram_size(L: GramLattice) -> int:
    return sum(abs(v) for row in L.gram for v in row)


def reduce_lorentzian(L: GramLattice, rounds: int = 3) -> Tuple[GramLattice, BasisChange]:
    """
    Gram descent interleaved with majorant LLL for signature (1, k). A round
    is kept only when it shrinks the sum of absolute Gram entries.
    """
    reduced, M = gram_descent(L)
    for _ in range(rounds):
        step = lll_on_majorant(reduced)
        if step is None:
            break
        candidate, D = gram_descent(change_basis(reduced, step))
        if _gram_size(candidate) >= _gram_size(reduced):
            break
        reduced, M = candidate, M.then(step).then(D)
    return reduced, M


# ========== Shell search ==========

def vectors_of_norm(
    L: GramLattice,
    target: int,
    box: int,
    max_support: Optional[int] = None,
    budget: Optional[_Budget] = None,
) -> List[LatticeVector]:
    """
    All vectors with coordinates in [-box, box], at most ``max_support``
    nonzero coordinates and b(x, x) = target, one per +-pair, ordered by
    support size and then by max coordinate.
    """
    n = L.rank
    if n == 0:
        return []
    max_support = n if max_support is None else min(max_support, n)
    big = max(abs(v) for row in L.gram for v in row) if n else 0
    use_numpy = big * (box ** 2) * (n ** 2) < _INT64_SAFE
    values = [v for v in range(-box, box + 1) if v != 0]
    found: List[LatticeVector] = []
    for s in range(1, max_support + 1):
        for support in itertools.combinations(range(n), s):
            count = len(values) ** s
            if budget is not None:
                budget.spend(count)
            grid = np.array(list(itertools.product(values, repeat=s)), dtype=np.int64)
            # first coordinate positive: one representative per +-pair
            grid = grid[grid[:, 0] > 0]
            if use_numpy:
                sub = np.array([[L.gram[i][j] for j in support] for i in support], dtype=np.int64)
                norms = np.einsum("ki,ij,kj->k", grid, sub, grid)
            else:
                norms = [
                    sum(int(r[a]) * L.gram[support[a]][support[b]] * int(r[b]) for a in range(s) for b in range(s))
                    for r in grid
                ]
            hits = np.nonzero(np.asarray(norms) == target)[0]
            for h in hits:
                x = [0] * n
                for pos, idx in enumerate(support):
                    x[idx] = int(grid[h][pos])
                if norm(L, x) == target:
                    found.append(tuple(x))
    found.sort(key=lambda v: (sum(1 for c in v if c), max(abs(c) for c in v)))
    return found


# ========== Fincke-Pohst ==========

def _fraction(r) -> Fraction:
    return Fraction(int(r.p), int(r.q))


def _ldl(q: Sequence[Sequence[int]]):
    """Q(x) = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2 for positive definite Q."""
    n = len(q)
    try:
        lower, diag = sympy.Matrix(q).LDLdecomposition()
    except (ValueError, ZeroDivisionError) as exc:
        raise LatticeError("form is not positive definite") from exc
    if not all(diag[i, i].is_positive for i in range(n)):
        raise LatticeError("form is not positive definite")
    d = [_fraction(diag[i, i]) for i in range(n)]
    mu = [[_fraction(lower[j, i]) if j > i else Fraction(0) for j in range(n)] for i in range(n)]
    return d, mu


def short_vectors_definite(
    q: Sequence[Sequence[int]],
    target: int,
    box: Optional[int] = None,
    budget: Optional[_Budget] = None,
) -> Tuple[List[LatticeVector], bool]:
    """
    Exact Fincke-Pohst enumeration of all x with x^T q x = target in a
    positive definite form, one per +-pair. Returns (vectors, truncated)
    where ``truncated`` means some coordinate range was clipped to ``box``.
    """
    n = len(q)
    if n == 0:
        return [], False
    d, mu = _ldl(q)
    out: List[LatticeVector] = []
    truncated = False
    x = [0] * n

    def rec(i: int, remaining: Fraction):
        nonlocal truncated
        if budget is not None:
            budget.spend(1)
        c = sum((mu[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        r = remaining / d[i]
        s = math.isqrt(math.floor(r)) + 1
        lo = math.floor(-c - s)
        hi = math.ceil(-c + s)
        if box is not None and (lo < -box or hi > box):
            truncated = True
            lo, hi = max(lo, -box), min(hi, box)
        for v in range(lo, hi + 1):
            t = d[i] * (v + c) ** 2
            if t > remaining:
                continue
            x[i] = v
            if i == 0:
                if remaining == t:
                    vec = tuple(x)
                    if _first_nonzero_positive(vec):
                        out.append(vec)
            else:
                rec(i - 1, remaining - t)
        x[i] = 0

    rec(n - 1, Fraction(target))
    return out, truncated


def _first_nonzero_positive(v: Sequence[int]) -> bool:
    for c in v:
        if c:
            return c > 0
    return False


# ========== Orthogonal splitting ==========

def split_off(L: GramLattice, v: Sequence[int]) -> Tuple[BasisChange, GramLattice]:
    """
    For v of norm +-1, a basis (v, f_2', ..., f_n') with every f_k' orthogonal
    to v. Returns the basis change and the Gram matrix of the complement.
    """
    eps = norm(L, v)
    if eps not in (1, -1):
        raise LatticeError(f"can only split off vectors of norm +-1, got {eps}")
    M = complete_to_basis(v)
    cols = M.columns()
    new_cols = [tuple(v)]
    for f in cols[1:]:
        coef = eps * pair(L, f, v)
        new_cols.append(tuple(a - coef * b for a, b in zip(f, v)))
    B = BasisChange.from_columns(new_cols)
    G = change_basis(L, B)
    complement = GramLattice([[G.gram[i][j] for j in range(1, L.rank)] for i in range(1, L.rank)])
    return B, complement


def _embed(B: BasisChange, sub: BasisChange) -> BasisChange:
    """Apply ``sub`` to the last k coordinates of the basis ``B``."""
    n, k = B.size, sub.size
    cols = B.columns()
    head = cols[: n - k]
    tail = cols[n - k:]
    new_tail = []
    for j in range(k):
        col = sub.column(j)
        new_tail.append(tuple(sum(col[t] * tail[t][i] for t in range(k)) for i in range(n)))
    return BasisChange.from_columns(head + new_tail)


def diagonalize_definite(
    L: GramLattice,
    box: Optional[int] = None,
    budget: Optional[_Budget] = None,
) -> Tuple[Optional[BasisChange], bool]:
    """
    Orthonormal (up to sign) basis of a definite unimodular lattice by greedy
    splitting of norm +-1 vectors. Returns (basis or None, truncated).
    ``None`` with truncated False means the lattice is not diagonalizable.
    """
    n = L.rank
    if n == 0:
        return BasisChange.identity(0), False
    sig = signature(L)
    sign = 1 if sig.n_plus == n else -1
    if sig.n_plus != n and sig.n_minus != n:
        raise LatticeError("diagonalize_definite needs a definite lattice")
    q = [[sign * v for v in row] for row in L.gram]
    units, truncated = short_vectors_definite(q, 1, box=box, budget=budget)
    if not units:
        return None, truncated
    v = units[0]
    B, complement = split_off(L, v)
    rest, rest_truncated = diagonalize_definite(complement, box, budget)
    if rest is None:
        return None, truncated or rest_truncated
    return _embed(B, rest), truncated or rest_truncated


def diagonalize_odd_indefinite(L: GramLattice, limits: SearchLimits = DEFAULT_LIMITS) -> BasisChange:
    """
    Basis of an odd unimodular lattice of signature (1, k) in which the Gram
    matrix is diag(1, -1, ..., -1). Raises ``SearchExhausted`` when the box
    or budget gives out.
    """
    budget = _Budget(limits.max_search_vectors)
    sig = signature(L)
    if sig.n_plus != 1 or sig.n_zero != 0:
        raise LatticeError(f"expected signature (1, k), got {tuple(sig)}")
    reduced, D = reduce_lorentzian(L)
    basis = _diag_hyperbolic(reduced, limits, budget, depth=0)
    if basis is None:
        raise SearchExhausted("diagonalization not found")
    full = D.then(basis)
    # put the positive vector first
    G = change_basis(L, full)
    cols = full.columns()
    pos = [j for j in range(L.rank) if G.gram[j][j] == 1]
    neg = [j for j in range(L.rank) if G.gram[j][j] == -1]
    return BasisChange.from_columns([cols[j] for j in pos + neg])


def _diag_hyperbolic(
    L: GramLattice,
    limits: SearchLimits,
    budget: _Budget,
    depth: int,
    wide: bool = False,
) -> Optional[BasisChange]:
    """
    Capped pass: box ``diagonalization_box``, support 3 for norm +1 and 2 for
    norm -1. The wide pass drops the support cap and searches the unit box.
    """
    n = L.rank
    if n == 1:
        return BasisChange.identity(1) if L.gram[0][0] == 1 else None
    box = 1 if wide else limits.diagonalization_box
    # a norm +1 vector whose complement is <-1>^(n-1)
    for v in vectors_of_norm(L, 1, box, max_support=n if wide else min(n, 3), budget=budget):
        B, complement = split_off(L, v)
        rest, _ = diagonalize_definite(complement, budget=budget)
        if rest is not None:
            logger.debug("🔍 split off norm +1 vector %s at depth %d", v, depth)
            return _embed(B, rest)
    # otherwise peel a norm -1 vector with an odd complement and recurse
    for v in vectors_of_norm(L, -1, box, max_support=n if wide else min(n, 2), budget=budget):
        B, complement = split_off(L, v)
        if complement.rank > 1 and is_even(complement):
            continue
        reduced, D = reduce_lorentzian(complement)
        rest = _diag_hyperbolic(reduced, limits, budget, depth + 1)
        if rest is not None:
            return _embed(B, D.then(rest))
    if not wide and n > 3:
        logger.debug("🔍 widening support to %d at depth %d", n, depth)
        return _diag_hyperbolic(L, limits, budget, depth, wide=True)
    return None


# ========== Hyperbolic plane ==========

def isotropic_basis(L: GramLattice) -> BasisChange:
    """Basis (f1, f2) of an even unimodular rank-2 lattice with Gram [[0,1],[1,0]]."""
    if L.rank != 2 or not is_even(L):
        raise LatticeError("isotropic basis needs an even rank-2 lattice")
    (a, b), (_, c) = L.gram
    if a * c - b * b != -1:
        raise LatticeError("even rank-2 lattice is not unimodular")
    if a == 0:
        f1 = (1, 0)
        f2 = (-c, 2 * b)
    else:
        f1 = (-b + 1, a)
        f2 = (-b - 1, a)
    f1 = tuple(x // content(f1) for x in f1)
    f2 = tuple(x // content(f2) for x in f2)
    if pair(L, f1, f2) < 0:
        f2 = tuple(-x for x in f2)
    return BasisChange.from_columns([f1, f2])

