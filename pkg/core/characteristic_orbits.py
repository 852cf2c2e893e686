# core/characteristic_orbits.py
"""
Characteristic vectors, reflections and the orbit normal form of vectors in
diag(1, -1, ..., -1), plus the decision of when a characteristic vector of a
Lorentzian unimodular lattice comes from a trigonal special basis.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from sympy import GF
from sympy.polys.matrices import DomainMatrix

from core.lattice_core import (
    BasisChange,
    DimensionMismatch,
    GramLattice,
    LatticeError,
    LatticeVector,
    NotUnimodularError,
    as_vector,
    change_basis,
    content,
    determinant,
    diagonal,
    is_even,
    is_unimodular,
    norm,
    pair,
    pairings,
    signature,
    transform_vector,
)
from core.lattice_search import (
    DEFAULT_LIMITS,
    SearchLimits,
    diagonalize_odd_indefinite,
    isotropic_basis,
)
from core.trigonal_forms import SignatureOutOfScope

logger = logging.getLogger(__name__)


class NotCharacteristicError(LatticeError):
    """Raised when a vector fails b(w, x) = b(x, x) mod 2."""


class NonIntegralReflection(LatticeError):
    """Raised when a reflection would leave the lattice."""


class NegativeNormError(LatticeError):
    """Raised when the orbit normal form is asked for a vector of negative norm."""


class NonStandardLattice(LatticeError):
    """Raised when a Gram matrix was expected to be exactly diag(1, -1, ..., -1)."""


class Case(Enum):
    RANK1 = "RANK1"
    HYPERBOLIC = "HYPERBOLIC"
    ODD = "ODD"
    NONE = "NONE"


# ========== 1. Characteristic vectors ==========

@dataclass(frozen=True)
class CharacteristicVector:
    vector: LatticeVector
    ambient: GramLattice

    def __post_init__(self):
        object.__setattr__(self, "vector", as_vector(self.vector))
        if not is_characteristic(self.ambient, self.vector):
            raise NotCharacteristicError(f"{list(self.vector)} is not characteristic")


def is_characteristic(L: GramLattice, w: Sequence[int]) -> bool:
    p = pairings(L, w)
    return all((p[i] - L.gram[i][i]) % 2 == 0 for i in range(L.rank))


def find_characteristic(L: GramLattice) -> LatticeVector:
    """Solve G w = diag(G) over GF(2) and lift to 0/1 coordinates."""
    n = L.rank
    if n == 0:
        return ()
    F2 = GF(2)
    rows = [[F2(L.gram[i][j] % 2) for j in range(n)] + [F2(L.gram[i][i] % 2)] for i in range(n)]
    reduced, pivots = DomainMatrix(rows, (n, n + 1), F2).rref()
    if tuple(pivots) != tuple(range(n)):
        raise NotUnimodularError("Gram matrix is singular mod 2; no characteristic vector found")
    entries = reduced.to_Matrix().tolist()
    return tuple(int(entries[i][n]) % 2 for i in range(n))


def van_der_blij_check(L: GramLattice, w: Sequence[int]) -> bool:
    """b(w, w) = n_plus - n_minus (mod 8)."""
    if not is_unimodular(L):
        raise NotUnimodularError(f"lattice has determinant {determinant(L)}")
    if not is_characteristic(L, w):
        raise NotCharacteristicError(f"{list(w)} is not characteristic")
    sig = signature(L)
    return (norm(L, w) - (sig.n_plus - sig.n_minus)) % 8 == 0


# ========== 2. Reflections ==========

def reflect(L: GramLattice, v: Sequence[int], x: Sequence[int]) -> LatticeVector:
    """x - 2 b(x, v) / b(v, v) v."""
    vv = norm(L, v)
    num = 2 * pair(L, x, v)
    if vv == 0 or num % vv:
        raise NonIntegralReflection(f"reflection in {list(v)} (norm {vv}) is not integral on {list(x)}")
    k = num // vv
    return tuple(a - k * b for a, b in zip(x, v))


# ========== 3. Orbit normal form ==========

@dataclass
class NormalFormResult:
    """
    ``vector`` is the normal form, ``isometry_inverse`` maps normal-form
    coordinates back: x = isometry_inverse . vector.
    """

    vector: LatticeVector
    transcript: List[dict] = field(default_factory=list)
    isometry_inverse: Optional[BasisChange] = None


def _is_standard(L: GramLattice) -> bool:
    n = L.rank
    return n >= 1 and all(
        L.gram[i][j] == ((1 if i == 0 else -1) if i == j else 0) for i in range(n) for j in range(n)
    )


def normalize_by_reflections(L: GramLattice, x: Sequence[int]) -> NormalFormResult:
    """
    Bring x in diag(1, -1, ..., -1) to 0 <= x_n <= ... <= x_2, x_2 + x_3 + x_4 <= x_1
    by sign changes, sorting of x_2..x_n and reflections in e_1 + e_2 + e_3 + e_4
    (e_1 + e_2 + e_3 in rank 3). Each reflection lowers x_1.
    """
    if not _is_standard(L):
        raise NonStandardLattice(f"expected diag(1, -1, ..., -1), got {L.to_json()}")
    x = list(as_vector(x))
    n = L.rank
    if len(x) != n:
        raise DimensionMismatch(f"vector of length {len(x)} in rank {n}")
    if norm(L, x) < 0:
        raise NegativeNormError(f"{x} has norm {norm(L, x)}")
    start_norm = norm(L, x)
    # columns of the inverse isometry
    inv_cols = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    transcript: List[dict] = []
    k = min(n, 4)
    v = [1] * k + [0] * (n - k)

    while True:
        flips = [i for i in range(n) if x[i] < 0]
        if flips:
            for i in flips:
                x[i] = -x[i]
                inv_cols[i] = [-a for a in inv_cols[i]]
            transcript.append({"move": "sign", "indices": [i + 1 for i in flips], "vector": list(x)})
        order = [0] + sorted(range(1, n), key=lambda i: -x[i])
        if order != list(range(n)):
            x = [x[i] for i in order]
            inv_cols = [inv_cols[i] for i in order]
            transcript.append({"move": "sort", "vector": list(x)})
        if n < 3 or sum(x[1:k]) <= x[0]:
            break
        before = x[0]
        # b(v, v) is -2 (or -1 in rank 3), so 2 b(e_j, v) / b(v, v) is an integer
        coef = 2 * pair(L, x, v) // norm(L, v)
        x = [a - coef * b for a, b in zip(x, v)]
        gv = pairings(L, v)
        w = [sum(v[l] * inv_cols[l][i] for l in range(n)) for i in range(n)]
        inv_cols = [
            [inv_cols[j][i] - (2 * gv[j] // norm(L, v)) * w[i] for i in range(n)]
            for j in range(n)
        ]
        transcript.append({"move": "reflect", "v": list(v), "vector": list(x)})
        if abs(x[0]) >= before:
            raise LatticeError(f"reflection did not lower the first coordinate ({before} -> {x[0]})")

    if norm(L, x) != start_norm:
        raise LatticeError("normal form changed the norm")
    logger.debug("🔍 normal form %s after %d moves", x, len(transcript))
    return NormalFormResult(tuple(x), transcript, BasisChange.from_columns([tuple(c) for c in inv_cols]))


def canonical_characteristic(n: int) -> LatticeVector:
    """(3, 1, ..., 1) in diag(1, -1, ..., -1); its norm is 10 - n."""
    if n < 1:
        raise LatticeError(f"rank must be positive, got {n}")
    return (3,) + (1,) * (n - 1)


# ========== 4. Equivalence ==========

@dataclass
class EquivalenceResult:
    holds: bool
    case: Case
    reason: str = ""
    witness_basis: Optional[BasisChange] = None
    transcript: List[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "case": self.case.value,
            "reason": self.reason,
            "basis": self.witness_basis.to_json() if self.witness_basis else None,
            "transcript": self.transcript,
        }


def characteristic_case(L: GramLattice, w: Sequence[int]) -> Tuple[Case, str]:
    """Which of the three shapes (L, w) has, or NONE with the failing condition."""
    n = L.rank
    if not is_unimodular(L):
        return Case.NONE, f"lattice is not unimodular (det {determinant(L)})"
    if not is_characteristic(L, w):
        return Case.NONE, "omega is not characteristic"
    if norm(L, w) != 10 - n:
        return Case.NONE, f"omega has norm {norm(L, w)}, expected {10 - n}"
    c = content(w)
    if n == 1:
        return (Case.RANK1, "") if c == 3 else (Case.NONE, f"rank 1 needs content 3, got {c}")
    if is_even(L):
        if n == 2 and c == 2:
            return Case.HYPERBOLIC, ""
        return Case.NONE, f"even lattice of rank {n} with content {c}"
    if c == 1:
        return Case.ODD, ""
    return Case.NONE, f"odd lattice needs a primitive omega, content is {c}"


def special_defects(L: GramLattice, w: Sequence[int], basis: BasisChange) -> List[int]:
    return [
        i + 1
        for i, e in enumerate(basis.columns())
        if pair(L, w, e) != -norm(L, e) - 2
    ]


def main_equivalence(
    L: GramLattice,
    w: Sequence[int],
    limits: SearchLimits = DEFAULT_LIMITS,
) -> EquivalenceResult:
    """
    Decide whether w is characteristic of norm 10 - n with the right content,
    and for n <= 10 build a basis in which w is special and the Gram matrix is
    <1>, [0, 0] or diag(1, -1, ..., -1).
    """
    w = as_vector(w)
    n = L.rank
    if len(w) != n:
        raise DimensionMismatch(f"omega of length {len(w)} in rank {n}")
    sig = signature(L)
    if n == 0 or tuple(sig) != (1, n - 1, 0):
        raise SignatureOutOfScope(f"signature {tuple(sig[:2])} is not (1, {n - 1})")
    case, reason = characteristic_case(L, w)
    if case is Case.NONE:
        logger.info("❌ condition fails: %s", reason)
        return EquivalenceResult(False, case, reason)

    transcript: List[dict] = []
    if case is Case.RANK1:
        basis = BasisChange.from_columns([(-1,) if w[0] * L.gram[0][0] > 0 else (1,)])
    elif case is Case.HYPERBOLIC:
        basis = isotropic_basis(L)
        if transform_vector(basis, w) == (2, 2):
            basis = BasisChange.from_columns([tuple(-a for a in c) for c in basis.columns()])
    elif n > 10:
        logger.info("✓ condition holds; no witness for rank %d", n)
        return EquivalenceResult(True, case, "rank above 10: decision only")
    else:
        P = diagonalize_odd_indefinite(L, limits)
        coords = transform_vector(P, w)
        result = normalize_by_reflections(change_basis(L, P), coords)
        transcript = result.transcript
        if result.vector != canonical_characteristic(n):
            raise LatticeError(f"normal form {list(result.vector)} is not (3, 1, ..., 1)")
        cols = P.then(result.isometry_inverse).columns()
        cols[0] = tuple(-a for a in cols[0])
        basis = BasisChange.from_columns(cols)

    bad = special_defects(L, w, basis)
    if bad:
        raise LatticeError(f"witness basis is not special at {bad}")
    logger.info("✓ condition holds (%s)", case.value)
    return EquivalenceResult(True, case, "", basis, transcript)


def standard_lattice(n: int) -> GramLattice:
    return diagonal((1,) + (-1,) * (n - 1))
