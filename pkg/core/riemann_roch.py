# core/riemann_roch.py
"""
Euler pairing on numerical classes (rank, c1, c2) through Riemann-Roch, and
the passage between numerically exceptional line-bundle collections and
trigonal families of divisors.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import pandas as pd

from core.lattice_core import (
    DimensionMismatch,
    GramLattice,
    LatticeError,
    LatticeVector,
    as_vector,
    gram_of,
    norm,
    pair,
)
from core.trigonal_forms import TrigonalForm, trigonal_diag

logger = logging.getLogger(__name__)


class ParityError(LatticeError):
    """Raised when Riemann-Roch would return a half-integer."""


class ExceptionalityError(LatticeError):
    """Raised when a collection or divisor family breaks an exceptionality equation."""


@dataclass(frozen=True)
class NumericalClass:
    rank: int
    c1: LatticeVector
    c2: int = 0

    def __post_init__(self):
        object.__setattr__(self, "c1", as_vector(self.c1))

    def to_json(self) -> dict:
        return {"rank": self.rank, "c1": list(self.c1), "c2": self.c2}


@dataclass(frozen=True)
class SurfaceData:
    ns: GramLattice
    K: LatticeVector
    chiO: int = 1

    def __post_init__(self):
        object.__setattr__(self, "K", as_vector(self.K))
        if len(self.K) != self.ns.rank:
            raise DimensionMismatch(f"K has length {len(self.K)}, N^1 has rank {self.ns.rank}")

    @property
    def rank(self) -> int:
        return self.ns.rank

    def dot(self, x: Sequence[int], y: Sequence[int]) -> int:
        return pair(self.ns, x, y)

    def K2(self) -> int:
        return norm(self.ns, self.K)

    def to_json(self) -> dict:
        return {"gram": self.ns.to_json(), "K": list(self.K), "chiO": self.chiO}


def _check_class(S: SurfaceData, E: NumericalClass, name: str):
    if len(E.c1) != S.rank:
        raise DimensionMismatch(f"{name}.c1 has length {len(E.c1)}, N^1 has rank {S.rank}")


# ========== 1. Euler pairing ==========

def chi_general(S: SurfaceData, E: NumericalClass, F: NumericalClass) -> int:
    """
    chi(E, F) = ef chi(O) + (f c1(E)^2 + e c1(F)^2 - 2 c1(E).c1(F))/2
                - K.(e c1(F) - f c1(E))/2 - (f c2(E) + e c2(F)).
    """
    _check_class(S, E, "E")
    _check_class(S, F, "F")
    e, f = E.rank, F.rank
    twice = (
        2 * e * f * S.chiO
        + f * S.dot(E.c1, E.c1)
        + e * S.dot(F.c1, F.c1)
        - 2 * S.dot(E.c1, F.c1)
        - (e * S.dot(S.K, F.c1) - f * S.dot(S.K, E.c1))
        - 2 * (f * E.c2 + e * F.c2)
    )
    if twice % 2:
        raise ParityError(f"chi({E.to_json()}, {F.to_json()}) is not an integer")
    return twice // 2


def chi_line(S: SurfaceData, D: Sequence[int]) -> int:
    """chi(E, F) for line bundles with c1(F) - c1(E) = D: (D^2 - K.D)/2 + 1."""
    if S.chiO != 1:
        raise LatticeError(f"line-bundle formula assumes chi(O_S) = 1, got {S.chiO}")
    D = as_vector(D)
    num = S.dot(D, D) - S.dot(S.K, D)
    if num % 2:
        raise ParityError(f"D^2 - K.D = {num} is odd for D = {list(D)}; K is not characteristic")
    return num // 2 + 1


def euler_matrix(S: SurfaceData, classes: Sequence[NumericalClass]) -> List[List[int]]:
    return [[chi_general(S, E, F) for F in classes] for E in classes]


def exceptionality_defects(S: SurfaceData, classes: Sequence[NumericalClass]) -> List[Tuple[int, int]]:
    """(j, i) pairs, 0-based, where chi(E_j, E_i) differs from the unipotent pattern."""
    M = euler_matrix(S, classes)
    bad = []
    for j in range(len(classes)):
        for i in range(j + 1):
            want = 1 if i == j else 0
            if M[j][i] != want:
                bad.append((j, i))
    return bad


def is_numerically_exceptional(S: SurfaceData, classes: Sequence[NumericalClass]) -> bool:
    return not exceptionality_defects(S, classes)


def certificate(S: SurfaceData, classes: Sequence[NumericalClass]) -> pd.DataFrame:
    labels = [f"E{i}" for i in range(len(classes))]
    return pd.DataFrame(euler_matrix(S, classes), index=labels, columns=labels)


# ========== 2. Collections and trigonal families ==========

def _check_divisors(S: SurfaceData, D: Sequence[LatticeVector]) -> TrigonalForm:
    form = trigonal_diag(gram_of(S.ns, D))
    for i, d in enumerate(D):
        if S.dot(S.K, d) != -2 - S.dot(d, d):
            raise ExceptionalityError(
                f"K.D_{i + 1} = {S.dot(S.K, d)} but -2 - D_{i + 1}^2 = {-2 - S.dot(d, d)}"
            )
    return form


def collection_to_trigonal(
    S: SurfaceData, classes: Sequence[NumericalClass]
) -> Tuple[List[LatticeVector], TrigonalForm]:
    if not classes:
        raise ExceptionalityError("empty collection")
    for i, E in enumerate(classes):
        _check_class(S, E, f"E_{i}")
        if E.rank != 1:
            raise ExceptionalityError(f"E_{i} has rank {E.rank}, expected 1")
    bad = exceptionality_defects(S, classes)
    if bad:
        j, i = bad[0]
        raise ExceptionalityError(f"chi(E_{j}, E_{i}) = {chi_general(S, classes[j], classes[i])} breaks exceptionality")
    D = [tuple(b - a for a, b in zip(classes[i - 1].c1, classes[i].c1)) for i in range(1, len(classes))]
    form = _check_divisors(S, D)
    logger.info("✓ collection of length %d gives trigonal form %s", len(classes), list(form.diag))
    return D, form


def trigonal_to_collection(S: SurfaceData, D: Sequence[Sequence[int]]) -> List[NumericalClass]:
    """E_0 = O_S and c1(E_i) = D_1 + ... + D_i, all of rank 1 with c2 = 0."""
    if S.chiO != 1:
        raise LatticeError(f"collections from divisors assume chi(O_S) = 1, got {S.chiO}")
    D = [as_vector(d) for d in D]
    for i, d in enumerate(D):
        if len(d) != S.rank:
            raise DimensionMismatch(f"D_{i + 1} has length {len(d)}, N^1 has rank {S.rank}")
    if D:
        _check_divisors(S, D)
    c1 = (0,) * S.rank
    classes = [NumericalClass(1, c1, 0)]
    for d in D:
        c1 = tuple(a + b for a, b in zip(c1, d))
        classes.append(NumericalClass(1, c1, 0))
    return classes


# ========== 3. Torsion-sheaf relations ==========

@dataclass
class MixedRankReport:
    chi_zz: int
    self_intersection: bool
    orthogonal: Optional[bool]
    identity: bool
    chi_fz: int

    def to_json(self) -> dict:
        return {
            "chi_zz": self.chi_zz,
            "self_intersection": self.self_intersection,
            "orthogonal": self.orthogonal,
            "identity": self.identity,
            "chi_fz": self.chi_fz,
        }


def mixed_rank_relations(
    S: SurfaceData,
    Z: NumericalClass,
    F: NumericalClass,
    other_Z: Optional[NumericalClass] = None,
) -> MixedRankReport:
    """
    For a rank-0 class Z: c1(Z)^2 = -1, c1(Z).c1(Z') = 0 for a second rank-0
    class, and 2 c1(Z).c1(F) = -rk(F) (K.c1(Z) + 1 + 2 c2(Z)).
    """
    if Z.rank != 0:
        raise LatticeError(f"Z must have rank 0, got {Z.rank}")
    _check_class(S, Z, "Z")
    _check_class(S, F, "F")
    orthogonal = None
    if other_Z is not None:
        _check_class(S, other_Z, "Z'")
        orthogonal = S.dot(Z.c1, other_Z.c1) == 0
    lhs = 2 * S.dot(Z.c1, F.c1)
    rhs = -F.rank * (S.dot(S.K, Z.c1) + 1 + 2 * Z.c2)
    return MixedRankReport(
        chi_zz=chi_general(S, Z, Z),
        self_intersection=S.dot(Z.c1, Z.c1) == -1,
        orthogonal=orthogonal,
        identity=lhs == rhs,
        chi_fz=chi_general(S, F, Z),
    )


def hilbert_check(S: SurfaceData, D: Sequence[int], count: int) -> Tuple[bool, List[int]]:
    """chi(O(iD), O) for i = 1..count; all zero for a Beilinson-type collection."""
    D = as_vector(D)
    values = [chi_line(S, tuple(-i * d for d in D)) for i in range(1, count + 1)]
    return all(v == 0 for v in values), values
