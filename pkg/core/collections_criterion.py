# core/collections_criterion.py
"""
Decision procedure for numerically exceptional collections of maximal length
on surfaces with chi(O_S) = 1, the witness collection when one exists, the
necessary conditions on the Neron-Severi lattice, and the arithmetic forced
on line-bundle collections when the Picard rank is one.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

import sympy

from core.characteristic_orbits import Case, NotCharacteristicError, is_characteristic, main_equivalence
from core.lattice_core import (
    BasisChange,
    GramLattice,
    LatticeError,
    LatticeVector,
    content,
    determinant,
    is_even,
    mod8_obstruction,
    signature,
)
from core.lattice_search import DEFAULT_LIMITS, SearchLimits
from core.riemann_roch import (
    NumericalClass,
    SurfaceData,
    collection_to_trigonal,
    euler_matrix,
    is_numerically_exceptional,
)
from core.trigonal_forms import TrigonalForm

logger = logging.getLogger(__name__)


# ========== Errors ==========

@dataclass
class NecessaryReport:
    unimodular: bool
    determinant: int
    mod8_ok: Optional[bool] = None
    zero_cycle: bool = False

    def to_json(self) -> dict:
        return {
            "unimodular": self.unimodular,
            "determinant": self.determinant,
            "mod8_ok": self.mod8_ok,
            "zero_cycle": self.zero_cycle,
        }


class LatticeObstruction(LatticeError):
    """Raised when N^1 is not unimodular of signature (1, n-1); carries the report."""

    def __init__(self, message: str, report: NecessaryReport):
        super().__init__(message)
        self.report = report


class WitnessUnavailable(LatticeError):
    """Raised when no witness collection can be built for an input."""


class ProgressionError(LatticeError):
    """Raised when exponents of a Picard-rank-one collection cannot come from a line-bundle collection."""

    def __init__(self, message: str, k: Optional[int] = None, degree: Optional[Fraction] = None):
        super().__init__(message)
        self.k = k
        self.degree = degree


# ========== 1. Necessary conditions ==========

def necessary_conditions(
    ns: GramLattice,
    rho: Optional[int] = None,
    b1: Optional[int] = None,
    b2: Optional[int] = None,
) -> NecessaryReport:
    """
    Unimodularity of N^1, rho = b2 - 2 b1 (mod 8) when Betti numbers are given,
    and the degree-one zero-cycle that unimodularity implies.
    """
    det = determinant(ns)
    unimodular = abs(det) == 1
    mod8 = None
    if b1 is not None and b2 is not None:
        mod8 = mod8_obstruction(ns.rank if rho is None else rho, b1, b2)
    return NecessaryReport(unimodular=unimodular, determinant=det, mod8_ok=mod8, zero_cycle=unimodular)


# ========== 2. Criterion ==========

@dataclass
class CriterionResult:
    admits: bool
    case: Case
    reason: str = ""

    def to_json(self) -> dict:
        return {"admits": self.admits, "case": self.case.value, "reason": self.reason}


def _validate(S: SurfaceData):
    n = S.rank
    if S.chiO != 1:
        raise LatticeError(f"criterion assumes chi(O_S) = 1, got {S.chiO}")
    report = necessary_conditions(S.ns)
    if not report.unimodular:
        raise LatticeObstruction(f"N^1 is not unimodular (det {report.determinant})", report)
    sig = signature(S.ns)
    if n == 0 or tuple(sig) != (1, n - 1, 0):
        raise LatticeObstruction(f"N^1 has signature {tuple(sig[:2])}, expected (1, {n - 1})", report)
    if not is_characteristic(S.ns, S.K):
        raise NotCharacteristicError(f"K = {list(S.K)} is not characteristic")


def criterion(S: SurfaceData) -> CriterionResult:
    """
    Admits iff K^2 = 10 - n and N^1 is <1> with content(K) = 3, U with
    content(K) = 2, or odd of rank > 1 with K primitive.
    """
    _validate(S)
    n = S.rank
    K2 = S.K2()
    if K2 != 10 - n:
        return CriterionResult(False, Case.NONE, f"K^2 = {K2}, expected {10 - n}")
    c = content(S.K)
    if n == 1:
        if c == 3:
            return CriterionResult(True, Case.RANK1)
        return CriterionResult(False, Case.NONE, f"rank 1 needs content(K) = 3, got {c}")
    if is_even(S.ns):
        if n == 2 and c == 2:
            return CriterionResult(True, Case.HYPERBOLIC)
        return CriterionResult(False, Case.NONE, f"even N^1 of rank {n} with content(K) = {c}")
    if c == 1:
        return CriterionResult(True, Case.ODD)
    return CriterionResult(False, Case.NONE, f"odd N^1 needs K primitive, content is {c}")


# ========== 3. Witness ==========

@dataclass
class CollectionWitness:
    case: Case
    basis: BasisChange
    classes: List[NumericalClass]
    divisors: List[LatticeVector]
    trigonal: TrigonalForm
    certificate: List[List[int]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "case": self.case.value,
            "basis": self.basis.to_json(),
            "classes": [E.to_json() for E in self.classes],
            "divisors": [list(d) for d in self.divisors],
            "trigonal": self.trigonal.to_json(),
            "certificate": self.certificate,
        }


def _scaled(v: Sequence[int], k: int) -> LatticeVector:
    return tuple(k * a for a in v)


def construct_witness(S: SurfaceData, limits: SearchLimits = DEFAULT_LIMITS) -> CollectionWitness:
    """
    RANK1: c1 = 0, D, 2D. HYPERBOLIC: c1 = 0, f1, f2, f1 + f2.
    ODD: with K = -3 f1 + f2 + ... + fn, c1 = 0, f2, ..., fn, f1, 2 f1.
    """
    decision = criterion(S)
    if not decision.admits:
        raise WitnessUnavailable(f"no collection exists: {decision.reason}")
    n = S.rank
    if decision.case is Case.ODD and n > 10:
        raise WitnessUnavailable(f"rank {n} above 10: decision only, no constructive witness")
    eq = main_equivalence(S.ns, S.K, limits)
    f = eq.witness_basis.columns()
    zero = (0,) * n
    if decision.case is Case.RANK1:
        c1s = [zero, f[0], _scaled(f[0], 2)]
    elif decision.case is Case.HYPERBOLIC:
        c1s = [zero, f[0], f[1], tuple(a + b for a, b in zip(f[0], f[1]))]
    else:
        c1s = [zero] + f[1:] + [f[0], _scaled(f[0], 2)]
    classes = [NumericalClass(1, c, 0) for c in c1s]
    if not is_numerically_exceptional(S, classes):
        raise LatticeError("constructed collection failed the Euler pairing check")
    divisors, form = collection_to_trigonal(S, classes)
    logger.info("✓ witness of length %d (%s)", len(classes), decision.case.value)
    return CollectionWitness(
        case=decision.case,
        basis=eq.witness_basis,
        classes=classes,
        divisors=divisors,
        trigonal=form,
        certificate=euler_matrix(S, classes),
    )


# ========== 4. Picard rank one ==========

@dataclass
class ProgressionResult:
    m: int
    k: int
    degree: int
    c1_coeff: int

    def to_json(self) -> dict:
        return {"progression": [self.m, self.k], "degHn": self.degree, "c1_coeff": self.c1_coeff}


def picard_rank_one_analysis(n: int, a: Sequence[int]) -> ProgressionResult:
    """
    Exponents a_0..a_n of a line-bundle collection O(a_i H) on an n-fold of
    Picard rank one. They must form a progression m + k i; k = 1 and
    deg(H^n) = 1 follow, and the t^(n-1) coefficient of the Hilbert
    polynomial gives deg(H^(n-1) . c1) = n + 1.
    """
    if n < 1 or len(a) != n + 1:
        raise ProgressionError(f"need n >= 1 and n + 1 exponents, got n={n} and {len(a)}")
    a = [int(x) for x in a]
    if len(set(a)) != len(a):
        raise ProgressionError(f"exponents {a} are not pairwise distinct")
    diffs = {a[i] - a[j] for i in range(len(a)) for j in range(i + 1, len(a))}
    if len(diffs) > n:
        raise ProgressionError(f"{len(diffs)} distinct differences, at most {n} allowed")
    ordered = sorted(a)
    m, k = ordered[0], ordered[1] - ordered[0]
    if any(x != m + k * i for i, x in enumerate(ordered)):
        raise ProgressionError(f"exponents {a} do not form an arithmetic progression")
    degree = Fraction(1, k ** n)
    if k != 1:
        raise ProgressionError(f"step k = {k} forces deg(H^n) = {degree}, not a positive integer", k, degree)

    t = sympy.Symbol("t")
    hilbert = sympy.expand(sympy.prod([t + l for l in range(1, n + 1)]) / sympy.factorial(n))
    coeff = sympy.Poly(hilbert, t).coeff_monomial(t ** (n - 1))
    c1_coeff = int(coeff * 2 * sympy.factorial(n - 1))
    if c1_coeff != n + 1:
        raise LatticeError(f"Hilbert polynomial gives c1 coefficient {c1_coeff}, expected {n + 1}")
    return ProgressionResult(m=m, k=k, degree=int(degree), c1_coeff=c1_coeff)
