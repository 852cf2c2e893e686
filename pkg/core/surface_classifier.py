# core/surface_classifier.py
"""
Which surfaces with p_g = q = 0 carry a numerically exceptional collection of
maximal length: the decision by minimality and Kodaira dimension, the
Dolgachev fibre arithmetic, the even/odd parity check on K, and the lattice
obstructions for minimal geometrically rational surfaces.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import reduce
from itertools import combinations_with_replacement
from typing import List, Optional, Sequence, Tuple

import pandas as pd

from core.characteristic_orbits import NotCharacteristicError, is_characteristic
from core.collections_criterion import criterion, necessary_conditions
from core.lattice_core import (
    GramLattice,
    LatticeError,
    NotUnimodularError,
    content,
    diagonal,
    is_even,
    is_unimodular,
    mod8_obstruction,
)
from core.riemann_roch import SurfaceData

logger = logging.getLogger(__name__)

# the four multiplicity tuples with lambda = 1
DOLGACHEV_ADMITTING = ((2, 3), (2, 4), (3, 3), (2, 2, 2))


class DescriptorError(LatticeError):
    """Raised when a surface descriptor is internally inconsistent."""


class MultiplicityError(LatticeError):
    """Raised when Dolgachev multiplicities are not integers >= 2 with n >= 2."""


class Kodaira(Enum):
    MINUS_INF = "MINUS_INF"
    ZERO = "ZERO"
    ONE = "ONE"
    TWO = "TWO"


@dataclass(frozen=True)
class SurfaceDescriptor:
    minimal: bool
    kodaira: Kodaira
    dolgachev_multiplicities: Optional[Tuple[int, ...]] = None
    K2: Optional[int] = None

    def __post_init__(self):
        if self.dolgachev_multiplicities is not None:
            object.__setattr__(self, "dolgachev_multiplicities", tuple(int(p) for p in self.dolgachev_multiplicities))

    def to_json(self) -> dict:
        return {
            "minimal": self.minimal,
            "kodaira": self.kodaira.value,
            "dolgachev_multiplicities": (
                list(self.dolgachev_multiplicities) if self.dolgachev_multiplicities is not None else None
            ),
            "K2": self.K2,
        }


@dataclass
class Decision:
    admits: bool
    justification: str

    def to_json(self) -> dict:
        return {"admits": self.admits, "justification": self.justification}


# ========== 1. Dolgachev surfaces ==========

def _check_multiplicities(p: Sequence[int]) -> Tuple[int, ...]:
    p = tuple(p)
    if len(p) < 2:
        raise MultiplicityError(f"need at least two multiple fibres, got {list(p)}")
    if any(isinstance(x, bool) or int(x) != x or x < 2 for x in p):
        raise MultiplicityError(f"multiplicities must be integers >= 2, got {list(p)}")
    return tuple(sorted(int(x) for x in p))


def dolgachev_lambda(p: Sequence[int]) -> int:
    """
    K = lambda (F / L) with L = lcm(p): lambda = (n - 1) L - sum L / p_i.
    For two fibres this is c q1 q2 - q1 - q2 where c = gcd and p_i = c q_i.
    """
    p = _check_multiplicities(p)
    n = len(p)
    L = reduce(math.lcm, p)
    lam = (n - 1) * L - sum(L // pi for pi in p)
    if n == 2:
        c = math.gcd(*p)
        q1, q2 = p[0] // c, p[1] // c
        if lam != c * q1 * q2 - q1 - q2:
            raise LatticeError(f"two-fibre identity failed for {list(p)}")
    return lam


def dolgachev_admits(p: Sequence[int]) -> bool:
    lam = dolgachev_lambda(p)
    if lam == 1 and _check_multiplicities(p) not in DOLGACHEV_ADMITTING:
        logger.warning("⚠️ lambda = 1 for %s outside the known list; report if reached", list(p))
    return lam == 1


def dolgachev_table(max_fibres: int = 4, max_multiplicity: int = 12) -> pd.DataFrame:
    """lambda for every nondecreasing tuple with 2..max_fibres entries in 2..max_multiplicity."""
    rows = []
    for n in range(2, max_fibres + 1):
        for p in combinations_with_replacement(range(2, max_multiplicity + 1), n):
            lam = dolgachev_lambda(p)
            rows.append({"multiplicities": p, "n": n, "lambda": lam, "admits": lam == 1})
    return pd.DataFrame(rows)


# ========== 2. Classification ==========

def validate_descriptor(d: SurfaceDescriptor) -> SurfaceDescriptor:
    mult = d.dolgachev_multiplicities
    if d.kodaira in (Kodaira.ZERO, Kodaira.ONE):
        if mult is None:
            raise DescriptorError(f"Kodaira dimension {d.kodaira.value} needs fibre multiplicities")
        _check_multiplicities(mult)
        if list(mult) != sorted(mult):
            raise DescriptorError(f"multiplicities {list(mult)} are not nondecreasing")
        if d.kodaira is Kodaira.ZERO and tuple(mult) != (2, 2):
            raise DescriptorError(f"Kodaira dimension 0 forces multiplicities (2, 2), got {list(mult)}")
        if d.kodaira is Kodaira.ONE and dolgachev_lambda(mult) == 0:
            raise DescriptorError("multiplicities (2, 2) give Kodaira dimension 0, not 1")
    elif mult is not None:
        raise DescriptorError(f"Kodaira dimension {d.kodaira.value} takes no multiplicities")
    return d


def classify_pgq0(d: SurfaceDescriptor) -> Decision:
    """Non-minimal, rational and general type admit; Enriques does not; Dolgachev iff lambda = 1."""
    validate_descriptor(d)
    if not d.minimal:
        return Decision(True, "not minimal: a blow-up of a point adds a <-1> summand")
    if d.kodaira is Kodaira.MINUS_INF:
        return Decision(True, "minimal rational surface")
    if d.kodaira is Kodaira.ZERO:
        return Decision(False, "Enriques surface: N^1 is even of rank 10 and K = 0")
    if d.kodaira is Kodaira.TWO:
        return Decision(True, "general type: K^2 = 10 - rho and N^1 is unimodular with K primitive")
    lam = dolgachev_lambda(d.dolgachev_multiplicities)
    if lam == 1:
        return Decision(True, "Dolgachev surface with lambda = 1")
    return Decision(False, f"Dolgachev surface with lambda = {lam}: K is not primitive")


# ========== 3. Parity ==========

def even_odd_duality_check(S: SurfaceData) -> bool:
    """N^1 even iff K = 2D, i.e. content(K) even."""
    if not is_unimodular(S.ns):
        raise NotUnimodularError("parity check needs a unimodular N^1")
    if not is_characteristic(S.ns, S.K):
        raise NotCharacteristicError(f"K = {list(S.K)} is not characteristic")
    return is_even(S.ns) == (content(S.K) % 2 == 0)


# ========== 4. Minimal geometrically rational surfaces ==========

class RationalCase(Enum):
    P2 = "P2"
    QUADRIC_PIC_Z = "QUADRIC_PIC_Z"
    DELPEZZO_PIC_ZK = "DELPEZZO_PIC_ZK"
    CONIC_BUNDLE = "CONIC_BUNDLE"


def minimal_geom_rational_obstruction(
    case: RationalCase,
    K2: Optional[int] = None,
    lattice: Optional[GramLattice] = None,
    K: Optional[Sequence[int]] = None,
) -> Decision:
    if case is RationalCase.P2:
        return Decision(True, "P2: <O, O(1), O(2)>")
    if case is RationalCase.QUADRIC_PIC_Z:
        ok = mod8_obstruction(1, 0, 2)
        return Decision(ok, "quadric with Pic = Z: rho = 1 differs from b2 = 2 mod 8")
    if case is RationalCase.DELPEZZO_PIC_ZK:
        if K2 is None or not 1 <= K2 <= 9:
            raise DescriptorError(f"del Pezzo degree must lie in 1..9, got {K2}")
        report = necessary_conditions(diagonal([K2]))
        if not report.unimodular:
            return Decision(False, f"Pic = Z K with K^2 = {K2}: N^1 = <{K2}> is not unimodular")
        # unimodular forces K^2 = 1, the criterion needs K^2 = 9
        decision = criterion(SurfaceData(diagonal([1]), (-1,)))
        return Decision(decision.admits, f"Pic = Z K with K^2 = 1: {decision.reason}")
    if case is RationalCase.CONIC_BUNDLE:
        if lattice is None or K is None or lattice.rank != 2:
            raise DescriptorError("conic bundle case needs a rank-2 lattice and K")
        report = necessary_conditions(lattice)
        if not report.unimodular:
            return Decision(False, f"N^1 is not unimodular (det {report.determinant})")
        decision = criterion(SurfaceData(lattice, K))
        return Decision(decision.admits, decision.reason or f"{decision.case.value} case")
    raise DescriptorError(f"unknown case {case!r}")


def classification_table(models: Sequence) -> pd.DataFrame:
    """classify_pgq0 next to the lattice criterion for each surface model."""
    rows: List[dict] = []
    for m in models:
        by_descriptor = classify_pgq0(m.descriptor).admits
        try:
            by_lattice = criterion(m.surface).admits
        except LatticeError as exc:
            logger.warning("⚠️ %s: %s", m.name, exc)
            by_lattice = False
        rows.append({"name": m.name, "rho": m.rho, "descriptor": by_descriptor, "lattice": by_lattice})
    return pd.DataFrame(rows)
