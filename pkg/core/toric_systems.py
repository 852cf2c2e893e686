# core/toric_systems.py
"""
Toric systems attached to full exceptional line-bundle collections and the
smooth complete toric fans they determine.

The cycle of divisors starts at D_1: (D_1, ..., D_{n+1}, D_0) with
D_0 = -K - sum D_i.
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from core.lattice_core import LatticeError, LatticeVector, as_vector
from core.riemann_roch import SurfaceData

logger = logging.getLogger(__name__)

Ray = Tuple[int, int]


class ToricConditionError(LatticeError):
    """Raised when a divisor cycle or self-intersection sequence fails a toric system condition."""


class ClosureError(LatticeError):
    """Raised when the rays built from self-intersections do not close into a complete fan."""


@dataclass(frozen=True)
class ToricSystem:
    self_intersections: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "self_intersections", as_vector(self.self_intersections))

    @property
    def N(self) -> int:
        return len(self.self_intersections)

    def to_json(self) -> dict:
        return {"self_intersections": list(self.self_intersections)}


@dataclass(frozen=True)
class Fan:
    rays: Tuple[Ray, ...]

    def to_json(self) -> dict:
        return {"rays": [list(r) for r in self.rays]}


def _det(u: Ray, v: Ray) -> int:
    return u[0] * v[1] - u[1] * v[0]


def sum_rule_holds(t: ToricSystem) -> bool:
    return sum(t.self_intersections) == 12 - 3 * t.N


# ========== From collections ==========

def toric_system_from_collection(S: SurfaceData, D: Sequence[Sequence[int]]) -> ToricSystem:
    D = [as_vector(d) for d in D]
    if len(D) + 1 < 3:
        raise ToricConditionError(f"need at least two divisors, got {len(D)}")
    minus_K = tuple(-k for k in S.K)
    D0 = tuple(m - sum(d[i] for d in D) for i, m in enumerate(minus_K))
    cycle: List[LatticeVector] = D + [D0]
    labels = list(range(1, len(D) + 1)) + [0]
    N = len(cycle)

    bad = []
    for i in range(N):
        for j in range(i + 1, N):
            adjacent = j == i + 1 or (i == 0 and j == N - 1)
            want = 1 if adjacent else 0
            got = S.dot(cycle[i], cycle[j])
            if got != want:
                bad.append(f"D_{labels[i]}.D_{labels[j]} = {got} (expected {want})")
    if bad:
        raise ToricConditionError("; ".join(bad))
    total = tuple(sum(d[i] for d in cycle) for i in range(S.rank))
    if total != minus_K:
        raise ToricConditionError(f"sum of the cycle is {list(total)}, expected -K = {list(minus_K)}")
    t = ToricSystem(tuple(S.dot(d, d) for d in cycle))
    if not sum_rule_holds(t):
        raise ToricConditionError(
            f"sum of self-intersections {sum(t.self_intersections)} differs from 12 - 3N = {12 - 3 * N}"
        )
    return t


# ========== Fans ==========

def _winding(rays: Sequence[Ray]) -> int:
    """Counterclockwise crossings of the positive x-axis along the closed ray cycle."""
    count = 0
    N = len(rays)
    for i in range(N):
        (x0, y0), (x1, y1) = rays[i], rays[(i + 1) % N]
        if (y1 == 0 and x1 > 0) or (y0 < 0 and y1 > 0):
            count += 1
    return count


def fan_from_toric_system(t: ToricSystem) -> Fan:
    """v_0 = (1, 0), v_1 = (0, 1), v_{i+1} = -v_{i-1} - a_i v_i."""
    a = t.self_intersections
    N = t.N
    if N < 3:
        raise ToricConditionError(f"a toric system has at least 3 entries, got {N}")
    if not sum_rule_holds(t):
        raise ToricConditionError(f"sum of self-intersections {sum(a)} differs from 12 - 3N = {12 - 3 * N}")
    v: List[Ray] = [(1, 0), (0, 1)]
    for i in range(1, N + 1):
        ai = a[i % N]
        v.append((-v[i - 1][0] - ai * v[i][0], -v[i - 1][1] - ai * v[i][1]))
    if v[N] != v[0] or v[N + 1] != v[1]:
        raise ClosureError(f"rays do not close: v_N = {v[N]}, v_(N+1) = {v[N + 1]}")
    rays = v[:N]
    for i in range(N):
        d = _det(rays[i], rays[(i + 1) % N])
        if d != 1:
            raise ClosureError(f"det(v_{i}, v_{(i + 1) % N}) = {d}")
    w = _winding(rays)
    if w != 1:
        raise ClosureError(f"rays wind {w} times around the origin")
    logger.debug("🔍 fan %s", rays)
    return Fan(tuple(rays))


def verify_abstract_toric_system(t: ToricSystem) -> bool:
    try:
        fan_from_toric_system(t)
    except (ToricConditionError, ClosureError) as exc:
        logger.info("❌ not an abstract toric system: %s", exc)
        return False
    return True


def rotate(t: ToricSystem, k: int) -> ToricSystem:
    a = t.self_intersections
    k %= len(a)
    return ToricSystem(a[k:] + a[:k])
