# core/surface_models.py
"""
Lattice models of surfaces with p_g = q = 0: N^1 with its intersection form,
the canonical class, Betti numbers and the descriptor the classifier reads.
"""

from dataclasses import dataclass
from typing import List, Sequence

from core.lattice_core import (
    GramLattice,
    LatticeError,
    blowup_chain,
    diagonal,
    direct_sum,
    e8,
    hyperbolic_plane,
)
from core.riemann_roch import SurfaceData
from core.surface_classifier import Kodaira, SurfaceDescriptor, dolgachev_lambda


@dataclass(frozen=True)
class SurfaceModel:
    name: str
    surface: SurfaceData
    b1: int
    b2: int
    descriptor: SurfaceDescriptor

    @property
    def rho(self) -> int:
        return self.surface.rank

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "surface": self.surface.to_json(),
            "rho": self.rho,
            "b1": self.b1,
            "b2": self.b2,
            "descriptor": self.descriptor.to_json(),
        }


def projective_plane() -> SurfaceModel:
    S = SurfaceData(diagonal([1]), (-3,))
    return SurfaceModel("P2", S, 0, 1, SurfaceDescriptor(True, Kodaira.MINUS_INF, K2=9))


def hirzebruch(n: int) -> SurfaceModel:
    """Basis (F, C) with F^2 = 0, F.C = 1, C^2 = -n; K = -(n + 2) F - 2 C."""
    if n < 0:
        raise LatticeError(f"Hirzebruch index must be nonnegative, got {n}")
    S = SurfaceData(GramLattice([[0, 1], [1, -n]]), (-(n + 2), -2))
    return SurfaceModel(f"Sigma_{n}", S, 0, 2, SurfaceDescriptor(n != 1, Kodaira.MINUS_INF, K2=8))


def blown_up_plane(r: int) -> SurfaceModel:
    """P2 blown up in r rational points: diag(1, -1^r), K = (-3, 1, ..., 1)."""
    if r < 0:
        raise LatticeError(f"number of points must be nonnegative, got {r}")
    L, K = blowup_chain(diagonal([1]), (-3,), [1] * r)
    minimal = r == 0
    return SurfaceModel(f"P2_blown_up_{r}", SurfaceData(L, K), 0, 1 + r,
                        SurfaceDescriptor(minimal, Kodaira.MINUS_INF, K2=9 - r))


def plane_blown_up_at_closed_point(d: int) -> SurfaceModel:
    """A closed point of degree d; N^1 = <1> + <-d> is not unimodular for d > 1."""
    L, K = blowup_chain(diagonal([1]), (-3,), [d])
    return SurfaceModel(f"P2_blown_up_degree_{d}", SurfaceData(L, K), 0, 1 + d,
                        SurfaceDescriptor(False, Kodaira.MINUS_INF))


def enriques() -> SurfaceModel:
    S = SurfaceData(direct_sum(hyperbolic_plane(), e8(-1)), (0,) * 10)
    return SurfaceModel("Enriques", S, 0, 10, SurfaceDescriptor(True, Kodaira.ZERO, (2, 2), K2=0))


def blown_up_enriques(r: int = 1) -> SurfaceModel:
    base = enriques()
    L, K = blowup_chain(base.surface.ns, base.surface.K, [1] * r)
    return SurfaceModel(f"Enriques_blown_up_{r}", SurfaceData(L, K), 0, 10 + r,
                        SurfaceDescriptor(r == 0, Kodaira.ZERO, (2, 2), K2=-r))


def dolgachev(p: Sequence[int]) -> SurfaceModel:
    """
    X_9(p_1, ..., p_n) with K = lambda f for the primitive isotropic class f
    generating the fibre line. Odd lambda: N^1 = diag(1, -1^9) and
    f = (3, 1, ..., 1). Even lambda: N^1 = U + E8(-1) and f = (1, 0, ..., 0).
    """
    p = tuple(sorted(int(x) for x in p))
    lam = dolgachev_lambda(p)
    if lam % 2:
        L = diagonal((1,) + (-1,) * 9)
        f = (3,) + (1,) * 9
    else:
        L = direct_sum(hyperbolic_plane(), e8(-1))
        f = (1,) + (0,) * 9
    K = tuple(lam * c for c in f)
    kodaira = Kodaira.ZERO if lam == 0 else Kodaira.ONE
    name = "X9(" + ",".join(str(x) for x in p) + ")"
    return SurfaceModel(name, SurfaceData(L, K), 0, 10, SurfaceDescriptor(True, kodaira, p, K2=0))


def general_type(K2: int) -> SurfaceModel:
    """
    Minimal general type with p_g = q = 0 and K^2 in 1..9, modelled on the odd
    lattice diag(1, -1^(rho-1)) with rho = 10 - K^2 and K = (3, 1, ..., 1).
    """
    if not 1 <= K2 <= 9:
        raise LatticeError(f"K^2 of a minimal surface of general type with p_g = 0 lies in 1..9, got {K2}")
    n = 10 - K2
    L = diagonal((1,) + (-1,) * (n - 1))
    K = (3,) + (1,) * (n - 1)
    return SurfaceModel(f"general_type_K2_{K2}", SurfaceData(L, K), 0, n,
                        SurfaceDescriptor(True, Kodaira.TWO, K2=K2))


def catalogue() -> List[SurfaceModel]:
    return [
        projective_plane(),
        hirzebruch(0),
        hirzebruch(1),
        hirzebruch(2),
        blown_up_plane(3),
        blown_up_plane(8),
        enriques(),
        blown_up_enriques(),
        dolgachev((2, 3)),
        dolgachev((2, 4)),
        dolgachev((3, 3)),
        dolgachev((2, 2, 2)),
        dolgachev((2, 5)),
        dolgachev((2, 2, 3)),
        general_type(1),
        general_type(9),
    ]
