# core/trigonal_forms.py
"""
Trigonal bases and the moves between them.

A trigonal form [a_1, ..., a_n] is the Gram matrix with a_i on the diagonal,
1 on the sub- and super-diagonal and 0 elsewhere. A special pair is a lattice
with an element omega such that b(omega, e_i) = -b(e_i, e_i) - 2 for every
vector of the current basis. The reductions below only use the slide, split
and insert moves, so the speciality equations survive every step.

Public indices are 1-based, matching the usual [a_1, ..., a_n] notation.
"""

import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from core.lattice_core import (
    BasisChange,
    DimensionMismatch,
    GramLattice,
    LatticeError,
    LatticeVector,
    NotUnimodularError,
    Signature,
    as_vector,
    determinant,
    direct_sum,
    dual_vector,
    gram_of,
    image,
    is_even,
    is_unimodular,
    norm,
    pair,
    signature,
    transform_vector,
)
from core.lattice_search import DEFAULT_LIMITS, SearchLimits, diagonalize_definite

logger = logging.getLogger(__name__)

MAX_REDUCTION_RANK = 64


class TrigonalFormError(LatticeError):
    """Raised when a Gram matrix or a move precondition is not trigonal."""


class NotSpecialError(LatticeError):
    """Raised when omega fails b(omega, e_i) = -b(e_i, e_i) - 2 on the current basis."""


class SignatureOutOfScope(LatticeError):
    """Raised when a reduction is asked for a signature it does not handle."""


class ReductionError(LatticeError):
    """Raised when a reduction reaches a block it cannot process."""


class Canonical(Enum):
    DIAG = "DIAG"
    HYPERBOLIC = "HYPERBOLIC"
    NEGATIVE = "NEGATIVE"


class TrigonalVerdict(Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


# ========== 1. Forms ==========

@dataclass(frozen=True)
class TrigonalForm:
    diag: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "diag", as_vector(self.diag))

    @property
    def n(self) -> int:
        return len(self.diag)

    def expand(self) -> GramLattice:
        return expand(self.diag)

    def to_json(self) -> Dict[str, List[int]]:
        return {"trig": list(self.diag)}


def expand(a: Sequence[int]) -> GramLattice:
    a = as_vector(a)
    n = len(a)
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = a[i]
        if i + 1 < n:
            rows[i][i + 1] = rows[i + 1][i] = 1
    return GramLattice(rows)


def trig_determinants(a: Sequence[int]) -> List[int]:
    """d_0 = 1, d_1 = a_1, d_m = a_m d_{m-1} - d_{m-2}."""
    a = as_vector(a)
    d = [1]
    prev = 0
    for ai in a:
        d.append(ai * d[-1] - prev)
        prev = d[-2]
    return d


def is_trigonal_gram(G: GramLattice) -> bool:
    n = G.rank
    for i in range(n):
        for j in range(i + 1, n):
            want = 1 if j == i + 1 else 0
            if G.gram[i][j] != want:
                return False
    return True


def trigonal_diag(G: GramLattice) -> TrigonalForm:
    if not is_trigonal_gram(G):
        raise TrigonalFormError(f"Gram matrix {G.to_json()} is not trigonal")
    return TrigonalForm(G.diagonal())


# ========== 2. Special pairs ==========

@dataclass(frozen=True)
class SpecialPair:
    """
    ``omega`` is written in the coordinates of ``lattice``; the columns of
    ``basis`` are the current basis vectors in the same coordinates.
    """

    lattice: GramLattice
    omega: LatticeVector
    basis: BasisChange

    def __post_init__(self):
        object.__setattr__(self, "omega", as_vector(self.omega))
        if len(self.omega) != self.lattice.rank or self.basis.size != self.lattice.rank:
            raise DimensionMismatch(
                f"omega of length {len(self.omega)} and basis of size {self.basis.size} "
                f"on a lattice of rank {self.lattice.rank}"
            )
        bad = _speciality_defects(self.lattice, self.omega, self.basis.columns())
        if bad:
            raise NotSpecialError(f"omega is not special at basis vectors {bad}")

    @classmethod
    def from_trigonal(cls, a: Sequence[int]) -> "SpecialPair":
        return special_pair_from_trigonal(a)

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def current_gram(self) -> GramLattice:
        return gram_of(self.lattice, self.basis.columns())

    def current_omega(self) -> LatticeVector:
        """Coordinates of omega in the current basis."""
        return transform_vector(self.basis, self.omega)

    def trigonal(self) -> TrigonalForm:
        return trigonal_diag(self.current_gram())

    def with_columns(self, cols: Sequence[Sequence[int]]) -> "SpecialPair":
        return SpecialPair(self.lattice, self.omega, BasisChange.from_columns(cols))

    def to_json(self) -> dict:
        return {
            "lattice": self.lattice.to_json(),
            "omega": list(self.omega),
            "basis": self.basis.to_json(),
        }


def _speciality_defects(L: GramLattice, omega, cols) -> List[int]:
    return [i + 1 for i, c in enumerate(cols) if pair(L, omega, c) != -norm(L, c) - 2]


def special_pair_from_trigonal(a: Sequence[int]) -> SpecialPair:
    """The pair on expand(a) with omega the dual of (-a_i - 2)."""
    L = expand(a)
    if not is_unimodular(L):
        raise NotUnimodularError(f"trigonal form {list(a)} has determinant {determinant(L)}")
    omega = dual_vector(L, [-ai - 2 for ai in L.diagonal()])
    return SpecialPair(L, omega, BasisChange.identity(L.rank))


def trig_direct_sum(pairs: Sequence[SpecialPair]) -> SpecialPair:
    """Orthogonal sum of the current Gram matrices, with the identity basis."""
    L = GramLattice.zero()
    omega: LatticeVector = ()
    for S in pairs:
        L = direct_sum(L, S.current_gram())
        omega = omega + S.current_omega()
    return SpecialPair(L, omega, BasisChange.identity(L.rank))


# ========== 3. Trigonal families ==========

@dataclass
class TrigonalFamilyReport:
    trigonal: bool
    unimodular: bool = False
    basis: bool = False
    diag: Optional[List[int]] = None

    def to_json(self) -> dict:
        return {"trigonal": self.trigonal, "unimodular": self.unimodular,
                "basis": self.basis, "diag": self.diag}


def check_trigonal_family(L: GramLattice, vectors: Sequence[Sequence[int]]) -> TrigonalFamilyReport:
    """
    n+1 vectors in a rank-n lattice whose pairwise Gram matrix is trigonal.
    When it is, L is unimodular and the first n vectors form a trigonal basis;
    both facts are checked, not assumed.
    """
    n = L.rank
    if len(vectors) != n + 1:
        raise DimensionMismatch(f"expected {n + 1} vectors for a rank-{n} lattice, got {len(vectors)}")
    G = gram_of(L, vectors)
    if not is_trigonal_gram(G):
        return TrigonalFamilyReport(trigonal=False)
    head = [as_vector(v) for v in vectors[:n]]
    try:
        BasisChange.from_columns(head)
        is_basis = True
    except LatticeError:
        is_basis = False
    report = TrigonalFamilyReport(
        trigonal=True,
        unimodular=is_unimodular(L),
        basis=is_basis,
        diag=list(G.diagonal()),
    )
    if not (report.unimodular and report.basis):
        logger.warning("⚠️ trigonal family without unimodular basis: %s", report.to_json())
    return report


def extend_to_corner_family(L: GramLattice, trig_basis: Sequence[Sequence[int]]) -> List[LatticeVector]:
    """
    Prepend the dual of e_1 and append the dual of e_n. The (n+2)-family is
    trigonal except for the corner entry, which equals (-1)^(n_plus - 1).
    """
    if not is_unimodular(L):
        raise NotUnimodularError(f"corner family needs a unimodular lattice (det {determinant(L)})")
    n = L.rank
    if n == 0:
        raise TrigonalFormError("corner family of the zero lattice")
    B = BasisChange.from_columns([as_vector(v) for v in trig_basis])
    T = gram_of(L, B.columns())
    trigonal_diag(T)
    first = image(B, dual_vector(T, [1 if i == 0 else 0 for i in range(n)]))
    last = image(B, dual_vector(T, [1 if i == n - 1 else 0 for i in range(n)]))
    family = [first] + B.columns() + [last]

    corner = 1 if signature(L).n_plus % 2 else -1
    F = gram_of(L, family)
    for i in range(n + 2):
        for j in range(i + 1, n + 2):
            if (i, j) == (0, n + 1):
                want = corner
            else:
                want = 1 if j == i + 1 else 0
            if F.gram[i][j] != want:
                raise TrigonalFormError(f"corner family entry ({i}, {j}) is {F.gram[i][j]}, expected {want}")
    return family


def corner_omega(family: Sequence[Sequence[int]]) -> LatticeVector:
    """-(lambda_0 + ... + lambda_{n+1}); equals omega for a special pair."""
    n = len(family[0])
    return tuple(-sum(v[k] for v in family) for k in range(n))


# ========== 4. Moves on column lists ==========

def _diag_of(L: GramLattice, cols) -> List[int]:
    return [norm(L, c) for c in cols]


def _add(u, v, k: int = 1) -> LatticeVector:
    return tuple(a + k * b for a, b in zip(u, v))


def _slide_cols(cols: List[LatticeVector], p: int, x: int) -> List[LatticeVector]:
    """
    Transfer slide at the 0-based position p (a_p = 0): e_{p+1} += x e_p and
    e_{p-1} -= x e_p, so a_{p+1} grows by 2x and a_{p-1} shrinks by 2x.
    """
    out = list(cols)
    if p + 1 < len(out):
        out[p + 1] = _add(out[p + 1], out[p], x)
    if p >= 1:
        out[p - 1] = _add(out[p - 1], out[p], -x)
    return out


def _split_cols(cols: List[LatticeVector], j: int) -> Tuple[LatticeVector, List[LatticeVector]]:
    """Split at the 0-based position j (a_j = -1); returns (e_j, merged rest)."""
    f = cols[j]
    rest = list(cols[: max(j - 1, 0)])
    if j >= 1:
        rest.append(_add(cols[j - 1], f))
    if j + 1 < len(cols):
        rest.append(_add(cols[j + 1], f))
    rest += cols[j + 2:]
    return f, rest


def _insert_cols(cols: List[LatticeVector], f: LatticeVector, j: int) -> List[LatticeVector]:
    """Inverse of a split: f of norm -1 orthogonal to cols lands at 0-based position j."""
    m = len(cols)
    if m == 0:
        return [f]
    out = list(cols[: max(j - 1, 0)])
    if j >= 1:
        out.append(_add(cols[j - 1], f, -1))
    out.append(f)
    if j < m:
        out.append(_add(cols[j], f, -1))
    out += cols[j + 1:]
    return out


def _sub_pair(S: SpecialPair, cols: Sequence[LatticeVector]) -> SpecialPair:
    """Standalone pair on the sublattice spanned by cols (an orthogonal summand)."""
    G = gram_of(S.lattice, cols)
    omega = dual_vector(G, [pair(S.lattice, S.omega, c) for c in cols])
    return SpecialPair(G, omega, BasisChange.identity(G.rank))


# ========== 5. Public moves ==========

def move_slide(S: SpecialPair, j: int, x: int) -> SpecialPair:
    a = S.trigonal().diag
    n = len(a)
    if not 1 <= j < n:
        raise TrigonalFormError(f"slide position {j} outside 1..{n - 1}")
    if a[j - 1] != 0:
        raise TrigonalFormError(f"slide needs a_{j} = 0, got {a[j - 1]}")
    out = S.with_columns(_slide_cols(S.basis.columns(), j - 1, int(x)))
    out.trigonal()
    return out


def move_split(S: SpecialPair, j: int) -> Tuple[SpecialPair, SpecialPair]:
    """Returns (<-1>, merged remainder) as standalone special pairs."""
    a = S.trigonal().diag
    n = len(a)
    if n < 2 or not 1 <= j <= n:
        raise TrigonalFormError(f"split position {j} invalid for rank {n}")
    if a[j - 1] != -1:
        raise TrigonalFormError(f"split needs a_{j} = -1, got {a[j - 1]}")
    f, rest = _split_cols(S.basis.columns(), j - 1)
    minus_one = _sub_pair(S, [f])
    remainder = _sub_pair(S, rest)
    remainder.trigonal()
    return minus_one, remainder


def move_insert(S: SpecialPair, j: int, block_length: Optional[int] = None) -> SpecialPair:
    """
    The current basis is a trigonal block of ``block_length`` vectors (default
    rank - 1) followed by orthogonal norm -1 vectors. The first of those is
    inserted at position j of the block, 1 <= j <= block_length + 1.
    """
    n = S.rank
    m = n - 1 if block_length is None else block_length
    if not 0 <= m < n:
        raise TrigonalFormError(f"block length {m} invalid for rank {n}")
    if not 1 <= j <= m + 1:
        raise TrigonalFormError(f"insert position {j} outside 1..{m + 1}")
    cols = S.basis.columns()
    block, f, tail = cols[:m], cols[m], cols[m + 1:]
    trigonal_diag(gram_of(S.lattice, block))
    if norm(S.lattice, f) != -1 or any(pair(S.lattice, f, c) for c in block):
        raise TrigonalFormError("inserted vector must have norm -1 and be orthogonal to the block")
    out = S.with_columns(_insert_cols(block, f, j - 1) + tail)
    trigonal_diag(gram_of(S.lattice, out.basis.columns()[: m + 1]))
    return out


# ========== 6. Reductions ==========

@dataclass
class EvenReduction:
    """``basis`` gives U^m; ``trigonal_basis`` gives the form [0, ..., 0]."""

    basis: BasisChange
    m: int
    trigonal_basis: BasisChange
    trace: List[dict] = field(default_factory=list)


@dataclass
class SpecialReduction:
    basis: BasisChange
    canonical: Canonical
    omega: LatticeVector
    trace: List[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "basis": self.basis.to_json(),
            "canonical": self.canonical.value,
            "omega": list(self.omega),
            "trace": self.trace,
        }


def _zero_front(L: GramLattice, blk: List[LatticeVector], trace: List[dict]) -> List[LatticeVector]:
    """Even block with a zero entry: slide until a_1 = a_2 = 0."""
    a = _diag_of(L, blk)
    z = next((i for i, v in enumerate(a) if v == 0), None)
    if z is None:
        raise ReductionError(f"even block {a} has no zero entry")
    if z == 0:
        x = -a[1] // 2
        blk = _slide_cols(blk, 0, x)
        trace.append({"move": "slide", "position": 1, "x": x, "result": _diag_of(L, blk)})
        return blk
    for p in range(z, 0, -1):
        x = a[p - 1] // 2
        blk = _slide_cols(blk, p, x)
        a = _diag_of(L, blk)
        trace.append({"move": "slide", "position": p + 1, "x": x, "result": a})
    return blk


def reduce_even(S: SpecialPair) -> EvenReduction:
    a = S.trigonal().diag
    if not is_even(S.current_gram()):
        raise TrigonalFormError(f"reduce_even needs an even lattice, got {list(a)}")
    if not is_unimodular(S.lattice):
        raise NotUnimodularError("reduce_even needs a unimodular lattice")
    if len(a) % 2:
        raise ReductionError(f"even unimodular trigonal lattice of odd rank {len(a)}")
    L = S.lattice
    trace: List[dict] = []
    blocks: List[List[LatticeVector]] = []
    rest = S.basis.columns()
    while rest:
        if len(rest) == 1:
            raise ReductionError("even block of rank 1")
        rest = _zero_front(L, rest, trace)
        blocks.append(rest[:2])
        # e_3 - e_1 is orthogonal to the plane spanned by e_1, e_2
        tail = rest[2:]
        if tail:
            tail[0] = _add(tail[0], rest[0], -1)
            trace.append({"move": "split_plane", "result": _diag_of(L, tail)})
        rest = tail
    u_cols = [c for b in blocks for c in b]
    # rebuild [0, ..., 0]: e'_{2i+1} = f_{2i+1} + f_{2i-1}, e'_{2i} = f_{2i}
    z_cols = [
        _add(c, u_cols[k - 2]) if k >= 2 and k % 2 == 0 else c
        for k, c in enumerate(u_cols)
    ]
    zero_basis = BasisChange.from_columns(z_cols)
    if any(gram_of(L, z_cols).diagonal()) or not is_trigonal_gram(gram_of(L, z_cols)):
        raise ReductionError("rebuilt basis is not [0, ..., 0]")
    m = len(u_cols) // 2
    logger.info("✓ even trigonal lattice of rank %d is U^%d", len(u_cols), m)
    return EvenReduction(BasisChange.from_columns(u_cols), m, zero_basis, trace)


def _check_reducible(S: SpecialPair) -> Signature:
    S.trigonal()
    if S.rank > MAX_REDUCTION_RANK:
        raise SignatureOutOfScope(f"rank {S.rank} exceeds {MAX_REDUCTION_RANK}")
    if not is_unimodular(S.lattice):
        raise NotUnimodularError("reduce_special needs a unimodular lattice")
    sig = signature(S.lattice)
    n = S.rank
    if tuple(sig) not in ((1, n - 1, 0), (0, n, 0)):
        raise SignatureOutOfScope(f"signature {tuple(sig[:2])} is neither (1, {n - 1}) nor (0, {n})")
    return sig


def _nearest_odd(a: Sequence[int], z: int) -> Optional[int]:
    best = None
    for t, v in enumerate(a):
        if v % 2 == 0:
            continue
        d = abs(t - z)
        if best is None or d < abs(best - z) or (d == abs(best - z) and t > best):
            best = t
    return best


def reduce_special(S: SpecialPair) -> SpecialReduction:
    """
    Reduce a trigonal special pair of signature (1, n-1) or (0, n) to
    diag(1, -1, ..., -1), [0, 0] or diag(-1, ..., -1), keeping omega special.
    Blocks are processed left to right: split at the first -1, otherwise
    slide the nearest odd entry to -1 through a zero, then split.

    Slide rule: from the zero at z towards the odd entry at t (the closest
    one, the right one on a tie), each slide picks the exact x that turns the
    next entry into 0, and the last one turns a_t into -1. Parity makes
    x = (target - a_{p+1}) / 2 an integer.
    """
    _check_reducible(S)
    L = S.lattice
    trace: List[dict] = []
    positives: List[LatticeVector] = []
    negatives: List[LatticeVector] = []
    planes: List[List[LatticeVector]] = []
    work: List[List[LatticeVector]] = [S.basis.columns()]

    while work:
        blk = work.pop(0)
        a = _diag_of(L, blk)
        m = len(blk)
        if m == 1:
            if a[0] == 1:
                positives.append(blk[0])
            elif a[0] == -1:
                negatives.append(blk[0])
            else:
                raise ReductionError(f"terminal block [{a[0]}] is not unimodular")
            continue
        if all(v % 2 == 0 for v in a):
            if m != 2:
                raise ReductionError(f"even block {a} of rank {m}")
            blk = _zero_front(L, blk, trace)
            planes.append(blk)
            continue
        j = next((i for i, v in enumerate(a) if v == -1), None)
        if j is not None:
            f, rest = _split_cols(blk, j)
            negatives.append(f)
            trace.append({"move": "split", "block": a, "position": j + 1, "result": _diag_of(L, rest)})
            work.insert(0, rest)
            continue
        z = next((i for i, v in enumerate(a) if v == 0), None)
        if z is None:
            raise ReductionError(f"block {a} has neither -1 nor 0")
        t = _nearest_odd(a, z)
        if t < z:
            blk = blk[::-1]
            z, t = m - 1 - z, m - 1 - t
            a = _diag_of(L, blk)
            trace.append({"move": "reverse", "result": a})
        for p in range(z, t):
            target = -1 if p + 1 == t else 0
            x = (target - a[p + 1]) // 2
            blk = _slide_cols(blk, p, x)
            a = _diag_of(L, blk)
            trace.append({"move": "slide", "position": p + 1, "x": x, "result": a})
        work.insert(0, blk)

    if len(positives) + len(planes) > 1:
        raise ReductionError("more than one positive direction")
    if planes and negatives:
        e1 = negatives.pop(0)
        e2, e3 = planes.pop()
        positives.append(_add(_add(e2, e3), e1, -1))
        negatives[:0] = [_add(e2, e1, -1), _add(e3, e1, -1)]
        trace.append({"move": "absorb"})

    if planes:
        cols, canonical = planes[0], Canonical.HYPERBOLIC
    elif positives:
        cols, canonical = positives + negatives, Canonical.DIAG
    else:
        cols, canonical = negatives, Canonical.NEGATIVE
    basis = BasisChange.from_columns(cols)
    result = SpecialPair(L, S.omega, basis)
    omega = result.current_omega()
    _check_canonical(result, canonical, omega)
    logger.info("✓ reduced rank-%d special pair to %s", S.rank, canonical.value)
    return SpecialReduction(basis, canonical, omega, trace)


def _check_canonical(S: SpecialPair, canonical: Canonical, omega: LatticeVector):
    n = S.rank
    G = S.current_gram()
    if canonical is Canonical.HYPERBOLIC:
        want_gram, want_omega = ((0, 1), (1, 0)), (-2, -2)
    elif canonical is Canonical.DIAG:
        want_gram = tuple(tuple((1 if i == 0 else -1) if i == j else 0 for j in range(n)) for i in range(n))
        want_omega = (-3,) + (1,) * (n - 1)
    else:
        want_gram = tuple(tuple(-1 if i == j else 0 for j in range(n)) for i in range(n))
        want_omega = (1,) * n
    if G.gram != want_gram or omega != want_omega:
        raise ReductionError(f"reduction ended at Gram {G.to_json()} with omega {list(omega)}")


def special_norm(n_plus: int, n_minus: int) -> int:
    """Norm of omega on a trigonal special pair: 8 floor((n+ + 1)/2) + n+ - n-."""
    return 8 * ((n_plus + 1) // 2) + n_plus - n_minus


# ========== 7. Recognition ==========

def exists_small_entry(a: Sequence[int], lorentzian: bool = False) -> int:
    """
    1-based index i with |a_i| < 2 in a unimodular trigonal form; with
    ``lorentzian`` the form must have signature (1, n-1) and a_i is -1 or 0.
    """
    a = as_vector(a)
    if not a:
        raise TrigonalFormError("empty trigonal form")
    d = trig_determinants(a)[-1]
    if abs(d) != 1:
        raise TrigonalFormError(f"trigonal form {list(a)} has determinant {d}")
    if lorentzian:
        sig = signature(expand(a))
        if tuple(sig) != (1, len(a) - 1, 0):
            raise SignatureOutOfScope(f"signature {tuple(sig[:2])} is not (1, {len(a) - 1})")
        wanted = (-1, 0)
    else:
        wanted = (-1, 0, 1)
    for i, v in enumerate(a):
        if v in wanted:
            return i + 1
    raise TrigonalFormError(f"no small entry in unimodular form {list(a)}")


def is_trigonal_lattice(L: GramLattice, limits: SearchLimits = DEFAULT_LIMITS) -> TrigonalVerdict:
    if not is_unimodular(L):
        raise NotUnimodularError(f"trigonal test needs a unimodular lattice (det {determinant(L)})")
    sig = signature(L)
    if sig.n_plus and sig.n_minus:
        if not is_even(L):
            return TrigonalVerdict.YES
        return TrigonalVerdict.YES if sig.n_plus == sig.n_minus else TrigonalVerdict.NO
    basis, truncated = diagonalize_definite(L, box=limits.trigonal_search_box)
    if basis is not None:
        return TrigonalVerdict.YES
    if truncated:
        logger.warning("⚠️ no orthonormal basis inside box %d; undecided", limits.trigonal_search_box)
        return TrigonalVerdict.UNKNOWN
    return TrigonalVerdict.NO


# ========== 8. Random special pairs ==========

def random_special_pair(
    core: Sequence[int],
    inserts: int,
    rng: random.Random,
    slides: int = 2,
    max_shift: int = 2,
) -> SpecialPair:
    """
    Start from the special pair on ``core`` plus ``inserts`` copies of <-1>,
    then insert them one at a time at random positions with random slides.
    The result is trigonal and special by construction.
    """
    S = trig_direct_sum([special_pair_from_trigonal(core)] + [special_pair_from_trigonal((-1,))] * inserts)
    L = S.lattice
    cols = S.basis.columns()
    m = len(core)
    for _ in range(inserts):
        block, f, tail = cols[:m], cols[m], cols[m + 1:]
        block = _insert_cols(block, f, rng.randint(0, m))
        m += 1
        for _ in range(slides):
            a = _diag_of(L, block)
            zeros = [i for i, v in enumerate(a) if v == 0]
            if not zeros:
                break
            block = _slide_cols(block, rng.choice(zeros), rng.randint(-max_shift, max_shift))
        cols = block + tail
    out = S.with_columns(cols)
    out.trigonal()
    return out
