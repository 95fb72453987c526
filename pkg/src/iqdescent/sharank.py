"""Torsion bookkeeping, the Selmer dimension identity, and naive point search.

The exact-sequence identity rank(E(K)) + dim TS(E/K)[phi] + dim TS(E'/K)
[phihat] = dim S^phi + dim S^phihat - 2 turns computed Selmer dimensions into
rank/Sha statements; the naive point search supplies certified rank lower
bounds (and, when the identity value is 0, confirms that the Mordell-Weil
group is exactly the 2-torsion).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Iterator, Optional

from .descent import CurveSpec, DescentError, _echelon_basis, ks2_for
from .qfield import QInt, QuadField, qint_sqrt


@dataclass(frozen=True)
class TorsionReport:
    """The full 2-torsion: O, (0,0), (-eps*p,0), (-eps*q,0); always (Z/2)^2."""

    curve: CurveSpec
    affine_x: tuple[int, int, int]
    structure: str = "Z/2Z x Z/2Z"

    @property
    def order(self) -> int:
        return 4


def two_torsion(curve: CurveSpec) -> TorsionReport:
    xs = (0, -curve.eps * curve.p, -curve.eps * curve.q)
    a, b = curve.curve_coeffs()
    for x in xs:
        assert x * (x * x + a * x + b) == 0, "torsion x-coordinate not on the curve"
    return TorsionReport(curve, xs)


def dimension_identity(dim_phi: int, dim_phihat: int) -> int:
    """rank + dim TS[phi] + dim TS'[phihat], from the two Selmer dimensions."""
    if dim_phi < 0 or dim_phihat < 0:
        raise DescentError("negative Selmer dimension")
    if dim_phi + dim_phihat < 2:
        # 1, -eps*p, -eps*q, pq always inject into the dual Selmer group
        raise DescentError("dimension sum below 2 contradicts the torsion images")
    return dim_phi + dim_phihat - 2


@dataclass(frozen=True)
class ShaClause:
    """Which shape of rank/Sha statement the dimensions force."""

    kind: str  # full_determination | dual_two_part | self_two_part | three_term
    value: int
    text: str


def sha_two_part_reduction(dim_phi: int, dim_phihat: int) -> ShaClause:
    """Collapse the identity when one side is forced trivial.

    dim S^phi = 0 kills TS(E)[phi], and then TS(E')[phihat] = TS(E')[2].
    dim S^phihat = 2 means the dual Selmer group is exactly the torsion image,
    so TS(E')[phihat] = 0 and TS(E)[2] = TS(E)[phi].  Both at once pin the
    Mordell-Weil group completely.
    """
    value = dimension_identity(dim_phi, dim_phihat)
    if dim_phi == 0 and dim_phihat == 2:
        return ShaClause(
            "full_determination",
            0,
            "rank = 0, TS(E/K)[2] = 0, TS(E'/K)[2] = 0, E(K) = Z/2Z x Z/2Z",
        )
    if dim_phi == 0:
        return ShaClause("dual_two_part", value, f"rank + dim2 TS(E'/K)[2] = {value}")
    if dim_phihat == 2:
        return ShaClause("self_two_part", value, f"rank + dim2 TS(E/K)[2] = {value}")
    return ShaClause(
        "three_term", value, f"rank + dim2 TS(E/K)[phi] + dim2 TS(E'/K)[phihat] = {value}"
    )


# -- naive point search ----------------------------------------------------------


@dataclass(frozen=True)
class RationalPoint:
    """(x, y) = (x_num/den^2, y_num/den^3) on y^2 = x(x + eps p)(x + eps q)."""

    x_num: QInt
    den: QInt
    y_num: QInt

    @property
    def height(self) -> int:
        return max(self.x_num.norm(), self.den.norm() ** 2)

    def same_x(self, other: "RationalPoint") -> bool:
        return self.x_num * other.den * other.den == other.x_num * self.den * self.den

    def verify(self, curve: CurveSpec) -> bool:
        e2 = self.den * self.den
        rhs = (
            self.x_num
            * (self.x_num + curve.eps * curve.p * e2)
            * (self.x_num + curve.eps * curve.q * e2)
        )
        return self.y_num * self.y_num == rhs


@dataclass(frozen=True)
class PointSearchResult:
    points: tuple[RationalPoint, ...]
    classes_hit: tuple[int, ...]  # K(S,2) masks of the x-coordinate images
    torsion_masks: tuple[int, ...]
    rank_lower: int


def _lattice_points(K: QuadField, bound: int) -> Iterator[QInt]:
    """Every m in O_K with N(m) <= bound (including 0), deterministic order."""
    if K.omega_trace == 0:
        bmax = isqrt(bound // (-K.D))
        for b in range(-bmax, bmax + 1):
            rem = bound + K.D * b * b
            amax = isqrt(rem) if rem >= 0 else -1
            for a in range(-amax, amax + 1):
                yield K.elem(a, b)
    else:
        bmax = isqrt(4 * bound // (-K.D))
        for b in range(-bmax, bmax + 1):
            rem = 4 * bound + K.D * b * b
            if rem < 0:
                continue
            umax = isqrt(rem)
            start = -umax if (-umax - b) % 2 == 0 else -umax + 1
            for u in range(start, umax + 1, 2):
                yield K.elem((u - b) // 2, b)


def _canonical_denominators(K: QuadField, bound: int) -> list[QInt]:
    from .qfield import canonical_associate

    out = []
    for e in _lattice_points(K, bound):
        if e and canonical_associate(e) == e:
            out.append(e)
    out.sort(key=lambda e: (e.norm(), e.a, e.b))
    return out


def point_search(curve: CurveSpec, height_bound: int = 10_000) -> PointSearchResult:
    """All points with numerator and denominator norms within the bound.

    x runs over m/e^2 with N(m) <= H and N(e) <= sqrt(H), e canonical among
    its associates (unit rescalings of e are absorbed by m).  A point is kept
    when m(m + eps p e^2)(m + eps q e^2) is an exact square in O_K.
    """
    K = curve.field
    group = ks2_for(curve)
    # the affine 2-torsion is always reported, independent of the height bound
    points: list[RationalPoint] = [
        RationalPoint(K.elem(x), K.one, K.zero)
        for x in (0, -curve.eps * curve.p, -curve.eps * curve.q)
    ]
    for e in _canonical_denominators(K, isqrt(height_bound)):
        e2 = e * e
        pe2 = curve.eps * curve.p * e2
        qe2 = curve.eps * curve.q * e2
        for m in _lattice_points(K, height_bound):
            r = m * (m + pe2) * (m + qe2)
            y = qint_sqrt(r)
            if y is None:
                continue
            cand = RationalPoint(m, e, y)
            if not any(cand.same_x(prev) for prev in points):
                points.append(cand)
    for pt in points:
        assert pt.verify(curve)
    torsion_masks = sorted(
        {
            group.express(K.elem(curve.p * curve.q)),  # image of (0, 0)
            group.express(K.elem(-curve.eps * curve.p)),
            group.express(K.elem(-curve.eps * curve.q)),
        }
    )
    hit = set()
    for pt in points:
        if not pt.x_num:
            hit.add(group.express(K.elem(curve.p * curve.q)))
        else:
            hit.add(group.express(pt.x_num))
    rank_lower = len(_echelon_basis(sorted(hit | set(torsion_masks)), group.n)) - len(
        _echelon_basis(list(torsion_masks), group.n)
    )
    return PointSearchResult(tuple(points), tuple(sorted(hit)), tuple(torsion_masks), rank_lower)


@dataclass(frozen=True)
class DescentReport:
    """Assembled rank/Sha output for one curve pair."""

    curve: CurveSpec
    dim_sel_phi: int
    dim_sel_phihat: int
    identity_value: int
    rank_lower: int
    rank_upper: int
    sha_clause: ShaClause
    torsion: TorsionReport
    mw_confirmed_torsion_only: Optional[bool] = None

    @property
    def rank_interval(self) -> tuple[int, int]:
        return (self.rank_lower, self.rank_upper)


def build_report(
    curve: CurveSpec,
    dim_phi: int,
    dim_phihat: int,
    search: Optional[PointSearchResult] = None,
) -> DescentReport:
    value = dimension_identity(dim_phi, dim_phihat)
    clause = sha_two_part_reduction(dim_phi, dim_phihat)
    rank_lower = search.rank_lower if search is not None else 0
    if rank_lower > value:
        raise DescentError("point search exceeds the descent rank bound")
    confirmed = None
    if value == 0 and search is not None:
        confirmed = all(not pt.y_num for pt in search.points) and rank_lower == 0
    return DescentReport(
        curve,
        dim_phi,
        dim_phihat,
        value,
        rank_lower,
        value,
        clause,
        two_torsion(curve),
        confirmed,
    )
