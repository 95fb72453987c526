"""Selmer groups of the twin-prime two-isogeny via everywhere-local solvability.

For a curve pair E: y^2 = x(x + eps*p)(x + eps*q) and E': y^2 = x^3
- 2 eps (p+q) x^2 + 4x, the phi-Selmer group is identified with the classes
d in K(S,2) whose homogeneous space C_d (resp. C'_d for the dual direction)
has points in every completion at the bad places S.  Membership decisions are
delegated to the certified local solver; this module owns the F_2 bookkeeping
and the per-class certificate grids.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import gcd
from typing import Optional

from .localfield import (
    INSOLVABLE,
    SOLVABLE,
    UNDECIDED,
    DEFAULT_POLICY,
    QuarticModel,
    SearchPolicy,
    Verdict,
    quartic_locally_solvable,
)
from .qfield import (
    RAMIFIED,
    Place,
    PlaceSet,
    QFieldError,
    QInt,
    QuadField,
    build_place_set,
    is_prime,
    qint_sqrt,
    quad_field,
)


class DescentError(RuntimeError):
    """A structural invariant of the descent failed; indicates an engine bug."""


class UndecidedError(DescentError):
    """The local search gave up inside its depth budget; never treated as a verdict."""

    def __init__(self, class_name: str, place_label: str):
        super().__init__(f"undecided local verdict for class {class_name} at place {place_label}")
        self.class_name = class_name
        self.place_label = place_label


class IsogenyDirection(Enum):
    """phi: E -> E' has kernel {O, (0,0)}; phihat is its dual."""

    PHI = "phi"
    PHI_HAT = "phihat"


@dataclass(frozen=True)
class CurveSpec:
    """A twin-prime curve pair over one of the nine fields."""

    eps: int
    p: int
    q: int
    field: QuadField

    def __post_init__(self) -> None:
        if self.eps not in (1, -1):
            raise QFieldError("eps must be +1 or -1")
        if self.q != self.p + 2 or not (is_prime(self.p) and is_prime(self.q)):
            raise QFieldError(f"({self.p}, {self.q}) is not a twin prime pair")
        if gcd(self.p * self.q, self.field.disc) != 1:
            raise QFieldError("p*q must be coprime to the field discriminant")

    @property
    def places(self) -> PlaceSet:
        return _place_set(self.field.D, self.p, self.q)

    def curve_coeffs(self) -> tuple[int, int]:
        """(a, b) with E: y^2 = x^3 + a x^2 + b x."""
        return self.eps * (self.p + self.q), self.p * self.q

    def dual_coeffs(self) -> tuple[int, int]:
        """E': y^2 = x^3 - 2 eps (p+q) x^2 + 4x."""
        return -2 * self.eps * (self.p + self.q), 4

    def label(self) -> str:
        sign = "+" if self.eps == 1 else "-"
        return f"E{sign}({self.p},{self.q})/{self.field.label}"


@lru_cache(maxsize=None)
def _place_set(D: int, p: int, q: int) -> PlaceSet:
    return build_place_set(quad_field(D), p, q)


@dataclass(frozen=True)
class SelmerClass:
    """A square class in K(S,2): exponent bitmask over the generator list."""

    mask: int
    rep: QInt
    name: str

    def __int__(self) -> int:
        return self.mask


@dataclass(frozen=True)
class HomSpace:
    """The quartic homogeneous space attached to a class and a direction."""

    cls: SelmerClass
    kind: str  # "C_d" for phi, "C'_d" for phihat
    model: QuarticModel


class KS2:
    """The group K(S,2) with the fixed generator order.

    Generators: the torsion unit class (i for D=-1, otherwise -1), then the
    chosen prime element of each finite place of S in (2, p, q) order.
    """

    def __init__(self, place_set: PlaceSet):
        self.place_set = place_set
        self.field = place_set.field
        unit = self.field.unit_square_class_reps[1]
        unit_name = "i" if self.field.D == -1 else "-1"
        self.gens: list[tuple[str, QInt, Optional[Place]]] = [(unit_name, unit, None)]
        for v in place_set.finite:
            self.gens.append((v.label, v.gen, v))  # type: ignore[arg-type]
        self.n = len(self.gens)
        self._conj_rows: Optional[list[int]] = None

    @property
    def names(self) -> list[str]:
        return [name for name, _, _ in self.gens]

    def rep(self, mask: int) -> QInt:
        out = self.field.one
        for i, (_, g, _) in enumerate(self.gens):
            if mask >> i & 1:
                out = out * g
        return out

    def class_name(self, mask: int) -> str:
        if mask == 0:
            return "1"
        return "*".join(name for i, (name, _, _) in enumerate(self.gens) if mask >> i & 1)

    def selmer_class(self, mask: int) -> SelmerClass:
        return SelmerClass(mask, self.rep(mask), self.class_name(mask))

    def classes(self) -> list[SelmerClass]:
        return [self.selmer_class(m) for m in range(1 << self.n)]

    def express(self, x: QInt) -> int:
        """The exponent mask of a class representative x (an S-unit up to squares)."""
        if not x:
            raise QFieldError("zero is not a square class")
        mask = 0
        residual = x
        for i, (_, g, v) in enumerate(self.gens):
            if v is None:
                continue
            val = v.val(x)
            assert val is not None
            if val % 2:
                mask |= 1 << i
            if val:
                residual = residual.divide_exact(g**val)  # type: ignore[assignment]
                assert residual is not None
        for j, u in enumerate(self.field.unit_square_class_reps):
            if qint_sqrt(residual * u.conj()) is not None:  # u^-1 = conj(u) for units
                if j == 1:
                    mask |= 1
                return mask
        raise QFieldError(f"{x!r} is not an S-unit modulo squares for this place set")

    def conj_mask(self, mask: int) -> int:
        """Image of a class under field conjugation (an automorphism of K(S,2))."""
        if self._conj_rows is None:
            self._conj_rows = [self.express(g.conj()) for _, g, _ in self.gens]
        out = 0
        for i, row in enumerate(self._conj_rows):
            if mask >> i & 1:
                out ^= row
        return out


@lru_cache(maxsize=None)
def ks2(field: QuadField, place_set: PlaceSet) -> KS2:
    return KS2(place_set)


def ks2_for(curve: CurveSpec) -> KS2:
    return ks2(curve.field, curve.places)


def hom_space(cls: SelmerClass, curve: CurveSpec, direction: IsogenyDirection) -> HomSpace:
    """Build the quartic space for a class, applying the dyadic normalizations.

    Raw equations: C_d: d w^2 = d^2 - 2 eps (p+q) d z^2 + 4 z^4 and
    C'_d: d w^2 = d^2 + eps (p+q) d z^2 + pq z^4.  Over Q(sqrt(-2)) and Q(i)
    the C_d family is rescaled through the uniformizer over 2 (and C'_d
    through i over Q(i)), exactly as the case analyses print them; the scaling
    is a K-isomorphism, so verdicts are unaffected.
    """
    K = curve.field
    d = cls.rep
    s = K.elem(curve.eps * (curve.p + curve.q))
    if direction is IsogenyDirection.PHI:
        c0, c2, c4, note = d * d, -2 * s * d, K.elem(4), ""
        if K.D == -2:
            c2, c4, note = s * d, K.one, "z -> z/pi2"
        elif K.D == -1:
            i = K.omega
            c2, c4, note = -s * i * d, -K.one, "z -> z/pi2"
        return HomSpace(cls, "C_d", QuarticModel(d, c0, c2, c4, note))
    c0, c2, c4, note = d * d, s * d, K.elem(curve.p * curve.q), ""
    if K.D == -1:
        c2, note = -s * d, "z -> i*z"
    return HomSpace(cls, "C'_d", QuarticModel(d, c0, c2, c4, note))


def membership_prescreen(
    cls: SelmerClass, curve: CurveSpec, direction: IsogenyDirection
) -> Optional[Place]:
    """A place where a pure valuation count already refutes membership, if any.

    phi direction: odd valuation at a place over p or q (the z^4 coefficient 4
    is a unit there, so v(rhs) is forced even while v(d w^2) is odd), or at a
    ramified place over 2.  phihat direction: odd valuation at any place over
    2 (there pq is the unit coefficient).  Sound by the same valuation count;
    confirmed against the full search for every rejected class.
    """
    d = cls.rep
    for v in curve.places.finite:
        val = v.val(d)
        assert val is not None
        if val % 2 == 0:
            continue
        if direction is IsogenyDirection.PHI:
            if v.ell in (curve.p, curve.q) or v.kind == RAMIFIED:
                return v
        else:
            if v.ell == 2:
                return v
    return None


def known_members(curve: CurveSpec, direction: IsogenyDirection) -> list[SelmerClass]:
    """Classes with an explicit global point, used as positive controls.

    The dual direction always contains the images of the 2-torsion points:
    1, -eps*p, -eps*q (the affine point (1,0) sits on C'_{-eps p} and
    C'_{-eps q}) and pq (rational points at infinity, since c4/d = 1).
    """
    group = ks2_for(curve)
    K = curve.field
    if direction is IsogenyDirection.PHI:
        return [group.selmer_class(0)]
    masks = {0}
    for value in (-curve.eps * curve.p, -curve.eps * curve.q, curve.p * curve.q):
        masks.add(group.express(K.elem(value)))
    return [group.selmer_class(m) for m in sorted(masks)]


def _echelon_basis(members: list[int], width: int) -> list[int]:
    """Reduced echelon basis (pivots at the lowest generator index) of a mask span."""
    basis: list[int] = []
    for m in sorted(members):
        cur = m
        for b in basis:
            low = b & -b
            if cur & low:
                cur ^= b
        if cur:
            basis.append(cur)
            basis.sort(key=lambda x: x & -x)
    # back-substitute to reduced form
    for idx in range(len(basis)):
        for jdx in range(len(basis)):
            if idx != jdx and basis[jdx] & (basis[idx] & -basis[idx]):
                basis[jdx] ^= basis[idx]
    return sorted(basis, key=lambda x: x & -x)


@dataclass(frozen=True)
class SelmerGroup:
    """An F_2-subspace of K(S,2) with a per-class local certificate grid."""

    curve: CurveSpec
    direction: IsogenyDirection
    generators: tuple[str, ...]
    member_masks: tuple[int, ...]
    basis_masks: tuple[int, ...]
    certificates: dict  # mask -> {place label -> Verdict}

    @property
    def dim(self) -> int:
        return len(self.basis_masks)

    def __len__(self) -> int:
        return len(self.member_masks)

    def contains(self, mask: int) -> bool:
        return mask in set(self.member_masks)

    def members(self) -> list[SelmerClass]:
        group = ks2_for(self.curve)
        return [group.selmer_class(m) for m in self.member_masks]

    def basis(self) -> list[SelmerClass]:
        group = ks2_for(self.curve)
        return [group.selmer_class(m) for m in self.basis_masks]


def class_verdicts(
    cls: SelmerClass,
    curve: CurveSpec,
    direction: IsogenyDirection,
    policy: SearchPolicy = DEFAULT_POLICY,
    stop_at_insolvable: bool = True,
) -> dict[str, Verdict]:
    """Verdict grid for one class: finite places in S order, then infinity.

    A prescreen hit reorders its place first (cheap certified rejection); the
    archimedean place is always recorded as solvable.
    """
    space = hom_space(cls, curve, direction)
    places = list(curve.places.finite)
    pre = membership_prescreen(cls, curve, direction)
    if pre is not None:
        places.remove(pre)
        places.insert(0, pre)
    out: dict[str, Verdict] = {}
    for v in places:
        verdict = quartic_locally_solvable(space, v, policy)
        out[v.label] = verdict
        if verdict.status == UNDECIDED:
            raise UndecidedError(cls.name, v.label)
        if v is pre and verdict.status != INSOLVABLE:
            raise DescentError(
                f"prescreen claimed rejection of {cls.name} at {v.label} but search disagrees"
            )
        if verdict.status == INSOLVABLE and stop_at_insolvable:
            return out
    out[curve.places.arch.label] = quartic_locally_solvable(space, curve.places.arch, policy)
    return out


@lru_cache(maxsize=4096)
def selmer_group(
    curve: CurveSpec,
    direction: IsogenyDirection,
    policy: SearchPolicy = DEFAULT_POLICY,
) -> SelmerGroup:
    """Compute the Selmer group by deciding every class of K(S,2) locally.

    Raises UndecidedError rather than guessing when a search exhausts its
    depth budget.  Structural invariants (subgroup closure, identity and
    known-member containment, conjugation symmetry) are asserted here on
    every call; a violation raises DescentError.
    """
    group = ks2_for(curve)
    members: list[int] = []
    certificates: dict[int, dict[str, Verdict]] = {}
    for mask in range(1 << group.n):
        cls = group.selmer_class(mask)
        grid = class_verdicts(cls, curve, direction, policy)
        certificates[mask] = grid
        if all(v.status == SOLVABLE for v in grid.values()):
            members.append(mask)
    member_set = set(members)
    if 0 not in member_set:
        raise DescentError("identity class missing from Selmer group")
    for a in members:
        for b in members:
            if a ^ b not in member_set:
                raise DescentError("Selmer members are not closed under multiplication")
    for cls in known_members(curve, direction):
        if cls.mask not in member_set:
            raise DescentError(f"known member {cls.name} missing from computed group")
    if {group.conj_mask(m) for m in members} != member_set:
        raise DescentError("Selmer group is not conjugation-symmetric")
    basis = _echelon_basis(members, group.n)
    if 1 << len(basis) != len(members):
        raise DescentError("member count is not a power of two matching the basis")
    return SelmerGroup(
        curve,
        direction,
        tuple(group.names),
        tuple(members),
        tuple(basis),
        certificates,
    )


def selmer_dims(curve: CurveSpec, policy: SearchPolicy = DEFAULT_POLICY) -> tuple[int, int]:
    """(dim S^phi, dim S^phihat) for the curve pair."""
    return (
        selmer_group(curve, IsogenyDirection.PHI, policy).dim,
        selmer_group(curve, IsogenyDirection.PHI_HAT, policy).dim,
    )
