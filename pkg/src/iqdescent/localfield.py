"""Completions of the nine fields and a certified quartic solvability engine.

Only three shapes of completion occur: Q_ell at a split place, the unramified
quadratic extension Q_ell(omega) at an inert place, and the two ramified
quadratic extensions of Q_2 (uniformizer 1-i or sqrt(-2)).

The solvability engine decides whether d*w^2 = c0 + c2 z^2 + c4 z^4 has a
K_v-point.  Every positive answer carries a Hensel certificate with an exact
O_K witness point; every negative answer records the residue-disc exhaustion
depth.  All decisions are made on exact ring elements, never on floats or
truncated approximations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .qfield import INERT, RAMIFIED, SPLIT, Place, QFieldError, QInt
from .residue import (
    ResidueField,
    poly_deg,
    poly_eval,
    poly_roots,
    poly_trim,
    squarefree_split,
)

INF = math.inf

SOLVABLE, INSOLVABLE, UNDECIDED = "solvable", "insolvable", "undecided"


class PrecisionError(ArithmeticError):
    """An operation needed more uniformizer digits than were available."""


class CertificateError(ValueError):
    """A Hensel certificate failed its lifting criterion."""


# -- exact polynomials over O_K --------------------------------------------------

QPoly = tuple  # tuple of QInt, index = degree in z


def qpoly_eval(P: Sequence[QInt], z: QInt) -> QInt:
    out = z.field.zero
    for c in reversed(P):
        out = out * z + c
    return out


def qpoly_derivative(P: Sequence[QInt]) -> QPoly:
    return tuple(i * c for i, c in enumerate(P))[1:]


def qpoly_shift(P: Sequence[QInt], z0: QInt) -> QPoly:
    """Taylor coefficients of P(z0 + X), by repeated synthetic division by X - z0."""
    coeffs = list(P)
    out = []
    while coeffs:
        b = coeffs[-1]
        quot = [b]
        for c in reversed(coeffs[:-1]):
            b = b * z0 + c
            quot.append(b)
        quot.reverse()  # quot[0] is the remainder P(z0), the rest is the quotient
        out.append(quot[0])
        coeffs = quot[1:]
    return tuple(out)


def qpoly_scale_arg(P: Sequence[QInt], s: QInt) -> QPoly:
    """Coefficients of P(s*X)."""
    out = []
    power = s.field.one
    for c in P:
        out.append(c * power)
        power = power * s
    return tuple(out)


# -- quartic models and verdicts --------------------------------------------------


@dataclass(frozen=True)
class QuarticModel:
    """The homogeneous-space equation d*w^2 = c0 + c2 z^2 + c4 z^4 over O_K."""

    d: QInt
    c0: QInt
    c2: QInt
    c4: QInt
    note: str = ""  # variable transformation applied relative to the raw equation

    def rhs_poly(self) -> QPoly:
        zero = self.d.field.zero
        return (self.c0, zero, self.c2, zero, self.c4)

    def square_model(self) -> QPoly:
        """F with w~^2 = F(z) where w~ = d*w; same local solvability."""
        zero = self.d.field.zero
        return (self.d * self.c0, zero, self.d * self.c2, zero, self.d * self.c4)

    def square_model_reversed(self) -> QPoly:
        zero = self.d.field.zero
        return (self.d * self.c4, zero, self.d * self.c2, zero, self.d * self.c0)

    def disc_z(self) -> QInt:
        """Discriminant of the rhs quartic: 16*c0*c4*(c2^2 - 4 c0 c4)^2."""
        inner = self.c2 * self.c2 - 4 * self.c0 * self.c4
        return 16 * self.c0 * self.c4 * inner * inner


@dataclass(frozen=True)
class SearchPolicy:
    """Plain configuration for the local searches and the naive point search."""

    depth: Optional[int] = None  # residue-disc depth bound; None = automatic
    precision: Optional[int] = None  # working uniformizer digits; None = max(2B, 40)
    rank_height: int = 10_000  # naive point-search height bound


DEFAULT_POLICY = SearchPolicy()


@dataclass(frozen=True)
class HenselCertificate:
    """Exact witness for a point on w~^2 = F(z).

    axis "w": v(w^2 - F(z)) > 2 v(2w), so w lifts at fixed z.
    axis "z": w = 0 and v(F(z)) > 2 v(F'(z)), so z lifts to a root of F.
    fval None records an exact point (infinite valuation).
    """

    z: QInt
    w: QInt
    axis: str
    fval: Optional[int]
    dval: int


@dataclass(frozen=True)
class Verdict:
    status: str  # solvable | insolvable | undecided
    side: str  # direct | reciprocal | archimedean
    certificate: Optional[HenselCertificate] = None
    depth: int = 0

    @property
    def is_solvable(self) -> bool:
        return self.status == SOLVABLE


def certificate_valuations(
    F: Sequence[QInt], place: Place, cert: HenselCertificate
) -> tuple[Optional[int], Optional[int]]:
    """Recompute (fval, dval) of a certificate against the square model F."""
    fx = cert.w * cert.w - qpoly_eval(F, cert.z)
    fval = place.val(fx)
    if cert.axis == "w":
        dval = place.val(2 * cert.w)
    else:
        dval = place.val(qpoly_eval(qpoly_derivative(F), cert.z))
    return fval, dval


def check_certificate(F: Sequence[QInt], place: Place, cert: HenselCertificate) -> bool:
    fval, dval = certificate_valuations(F, place, cert)
    if fval is None:  # exact point on the curve
        return True
    return dval is not None and fval > 2 * dval


def verify_verdict(model: QuarticModel, place: Place, verdict: Verdict) -> bool:
    """Re-verify a stored verdict from its exact witness data."""
    if verdict.status == SOLVABLE:
        if place.is_arch:
            return verdict.certificate is None
        F = model.square_model() if verdict.side == "direct" else model.square_model_reversed()
        return verdict.certificate is not None and check_certificate(F, place, verdict.certificate)
    if verdict.status == INSOLVABLE:
        return verdict.depth <= depth_bound(model, place)
    return False


# -- completions -------------------------------------------------------------------


class Completion:
    """Arithmetic data for K_v, shared by every element at the place v."""

    def __init__(self, place: Place):
        if place.is_arch:
            raise QFieldError("no completion machinery at the archimedean place")
        K = place.field
        self.place = place
        self.field = K
        self.kind = place.kind
        self.ell: int = place.ell  # type: ignore[assignment]
        self.e, self.f = place.e, place.f
        self.v2 = place.val_of_two
        self.margin = place.margin
        self._omega_roots: dict[int, int] = {}
        self._square_memo: dict[tuple, Optional[QInt]] = {}
        if self.kind == INERT:
            self.residue = ResidueField(
                self.ell, 2, (-K.omega_norm) % self.ell, K.omega_trace % self.ell
            )
        else:
            self.residue = ResidueField(self.ell, 1)
        if self.kind == RAMIFIED:
            # pi^2 = t0 + t1*pi and omega = u0 + u1*pi, exactly
            if K.D == -1:
                self.pi_sq = (-2, 2)
                self.omega_pi = (1, -1)  # i = 1 - pi
            else:  # D == -2
                self.pi_sq = (-2, 0)
                self.omega_pi = (0, 1)

    # -- coordinates ------------------------------------------------------------

    def omega_root(self, prec: int) -> int:
        """t with omega = t (mod gen^prec) under the fixed embedding (split only)."""
        assert self.kind == SPLIT
        if prec in self._omega_roots:
            return self._omega_roots[prec]
        K, ell = self.field, self.ell
        t_tr, n_nm = K.omega_trace, K.omega_norm
        base = None
        for r in range(ell):
            if (r * r - t_tr * r + n_nm) % ell == 0:
                if self.place.val(K.omega - r) >= 1:  # the root belonging to this place
                    base = r
                    break
        assert base is not None, "split place must see a residue root"
        mod, t = ell, base
        while mod < ell**prec:
            mod = min(mod * mod, ell**prec)
            # Newton step: f(t) = t^2 - tr*t + nm, f'(t) invertible mod ell
            fp = (2 * t - t_tr) % mod
            t = (t - (t * t - t_tr * t + n_nm) * pow(fp, -1, mod)) % mod
        t %= ell**prec
        self._omega_roots[prec] = t
        return t

    def to_pi_basis(self, x: QInt) -> tuple[int, int]:
        """Exact pi-adic coordinates (c0, c1) with x = c0 + c1*pi (ramified only)."""
        u0, u1 = self.omega_pi
        return x.a + x.b * u0, x.b * u1

    def reduce(self, x: QInt) -> tuple[int, int]:
        """Image of x in the residue field (split/inert places)."""
        if self.kind == SPLIT:
            t = self.omega_root(1)
            return ((x.a + x.b * t) % self.ell, 0)
        if self.kind == INERT:
            return (x.a % self.ell, x.b % self.ell)
        raise QFieldError("use pi-basis reduction at ramified places")

    def residue_reps(self) -> tuple[QInt, ...]:
        """Exact representatives of O_v modulo the uniformizer, in canonical order."""
        K = self.field
        if self.kind == SPLIT:
            return tuple(K.elem(r) for r in range(self.ell))
        if self.kind == RAMIFIED:
            return (K.zero, K.one)
        return tuple(
            K.elem(a, b) for a in range(self.ell) for b in range(self.ell)
        )

    # -- square classes -----------------------------------------------------------

    def _memo_key(self, u: QInt) -> tuple:
        if self.kind == RAMIFIED:
            c0, c1 = self.to_pi_basis(u)
            return (c0 % 8, c1 % 4)
        if self.ell == 2:  # split or inert over 2
            if self.kind == SPLIT:
                t = self.omega_root(3)
                return ((u.a + u.b * t) % 8,)
            return (u.a % 8, u.b % 8)
        return self.reduce(u)

    def unit_square_witness(self, u: QInt) -> Optional[QInt]:
        """For a unit u, an exact s with v(s^2 - u) >= margin; None if u is not a square."""
        key = self._memo_key(u)
        if key in self._square_memo:
            wit = self._square_memo[key]
            return wit
        wit = self._compute_witness(u)
        self._square_memo[key] = wit
        return wit

    def _compute_witness(self, u: QInt) -> Optional[QInt]:
        K = self.field
        if self.ell != 2:
            r = self.residue.sqrt(self.reduce(u))
            if r is None:
                return None
            return K.elem(r[0], r[1])
        if self.kind == SPLIT:
            (r,) = self._memo_key(u)
            return K.one if r % 8 == 1 else None
        if self.kind == INERT:
            for a in range(8):
                for b in range(8):
                    s = K.elem(a, b)
                    d = s * s - u
                    if d.a % 8 == 0 and d.b % 8 == 0:
                        return s
            return None
        # ramified: need v(s^2 - u) >= 5, i.e. 8 | c0 and 4 | c1 in the pi basis
        pi = self.place.gen
        for a in range(8):
            for b in range(4):
                s = K.elem(a, 0) + K.elem(b, 0) * pi
                d = s * s - u
                c0, c1 = self.to_pi_basis(d)
                if c0 % 8 == 0 and c1 % 4 == 0:
                    return s
        return None

    def square_witness(self, x: QInt) -> Optional[QInt]:
        """Exact w with v(w^2 - x) >= v(x) + margin, for x a nonzero square; else None."""
        v = self.place.val(x)
        assert v is not None
        if v % 2:
            return None
        _, u = self.place.unit_part(x)
        s = self.unit_square_witness(u)
        if s is None:
            return None
        if self.kind == INERT:
            shift = self.field.elem(self.ell ** (v // 2))
        else:
            shift = self.place.gen ** (v // 2)
        return shift * s


@lru_cache(maxsize=None)
def completion(place: Place) -> Completion:
    return Completion(place)


# -- finite-precision elements ------------------------------------------------------


class LocalElem:
    """An element of O_v known modulo uniformizer^prec."""

    __slots__ = ("comp", "prec", "c0", "c1", "exact_zero")

    def __init__(self, comp: Completion, prec: int, c0: int, c1: int = 0, exact_zero: bool = False):
        if comp.kind == RAMIFIED and prec % 2:
            prec += 1  # keep pi-adic precision even so coordinate moduli are clean
        self.comp = comp
        self.prec = prec
        mod = self.coord_modulus()
        self.c0 = c0 % mod
        self.c1 = c1 % mod if comp.kind != SPLIT else 0
        self.exact_zero = exact_zero

    def coord_modulus(self) -> int:
        if self.comp.kind == RAMIFIED:
            return 2 ** (self.prec // 2)
        return self.comp.ell**self.prec

    # -- ring operations ----------------------------------------------------------

    def _join(self, other: "LocalElem") -> int:
        assert self.comp is other.comp, "mixed-place arithmetic"
        return min(self.prec, other.prec)

    def __add__(self, other: "LocalElem") -> "LocalElem":
        p = self._join(other)
        return LocalElem(self.comp, p, self.c0 + other.c0, self.c1 + other.c1,
                         self.exact_zero and other.exact_zero)

    def __sub__(self, other: "LocalElem") -> "LocalElem":
        p = self._join(other)
        return LocalElem(self.comp, p, self.c0 - other.c0, self.c1 - other.c1,
                         self.exact_zero and other.exact_zero)

    def __neg__(self) -> "LocalElem":
        return LocalElem(self.comp, self.prec, -self.c0, -self.c1, self.exact_zero)

    def __mul__(self, other: "LocalElem") -> "LocalElem":
        comp = self.comp
        p = self._join(other)
        a, b, c, d = self.c0, self.c1, other.c0, other.c1
        if comp.kind == SPLIT:
            return LocalElem(comp, p, a * c, 0, self.exact_zero or other.exact_zero)
        if comp.kind == INERT:
            K = comp.field
            bd = b * d
            return LocalElem(comp, p, a * c - K.omega_norm * bd,
                             a * d + b * c + K.omega_trace * bd,
                             self.exact_zero or other.exact_zero)
        t0, t1 = comp.pi_sq
        bd = b * d
        return LocalElem(comp, p, a * c + t0 * bd, a * d + b * c + t1 * bd,
                         self.exact_zero or other.exact_zero)

    def valuation(self):
        """Exact valuation if visible below prec; INF for exact zero; None if hidden."""
        if self.exact_zero:
            return INF
        comp = self.comp

        def v_int(n: int, cap: int) -> int:
            if n == 0:
                return cap
            v = 0
            while n % comp.ell == 0 and v < cap:
                n //= comp.ell
                v += 1
            return v

        if comp.kind == SPLIT:
            v = v_int(self.c0, self.prec)
            return v if v < self.prec else None
        if comp.kind == INERT:
            v = min(v_int(self.c0, self.prec), v_int(self.c1, self.prec))
            return v if v < self.prec else None
        cap = self.prec // 2
        v = min(2 * v_int(self.c0, cap), 2 * v_int(self.c1, cap) + 1)
        return v if v < self.prec else None

    def unit_inverse(self) -> "LocalElem":
        if self.valuation() not in (0,):
            raise PrecisionError("inverse requires a visible unit")
        comp = self.comp
        seed = comp.residue.inv(self._residue())
        x = LocalElem(comp, self.prec, seed[0], seed[1])
        steps = max(1, (self.prec).bit_length())
        one = LocalElem(comp, self.prec, 1)
        for _ in range(steps + 2):
            x = x * (one + one - self * x)  # Newton: x <- x(2 - ux)
        return x

    def _residue(self):
        comp = self.comp
        if comp.kind == RAMIFIED:
            return (self.c0 % 2, 0)
        return (self.c0 % comp.ell, self.c1 % comp.ell)

    def shift_down(self, k: int) -> "LocalElem":
        """Divide by uniformizer^k (requires v >= k); loses k digits of precision."""
        if k == 0:
            return self
        v = self.valuation()
        if v is not None and v is not INF and v < k:
            raise PrecisionError("element not divisible by uniformizer^k")
        if self.prec - k < 1:
            raise PrecisionError("no precision left after shifting")
        comp = self.comp
        if self.exact_zero:
            return LocalElem(comp, self.prec - k, 0, 0, True)
        if comp.kind in (SPLIT, INERT):
            d = comp.ell**k
            return LocalElem(comp, self.prec - k, self.c0 // d, self.c1 // d)
        c0, c1 = self.c0, self.c1
        for _ in range(k):  # one pi-division: (c0 + c1 pi)/pi
            t0, t1 = comp.pi_sq
            # pi | x iff 2 | c0; x/pi = c1 + (c0/2)*(pi/ (t0+t1 pi)/...) handled directly:
            assert c0 % 2 == 0
            if comp.field.D == -1:
                c0, c1 = c1 + c0, -(c0 // 2)
            else:
                c0, c1 = c1, -(c0 // 2)
        return LocalElem(comp, self.prec - k, c0, c1)

    def divide(self, other: "LocalElem") -> "LocalElem":
        vo = other.valuation()
        if vo is None or vo is INF:
            raise PrecisionError("division by an invisible or zero element")
        num = self.shift_down(vo) if vo else self
        den = other.shift_down(vo) if vo else other
        return num * den.unit_inverse()

    def to_exact(self) -> QInt:
        """The canonical exact O_K representative of this residue class."""
        K = self.comp.field
        if self.comp.kind == RAMIFIED:
            return K.elem(self.c0) + K.elem(self.c1) * self.comp.place.gen
        return K.elem(self.c0, self.c1)

    def __repr__(self) -> str:
        v = self.valuation()
        vs = "inf" if v is INF else ("?" if v is None else str(v))
        return f"LocalElem(v={vs}, prec={self.prec}, {self.c0}+{self.c1}*w@{self.comp.place.label})"


def embed(x: QInt, place: Place, prec: int) -> LocalElem:
    """Image of x in K_v to prec uniformizer digits, under the fixed embedding."""
    comp = completion(place)
    if not x:
        return LocalElem(comp, prec, 0, 0, exact_zero=True)
    if comp.kind == SPLIT:
        t = comp.omega_root(prec)
        return LocalElem(comp, prec, x.a + x.b * t)
    if comp.kind == INERT:
        return LocalElem(comp, prec, x.a, x.b)
    c0, c1 = comp.to_pi_basis(x)
    return LocalElem(comp, prec, c0, c1)


def is_square(x: LocalElem) -> bool:
    """Whether x is a square in K_v^*; raises PrecisionError when undetectable."""
    v = x.valuation()
    if v is INF:
        raise QFieldError("square test requires a nonzero element")
    if v is None:
        raise PrecisionError("valuation not visible at this precision")
    if x.prec < v + x.comp.margin:
        raise PrecisionError(
            f"need {v + x.comp.margin} digits to settle a square at valuation {v}"
        )
    if v % 2:
        return False
    u = x.shift_down(v)
    return x.comp.unit_square_witness(u.to_exact()) is not None


# -- the certified local solvability decision procedure ---------------------------


def depth_bound(model: QuarticModel, place: Place) -> int:
    """Residue-disc exhaustion depth B = v(2^4 * disc_z) + 2e + 2."""
    disc = model.disc_z()
    if not disc:
        raise QFieldError("degenerate quartic: zero z-discriminant")
    v = place.val(16 * disc)
    assert v is not None
    return v + 2 * place.e + 2


def _accept_certificate(F: Sequence[QInt], comp: Completion, z0: QInt) -> Optional[HenselCertificate]:
    """Certify an integral point with z = z0 if one exists at this exact center."""
    K = comp.field
    Fz = qpoly_eval(F, z0)
    if not Fz:
        return HenselCertificate(z0, K.zero, "z", None, 0)
    if comp.place.val(Fz) % 2:  # type: ignore[operator]
        return None
    w = comp.square_witness(Fz)
    if w is None:
        return None
    fval = comp.place.val(w * w - Fz)
    dval = comp.place.val(2 * w)
    assert fval is None or fval > 2 * dval  # type: ignore[operator]
    return HenselCertificate(z0, w, "w", fval, dval)


def _disc_search(F: QPoly, comp: Completion, bound: int):
    """Uniform residue-disc recursion; used at dyadic places and tiny residue fields.

    Returns (status, certificate_or_None, exhaustion_depth).
    """
    place = comp.place
    K = comp.field
    reps = comp.residue_reps()
    Fderiv = qpoly_derivative(F)
    gen_pow: dict[int, QInt] = {0: K.one}

    def gp(k: int) -> QInt:
        if k not in gen_pow:
            gp(k - 1)
            gen_pow[k] = gen_pow[k - 1] * place.gen
        return gen_pow[k]

    stack: list[tuple[QInt, int]] = [(K.zero, 0)]
    maxdepth = 0
    undecided = False
    while stack:
        z0, k = stack.pop()
        if k > maxdepth:
            maxdepth = k
        Fz = qpoly_eval(F, z0)
        if not Fz:
            return SOLVABLE, HenselCertificate(z0, K.zero, "z", None, 0), maxdepth
        m = place.val(Fz)
        assert m is not None
        if m % 2 == 0:
            w = comp.square_witness(Fz)
            if w is not None:
                fval = place.val(w * w - Fz)
                dval = place.val(2 * w)
                return SOLVABLE, HenselCertificate(z0, w, "w", fval, dval), maxdepth
        dFz = qpoly_eval(Fderiv, z0)
        if dFz:
            delta = place.val(dFz)
            if m > 2 * delta:  # type: ignore[operator]
                # a simple root of F sits in this disc: (root, 0) is a point
                return SOLVABLE, HenselCertificate(z0, K.zero, "z", m, delta), maxdepth
        taylor = qpoly_shift(F, z0)
        M = None
        for i in range(1, len(taylor)):
            ci = taylor[i]
            if ci:
                cand = place.val(ci) + k * i  # type: ignore[operator]
                if M is None or cand < M:
                    M = cand
        if M is not None and m < M and (m % 2 or M - m >= comp.margin):
            continue  # v(F) is pinned at m on the whole disc: refuted
        if k >= bound:
            undecided = True
            continue
        genk = gp(k)
        for rep in reversed(reps):
            stack.append((z0 + genk * rep if rep else z0, k + 1))
    if undecided:
        return UNDECIDED, None, maxdepth
    return INSOLVABLE, None, maxdepth


def _odd_search(F: QPoly, comp: Completion, bound: int):
    """Structural search at odd places with a large residue field.

    Works residue-level by squarefree structure instead of enumerating the
    ell^f residue classes: accepts are found by probing (a positive fraction
    of residues works whenever the squarefree part is nontrivial), and only
    the roots of the reduced polynomial can require deeper discs.
    """
    place = comp.place
    K = comp.field
    res = comp.residue
    gen = place.gen

    def lift(t) -> QInt:
        return K.elem(t[0], t[1])

    def rec(Fc: QPoly, prefix: QInt, k: int):
        maxd = k
        content = None
        for coef in Fc:
            if coef:
                v = place.val(coef)
                if content is None or v < content:  # type: ignore[operator]
                    content = v
        assert content is not None, "zero polynomial cannot occur"
        genc = gen**content
        Ftil = tuple(coef.divide_exact(genc) if coef else coef for coef in Fc)
        Fbar = poly_trim(res, [res.make(*comp.reduce(c)) for c in Ftil])
        genk = gen**k

        def accept_at(t) -> Optional[HenselCertificate]:
            z0 = prefix + genk * lift(t)
            cert = _accept_certificate(F, comp, z0)
            assert cert is not None, "residue-level accept must certify exactly"
            return cert

        def recurse(roots):
            nonlocal maxd
            if not roots:
                return INSOLVABLE, None, maxd
            if k >= bound:
                return UNDECIDED, None, maxd
            undec = False
            for t in roots:
                r0 = lift(t)
                Fnext = qpoly_scale_arg(qpoly_shift(Fc, r0), gen)
                status, cert, d = rec(Fnext, prefix + genk * r0, k + 1)
                maxd = max(maxd, d)
                if status == SOLVABLE:
                    return status, cert, maxd
                if status == UNDECIDED:
                    undec = True
            return (UNDECIDED if undec else INSOLVABLE), None, maxd

        if content % 2 == 0:
            lead, R, S = squarefree_split(res, list(Fbar))
            if poly_deg(S) == 0:
                if res.is_square(lead):
                    for t in res.elements():
                        if not res.is_zero(poly_eval(res, R, t)):
                            return SOLVABLE, accept_at(t), maxd
                    raise AssertionError("R has more roots than its degree allows")
                return recurse(poly_roots(res, R))
            # nontrivial squarefree part: a square value exists; probe for it
            roots = []
            for t in res.elements():
                value = poly_eval(res, Fbar, t)
                if res.is_zero(value):
                    roots.append(t)
                elif res.is_square(value):
                    return SOLVABLE, accept_at(t), maxd
            return recurse(roots)  # unreachable in practice for q > 32
        # odd content: every residue with Fbar != 0 has odd valuation; only roots remain
        return recurse(poly_roots(res, Fbar))

    return rec(F, K.zero, 0)


def _search_integral(F: QPoly, comp: Completion, bound: int):
    if comp.ell == 2 or comp.residue.order <= 32:
        return _disc_search(F, comp, bound)
    return _odd_search(F, comp, bound)


def quartic_locally_solvable(space, place: Place, policy: Optional[SearchPolicy] = None) -> Verdict:
    """Decide whether the homogeneous space has a K_v-point.

    Integral-z points are searched on the square model w~^2 = d*rhs(z); points
    with |z|_v > 1 (including those at infinity) are covered by the reciprocal
    quartic via (z, w) -> (1/z, w/z^2).  Solvable verdicts carry an exact,
    re-checkable Hensel certificate; insolvable ones the exhaustion depth.
    """
    model: QuarticModel = getattr(space, "model", space)
    if place.is_arch:
        return Verdict(SOLVABLE, "archimedean")
    policy = policy or DEFAULT_POLICY
    vd = place.val(model.d)
    if vd is None or vd > 1:
        raise QFieldError("class representative must have valuation 0 or 1 at the place")
    bound = policy.depth if policy.depth is not None else depth_bound(model, place)
    comp = completion(place)
    worst = 0
    undecided = False
    for side, F in (("direct", model.square_model()), ("reciprocal", model.square_model_reversed())):
        status, cert, d = _search_integral(F, comp, bound)
        worst = max(worst, d)
        if status == SOLVABLE:
            return Verdict(SOLVABLE, side, cert, d)
        if status == UNDECIDED:
            undecided = True
    if undecided:
        return Verdict(UNDECIDED, "both", None, worst)
    return Verdict(INSOLVABLE, "both", None, worst)


def hensel_lift(
    rhs: Sequence[QInt], cert: HenselCertificate, place: Place, target_prec: int
) -> tuple[LocalElem, LocalElem]:
    """Newton-lift a certified point of w^2 = rhs(z) to v(w^2 - rhs(z)) >= target_prec."""
    F = tuple(rhs)
    if not check_certificate(F, place, cert):
        raise CertificateError("certificate fails its lifting criterion")
    if cert.fval is None:  # exact root: nothing to lift
        prec = target_prec + 4
        return embed(cert.z, place, prec), embed(cert.w, place, prec)
    fval, dval = certificate_valuations(F, place, cert)
    assert fval is not None and dval is not None
    prec = max(target_prec + 2 * dval + 4, 2 * fval + 4)
    if place.kind == RAMIFIED and prec % 2:
        prec += 1
    Femb = [embed(c, place, prec) for c in F]
    Fdemb = [embed(c, place, prec) for c in qpoly_derivative(F)]

    def local_eval(P: list[LocalElem], x: LocalElem) -> LocalElem:
        out = embed(place.field.zero, place, prec)
        for c in reversed(P):
            out = out * x + c
        return out

    z = embed(cert.z, place, prec)
    w = embed(cert.w, place, prec)
    for _ in range(200):
        fv = w * w - local_eval(Femb, z)
        v = fv.valuation()
        if v is INF or (v is not None and v >= target_prec):
            return z, w
        if v is None:
            if fv.prec >= target_prec:  # residual vanishes to at least the target
                return z, w
            raise PrecisionError("ran out of digits while lifting")
        if cert.axis == "w":
            w = w - fv.divide(w + w)
        else:
            z = z + fv.divide(local_eval(Fdemb, z))
    raise PrecisionError("Newton iteration failed to reach the target precision")
