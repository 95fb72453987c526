"""Exact arithmetic in the nine imaginary quadratic fields of class number one.

Ring-of-integers elements are stored in the integral basis (1, omega), so
half-integer coordinates never occur; omega is sqrt(D) or (1+sqrt(D))/2
depending on D mod 4.  Every coordinate is an arbitrary-precision Python int.
All values are immutable and every function here is pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Iterator, Optional

#: The nine squarefree radicands with class number one.
SQUAREFREE_D = (-1, -2, -3, -7, -11, -19, -43, -67, -163)

#: The corresponding fundamental discriminants.
FUNDAMENTAL_DISCS = (-4, -8, -3, -7, -11, -19, -43, -67, -163)

INERT, SPLIT, RAMIFIED, ARCH = "inert", "split", "ramified", "arch"


class QFieldError(ValueError):
    """Argument outside the nine supported fields, or a domain violation."""


@dataclass(frozen=True)
class QuadField:
    """One of the nine imaginary quadratic fields Q(sqrt(D)) with h(K) = 1.

    ``omega`` satisfies x^2 - omega_trace*x + omega_norm = 0 exactly.
    """

    D: int
    disc: int
    omega_trace: int
    omega_norm: int

    def __post_init__(self) -> None:
        if self.D not in SQUAREFREE_D:
            raise QFieldError(f"D={self.D} is not one of the class-number-one radicands")
        # omega's minimal polynomial must reproduce D: disc = t^2 - 4n.
        assert self.omega_trace**2 - 4 * self.omega_norm == self.disc
        assert self.disc in FUNDAMENTAL_DISCS

    # -- element constructors -------------------------------------------------

    def elem(self, a: int, b: int = 0) -> "QInt":
        return QInt(a, b, self)

    @property
    def zero(self) -> "QInt":
        return QInt(0, 0, self)

    @property
    def one(self) -> "QInt":
        return QInt(1, 0, self)

    @property
    def omega(self) -> "QInt":
        return QInt(0, 1, self)

    @property
    def sqrt_D(self) -> "QInt":
        """The element sqrt(D) itself (= 2*omega - 1 when omega is half-integral)."""
        if self.D % 4 == 1:
            return QInt(-1, 2, self)
        return QInt(0, 1, self)

    @property
    def units(self) -> tuple["QInt", ...]:
        w = self.omega
        if self.D == -1:
            return (self.one, w, -self.one, -w)
        if self.D == -3:
            tau = w - 1
            return (self.one, -self.one, tau, -tau, w, -w)
        return (self.one, -self.one)

    @property
    def unit_square_class_reps(self) -> tuple["QInt", ...]:
        """Representatives of the unit group modulo squares of units.

        For D=-1 this is {1, i} since -1 = i^2; for D=-3 it is {1, -1} since
        the cube root of unity tau = (tau^2)^2 is a square.
        """
        if self.D == -1:
            return (self.one, self.omega)
        return (self.one, -self.one)

    @property
    def label(self) -> str:
        return f"Q(sqrt({self.D}))"

    def __repr__(self) -> str:
        return f"QuadField({self.D})"


@lru_cache(maxsize=None)
def quad_field(D: int) -> QuadField:
    """Return the field for a squarefree radicand or fundamental discriminant."""
    if D in (-4, -8) or (D in SQUAREFREE_D and D % 4 == 1):
        # accept a fundamental discriminant spelling
        rad = D // 4 if D % 4 == 0 else D
    else:
        rad = D
    if rad not in SQUAREFREE_D:
        raise QFieldError(f"no class-number-one imaginary quadratic field for {D}")
    if rad % 4 == 1:
        return QuadField(rad, rad, 1, (1 - rad) // 4)
    return QuadField(rad, 4 * rad, 0, -rad)


ALL_FIELDS = tuple(quad_field(D) for D in SQUAREFREE_D)


class QInt:
    """a + b*omega in the ring of integers of a class-number-one field."""

    __slots__ = ("a", "b", "field")

    def __init__(self, a: int, b: int, field: QuadField):
        self.a = a
        self.b = b
        self.field = field

    # -- ring operations ------------------------------------------------------

    def _coerce(self, other) -> "QInt":
        if isinstance(other, QInt):
            if other.field is not self.field:
                raise QFieldError("mixed-field arithmetic")
            return other
        if isinstance(other, int):
            return QInt(other, 0, self.field)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QInt(self.a + o.a, self.b + o.b, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QInt(self.a - o.a, self.b - o.b, self.field)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return QInt(-self.a, -self.b, self.field)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        K = self.field
        bd = self.b * o.b
        return QInt(
            self.a * o.a - K.omega_norm * bd,
            self.a * o.b + self.b * o.a + K.omega_trace * bd,
            K,
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QInt":
        if n < 0:
            raise QFieldError("negative powers leave the ring of integers")
        out = self.field.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> "QInt":
        return QInt(self.a + self.field.omega_trace * self.b, -self.b, self.field)

    def norm(self) -> int:
        K = self.field
        return self.a * self.a + K.omega_trace * self.a * self.b + K.omega_norm * self.b * self.b

    def trace(self) -> int:
        return 2 * self.a + self.field.omega_trace * self.b

    def divide_exact(self, other: "QInt") -> Optional["QInt"]:
        """self/other if it lies in O_K, else None."""
        o = self._coerce(other)
        if not o:
            raise ZeroDivisionError("division by zero in O_K")
        num = self * o.conj()
        n = o.norm()
        if num.a % n or num.b % n:
            return None
        return QInt(num.a // n, num.b // n, self.field)

    def is_unit(self) -> bool:
        return self.norm() == 1

    # -- comparisons and hashing ----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.b == 0 and self.a == other
        if isinstance(other, QInt):
            return self.field is other.field and self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.field.D))

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def __repr__(self) -> str:
        return f"QInt({self.a}, {self.b}, D={self.field.D})"

    def __str__(self) -> str:
        return render_sqrt_form(self)


def render_sqrt_form(x: QInt) -> str:
    """Human-readable a + b*sqrt(D) rendering (halves shown over /2)."""
    D = x.field.D
    if x.field.omega_trace == 0:
        u, v, den = x.a, x.b, 1
    else:
        u, v, den = 2 * x.a + x.b, x.b, 2
        if u % 2 == 0 and v % 2 == 0:
            u, v, den = u // 2, v // 2, 1
    if v == 0:
        return str(u)
    rad = f"sqrt({D})"
    core = rad if abs(v) == 1 else f"{abs(v)}*{rad}"
    if u == 0:
        s = core if v > 0 else f"-{core}"
    else:
        s = f"{u}{'+' if v > 0 else '-'}{core}"
    return f"({s})/2" if den == 2 else s


# -- rational integer helpers --------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (valid far beyond any input used here)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_square_int(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def kronecker(a: int, n: int) -> int:
    """The Kronecker symbol (a|n), total for n != 0."""
    if n == 0:
        raise QFieldError("kronecker symbol needs a nonzero modulus")
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        twos = 0
        while n % 2 == 0:
            n //= 2
            twos += 1
        if twos % 2 and a % 8 in (3, 5):
            result = -result
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def qint_sqrt(x: QInt) -> Optional[QInt]:
    """An exact square root of x in O_K, or None.

    Uses norm and trace only: if y^2 = x then N(y)^2 = N(x), Tr(y)^2 =
    Tr(x) + 2*N(y) and (y - conj(y))^2 = (Tr(x) - 2*N(y)) = disc * b^2.
    """
    K = x.field
    if not x:
        return K.zero
    k = isqrt(x.norm())
    if k * k != x.norm():
        return None
    tr = x.trace()
    t2 = tr + 2 * k
    if t2 < 0 or not is_square_int(t2):
        return None
    T = isqrt(t2)
    s2 = tr - 2 * k  # = disc * b^2 for the candidate root
    if s2 % K.disc:
        return None
    bb = s2 // K.disc
    if bb < 0 or not is_square_int(bb):
        return None
    B = isqrt(bb)
    t = K.omega_trace
    for Tc in (T, -T) if T else (0,):
        for Bc in (B, -B) if B else (0,):
            if (Tc - t * Bc) % 2:
                continue
            y = QInt((Tc - t * Bc) // 2, Bc, K)
            if y * y == x:
                return y
    return None


def canonical_associate(x: QInt) -> QInt:
    """The canonical representative among the unit multiples of x.

    D=-1: first coordinate odd and positive when the norm is odd, else the
    lexicographically largest coordinate pair.  D=-3: the associate in the
    closed sextant a > 0, b >= 0 (plus the two degenerate rays).  Otherwise
    the representative with a > 0, or a == 0 and b > 0.
    """
    if not x:
        return x
    K = x.field
    cands = [u * x for u in K.units]
    if K.D == -1:
        if x.norm() % 2:
            pick = [c for c in cands if c.a % 2 == 1 and c.a > 0]
            assert len(pick) == 1
            return pick[0]
        return max(cands, key=lambda c: (c.a, c.b))
    if K.D == -3:
        pick = [c for c in cands if c.a > 0 and c.b >= 0]
        assert len(pick) == 1, f"sextant rule failed for {x!r}"
        return pick[0]
    return x if (x.a > 0 or (x.a == 0 and x.b > 0)) else -x


# -- prime splitting -----------------------------------------------------------


@dataclass(frozen=True)
class SplitType:
    """How a rational prime behaves in O_K, with canonical generators."""

    kind: str  # split / inert / ramified
    pi: Optional[QInt] = None
    pi_bar: Optional[QInt] = None


def _solve_norm_equation(K: QuadField, ell: int) -> QInt:
    """Some x in O_K with N(x) = ell (exists whenever ell splits: h(K) = 1)."""
    if K.omega_trace == 0:
        bmax = isqrt(ell // (-K.D))
        for b in range(1, bmax + 1):
            a2 = ell + K.D * b * b
            if is_square_int(a2):
                return QInt(isqrt(a2), b, K)
    else:
        # 4*ell = (2a+b)^2 - D b^2
        bmax = isqrt(4 * ell // (-K.D))
        for b in range(1, bmax + 1):
            u2 = 4 * ell + K.D * b * b
            if u2 >= 0 and is_square_int(u2):
                u = isqrt(u2)
                if (u - b) % 2 == 0:
                    return QInt((u - b) // 2, b, K)
    raise QFieldError(f"no element of norm {ell} in {K.label}")


def _two_adic_uniformizer(K: QuadField) -> QInt:
    """The fixed uniformizer over 2 when 2 does not stay inert."""
    if K.D == -1:
        return QInt(1, -1, K)  # 1 - i
    if K.D == -2:
        return K.omega  # sqrt(-2)
    if K.D == -7:
        return -K.omega  # -(1+sqrt(-7))/2, of norm 2
    raise QFieldError(f"2 is inert in {K.label}")


def classify_prime(K: QuadField, ell: int) -> SplitType:
    """Split/inert/ramified decision with canonical generator(s)."""
    if ell < 2 or not is_prime(ell):
        raise QFieldError(f"{ell} is not a prime")
    symbol = kronecker(K.disc, ell)
    if symbol == -1:
        return SplitType(INERT)
    if symbol == 0:
        if ell == 2:
            return SplitType(RAMIFIED, pi=_two_adic_uniformizer(K))
        return SplitType(RAMIFIED, pi=canonical_associate(K.sqrt_D))
    if ell == 2:
        pi = _two_adic_uniformizer(K)
    elif K.D == -1:
        pi, _ = split_gaussian_prime(ell)
    else:
        pi = canonical_associate(_solve_norm_equation(K, ell))
    pi_bar = pi.conj()
    assert (pi * pi_bar).divide_exact(QInt(ell, 0, K)).is_unit()  # type: ignore[union-attr]
    return SplitType(SPLIT, pi=pi, pi_bar=pi_bar)


def split_gaussian_prime(q: int) -> tuple[QInt, QInt]:
    """For q = 1 (mod 4) prime, the factor mu = a + b*i with a odd, b even, both > 0."""
    if q % 4 != 1 or not is_prime(q):
        raise QFieldError(f"{q} does not split in Q(i) (need a prime = 1 mod 4)")
    K = quad_field(-1)
    for b in range(2, isqrt(q) + 1, 2):
        a2 = q - b * b
        if is_square_int(a2):
            a = isqrt(a2)
            mu = QInt(a, b, K)
            assert a % 2 == 1 and mu.norm() == q
            return mu, mu.conj()
    raise QFieldError(f"no two-square decomposition found for {q}")


# -- places and place sets -------------------------------------------------------


@dataclass(frozen=True)
class Place:
    """A place of K: a finite prime element (up to the fixed choice) or infinity."""

    field: QuadField
    kind: str  # split / inert / ramified / arch
    label: str
    ell: Optional[int] = None  # residue characteristic
    gen: Optional[QInt] = None  # uniformizing element of O_K
    e: int = 1
    f: int = 1

    @property
    def is_arch(self) -> bool:
        return self.kind == ARCH

    @property
    def margin(self) -> int:
        """Square-unit precision margin 2*v(2) + 1 for this completion."""
        return 2 * self.val_of_two + 1

    @property
    def val_of_two(self) -> int:
        if self.ell == 2:
            return self.e
        return 0

    def val(self, x: QInt) -> Optional[int]:
        """Exact normalized valuation of x (None means +infinity, i.e. x = 0)."""
        if self.is_arch:
            raise QFieldError("no valuation at the archimedean place")
        if not x:
            return None
        if self.kind == INERT:
            v = 0
            a, b, ell = x.a, x.b, self.ell
            while a % ell == 0 and b % ell == 0:
                a //= ell
                b //= ell
                v += 1
            return v
        v = 0
        cur = x
        while True:
            nxt = cur.divide_exact(self.gen)
            if nxt is None:
                return v
            cur = nxt
            v += 1

    def unit_part(self, x: QInt) -> tuple[int, QInt]:
        """(v, x / gen^v) computed exactly in O_K; x must be nonzero."""
        v = self.val(x)
        assert v is not None
        if self.kind == INERT:
            d = self.ell**v
            return v, QInt(x.a // d, x.b // d, x.field)
        cur = x
        for _ in range(v):
            cur = cur.divide_exact(self.gen)  # type: ignore[assignment]
        return v, cur

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class PlaceSet:
    """The bad places of a twin-prime curve pair: infinity plus primes over 2pq."""

    field: QuadField
    finite: tuple[Place, ...]
    arch: Place
    provenance: tuple[int, int, int]  # (2, p, q)

    @property
    def all_places(self) -> tuple[Place, ...]:
        return self.finite + (self.arch,)

    def over(self, ell: int) -> tuple[Place, ...]:
        return tuple(v for v in self.finite if v.ell == ell)


def _places_over(
    K: QuadField, ell: int, split_labels: tuple[str, str], inert_label: str
) -> tuple[Place, ...]:
    st = classify_prime(K, ell)
    if st.kind == SPLIT:
        return (
            Place(K, SPLIT, split_labels[0], ell, st.pi, 1, 1),
            Place(K, SPLIT, split_labels[1], ell, st.pi_bar, 1, 1),
        )
    if st.kind == INERT:
        return (Place(K, INERT, inert_label, ell, QInt(ell, 0, K), 1, 2),)
    return (Place(K, RAMIFIED, split_labels[0], ell, st.pi, 2, 1),)


def build_place_set(K: QuadField, p: int, q: int) -> PlaceSet:
    """S = {infinity} plus the places over 2, p and q, in that order."""
    if p < 3 or q != p + 2 or not is_prime(p) or not is_prime(q):
        raise QFieldError(f"({p}, {q}) is not a twin prime pair")
    if K.disc % p == 0 or K.disc % q == 0:
        raise QFieldError(f"{p} or {q} ramifies in {K.label}; excluded by hypothesis")
    finite: list[Place] = []
    finite += _places_over(K, 2, ("pi2", "pi2bar"), "2")
    finite += _places_over(K, p, ("mu_p", "mu_p_bar"), "p")
    finite += _places_over(K, q, ("mu_q", "mu_q_bar"), "q")
    gens = [v.gen for v in finite]
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            quot = gens[i].divide_exact(gens[j])
            assert quot is None or not quot.is_unit(), "associate place generators"
    arch = Place(K, ARCH, "inf")
    return PlaceSet(K, tuple(finite), arch, (2, p, q))


def twin_primes_below(pmax: int) -> Iterator[tuple[int, int]]:
    """Twin prime pairs (p, p+2) with p < pmax, by a plain sieve."""
    if pmax <= 3:
        return
    n = pmax + 2
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = b"\x00" * len(sieve[i * i :: i])
    for p in range(3, pmax):
        if sieve[p] and sieve[p + 2]:
            yield p, p + 2
