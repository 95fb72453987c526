"""Residue-field arithmetic for the completions: F_ell and F_{ell^2}.

Elements are coordinate pairs (a, b) mod ell representing a + b*wbar, where
wbar is the image of the integral-basis generator (b is always 0 when the
residue degree is 1).  Includes Tonelli-Shanks square roots and root-finding
for polynomials of degree <= 4, both deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

Elt = tuple[int, int]


@dataclass(frozen=True)
class ResidueField:
    """F_ell (f=1) or F_{ell^2} = F_ell[w]/(w^2 - s1*w - s0) (f=2)."""

    ell: int
    f: int
    s0: int = 0
    s1: int = 0

    @property
    def order(self) -> int:
        return self.ell**self.f

    @property
    def zero(self) -> Elt:
        return (0, 0)

    @property
    def one(self) -> Elt:
        return (1, 0)

    def make(self, a: int, b: int = 0) -> Elt:
        return (a % self.ell, b % self.ell if self.f == 2 else 0)

    def add(self, x: Elt, y: Elt) -> Elt:
        return ((x[0] + y[0]) % self.ell, (x[1] + y[1]) % self.ell)

    def sub(self, x: Elt, y: Elt) -> Elt:
        return ((x[0] - y[0]) % self.ell, (x[1] - y[1]) % self.ell)

    def neg(self, x: Elt) -> Elt:
        return (-x[0] % self.ell, -x[1] % self.ell)

    def mul(self, x: Elt, y: Elt) -> Elt:
        ell = self.ell
        if self.f == 1:
            return (x[0] * y[0] % ell, 0)
        bd = x[1] * y[1]
        return (
            (x[0] * y[0] + self.s0 * bd) % ell,
            (x[0] * y[1] + x[1] * y[0] + self.s1 * bd) % ell,
        )

    def is_zero(self, x: Elt) -> bool:
        return x[0] == 0 and x[1] == 0

    def pow(self, x: Elt, n: int) -> Elt:
        out = self.one
        while n:
            if n & 1:
                out = self.mul(out, x)
            x = self.mul(x, x)
            n >>= 1
        return out

    def inv(self, x: Elt) -> Elt:
        if self.is_zero(x):
            raise ZeroDivisionError("inverse of zero residue")
        return self.pow(x, self.order - 2)

    def elements(self):
        """Deterministic enumeration of the whole field."""
        if self.f == 1:
            for a in range(self.ell):
                yield (a, 0)
        else:
            for a in range(self.ell):
                for b in range(self.ell):
                    yield (a, b)

    def is_square(self, x: Elt) -> bool:
        if self.is_zero(x):
            return True
        if self.ell == 2:
            return True  # every element of a field of characteristic 2 is a square
        return self.pow(x, (self.order - 1) // 2) == self.one

    def sqrt(self, x: Elt) -> Optional[Elt]:
        """A square root by Tonelli-Shanks with a deterministic nonresidue scan."""
        if self.is_zero(x):
            return self.zero
        if self.ell == 2:
            return self.pow(x, self.order // 2)  # Frobenius inverse
        q = self.order
        if not self.is_square(x):
            return None
        if q % 4 == 3:
            return self.pow(x, (q + 1) // 4)
        s, m = q - 1, 0
        while s % 2 == 0:
            s //= 2
            m += 1
        z = next(e for e in self.elements() if not self.is_zero(e) and not self.is_square(e))
        c = self.pow(z, s)
        t = self.pow(x, s)
        r = self.pow(x, (s + 1) // 2)
        while t != self.one:
            t2, i = t, 0
            while t2 != self.one:
                t2 = self.mul(t2, t2)
                i += 1
            b = self.pow(c, 1 << (m - i - 1))
            m = i
            c = self.mul(b, b)
            t = self.mul(t, c)
            r = self.mul(r, b)
        return r


# -- dense polynomials over a residue field -------------------------------------

Poly = list[Elt]  # coefficient list, index = degree


def poly_trim(F: ResidueField, P: Poly) -> Poly:
    while P and F.is_zero(P[-1]):
        P.pop()
    return P


def poly_deg(P: Poly) -> int:
    return len(P) - 1


def poly_eval(F: ResidueField, P: Poly, x: Elt) -> Elt:
    out = F.zero
    for c in reversed(P):
        out = F.add(F.mul(out, x), c)
    return out


def poly_monic(F: ResidueField, P: Poly) -> Poly:
    if not P:
        return []
    inv = F.inv(P[-1])
    return poly_trim(F, [F.mul(c, inv) for c in P])

def poly_divmod(F: ResidueField, A: Poly, B: Poly) -> tuple[Poly, Poly]:
    B = poly_trim(F, B[:])
    if not B:
        raise ZeroDivisionError("polynomial division by zero")
    A = A[:]
    binv = F.inv(B[-1])
    q: Poly = [F.zero] * max(0, len(A) - len(B) + 1)
    while len(A) >= len(B) and poly_trim(F, A):
        shift = len(A) - len(B)
        c = F.mul(A[-1], binv)
        q[shift] = c
        for i, bc in enumerate(B):
            A[shift + i] = F.sub(A[shift + i], F.mul(c, bc))
        poly_trim(F, A)
    return poly_trim(F, q), A


def poly_gcd(F: ResidueField, A: Poly, B: Poly) -> Poly:
    A, B = poly_trim(F, A[:]), poly_trim(F, B[:])
    while B:
        A, B = B, poly_divmod(F, A, B)[1]
    return poly_monic(F, A)


def poly_mul(F: ResidueField, A: Poly, B: Poly) -> Poly:
    if not A or not B:
        return []
    out = [F.zero] * (len(A) + len(B) - 1)
    for i, a in enumerate(A):
        if F.is_zero(a):
            continue
        for j, b in enumerate(B):
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return poly_trim(F, out)


def poly_pow_mod(F: ResidueField, A: Poly, n: int, M: Poly) -> Poly:
    out: Poly = [F.one]
    A = poly_divmod(F, A, M)[1]
    while n:
        if n & 1:
            out = poly_divmod(F, poly_mul(F, out, A), M)[1]
        A = poly_divmod(F, poly_mul(F, A, A), M)[1]
        n >>= 1
    return out

def poly_derivative(F: ResidueField, P: Poly) -> Poly:
    out = [F.mul(F.make(i), c) for i, c in enumerate(P)][1:]
    return poly_trim(F, out)


def poly_sub(F: ResidueField, A: Poly, B: Poly) -> Poly:
    out = [
        F.sub(A[i] if i < len(A) else F.zero, B[i] if i < len(B) else F.zero)
        for i in range(max(len(A), len(B)))
    ]
    return poly_trim(F, out)


def squarefree_split(F: ResidueField, P: Poly) -> tuple[Elt, Poly, Poly]:
    """Write P = lead * R^2 * S with R, S monic and S squarefree (Yun).

    Requires char(F) > deg(P); callers only reach this at odd places with
    residue fields of more than 32 elements, so degree <= 4 < char always.
    """
    P = poly_trim(F, P[:])
    assert P, "zero polynomial has no squarefree split"
    lead = P[-1]
    P = poly_monic(F, P)
    R: Poly = [F.one]
    S: Poly = [F.one]
    G = poly_gcd(F, P, poly_derivative(F, P))
    C = poly_divmod(F, P, G)[0]
    D = poly_sub(F, poly_divmod(F, poly_derivative(F, P), G)[0], poly_derivative(F, C))
    i = 1
    while poly_deg(C) > 0:
        Pi = poly_gcd(F, C, D)
        if poly_deg(Pi) > 0:
            for _ in range(i // 2):
                R = poly_mul(F, R, Pi)
            if i % 2:
                S = poly_mul(F, S, Pi)
        C = poly_divmod(F, C, Pi)[0]
        D = poly_sub(F, poly_divmod(F, D, Pi)[0], poly_derivative(F, C))
        i += 1
    return lead, R, S


def poly_roots(F: ResidueField, P: Poly) -> list[Elt]:
    """All roots in F of a polynomial of degree <= 4, deterministically ordered."""
    P = poly_trim(F, P[:])
    if not P or poly_deg(P) == 0:
        return []
    P = poly_monic(F, P)
    q = F.order
    x: Poly = [F.zero, F.one]
    # product of the distinct linear factors: gcd(X^q - X, P)
    xq = poly_pow_mod(F, x, q, P)
    L = poly_gcd(F, poly_sub(F, xq, x), P)
    return sorted(_split_linear(F, L))


def _split_linear(F: ResidueField, L: Poly) -> list[Elt]:
    d = poly_deg(L)
    if d <= 0:
        return []
    if d == 1:
        return [F.neg(F.mul(L[0], F.inv(L[1])))]
    if F.is_zero(L[0]):
        rest = poly_divmod(F, L, [F.zero, F.one])[0]
        return [F.zero] + _split_linear(F, rest)
    q = F.order
    for delta in F.elements():
        # gcd with (X+delta)^((q-1)/2) - 1 separates roots by quadratic character
        T = poly_pow_mod(F, [delta, F.one], (q - 1) // 2, L)
        T = T[:]
        if T:
            T[0] = F.sub(T[0], F.one)
        else:
            T = [F.neg(F.one)]
        G = poly_gcd(F, poly_trim(F, T), L)
        if 0 < poly_deg(G) < d:
            rest = poly_divmod(F, L, G)[0]
            return _split_linear(F, G) + _split_linear(F, rest)
    raise AssertionError("deterministic split failed; input was not a product of distinct linear factors")
