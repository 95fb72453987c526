"""Completions, Hensel lifting, and the certified quartic solver."""

from __future__ import annotations

import math

import pytest

from bruteforce import brute_locally_solvable
from conftest import random_place, random_qint
from iqdescent.localfield import (
    CertificateError,
    HenselCertificate,
    PrecisionError,
    QuarticModel,
    Verdict,
    completion,
    depth_bound,
    embed,
    hensel_lift,
    is_square,
    qpoly_eval,
    qpoly_shift,
    quartic_locally_solvable,
    verify_verdict,
)
from iqdescent.qfield import Place, QInt, build_place_set, classify_prime, quad_field

K7 = quad_field(-7)
KI = quad_field(-1)
K2 = quad_field(-2)


def place_over_2(K):
    return build_place_set(K, 3, 5).over(2)[0] if K.disc % 15 else None


def q2_place():
    """K_pi2 of Q(sqrt(-7)) is Q_2: the split place over 2."""
    return build_place_set(K7, 3, 5).over(2)[0]


def test_embed_examples():
    v = q2_place()
    pi2 = v.gen
    assert embed(pi2, v, 20).valuation() == 1
    assert embed(pi2.conj(), v, 20).valuation() == 0
    assert embed(K7.zero, v, 20).valuation() is math.inf
    assert embed(K7.elem(2), v, 20).valuation() == 1
    # ramified: v(2) = 2
    vi = build_place_set(KI, 3, 5).over(2)[0]
    assert embed(KI.elem(2), vi, 20).valuation() == 2
    assert embed(vi.gen, vi, 20).valuation() == 1


def test_valuation_axioms(rng):
    # 10^4 random pairs across random places: v(xy) = v(x) + v(y),
    # v(x+y) >= min(v(x), v(y)) with equality at distinct valuations
    for _ in range(250):
        place = random_place(rng)
        K = place.field
        for _ in range(40):
            x = random_qint(rng, K, 10**6)
            y = random_qint(rng, K, 10**6)
            if not x or not y:
                continue
            ex, ey = embed(x, place, 60), embed(y, place, 60)
            vx, vy = ex.valuation(), ey.valuation()
            if vx is None or vy is None:
                continue
            prod = ex * ey
            assert prod.valuation() == vx + vy
            s = ex + ey
            vs = s.valuation()
            if vx != vy:
                assert vs == min(vx, vy)
            else:
                assert vs is None or vs >= vx


def test_embed_matches_exact_valuation(rng):
    for _ in range(200):
        place = random_place(rng)
        x = random_qint(rng, place.field, 10**6)
        if not x:
            continue
        assert embed(x, place, 64).valuation() == place.val(x)


def test_hensel_lift_square_root_of_17():
    v = q2_place()  # completion is Q_2
    rhs = (K7.elem(17),)  # w^2 = 17
    cert = HenselCertificate(K7.zero, K7.one, "w", 4, 1)
    z, w = hensel_lift(rhs, cert, v, 30)
    resid = w * w - embed(K7.elem(17), v, w.prec)
    val = resid.valuation()
    # a hidden valuation at precision >= 30 also certifies the target
    assert val is math.inf or (val is None and resid.prec >= 30) or val >= 30
    # and the lifted root is = 1 mod 8 hence a square certificate
    assert is_square(embed(K7.elem(17), v, 30))


def test_hensel_lift_rejects_bad_certificate():
    v = q2_place()
    rhs = (K7.elem(3),)  # w^2 = 3 has no solution in Q_2
    cert = HenselCertificate(K7.zero, K7.one, "w", 1, 1)
    with pytest.raises(CertificateError):
        hensel_lift(rhs, cert, v, 10)


def test_hensel_lift_exact_root_returns_point():
    v = q2_place()
    rhs = (K7.zero, K7.one)  # w^2 = z with exact root (0, 0)
    cert = HenselCertificate(K7.zero, K7.zero, "z", None, 0)
    z, w = hensel_lift(rhs, cert, v, 25)
    assert z.valuation() is math.inf and w.valuation() is math.inf


def test_is_square_examples():
    v = q2_place()
    assert is_square(embed(K7.elem(17), v, 20))
    assert not is_square(embed(K7.elem(3), v, 20))
    assert not is_square(embed(v.gen, v, 20))  # odd valuation
    # -1 in K_mu = Q_p with p = 5 mod 8
    Sp = build_place_set(KI, 5, 7)
    mu = Sp.over(5)[0]
    assert is_square(embed(KI.elem(-1), mu, 12))
    with pytest.raises(PrecisionError):
        is_square(embed(KI.elem(-1), mu, 1) * embed(KI.elem(5), mu, 1))


def test_is_square_matches_unit_class(rng):
    for _ in range(150):
        place = random_place(rng)
        K = place.field
        x = random_qint(rng, K, 10**5)
        y = x * x
        if not y:
            continue
        assert is_square(embed(y, place, 70)), (place.field.D, place.ell, str(x))


def test_taylor_shift_exact(rng):
    for _ in range(100):
        K = quad_field(-7)
        P = tuple(random_qint(rng, K, 10**4) for _ in range(5))
        z0 = random_qint(rng, K, 10**4)
        t = random_qint(rng, K, 100)
        shifted = qpoly_shift(P, z0)
        assert qpoly_eval(shifted, t) == qpoly_eval(P, z0 + t)


def make_model(K, d, c0, c2, c4):
    e = lambda v: v if isinstance(v, QInt) else K.elem(v)
    return QuarticModel(e(d), e(c0), e(c2), e(c4))


def test_solver_known_point_accepts_everywhere():
    # d = -p has the affine point (1, 0): p^2 - (p+q) p + pq = 0
    p, q = 3, 5
    m = make_model(K7, -p, p * p, -(p + q) * p, p * q)
    for v in build_place_set(K7, p, q).finite:
        verdict = quartic_locally_solvable(m, v)
        assert verdict.is_solvable
        assert verify_verdict(m, v, verdict)


def test_solver_insolvable_case_c():
    # over Q(sqrt(-2)) with p = 5 mod 8: -w^2 = 1 - (p+q) z^2 + z^4 fails at pi2
    p, q = 5, 7
    m = make_model(K2, -1, 1, -(p + q), 1)
    v = build_place_set(K2, p, q).over(2)[0]
    verdict = quartic_locally_solvable(m, v)
    assert verdict.status == "insolvable"
    assert verdict.depth <= depth_bound(m, v)
    assert verify_verdict(m, v, verdict)


def test_solver_insolvable_dual_unit_class_over_qi():
    # C'_i over Q(i), p = 1 mod 4: i w^2 = -1 - eps(p+q) i... normalized form has
    # no point at pi2 regardless of the twin pair
    for p in (5, 17, 29):  # twin pairs with p = 1 mod 4
        i = KI.omega
        m = QuarticModel(i, i * i, -(p + p + 2) * i, KI.elem(p * (p + 2)))
        v = build_place_set(KI, p, p + 2).over(2)[0]
        assert quartic_locally_solvable(m, v).status == "insolvable"


def test_solver_archimedean_always_solvable():
    S = build_place_set(K7, 3, 5)
    m = make_model(K7, -1, 1, 8, 4)
    verdict = quartic_locally_solvable(m, S.arch)
    assert verdict.is_solvable and verdict.side == "archimedean"


def test_solver_point_at_infinity_via_reciprocal():
    # d = pq: c4/d = 1 is a square, so the smooth model has rational points at
    # infinity even when no integral-z affine point exists at some place
    p, q = 3, 5
    m = make_model(K7, p * q, (p * q) ** 2, (p + q) * p * q, p * q)
    for v in build_place_set(K7, p, q).finite:
        verdict = quartic_locally_solvable(m, v)
        assert verdict.is_solvable


def test_solver_agrees_with_bruteforce_smoke(rng):
    # a fast slice of the full acceptance oracle run
    done = 0
    while done < 25:
        place = random_place(rng)
        K = place.field
        d = random_qint(rng, K, 2000)
        if not d or (place.val(d) or 0) > 1:
            continue
        c0, c2, c4 = (random_qint(rng, K, 2000) for _ in range(3))
        if not c0 or not c4:
            continue
        m = QuarticModel(d, c0, c2, c4)
        if not m.disc_z():
            continue
        B = depth_bound(m, place)
        verdict = quartic_locally_solvable(m, place)
        assert verdict.status in ("solvable", "insolvable")
        assert verdict.status == brute_locally_solvable(m, place, B)
        done += 1


def test_undecided_surfaces_with_tiny_depth():
    from iqdescent.localfield import SearchPolicy

    p, q = 5, 7
    m = make_model(K2, -1, 1, -(p + q), 1)
    v = build_place_set(K2, p, q).over(2)[0]
    verdict = quartic_locally_solvable(m, v, SearchPolicy(depth=1))
    assert verdict.status == "undecided"
